// Command-line front end. Exit codes: 0 success, 1 verification failed or
// infeasible, 2 usage or parse error.
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kgraph/graph_ops.hpp"
#include "kgraph/leibniz.hpp"
#include "kgraph/linsys.hpp"
#include "kgraph/poisson.hpp"

using namespace kgraph;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::pair<Rational, Rational> parse_ratio(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw UsageError("ratio must look like a:b, got '" + s + "'");
  try {
    return {parse_rational(s.substr(0, colon)), parse_rational(s.substr(colon + 1))};
  } catch (const std::invalid_argument& e) {
    throw UsageError("bad ratio '" + s + "': " + e.what());
  }
}

Rational parse_scale(const std::string& s) {
  try {
    return parse_rational(s);
  } catch (const std::invalid_argument& e) {
    throw UsageError("bad scale '" + s + "': " + e.what());
  }
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

// Prefixes parse errors with the file name.
template <class F>
auto with_file(const std::string& path, F&& f) {
  auto in = open_in(path);
  try {
    return f(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::vector<Term> terms_from(const std::string& path) {
  return with_file(path, [](std::istream& in) { return read_terms(in); });
}

GraphSum sum_from(const std::string& path) { return GraphSum::from_terms(terms_from(path)); }

std::vector<LeibnizTerm> leibniz_from(const std::string& path) {
  return with_file(path, [](std::istream& in) { return read_leibniz_terms(in); });
}

PolyMultivector poisson_from(const std::string& path) {
  return with_file(path, [](std::istream& in) { return read_poisson(in); });
}

// Output goes to a file when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot write " + path);
    }
  }
  std::ostream& operator*() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void write_sum(std::ostream& out, const GraphSum& s, const std::string& layout) {
  if (layout.empty()) {
    s.write(out);
    return;
  }
  auto laid = in_layout(s, terms_from(layout));
  if (!laid) throw std::runtime_error("result has graphs outside the layout " + layout);
  for (const auto& t : *laid) out << format_graph_line(t.graph, t.coeff) << '\n';
}

void write_leibniz(std::ostream& out, const LeibnizGraph& g, const Rational& c, bool table) {
  out << (table ? format_graph_line(to_table_layout(g), c) : format_leibniz_line(g, c)) << '\n';
}

GraphSum target_from(const std::string& lhs_file, const std::string& ratio) {
  if (!lhs_file.empty()) return sum_from(lhs_file);
  auto [a, b] = parse_ratio(ratio);
  return lhs_trivector(a, b);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kontsevich graph calculus for the tetrahedral flow"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_path;
  app.add_option("-o,--output", out_path, "output file (default stdout)");

  std::string in_path, layout, ratio = "1/4:3/2", scale = "1";
  auto* normalize = app.add_subcommand("normalize", "normal form of every line");
  normalize->add_option("input", in_path, "graph-sum file")->required();
  auto* reduce = app.add_subcommand("reduce", "merge into a reduced sum");
  reduce->add_option("input", in_path, "graph-sum file")->required();
  reduce->add_option("--scale", scale, "multiply the result");
  reduce->add_option("--layout", layout, "print in the labelling of a reference file");

  auto* flow = app.add_subcommand("flow", "a*Gamma1 + b*Gamma2");
  flow->add_option("--ratio", ratio, "a:b")->capture_default_str();
  auto* lhs = app.add_subcommand("lhs", "[[P, a*Gamma1 + b*Gamma2]]");
  lhs->add_option("--ratio", ratio, "a:b")->capture_default_str();
  lhs->add_option("--layout", layout, "print in the labelling of a reference file");
  auto* orbits = app.add_subcommand("orbits", "collect an antisymmetric sum into sink-permutation orbits");
  orbits->add_option("input", in_path, "graph-sum file")->required();

  bool quadratic = false, no_tadpoles = false, table_format = false;
  auto* gen = app.add_subcommand("gen-ansatz", "write the Leibniz graph ansatz");
  gen->add_flag("--quadratic", quadratic, "two Jacobiators and one wedge");
  gen->add_flag("--no-tadpoles", no_tadpoles, "exclude wedges with an edge onto themselves");
  gen->add_flag("--table-format", table_format, "Kontsevich-style encoding (linear ansatz only)");
  auto* count = app.add_subcommand("count", "ansatz size figures");
  count->add_flag("--no-tadpoles", no_tadpoles, "exclude wedges with an edge onto themselves");

  bool reduce_flag = false;
  auto* expand = app.add_subcommand("expand", "Leibniz graphs to Kontsevich graphs");
  expand->add_option("input", in_path, "Leibniz file (native or table layout)")->required();
  expand->add_flag("--reduce", reduce_flag, "reduce instead of listing labelled terms");

  std::string lhs_file, dump_path;
  bool min_support = false;
  auto* solve_cmd = app.add_subcommand("solve", "factorize the lhs through the Leibniz ansatz");
  solve_cmd->add_option("--lhs", lhs_file, "target graph-sum file (default: lhs at --ratio)");
  solve_cmd->add_option("--ratio", ratio, "a:b")->capture_default_str();
  solve_cmd->add_flag("--quadratic", quadratic, "include quadratic patterns");
  solve_cmd->add_flag("--no-tadpoles", no_tadpoles, "exclude wedges with an edge onto themselves");
  solve_cmd->add_flag("--min-support", min_support, "greedy sparse solution");
  solve_cmd->add_option("--dump", dump_path, "write the assembled system");
  solve_cmd->add_flag("--table-format", table_format, "write the solution in table layout");

  std::string solution_path;
  auto* verify = app.add_subcommand("verify", "check that a Leibniz solution expands to the lhs");
  verify->add_option("--solution", solution_path, "Leibniz file")->required();
  verify->add_option("--lhs", lhs_file, "target graph-sum file (default: lhs at --ratio)");
  verify->add_option("--ratio", ratio, "a:b")->default_str("1:6");
  verify->add_option("--scale", scale, "multiply the target first");

  auto* nontrivial = app.add_subcommand("nontrivial", "can the flow be a trivial factorization?");
  auto* quadcheck = app.add_subcommand("quadcheck", "is the quadratic part forced to vanish?");
  quadcheck->add_flag("--no-tadpoles", no_tadpoles, "exclude wedges with an edge onto themselves");

  std::string poisson_path, graphs_path;
  std::vector<std::string> ratios;
  auto* eval = app.add_subcommand("eval", "evaluate a graph sum on a bi-vector");
  eval->add_option("--graphs", graphs_path, "graph-sum file")->required();
  eval->add_option("--poisson", poisson_path, "bi-vector file")->required();
  auto* scan = app.add_subcommand("ratio-scan", "which a:b annihilate [[P, a*Gamma1 + b*Gamma2]]");
  scan->add_option("--poisson", poisson_path, "bi-vector file")->required();
  scan->add_option("--ratio", ratios, "ratios to test individually");
  auto* jacobi = app.add_subcommand("jacobi", "check [[P,P]] = 0");
  jacobi->add_option("--poisson", poisson_path, "bi-vector file")->required();
  std::uint64_t seed = 1;
  int dimension = 3, degree = 2;
  auto* identity = app.add_subcommand("identity", "check the factorization as an operator identity");
  identity->add_option("--solution", solution_path, "Leibniz file")->required();
  identity->add_option("--poisson", poisson_path, "bi-vector file (default: random)");
  identity->add_option("--seed", seed, "")->capture_default_str();
  identity->add_option("--dimension", dimension, "")->capture_default_str();
  identity->add_option("--degree", degree, "")->capture_default_str();
  identity->add_option("--ratio", ratio, "a:b")->default_str("1:6");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  // defaults that differ per subcommand
  if ((verify->parsed() || identity->parsed()) && verify->count("--ratio") + identity->count("--ratio") == 0)
    ratio = "1:6";

  try {
    Output out(out_path);
    if (normalize->parsed()) {
      for (const auto& t : terms_from(in_path)) {
        auto nf = normal_form(t.graph);
        if (nf.sign != 0) *out << format_graph_line(nf.graph, nf.sign * t.coeff) << '\n';
      }
    } else if (reduce->parsed()) {
      write_sum(*out, parse_scale(scale) * sum_from(in_path), layout);
    } else if (flow->parsed()) {
      auto [a, b] = parse_ratio(ratio);
      tetra_flow(a, b).write(*out);
    } else if (lhs->parsed()) {
      auto [a, b] = parse_ratio(ratio);
      write_sum(*out, lhs_trivector(a, b), layout);
    } else if (orbits->parsed()) {
      collect_orbits(sum_from(in_path)).write(*out);
    } else if (gen->parsed()) {
      if (quadratic) {
        for (const auto& p : generate_ansatz_quadratic(!no_tadpoles)) write_leibniz(*out, p.graph, 1, false);
      } else {
        int family = 0;
        for (const auto& p : generate_ansatz_linear(!no_tadpoles)) {
          if (p.family != family) *out << "# class " << (family = p.family) << '\n';
          write_leibniz(*out, p.graph, 1, table_format);
        }
      }
    } else if (count->parsed()) {
      const auto st = ansatz_statistics(generate_ansatz_linear(!no_tadpoles));
      *out << "patterns " << st.patterns << '\n';
      for (std::size_t k = 1; k < st.class_sizes.size(); ++k) *out << "class " << k << ' ' << st.class_sizes[k] << '\n';
      *out << "distinct up to Leibniz normal form " << st.distinct_leibniz << '\n'
           << "classes modulo sink permutations " << st.skew_classes << " (" << st.vanishing_classes << " with sign 0)\n"
           << "labelled Kontsevich terms " << st.labelled_terms << '\n'
           << "with repetition: incidences " << st.incidences << ", after cancellation " << st.nonzeros
           << " (reference figure 28202)\n"
           << "admissible graphs " << st.admissible_graphs << " (reference figure 7025)\n"
           << "quadratic patterns " << generate_ansatz_quadratic(!no_tadpoles).size() << '\n';
    } else if (expand->parsed()) {
      const auto terms = leibniz_from(in_path);
      if (reduce_flag) {
        expand_terms(terms).write(*out);
      } else {
        for (const auto& t : terms)
          for (const auto& g : expand_labelled(t.graph)) *out << format_graph_line(g, t.coeff) << '\n';
      }
    } else if (solve_cmd->parsed()) {
      const auto target = target_from(lhs_file, ratio);
      auto patterns = generate_ansatz_linear(!no_tadpoles);
      if (quadratic)
        for (auto& p : generate_ansatz_quadratic(!no_tadpoles)) patterns.push_back(p);
      const auto sys = assemble(target, ansatz_columns(patterns));
      if (!dump_path.empty()) {
        Output d(dump_path);
        sys.dump(*d);
      }
      std::cerr << "system: " << sys.column_count << " columns, " << sys.row_count() << " rows\n";
      std::optional<std::vector<Rational>> x;
      if (min_support) {
        x = minimize_support(sys);
      } else {
        auto space = solve(sys, false);
        if (space.feasible) x = space.particular;
        if (space.feasible) std::cerr << "rank " << space.rank << '\n';
      }
      if (!x) {
        std::cout << "infeasible\n";
        return 1;
      }
      std::cerr << "support " << support_size(*x) << '\n';
      const auto leibniz = solution_to_leibniz(patterns, *x);
      for (const auto& [g, c] : leibniz.terms())
        write_leibniz(*out, g, c, table_format && g.jacobiator_count() == 1);
    } else if (verify->parsed()) {
      const bool ok =
          verify_factorization(leibniz_from(solution_path), parse_scale(scale) * target_from(lhs_file, ratio));
      std::cout << (ok ? "verified" : "MISMATCH") << '\n';
      return ok ? 0 : 1;
    } else if (nontrivial->parsed()) {
      const auto r = nontriviality_check();
      *out << "vector field columns " << r.vector_field_columns << "\nLeibniz columns " << r.nabla_columns << "\nrows "
           << r.rows << "\nvector fields only: " << (r.vector_field_only_feasible ? "feasible" : "infeasible")
           << "\nzero target control: " << (r.zero_target_feasible ? "feasible" : "infeasible")
           << "\nresult: " << (r.feasible ? "feasible" : "infeasible") << '\n';
      return r.feasible ? 1 : 0;
    } else if (quadcheck->parsed()) {
      const auto r = quadratic_part_check(!no_tadpoles);
      *out << "linear columns " << r.linear_columns << "\nquadratic columns " << r.quadratic_columns << "\nrows "
           << r.rows << "\nlinear only: " << (r.linear_only_feasible ? "feasible" : "infeasible")
           << "\ncombined: " << (r.feasible ? "feasible" : "infeasible") << "\nquadratic coordinates forced to zero "
           << r.quadratic_forced_zero << " of " << r.quadratic_columns << "\nquadratic columns in the linear span "
           << r.quadratic_in_linear_span << '\n';
      if (r.witness_column)
        *out << "witness with nonzero quadratic coordinate: column " << *r.witness_column << ", "
             << (r.witness_verified ? "verified" : "NOT verified") << '\n';
      *out << "result: " << (r.all_quadratic_forced_zero ? "no quadratic part" : "quadratic part not forced to zero")
           << '\n';
      return r.all_quadratic_forced_zero ? 0 : 1;
    } else if (eval->parsed()) {
      const auto P = poisson_from(poisson_path);
      const auto op = eval_graph_sum(sum_from(graphs_path), P);
      if (op.is_multivector() && op.sink_count() > 0) {
        op.to_multivector().write(*out);
      } else {
        op.write(*out);
      }
      if (op.is_zero()) *out << "# zero\n";
    } else if (scan->parsed()) {
      const auto P = poisson_from(poisson_path);
      const auto r = annihilating_ratio(P);
      if (r.dimension == 0) *out << "annihilating ratio: none\n";
      if (r.dimension == 1) *out << "annihilating ratio: " << r.a << ':' << r.b << " (unique)\n";
      if (r.dimension == 2) *out << "annihilating ratio: every a:b\n";
      std::vector<std::pair<Rational, Rational>> list;
      for (const auto& s : ratios) list.push_back(parse_ratio(s));
      for (const auto& x : ratio_scan(P, list))
        *out << x.a << ':' << x.b << ' ' << (x.annihilates ? "annihilates" : "nonzero") << '\n';
      return r.dimension == 1 ? 0 : 1;
    } else if (jacobi->parsed()) {
      const bool ok = jacobi_check(poisson_from(poisson_path));
      *out << (ok ? "PASS" : "FAIL") << '\n';
      return ok ? 0 : 1;
    } else if (identity->parsed()) {
      const auto P = poisson_path.empty() ? random_bivector(dimension, degree, seed) : poisson_from(poisson_path);
      auto [a, b] = parse_ratio(ratio);
      const bool ok = factorization_identity_check(P, leibniz_from(solution_path), lhs_trivector(a, b));
      *out << (ok ? "equal" : "DIFFERENT") << '\n';
      return ok ? 0 : 1;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
