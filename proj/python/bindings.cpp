#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "kgraph/graph_ops.hpp"
#include "kgraph/leibniz.hpp"
#include "kgraph/linsys.hpp"
#include "kgraph/poisson.hpp"

namespace py = pybind11;
using namespace kgraph;

namespace {

// Rationals cross the boundary as fractions.Fraction; ints and strings are
// accepted on input.
py::object to_fraction(const Rational& q) { return py::module_::import("fractions").attr("Fraction")(to_string(q)); }

Rational from_py(const py::handle& h) { return parse_rational(py::str(h).cast<std::string>()); }

std::pair<Rational, Rational> ratio(const py::handle& a, const py::handle& b) { return {from_py(a), from_py(b)}; }

GraphSum sum_from_text(const std::string& text) {
  std::istringstream in(text);
  return read_graph_sum(in);
}

py::list sum_terms(const GraphSum& s) {
  py::list out;
  for (const auto& [g, c] : s.terms()) out.append(py::make_tuple(encode(g), to_fraction(c)));
  return out;
}

std::vector<LeibnizTerm> leibniz_from_text(const std::string& text) {
  std::istringstream in(text);
  return read_leibniz_terms(in);
}

PolyMultivector poisson_from_text(const std::string& text) {
  std::istringstream in(text);
  return read_poisson(in);
}

py::dict multivector_dict(const PolyMultivector& m) {
  py::dict out;
  for (const auto& [idx, p] : m.components()) {
    py::tuple key(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) key[i] = idx[i] + 1;
    out[key] = p.to_string();
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Kontsevich graph calculus for the tetrahedral flow";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<KontsevichGraph>(m, "Graph")
      .def(py::init([](const std::string& line) { return parse_graph_line(line + " 1").first; }),
           py::arg("encoding"))
      .def_property_readonly("sink_count", &KontsevichGraph::sink_count)
      .def_property_readonly("internal_count", &KontsevichGraph::internal_count)
      .def_property_readonly("targets", [](const KontsevichGraph& g) {
        std::vector<std::pair<int, int>> t;
        for (const auto& p : g.targets()) t.emplace_back(p[0], p[1]);
        return t;
      })
      .def("normal_form", [](const KontsevichGraph& g) {
        auto nf = normal_form(g);
        return py::make_tuple(encode(nf.graph), nf.sign);
      })
      .def("__str__", [](const KontsevichGraph& g) { return encode(g); })
      .def("__repr__", [](const KontsevichGraph& g) { return "Graph('" + encode(g) + "')"; })
      .def(py::self == py::self);

  py::class_<GraphSum>(m, "GraphSum")
      .def(py::init<>())
      .def_static("from_text", &sum_from_text, py::arg("text"))
      .def_static("from_file", &read_graph_sum_file, py::arg("path"))
      .def("add", [](GraphSum& s, const KontsevichGraph& g, const py::object& c) { s.add(g, from_py(c)); })
      .def("coefficient", [](const GraphSum& s, const KontsevichGraph& g) { return to_fraction(s.coefficient(g)); })
      .def("terms", &sum_terms)
      .def("scaled", [](const GraphSum& s, const py::object& c) { return from_py(c) * s; })
      .def("__len__", &GraphSum::size)
      .def("__str__", &GraphSum::to_string)
      .def("__add__", [](const GraphSum& a, const GraphSum& b) { return a + b; })
      .def("__sub__", [](const GraphSum& a, const GraphSum& b) { return a - b; })
      .def(py::self == py::self);

  m.def("tetra_flow", [](const py::object& a, const py::object& b) {
    auto [x, y] = ratio(a, b);
    return tetra_flow(x, y);
  });
  m.def("lhs_trivector", [](const py::object& a, const py::object& b) {
    auto [x, y] = ratio(a, b);
    return lhs_trivector(x, y);
  });
  m.def("schouten_bracket", py::overload_cast<const GraphSum&, const GraphSum&>(&schouten_bracket));
  m.def("skew_symmetrize", &skew_symmetrize);
  m.def("collect_orbits", &collect_orbits);
  m.def("jacobiator_sum", &jacobiator_sum);
  m.def("wedge", [] {
    GraphSum s;
    s.add(wedge_graph(), 1);
    return s;
  });

  m.def("expand_leibniz_text", [](const std::string& text) { return expand_terms(leibniz_from_text(text)); },
        "Reduced expansion of a Leibniz file's contents.");
  m.def("verify_factorization_text", [](const std::string& text, const GraphSum& target) {
    return verify_factorization(leibniz_from_text(text), target);
  });

  m.def("ansatz_counts", [](bool tadpoles) {
    const auto st = ansatz_statistics(generate_ansatz_linear(tadpoles));
    py::dict d;
    d["patterns"] = st.patterns;
    d["class_sizes"] = std::vector<int>(st.class_sizes.begin() + 1, st.class_sizes.end());
    d["distinct_leibniz"] = st.distinct_leibniz;
    d["skew_classes"] = st.skew_classes;
    d["nonzeros"] = st.nonzeros;
    d["admissible_graphs"] = st.admissible_graphs;
    return d;
  }, py::arg("tadpoles") = true);

  m.def("solve_factorization", [](const GraphSum& target, bool min_support) -> py::object {
    const auto patterns = generate_ansatz_linear();
    const auto sys = assemble(target, ansatz_columns(patterns));
    std::optional<std::vector<Rational>> x;
    if (min_support) {
      x = minimize_support(sys);
    } else {
      auto space = solve(sys, false);
      if (space.feasible) x = space.particular;
    }
    if (!x) return py::none();
    const auto leibniz = solution_to_leibniz(patterns, *x);
    py::list out;
    for (const auto& [g, c] : leibniz.terms()) out.append(format_leibniz_line(g, c));
    return out;
  }, py::arg("target"), py::arg("min_support") = true,
     "Leibniz solution as lines in the native format, or None if infeasible.");

  m.def("nontriviality_feasible", [] { return nontriviality_check().feasible; });

  py::class_<PolyMultivector>(m, "Multivector")
      .def_static("from_text", &poisson_from_text, py::arg("text"))
      .def_static("from_file", &read_poisson_file, py::arg("path"))
      .def_static("jacobian", [](const std::string& f, const std::string& g) {
        return jacobian_bracket(parse_polynomial(f, 3), parse_polynomial(g, 3));
      })
      .def_static("random", &random_bivector, py::arg("dimension"), py::arg("max_degree"), py::arg("seed"),
                  py::arg("coeff_bound") = 2)
      .def_property_readonly("dimension", &PolyMultivector::dimension)
      .def_property_readonly("arity", &PolyMultivector::arity)
      .def("components", &multivector_dict)
      .def("is_zero", &PolyMultivector::is_zero)
      .def(py::self == py::self);

  m.def("gamma1", &gamma1);
  m.def("gamma2", &gamma2);
  m.def("schouten_components", &schouten_components);
  m.def("jacobi_check", &jacobi_check);
  m.def("evaluate", [](const GraphSum& s, const PolyMultivector& P) { return eval_graph_sum(s, P).to_multivector(); },
        "Evaluate a multivector graph sum on a bi-vector.");
  m.def("annihilating_ratio", [](const PolyMultivector& P) -> py::object {
    auto r = annihilating_ratio(P);
    if (r.dimension == 0) return py::none();
    if (r.dimension == 2) return py::str("all");
    return py::make_tuple(to_fraction(r.a), to_fraction(r.b));
  });
}
