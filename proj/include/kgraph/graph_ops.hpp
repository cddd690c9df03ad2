#pragma once

#include <vector>

#include "kgraph/graph_sum.hpp"

namespace kgraph {

// Which vertices of b may receive the edges that targeted the replaced sink.
enum class LeibnizTargets { AllVertices, InternalOnly };

// Labelled terms of a with sink i replaced by b. Result sinks: a's 0..i-1,
// then b's sinks, then a's remaining sinks; internal vertices: a's, then b's.
std::vector<KontsevichGraph> insert_labelled(const KontsevichGraph& a, int i, const KontsevichGraph& b,
                                             LeibnizTargets mode = LeibnizTargets::AllVertices);
GraphSum insert(const KontsevichGraph& a, int i, const KontsevichGraph& b,
                LeibnizTargets mode = LeibnizTargets::AllVertices);

// Applies sink relabelling v -> perm[v] to every term.
GraphSum permute_sinks(const GraphSum& s, const std::vector<int>& perm);

// (1/m!) sum over S_m of sign(sigma) * sigma(s). Throws on mixed sink counts.
GraphSum skew_symmetrize(const GraphSum& s, int m);

// Schouten bracket of multivector sums of arities k and l (inferred from
// the terms). Normalized as (1/(k! l!)) sum over S_{k+l-1} of signed
// insertions. Throws std::invalid_argument on mixed arity or non-multivector
// terms.
GraphSum schouten_bracket(const GraphSum& a, const GraphSum& b);
GraphSum schouten_bracket(const GraphSum& a, int k, const GraphSum& b, int l);

// Sum over sigma in S_m of sign(sigma) times the sign with which sigma(g)
// reproduces g's normal form. Zero when the orbit cancels under skew_symmetrize.
int signed_stabilizer(const KontsevichGraph& g);

// Orbit-minimal representative of g under sink permutations (a normal form).
KontsevichGraph orbit_representative(const KontsevichGraph& g);

// Coefficient c of the orbit of r in an antisymmetric sum s, meaning s
// contains c * sum_sigma sign(sigma) sigma(r). Throws if the orbit cancels.
Rational orbit_coefficient(const GraphSum& s, const KontsevichGraph& r);

// One representative per sink-permutation orbit with its orbit_coefficient.
GraphSum collect_orbits(const GraphSum& s);

KontsevichGraph wedge_graph();
KontsevichGraph gamma1_graph();
KontsevichGraph gamma2_prime_graph();

// The three-term Jacobiator sum on three sinks.
GraphSum jacobiator_sum();

// a * Gamma1 + b * Gamma2 with Gamma2 = (Gamma2' - Gamma2' with sinks swapped) / 2.
GraphSum tetra_flow(const Rational& a, const Rational& b);

// [[P, tetra_flow(a, b)]].
GraphSum lhs_trivector(const Rational& a, const Rational& b);

Integer factorial(int n);

}  // namespace kgraph
