#pragma once

#include "vfrac/cocycle.hpp"

namespace vfrac {

// x = a/2^b lies in the distinguished set Y = {(4k+1)/2^n} iff a = 1 mod 4.
bool in_Y(const Dyadic& x);

// Closed class of maps Q2 -> Gamma with exactly computable conjugation
// defect: a constant, times a finitely supported part, times central
// order-2 indicator twists along Y.  f(x) = g * finite(x) * prod zeta^[x in Y].
struct NormalizerMap {
    FiniteGroup group;
    int constant = 0;
    KElement finite;
    std::vector<int> indicators; // canonical: empty, or one nontrivial element

    explicit NormalizerMap(const FiniteGroup& g) : group(g), finite(g) {}
    int at(const Dyadic& x) const;
};

// Validates: indicators central with square = identity; collapses them.
NormalizerMap make_normalizer(const FiniteGroup& g, int constant, KElement finite,
                              const std::vector<int>& indicators);
NormalizerMap nm_constant(const FiniteGroup& g, int value);
NormalizerMap nm_finite(const KElement& k);
NormalizerMap nm_indicator(const FiniteGroup& g, int zeta);

NormalizerMap nm_mul(const NormalizerMap& a, const NormalizerMap& b);
NormalizerMap nm_inverse(const NormalizerMap& f);
// Y symmetric-difference vY, exact and finite for v in V.
std::vector<Dyadic> chi_defect(const VElement& v);
// x -> f(x) f(v^-1 x)^-1; finitely supported for every map in the class.
KElement nm_defect(const NormalizerMap& f, const VElement& v);
// x -> beta(f(phi^-1 x)), re-expressed inside the class.
NormalizerMap nm_transport(const VElement& phi, const GroupMap& beta, const NormalizerMap& f);
// eta^{mu_phi} as a class member (eta central); uses mu = const - p_phi.
NormalizerMap mu_power(const VElement& phi, const FiniteGroup& g, int eta);

// Grammar: 'const:g', 'finite:<K format>', 'chiY:zeta', joined by '*'.
std::string format_normalizer(const NormalizerMap& f);
NormalizerMap parse_normalizer(const FiniteGroup& g, std::string_view text);

// The four elementary automorphism families and their composite.
GElement E_apply(int zeta, const GElement& g);
GElement ad_apply(const NormalizerMap& f, const GElement& g);
GElement A_apply(const VElement& phi, const GroupMap& beta, const GElement& g);

struct AutTuple {
    int zeta = 0;
    NormalizerMap f;
    VElement phi;
    GroupMap beta;
};
// Validates: zeta central, beta an automorphism of f's group.
AutTuple make_auttuple(int zeta, NormalizerMap f, VElement phi, GroupMap beta);
AutTuple trivial_auttuple(const FiniteGroup& g);
// (e, constant g, id, ad(g^-1)): acts as the identity.
AutTuple xi_kernel(const FiniteGroup& g, int value);

GElement Xi_apply(const AutTuple& t, const GElement& g);
// Tuple whose action composes with t's to the identity, both ways.
AutTuple xi_inverse(const AutTuple& t);

// sigma(phi,beta)(zeta,f) = (beta(zeta), x -> beta(f(phi^-1 x)) * beta(zeta)^{mu_phi(x)}).
// `f` is the exact structured image; `eval` recomputes it from the defining
// formula for cross-checking.
struct SigmaImage {
    int zeta = 0;
    NormalizerMap f;
    std::function<int(const Dyadic&)> eval;
};
SigmaImage sigma_act(const VElement& phi, const GroupMap& beta, int zeta,
                     const NormalizerMap& f);

// Relabel the coefficient group by an isomorphism beta: the image lies over
// (beta.target, beta alpha beta^-1).
GElement isomone_apply(const GroupMap& beta, const GElement& g);

// k_0 = e, k_{n+1} = k_n alpha^n(k), k_{-m} = alpha^-1(k^-1)...alpha^-m(k^-1).
int k_chain(const GroupMap& alpha, int k, int n);
// Twisted conjugation carrying elements over (Gamma, alpha) to (Gamma, ad(k) alpha).
GElement isomtwo_apply(const GroupMap& alpha, int k, const GElement& g);

} // namespace vfrac
