#pragma once

#include "vfrac/fraction_group.hpp"

#include <functional>

namespace vfrac {

// Finitely supported integer-valued map on dyadics; keys canonical and
// strictly increasing, zero values dropped.
struct ZValuedSupportMap {
    std::vector<std::pair<Dyadic, int>> support;

    static ZValuedSupportMap make(std::vector<std::pair<Dyadic, int>> entries);
    int at(const Dyadic& x) const;
    bool empty() const { return support.empty(); }
    friend bool operator==(const ZValuedSupportMap&, const ZValuedSupportMap&) = default;
};

ZValuedSupportMap zmap_add(const ZValuedSupportMap& a, const ZValuedSupportMap& b);
ZValuedSupportMap zmap_negate(const ZValuedSupportMap& a);
// m ∘ v⁻¹: the support is carried forward by v, values unchanged.
ZValuedSupportMap zmap_pullback(const ZValuedSupportMap& m, const VElement& v);
std::string format_zmap(const ZValuedSupportMap& m);

// Perturbed slope cocycle: p_v(x) = ell_v(x) - nu(x) + nu(v^-1 x).
ZValuedSupportMap p_cocycle(const VElement& v);

// Points x where log2 v'(x) = nu(vx) - nu(x) fails; equals v^-1(supp p_v).
std::vector<Dyadic> exception_set(const VElement& v);

// a^k in g, any integer exponent.
int group_power(const FiniteGroup& g, int a, long long k);

// s(zeta)_v(x) = zeta^{ell_v(x)}, kept in factored form.
struct SlopeCocycle {
    FiniteGroup lambda;
    int zeta = 0;
    SlopeFunction exponent;

    int at(const Dyadic& x) const { return group_power(lambda, zeta, exponent.at(x)); }
};
SlopeCocycle slope_cocycle(const FiniteGroup& lambda, int zeta, const VElement& v);

// Pointwise evaluator v, x -> c_v(x) valued in an abelian coefficient group.
// The cocycle identity is a promise that gets spot-checked, never assumed.
struct CocycleOracle {
    FiniteGroup lambda;
    std::function<int(const VElement&, const Dyadic&)> eval;
};

// c_v(x) = zeta^{ell_v(x)} * f(x) * f(v^-1 x)^-1
CocycleOracle cocycle_from_pair(const FiniteGroup& lambda, int zeta, const KElement& f);
// c_v(x) = zeta^{p_v(x)}
CocycleOracle cocycle_from_power(const FiniteGroup& lambda, int zeta);
// c == e everywhere
CocycleOracle cocycle_trivial(const FiniteGroup& lambda);

struct CocycleDecomposition {
    int zeta = 0;
    std::function<int(const Dyadic&)> f; // normalized so f(0) = e
};

CocycleDecomposition decompose_cocycle(const CocycleOracle& c);

// gamma_phi(x): slope defect of conjugation by phi at 0, via any v with v0 = x.
int gamma(const VElement& phi, const Dyadic& x);
// mu_phi = gamma_phi - nu∘phi^-1 + nu
int mu(const VElement& phi, const Dyadic& x);

} // namespace vfrac
