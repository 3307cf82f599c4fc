#include "vfrac/automorphisms.hpp"

#include <algorithm>

namespace vfrac {

namespace {

using int128 = __int128;

int128 ceil_shift(int128 n, int t) {
    if (t >= 0) return n << t;
    int128 d = int128{1} << (-t);
    return (n + d - 1) / d;
}

void require_indicator(const FiniteGroup& g, int zeta) {
    if (zeta < 0 || zeta >= g.order())
        throw input_error("normalizer map: indicator out of range");
    if (g.mul(zeta, zeta) != 0)
        throw input_error("normalizer map: indicator must square to the identity");
    if (!is_central(g, zeta))
        throw input_error("normalizer map: indicator must be central");
}

// Collapse commuting order-2 twists into at most one element.
std::vector<int> collapse_indicators(const FiniteGroup& g, const std::vector<int>& zs) {
    int acc = 0;
    for (int z : zs) {
        require_indicator(g, z);
        acc = g.mul(acc, z);
    }
    if (acc == 0) return {};
    return {acc};
}

void require_same_group(const FiniteGroup& a, const FiniteGroup& b, const char* what) {
    if (!(a == b)) throw input_error(std::string(what) + ": group mismatch");
}

GroupMap require_automorphism(const GroupMap& beta, const char* what) {
    if (!(beta.source == beta.target))
        throw input_error(std::string(what) + ": map must be an automorphism");
    if (!is_bijective(beta))
        throw input_error(std::string(what) + ": map must be bijective");
    return beta;
}

} // namespace

bool in_Y(const Dyadic& x) { return !x.is_zero() && x.num() % 4 == 1; }

int NormalizerMap::at(const Dyadic& x) const {
    int val = group.mul(constant, finite.at(x));
    if (in_Y(x))
        for (int z : indicators) val = group.mul(val, z);
    return val;
}

NormalizerMap make_normalizer(const FiniteGroup& g, int constant, KElement finite,
                              const std::vector<int>& indicators) {
    if (constant < 0 || constant >= g.order())
        throw input_error("normalizer map: constant out of range");
    require_same_group(g, finite.group(), "normalizer map");
    NormalizerMap f(g);
    f.constant = constant;
    f.finite = std::move(finite);
    f.indicators = collapse_indicators(g, indicators);
    return f;
}

NormalizerMap nm_constant(const FiniteGroup& g, int value) {
    return make_normalizer(g, value, KElement(g), {});
}

NormalizerMap nm_finite(const KElement& k) {
    return make_normalizer(k.group(), 0, k, {});
}

NormalizerMap nm_indicator(const FiniteGroup& g, int zeta) {
    return make_normalizer(g, 0, KElement(g), {zeta});
}

NormalizerMap nm_mul(const NormalizerMap& a, const NormalizerMap& b) {
    require_same_group(a.group, b.group, "nm_mul");
    const FiniteGroup& g = a.group;
    // (g1 f1 z1)(g2 f2 z2) = (g1 g2) (g2^-1 f1 g2 * f2) (z1 z2)
    const int g2i = g.inv(b.constant);
    std::vector<std::pair<Dyadic, int>> moved;
    for (const auto& [x, val] : a.finite.support())
        moved.emplace_back(x, g.mul(g.mul(g2i, val), b.constant));
    KElement fin = k_mul(KElement::make(g, std::move(moved)), b.finite);
    std::vector<int> zs = a.indicators;
    zs.insert(zs.end(), b.indicators.begin(), b.indicators.end());
    return make_normalizer(g, g.mul(a.constant, b.constant), std::move(fin), zs);
}

NormalizerMap nm_inverse(const NormalizerMap& f) {
    const FiniteGroup& g = f.group;
    // (g0 fin z)^-1 = g0^-1 (g0 fin^-1 g0^-1) z
    const int gi = g.inv(f.constant);
    std::vector<std::pair<Dyadic, int>> moved;
    for (const auto& [x, val] : f.finite.support())
        moved.emplace_back(x, g.mul(g.mul(f.constant, g.inv(val)), gi));
    return make_normalizer(g, gi, KElement::make(g, std::move(moved)), f.indicators);
}

// Per affine piece vx = 2^s x + d membership in Y is preserved except on the
// 2^-(s - nu(d) + 1) grid: writing x = u/2^e, the image numerator is
// congruent to u mod 4 whenever e - s - d.exp >= 2.  With d = 0 the
// numerator is preserved outright.
std::vector<Dyadic> chi_defect(const VElement& v) {
    std::vector<Dyadic> out;
    const std::vector<Sdi> dom = tree_to_sdp(v.dom());
    const std::vector<Sdi> ran = tree_to_sdp(v.ran());
    for (size_t i = 0; i < dom.size(); ++i) {
        const Sdi& piece = dom[i];
        const Sdi& image = ran[v.p().im[static_cast<int>(i)]];
        const int b = static_cast<int>(piece.addr.size());
        const int s = b - static_cast<int>(image.addr.size());
        const Dyadic a = piece.left();
        const Dyadic d = image.left() - shift(a, s);
        if (d.is_zero()) continue;
        std::vector<Dyadic> candidates;
        if (a.is_zero()) candidates.push_back(Dyadic{});
        const int grid = s + d.exp() + 1;
        if (grid >= 0) {
            if (grid > b + 1)
                throw std::logic_error("chi_defect: grid finer than the piece");
            int128 k = ceil_shift(a.num(), grid - a.exp());
            int128 hi = (int128{a.num()} << (b - a.exp())) + 1;
            const int128 kend = ceil_shift(hi, grid - b);
            for (; k < kend; ++k) {
                if (k == 0) continue;
                candidates.push_back(Dyadic::from_parts(static_cast<std::int64_t>(k), grid));
            }
        }
        for (const Dyadic& x : candidates) {
            const Dyadic y = apply(v, x);
            if (in_Y(x) != in_Y(y)) out.push_back(y);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

KElement nm_defect(const NormalizerMap& f, const VElement& v) {
    const FiniteGroup& g = f.group;
    const VElement vi = invert(v);
    std::vector<Dyadic> candidates;
    for (const auto& [x, val] : f.finite.support()) {
        candidates.push_back(x);
        candidates.push_back(apply(v, x));
    }
    if (!f.indicators.empty())
        for (const Dyadic& y : chi_defect(v)) candidates.push_back(y);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    std::vector<std::pair<Dyadic, int>> points;
    for (const Dyadic& y : candidates) {
        const int val = g.mul(f.at(y), g.inv(f.at(apply(vi, y))));
        if (val != 0) points.emplace_back(y, val);
    }
    return KElement::make(g, std::move(points));
}

NormalizerMap nm_transport(const VElement& phi, const GroupMap& beta,
                           const NormalizerMap& f) {
    require_same_group(beta.source, f.group, "nm_transport");
    if (!is_bijective(beta)) throw input_error("nm_transport: map must be bijective");
    const FiniteGroup& h = beta.target;
    std::vector<std::pair<Dyadic, int>> moved;
    for (const auto& [x, val] : f.finite.support())
        moved.emplace_back(apply(phi, x), beta(val));
    KElement fin = KElement::make(h, std::move(moved));
    std::vector<int> zs;
    if (!f.indicators.empty()) {
        // chi_Y(phi^-1 x) = chi_Y(x) xor chi_{Y delta phiY}(x)
        std::vector<std::pair<Dyadic, int>> corr;
        int z = 0;
        for (int zi : f.indicators) z = h.mul(z, beta(zi));
        if (z != 0) {
            zs.push_back(z);
            for (const Dyadic& y : chi_defect(phi)) corr.emplace_back(y, z);
        }
        fin = k_mul(fin, KElement::make(h, std::move(corr)));
    }
    return make_normalizer(h, beta(f.constant), std::move(fin), zs);
}

NormalizerMap mu_power(const VElement& phi, const FiniteGroup& g, int eta) {
    if (!is_central(g, eta)) throw input_error("mu_power: element must be central");
    // mu_phi(x) = log2 phi'(phi^-1 0) - p_phi(x), exactly
    const int base = slope_at(phi, apply(invert(phi), Dyadic{}));
    std::vector<std::pair<Dyadic, int>> points;
    for (const auto& [y, p] : p_cocycle(phi).support)
        points.emplace_back(y, group_power(g, eta, -p));
    return make_normalizer(g, group_power(g, eta, base), KElement::make(g, std::move(points)),
                           {});
}

std::string format_normalizer(const NormalizerMap& f) {
    std::vector<std::string> parts;
    if (f.constant != 0) parts.push_back("const:" + f.group.name_of(f.constant));
    if (!f.finite.is_neutral()) parts.push_back("finite:" + format_kelement(f.finite));
    for (int z : f.indicators) parts.push_back("chiY:" + f.group.name_of(z));
    if (parts.empty()) return "const:" + f.group.name_of(0);
    std::string out;
    for (const std::string& p : parts) {
        if (!out.empty()) out += '*';
        out += p;
    }
    return out;
}

NormalizerMap parse_normalizer(const FiniteGroup& g, std::string_view text) {
    NormalizerMap acc = nm_constant(g, 0);
    size_t pos = 0;
    if (text.empty()) throw input_error("normalizer map: empty spec");
    while (pos <= text.size()) {
        size_t star = text.find('*', pos);
        if (star == std::string_view::npos) star = text.size();
        std::string_view factor = text.substr(pos, star - pos);
        size_t colon = factor.find(':');
        if (colon == std::string_view::npos)
            throw input_error("normalizer map: factor needs kind:value");
        std::string_view kind = factor.substr(0, colon);
        std::string_view rest = factor.substr(colon + 1);
        if (kind == "const") {
            acc = nm_mul(acc, nm_constant(g, g.index_of(rest)));
        } else if (kind == "finite") {
            acc = nm_mul(acc, nm_finite(parse_kelement(g, rest)));
        } else if (kind == "chiY") {
            acc = nm_mul(acc, nm_indicator(g, g.index_of(rest)));
        } else {
            throw input_error("normalizer map: unknown factor kind '" + std::string(kind) +
                              "'");
        }
        pos = star + 1;
        if (star == text.size()) break;
    }
    return acc;
}

GElement E_apply(int zeta, const GElement& g) {
    const FiniteGroup& grp = g.k.group();
    if (zeta < 0 || zeta >= grp.order()) throw input_error("E_apply: element out of range");
    if (!is_central(grp, zeta)) throw input_error("E_apply: zeta is not central");
    std::vector<std::pair<Dyadic, int>> points;
    for (const auto& [y, p] : p_cocycle(g.v).support)
        points.emplace_back(y, group_power(grp, zeta, p));
    return {k_mul(g.k, KElement::make(grp, std::move(points))), g.v};
}

GElement ad_apply(const NormalizerMap& f, const GElement& g) {
    require_same_group(f.group, g.k.group(), "ad_apply");
    const FiniteGroup& grp = f.group;
    std::vector<std::pair<Dyadic, int>> conj;
    for (const auto& [x, val] : g.k.support()) {
        const int fx = f.at(x);
        conj.emplace_back(x, grp.mul(grp.mul(fx, val), grp.inv(fx)));
    }
    KElement k = k_mul(KElement::make(grp, std::move(conj)), nm_defect(f, g.v));
    return {std::move(k), g.v};
}

GElement A_apply(const VElement& phi, const GroupMap& beta, const GElement& g) {
    require_automorphism(beta, "A_apply");
    require_same_group(beta.source, g.k.group(), "A_apply");
    std::vector<std::pair<Dyadic, int>> points;
    for (const auto& [x, val] : g.k.support())
        points.emplace_back(apply(phi, x), beta(val));
    return {KElement::make(beta.target, std::move(points)), conjugate(phi, g.v)};
}

AutTuple make_auttuple(int zeta, NormalizerMap f, VElement phi, GroupMap beta) {
    if (zeta < 0 || zeta >= f.group.order())
        throw input_error("auttuple: element out of range");
    if (!is_central(f.group, zeta)) throw input_error("auttuple: zeta is not central");
    require_automorphism(beta, "auttuple");
    require_same_group(beta.source, f.group, "auttuple");
    return {zeta, std::move(f), std::move(phi), std::move(beta)};
}

AutTuple trivial_auttuple(const FiniteGroup& g) {
    return make_auttuple(0, nm_constant(g, 0), VElement{}, identity_map(g));
}

AutTuple xi_kernel(const FiniteGroup& g, int value) {
    return make_auttuple(0, nm_constant(g, value), VElement{}, inner(g, g.inv(value)));
}

GElement Xi_apply(const AutTuple& t, const GElement& g) {
    return E_apply(t.zeta, ad_apply(t.f, A_apply(t.phi, t.beta, g)));
}

AutTuple xi_inverse(const AutTuple& t) {
    const FiniteGroup& g = t.f.group;
    const GroupMap beta_inv = invert_map(t.beta);
    const VElement phi_inv = invert(t.phi);
    const int zeta_inv = g.inv(beta_inv(t.zeta));
    NormalizerMap f = nm_mul(nm_transport(phi_inv, beta_inv, nm_inverse(t.f)),
                             mu_power(phi_inv, g, zeta_inv));
    return make_auttuple(zeta_inv, std::move(f), phi_inv, beta_inv);
}

SigmaImage sigma_act(const VElement& phi, const GroupMap& beta, int zeta,
                     const NormalizerMap& f) {
    require_automorphism(beta, "sigma_act");
    require_same_group(beta.source, f.group, "sigma_act");
    if (!is_central(f.group, zeta)) throw input_error("sigma_act: zeta is not central");
    const FiniteGroup grp = f.group;
    const int zeta_out = beta(zeta);
    NormalizerMap rep = nm_mul(nm_transport(phi, beta, f), mu_power(phi, grp, zeta_out));
    const GroupMap b = beta;
    const NormalizerMap base = f;
    auto eval = [phi, b, zeta_out, base, grp](const Dyadic& x) {
        const int direct = b(base.at(apply(invert(phi), x)));
        return grp.mul(direct, group_power(grp, zeta_out, mu(phi, x)));
    };
    return {zeta_out, std::move(rep), std::move(eval)};
}

GElement isomone_apply(const GroupMap& beta, const GElement& g) {
    if (!is_bijective(beta)) throw input_error("isomone_apply: map must be bijective");
    require_same_group(beta.source, g.k.group(), "isomone_apply");
    std::vector<std::pair<Dyadic, int>> points;
    for (const auto& [x, val] : g.k.support()) points.emplace_back(x, beta(val));
    return {KElement::make(beta.target, std::move(points)), g.v};
}

int k_chain(const GroupMap& alpha, int k, int n) {
    const FiniteGroup& g = alpha.source;
    require_automorphism(alpha, "k_chain");
    if (k < 0 || k >= g.order()) throw input_error("k_chain: element out of range");
    int acc = 0;
    if (n >= 0) {
        int t = k; // alpha^i(k)
        for (int i = 0; i < n; ++i) {
            acc = g.mul(acc, t);
            t = alpha(t);
        }
    } else {
        const GroupMap ainv = invert_map(alpha);
        int u = g.inv(k);
        for (int i = 0; i < -n; ++i) {
            u = ainv(u); // alpha^{-(i+1)}(k^-1)
            acc = g.mul(acc, u);
        }
    }
    return acc;
}

GElement isomtwo_apply(const GroupMap& alpha, int k, const GElement& g) {
    require_automorphism(alpha, "isomtwo_apply");
    require_same_group(alpha.source, g.k.group(), "isomtwo_apply");
    const FiniteGroup& grp = alpha.source;
    if (k < 0 || k >= grp.order()) throw input_error("isomtwo_apply: element out of range");
    const ZValuedSupportMap p = p_cocycle(g.v);
    std::vector<Dyadic> candidates;
    for (const auto& [y, val] : g.k.support()) candidates.push_back(y);
    for (const auto& [y, val] : p.support) candidates.push_back(y);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    std::vector<std::pair<Dyadic, int>> points;
    for (const Dyadic& y : candidates) {
        const int left = k_chain(alpha, k, nu(y));
        const int right = k_chain(alpha, k, nu(y) + p.at(y));
        const int val = grp.mul(grp.mul(left, g.k.at(y)), grp.inv(right));
        if (val != 0) {
            if (g.k.at(y) == 0 && p.at(y) == 0)
                throw std::logic_error("isomtwo_apply: defect escaped the exception set");
            points.emplace_back(y, val);
        }
    }
    return {KElement::make(grp, std::move(points)), g.v};
}

} // namespace vfrac
