#include "vfrac/cocycle.hpp"

#include <algorithm>

namespace vfrac {

namespace {

using int128 = __int128;

int128 ceil_shift(int128 n, int t) {
    if (t >= 0) return n << t;
    int128 d = int128{1} << (-t);
    return (n + d - 1) / d;
}

struct PieceException {
    Dyadic x;   // domain-side point
    Dyadic y;   // v(x)
    int val;    // p_v(y)
};

// All points where nu(vx) deviates from slope + nu(x), found piecewise.
// On a piece vx = 2^s x + d the deviation is confined to x = 0 and to the
// dyadics with nu(x) >= nu(d) - s; those form the 2^-B grid, B = s - nu(d),
// and B never exceeds the piece depth, so the grid meets the piece in at
// most one point.
std::vector<PieceException> piece_exceptions(const VElement& v) {
    std::vector<PieceException> out;
    const std::vector<Sdi> dom = tree_to_sdp(v.dom());
    const std::vector<Sdi> ran = tree_to_sdp(v.ran());
    for (size_t i = 0; i < dom.size(); ++i) {
        const Sdi& piece = dom[i];
        const Sdi& image = ran[v.p().im[static_cast<int>(i)]];
        const int b = static_cast<int>(piece.addr.size());
        const int s = b - static_cast<int>(image.addr.size());
        const Dyadic a = piece.left();
        std::vector<Dyadic> candidates;
        if (a.is_zero()) candidates.push_back(Dyadic{});
        const Dyadic d = image.left() - shift(a, s);
        if (!d.is_zero()) {
            const int grid = s + d.exp();
            if (grid >= 0) {
                if (grid > b)
                    throw std::logic_error("piece_exceptions: grid finer than the piece");
                int128 k = ceil_shift(a.num(), grid - a.exp());
                int128 hi = (int128{a.num()} << (b - a.exp())) + 1;
                const int128 kend = ceil_shift(hi, grid - b);
                for (; k < kend; ++k) {
                    if (k == 0) continue;
                    candidates.push_back(
                        Dyadic::from_parts(static_cast<std::int64_t>(k), grid));
                }
            }
        }
        for (const Dyadic& x : candidates) {
            const Dyadic y = apply(v, x);
            const int val = s + nu(x) - nu(y);
            if (val != 0) out.push_back({x, y, val});
        }
    }
    return out;
}

} // namespace

ZValuedSupportMap ZValuedSupportMap::make(std::vector<std::pair<Dyadic, int>> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });
    ZValuedSupportMap m;
    for (const auto& [x, k] : entries) {
        if (!x.in_unit()) throw input_error("support map: point outside [0,1)");
        if (!m.support.empty() && m.support.back().first == x)
            throw input_error("support map: duplicate point");
        if (k != 0) m.support.emplace_back(x, k);
    }
    return m;
}

int ZValuedSupportMap::at(const Dyadic& x) const {
    for (const auto& [y, k] : support)
        if (y == x) return k;
    return 0;
}

ZValuedSupportMap zmap_add(const ZValuedSupportMap& a, const ZValuedSupportMap& b) {
    std::vector<std::pair<Dyadic, int>> entries;
    size_t i = 0, j = 0;
    while (i < a.support.size() || j < b.support.size()) {
        if (j == b.support.size() ||
            (i < a.support.size() && a.support[i].first < b.support[j].first)) {
            entries.push_back(a.support[i++]);
        } else if (i == a.support.size() || b.support[j].first < a.support[i].first) {
            entries.push_back(b.support[j++]);
        } else {
            entries.emplace_back(a.support[i].first, a.support[i].second + b.support[j].second);
            ++i, ++j;
        }
    }
    return ZValuedSupportMap::make(std::move(entries));
}

ZValuedSupportMap zmap_negate(const ZValuedSupportMap& a) {
    ZValuedSupportMap m = a;
    for (auto& [x, k] : m.support) k = -k;
    return m;
}

ZValuedSupportMap zmap_pullback(const ZValuedSupportMap& m, const VElement& v) {
    std::vector<std::pair<Dyadic, int>> entries;
    entries.reserve(m.support.size());
    for (const auto& [x, k] : m.support) entries.emplace_back(apply(v, x), k);
    return ZValuedSupportMap::make(std::move(entries));
}

std::string format_zmap(const ZValuedSupportMap& m) {
    std::string out;
    for (const auto& [x, k] : m.support) {
        if (!out.empty()) out += ';';
        out += format_dyadic(x);
        out += '=';
        out += std::to_string(k);
    }
    return out;
}

ZValuedSupportMap p_cocycle(const VElement& v) {
    std::vector<std::pair<Dyadic, int>> entries;
    for (const PieceException& e : piece_exceptions(v)) entries.emplace_back(e.y, e.val);
    return ZValuedSupportMap::make(std::move(entries));
}

std::vector<Dyadic> exception_set(const VElement& v) {
    std::vector<Dyadic> out;
    for (const PieceException& e : piece_exceptions(v)) out.push_back(e.x);
    std::sort(out.begin(), out.end());
    return out;
}

int group_power(const FiniteGroup& g, int a, long long k) {
    if (a < 0 || a >= g.order()) throw input_error("group_power: element out of range");
    const int ord = g.element_order(a);
    long long r = ((k % ord) + ord) % ord;
    int acc = 0;
    for (; r > 0; --r) acc = g.mul(acc, a);
    return acc;
}

SlopeCocycle slope_cocycle(const FiniteGroup& lambda, int zeta, const VElement& v) {
    if (zeta < 0 || zeta >= lambda.order())
        throw input_error("slope_cocycle: element out of range");
    if (!is_central(lambda, zeta)) throw input_error("slope_cocycle: zeta is not central");
    return {lambda, zeta, ell_function(v)};
}

CocycleOracle cocycle_from_pair(const FiniteGroup& lambda, int zeta, const KElement& f) {
    if (!(f.group() == lambda)) throw input_error("cocycle_from_pair: group mismatch");
    if (!is_central(lambda, zeta)) throw input_error("cocycle_from_pair: zeta is not central");
    return {lambda, [lambda, zeta, f](const VElement& v, const Dyadic& x) {
                const Dyadic pre = apply(invert(v), x);
                int val = group_power(lambda, zeta, slope_at(v, pre));
                val = lambda.mul(val, f.at(x));
                return lambda.mul(val, lambda.inv(f.at(pre)));
            }};
}

CocycleOracle cocycle_from_power(const FiniteGroup& lambda, int zeta) {
    if (!is_central(lambda, zeta)) throw input_error("cocycle_from_power: zeta is not central");
    return {lambda, [lambda, zeta](const VElement& v, const Dyadic& x) {
                return group_power(lambda, zeta, p_cocycle(v).at(x));
            }};
}

CocycleOracle cocycle_trivial(const FiniteGroup& lambda) {
    return {lambda, [](const VElement&, const Dyadic&) { return 0; }};
}

CocycleDecomposition decompose_cocycle(const CocycleOracle& c) {
    if (!c.eval) throw input_error("decompose_cocycle: empty oracle");
    const FiniteGroup lambda = c.lambda;
    const VElement x0 = parse_velement("10100:11000:1,2,3");
    const VElement swp = parse_velement("100:100:2,1");
    const VElement stab = find_in_stabilizer(Dyadic{}, 1);
    const std::vector<std::pair<VElement, VElement>> pairs = {
        {x0, swp}, {swp, x0}, {stab, x0}, {swp, swp}, {invert(x0), stab}};
    const std::vector<Dyadic> points = {Dyadic{}, parse_dyadic("1/4"), parse_dyadic("1/2"),
                                        parse_dyadic("5/8"), parse_dyadic("3/4")};
    for (const auto& [v, w] : pairs) {
        const VElement vw = multiply(v, w);
        const VElement vi = invert(v);
        for (const Dyadic& x : points) {
            const int lhs = c.eval(vw, x);
            const int rv = c.eval(v, x);
            const int rw = c.eval(w, apply(vi, x));
            for (int val : {lhs, rv, rw})
                if (val < 0 || val >= lambda.order() || !is_central(lambda, val))
                    throw input_error("decompose_cocycle: cocycle value is not central");
            if (lhs != lambda.mul(rv, rw))
                throw input_error("decompose_cocycle: cocycle identity violated");
        }
    }
    const int zeta = c.eval(stab, Dyadic{});
    CocycleOracle oracle = c;
    auto f = [oracle, lambda, zeta](const Dyadic& x) -> int {
        if (x.is_zero()) return 0;
        const VElement v = find_transitive(Dyadic{}, x);
        const int e = slope_at(v, Dyadic{});
        const int val = oracle.eval(v, x);
        return lambda.mul(val, lambda.inv(group_power(lambda, zeta, e)));
    };
    return {zeta, std::move(f)};
}

int gamma(const VElement& phi, const Dyadic& x) {
    if (!x.in_unit()) throw input_error("gamma: point outside [0,1)");
    const VElement v = x.is_zero() ? VElement{} : find_transitive(Dyadic{}, x);
    const VElement w = multiply(invert(phi), multiply(v, phi));
    const Dyadic pre = apply(invert(phi), Dyadic{});
    return slope_at(w, pre) - slope_at(v, Dyadic{});
}

int mu(const VElement& phi, const Dyadic& x) {
    return gamma(phi, x) - nu(apply(invert(phi), x)) + nu(x);
}

} // namespace vfrac
