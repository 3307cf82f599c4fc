#include "vfrac/classify.hpp"

#include <algorithm>
#include <numeric>

namespace vfrac {

namespace {

void require_endo(const FiniteGroup& g, const GroupMap& alpha, const char* what) {
    if (!(alpha.source == g) || !(alpha.target == g))
        throw input_error(std::string(what) + ": map is not an endomorphism of the group");
    int n = g.order();
    if (static_cast<int>(alpha.images.size()) != n)
        throw input_error(std::string(what) + ": image list has the wrong length");
    for (int x : alpha.images)
        if (x < 0 || x >= n) throw input_error(std::string(what) + ": image out of range");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (alpha(g.mul(a, b)) != g.mul(alpha(a), alpha(b)))
                throw input_error(std::string(what) + ": map is not multiplicative");
}

bool witness_equation(const LimPair& L, const LimPair& R, const GroupMap& beta, int h) {
    for (int x = 0; x < L.group.order(); ++x) {
        int lhs = R.alpha(beta(x));
        int rhs = R.group.mul(h, R.group.mul(beta(L.alpha(x)), R.group.inv(h)));
        if (lhs != rhs) return false;
    }
    return true;
}

} // namespace

LimPair limit_pair(const FiniteGroup& g, const GroupMap& alpha) {
    require_endo(g, alpha, "limit_pair");
    std::vector<int> cur(g.order());
    std::iota(cur.begin(), cur.end(), 0);
    int stab = 0;
    for (;;) {
        std::vector<int> next;
        next.reserve(cur.size());
        for (int x : cur) next.push_back(alpha(x));
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        if (next == cur) break;
        cur = std::move(next);
        ++stab;
    }
    int m = static_cast<int>(cur.size());
    std::vector<int> pos(g.order(), -1);
    for (int i = 0; i < m; ++i) pos[cur[i]] = i;
    std::vector<std::vector<int>> table(m, std::vector<int>(m));
    std::vector<std::string> names(m);
    for (int i = 0; i < m; ++i) {
        names[i] = g.name_of(cur[i]);
        for (int j = 0; j < m; ++j) table[i][j] = pos[g.mul(cur[i], cur[j])];
    }
    FiniteGroup lim = FiniteGroup::from_table(std::move(table), std::move(names));
    std::vector<int> restricted(m);
    for (int i = 0; i < m; ++i) restricted[i] = pos[alpha(cur[i])];
    GroupMap la = make_map(lim, lim, std::move(restricted));
    return {std::move(lim), std::move(la), stab};
}

IsoDecision decide_iso(const FiniteGroup& g1, const GroupMap& a1, const FiniteGroup& g2,
                       const GroupMap& a2) {
    LimPair L = limit_pair(g1, a1);
    LimPair R = limit_pair(g2, a2);
    for (const GroupMap& beta : enumerate_isomorphisms(L.group, R.group))
        for (int h = 0; h < R.group.order(); ++h)
            if (witness_equation(L, R, beta, h)) return {true, IsoWitness{beta, h}};
    return {false, std::nullopt};
}

bool check_witness(const FiniteGroup& g1, const GroupMap& a1, const FiniteGroup& g2,
                   const GroupMap& a2, const IsoWitness& w) {
    LimPair L = limit_pair(g1, a1);
    LimPair R = limit_pair(g2, a2);
    if (!(w.beta.source == L.group) || !(w.beta.target == R.group)) return false;
    int n = L.group.order();
    if (static_cast<int>(w.beta.images.size()) != n) return false;
    for (int x : w.beta.images)
        if (x < 0 || x >= R.group.order()) return false;
    if (!is_bijective(w.beta)) return false;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (w.beta(L.group.mul(a, b)) != R.group.mul(w.beta(a), w.beta(b))) return false;
    if (w.h < 0 || w.h >= R.group.order()) return false;
    return witness_equation(L, R, w.beta, w.h);
}

} // namespace vfrac
