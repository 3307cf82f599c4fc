#include "vfrac/fraction_group.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace vfrac {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
        s.remove_suffix(1);
    return s;
}

// alpha^k applied to a single element by table lookups; alpha must be
// bijective when k < 0.
int twist(const GroupMap& alpha, int k, int x) {
    if (k >= 0) {
        for (int i = 0; i < k; ++i)
            x = alpha.images[x];
        return x;
    }
    GroupMap back = invert_map(alpha);
    for (int i = 0; i < -k; ++i)
        x = back.images[x];
    return x;
}

void require_endo(const GroupMap& alpha, const FiniteGroup& group, const char* what) {
    if (!(alpha.source == group) || !(alpha.target == group))
        throw input_error(std::string(what) + ": map does not match the coefficient group");
}

} // namespace

KElement KElement::make(FiniteGroup group, std::vector<std::pair<Dyadic, int>> points) {
    std::sort(points.begin(), points.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    KElement k(std::move(group));
    for (auto& [x, g] : points) {
        if (!x.in_unit())
            throw input_error("support point outside [0,1)");
        if (g < 0 || g >= k.group_.order())
            throw input_error("decoration index out of range");
        if (!k.support_.empty() && k.support_.back().first == x)
            throw input_error("duplicate support point " + format_dyadic(x));
        if (g != 0)
            k.support_.emplace_back(x, g);
    }
    return k;
}

int KElement::at(const Dyadic& x) const {
    auto it = std::lower_bound(support_.begin(), support_.end(), x,
                               [](const auto& p, const Dyadic& v) { return p.first < v; });
    return it != support_.end() && it->first == x ? it->second : 0;
}

KElement k_point(const FiniteGroup& group, const Dyadic& x, int g) {
    return KElement::make(group, {{x, g}});
}

KElement k_mul(const KElement& a, const KElement& b) {
    if (!(a.group() == b.group()))
        throw input_error("coefficient group mismatch");
    std::vector<std::pair<Dyadic, int>> out;
    auto i = a.support().begin(), j = b.support().begin();
    while (i != a.support().end() || j != b.support().end()) {
        if (j == b.support().end() || (i != a.support().end() && i->first < j->first))
            out.push_back(*i++);
        else if (i == a.support().end() || j->first < i->first)
            out.push_back(*j++);
        else {
            out.emplace_back(i->first, a.group().mul(i->second, j->second));
            ++i, ++j;
        }
    }
    return KElement::make(a.group(), std::move(out));
}

KElement k_inv(const KElement& a) {
    std::vector<std::pair<Dyadic, int>> out;
    for (const auto& [x, g] : a.support())
        out.emplace_back(x, a.group().inv(g));
    return KElement::make(a.group(), std::move(out));
}

std::string format_kelement(const KElement& a) {
    std::ostringstream out;
    bool first = true;
    for (const auto& [x, g] : a.support()) {
        if (!first)
            out << ";";
        first = false;
        out << format_dyadic(x) << "=" << a.group().name_of(g);
    }
    return out.str();
}

KElement parse_kelement(const FiniteGroup& group, std::string_view text) {
    std::vector<std::pair<Dyadic, int>> points;
    text = trim(text);
    while (!text.empty()) {
        size_t semi = text.find(';');
        std::string_view item = trim(text.substr(0, semi));
        text = semi == std::string_view::npos ? std::string_view{} : text.substr(semi + 1);
        if (item.empty())
            throw input_error("empty item in support list");
        size_t eq = item.find('=');
        if (eq == std::string_view::npos)
            throw input_error("support item needs the form x=g");
        points.emplace_back(parse_dyadic(trim(item.substr(0, eq))),
                            group.index_of(trim(item.substr(eq + 1))));
    }
    return KElement::make(group, std::move(points));
}

KElement jones_act(const GroupMap& alpha, const VElement& v, const KElement& a) {
    require_endo(alpha, a.group(), "jones_act");
    if (!is_bijective(alpha))
        throw input_error("jones_act needs a bijective twist");
    std::vector<std::pair<Dyadic, int>> out;
    for (const auto& [x, g] : a.support())
        out.emplace_back(apply(v, x), twist(alpha, slope_at(v, x), g));
    return KElement::make(a.group(), std::move(out));
}

GElement g_neutral(const FiniteGroup& group) {
    return GElement{KElement(group), VElement{}};
}

GElement g_multiply(const GroupMap& alpha, const GElement& a, const GElement& b) {
    return GElement{k_mul(a.k, jones_act(alpha, a.v, b.k)), multiply(a.v, b.v)};
}

GElement g_invert(const GroupMap& alpha, const GElement& a) {
    VElement w = invert(a.v);
    return GElement{jones_act(alpha, w, k_inv(a.k)), w};
}

std::string format_gelement(const GElement& g) {
    std::string k = format_kelement(g.k);
    return (k.empty() ? std::string{} : k + " ") + "* " + format_velement(g.v);
}

GElement parse_gelement(const FiniteGroup& group, std::string_view text) {
    size_t star = text.find('*');
    if (star == std::string_view::npos)
        return GElement{KElement(group), parse_velement(trim(text))};
    std::string_view kpart = trim(text.substr(0, star));
    std::string_view vpart = trim(text.substr(star + 1));
    return GElement{kpart.empty() ? KElement(group) : parse_kelement(group, kpart),
                    parse_velement(vpart)};
}

KElement theta_t(const GroupMap& alpha, const TreeRepresentative& rep) {
    if (!(alpha.source == alpha.target))
        throw input_error("theta_t: twist must be an endomorphism");
    if (!is_bijective(alpha))
        throw input_error("theta_t needs a bijective twist");
    auto addresses = rep.tree.leaf_addresses();
    if (addresses.size() != rep.values.size())
        throw input_error("tree representative has wrong value count");
    std::vector<std::pair<Dyadic, int>> out;
    for (size_t i = 0; i < addresses.size(); ++i)
        out.emplace_back(Dyadic::from_word(addresses[i]),
                         twist(alpha, -static_cast<int>(addresses[i].size()), rep.values[i]));
    return KElement::make(alpha.source, std::move(out));
}

TreeRepresentative theta_inverse(const GroupMap& alpha, const KElement& a) {
    require_endo(alpha, a.group(), "theta_inverse");
    if (!is_bijective(alpha))
        throw input_error("theta_inverse needs a bijective twist");
    // Trie over the trailing-zero-free words of the support points; completing
    // it makes every support point the left endpoint of some leaf.
    std::set<std::string> prefixes;
    for (const auto& [x, g] : a.support()) {
        std::string w = x.word();
        for (size_t l = 0; l <= w.size(); ++l)
            prefixes.insert(w.substr(0, l));
    }
    prefixes.insert("");
    std::string enc;
    auto walk = [&](auto&& self, const std::string& p) -> void {
        bool internal = prefixes.count(p + "0") || prefixes.count(p + "1");
        if (!internal) {
            enc += '0';
            return;
        }
        enc += '1';
        self(self, p + "0");
        self(self, p + "1");
    };
    walk(walk, "");
    Tree t = parse_tree(enc);
    std::vector<int> values;
    for (const auto& addr : t.leaf_addresses())
        values.push_back(
            twist(alpha, static_cast<int>(addr.size()), a.at(Dyadic::from_word(addr))));
    return TreeRepresentative{std::move(t), std::move(values)};
}

DecoratedMorphism make_decorated(Forest forest, Perm perm, std::vector<int> decorations,
                                 GroupMap alpha0, GroupMap alpha1) {
    if (!(alpha0.source == alpha0.target) || !(alpha1.source == alpha1.target) ||
        !(alpha0.source == alpha1.source))
        throw input_error("decoration maps must be endomorphisms of one group");
    const int m = forest.leaf_count();
    if (static_cast<int>(perm.im.size()) != m)
        throw input_error("permutation size does not match leaf count");
    if (!is_permutation(perm))
        throw input_error("not a permutation");
    if (static_cast<int>(decorations.size()) != m)
        throw input_error("decoration count does not match leaf count");
    for (int g : decorations)
        if (g < 0 || g >= alpha0.source.order())
            throw input_error("decoration index out of range");
    return DecoratedMorphism{std::move(forest), std::move(perm), std::move(decorations),
                             std::move(alpha0), std::move(alpha1)};
}

DecoratedMorphism identity_decorated(int strands, const GroupMap& alpha0,
                                     const GroupMap& alpha1) {
    Forest f;
    f.trees.assign(static_cast<size_t>(strands), Tree{});
    return make_decorated(std::move(f), Perm::identity(strands),
                          std::vector<int>(static_cast<size_t>(strands), 0), alpha0, alpha1);
}

namespace {

void decorate_tree(const GroupMap& a0, const GroupMap& a1, const std::string& enc, size_t& pos,
                   int g, std::vector<int>& out) {
    if (enc[pos] == '0') {
        ++pos;
        out.push_back(g);
        return;
    }
    ++pos;
    decorate_tree(a0, a1, enc, pos, a0.images[g], out);
    decorate_tree(a0, a1, enc, pos, a1.images[g], out);
}

} // namespace

std::vector<int> phi_lift(const GroupMap& alpha0, const GroupMap& alpha1, const Forest& f,
                          const std::vector<int>& roots) {
    if (roots.size() != f.trees.size())
        throw input_error("one root decoration per tree required");
    std::vector<int> out;
    for (size_t i = 0; i < f.trees.size(); ++i) {
        size_t pos = 0;
        decorate_tree(alpha0, alpha1, f.trees[i].encoding(), pos, roots[i], out);
    }
    return out;
}

DecoratedMorphism cphi_compose(const DecoratedMorphism& m2, const DecoratedMorphism& m1) {
    if (!(m1.alpha0 == m2.alpha0) || !(m1.alpha1 == m2.alpha1))
        throw input_error("decorated morphisms live over different functors");
    if (m2.root_count() != m1.leaf_count())
        throw input_error("arity mismatch in decorated composition");
    const FiniteGroup& gr = m1.alpha0.source;

    // Route m2's forest past m1's permutation, then graft onto m1's forest.
    CabledForest moved = push_perm_through_forest(m1.perm, m2.forest);
    Forest forest = compose_forests(moved.rearranged, m1.forest);
    // m1's decorations ride up through m2's forest (in m2's own leaf order).
    std::vector<int> lifted = phi_lift(m1.alpha0, m1.alpha1, m2.forest, m1.decorations);
    Perm perm = compose(m2.perm, moved.cabled);
    Perm undo2 = invert(m2.perm);
    std::vector<int> decorations(lifted.size());
    for (size_t j = 0; j < lifted.size(); ++j)
        decorations[j] = gr.mul(m2.decorations[j], lifted[static_cast<size_t>(undo2.im[j])]);
    return make_decorated(std::move(forest), std::move(perm), std::move(decorations),
                          m1.alpha0, m1.alpha1);
}

DecoratedMorphism solve_expansion(const DecoratedMorphism& m, const Tree& target) {
    if (m.root_count() != 1)
        throw input_error("expansion solving needs a single-tree morphism");
    const FiniteGroup& gr = m.alpha0.source;
    Forest steps = expansion_forest(m.forest.trees[0], target);
    Perm undo = invert(m.perm);
    Forest rearranged;
    rearranged.trees.resize(steps.trees.size());
    for (size_t j = 0; j < steps.trees.size(); ++j)
        rearranged.trees[j] = steps.trees[static_cast<size_t>(undo.im[j])];
    CabledForest moved = push_perm_through_forest(m.perm, rearranged);
    Perm perm = invert(moved.cabled);
    std::vector<int> lifted = phi_lift(m.alpha0, m.alpha1, rearranged, m.decorations);
    std::vector<int> decorations(lifted.size());
    for (size_t j = 0; j < lifted.size(); ++j)
        decorations[j] = gr.inv(lifted[static_cast<size_t>(moved.cabled.im[j])]);
    return make_decorated(std::move(rearranged), std::move(perm), std::move(decorations),
                          m.alpha0, m.alpha1);
}

CPhiFraction make_fraction(DecoratedMorphism num, DecoratedMorphism den) {
    if (num.root_count() != 1 || den.root_count() != 1)
        throw input_error("fraction parts must be single trees");
    if (num.leaf_count() != den.leaf_count())
        throw input_error("fraction parts must have equal leaf counts");
    if (!(num.alpha0 == den.alpha0) || !(num.alpha1 == den.alpha1))
        throw input_error("fraction parts live over different functors");
    return CPhiFraction{std::move(num), std::move(den)};
}

namespace {

// Inverse of the invertible caret-free morphism (perm, decorations) of m.
DecoratedMorphism strand_inverse(const DecoratedMorphism& m) {
    const FiniteGroup& gr = m.alpha0.source;
    const int n = static_cast<int>(m.perm.im.size());
    Perm inv_perm = invert(m.perm);
    std::vector<int> dec(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j)
        dec[static_cast<size_t>(j)] =
            gr.inv(m.decorations[static_cast<size_t>(m.perm.im[static_cast<size_t>(j)])]);
    Forest f;
    f.trees.assign(static_cast<size_t>(n), Tree{});
    return make_decorated(std::move(f), std::move(inv_perm), std::move(dec), m.alpha0,
                          m.alpha1);
}

// Rewrite so the numerator is a bare tree; the denominator keeps everything.
CPhiFraction normalize_fraction(const CPhiFraction& f) {
    Forest triv;
    triv.trees.assign(static_cast<size_t>(f.num.leaf_count()), Tree{});
    DecoratedMorphism q = make_decorated(std::move(triv), f.num.perm, f.num.decorations,
                                         f.num.alpha0, f.num.alpha1);
    DecoratedMorphism qinv = strand_inverse(q);
    return CPhiFraction{cphi_compose(qinv, f.num), cphi_compose(qinv, f.den)};
}

} // namespace

CPhiFraction fraction_multiply(const CPhiFraction& a, const CPhiFraction& b) {
    if (!(a.num.alpha0 == b.num.alpha0) || !(a.num.alpha1 == b.num.alpha1))
        throw input_error("fractions live over different functors");
    Tree u = tree_union(a.den.forest.trees[0], b.num.forest.trees[0]);
    DecoratedMorphism lift_a = solve_expansion(a.den, u);
    DecoratedMorphism lift_b = solve_expansion(b.num, u);
    return make_fraction(cphi_compose(lift_a, a.num), cphi_compose(lift_b, b.den));
}

CPhiFraction fraction_invert(const CPhiFraction& a) {
    return CPhiFraction{a.den, a.num};
}

bool fraction_equal(const CPhiFraction& a, const CPhiFraction& b) {
    if (!(a.num.alpha0 == b.num.alpha0) || !(a.num.alpha1 == b.num.alpha1))
        return false;
    CPhiFraction na = normalize_fraction(a);
    CPhiFraction nb = normalize_fraction(b);
    Tree u = tree_union(na.den.forest.trees[0], nb.den.forest.trees[0]);
    DecoratedMorphism ea = solve_expansion(na.den, u);
    DecoratedMorphism eb = solve_expansion(nb.den, u);
    return cphi_compose(ea, na.num) == cphi_compose(eb, nb.num);
}

GElement fraction_to_semidirect(const CPhiFraction& f) {
    const GroupMap& alpha = f.num.alpha0;
    if (!is_bijective(alpha))
        throw input_error("semidirect form needs a bijective twist");
    for (int v : f.num.alpha1.images)
        if (v != 0)
            throw input_error("semidirect form needs a trivial second decoration map");
    CPhiFraction n = normalize_fraction(f);
    const Tree& t = n.num.forest.trees[0];
    const Tree& s = n.den.forest.trees[0];
    KElement k = theta_t(alpha, TreeRepresentative{t, n.den.decorations});
    return GElement{std::move(k), VElement::make(s, t, n.den.perm)};
}

KElement jones_act_by_refinement(const GroupMap& alpha, const VElement& v, const KElement& a) {
    require_endo(alpha, a.group(), "jones_act_by_refinement");
    GroupMap eps{alpha.source, alpha.source, std::vector<int>(alpha.images.size(), 0)};
    TreeRepresentative rep = theta_inverse(alpha, a);
    Tree common = tree_union(rep.tree, v.dom());
    Forest steps = expansion_forest(rep.tree, common);
    std::vector<int> values = phi_lift(alpha, eps, steps, rep.values);
    TreePairPerm moved = with_domain(v, common);
    std::vector<int> out(values.size());
    for (size_t i = 0; i < values.size(); ++i)
        out[static_cast<size_t>(moved.p.im[i])] = values[i];
    return theta_t(alpha, TreeRepresentative{moved.ran, std::move(out)});
}

} // namespace vfrac
