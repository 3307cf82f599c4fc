#include "vfrac/velement.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace vfrac {

namespace {

bool are_siblings(const std::string& a, const std::string& b) {
    return a.size() == b.size() && !a.empty() && a.back() == '0' && b.back() == '1' &&
           a.compare(0, a.size() - 1, b, 0, b.size() - 1) == 0;
}

// Leaf-address form of a tree pair; reduction and refinement are simplest
// on sorted address lists, and trees are rebuilt at the end.
struct AddressTriple {
    std::vector<std::string> dom;
    std::vector<std::string> ran;
    std::vector<int> p;
};

AddressTriple to_addresses(const TreePairPerm& t) {
    return AddressTriple{t.dom.leaf_addresses(), t.ran.leaf_addresses(), t.p.im};
}

TreePairPerm from_addresses(const AddressTriple& a) {
    return TreePairPerm{tree_from_addresses(a.dom), tree_from_addresses(a.ran), Perm{a.p}};
}

// Cancel a caret pair: domain leaves i, i+1 are siblings mapped in order
// onto sibling range leaves.  Repeats until no such pair is left; the
// result is the unique reduced form.
void reduce_addresses(AddressTriple& a) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i + 1 < a.dom.size(); ++i) {
            int j = a.p[i];
            if (a.p[i + 1] != j + 1)
                continue;
            if (!are_siblings(a.dom[i], a.dom[i + 1]))
                continue;
            if (!are_siblings(a.ran[static_cast<size_t>(j)], a.ran[static_cast<size_t>(j) + 1]))
                continue;
            a.dom[i].pop_back();
            a.dom.erase(a.dom.begin() + static_cast<long>(i) + 1);
            a.ran[static_cast<size_t>(j)].pop_back();
            a.ran.erase(a.ran.begin() + j + 1);
            a.p.erase(a.p.begin() + static_cast<long>(i) + 1);
            for (int& q : a.p)
                if (q > j)
                    --q;
            changed = true;
            break;
        }
    }
}

// Index of the leaf whose interval contains x: the address is a prefix of
// x's digit word extended by zeros.
size_t leaf_containing(const std::vector<std::string>& addrs, const Dyadic& x) {
    std::string w = x.word();
    for (size_t i = 0; i < addrs.size(); ++i) {
        const std::string& a = addrs[i];
        size_t k = 0;
        while (k < a.size() && a[k] == (k < w.size() ? w[k] : '0'))
            ++k;
        if (k == a.size())
            return i;
    }
    throw std::logic_error("leaf lookup fell through a complete partition");
}

std::vector<std::pair<Sdi, int>> merge_siblings(std::vector<std::pair<Sdi, int>> pieces) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i + 1 < pieces.size(); ++i) {
            if (pieces[i].second == pieces[i + 1].second &&
                are_siblings(pieces[i].first.addr, pieces[i + 1].first.addr)) {
                pieces[i].first.addr.pop_back();
                pieces.erase(pieces.begin() + static_cast<long>(i) + 1);
                changed = true;
                break;
            }
        }
    }
    return pieces;
}

} // namespace

SlopeFunction::SlopeFunction(std::vector<std::pair<Sdi, int>> pieces) {
    std::sort(pieces.begin(), pieces.end(),
              [](const auto& a, const auto& b) { return a.first.addr < b.first.addr; });
    std::vector<std::string> addrs;
    addrs.reserve(pieces.size());
    for (const auto& pc : pieces)
        addrs.push_back(pc.first.addr);
    tree_from_addresses(addrs); // validates the partition
    pieces_ = merge_siblings(std::move(pieces));
}

int SlopeFunction::at(const Dyadic& x) const {
    std::vector<std::string> addrs;
    addrs.reserve(pieces_.size());
    for (const auto& pc : pieces_)
        addrs.push_back(pc.first.addr);
    return pieces_[leaf_containing(addrs, x)].second;
}

SlopeFunction add(const SlopeFunction& a, const SlopeFunction& b) {
    // Evaluate both on the common refinement of the two partitions.
    std::vector<std::string> aa, bb;
    for (const auto& pc : a.pieces())
        aa.push_back(pc.first.addr);
    for (const auto& pc : b.pieces())
        bb.push_back(pc.first.addr);
    Tree common = tree_union(tree_from_addresses(aa), tree_from_addresses(bb));
    std::vector<std::pair<Sdi, int>> pieces;
    for (auto& addr : common.leaf_addresses()) {
        Dyadic x = Dyadic::from_word(addr);
        pieces.push_back({Sdi{std::move(addr)}, a.at(x) + b.at(x)});
    }
    return SlopeFunction(std::move(pieces));
}

std::string format_slope_function(const SlopeFunction& f) {
    std::string out;
    for (size_t i = 0; i < f.pieces().size(); ++i) {
        if (i)
            out += ';';
        const auto& [sdi, label] = f.pieces()[i];
        Dyadic l = sdi.left();
        Dyadic r = l + Dyadic::from_parts(1, sdi.depth());
        out += "[" + format_dyadic(l) + "," + format_dyadic(r) + ")=" + std::to_string(label);
    }
    return out;
}

std::string to_string(VClass c) {
    switch (c) {
    case VClass::F: return "F";
    case VClass::T: return "T";
    default: return "V";
    }
}

VElement VElement::make(Tree dom, Tree ran, Perm p) {
    if (dom.leaf_count() != ran.leaf_count())
        throw input_error("tree pair with different leaf counts");
    if (p.size() != dom.leaf_count() || !is_permutation(p))
        throw input_error("leaf permutation does not match the trees");
    AddressTriple a = to_addresses(TreePairPerm{std::move(dom), std::move(ran), std::move(p)});
    reduce_addresses(a);
    TreePairPerm r = from_addresses(a);
    VElement v;
    v.dom_ = std::move(r.dom);
    v.ran_ = std::move(r.ran);
    v.p_ = std::move(r.p);
    return v;
}

std::strong_ordering operator<=>(const VElement& a, const VElement& b) {
    if (auto c = a.dom().encoding() <=> b.dom().encoding(); c != 0)
        return c;
    if (auto c = a.ran().encoding() <=> b.ran().encoding(); c != 0)
        return c;
    return a.p().im <=> b.p().im;
}

VElement reduce(const TreePairPerm& t) { return VElement::make(t.dom, t.ran, t.p); }

TreePairPerm with_domain(const VElement& v, const Tree& refined) {
    // Graft the expansion forest onto the domain; the same subtrees attach
    // to the image leaves, so the element is unchanged.
    Forest f = expansion_forest(v.dom(), refined);
    Forest g;
    g.trees.resize(f.trees.size());
    for (int i = 0; i < f.root_count(); ++i)
        g.trees[static_cast<size_t>(v.p().im[static_cast<size_t>(i)])] =
            f.trees[static_cast<size_t>(i)];

    Tree dom = compose_forests(f, Forest{{v.dom()}}).trees[0];
    Tree ran = compose_forests(g, Forest{{v.ran()}}).trees[0];

    std::vector<int> dom_off(f.trees.size() + 1, 0), ran_off(g.trees.size() + 1, 0);
    for (size_t i = 0; i < f.trees.size(); ++i)
        dom_off[i + 1] = dom_off[i] + f.trees[i].leaf_count();
    for (size_t i = 0; i < g.trees.size(); ++i)
        ran_off[i + 1] = ran_off[i] + g.trees[i].leaf_count();

    Perm q;
    q.im.resize(static_cast<size_t>(dom.leaf_count()));
    for (int i = 0; i < f.root_count(); ++i) {
        int j = v.p().im[static_cast<size_t>(i)];
        for (int l = 0; l < f.trees[static_cast<size_t>(i)].leaf_count(); ++l)
            q.im[static_cast<size_t>(dom_off[static_cast<size_t>(i)] + l)] =
                ran_off[static_cast<size_t>(j)] + l;
    }
    return TreePairPerm{std::move(dom), std::move(ran), std::move(q)};
}

VElement multiply(const VElement& v, const VElement& w) {
    // Rewrite both over the common refinement of w's range and v's domain.
    Tree common = tree_union(w.ran(), v.dom());
    VElement winv = invert(w);
    TreePairPerm wr = with_domain(winv, common); // w with range `common`
    TreePairPerm vr = with_domain(v, common);
    // wr maps `common` back onto w's (expanded) domain; invert its perm.
    return VElement::make(wr.ran, vr.ran, compose(vr.p, invert(wr.p)));
}

VElement invert(const VElement& v) {
    VElement r;
    r = VElement::make(v.ran(), v.dom(), invert(v.p()));
    return r;
}

VElement power(const VElement& v, int k) {
    VElement base = k < 0 ? invert(v) : v;
    int n = k < 0 ? -k : k;
    VElement acc;
    for (int i = 0; i < n; ++i)
        acc = multiply(acc, base);
    return acc;
}

VElement conjugate(const VElement& phi, const VElement& v) {
    return multiply(multiply(phi, v), invert(phi));
}

Dyadic apply(const VElement& v, const Dyadic& x) {
    if (!x.in_unit())
        throw input_error("point outside [0,1)");
    auto dom = v.dom().leaf_addresses();
    auto ran = v.ran().leaf_addresses();
    size_t i = leaf_containing(dom, x);
    const std::string& a = dom[i];
    const std::string& b = ran[static_cast<size_t>(v.p().im[i])];
    std::string w = x.word();
    std::string tail = w.size() > a.size() ? w.substr(a.size()) : std::string{};
    return Dyadic::from_word(b + tail);
}

int slope_at(const VElement& v, const Dyadic& x) {
    if (!x.in_unit())
        throw input_error("point outside [0,1)");
    auto dom = v.dom().leaf_addresses();
    auto ran = v.ran().leaf_addresses();
    size_t i = leaf_containing(dom, x);
    return static_cast<int>(dom[i].size()) -
           static_cast<int>(ran[static_cast<size_t>(v.p().im[i])].size());
}

SlopeFunction slope_function(const VElement& v) {
    auto dom = v.dom().leaf_addresses();
    auto ran = v.ran().leaf_addresses();
    std::vector<std::pair<Sdi, int>> pieces;
    for (size_t i = 0; i < dom.size(); ++i) {
        int label = static_cast<int>(dom[i].size()) -
                    static_cast<int>(ran[static_cast<size_t>(v.p().im[i])].size());
        pieces.push_back({Sdi{dom[i]}, label});
    }
    return SlopeFunction(std::move(pieces));
}

SlopeFunction ell_function(const VElement& v) {
    auto dom = v.dom().leaf_addresses();
    auto ran = v.ran().leaf_addresses();
    std::vector<std::pair<Sdi, int>> pieces;
    for (size_t i = 0; i < dom.size(); ++i) {
        int label = static_cast<int>(dom[i].size()) -
                    static_cast<int>(ran[static_cast<size_t>(v.p().im[i])].size());
        pieces.push_back({Sdi{ran[static_cast<size_t>(v.p().im[i])]}, label});
    }
    return SlopeFunction(std::move(pieces));
}

VClass classify(const VElement& v) {
    const Perm& p = v.p();
    if (p.is_identity())
        return VClass::F;
    int n = p.size();
    int d = p.im[0];
    for (int i = 0; i < n; ++i)
        if (p.im[static_cast<size_t>(i)] != (i + d) % n)
            return VClass::V;
    return VClass::T;
}

VElement find_in_stabilizer(const Dyadic& x, int s) {
    if (!x.in_unit())
        throw input_error("point outside [0,1)");
    if (s == 0)
        return VElement{};
    // Inside I = [x, x + 2^-|A|) use the three-interval map fixing the left
    // endpoint with slope 1/2: halves of I onto quarter, quarter, half.
    std::string A = x.word();
    std::vector<std::string> dom_in = {A + "0", A + "10", A + "11"};
    std::vector<std::string> ran_in = {A + "00", A + "01", A + "1"};

    std::vector<std::string> dom, ran;
    std::string prefix;
    for (char bit : A) {
        // sibling leaf of the path at this depth
        std::string other = prefix + (bit == '0' ? '1' : '0');
        dom.push_back(other);
        ran.push_back(other);
        prefix.push_back(bit);
    }
    dom.insert(dom.end(), dom_in.begin(), dom_in.end());
    ran.insert(ran.end(), ran_in.begin(), ran_in.end());
    std::sort(dom.begin(), dom.end());
    std::sort(ran.begin(), ran.end());
    // The two sorted lists pair up index-by-index: outside leaves are
    // common, and within I the three pieces map in order.
    Perm id = Perm::identity(static_cast<int>(dom.size()));
    VElement w = VElement::make(tree_from_addresses(dom), tree_from_addresses(ran), id);
    return power(w, -s);
}

VElement find_transitive(const Dyadic& x, const Dyadic& y) {
    if (!x.in_unit() || !y.in_unit())
        throw input_error("point outside [0,1)");
    if (x == y)
        return VElement{};
    std::string wx = x.word(), wy = y.word();
    size_t b = std::max({wx.size(), wy.size(), size_t{1}});
    wx.resize(b, '0');
    wy.resize(b, '0');

    // Minimal complete set of addresses containing wx and wy as leaves:
    // every proper prefix of either word is an internal node, and each
    // off-path sibling becomes a leaf.
    std::vector<std::string> addrs{wx, wy};
    for (const std::string& w : {wx, wy}) {
        std::string prefix;
        for (char bit : w) {
            std::string other = prefix + (bit == '0' ? '1' : '0');
            prefix.push_back(bit);
            bool on_path = wx.compare(0, other.size(), other) == 0 ||
                           wy.compare(0, other.size(), other) == 0;
            if (!on_path)
                addrs.push_back(other);
        }
    }
    std::sort(addrs.begin(), addrs.end());
    addrs.erase(std::unique(addrs.begin(), addrs.end()), addrs.end());

    Perm p = Perm::identity(static_cast<int>(addrs.size()));
    auto ix = std::find(addrs.begin(), addrs.end(), wx) - addrs.begin();
    auto iy = std::find(addrs.begin(), addrs.end(), wy) - addrs.begin();
    std::swap(p.im[static_cast<size_t>(ix)], p.im[static_cast<size_t>(iy)]);
    Tree t = tree_from_addresses(addrs);
    return VElement::make(t, t, p);
}

std::string format_velement(const VElement& v) {
    std::string out = v.dom().encoding() + ":" + v.ran().encoding() + ":";
    for (int i = 0; i < v.p().size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(v.p().im[static_cast<size_t>(i)] + 1);
    }
    return out;
}

VElement parse_velement(std::string_view text) {
    size_t c1 = text.find(':');
    size_t c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
    if (c2 == std::string_view::npos)
        throw input_error("element must be 'domainTree:rangeTree:permutation'");
    Tree dom = parse_tree(text.substr(0, c1));
    Tree ran = parse_tree(text.substr(c1 + 1, c2 - c1 - 1));
    Perm p;
    std::string perm_text(text.substr(c2 + 1));
    std::stringstream ss(perm_text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t used = 0;
        int v = std::stoi(item, &used);
        if (used != item.size())
            throw input_error("bad permutation entry: '" + item + "'");
        p.im.push_back(v - 1);
    }
    return VElement::make(std::move(dom), std::move(ran), std::move(p));
}

} // namespace vfrac
