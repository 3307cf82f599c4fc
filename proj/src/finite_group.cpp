#include "vfrac/finite_group.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace vfrac {

FiniteGroup::FiniteGroup() : table_{{0}}, inverse_{0} {}

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> table,
                                    std::vector<std::string> names) {
    const int n = static_cast<int>(table.size());
    if (n == 0)
        throw input_error("group table is empty");
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != n)
            throw input_error("group table is not square");
        for (int e : row)
            if (e < 0 || e >= n)
                throw input_error("group table entry out of range");
    }
    for (int x = 0; x < n; ++x)
        if (table[0][x] != x || table[x][0] != x)
            throw input_error("index 0 is not an identity");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (table[table[a][b]][c] != table[a][table[b][c]])
                    throw input_error("table is not associative");
    std::vector<int> inverse(n, -1);
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y)
            if (table[x][y] == 0 && table[y][x] == 0) {
                inverse[x] = y;
                break;
            }
        if (inverse[x] < 0)
            throw input_error("element " + std::to_string(x) + " has no inverse");
    }
    if (!names.empty()) {
        if (static_cast<int>(names.size()) != n)
            throw input_error("wrong number of element names");
        for (const auto& s : names)
            if (s.empty() || s.find_first_of(" \t\n") != std::string::npos)
                throw input_error("bad element name");
        auto sorted = names;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw input_error("duplicate element name");
    }
    FiniteGroup g;
    g.table_ = std::move(table);
    g.inverse_ = std::move(inverse);
    g.names_ = std::move(names);
    return g;
}

int FiniteGroup::mul(int a, int b) const { return table_.at(a).at(b); }

int FiniteGroup::inv(int a) const { return inverse_.at(a); }

int FiniteGroup::element_order(int a) const {
    int k = 1, x = a;
    while (x != 0) {
        x = mul(x, a);
        ++k;
    }
    return k;
}

bool FiniteGroup::is_abelian() const {
    const int n = order();
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (mul(a, b) != mul(b, a))
                return false;
    return true;
}

std::string FiniteGroup::name_of(int a) const {
    if (a < 0 || a >= order())
        throw input_error("element index out of range");
    return names_.empty() ? std::to_string(a) : names_[a];
}

int FiniteGroup::index_of(std::string_view token) const {
    for (int i = 0; i < static_cast<int>(names_.size()); ++i)
        if (names_[i] == token)
            return i;
    int v = 0;
    auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || p != token.data() + token.size() || v < 0 || v >= order())
        throw input_error("unknown group element '" + std::string(token) + "'");
    return v;
}

FiniteGroup load_group(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string word;
    if (!(in >> word) || word != "order")
        throw input_error("group file must start with 'order N'");
    int n = 0;
    if (!(in >> n) || n <= 0 || n > 4096)
        throw input_error("bad group order");
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (auto& row : table)
        for (int& e : row)
            if (!(in >> e))
                throw input_error("truncated group table");
    std::vector<std::string> names;
    if (in >> word) {
        if (word != "names")
            throw input_error("unexpected token '" + word + "' after table");
        for (int i = 0; i < n; ++i) {
            if (!(in >> word))
                throw input_error("truncated names line");
            names.push_back(word);
        }
    }
    if (in >> word)
        throw input_error("trailing tokens in group file");
    return FiniteGroup::from_table(std::move(table), std::move(names));
}

std::string format_group(const FiniteGroup& g) {
    std::ostringstream out;
    out << "order " << g.order() << "\n";
    for (const auto& row : g.table()) {
        for (size_t i = 0; i < row.size(); ++i)
            out << (i ? " " : "") << row[i];
        out << "\n";
    }
    if (!g.names().empty()) {
        out << "names";
        for (const auto& s : g.names())
            out << " " << s;
        out << "\n";
    }
    return out.str();
}

namespace {

FiniteGroup cyclic(int n) {
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    std::vector<std::string> names;
    for (int a = 0; a < n; ++a) {
        names.push_back(std::to_string(a));
        for (int b = 0; b < n; ++b)
            t[a][b] = (a + b) % n;
    }
    return FiniteGroup::from_table(std::move(t), std::move(names));
}

FiniteGroup klein() {
    std::vector<std::vector<int>> t(4, std::vector<int>(4));
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            t[a][b] = a ^ b;
    return FiniteGroup::from_table(std::move(t), {"00", "01", "10", "11"});
}

FiniteGroup symmetric3() {
    // Permutations of {1,2,3} in lexicographic one-line order; product p*q acts q first.
    const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    auto index_of = [&](const int p[3]) {
        for (int i = 0; i < 6; ++i)
            if (perms[i][0] == p[0] && perms[i][1] == p[1] && perms[i][2] == p[2])
                return i;
        return -1;
    };
    std::vector<std::vector<int>> t(6, std::vector<int>(6));
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
            int c[3];
            for (int x = 0; x < 3; ++x)
                c[x] = perms[a][perms[b][x]];
            t[a][b] = index_of(c);
        }
    return FiniteGroup::from_table(std::move(t),
                                   {"e", "(23)", "(12)", "(123)", "(132)", "(13)"});
}

FiniteGroup dihedral4() {
    // r^i s^j at index i + 4j; s r s = r^-1.
    auto idx = [](int i, int j) { return ((i % 4) + 4) % 4 + 4 * (((j % 2) + 2) % 2); };
    std::vector<std::vector<int>> t(8, std::vector<int>(8));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 2; ++l)
                    t[idx(i, j)][idx(k, l)] = idx(j ? i - k : i + k, j + l);
    return FiniteGroup::from_table(std::move(t),
                                   {"e", "r", "r2", "r3", "s", "rs", "r2s", "r3s"});
}

} // namespace

const std::vector<std::string>& sample_group_names() {
    static const std::vector<std::string> names = {"Z2", "Z3", "Z4", "Z6", "Z2xZ2", "S3", "D4"};
    return names;
}

FiniteGroup sample_group(std::string_view name) {
    if (name == "Z2")
        return cyclic(2);
    if (name == "Z3")
        return cyclic(3);
    if (name == "Z4")
        return cyclic(4);
    if (name == "Z6")
        return cyclic(6);
    if (name == "Z2xZ2")
        return klein();
    if (name == "S3")
        return symmetric3();
    if (name == "D4")
        return dihedral4();
    throw input_error("unknown builtin group '" + std::string(name) + "'");
}

bool is_central(const FiniteGroup& g, int a) {
    for (int b = 0; b < g.order(); ++b)
        if (g.mul(a, b) != g.mul(b, a))
            return false;
    return true;
}

std::vector<int> center(const FiniteGroup& g) {
    std::vector<int> z;
    for (int a = 0; a < g.order(); ++a)
        if (is_central(g, a))
            z.push_back(a);
    return z;
}

GroupMap identity_map(const FiniteGroup& g) {
    std::vector<int> im(g.order());
    for (int i = 0; i < g.order(); ++i)
        im[i] = i;
    return GroupMap{g, g, std::move(im)};
}

GroupMap make_map(FiniteGroup source, FiniteGroup target, std::vector<int> images) {
    const int n = source.order();
    if (static_cast<int>(images.size()) != n)
        throw input_error("map has wrong length");
    for (int v : images)
        if (v < 0 || v >= target.order())
            throw input_error("map image out of range");
    if (images[0] != 0)
        throw input_error("map does not fix the identity");
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (images[source.mul(x, y)] != target.mul(images[x], images[y]))
                throw input_error("map is not multiplicative");
    return GroupMap{std::move(source), std::move(target), std::move(images)};
}

GroupMap load_map(const FiniteGroup& source, const FiniteGroup& target, std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string word;
    if (!(in >> word) || word != "map")
        throw input_error("map file must start with 'map'");
    std::vector<int> images;
    int v = 0;
    while (in >> v)
        images.push_back(v);
    if (!in.eof()) {
        in.clear();
        in >> word;
        throw input_error("bad token '" + word + "' in map file");
    }
    return make_map(source, target, std::move(images));
}

std::string format_map(const GroupMap& m) {
    std::ostringstream out;
    out << "map";
    for (int v : m.images)
        out << " " << v;
    return out.str();
}

GroupMap sample_endo(const FiniteGroup& g, std::string_view descriptor) {
    const int n = g.order();
    std::vector<int> im(n);
    if (descriptor == "id")
        return identity_map(g);
    if (descriptor == "eps")
        return GroupMap{g, g, std::vector<int>(n, 0)};
    if (descriptor == "inv") {
        for (int i = 0; i < n; ++i)
            im[i] = g.inv(i);
        return make_map(g, g, std::move(im));
    }
    if (descriptor.substr(0, 4) == "pow:") {
        auto tail = descriptor.substr(4);
        int k = 0;
        auto [p, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), k);
        if (ec != std::errc{} || p != tail.data() + tail.size())
            throw input_error("bad power in map descriptor");
        for (int i = 0; i < n; ++i) {
            int e = g.element_order(i);
            int r = ((k % e) + e) % e;
            int x = 0;
            for (int j = 0; j < r; ++j)
                x = g.mul(x, i);
            im[i] = x;
        }
        return make_map(g, g, std::move(im));
    }
    if (descriptor.substr(0, 3) == "ad:")
        return inner(g, g.index_of(descriptor.substr(3)));
    throw input_error("unknown map descriptor '" + std::string(descriptor) + "'");
}

bool is_bijective(const GroupMap& m) {
    if (m.source.order() != m.target.order())
        return false;
    std::vector<char> seen(m.target.order(), 0);
    for (int v : m.images) {
        if (seen[v])
            return false;
        seen[v] = 1;
    }
    return true;
}

GroupMap inner(const FiniteGroup& g, int a) {
    std::vector<int> im(g.order());
    for (int x = 0; x < g.order(); ++x)
        im[x] = g.mul(g.mul(a, x), g.inv(a));
    return GroupMap{g, g, std::move(im)};
}

GroupMap compose_maps(const GroupMap& f, const GroupMap& g) {
    if (!(g.target == f.source))
        throw input_error("maps are not composable");
    std::vector<int> im(g.images.size());
    for (size_t i = 0; i < im.size(); ++i)
        im[i] = f.images[g.images[i]];
    return GroupMap{g.source, f.target, std::move(im)};
}

GroupMap invert_map(const GroupMap& f) {
    if (!is_bijective(f))
        throw input_error("map is not invertible");
    std::vector<int> im(f.images.size());
    for (size_t i = 0; i < f.images.size(); ++i)
        im[f.images[i]] = static_cast<int>(i);
    return GroupMap{f.target, f.source, std::move(im)};
}

GroupMap power(const GroupMap& f, int k) {
    if (!(f.source == f.target))
        throw input_error("power of a map needs matching source and target");
    GroupMap base = f;
    if (k < 0) {
        base = invert_map(f); // throws when f is not bijective
        k = -k;
    }
    GroupMap acc = identity_map(f.source);
    for (int i = 0; i < k; ++i)
        acc = compose_maps(base, acc);
    return acc;
}

namespace {

// Greedy generating sequence with, per element, a derivation elem = parent * gen.
struct GenPlan {
    std::vector<int> gens;
    std::vector<int> fill;     // all elements in determination order; fill[0] = 0
    std::vector<int> parent;   // indexed like fill; -1 for the identity
    std::vector<int> gen_used; // index into gens; -1 for the identity
    std::vector<size_t> stage_end; // fill prefix determined once gens[0..d] are assigned
};

GenPlan make_plan(const FiniteGroup& g) {
    const int n = g.order();
    GenPlan plan;
    std::vector<char> in(n, 0);
    in[0] = 1;
    plan.fill = {0};
    plan.parent = {-1};
    plan.gen_used = {-1};
    while (static_cast<int>(plan.fill.size()) < n) {
        int gen = -1;
        for (int x = 0; x < n; ++x)
            if (!in[x]) {
                gen = x;
                break;
            }
        plan.gens.push_back(gen);
        const int gi = static_cast<int>(plan.gens.size()) - 1;
        // close under right multiplication by all current generators
        for (size_t i = 0; i < plan.fill.size(); ++i)
            for (int gj = 0; gj <= gi; ++gj) {
                int y = g.mul(plan.fill[i], plan.gens[gj]);
                if (!in[y]) {
                    in[y] = 1;
                    plan.fill.push_back(y);
                    plan.parent.push_back(plan.fill[i]);
                    plan.gen_used.push_back(gj);
                }
            }
        plan.stage_end.push_back(plan.fill.size());
    }
    if (plan.stage_end.empty())
        plan.stage_end.push_back(plan.fill.size());
    return plan;
}

// Backtracking enumeration of multiplicative maps determined by generator images.
void search_maps(const FiniteGroup& g, const FiniteGroup& h, const GenPlan& plan,
                 bool injective, std::vector<std::vector<int>>& out) {
    const int n = g.order();
    std::vector<int> image(n, -1);
    std::vector<char> used(h.order(), 0);
    image[0] = 0;
    used[0] = 1;
    if (plan.gens.empty()) { // trivial source group
        out.push_back(image);
        return;
    }

    // Extend images over fill[lo..hi) and check multiplicativity against all
    // determined elements; `marked` records used-bits set by this stage only.
    auto extend = [&](size_t lo, size_t hi, std::vector<int>& marked) {
        for (size_t i = lo; i < hi; ++i) {
            int e = plan.fill[i];
            image[e] = h.mul(image[plan.parent[i]], image[plan.gens[plan.gen_used[i]]]);
        }
        for (size_t i = lo; i < hi; ++i) {
            int e = plan.fill[i];
            if (injective) {
                if (used[image[e]])
                    return false;
                used[image[e]] = 1;
                marked.push_back(image[e]);
            }
            for (size_t j = 0; j < hi; ++j) {
                int x = plan.fill[j];
                if (image[g.mul(x, e)] != h.mul(image[x], image[e]))
                    return false;
                if (image[g.mul(e, x)] != h.mul(image[e], image[x]))
                    return false;
            }
        }
        return true;
    };
    auto retract = [&](size_t lo, size_t hi, const std::vector<int>& marked) {
        for (int m : marked)
            used[m] = 0;
        for (size_t i = lo; i < hi; ++i)
            image[plan.fill[i]] = -1;
    };

    auto dfs = [&](auto&& self, size_t depth) -> void {
        if (depth == plan.gens.size()) {
            out.push_back(image);
            return;
        }
        const int gen = plan.gens[depth];
        const size_t lo = depth == 0 ? 1 : plan.stage_end[depth - 1];
        const size_t hi = plan.stage_end[depth];
        const int gen_order = g.element_order(gen);
        for (int c = 0; c < h.order(); ++c) {
            if (injective) {
                if (h.element_order(c) != gen_order || used[c])
                    continue;
            } else if (gen_order % h.element_order(c) != 0)
                continue;
            image[gen] = c; // re-derived inside extend(); seeded here for the derivations
            std::vector<int> marked;
            if (extend(lo, hi, marked))
                self(self, depth + 1);
            retract(lo, hi, marked);
        }
    };
    dfs(dfs, 0);
}

std::vector<GroupMap> wrap_sorted(const FiniteGroup& g, const FiniteGroup& h,
                                  std::vector<std::vector<int>> images) {
    std::sort(images.begin(), images.end());
    std::vector<GroupMap> out;
    out.reserve(images.size());
    for (auto& im : images)
        out.push_back(GroupMap{g, h, std::move(im)});
    return out;
}

} // namespace

std::vector<GroupMap> enumerate_isomorphisms(const FiniteGroup& g, const FiniteGroup& h) {
    if (g.order() != h.order())
        return {};
    GenPlan plan = make_plan(g);
    std::vector<std::vector<int>> images;
    search_maps(g, h, plan, true, images);
    return wrap_sorted(g, h, std::move(images));
}

std::vector<GroupMap> enumerate_automorphisms(const FiniteGroup& g) {
    return enumerate_isomorphisms(g, g);
}

std::vector<GroupMap> enumerate_endomorphisms(const FiniteGroup& g) {
    GenPlan plan = make_plan(g);
    std::vector<std::vector<int>> images;
    search_maps(g, g, plan, false, images);
    return wrap_sorted(g, g, std::move(images));
}

} // namespace vfrac
