#include "vfrac/forest.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace vfrac {

namespace {

void validate_encoding(const std::string& enc) {
    if (enc.empty())
        throw input_error("empty tree encoding");
    int slots = 1;
    for (char c : enc) {
        if (slots <= 0)
            throw input_error("tree encoding has trailing symbols: '" + enc + "'");
        if (c == '1')
            ++slots;
        else if (c == '0')
            --slots;
        else
            throw input_error("tree encoding must be over {0,1}: '" + enc + "'");
    }
    if (slots != 0)
        throw input_error("truncated tree encoding: '" + enc + "'");
}

// Length of the subtree encoding starting at position pos.
size_t subtree_extent(const std::string& enc, size_t pos) {
    int slots = 1;
    size_t i = pos;
    while (slots > 0) {
        slots += enc[i] == '1' ? 1 : -1;
        ++i;
    }
    return i - pos;
}

void collect_addresses(const std::string& enc, size_t& pos, std::string& path,
                       std::vector<std::string>& out) {
    if (enc[pos] == '0') {
        ++pos;
        out.push_back(path);
        return;
    }
    ++pos;
    path.push_back('0');
    collect_addresses(enc, pos, path, out);
    path.back() = '1';
    collect_addresses(enc, pos, path, out);
    path.pop_back();
}

std::string union_encodings(const std::string& a, size_t& pa, const std::string& b, size_t& pb) {
    bool leaf_a = a[pa] == '0';
    bool leaf_b = b[pb] == '0';
    if (leaf_a) {
        ++pa;
        size_t len = subtree_extent(b, pb);
        std::string r = b.substr(pb, len);
        pb += len;
        return r;
    }
    if (leaf_b) {
        ++pb;
        size_t len = subtree_extent(a, pa);
        std::string r = a.substr(pa, len);
        pa += len;
        return r;
    }
    ++pa;
    ++pb;
    std::string left = union_encodings(a, pa, b, pb);
    std::string right = union_encodings(a, pa, b, pb);
    return "1" + left + right;
}

} // namespace

Tree::Tree(std::string encoding) : enc_(std::move(encoding)) { validate_encoding(enc_); }

int Tree::leaf_count() const {
    return static_cast<int>(std::count(enc_.begin(), enc_.end(), '0'));
}

std::vector<std::string> Tree::leaf_addresses() const {
    std::vector<std::string> out;
    out.reserve(static_cast<size_t>(leaf_count()));
    size_t pos = 0;
    std::string path;
    collect_addresses(enc_, pos, path, out);
    return out;
}

Tree parse_tree(std::string_view text) { return Tree(std::string(text)); }

std::string format_tree(const Tree& t) { return t.encoding(); }

Tree tree_from_addresses(const std::vector<std::string>& addresses) {
    if (addresses.empty())
        throw input_error("empty address set");
    // Recursive split on the leading bit; a singleton must be "".
    struct Builder {
        static std::string build(const std::vector<std::string>& addrs, size_t depth) {
            if (addrs.size() == 1 && addrs[0].size() == depth)
                return "0";
            std::vector<std::string> zeros, ones;
            for (const auto& a : addrs) {
                if (a.size() <= depth)
                    throw input_error("address set is not a complete prefix code");
                (a[depth] == '0' ? zeros : ones).push_back(a);
            }
            if (zeros.empty() || ones.empty())
                throw input_error("address set is not a complete prefix code");
            return "1" + build(zeros, depth + 1) + build(ones, depth + 1);
        }
    };
    Tree t{Builder::build(addresses, 0)};
    if (t.leaf_addresses() != addresses)
        throw input_error("address set is not sorted or not a complete prefix code");
    return t;
}

Tree tree_union(const Tree& a, const Tree& b) {
    size_t pa = 0, pb = 0;
    return Tree(union_encodings(a.encoding(), pa, b.encoding(), pb));
}

Tree subtree_at(const Tree& t, std::string_view addr) {
    const std::string& enc = t.encoding();
    size_t pos = 0;
    for (char bit : addr) {
        if (enc[pos] == '0')
            throw input_error("address goes past a leaf");
        ++pos; // enter the node
        if (bit == '1')
            pos += subtree_extent(enc, pos); // skip the left subtree
        else if (bit != '0')
            throw input_error("bad address digit");
    }
    return Tree(enc.substr(pos, subtree_extent(enc, pos)));
}

int Forest::leaf_count() const {
    return std::accumulate(trees.begin(), trees.end(), 0,
                           [](int acc, const Tree& t) { return acc + t.leaf_count(); });
}

Forest parse_forest(std::string_view text) {
    Forest f;
    if (text.empty())
        return f;
    size_t start = 0;
    while (true) {
        size_t comma = text.find(',', start);
        f.trees.push_back(parse_tree(text.substr(start, comma - start)));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return f;
}

std::string format_forest(const Forest& f) {
    std::string out;
    for (size_t i = 0; i < f.trees.size(); ++i) {
        if (i)
            out += ',';
        out += f.trees[i].encoding();
    }
    return out;
}

Forest compose_forests(const Forest& top, const Forest& bottom) {
    if (top.root_count() != bottom.leaf_count())
        throw input_error("compose_forests: top root count != bottom leaf count");
    Forest out;
    out.trees.reserve(bottom.trees.size());
    size_t next_top = 0;
    for (const Tree& t : bottom.trees) {
        // Replace each '0' of the bottom tree, left to right, by the
        // encoding of the next top tree.
        std::string enc;
        for (char c : t.encoding()) {
            if (c == '1')
                enc += '1';
            else
                enc += top.trees[next_top++].encoding();
        }
        out.trees.emplace_back(std::move(enc));
    }
    return out;
}

Forest tensor_forests(const Forest& left, const Forest& right) {
    Forest out = left;
    out.trees.insert(out.trees.end(), right.trees.begin(), right.trees.end());
    return out;
}

Forest make_generator(int j, int n) {
    if (n < 1 || j < 1 || j > n)
        throw input_error("make_generator: need 1 <= j <= n");
    Forest f;
    f.trees.assign(static_cast<size_t>(n), Tree{});
    f.trees[static_cast<size_t>(j - 1)] = Tree("100");
    return f;
}

Forest expansion_forest(const Tree& from, const Tree& to) {
    Forest f;
    for (const std::string& addr : from.leaf_addresses())
        f.trees.push_back(subtree_at(to, addr));
    return f;
}

std::vector<Sdi> tree_to_sdp(const Tree& t) {
    std::vector<Sdi> out;
    for (auto& a : t.leaf_addresses())
        out.push_back(Sdi{std::move(a)});
    return out;
}

Perm Perm::identity(int n) {
    Perm p;
    p.im.resize(static_cast<size_t>(n));
    std::iota(p.im.begin(), p.im.end(), 0);
    return p;
}

bool Perm::is_identity() const {
    for (int i = 0; i < size(); ++i)
        if (im[static_cast<size_t>(i)] != i)
            return false;
    return true;
}

bool is_permutation(const Perm& p) {
    std::vector<bool> seen(p.im.size(), false);
    for (int v : p.im) {
        if (v < 0 || v >= p.size() || seen[static_cast<size_t>(v)])
            return false;
        seen[static_cast<size_t>(v)] = true;
    }
    return true;
}

Perm invert(const Perm& p) {
    Perm q;
    q.im.resize(p.im.size());
    for (int i = 0; i < p.size(); ++i)
        q.im[static_cast<size_t>(p.im[static_cast<size_t>(i)])] = i;
    return q;
}

Perm compose(const Perm& a, const Perm& b) {
    assert(a.size() == b.size());
    Perm c;
    c.im.resize(a.im.size());
    for (int i = 0; i < a.size(); ++i)
        c.im[static_cast<size_t>(i)] = a.im[static_cast<size_t>(b.im[static_cast<size_t>(i)])];
    return c;
}

CabledForest push_perm_through_forest(const Perm& sigma, const Forest& f) {
    if (sigma.size() != f.root_count())
        throw input_error("push_perm_through_forest: size mismatch");
    CabledForest out;
    out.rearranged.trees.reserve(f.trees.size());
    for (int k = 0; k < sigma.size(); ++k)
        out.rearranged.trees.push_back(f.trees[static_cast<size_t>(sigma.im[static_cast<size_t>(k)])]);

    std::vector<int> offset(f.trees.size() + 1, 0);
    for (size_t j = 0; j < f.trees.size(); ++j)
        offset[j + 1] = offset[j] + f.trees[j].leaf_count();

    out.cabled.im.reserve(static_cast<size_t>(f.leaf_count()));
    for (int k = 0; k < sigma.size(); ++k) {
        int j = sigma.im[static_cast<size_t>(k)];
        int n = f.trees[static_cast<size_t>(j)].leaf_count();
        for (int l = 0; l < n; ++l)
            out.cabled.im.push_back(offset[static_cast<size_t>(j)] + l);
    }
    return out;
}

} // namespace vfrac
