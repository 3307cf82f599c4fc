#pragma once

#include "vfrac/dyadic.hpp"

#include <string>
#include <vector>

namespace vfrac {

// Finite rooted binary tree, serialized in preorder: '1' = internal node,
// '0' = leaf.  "0" is the trivial tree, "100" a single caret, "10100" the
// tree whose right child is a caret.  Leaf addresses are binary words read
// from the root, '0' = left edge, '1' = right edge; leaves are ordered
// left to right, which is address-lexicographic order.
class Tree {
  public:
    Tree() : enc_("0") {}
    explicit Tree(std::string encoding);

    const std::string& encoding() const { return enc_; }
    int leaf_count() const;
    bool is_leaf() const { return enc_ == "0"; }
    std::vector<std::string> leaf_addresses() const;

    friend bool operator==(const Tree&, const Tree&) = default;

  private:
    std::string enc_;
};

Tree parse_tree(std::string_view text);
std::string format_tree(const Tree& t);

// Rebuild the unique tree whose leaf-address set is exactly `addresses`
// (sorted, forming a complete prefix code).
Tree tree_from_addresses(const std::vector<std::string>& addresses);

// Smallest common refinement: the union of the two leaf tries.
Tree tree_union(const Tree& a, const Tree& b);

// Subtree of `t` rooted at the node with address `addr`.
Tree subtree_at(const Tree& t, std::string_view addr);

// Ordered list of trees; composition grafts, tensor concatenates.
struct Forest {
    std::vector<Tree> trees;

    int root_count() const { return static_cast<int>(trees.size()); }
    int leaf_count() const;

    friend bool operator==(const Forest&, const Forest&) = default;
};

Forest parse_forest(std::string_view text); // comma-separated trees, "" = empty forest
std::string format_forest(const Forest& f);

// Graft tree i of `top` onto leaf i of `bottom` (leaves numbered left to
// right across the whole forest).  Requires top.root_count() == bottom.leaf_count().
Forest compose_forests(const Forest& top, const Forest& bottom);
Forest tensor_forests(const Forest& left, const Forest& right);

// The forest with n trees whose j-th tree (1-based) is a single caret.
Forest make_generator(int j, int n);

// Forest f with compose_forests(f, {from}) == {to}; requires that `to`
// refines `from`.
Forest expansion_forest(const Tree& from, const Tree& to);

// Standard dyadic interval [a/2^b, (a+1)/2^b), stored by its address word.
struct Sdi {
    std::string addr;

    Dyadic left() const { return Dyadic::from_word(addr); }
    int depth() const { return static_cast<int>(addr.size()); }

    friend bool operator==(const Sdi&, const Sdi&) = default;
};

// The ordered standard dyadic partition cut out by a tree's leaves.
std::vector<Sdi> tree_to_sdp(const Tree& t);

// Permutation of {0,...,n-1}; im[i] is the image of i.
struct Perm {
    std::vector<int> im;

    static Perm identity(int n);
    int size() const { return static_cast<int>(im.size()); }
    bool is_identity() const;

    friend bool operator==(const Perm&, const Perm&) = default;
};

bool is_permutation(const Perm& p);
Perm invert(const Perm& p);
// (a * b)(i) = a(b(i)): apply b first.
Perm compose(const Perm& a, const Perm& b);

// Normal form of (forest f) stacked on top of (permutation sigma): the same
// diagram equals (cabled leaf permutation) on top of (f with trees permuted).
// Wire k enters tree sigma(k) of f, so the rearranged forest has
// trees[k] = f.trees[sigma(k)], and the cabled permutation sends its k-th
// leaf block, order preserved, onto the leaf block of tree sigma(k) in f.
struct CabledForest {
    Forest rearranged;
    Perm cabled;
};
CabledForest push_perm_through_forest(const Perm& sigma, const Forest& f);

} // namespace vfrac
