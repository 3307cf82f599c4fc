#pragma once

#include "vfrac/finite_group.hpp"
#include "vfrac/velement.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vfrac {

// Finitely supported map from dyadics in [0,1) to a finite group.
// Points carrying the identity are never stored.
class KElement {
  public:
    explicit KElement(FiniteGroup group) : group_(std::move(group)) {}
    static KElement make(FiniteGroup group, std::vector<std::pair<Dyadic, int>> points);

    const FiniteGroup& group() const { return group_; }
    const std::vector<std::pair<Dyadic, int>>& support() const { return support_; }
    int at(const Dyadic& x) const;
    bool is_neutral() const { return support_.empty(); }

    friend bool operator==(const KElement& a, const KElement& b) {
        return a.group_ == b.group_ && a.support_ == b.support_;
    }

  private:
    FiniteGroup group_;
    std::vector<std::pair<Dyadic, int>> support_; // sorted by key
};

KElement k_point(const FiniteGroup& group, const Dyadic& x, int g);
KElement k_mul(const KElement& a, const KElement& b);
KElement k_inv(const KElement& a);

// Format: "x1=g1;x2=g2;..." with named or numbered elements; "" is neutral.
std::string format_kelement(const KElement& a);
KElement parse_kelement(const FiniteGroup& group, std::string_view text);

// The twisted action of V on K: value at apply(v,x) is alpha^slope_at(v,x)(a(x)).
KElement jones_act(const GroupMap& alpha, const VElement& v, const KElement& a);

struct GElement {
    KElement k;
    VElement v;

    friend bool operator==(const GElement& a, const GElement& b) {
        return a.k == b.k && a.v == b.v;
    }
};

GElement g_neutral(const FiniteGroup& group);
GElement g_multiply(const GroupMap& alpha, const GElement& a, const GElement& b);
GElement g_invert(const GroupMap& alpha, const GElement& a);

// Format: "K * V"; an empty K part is the neutral map.
std::string format_gelement(const GElement& g);
GElement parse_gelement(const FiniteGroup& group, std::string_view text);

// A group-valued decoration per leaf of a tree.
struct TreeRepresentative {
    Tree tree;
    std::vector<int> values;

    friend bool operator==(const TreeRepresentative& a, const TreeRepresentative& b) {
        return a.tree == b.tree && a.values == b.values;
    }
};

// Leaf with address w and depth N contributes alpha^{-N}(value) at the left
// endpoint of w. Requires alpha bijective.
KElement theta_t(const GroupMap& alpha, const TreeRepresentative& rep);
// Minimal tree whose leaf left endpoints cover supp(a); inverts theta_t.
TreeRepresentative theta_inverse(const GroupMap& alpha, const KElement& a);

// Morphism of the decorated forest category: forest at the bottom, then a
// permutation of the leaf strands, then one group decoration per strand.
// A decoration at a caret root splits as (alpha0(g), alpha1(g)) at its leaves.
struct DecoratedMorphism {
    Forest forest;
    Perm perm;
    std::vector<int> decorations;
    GroupMap alpha0;
    GroupMap alpha1;

    int root_count() const { return static_cast<int>(forest.trees.size()); }
    int leaf_count() const { return forest.leaf_count(); }

    friend bool operator==(const DecoratedMorphism& a, const DecoratedMorphism& b) {
        return a.forest == b.forest && a.perm.im == b.perm.im &&
               a.decorations == b.decorations && a.alpha0 == b.alpha0 && a.alpha1 == b.alpha1;
    }
};

DecoratedMorphism make_decorated(Forest forest, Perm perm, std::vector<int> decorations,
                                 GroupMap alpha0, GroupMap alpha1);
DecoratedMorphism identity_decorated(int strands, const GroupMap& alpha0,
                                     const GroupMap& alpha1);

// Push root decorations of each tree of f through its carets.
std::vector<int> phi_lift(const GroupMap& alpha0, const GroupMap& alpha1, const Forest& f,
                          const std::vector<int>& roots);

// Composite with m2 stacked on top of m1, renormalized to forest/perm/decorations.
DecoratedMorphism cphi_compose(const DecoratedMorphism& m2, const DecoratedMorphism& m1);

// The unique a with cphi_compose(a, m) == (target, id, e); m must be a single tree.
DecoratedMorphism solve_expansion(const DecoratedMorphism& m, const Tree& target);

// Formal quotient num/den of two decorated single-tree morphisms with equal
// leaf counts, modulo simultaneous expansion from above.
struct CPhiFraction {
    DecoratedMorphism num;
    DecoratedMorphism den;
};

CPhiFraction make_fraction(DecoratedMorphism num, DecoratedMorphism den);
CPhiFraction fraction_multiply(const CPhiFraction& a, const CPhiFraction& b);
CPhiFraction fraction_invert(const CPhiFraction& a);
bool fraction_equal(const CPhiFraction& a, const CPhiFraction& b);

// Dictionary onto K x V. Requires alpha1 = trivial map and alpha0 bijective.
GElement fraction_to_semidirect(const CPhiFraction& f);

// Independent route for the twisted action: refine a tree representative of a
// to the domain partition of v, move leaves, read back through theta.
KElement jones_act_by_refinement(const GroupMap& alpha, const VElement& v, const KElement& a);

} // namespace vfrac
