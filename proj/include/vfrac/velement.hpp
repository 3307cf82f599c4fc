#pragma once

#include "vfrac/forest.hpp"

#include <optional>

namespace vfrac {

// Piecewise-constant integer function on [0,1) whose pieces form a standard
// dyadic partition.  Kept in canonical form: sibling pieces with equal
// labels are merged.
class SlopeFunction {
  public:
    SlopeFunction() : pieces_{{Sdi{""}, 0}} {}
    // Pieces must cover [0,1); they are sorted and canonicalized.
    explicit SlopeFunction(std::vector<std::pair<Sdi, int>> pieces);

    const std::vector<std::pair<Sdi, int>>& pieces() const { return pieces_; }
    int at(const Dyadic& x) const;

    friend bool operator==(const SlopeFunction&, const SlopeFunction&) = default;

  private:
    std::vector<std::pair<Sdi, int>> pieces_;
};

SlopeFunction add(const SlopeFunction& a, const SlopeFunction& b);
std::string format_slope_function(const SlopeFunction& f);

// Unreduced tree pair with leaf permutation; the building block behind
// VElement and the adapted-refinement computations.
struct TreePairPerm {
    Tree dom;
    Tree ran;
    Perm p; // domain leaf i maps onto range leaf p.im[i] (0-based)
};

enum class VClass { F, T, V };
std::string to_string(VClass c);

// Element of Thompson's group V in reduced normal form.
//
// The element is the homeomorphism of [0,1) (equivalently of the Cantor
// space of binary sequences) sending the i-th interval of the domain
// partition affinely onto the p(i)-th interval of the range partition; on
// binary sequences it replaces the i-th domain leaf address prefix by the
// p(i)-th range leaf address.
class VElement {
  public:
    VElement() = default; // identity

    // Reduces the triple; throws on arity mismatch or invalid permutation.
    static VElement make(Tree dom, Tree ran, Perm p);

    const Tree& dom() const { return dom_; }
    const Tree& ran() const { return ran_; }
    const Perm& p() const { return p_; }
    bool is_identity() const { return dom_.is_leaf(); }

    friend bool operator==(const VElement&, const VElement&) = default;
    // Arbitrary total order so elements can key containers.
    friend std::strong_ordering operator<=>(const VElement&, const VElement&);

  private:
    Tree dom_{};
    Tree ran_{};
    Perm p_ = Perm::identity(1);
};

VElement reduce(const TreePairPerm& t);

// Composition: (v * w)(x) = v(w(x)).
VElement multiply(const VElement& v, const VElement& w);
VElement invert(const VElement& v);
VElement power(const VElement& v, int k);
// phi v phi^-1.
VElement conjugate(const VElement& phi, const VElement& v);

Dyadic apply(const VElement& v, const Dyadic& x);
// log2 of the right-hand slope at x (depth of domain piece minus depth of
// its image piece).
int slope_at(const VElement& v, const Dyadic& x);

// x -> log2 v'(x), constant on the domain partition.
SlopeFunction slope_function(const VElement& v);
// ell_v(x) = log2 v'(v^-1 x): the slope labels transported to the range partition.
SlopeFunction ell_function(const VElement& v);

VClass classify(const VElement& v);

// Element fixing x with log2-slope s there; deterministic construction on
// the smallest standard dyadic interval starting at x.
VElement find_in_stabilizer(const Dyadic& x, int s);
// Element mapping x to y; deterministic swap of two equal-size intervals.
VElement find_transitive(const Dyadic& x, const Dyadic& y);

// Equivalent triple whose domain tree is `refined` (which must refine
// v.dom()); not reduced.
TreePairPerm with_domain(const VElement& v, const Tree& refined);

std::string format_velement(const VElement& v);
VElement parse_velement(std::string_view text);

} // namespace vfrac
