#pragma once

#include "vfrac/finite_group.hpp"

#include <optional>

namespace vfrac {

// Eventual image of an endomorphism chain, re-indexed as a group in its own
// right (identity first, then increasing old index). The restricted map is
// bijective; `stabilization` is the first power at which the image chain
// becomes stationary.
struct LimPair {
    FiniteGroup group;
    GroupMap alpha;
    int stabilization = 0;
};

LimPair limit_pair(const FiniteGroup& g, const GroupMap& alpha);

// Conjugacy data exhibiting two stabilized pairs as equivalent:
// beta maps the first reduced group onto the second, and
// alpha2 = ad(h) . beta . alpha1 . beta^-1 holds elementwise.
struct IsoWitness {
    GroupMap beta;
    int h = 0;
};

struct IsoDecision {
    bool isomorphic = false;
    std::optional<IsoWitness> witness;
};

// Exhaustive search over isomorphisms of the reduced pairs times inner
// twists; first hit in lexicographic (image tuple, h) order, or a
// definitive no.
IsoDecision decide_iso(const FiniteGroup& g1, const GroupMap& a1, const FiniteGroup& g2,
                       const GroupMap& a2);

// Re-derives both reduced pairs and verifies the defining identity of the
// witness elementwise. Malformed witnesses yield false, never an error.
bool check_witness(const FiniteGroup& g1, const GroupMap& a1, const FiniteGroup& g2,
                   const GroupMap& a2, const IsoWitness& w);

} // namespace vfrac
