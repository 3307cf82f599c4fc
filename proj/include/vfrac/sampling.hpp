#pragma once

#include "vfrac/automorphisms.hpp"

#include <cstdint>
#include <random>
#include <string_view>

namespace vfrac {

// Deterministic source for the property battery: a fixed engine plus
// label-hashed substreams so every trial is reproducible from (seed,
// suite, property, trial) alone.
struct Rng {
    std::mt19937_64 engine;

    explicit Rng(std::uint64_t seed) : engine(seed) {}

    std::uint64_t next() { return engine(); }
    int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
    int range(int lo, int hi) { return lo + below(hi - lo + 1); }
    bool flip() { return (next() & 1) != 0; }
};

std::uint64_t fnv1a(std::string_view text, std::uint64_t h = 14695981039346656037ULL);
std::uint64_t substream_seed(std::uint64_t seed, std::string_view suite,
                             std::string_view property, int trial);

Tree random_tree(Rng& rng, int max_leaves);
Perm random_perm(Rng& rng, int n);
VElement random_velement(Rng& rng, int max_leaves);
Dyadic random_dyadic(Rng& rng, int max_exp);
KElement random_kelement(Rng& rng, const FiniteGroup& g, int max_points, int max_exp);
GElement random_gelement(Rng& rng, const FiniteGroup& g, int max_points, int max_leaves);
NormalizerMap random_normalizer(Rng& rng, const FiniteGroup& g);
TreeRepresentative random_representative(Rng& rng, const FiniteGroup& g, int max_leaves);
int random_central(Rng& rng, const FiniteGroup& g);

} // namespace vfrac
