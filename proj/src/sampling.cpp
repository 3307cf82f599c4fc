#include "vfrac/sampling.hpp"

namespace vfrac {

namespace {

std::uint64_t fnv1a_bytes(const unsigned char* data, size_t n, std::uint64_t h) {
    for (size_t i = 0; i < n; ++i) {
        h ^= data[i];
        h *= 1099511628211ULL;
    }
    return h;
}

std::string random_tree_word(Rng& rng, int leaves) {
    if (leaves == 1) return "0";
    int left = 1 + rng.below(leaves - 1);
    return "1" + random_tree_word(rng, left) + random_tree_word(rng, leaves - left);
}

} // namespace

std::uint64_t fnv1a(std::string_view text, std::uint64_t h) {
    return fnv1a_bytes(reinterpret_cast<const unsigned char*>(text.data()), text.size(), h);
}

std::uint64_t substream_seed(std::uint64_t seed, std::string_view suite,
                             std::string_view property, int trial) {
    unsigned char raw[12];
    for (int i = 0; i < 8; ++i) raw[i] = static_cast<unsigned char>(seed >> (8 * i));
    std::uint64_t t = static_cast<std::uint32_t>(trial);
    for (int i = 0; i < 4; ++i) raw[8 + i] = static_cast<unsigned char>(t >> (8 * i));
    std::uint64_t h = fnv1a_bytes(raw, sizeof raw, 14695981039346656037ULL);
    h = fnv1a(suite, h);
    h = fnv1a_bytes(reinterpret_cast<const unsigned char*>("\x1f"), 1, h);
    h = fnv1a(property, h);
    return h;
}

Tree random_tree(Rng& rng, int max_leaves) {
    return Tree(random_tree_word(rng, 1 + rng.below(max_leaves)));
}

Perm random_perm(Rng& rng, int n) {
    Perm p = Perm::identity(n);
    for (int i = n - 1; i > 0; --i) std::swap(p.im[i], p.im[rng.below(i + 1)]);
    return p;
}

VElement random_velement(Rng& rng, int max_leaves) {
    int leaves = 1 + rng.below(max_leaves);
    Tree dom(random_tree_word(rng, leaves));
    Tree ran(random_tree_word(rng, leaves));
    return VElement::make(std::move(dom), std::move(ran), random_perm(rng, leaves));
}

Dyadic random_dyadic(Rng& rng, int max_exp) {
    int exp = rng.below(max_exp + 1);
    return Dyadic::from_parts(rng.below(1 << exp), exp);
}

KElement random_kelement(Rng& rng, const FiniteGroup& g, int max_points, int max_exp) {
    std::vector<std::pair<Dyadic, int>> points;
    if (g.order() > 1) {
        int n = rng.below(max_points + 1);
        for (int i = 0; i < n; ++i) {
            Dyadic x = random_dyadic(rng, max_exp);
            bool seen = false;
            for (const auto& pr : points) seen = seen || pr.first == x;
            if (!seen) points.emplace_back(x, rng.below(g.order()));
        }
    }
    return KElement::make(g, std::move(points));
}

GElement random_gelement(Rng& rng, const FiniteGroup& g, int max_points, int max_leaves) {
    KElement k = random_kelement(rng, g, max_points, max_leaves);
    return {std::move(k), random_velement(rng, max_leaves)};
}

NormalizerMap random_normalizer(Rng& rng, const FiniteGroup& g) {
    int constant = rng.below(g.order());
    KElement finite = random_kelement(rng, g, 3, 5);
    std::vector<int> indicators;
    std::vector<int> involutions;
    for (int z : center(g))
        if (z != 0 && g.mul(z, z) == 0) involutions.push_back(z);
    if (!involutions.empty() && rng.flip())
        indicators.push_back(involutions[rng.below(static_cast<int>(involutions.size()))]);
    return make_normalizer(g, constant, std::move(finite), std::move(indicators));
}

TreeRepresentative random_representative(Rng& rng, const FiniteGroup& g, int max_leaves) {
    Tree t = random_tree(rng, max_leaves);
    std::vector<int> values(t.leaf_count());
    for (int& v : values) v = rng.below(g.order());
    return {std::move(t), std::move(values)};
}

int random_central(Rng& rng, const FiniteGroup& g) {
    std::vector<int> z = center(g);
    return z[rng.below(static_cast<int>(z.size()))];
}

} // namespace vfrac
