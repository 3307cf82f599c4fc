#pragma once

#include "vfrac/dyadic.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace vfrac {

// A finite group given by its Cayley table. Identity is always index 0.
class FiniteGroup {
  public:
    FiniteGroup(); // trivial group
    // Validates closure, identity row/column, inverses and associativity.
    static FiniteGroup from_table(std::vector<std::vector<int>> table,
                                  std::vector<std::string> names = {});

    int order() const { return static_cast<int>(table_.size()); }
    int mul(int a, int b) const;
    int inv(int a) const;
    int element_order(int a) const;
    bool is_abelian() const;

    const std::vector<std::vector<int>>& table() const { return table_; }
    const std::vector<std::string>& names() const { return names_; }
    std::string name_of(int a) const;          // name if present, else decimal index
    int index_of(std::string_view token) const; // accepts a name or a decimal index

    friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
        return a.table_ == b.table_;
    }

  private:
    std::vector<std::vector<int>> table_;
    std::vector<int> inverse_;
    std::vector<std::string> names_;
};

// Text format: "order N", then N rows of N indices, then optional "names ...".
FiniteGroup load_group(std::string_view text);
std::string format_group(const FiniteGroup& g);

// Bundled groups: Z2, Z3, Z4, Z6, Z2xZ2, S3, D4.
FiniteGroup sample_group(std::string_view name);
const std::vector<std::string>& sample_group_names();

std::vector<int> center(const FiniteGroup& g);
bool is_central(const FiniteGroup& g, int a);

// A multiplicative map between finite groups, given elementwise.
struct GroupMap {
    FiniteGroup source;
    FiniteGroup target;
    std::vector<int> images;

    int operator()(int x) const { return images.at(x); }
    friend bool operator==(const GroupMap& a, const GroupMap& b) {
        return a.source == b.source && a.target == b.target && a.images == b.images;
    }
};

GroupMap identity_map(const FiniteGroup& g);
// Validates images[0] = 0 and multiplicativity.
GroupMap make_map(FiniteGroup source, FiniteGroup target, std::vector<int> images);
// Text format: "map i0 i1 ... i_{N-1}".
GroupMap load_map(const FiniteGroup& source, const FiniteGroup& target, std::string_view text);
std::string format_map(const GroupMap& m);
// Descriptors: id | inv | eps | pow:k | ad:g (g an element token of the group).
GroupMap sample_endo(const FiniteGroup& g, std::string_view descriptor);

bool is_bijective(const GroupMap& m);
GroupMap inner(const FiniteGroup& g, int a); // x -> a x a^-1
GroupMap compose_maps(const GroupMap& f, const GroupMap& g); // f after g
GroupMap invert_map(const GroupMap& f);
GroupMap power(const GroupMap& f, int k); // negative k requires bijective f

// Complete deterministic lists, sorted lexicographically by image tuple.
std::vector<GroupMap> enumerate_isomorphisms(const FiniteGroup& g, const FiniteGroup& h);
std::vector<GroupMap> enumerate_automorphisms(const FiniteGroup& g);
std::vector<GroupMap> enumerate_endomorphisms(const FiniteGroup& g);

} // namespace vfrac
