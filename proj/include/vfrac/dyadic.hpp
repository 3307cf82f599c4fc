#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace vfrac {

// Error type for malformed user-facing input (parse failures, bad tables, ...).
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact dyadic rational num / 2^exp.
//
// Canonical form: num == 0 implies exp == 0; otherwise num is odd (exp may be
// negative, so even integers are representable as num * 2^(-exp)).  Points of
// the Cantor-set model live in [0,1); the type also carries intermediate
// values (differences, affine offsets) outside that range.
class Dyadic {
  public:
    Dyadic() = default;

    static Dyadic from_parts(std::int64_t num, int exp);
    // Binary digits after the point, e.g. "101" -> 5/2^3.  "" -> 0.
    static Dyadic from_word(std::string_view bits);

    std::int64_t num() const { return num_; }
    int exp() const { return exp_; }
    bool is_zero() const { return num_ == 0; }
    bool in_unit() const; // 0 <= value < 1

    // Minimal digit word for a value in [0,1): digits up to the last 1.
    // 0 -> "", 1/2 -> "1", 3/4 -> "11", 1/4 -> "01".
    std::string word() const;

    friend bool operator==(const Dyadic&, const Dyadic&) = default;
    friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

  private:
    std::int64_t num_ = 0;
    int exp_ = 0;
};

Dyadic operator+(const Dyadic& a, const Dyadic& b);
Dyadic operator-(const Dyadic& a, const Dyadic& b);
Dyadic operator-(const Dyadic& a);

// Value scaled by 2^s.
Dyadic shift(const Dyadic& x, int s);

// 2-adic valuation; by convention nu(0) = 0.
int nu(const Dyadic& x);

// "a/2^b" (canonical), "0" for zero; integers print bare.
std::string format_dyadic(const Dyadic& x);
// Accepts the canonical form plus "a/b" with b a power of two and bare
// integers ("0", "1").
Dyadic parse_dyadic(std::string_view text);

} // namespace vfrac
