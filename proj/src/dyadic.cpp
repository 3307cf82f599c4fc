#include "vfrac/dyadic.hpp"

#include <cassert>
#include <charconv>

namespace vfrac {

namespace {

// Exponents are bounded well below 64 so that numerators of unit-interval
// values always fit in int64. Deep enough refinements to break this bound
// are far outside what the element sizes used here can produce.
constexpr int kMaxExp = 62;

void check_exp(int e) {
    if (e > kMaxExp || e < -kMaxExp)
        throw std::overflow_error("dyadic exponent out of range");
}

std::int64_t parse_int(std::string_view s) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw input_error("bad integer: '" + std::string(s) + "'");
    return value;
}

} // namespace

Dyadic Dyadic::from_parts(std::int64_t num, int exp) {
    Dyadic d;
    if (num == 0)
        return d;
    while ((num & 1) == 0) {
        num >>= 1;
        --exp;
    }
    check_exp(exp);
    d.num_ = num;
    d.exp_ = exp;
    return d;
}

Dyadic Dyadic::from_word(std::string_view bits) {
    std::int64_t num = 0;
    if (bits.size() > kMaxExp)
        throw std::overflow_error("dyadic word too long");
    for (char c : bits) {
        if (c != '0' && c != '1')
            throw input_error("bad digit in dyadic word");
        num = num * 2 + (c - '0');
    }
    return from_parts(num, static_cast<int>(bits.size()));
}

bool Dyadic::in_unit() const {
    if (num_ < 0)
        return false;
    if (num_ == 0)
        return true;
    return exp_ >= 1 && (num_ >> exp_) == 0;
}

std::string Dyadic::word() const {
    assert(in_unit());
    std::string w(static_cast<size_t>(exp_ < 0 ? 0 : exp_), '0');
    for (int i = 0; i < exp_; ++i)
        w[static_cast<size_t>(exp_ - 1 - i)] = ((num_ >> i) & 1) ? '1' : '0';
    return w;
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    // Compare a.num / 2^a.exp with b.num / 2^b.exp on a common denominator.
    int e = a.exp() > b.exp() ? a.exp() : b.exp();
    check_exp(e - a.exp());
    check_exp(e - b.exp());
    __int128 lhs = static_cast<__int128>(a.num()) << (e - a.exp());
    __int128 rhs = static_cast<__int128>(b.num()) << (e - b.exp());
    if (lhs < rhs)
        return std::strong_ordering::less;
    if (lhs > rhs)
        return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    int e = a.exp() > b.exp() ? a.exp() : b.exp();
    check_exp(e + 1);
    std::int64_t n = (a.num() << (e - a.exp())) + (b.num() << (e - b.exp()));
    return Dyadic::from_parts(n, e);
}

Dyadic operator-(const Dyadic& a) { return Dyadic::from_parts(-a.num(), a.exp()); }

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

Dyadic shift(const Dyadic& x, int s) {
    if (x.is_zero())
        return x;
    return Dyadic::from_parts(x.num(), x.exp() - s);
}

int nu(const Dyadic& x) { return x.is_zero() ? 0 : -x.exp(); }

std::string format_dyadic(const Dyadic& x) {
    if (x.exp() <= 0)
        return std::to_string(x.num() << -x.exp());
    return std::to_string(x.num()) + "/2^" + std::to_string(x.exp());
}

Dyadic parse_dyadic(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Dyadic::from_parts(parse_int(text), 0);
    std::int64_t num = parse_int(text.substr(0, slash));
    std::string_view den = text.substr(slash + 1);
    int exp = 0;
    if (den.substr(0, 2) == "2^") {
        std::int64_t e = parse_int(den.substr(2));
        if (e < 0 || e > 62)
            throw input_error("dyadic exponent out of range");
        exp = static_cast<int>(e);
    } else {
        std::int64_t d = parse_int(den);
        if (d <= 0 || (d & (d - 1)) != 0)
            throw input_error("denominator must be a power of two: '" + std::string(text) + "'");
        while (d > 1) {
            d >>= 1;
            ++exp;
        }
    }
    return Dyadic::from_parts(num, exp);
}

} // namespace vfrac
