#pragma once

#include <gmpxx.h>

#include <compare>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace trigrad {

/// Exact rational scalar. mpq_class keeps numerator/denominator coprime with a
/// positive denominator after every arithmetic operation.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational parse_rational(const std::string& text) {
    Rational r;
    if (r.set_str(text, 10) != 0) throw std::invalid_argument("bad rational: " + text);
    if (r.get_den() == 0) throw std::domain_error("rational with zero denominator");
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

/// A bigrading (k, l): k is the a/t-direction, l the q-direction.
struct Bidegree {
    int k = 0;
    int l = 0;

    constexpr Bidegree operator+(Bidegree o) const { return {k + o.k, l + o.l}; }
    constexpr Bidegree operator-(Bidegree o) const { return {k - o.k, l - o.l}; }
    constexpr Bidegree operator-() const { return {-k, -l}; }
    constexpr Bidegree& operator+=(Bidegree o) {
        k += o.k;
        l += o.l;
        return *this;
    }
    constexpr auto operator<=>(const Bidegree&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, Bidegree b) {
    return os << '{' << b.k << ',' << b.l << '}';
}

}  // namespace trigrad
