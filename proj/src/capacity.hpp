#ifndef MCQ_CAPACITY_HPP
#define MCQ_CAPACITY_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

#include "errors.hpp"

namespace mcq {

// Exact integer for capacities, cut values and scaled intermediates; no
// floating point anywhere. Fixed 256-bit checked storage: wide enough for
// U * n^13 at the largest supported instance (n = 2000, U = 50 needs ~156
// bits; sums stay far below 2^255), allocation-free on the max-flow hot
// path, and overflow throws instead of wrapping.
using Capacity = boost::multiprecision::checked_int256_t;

inline Capacity cap_pow(std::int64_t base, unsigned exp) {
    Capacity r = 1;
    Capacity b = base;
    while (exp) {
        if (exp & 1) r *= b;
        exp >>= 1;
        if (exp) b *= b;
    }
    return r;
}

inline std::string cap_to_string(const Capacity& c) { return c.str(); }

inline Capacity cap_from_string(const std::string& s) {
    try {
        return Capacity(s);
    } catch (const std::exception&) {
        raise(ErrorCode::parse_error, "bad capacity literal '" + s + "'");
    }
}

// Exact non-negative rational, used only for the approximation parameter
// epsilon. Comparisons against (1+eps)-scaled capacities are done by cross
// multiplication so they stay in integers.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
        if (den <= 0 || num < 0)
            raise(ErrorCode::invalid_input, "epsilon must be a non-negative p/q rational");
    }

    bool is_zero() const { return num == 0; }

    // a <= (1+eps) * b
    bool le_scaled(const Capacity& a, const Capacity& b) const {
        return a * den <= b * (den + num);
    }
    // a < (1+eps) * b
    bool lt_scaled(const Capacity& a, const Capacity& b) const {
        return a * den < b * (den + num);
    }
    // (1+eps) * b, rounded down (used only for reporting, never for decisions)
    Capacity scale_floor(const Capacity& b) const {
        return b * (den + num) / den;
    }

    std::string str() const {
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

// Parses "p/q", "p" or "0".
Rational parse_rational(const std::string& s);

} // namespace mcq

#endif
