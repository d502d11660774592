// base.hpp -- shared exact-arithmetic types and error categories.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace abcover {

// All classification arithmetic is exact: arbitrary-precision integers and
// rationals, no floating point anywhere.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline constexpr const char* kVersion = "0.1.0";

// Caller misuse (mismatched groups, malformed input, unsupported request).
// Maps to exit code 2 at the CLI boundary.
struct usage_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Input data that fails a domain invariant (duplicate lines, divisibility
// failure of branch data). Maps to exit code 1 at the CLI boundary.
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The search hit its node cap; a partial enumeration is never reported as
// "infeasible", so this is a hard error.
struct search_cap_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Int int_from_string(const std::string& s) {
    if (s.empty()) throw usage_error("empty integer literal");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw usage_error("malformed integer literal: " + s);
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9')
            throw usage_error("malformed integer literal: " + s);
    return Int(s);
}

// Accepts "7", "-3" or "2/3".
inline Rat parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(int_from_string(s));
    Int num = int_from_string(s.substr(0, slash));
    Int den = int_from_string(s.substr(slash + 1));
    if (den == 0) throw usage_error("zero denominator: " + s);
    return Rat(num, den);
}

inline std::string rational_to_string(const Rat& r) {
    if (boost::multiprecision::denominator(r) == 1)
        return boost::multiprecision::numerator(r).str();
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

inline bool is_integer(const Rat& r) {
    return boost::multiprecision::denominator(r) == 1;
}

inline Int rat_floor(const Rat& r) {
    Int n = boost::multiprecision::numerator(r);
    Int d = boost::multiprecision::denominator(r);
    Int q = n / d;
    if (n < 0 && q * d != n) --q;
    return q;
}

}  // namespace abcover
