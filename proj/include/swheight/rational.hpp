#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "swheight/errors.hpp"

namespace swh {

// Arbitrary-precision rationals, always reduced with positive denominator.
using rational = boost::multiprecision::cpp_rational;

inline std::string rational_to_string(const rational& r) {
    return r.str();
}

// Accepts "p", "-p", "p/q".
inline rational rational_from_string(const std::string& s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return rational(boost::multiprecision::cpp_int(s));
        const boost::multiprecision::cpp_int num(s.substr(0, slash));
        const boost::multiprecision::cpp_int den(s.substr(slash + 1));
        if (den == 0) throw usage_error("rational with zero denominator: " + s);
        return rational(num, den);
    } catch (const std::runtime_error&) {
        throw usage_error("cannot parse rational '" + s + "'");
    }
}

}  // namespace swh
