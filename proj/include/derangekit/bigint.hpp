#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace derangekit {

// Exact signed arbitrary-precision integer. Every count in this library is a
// BigInt; there is no floating point anywhere on a counting path.
using BigInt = boost::multiprecision::cpp_int;

inline std::string to_string(const BigInt& v) { return v.str(); }

}  // namespace derangekit
