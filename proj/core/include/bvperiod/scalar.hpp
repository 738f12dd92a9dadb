#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace bvperiod {

// Exact rational; GMP keeps it canonical (lowest terms, positive denominator).
using Scalar = mpq_class;

std::string to_string(const Scalar& s);

// Accepts "p", "-p", "p/q".
Scalar parse_scalar(std::string_view text);

Scalar factorial(unsigned n);
Scalar double_factorial(int n);

}  // namespace bvperiod
