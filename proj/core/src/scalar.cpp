#include "bvperiod/scalar.hpp"

#include <stdexcept>

namespace bvperiod {

std::string to_string(const Scalar& s) { return s.get_str(); }

Scalar parse_scalar(std::string_view text) {
  Scalar out;
  if (out.set_str(std::string(text), 10) != 0)
    throw std::invalid_argument("bad rational: " + std::string(text));
  out.canonicalize();
  return out;
}

Scalar factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Scalar(f);
}

Scalar double_factorial(int n) {
  if (n <= 0) return Scalar(1);
  mpz_class f;
  mpz_2fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Scalar(f);
}

}  // namespace bvperiod
