#include "voacheck/scalar.hpp"

#include <stdexcept>

namespace voacheck {

Scalar binomial_coeff(std::int64_t r, std::int64_t i) {
  if (i < 0) throw std::invalid_argument("binomial_coeff: negative lower index");
  mpz_class num = 1;
  mpz_class den = 1;
  for (std::int64_t k = 0; k < i; ++k) {
    num *= mpz_class(std::to_string(r - k));
    den *= mpz_class(std::to_string(k + 1));
  }
  Scalar out(num, den);
  out.canonicalize();
  return out;
}

std::string to_string(const Scalar& s) {
  return s.get_num().get_str() + "/" + s.get_den().get_str();
}

Scalar parse_scalar(std::string_view text) {
  std::string t(text);
  if (t.empty()) throw std::invalid_argument("empty rational");
  if (t.front() == '+') t.erase(0, 1);
  auto slash = t.find('/');
  auto digits_ok = [](const std::string& s) {
    std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (s.size() == start) return false;
    for (std::size_t k = start; k < s.size(); ++k)
      if (s[k] < '0' || s[k] > '9') return false;
    return true;
  };
  std::string num = t.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
  if (!digits_ok(num) || !digits_ok(den) || den[0] == '-')
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  mpz_class d(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Scalar out(mpz_class(num), d);
  out.canonicalize();
  return out;
}

Scalar power(const Scalar& z, std::int64_t k) {
  if (k < 0) {
    if (z == 0) throw std::domain_error("power: zero to a negative exponent");
    return Scalar(1) / power(z, -k);
  }
  Scalar out = 1;
  Scalar base = z;
  while (k > 0) {
    if (k & 1) out *= base;
    base *= base;
    k >>= 1;
  }
  return out;
}

Scalar factorial(std::int64_t n) {
  mpz_class out = 1;
  for (std::int64_t k = 2; k <= n; ++k) out *= static_cast<unsigned long>(k);
  return Scalar(out);
}

}  // namespace voacheck
