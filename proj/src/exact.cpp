#include "symtail/exact.hpp"

#include "symtail/errors.hpp"

#include <algorithm>
#include <cctype>

namespace symtail {

namespace {

bool valid_integer_text(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

BigNatural pow10(long e) {
  BigNatural r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(e));
  return r;
}

}  // namespace

ExactRational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const auto num = text.substr(0, slash);
  const auto den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!valid_integer_text(num) || !valid_integer_text(den) || den.front() == '-' || den.front() == '+') {
    throw SchemaError("malformed rational: '" + std::string(text) + "'");
  }
  BigInteger n(std::string(num.front() == '+' ? num.substr(1) : num));
  BigInteger d{std::string(den)};
  if (d == 0) throw SchemaError("zero denominator: '" + std::string(text) + "'");
  ExactRational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const ExactRational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

BigNatural pow2(unsigned k) {
  BigNatural r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, k);
  return r;
}

ExactRational pow2_inverse(unsigned k) {
  return ExactRational(BigInteger(1), pow2(k));
}

BigInteger floor_int(const ExactRational& q) {
  BigInteger r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

BigInteger ceil_int(const ExactRational& q) {
  BigInteger r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

bool is_integer(const ExactRational& q) { return mpz_divisible_p(q.get_num_mpz_t(), q.get_den_mpz_t()) != 0; }

ExactRational rational_gcd(const ExactRational& a, const ExactRational& b) {
  // gcd(p/q, r/s) = gcd(p s, r q) / (q s)
  BigInteger num = gcd(BigInteger(a.get_num() * b.get_den()), BigInteger(b.get_num() * a.get_den()));
  ExactRational g(num, BigInteger(a.get_den() * b.get_den()));
  g.canonicalize();
  return g;
}

std::string to_decimal(const ExactRational& q, int digits) {
  if (q == 0) return "0";
  const bool negative = q < 0;
  const ExactRational a = abs(q);

  // Find e with 10^e <= a < 10^{e+1}.
  long e = static_cast<long>(mpz_sizeinbase(a.get_num_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(a.get_den_mpz_t(), 10));
  auto power = [](long k) {
    return k >= 0 ? ExactRational(pow10(k)) : ExactRational(BigInteger(1), pow10(-k));
  };
  while (power(e) > a) --e;
  while (power(e + 1) <= a) ++e;

  const ExactRational scaled = a * power(digits - 1 - e);
  BigInteger rounded = floor_int(scaled + ExactRational(1, 2));
  if (rounded == pow10(digits)) {
    rounded /= 10;
    ++e;
  }
  std::string mantissa = rounded.get_str();

  std::string out;
  if (e < -4 || e >= digits) {
    std::string frac = mantissa.substr(1);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    out = mantissa.substr(0, 1);
    if (!frac.empty()) out += "." + frac;
    const long ae = e < 0 ? -e : e;
    out += std::string(e < 0 ? "e-" : "e+") + (ae < 10 ? "0" : "") + std::to_string(ae);
  } else if (e >= 0) {
    std::string int_part = mantissa.substr(0, static_cast<std::size_t>(e + 1));
    std::string frac = mantissa.substr(static_cast<std::size_t>(e + 1));
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    out = int_part + (frac.empty() ? "" : "." + frac);
  } else {
    std::string frac = std::string(static_cast<std::size_t>(-e - 1), '0') + mantissa;
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    out = "0." + frac;
  }
  return negative ? "-" + out : out;
}

}  // namespace symtail
