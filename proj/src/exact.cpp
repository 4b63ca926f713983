#include "qfrag/exact.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

#include "qfrag/errors.hpp"

namespace qfrag {

namespace mp = boost::multiprecision;

double log_of(const BigInt& value) {
  if (value <= 0) throw DomainError("log_of: argument must be positive");
  const auto top_bit = static_cast<long>(mp::msb(value));
  if (top_bit < 960) return std::log(value.convert_to<double>());
  // keep 64 significant bits, account for the rest as a power of two
  const long shift = top_bit - 63;
  const BigInt head = value >> shift;
  return std::log(head.convert_to<double>()) + static_cast<double>(shift) * std::numbers::ln2;
}

double log_of(const Rational& value) {
  if (value <= 0) throw DomainError("log_of: argument must be positive");
  return log_of(BigInt(mp::numerator(value))) - log_of(BigInt(mp::denominator(value)));
}

double to_double(const Rational& value) {
  if (value == 0) return 0.0;
  const BigInt num = mp::abs(BigInt(mp::numerator(value)));
  const BigInt den = mp::denominator(value);
  const long shift = static_cast<long>(mp::msb(den)) - static_cast<long>(mp::msb(num)) + 64;
  BigInt quotient = shift >= 0 ? BigInt((num << shift) / den) : BigInt(num / (den << -shift));
  const double magnitude = std::ldexp(quotient.convert_to<double>(), static_cast<int>(-shift));
  return value < 0 ? -magnitude : magnitude;
}

std::string to_fraction_string(const Rational& value) {
  return mp::numerator(value).str() + "/" + mp::denominator(value).str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

BigInt pow10(unsigned k) {
  BigInt r = 1;
  for (unsigned i = 0; i < k; ++i) r *= 10;
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto fail = [&] { return ValidationError("not a rational number: '" + std::string(text) + "'"); };
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw fail();

  bool negative = false;
  std::string_view body = text;
  if (body.front() == '+' || body.front() == '-') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }

  if (const auto slash = body.find('/'); slash != std::string_view::npos) {
    const auto num = body.substr(0, slash);
    const auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw fail();
    const BigInt d(std::string{den});
    if (d == 0) throw fail();
    Rational r(BigInt(std::string{num}), d);
    return negative ? Rational(-r) : r;
  }

  long exponent = 0;
  if (const auto e = body.find_first_of("eE"); e != std::string_view::npos) {
    auto exp_text = body.substr(e + 1);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 6) throw fail();
    exponent = std::stol(std::string{exp_text});
    if (exp_negative) exponent = -exponent;
    body = body.substr(0, e);
  }

  std::string digits;
  if (const auto dot = body.find('.'); dot != std::string_view::npos) {
    const auto int_part = body.substr(0, dot);
    const auto frac_part = body.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) throw fail();
    if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)))
      throw fail();
    digits = std::string{int_part} + std::string{frac_part};
    exponent -= static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(body)) throw fail();
    digits = std::string{body};
  }

  Rational r{BigInt(digits)};
  if (exponent > 0) r *= pow10(static_cast<unsigned>(exponent));
  if (exponent < 0) r /= pow10(static_cast<unsigned>(-exponent));
  return negative ? Rational(-r) : r;
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  // exact at every step: result == C(n - k + i, i) after iteration i
  for (unsigned i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

}  // namespace qfrag
