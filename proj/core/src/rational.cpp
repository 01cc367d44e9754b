#include "levinlab/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace levinlab {

Rational dyadic(std::uint64_t exponent) {
  return dyadic(mpz_class(1), exponent);
}

Rational dyadic(const mpz_class& numerator, std::uint64_t exponent) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, exponent);
  Rational q(numerator, den);
  q.canonicalize();
  return q;
}

Rational pow2(std::uint64_t exponent) {
  mpz_class num;
  mpz_ui_pow_ui(num.get_mpz_t(), 2, exponent);
  return Rational(num);
}

namespace {

mpz_class pow10(unsigned long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, e);
  return p;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto fail = [&] {
    throw std::invalid_argument("not a rational number: '" +
                                std::string(text) + "'");
  };
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  if (text.empty()) fail();

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational q;
    try {
      q = Rational(mpz_class(std::string(text.substr(0, slash)), 10),
                   mpz_class(std::string(text.substr(slash + 1)), 10));
    } catch (const std::invalid_argument&) {
      fail();
    }
    if (q.get_den() == 0) fail();
    q.canonicalize();
    return q;
  }

  // Decimal with optional fraction and exponent.
  bool negative = false;
  std::size_t i = 0;
  if (text[i] == '+' || text[i] == '-') {
    negative = text[i] == '-';
    ++i;
  }
  std::string digits;
  long scale = 0;
  bool seen_digit = false;
  for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
    digits.push_back(text[i]);
    seen_digit = true;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
      digits.push_back(text[i]);
      --scale;
      seen_digit = true;
    }
  }
  if (!seen_digit) fail();
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    std::string exp(text.substr(i));
    if (exp.empty()) fail();
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(exp, &used);
    } catch (const std::exception&) {
      fail();
    }
    if (used != exp.size()) fail();
    scale += e;
    i = text.size();
  }
  if (i != text.size()) fail();

  mpz_class mantissa(digits, 10);
  Rational q = scale >= 0 ? Rational(mantissa * pow10(static_cast<unsigned long>(scale)))
                          : Rational(mantissa, pow10(static_cast<unsigned long>(-scale)));
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

double log2(const Rational& value) {
  if (sgn(value) <= 0) {
    throw std::domain_error("log2 of a non-positive rational");
  }
  long num_exp = 0;
  long den_exp = 0;
  double num_mant = mpz_get_d_2exp(&num_exp, value.get_num_mpz_t());
  double den_mant = mpz_get_d_2exp(&den_exp, value.get_den_mpz_t());
  return std::log2(num_mant) - std::log2(den_mant) +
         static_cast<double>(num_exp - den_exp);
}

double to_double(const Rational& value) { return value.get_d(); }

nlohmann::ordered_json to_json(const Rational& value) {
  nlohmann::ordered_json j;
  j["num"] = value.get_num().get_str();
  j["den"] = value.get_den().get_str();
  return j;
}

Rational rational_from_json(const nlohmann::ordered_json& j) {
  Rational q(mpz_class(j.at("num").get<std::string>(), 10),
             mpz_class(j.at("den").get<std::string>(), 10));
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& value) { return value.get_str(); }

}  // namespace levinlab
