#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

namespace levinlab {

/// Arbitrary-precision rational. Every prior, weight and physical quantity
/// in the library is carried exactly; conversion to floating point happens
/// only when a value is logged or reported.
using Rational = mpq_class;

/// 2^-exponent.
Rational dyadic(std::uint64_t exponent);

/// numerator * 2^-exponent.
Rational dyadic(const mpz_class& numerator, std::uint64_t exponent);

/// 2^exponent as an integer-valued rational.
Rational pow2(std::uint64_t exponent);

/// Parses "3", "-3/4", "0.25", "1.380649e-23" exactly.
Rational parse_rational(std::string_view text);

/// log2 of a positive rational, accurate to double precision even when the
/// numerator and denominator overflow a double.
double log2(const Rational& value);

double to_double(const Rational& value);

/// {"num": "...", "den": "..."} with decimal strings.
nlohmann::ordered_json to_json(const Rational& value);
Rational rational_from_json(const nlohmann::ordered_json& j);

/// Canonical "num/den" (or "num" when den == 1).
std::string to_string(const Rational& value);

}  // namespace levinlab
