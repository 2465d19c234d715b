#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace iqp {

/// Exact scalar field. All coefficient arithmetic in the library is over Q.
using Rational = mpq_class;

/// Parses "p", "-p" or "p/q" (q > 0 after normalisation). Throws Error(Malformed).
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form; integers print without denominator.
std::string format_rational(const Rational& value);

}  // namespace iqp
