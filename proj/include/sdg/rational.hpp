#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "sdg/error.hpp"

namespace sdg {

using Rational = mpq_class;

/// Parses "p", "-p" or "p/q" exactly; anything else is rejected.
inline Rational parse_rational(std::string_view text) {
  auto valid_integer = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char ch : s)
      if (ch < '0' || ch > '9') return false;
    return true;
  };
  const auto slash = text.find('/');
  const bool ok = slash == std::string_view::npos
                      ? valid_integer(text)
                      : valid_integer(text.substr(0, slash)) &&
                            valid_integer(text.substr(slash + 1)) &&
                            text[slash + 1] != '-' && text[slash + 1] != '+';
  if (!ok) throw PreconditionError("not a rational literal: '" + std::string(text) + "'");
  std::string digits(text);
  if (digits.front() == '+') digits.erase(0, 1);
  Rational value;
  if (value.set_str(digits, 10) != 0) throw PreconditionError("not a rational literal: '" + digits + "'");
  if (value.get_den() == 0) throw PreconditionError("zero denominator in '" + digits + "'");
  value.canonicalize();
  return value;
}

/// Canonical "p/q" (or "p" when q = 1) form.
inline std::string format_rational(const Rational& value) { return value.get_str(); }

}  // namespace sdg
