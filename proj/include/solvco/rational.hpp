#pragma once

/*
 * Exact rational arithmetic: thin helpers around boost::multiprecision::cpp_rational.
 * Everything downstream (field elements, matrices, lattices, phases) is built on this
 * type; no floating point appears anywhere in the toolkit.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace solvco {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/** Error kinds map onto the CLI exit codes (0 pass, 1 hypothesis failure — the theorem
 *  does not apply, 2 invalid input, 3 internal assertion). Internal invariant violations
 *  use kind Internal: they indicate a broken precondition, never silent wrong output. */
enum class ErrKind { InvalidInput, Hypothesis, Internal };

class Error : public std::runtime_error {
 public:
  Error(ErrKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  ErrKind kind() const { return kind_; }

 private:
  ErrKind kind_;
};

inline Int rat_num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rational& r) { return rat_den(r) == 1; }

/** Parse "p", "-p", "p/q" with optional whitespace; rejects everything else. */
inline Rational parse_rational(const std::string& in) {
  std::string s;
  for (char c : in)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw Error(ErrKind::InvalidInput, "empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw Error(ErrKind::InvalidInput, "zero denominator in '" + in + "'");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw Error(ErrKind::InvalidInput, "malformed rational literal '" + in + "'");
  }
}

inline std::string rational_str(const Rational& r) {
  std::string s = rat_num(r).str();
  if (!is_integer(r)) s += "/" + rat_den(r).str();
  return s;
}

inline std::optional<Int> int_sqrt_exact(const Int& n) {
  if (n < 0) return std::nullopt;
  Int r = boost::multiprecision::sqrt(n);
  if (r * r == n) return r;
  return std::nullopt;
}

/** Exact square root of a nonnegative rational, if it exists in Q. */
inline std::optional<Rational> rational_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  auto n = int_sqrt_exact(rat_num(r));
  if (!n) return std::nullopt;
  auto d = int_sqrt_exact(rat_den(r));
  if (!d) return std::nullopt;
  return Rational(*n, *d);
}

inline Int int_gcd(Int a, Int b) { return boost::multiprecision::gcd(a, b); }
inline Int int_lcm(Int a, Int b) { return boost::multiprecision::lcm(a, b); }

/** Fractional part in [0,1): used for reduced phase displays; lifts are kept un-reduced. */
inline Rational frac_part(const Rational& r) {
  Int n = rat_num(r), d = rat_den(r);
  Int m = n % d;
  if (m < 0) m += d;
  return Rational(m, d);
}

}  // namespace solvco
