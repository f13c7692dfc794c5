#pragma once

/*
 * Symbolic-exact character values.
 *
 * A LogReal is a Q-linear combination of declared transcendental symbols (e.g. t0 = log λ);
 * the symbols are declared Q-linearly independent by the input, which makes equality and
 * vanishing decidable. The reserved symbol "__2pi" stands for 2π and carries the rational
 * multiples of 2π that appear when Gaussian-rational coefficients mix modulus and phase data.
 *
 * A Phase is a rational lift p: the value is e^{2πi·p}. Lifts are NOT reduced mod 1; the
 * group law adds lifts, powers scale them, and is_one tests lift ∈ Z. This makes rational
 * powers single-valued and "trivial after passing to a finite-index subgroup" decidable.
 *
 * A CharacterValue is exp(modulus + 2πi·(lift + sym/2π)) — modulus a LogReal, lift a
 * rational, sym a LogReal recording symbolic (automatically irrational) phase parts that
 * arise only in Dolbeault admission tests. For all spec-level inputs sym is empty.
 */

#include "rational.hpp"

#include <map>
#include <sstream>
#include <string>

namespace solvco {

inline const std::string kTwoPi = "__2pi";

struct LogReal {
  std::map<std::string, Rational> terms;  // symbol -> rational coefficient, no zeros stored

  bool is_zero() const { return terms.empty(); }

  void add_term(const std::string& sym, const Rational& c) {
    if (c == 0) return;
    auto it = terms.find(sym);
    if (it == terms.end()) {
      terms.emplace(sym, c);
    } else {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }

  LogReal operator+(const LogReal& o) const {
    LogReal r = *this;
    for (const auto& [s, c] : o.terms) r.add_term(s, c);
    return r;
  }
  LogReal operator-() const {
    LogReal r = *this;
    for (auto& [s, c] : r.terms) c = -c;
    return r;
  }
  LogReal operator-(const LogReal& o) const { return *this + (-o); }
  LogReal scaled(const Rational& q) const {
    LogReal r;
    if (q == 0) return r;
    for (const auto& [s, c] : terms) r.terms.emplace(s, c * q);
    return r;
  }
  bool operator==(const LogReal& o) const { return terms == o.terms; }

  std::string str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [s, c] : terms) {
      if (!first) os << (c < 0 ? " - " : " + ");
      else if (c < 0) os << "-";
      first = false;
      Rational a = boost::multiprecision::abs(c);
      if (a != 1) os << rational_str(a) << "*";
      os << (s == kTwoPi ? "2pi" : s);
    }
    return os.str();
  }
};

struct Phase {
  Rational lift;  // value is e^{2πi·lift}

  Phase() = default;
  explicit Phase(Rational l) : lift(std::move(l)) {}
  Phase operator+(const Phase& o) const { return Phase(lift + o.lift); }
  Phase scaled(const Rational& q) const { return Phase(lift * q); }
  bool is_one() const { return is_integer(lift); }
  bool operator==(const Phase& o) const { return lift == o.lift; }
};

struct CharacterValue {
  LogReal modulus;   // log of |value|
  Phase phase;       // rational part of arg/2π (lift convention)
  LogReal phase_sym; // symbolic part: Σ c_s·s means extra arg of Σ c_s·s (radians)/... /2π units? see note

  // Convention: total argument = 2π·phase.lift + Σ_{s} phase_sym[s]·s  (radians).
  // phase_sym never contains __2pi: such contributions are folded into the lift.

  static CharacterValue one() { return CharacterValue{}; }

  void normalize() {
    auto it = phase_sym.terms.find(kTwoPi);
    if (it != phase_sym.terms.end()) {
      phase.lift += it->second;  // s = 2π: contributes 2π·c radians = c full turns
      phase_sym.terms.erase(it);
    }
  }

  CharacterValue operator*(const CharacterValue& o) const {
    CharacterValue r;
    r.modulus = modulus + o.modulus;
    r.phase = phase + o.phase;
    r.phase_sym = phase_sym + o.phase_sym;
    r.normalize();
    return r;
  }

  /** cv_pow with a rational exponent: scales modulus and the phase lift (single-valued
   *  by the lift convention). */
  CharacterValue pow(const Rational& e) const {
    CharacterValue r;
    r.modulus = modulus.scaled(e);
    r.phase = phase.scaled(e);
    r.phase_sym = phase_sym.scaled(e);
    r.normalize();
    return r;
  }

  CharacterValue inverse() const { return pow(Rational(-1)); }

  /** cv_is_one: unit modulus, integral lift, no symbolic phase. */
  bool is_one() const {
    return modulus.is_zero() && phase.is_one() && phase_sym.is_zero();
  }

  /** Complex conjugate value. */
  CharacterValue conj() const {
    CharacterValue r;
    r.modulus = modulus;
    r.phase = Phase(-phase.lift);
    r.phase_sym = -phase_sym;
    return r;
  }

  bool operator==(const CharacterValue& o) const {
    return modulus == o.modulus && phase == o.phase && phase_sym == o.phase_sym;
  }

  std::string str() const {
    std::ostringstream os;
    os << "exp(" << modulus.str() << ")·e^{2πi·" << rational_str(phase.lift);
    if (!phase_sym.is_zero()) os << " + i·(" << phase_sym.str() << ")";
    os << "}";
    return os.str();
  }
};

}  // namespace solvco
