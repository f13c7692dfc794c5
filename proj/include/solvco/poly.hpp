#pragma once

/*
 * Dense univariate polynomials over a number field (little-endian coefficient vectors).
 * Used for characteristic/minimal polynomials, squarefree parts, and the Newton
 * iteration behind the Jordan–Chevalley decomposition.
 */

#include "field.hpp"

#include <vector>

namespace solvco {

class Poly {
 public:
  Poly() = default;
  Poly(FieldSpecPtr spec, std::vector<FieldElement> c) : spec_(std::move(spec)), c_(std::move(c)) {
    trim();
  }
  static Poly zero(const FieldSpecPtr& spec) { return Poly(spec, {}); }
  static Poly constant(const FieldSpecPtr& spec, const FieldElement& v) {
    return Poly(spec, {v});
  }
  static Poly x(const FieldSpecPtr& spec) {
    return Poly(spec, {FieldElement::zero(spec), FieldElement::one(spec)});
  }

  const FieldSpecPtr& spec() const { return spec_; }
  const std::vector<FieldElement>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero poly
  const FieldElement& operator[](size_t k) const { return c_[k]; }

  Poly operator+(const Poly& o) const {
    auto r = c_;
    if (r.size() < o.c_.size()) r.resize(o.c_.size(), FieldElement::zero(spec_));
    for (size_t k = 0; k < o.c_.size(); ++k) r[k] = r[k] + o.c_[k];
    return Poly(spec_, std::move(r));
  }
  Poly operator-() const {
    auto r = c_;
    for (auto& x : r) x = -x;
    return Poly(spec_, std::move(r));
  }
  Poly operator-(const Poly& o) const { return *this + (-o); }
  Poly operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return zero(spec_);
    std::vector<FieldElement> r(c_.size() + o.c_.size() - 1, FieldElement::zero(spec_));
    for (size_t a = 0; a < c_.size(); ++a) {
      if (c_[a].is_zero()) continue;
      for (size_t b = 0; b < o.c_.size(); ++b) r[a + b] = r[a + b] + c_[a] * o.c_[b];
    }
    return Poly(spec_, std::move(r));
  }
  Poly scaled(const FieldElement& f) const {
    auto r = c_;
    for (auto& x : r) x = x * f;
    return Poly(spec_, std::move(r));
  }

  std::pair<Poly, Poly> divmod(const Poly& den) const {
    if (den.is_zero()) throw Error(ErrKind::Internal, "polynomial division by zero");
    std::vector<FieldElement> num = c_;
    std::vector<FieldElement> q(
        num.size() >= den.c_.size() ? num.size() - den.c_.size() + 1 : 0,
        FieldElement::zero(spec_));
    FieldElement lead_inv = den.c_.back().inv();
    while (num.size() >= den.c_.size()) {
      while (!num.empty() && num.back().is_zero()) num.pop_back();
      if (num.size() < den.c_.size()) break;
      FieldElement f = num.back() * lead_inv;
      size_t shift = num.size() - den.c_.size();
      q[shift] = q[shift] + f;
      for (size_t k = 0; k < den.c_.size(); ++k)
        num[shift + k] = num[shift + k] - f * den.c_[k];
      num.pop_back();
    }
    return {Poly(spec_, std::move(q)), Poly(spec_, std::move(num))};
  }
  Poly mod(const Poly& den) const { return divmod(den).second; }

  Poly derivative() const {
    std::vector<FieldElement> r;
    for (size_t k = 1; k < c_.size(); ++k)
      r.push_back(c_[k].scaled(Rational(static_cast<long>(k))));
    return Poly(spec_, std::move(r));
  }

  Poly monic() const {
    if (is_zero()) return *this;
    return scaled(c_.back().inv());
  }

  static Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
      Poly r = a.mod(b);
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  /** p / gcd(p, p'): same roots, each simple. */
  Poly squarefree_part() const {
    Poly g = gcd(*this, derivative());
    return divmod(g).first.monic();
  }

  FieldElement eval(const FieldElement& x) const {
    FieldElement v = FieldElement::zero(spec_);
    for (int k = degree(); k >= 0; --k) v = v * x + c_[k];
    return v;
  }

  bool all_rational() const {
    for (const auto& c : c_)
      if (!c.is_rational()) return false;
    return true;
  }

  std::string str(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::string s;
    for (int k = degree(); k >= 0; --k) {
      if (c_[k].is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += "(" + c_[k].str() + ")";
      if (k >= 1) s += "*" + var;
      if (k >= 2) s += "^" + std::to_string(k);
    }
    return s;
  }

 private:
  FieldSpecPtr spec_;
  std::vector<FieldElement> c_;

  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
};

}  // namespace solvco
