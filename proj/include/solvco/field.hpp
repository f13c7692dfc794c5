#pragma once

/*
 * Exact number-field arithmetic.
 *
 * A FieldSpec describes K = Q[t]/(m(t)), optionally with i = sqrt(-1) adjoined
 * (the working field for complexified Lie algebras). The generator t is assumed to
 * denote a real algebraic number (the spec's real embedding hint), so complex
 * conjugation fixes t and negates i.
 *
 * A FieldElement stores d = deg(m) coefficients, each a pair (re, im) of rationals;
 * the imaginary block is only populated when i is adjoined. Arithmetic is polynomial
 * arithmetic mod m over Q(i); inverses come from the extended Euclidean algorithm.
 */

#include "rational.hpp"

#include <memory>
#include <sstream>
#include <vector>

namespace solvco {

/** A rational complex number a + b·i; the coefficient field under the power basis. */
struct CRat {
  Rational re, im;

  CRat() = default;
  CRat(Rational r) : re(std::move(r)) {}
  CRat(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  CRat conj() const { return CRat(re, -im); }

  CRat operator+(const CRat& o) const { return CRat(re + o.re, im + o.im); }
  CRat operator-(const CRat& o) const { return CRat(re - o.re, im - o.im); }
  CRat operator-() const { return CRat(-re, -im); }
  CRat operator*(const CRat& o) const {
    return CRat(re * o.re - im * o.im, re * o.im + im * o.re);
  }
  CRat inv() const {
    Rational n = re * re + im * im;
    if (n == 0) throw Error(ErrKind::Internal, "division by zero (complex rational)");
    return CRat(re / n, -im / n);
  }
  CRat operator/(const CRat& o) const { return *this * o.inv(); }
  bool operator==(const CRat& o) const { return re == o.re && im == o.im; }
  bool operator!=(const CRat& o) const { return !(*this == o); }
};

struct FieldSpec {
  std::string name;                 // display name, e.g. "Q", "Q(t)"
  std::string generator = "t";     // symbol used for the primitive element in literals
  std::vector<Rational> min_poly;  // monic, little-endian, degree >= 1; [0,1] means K0 = Q
  bool i_adjoined = false;

  int degree() const { return static_cast<int>(min_poly.size()) - 1; }

  bool same_as(const FieldSpec& o) const {
    return min_poly == o.min_poly && i_adjoined == o.i_adjoined && generator == o.generator;
  }

  /** Structural checks + irreducibility over Q for degree <= 3 (no rational roots);
   *  higher degrees get a squarefree check (best effort, per the data-type contract). */
  void validate() const {
    if (min_poly.size() < 2) throw Error(ErrKind::InvalidInput, "min_poly must have degree >= 1");
    if (min_poly.back() != 1) throw Error(ErrKind::InvalidInput, "min_poly must be monic");
    int d = degree();
    if (d >= 2) {
      if (min_poly[0] == 0)
        throw Error(ErrKind::InvalidInput, "min_poly is reducible (zero constant term)");
      // rational root search: roots p/q with p | num(c0 * lcm), q | lead — use the
      // standard trick on the integerized polynomial.
      if (d <= 3 && has_rational_root())
        throw Error(ErrKind::InvalidInput, "min_poly is reducible over Q (rational root)");
      if (!squarefree_over_q())
        throw Error(ErrKind::InvalidInput, "min_poly is not squarefree");
    }
  }

  static std::shared_ptr<const FieldSpec> rationals(bool with_i = false) {
    auto s = std::make_shared<FieldSpec>();
    s->name = with_i ? "Q(i)" : "Q";
    s->min_poly = {Rational(0), Rational(1)};
    s->i_adjoined = with_i;
    return s;
  }

  /** The complexification: same minimal polynomial, i adjoined. */
  static std::shared_ptr<const FieldSpec> complexified(const FieldSpec& base) {
    auto s = std::make_shared<FieldSpec>(base);
    if (!s->i_adjoined) {
      s->i_adjoined = true;
      s->name = base.name + "(i)";
    }
    return s;
  }

 private:
  bool has_rational_root() const;
  bool squarefree_over_q() const;
};

using FieldSpecPtr = std::shared_ptr<const FieldSpec>;

class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(FieldSpecPtr spec, std::vector<CRat> coeffs)
      : spec_(std::move(spec)), c_(std::move(coeffs)) {
    c_.resize(spec_->degree());
    check_i();
  }

  static FieldElement zero(const FieldSpecPtr& spec) {
    return FieldElement(spec, std::vector<CRat>(spec->degree()));
  }
  static FieldElement from_rational(const FieldSpecPtr& spec, const Rational& r) {
    auto e = zero(spec);
    e.c_[0] = CRat(r);
    return e;
  }
  static FieldElement one(const FieldSpecPtr& spec) { return from_rational(spec, 1); }
  static FieldElement i_unit(const FieldSpecPtr& spec) {
    if (!spec->i_adjoined) throw Error(ErrKind::InvalidInput, "field has no i adjoined");
    auto e = zero(spec);
    e.c_[0] = CRat(Rational(0), Rational(1));
    return e;
  }
  static FieldElement generator(const FieldSpecPtr& spec) {
    if (spec->degree() < 2)
      throw Error(ErrKind::InvalidInput, "field generator requested but degree is 1");
    auto e = zero(spec);
    e.c_[1] = CRat(Rational(1));
    return e;
  }

  const FieldSpecPtr& spec() const { return spec_; }
  const std::vector<CRat>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (!x.is_zero()) return false;
    return true;
  }
  bool is_one() const {
    if (c_[0] != CRat(Rational(1))) return false;
    for (size_t k = 1; k < c_.size(); ++k)
      if (!c_[k].is_zero()) return false;
    return true;
  }
  bool is_rational() const {
    if (c_[0].im != 0) return false;
    for (size_t k = 1; k < c_.size(); ++k)
      if (!c_[k].is_zero()) return false;
    return true;
  }
  Rational to_rational() const {
    if (!is_rational()) throw Error(ErrKind::Internal, "field element is not rational");
    return c_[0].re;
  }
  /** Pure Gaussian rational a + bi (no generator part)? */
  bool is_gaussian() const {
    for (size_t k = 1; k < c_.size(); ++k)
      if (!c_[k].is_zero()) return false;
    return true;
  }
  CRat to_gaussian() const {
    if (!is_gaussian()) throw Error(ErrKind::Internal, "field element is not in Q(i)");
    return c_[0];
  }

  FieldElement conj() const {
    auto r = *this;
    for (auto& x : r.c_) x = x.conj();
    return r;
  }

  FieldElement operator-() const {
    auto r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  FieldElement operator+(const FieldElement& o) const {
    match(o);
    auto r = *this;
    for (size_t k = 0; k < c_.size(); ++k) r.c_[k] = r.c_[k] + o.c_[k];
    return r;
  }
  FieldElement operator-(const FieldElement& o) const { return *this + (-o); }

  FieldElement operator*(const FieldElement& o) const {
    match(o);
    int d = spec_->degree();
    std::vector<CRat> prod(2 * d - 1);
    for (int a = 0; a < d; ++a) {
      if (c_[a].is_zero()) continue;
      for (int b = 0; b < d; ++b) {
        if (o.c_[b].is_zero()) continue;
        prod[a + b] = prod[a + b] + c_[a] * o.c_[b];
      }
    }
    reduce_mod_min_poly(prod, *spec_);
    prod.resize(d);
    return FieldElement(spec_, std::move(prod));
  }

  FieldElement inv() const {
    if (is_zero()) throw Error(ErrKind::Internal, "division by zero in field");
    int d = spec_->degree();
    if (d == 1) return FieldElement(spec_, {c_[0].inv()});
    // Extended Euclid over Q(i)[x] against the (rational) minimal polynomial.
    std::vector<CRat> a = c_, m(d + 1);
    for (int k = 0; k <= d; ++k) m[k] = CRat(spec_->min_poly[k]);
    // invariants: s*self = a (mod m), t*self = b (mod m)
    std::vector<CRat> r0 = m, r1 = a, s0 = {}, s1 = {CRat(Rational(1))};
    trim(r1);
    while (!r1.empty()) {
      auto [q, rem] = poly_divmod(r0, r1);
      auto s2 = poly_sub(s0, poly_mul(q, s1));
      r0 = std::move(r1);
      r1 = std::move(rem);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    if (r0.size() != 1)
      throw Error(ErrKind::InvalidInput,
                  "element is a zero divisor: min_poly reducible over Q(i)");
    CRat lead = r0[0].inv();
    std::vector<CRat> out(d);
    for (size_t k = 0; k < s0.size() && k < out.size(); ++k) out[k] = s0[k] * lead;
    return FieldElement(spec_, std::move(out));
  }
  FieldElement operator/(const FieldElement& o) const { return *this * o.inv(); }

  bool operator==(const FieldElement& o) const {
    match(o);
    return c_ == o.c_;
  }
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  FieldElement scaled(const Rational& r) const {
    auto out = *this;
    for (auto& x : out.c_) x = x * CRat(r);
    return out;
  }

  /** Deterministic display, e.g. "1", "-1/2", "i", "2-i", "1/2*t+i*t". */
  std::string str() const {
    std::ostringstream os;
    bool first = true;
    auto emit = [&](const Rational& v, const std::string& sym) {
      if (v == 0) return;
      Rational a = v;
      if (!first)
        os << (a < 0 ? "-" : "+"), a = boost::multiprecision::abs(a);
      else if (a < 0)
        os << "-", a = -a;
      first = false;
      if (sym.empty() || a != 1) os << rational_str(a);
      if (!sym.empty()) {
        if (a != 1) os << "*";
        os << sym;
      }
    };
    for (size_t k = 0; k < c_.size(); ++k) {
      std::string pw = k == 0 ? "" : (k == 1 ? spec_->generator
                                             : spec_->generator + "^" + std::to_string(k));
      emit(c_[k].re, pw);
      emit(c_[k].im, pw.empty() ? "i" : "i*" + pw);
    }
    if (first) os << "0";
    return os.str();
  }

  /** Q-vector coordinates: (re_0..re_{d-1}) or (re_0..re_{d-1}, im_0..im_{d-1}). */
  std::vector<Rational> q_coords() const {
    std::vector<Rational> out;
    for (const auto& x : c_) out.push_back(x.re);
    if (spec_->i_adjoined)
      for (const auto& x : c_) out.push_back(x.im);
    return out;
  }
  static FieldElement from_q_coords(const FieldSpecPtr& spec, const std::vector<Rational>& v) {
    int d = spec->degree();
    std::vector<CRat> c(d);
    for (int k = 0; k < d; ++k) c[k].re = v[k];
    if (spec->i_adjoined)
      for (int k = 0; k < d; ++k) c[k].im = v[d + k];
    return FieldElement(spec, std::move(c));
  }
  static int q_dim(const FieldSpec& spec) {
    return spec.degree() * (spec.i_adjoined ? 2 : 1);
  }

  /** Lift into a larger-or-equal field (same min_poly, i possibly newly adjoined). */
  FieldElement lift_to(const FieldSpecPtr& target) const {
    if (spec_->same_as(*target)) return FieldElement(target, c_);
    if (spec_->min_poly != target->min_poly || (spec_->i_adjoined && !target->i_adjoined))
      throw Error(ErrKind::Internal, "incompatible field lift");
    return FieldElement(target, c_);
  }

 private:
  FieldSpecPtr spec_;
  std::vector<CRat> c_;

  void check_i() const {
    if (spec_->i_adjoined) return;
    for (const auto& x : c_)
      if (x.im != 0)
        throw Error(ErrKind::InvalidInput, "imaginary coefficient in field without i");
  }
  void match(const FieldElement& o) const {
    if (spec_.get() == o.spec_.get()) return;
    if (!spec_ || !o.spec_ || !spec_->same_as(*o.spec_))
      throw Error(ErrKind::Internal, "field mismatch in arithmetic");
  }

  static void trim(std::vector<CRat>& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
  }
  static std::vector<CRat> poly_mul(const std::vector<CRat>& a, const std::vector<CRat>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<CRat> r(a.size() + b.size() - 1);
    for (size_t x = 0; x < a.size(); ++x)
      for (size_t y = 0; y < b.size(); ++y) r[x + y] = r[x + y] + a[x] * b[y];
    trim(r);
    return r;
  }
  static std::vector<CRat> poly_sub(std::vector<CRat> a, const std::vector<CRat>& b) {
    if (a.size() < b.size()) a.resize(b.size());
    for (size_t k = 0; k < b.size(); ++k) a[k] = a[k] - b[k];
    trim(a);
    return a;
  }
  static std::pair<std::vector<CRat>, std::vector<CRat>> poly_divmod(std::vector<CRat> num,
                                                                     const std::vector<CRat>& den) {
    std::vector<CRat> q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0);
    CRat lead_inv = den.back().inv();
    while (num.size() >= den.size() && !num.empty()) {
      trim(num);
      if (num.size() < den.size()) break;
      CRat f = num.back() * lead_inv;
      size_t shift = num.size() - den.size();
      q[shift] = q[shift] + f;
      for (size_t k = 0; k < den.size(); ++k)
        num[shift + k] = num[shift + k] - f * den[k];
      num.pop_back();
    }
    trim(num);
    return {q, num};
  }
  static void reduce_mod_min_poly(std::vector<CRat>& p, const FieldSpec& spec) {
    int d = spec.degree();
    for (int k = static_cast<int>(p.size()) - 1; k >= d; --k) {
      CRat f = p[k];
      if (f.is_zero()) continue;
      p[k] = CRat();
      // t^k = t^(k-d) * (-(m - t^d))
      for (int j = 0; j < d; ++j) p[k - d + j] = p[k - d + j] - f * CRat(spec.min_poly[j]);
    }
  }
};

inline bool FieldSpec::has_rational_root() const {
  // integerize: multiply by lcm of denominators
  Int L = 1;
  for (const auto& c : min_poly) L = int_lcm(L, rat_den(c));
  std::vector<Int> p;
  for (const auto& c : min_poly) p.push_back(rat_num(c) * (L / rat_den(c)));
  Int a0 = boost::multiprecision::abs(p.front());
  Int an = boost::multiprecision::abs(p.back());
  auto divisors = [](Int n) {
    std::vector<Int> out;
    for (Int d = 1; d * d <= n && d < 2000000; ++d)
      if (n % d == 0) {
        out.push_back(d);
        out.push_back(n / d);
      }
    return out;
  };
  auto eval = [&](const Rational& x) {
    Rational v = 0;
    for (int k = static_cast<int>(p.size()) - 1; k >= 0; --k) v = v * x + Rational(p[k]);
    return v;
  };
  if (a0 == 0) return true;
  for (const Int& nu : divisors(a0))
    for (const Int& de : divisors(an))
      for (int s : {1, -1})
        if (eval(Rational(s * nu, de)) == 0) return true;
  return false;
}

inline bool FieldSpec::squarefree_over_q() const {
  // gcd(m, m') over Q via Euclid on rational polynomials
  std::vector<Rational> a = min_poly, b;
  for (size_t k = 1; k < min_poly.size(); ++k) b.push_back(min_poly[k] * Rational(k));
  auto trim = [](std::vector<Rational>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
  };
  trim(a), trim(b);
  while (!b.empty()) {
    // a mod b
    while (a.size() >= b.size() && !a.empty()) {
      Rational f = a.back() / b.back();
      size_t shift = a.size() - b.size();
      for (size_t k = 0; k < b.size(); ++k) a[shift + k] -= f * b[k];
      a.pop_back();
      trim(a);
    }
    std::swap(a, b);
  }
  return a.size() == 1;
}

}  // namespace solvco
