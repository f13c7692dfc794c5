#pragma once

/*
 * Joint weight (eigenspace) decomposition of a commuting family of semisimple matrices,
 * entirely in exact arithmetic over the base field.
 *
 * Eigenvalues are extracted from squarefree minimal polynomials by rational-root peeling
 * plus exact quadratic factorization (field square roots in Q, Q(i) and real-quadratic
 * Q(t) shapes). A factor that cannot be split inside the field raises
 * EigenvalueOutsideField naming the irreducible factor — a hypothesis failure, since the
 * design requires ad_s to split over the declared field.
 *
 * The family is processed sequentially: each operator refines the current decomposition
 * by splitting every subspace along its restricted eigenvalues. For commuting semisimple
 * families this terminates with the joint weight spaces, and it keeps every root-finding
 * problem at the minimal polynomial of a restriction (degree <= 2 for every shipped input).
 */

#include "jordan.hpp"

#include <functional>
#include <vector>

namespace solvco {

struct WeightSpace {
  std::vector<FieldElement> weight;  // one eigenvalue per family member
  Matrix basis;                      // columns span the joint eigenspace
};

namespace roots {

/** Exact sqrt in the field, covering the shapes that arise from corpus fields:
 *  rational values, Gaussian rationals, and elements of a real quadratic subfield. */
inline std::optional<FieldElement> field_sqrt(const FieldElement& v) {
  const auto& spec = v.spec();
  if (v.is_zero()) return FieldElement::zero(spec);

  if (v.is_rational()) {
    Rational r = v.to_rational();
    if (auto s = rational_sqrt(r)) return FieldElement::from_rational(spec, *s);
    if (spec->i_adjoined)
      if (auto s = rational_sqrt(-r))
        return FieldElement::i_unit(spec).scaled(*s);
    if (spec->degree() == 2) {
      // sqrt(r) = q*t possible iff r = q^2 * t^2 with t^2 = -b1 t - b0 rational (b1 = 0)
      const auto& mp = spec->min_poly;
      if (mp[1] == 0) {
        Rational t2 = -mp[0];
        if (t2 != 0) {
          Rational q2 = r / t2;
          if (auto q = rational_sqrt(q2)) return FieldElement::generator(spec).scaled(*q);
        }
      }
    }
    return std::nullopt;
  }

  if (v.is_gaussian()) {
    // sqrt(a+bi) = p+qi with p^2 - q^2 = a, 2pq = b; p^2 = (a + sqrt(a^2+b^2))/2
    CRat g = v.to_gaussian();
    auto norm = rational_sqrt(g.re * g.re + g.im * g.im);
    if (!norm) return std::nullopt;
    for (int sgn : {1, -1}) {
      Rational p2 = (g.re + Rational(sgn) * (*norm)) / 2;
      auto p = rational_sqrt(p2);
      if (!p || *p == 0) continue;
      Rational q = g.im / (2 * (*p));
      if ((*p) * (*p) - q * q == g.re) {
        auto e = FieldElement::zero(spec);
        return FieldElement(spec, {CRat(*p, q)});
      }
    }
    return std::nullopt;
  }

  if (spec->degree() == 2) {
    // v = t0 + t1*t with rational t0,t1, t1 != 0: try u = p + q*t, m = x^2 + b1 x + b0
    const auto& c = v.coeffs();
    if (c[0].im == 0 && c[1].im == 0) {
      Rational t0 = c[0].re, t1 = c[1].re;
      Rational b1 = spec->min_poly[1], b0 = spec->min_poly[0];
      // (p+qt)^2 = p^2 - q^2 b0 + (2pq - q^2 b1) t ; match and solve the quadratic in u=q^2:
      // (b1^2 - 4 b0) u^2 + (2 t1 b1 - 4 t0) u + t1^2 = 0
      Rational A = b1 * b1 - 4 * b0, B = 2 * t1 * b1 - 4 * t0, C = t1 * t1;
      std::vector<Rational> us;
      if (A == 0) {
        if (B != 0) us.push_back(-C / B);
      } else {
        auto disc = rational_sqrt(B * B - 4 * A * C);
        if (disc) {
          us.push_back((-B + *disc) / (2 * A));
          us.push_back((-B - *disc) / (2 * A));
        }
      }
      for (const auto& u : us) {
        if (u < 0) continue;
        auto q = rational_sqrt(u);
        if (!q || *q == 0) continue;
        Rational p = (t1 + u * b1) / (2 * (*q));
        FieldElement cand =
            FieldElement::from_rational(spec, p) + FieldElement::generator(spec).scaled(*q);
        if (cand * cand == v) return cand;
      }
    }
  }
  return std::nullopt;
}

inline std::vector<Int> bounded_divisors(Int n) {
  n = boost::multiprecision::abs(n);
  std::vector<Int> out;
  if (n == 0) return out;
  for (Int d = 1; d * d <= n && d < 1000000; ++d)
    if (n % d == 0) {
      out.push_back(d);
      out.push_back(n / d);
    }
  return out;
}

/** All roots in the field of a squarefree polynomial, or the irreducible factor that
 *  blocks splitting. */
struct RootResult {
  std::vector<FieldElement> roots;
  bool split = false;
  std::string blocking_factor;  // set when !split
};

inline RootResult field_roots_squarefree(Poly p) {
  const auto& spec = p.spec();
  RootResult res;
  p = p.monic();

  // Peel rational roots (valid for any coefficient field: try candidates from the
  // rational sub-polynomial structure only when the coefficients are rational).
  if (p.all_rational() && p.degree() >= 1) {
    // integerize
    Int L = 1;
    for (const auto& c : p.coeffs()) L = int_lcm(L, rat_den(c.to_rational()));
    std::vector<Int> ip;
    for (const auto& c : p.coeffs()) {
      Rational r = c.to_rational();
      ip.push_back(rat_num(r) * (L / rat_den(r)));
    }
    while (!ip.empty() && ip.front() == 0) {
      // x = 0 is a root; deflate
      res.roots.push_back(FieldElement::zero(spec));
      ip.erase(ip.begin());
      std::vector<FieldElement> nc;
      for (const auto& c : ip) nc.push_back(FieldElement::from_rational(spec, Rational(c, L)));
      p = Poly(spec, nc).monic();
      break;  // squarefree: 0 occurs at most once
    }
    bool progress = true;
    while (progress && p.degree() > 2 && p.all_rational()) {
      progress = false;
      Int L2 = 1;
      for (const auto& c : p.coeffs()) L2 = int_lcm(L2, rat_den(c.to_rational()));
      std::vector<Int> q;
      for (const auto& c : p.coeffs()) {
        Rational r = c.to_rational();
        q.push_back(rat_num(r) * (L2 / rat_den(r)));
      }
      if (q.front() == 0) {
        res.roots.push_back(FieldElement::zero(spec));
        auto [quot, rem] = p.divmod(Poly::x(spec));
        p = quot.monic();
        progress = true;
        continue;
      }
      for (const Int& nu : bounded_divisors(q.front())) {
        for (const Int& de : bounded_divisors(q.back())) {
          for (int s : {1, -1}) {
            Rational cand(s * nu, de);
            FieldElement fc = FieldElement::from_rational(spec, cand);
            if (p.eval(fc).is_zero()) {
              res.roots.push_back(fc);
              Poly lin(spec, {-fc, FieldElement::one(spec)});
              p = p.divmod(lin).first.monic();
              progress = true;
              goto next_round;
            }
          }
        }
      }
    next_round:;
    }
  }

  // Now handle low-degree leftovers exactly.
  while (p.degree() >= 1) {
    if (p.degree() == 1) {
      res.roots.push_back(-p[0]);
      res.split = true;
      return res;
    }
    if (p.degree() == 2) {
      // x^2 + bx + c
      FieldElement b = p[1], c = p[0];
      FieldElement disc = b * b - c.scaled(Rational(4));
      auto s = field_sqrt(disc);
      if (!s) {
        res.blocking_factor = p.str();
        return res;
      }
      FieldElement half = FieldElement::from_rational(p.spec(), Rational(1, 2));
      res.roots.push_back((-b + *s) * half);
      res.roots.push_back((-b - *s) * half);
      res.split = true;
      return res;
    }
    // degree >= 3, no rational roots found (or irrational coefficients): try a
    // degree-2 factorization only through an even-polynomial substitution.
    bool even = true;
    for (int k = 1; k <= p.degree(); k += 2)
      if (!p[k].is_zero()) even = false;
    if (even) {
      // p(x) = q(x^2): find roots u of q, then sqrt them
      std::vector<FieldElement> qc;
      for (int k = 0; k <= p.degree(); k += 2) qc.push_back(p[k]);
      RootResult sub = field_roots_squarefree(Poly(p.spec(), qc));
      if (sub.split) {
        for (const auto& u : sub.roots) {
          auto s = field_sqrt(u);
          if (!s) {
            res.blocking_factor = p.str();
            return res;
          }
          res.roots.push_back(*s);
          res.roots.push_back(-*s);
        }
        res.split = true;
        return res;
      }
    }
    res.blocking_factor = p.str();
    return res;
  }
  res.split = true;
  return res;
}

}  // namespace roots

/** Restrict an operator to an invariant subspace given by basis columns B: solve B R = M B. */
inline Matrix restrict_to_subspace(const Matrix& m, const Matrix& basis) {
  auto r = basis.solve_matrix(m * basis);
  if (!r)
    throw Error(ErrKind::Internal, "restrict_to_subspace: subspace not invariant");
  return *r;
}

/** Simultaneous weight decomposition of pairwise-commuting semisimple matrices.
 *  Errors: NotCommuting, NotSemisimple(index), EigenvalueOutsideField(factor). */
inline std::vector<WeightSpace> joint_weight_decomposition(const std::vector<Matrix>& family,
                                                           const FieldSpecPtr& spec, size_t dim) {
  for (size_t a = 0; a < family.size(); ++a)
    for (size_t b = a + 1; b < family.size(); ++b)
      if (!family[a].commutes_with(family[b]))
        throw Error(ErrKind::Hypothesis,
                    "NotCommuting: family members " + std::to_string(a) + " and " +
                        std::to_string(b) + " do not commute");
  for (size_t a = 0; a < family.size(); ++a)
    if (!is_semisimple(family[a]))
      throw Error(ErrKind::Hypothesis,
                  "NotSemisimple: family member " + std::to_string(a) +
                      " has a non-squarefree minimal polynomial");

  std::vector<WeightSpace> spaces;
  spaces.push_back(WeightSpace{{}, Matrix::identity(spec, dim)});

  for (const auto& m : family) {
    std::vector<WeightSpace> next;
    for (const auto& sp : spaces) {
      Matrix r = restrict_to_subspace(m, sp.basis);
      Poly mp = r.minpoly();
      auto rr = roots::field_roots_squarefree(mp);
      if (!rr.split)
        throw Error(ErrKind::Hypothesis,
                    "EigenvalueOutsideField: irreducible factor " + rr.blocking_factor);
      size_t found = 0;
      for (const auto& lam : rr.roots) {
        Matrix shifted = r;
        for (size_t k = 0; k < shifted.rows(); ++k)
          shifted.at(k, k) = shifted.at(k, k) - lam;
        auto ker = shifted.kernel();
        if (ker.empty()) continue;
        Matrix sub(spec, sp.basis.rows(), ker.size());
        for (size_t j = 0; j < ker.size(); ++j) {
          std::vector<FieldElement> v(sp.basis.rows(), FieldElement::zero(spec));
          for (size_t c = 0; c < ker[j].size(); ++c)
            for (size_t i = 0; i < sp.basis.rows(); ++i)
              v[i] = v[i] + sp.basis.at(i, c) * ker[j][c];
          sub.set_col(j, v);
        }
        WeightSpace w;
        w.weight = sp.weight;
        w.weight.push_back(lam);
        w.basis = std::move(sub);
        found += ker.size();
        next.push_back(std::move(w));
      }
      if (found != sp.basis.cols())
        throw Error(ErrKind::Internal, "joint_weight_decomposition: dimensions do not add up");
    }
    spaces = std::move(next);
  }

  // invariants: total dimension and invertibility of the assembled eigenbasis
  size_t total = 0;
  for (const auto& s : spaces) total += s.basis.cols();
  if (total != dim)
    throw Error(ErrKind::Internal, "joint_weight_decomposition: eigenbasis is not full rank");
  return spaces;
}

}  // namespace solvco
