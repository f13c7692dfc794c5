#pragma once

/*
 * De Rham cohomology of the quotient by the discrete lattice.
 *
 * In the adapted eigenbasis the invariant coframe can be twisted generator-by-generator
 * with the unitary part β_c of the weight character e^{a_c}: the twisted generator
 * ω_c = β_c · e_c^* satisfies
 *
 *   d ω_c = Σ_l b_c(X_l) · x_l ∧ ω_c  −  Σ ĉ^c_{jk} ω_j ∧ ω_k
 *
 * with b_c = (a_c − conj a_c)/2 the purely imaginary part of the weight and ĉ the
 * structure constants in the eigenbasis (whose diagonal contributes −a_c, leaving the
 * net multiplier −Re a_c). A monomial ω_I descends to the quotient iff its total twist
 * β_I restricts trivially to the lattice; the span of those monomials is the lattice
 * subcomplex, and its cohomology gives the Betti numbers of the quotient.
 *
 * The report additionally certifies whether these agree with the Chevalley–Eilenberg
 * cohomology of the modified algebra:
 *   (a) each unwound character direction restricts trivially to the lattice (with a
 *       minimal finite-index repair hint when it does not),
 *   (b) the twist of every admitted monomial is a character of the chosen subtorus,
 *   (c) the Betti numbers of the lattice subcomplex and of the modified algebra match.
 */

#include "modification.hpp"

namespace solvco {

struct DeRhamReport {
  std::vector<size_t> betti;           // of the lattice subcomplex (the quotient's)
  std::vector<size_t> betti_modified;  // of the modified algebra's CE complex
  std::vector<size_t> betti_original;  // of the unmodified algebra's CE complex
  size_t admitted_monomials = 0;

  bool check_unwound_trivial = true;   // (a)
  std::optional<Int> repair_index;     // finite-index hint when (a) fails
  bool check_twists_in_subtorus = true;  // (b)
  bool check_betti_match = true;       // (c)

  bool certified() const {
    return check_unwound_trivial && check_twists_in_subtorus && check_betti_match;
  }
};

namespace detail {

/** Rational coordinates of a functional in the canonical char basis. */
inline RatVec char_coords(const WeightSystem& ws, const std::vector<FieldElement>& f) {
  auto spec = FieldSpec::rationals(false);
  auto fq = ws.q_embed(f);
  size_t n = fq.size();
  Matrix b(spec, n, ws.r);
  for (size_t m = 0; m < ws.r; ++m) {
    auto bq = ws.q_embed(ws.char_basis[m]);
    for (size_t i = 0; i < n; ++i) b.at(i, m) = FieldElement::from_rational(spec, bq[i]);
  }
  std::vector<FieldElement> rhs;
  for (const auto& x : fq) rhs.push_back(FieldElement::from_rational(spec, x));
  auto sol = b.solve(rhs);
  if (!sol) throw Error(ErrKind::Internal, "functional outside the char lattice span");
  RatVec out;
  for (const auto& x : *sol) out.push_back(x.to_rational());
  return out;
}

}  // namespace detail

/** The twisted invariant complex in the eigenbasis, restricted by admissibility. */
inline ExteriorComplex lattice_subcomplex(const WeightSystem& ws, const CharTable& t,
                                          std::vector<size_t>* n_admitted = nullptr) {
  const auto& cs = ws.cspec;
  const size_t n = ws.dim, k = ws.k;
  const Matrix& T = ws.eigenbasis;
  const Matrix& Ti = ws.eigenbasis_inv;

  // structure constants in the eigenbasis
  std::map<std::pair<size_t, size_t>, std::vector<FieldElement>> chat;
  for (size_t j = 0; j < n; ++j)
    for (size_t kk = j + 1; kk < n; ++kk)
      chat[{j, kk}] = Ti.apply(ws.cg.bracket(T.col(j), T.col(kk)));

  // purely imaginary weight halves b_c and their exponent vectors
  std::vector<std::vector<FieldElement>> bhalf(n);
  std::vector<RatVec> uexp(n, RatVec(ws.r, Rational(0)));
  for (size_t c = 0; c < n; ++c) {
    std::vector<FieldElement> b;
    for (const auto& a : ws.weights[c]) b.push_back((a - a.conj()).scaled(Rational(1, 2)));
    bool nz = false;
    for (const auto& x : b) nz = nz || !x.is_zero();
    if (nz) uexp[c] = detail::char_coords(ws, b);
    bhalf[c] = std::move(b);
  }

  auto dgen = [&](int gi) {
    std::vector<DTerm> terms;
    size_t c = static_cast<size_t>(gi);
    for (size_t l = 0; l < k; ++l)
      if (!bhalf[c][l].is_zero() && l != c)
        terms.push_back({bhalf[c][l], static_cast<int>(l), gi});
    for (const auto& [idx, cvec] : chat) {
      auto [j, kk] = idx;
      if (!cvec[c].is_zero())
        terms.push_back({-cvec[c], static_cast<int>(j), static_cast<int>(kk)});
    }
    return terms;
  };

  auto admissible = [&](uint32_t mask) {
    RatVec u(ws.r, Rational(0));
    for (uint32_t mm = mask; mm; mm &= mm - 1) {
      size_t c = static_cast<size_t>(std::countr_zero(mm));
      for (size_t m = 0; m < ws.r; ++m) u[m] += uexp[c][m];
    }
    return restrict_trivial(t, u);
  };

  auto cx = ExteriorComplex::build(cs, n, dgen, admissible);
  if (n_admitted) {
    n_admitted->clear();
    for (size_t p = 0; p <= n; ++p) n_admitted->push_back(cx.basis(p).size());
  }
  return cx;
}

inline DeRhamReport derham_report(const LieAlgebraPresentation& g, const WeightSystem& ws,
                                  const CharTable& t, const SubtorusChoice& ch) {
  DeRhamReport rep;

  auto cx = lattice_subcomplex(ws, t);
  rep.betti = cx.betti();
  for (size_t p = 0; p <= ws.dim; ++p) rep.admitted_monomials += cx.basis(p).size();

  // (a) unwound parts a_c - a'_c must be trivial on the lattice
  Int repair = 1;
  for (size_t c = ws.k; c < ws.dim; ++c) {
    std::vector<FieldElement> removed;
    for (size_t l = 0; l < ws.k; ++l)
      removed.push_back(ws.weights[c][l] - ch.modified_weights[c][l]);
    bool nz = false;
    for (const auto& x : removed) nz = nz || !x.is_zero();
    if (!nz) continue;
    auto e = detail::char_coords(ws, removed);
    if (!restrict_trivial(t, e)) {
      rep.check_unwound_trivial = false;
      for (size_t gi = 0; gi < t.n_generators; ++gi) {
        auto v = evaluate_exponent_at(t, e, gi);
        if (!v.is_one() && v.modulus.is_zero() && v.phase_sym.is_zero())
          repair = int_lcm(repair, rat_den(v.phase.lift));
      }
    }
  }
  if (!rep.check_unwound_trivial && repair > 1) rep.repair_index = repair;

  // (b) twist of every admitted monomial lies in the span of the subtorus directions
  {
    std::vector<RatVec> uexp(ws.dim, RatVec(ws.r, Rational(0)));
    for (size_t c = 0; c < ws.dim; ++c) {
      std::vector<FieldElement> b;
      for (const auto& a : ws.weights[c]) b.push_back((a - a.conj()).scaled(Rational(1, 2)));
      bool nz = false;
      for (const auto& x : b) nz = nz || !x.is_zero();
      if (nz) uexp[c] = detail::char_coords(ws, b);
    }
    for (size_t p = 0; p <= ws.dim && rep.check_twists_in_subtorus; ++p)
      for (uint32_t mask : cx.basis(p)) {
        RatVec u(ws.r, Rational(0));
        for (uint32_t mm = mask; mm; mm &= mm - 1) {
          size_t c = static_cast<size_t>(std::countr_zero(mm));
          for (size_t m = 0; m < ws.r; ++m) u[m] += uexp[c][m];
        }
        auto vq = ws.q_embed(ws.functional_of(u));
        if (detail::apply_rows(ch.projector, vq) != vq) {
          rep.check_twists_in_subtorus = false;
          break;
        }
      }
  }

  // (c) Betti numbers of the subcomplex vs the modified algebra
  auto gm = modified_algebra(g, ws, ch);
  rep.betti_modified = betti(gm);
  rep.betti_original = betti(g);
  rep.check_betti_match = (rep.betti == rep.betti_modified);

  return rep;
}

}  // namespace solvco
