#pragma once

/*
 * Subtorus choice and algebra modification.
 *
 * The semisimple parts ad_s(A), A over the V basis, exponentiate to a torus action whose
 * characters live in the weight lattice of the weight system. choose_subtorus picks the
 * sublattice K̄ of character directions that restrict trivially to the discrete lattice:
 *
 *   auto      two steps: first the saturated kernel of the modulus and symbolic-phase
 *             conditions, then the congruence kernel of the rational phase lifts inside
 *             it. The saturation of that congruence kernel is used only when all its
 *             basis characters are exactly trivial; otherwise the exact-phase-zero
 *             sublattice (always trivial) is the fallback.
 *   full      the whole lattice (no modification of the diagonal action).
 *   explicit  caller-supplied generators, saturated and verified trivial.
 *
 * Directions trivial on the lattice can be unwound without changing the quotient: the
 * modification removes from every weight its orthogonal projection (taken in the
 * Q-vectorized functional coordinates, which keeps the projection conjugation-
 * equivariant) onto the span of the trivial directions, and rebuilds structure
 * constants accordingly: only the diagonal weight terms of brackets [A, Z_c] with A in
 * V change. The full lattice unwinds everything and yields the nilshadow.
 */

#include "charlattice.hpp"

namespace solvco {

enum class SubtorusMode { Auto, Full, Explicit };

struct SubtorusChoice {
  SubtorusMode mode = SubtorusMode::Auto;
  IntCols trivial_sublattice;  // HNF basis of K̄ in canonical exponent coordinates
  RatRows projector;           // square, acts on Q-vectorized functionals
  std::vector<std::vector<FieldElement>> modified_weights;  // per eigenbasis column

  size_t rank() const { return trivial_sublattice.size(); }
  bool is_trivial_torus() const { return trivial_sublattice.empty(); }
};

namespace detail {

/** Orthogonal projector onto the rational column span of B (as dense rational rows). */
inline RatRows orth_projector(const std::vector<RatVec>& bcols, size_t n) {
  RatRows p(n, RatVec(n, Rational(0)));
  if (bcols.empty()) return p;
  auto spec = FieldSpec::rationals(false);
  Matrix b(spec, n, bcols.size());
  for (size_t j = 0; j < bcols.size(); ++j)
    for (size_t i = 0; i < n; ++i) b.at(i, j) = FieldElement::from_rational(spec, bcols[j][i]);
  Matrix bt = b.transpose();
  Matrix proj = b * (bt * b).inverse() * bt;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (!proj.at(i, j).is_rational())
        throw Error(ErrKind::Internal, "projector has irrational entries");
      p[i][j] = proj.at(i, j).to_rational();
    }
  return p;
}

inline RatVec apply_rows(const RatRows& m, const RatVec& v) {
  RatVec out(m.size(), Rational(0));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  return out;
}

/** exponent vectors -> Z^r columns, HNF'd */
inline IntCols to_hnf(IntCols cols) { return intlat::lattice_basis(cols); }

}  // namespace detail

namespace detail {

struct TrivialScan {
  IntCols subgroup;    // the exact trivial subgroup T, in ambient exponent coordinates
  IntCols sublattice;  // saturation of T when that stays trivial, else the phase-zero part
};

/** Two-step scan for exponent vectors E in Z^r with χ^E trivial on every generator. */
inline TrivialScan trivial_scan(const CharTable& t, size_t r) {
  auto identity_basis = [&]() {
    IntCols id;
    for (size_t m = 0; m < r; ++m) {
      IntVec e(r, Int(0));
      e[m] = 1;
      id.push_back(e);
    }
    return id;
  };

  // step 1: modulus and symbolic-phase conditions are Q-linear in the exponents
  RatRows conds;
  std::set<std::string> mod_syms, ph_syms;
  for (size_t m = 0; m < r; ++m)
    for (size_t gi = 0; gi < t.n_generators; ++gi) {
      for (const auto& [s, c] : t.values[m][gi].modulus.terms) mod_syms.insert(s);
      for (const auto& [s, c] : t.values[m][gi].phase_sym.terms) ph_syms.insert(s);
    }
  auto term = [](const LogReal& l, const std::string& s) {
    auto it = l.terms.find(s);
    return it == l.terms.end() ? Rational(0) : it->second;
  };
  for (size_t gi = 0; gi < t.n_generators; ++gi) {
    for (const auto& s : mod_syms) {
      RatVec row(r);
      for (size_t m = 0; m < r; ++m) row[m] = term(t.values[m][gi].modulus, s);
      conds.push_back(std::move(row));
    }
    for (const auto& s : ph_syms) {
      RatVec row(r);
      for (size_t m = 0; m < r; ++m) row[m] = term(t.values[m][gi].phase_sym, s);
      conds.push_back(std::move(row));
    }
  }
  IntCols M = conds.empty() ? identity_basis() : intlat::integer_kernel(conds, r);
  if (M.empty()) return {};

  // step 2: inside M, the rational lifts must be integral (congruence kernel)
  RatRows lifts;  // one row per generator, columns over M basis
  for (size_t gi = 0; gi < t.n_generators; ++gi) {
    RatVec row(M.size(), Rational(0));
    for (size_t j = 0; j < M.size(); ++j)
      for (size_t m = 0; m < r; ++m) row[j] += Rational(M[j][m]) * t.values[m][gi].phase.lift;
    lifts.push_back(std::move(row));
  }
  IntCols K = intlat::congruence_kernel(lifts, M.size());
  RatRows kr;
  for (const auto& e : K) {
    RatVec er;
    for (const auto& x : e) er.push_back(Rational(x));
    kr.push_back(std::move(er));
  }
  IntCols satK = intlat::saturate(kr, M.size());

  auto to_ambient = [&](const IntCols& inner) {
    IntCols out;
    for (const auto& c : inner) {
      IntVec e(r, Int(0));
      for (size_t j = 0; j < M.size(); ++j)
        for (size_t m = 0; m < r; ++m) e[m] += c[j] * M[j][m];
      out.push_back(std::move(e));
    }
    return out;
  };

  TrivialScan res;
  res.subgroup = to_hnf(to_ambient(K));

  bool sat_ok = true;
  for (const auto& e : to_ambient(satK)) {
    RatVec er;
    for (const auto& x : e) er.push_back(Rational(x));
    if (!restrict_trivial(t, er)) sat_ok = false;
  }
  if (sat_ok) {
    res.sublattice = to_hnf(to_ambient(satK));
    return res;
  }
  // fallback: exact-phase-zero directions, trivial by construction
  IntCols Z = lifts.empty() ? IntCols{} : intlat::integer_kernel(lifts, M.size());
  res.sublattice = to_hnf(to_ambient(Z));
  return res;
}

}  // namespace detail

/** HNF basis of the exact subgroup of exponent vectors trivial on every generator. */
inline IntCols trivial_exponent_subgroup(const CharTable& t, size_t r) {
  return detail::trivial_scan(t, r).subgroup;
}

/** HNF basis of the sublattice used for the automatic subtorus choice: the saturation
 *  of the trivial subgroup when that stays trivial, else its exact-phase-zero part. */
inline IntCols trivial_exponent_sublattice(const CharTable& t, size_t r) {
  return detail::trivial_scan(t, r).sublattice;
}

/** All exponent vectors E in Z^r with χ^E trivial on every generator, organized per the
 *  mode described in the header comment. */
inline SubtorusChoice choose_subtorus(const WeightSystem& ws, const CharTable& t,
                                      SubtorusMode mode, const IntCols& explicit_gens = {}) {
  SubtorusChoice ch;
  ch.mode = mode;
  const size_t r = ws.r;

  if (mode == SubtorusMode::Full) {
    for (size_t m = 0; m < r; ++m) {
      IntVec e(r, Int(0));
      e[m] = 1;
      ch.trivial_sublattice.push_back(e);
    }
  } else if (mode == SubtorusMode::Explicit) {
    for (const auto& e : explicit_gens)
      if (e.size() != r)
        throw Error(ErrKind::InvalidInput, "explicit subtorus generator has wrong length");
    RatRows eg;
    for (const auto& e : explicit_gens) {
      RatVec er;
      for (const auto& x : e) er.push_back(Rational(x));
      eg.push_back(std::move(er));
    }
    ch.trivial_sublattice = intlat::saturate(eg, r);
    for (const auto& e : ch.trivial_sublattice) {
      RatVec er;
      for (const auto& x : e) er.push_back(Rational(x));
      if (!restrict_trivial(t, er))
        throw Error(ErrKind::Hypothesis,
                    "explicit subtorus direction is not trivial on the lattice");
    }
  } else {
    ch.trivial_sublattice = trivial_exponent_sublattice(t, r);
  }

  // invariant: every chosen direction really is trivial (Full mode is exempt: it is an
  // unconditional override whose soundness is re-checked downstream)
  if (mode != SubtorusMode::Full)
    for (const auto& e : ch.trivial_sublattice) {
      RatVec er;
      for (const auto& x : e) er.push_back(Rational(x));
      if (!restrict_trivial(t, er))
        throw Error(ErrKind::Internal, "chosen subtorus direction fails triviality");
    }

  // orthogonal projector in Q-vectorized functional coordinates
  size_t n = ws.k * static_cast<size_t>(FieldElement::q_dim(*ws.cspec));
  std::vector<RatVec> bcols;
  for (const auto& e : ch.trivial_sublattice) {
    RatVec er;
    for (const auto& x : e) er.push_back(Rational(x));
    bcols.push_back(ws.q_embed(ws.functional_of(er)));
  }
  ch.projector = detail::orth_projector(bcols, n);
  for (size_t c = 0; c < ws.dim; ++c) {
    auto wq = ws.q_embed(ws.weights[c]);
    auto sq = detail::apply_rows(ch.projector, wq);  // the unwound S-part
    for (size_t i = 0; i < wq.size(); ++i) wq[i] -= sq[i];
    ch.modified_weights.push_back(ws.q_unembed(wq));
  }
  return ch;
}

/** Mostow-type condition: no nontrivial character direction is trivial on the lattice. */
inline bool mostow_torus_check(const SubtorusChoice& ch) { return ch.is_trivial_torus(); }

struct SubsetCondition {
  bool holds = true;
  uint32_t witness = 0;  // subset mask of eigenbasis columns if violated
};

/** Subset-sum condition: every nonzero sum of weight characters over a subset of the
 *  non-V eigenvectors must stay nontrivial on the lattice. */
inline SubsetCondition kasuya_condition(const WeightSystem& ws, const CharTable& t) {
  SubsetCondition res;
  size_t nn = ws.dim - ws.k;
  if (nn >= 31) throw Error(ErrKind::InvalidInput, "dimension too large for subset scan");
  for (uint32_t sub = 1; sub < (1u << nn); ++sub) {
    RatVec e(ws.r, Rational(0));
    for (uint32_t mm = sub; mm; mm &= mm - 1) {
      size_t c = ws.k + static_cast<size_t>(std::countr_zero(mm));
      for (size_t m = 0; m < ws.r; ++m) e[m] += Rational(ws.exponents[c][m]);
    }
    bool zero = true;
    for (const auto& x : e)
      if (x != 0) zero = false;
    if (zero) continue;
    if (restrict_trivial(t, e)) {
      res.holds = false;
      res.witness = sub << ws.k;
      return res;
    }
  }
  return res;
}

namespace detail {

/** Down-cast from the complexified field: imaginary Q-coordinates must vanish. */
inline FieldElement decomplexify(const FieldElement& x, const FieldSpecPtr& base) {
  auto q = x.q_coords();
  size_t half = static_cast<size_t>(FieldElement::q_dim(*base));
  if (2 * half != q.size())
    throw Error(ErrKind::Internal, "field mismatch in decomplexify");
  for (size_t i = half; i < q.size(); ++i)
    if (q[i] != 0)
      throw Error(ErrKind::Internal, "modified structure constant is not real");
  return FieldElement::from_q_coords(base, std::vector<Rational>(q.begin(), q.begin() + static_cast<long>(half)));
}

}  // namespace detail

/** The modified algebra: same underlying space and splitting, with the diagonal weight
 *  action replaced by its projection onto the chosen subtorus directions. Emitted over
 *  the original (non-complexified) field; realness of all constants is verified. */
inline LieAlgebraPresentation modified_algebra(const LieAlgebraPresentation& g,
                                               const WeightSystem& ws,
                                               const SubtorusChoice& ch) {
  const auto& cs = ws.cspec;
  const size_t n = ws.dim, k = ws.k;
  const Matrix& T = ws.eigenbasis;
  const Matrix& Ti = ws.eigenbasis_inv;

  // structure constants in the eigenbasis, with the weight correction on V-brackets
  std::map<std::pair<size_t, size_t>, std::vector<FieldElement>> ctil;
  for (size_t b1 = 0; b1 < n; ++b1)
    for (size_t b2 = b1 + 1; b2 < n; ++b2) {
      auto v = ws.cg.bracket(T.col(b1), T.col(b2));
      auto coords = Ti.apply(v);
      if (b1 < k && b2 >= k)
        coords[b2] = coords[b2] + (ch.modified_weights[b2][b1] - ws.weights[b2][b1]);
      ctil[{b1, b2}] = std::move(coords);
    }

  // transform back to the original basis
  auto base = g.spec();
  LieAlgebraPresentation out(base, n, g.names(), g.v_indices(), g.n_indices());
  for (size_t a = 0; a < n; ++a)
    for (size_t b = a + 1; b < n; ++b) {
      auto xa = Ti.col(a), xb = Ti.col(b);  // original units in eigenbasis coordinates
      std::vector<FieldElement> acc(n, FieldElement::zero(cs));
      for (const auto& [idx, cvec] : ctil) {
        auto [b1, b2] = idx;
        FieldElement coeff = xa[b1] * xb[b2] - xa[b2] * xb[b1];
        if (coeff.is_zero()) continue;
        for (size_t i = 0; i < n; ++i) acc[i] = acc[i] + coeff * cvec[i];
      }
      auto orig = T.apply(acc);
      for (size_t i = 0; i < n; ++i)
        if (!orig[i].is_zero()) out.set_bracket(a, b, i, detail::decomplexify(orig[i], base));
    }
  return out;
}

}  // namespace solvco
