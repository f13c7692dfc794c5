#pragma once

/*
 * Invariant complex structures and Dolbeault cohomology.
 *
 * A complex structure J compatible with the splitting (J V = V, J n = n, J commuting
 * with the diagonalizable part of the V-action) determines frames
 *
 *   X_1..X_h           (1,0)-part of V,
 *   Y_1..Y_m           joint eigenframe of the ad_s family on n^{1,0}, Ad_s Y_i = α_i Y_i.
 *
 * The finite bigraded complex has generators x_A ∧ x̄_B ∧ (β_I γ_J)·y_I ∧ ȳ_J where
 * β_i, γ_i are the unitary parts of α_i, ᾱ_i; a monomial enters iff its multiplier
 * character β_I γ_J is identically 1 on the discrete lattice. The differential is the
 * frame Chevalley–Eilenberg differential plus the logarithmic derivative of the
 * multiplier; every term must raise the bidegree by exactly (1,0) or (0,1), which is
 * checked term by term, so d = ∂ + ∂̄ and d² = 0 (checked) gives ∂̄² = 0.
 *
 * The breve pair replaces each Y_i by (β̃_i δ_i)^{-1} Y_i, where β̃_i, γ̃_i are the
 * projections of β_i, γ_i onto the sublattice of unitary-character directions trivial
 * on the lattice and δ_i = solve_delta(β̃_i γ̃_i) restores conjugation closure. The
 * result is a real form ğ with complex structure J̆ whose plain (untwisted) bigraded
 * complex computes the same Hodge numbers, with abelian/parallelizable shortcuts.
 */

#include "derham.hpp"

namespace solvco {

using HodgeTable = std::vector<std::vector<size_t>>;

inline size_t binomial(size_t n, size_t k) {
  if (k > n) return 0;
  size_t r = 1;
  for (size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

/* ------------------------------------------------------------------------- */
/* Structure validation                                                       */
/* ------------------------------------------------------------------------- */

struct ComplexStructureReport {
  bool dim_even = false;
  bool square = false;        // J² = -I
  bool nijenhuis = false;     // integrability on all basis pairs
  bool preserves_n = false;   // J n ⊆ n
  bool preserves_v = false;   // J V ⊆ V
  bool abelian = false;       // [JX, JY] = [X, Y] for all pairs
  bool abelian_on_n = false;  // same, restricted to pairs in n
  bool ads_commuting = false; // J commutes with every ad_s matrix

  /** Everything the twisted-complex construction relies on. */
  bool compatible() const {
    return dim_even && square && nijenhuis && preserves_n && preserves_v && ads_commuting;
  }
  /** The bare complex-structure axioms. */
  bool integrable() const { return dim_even && square && nijenhuis; }
};

namespace detail {

inline bool preserves_span(const Matrix& j, const std::vector<size_t>& idx, size_t dim) {
  std::set<size_t> s(idx.begin(), idx.end());
  for (size_t c : idx)
    for (size_t i = 0; i < dim; ++i)
      if (!j.at(i, c).is_zero() && !s.count(i)) return false;
  return true;
}

/** The block of m over the coordinate subspace spanned by the given unit indices. */
inline Matrix coordinate_block(const Matrix& m, const std::vector<size_t>& idx,
                               const FieldSpecPtr& spec) {
  Matrix b(spec, idx.size(), idx.size());
  for (size_t a = 0; a < idx.size(); ++a)
    for (size_t c = 0; c < idx.size(); ++c) b.at(a, c) = m.at(idx[a], idx[c]);
  return b;
}

}  // namespace detail

inline ComplexStructureReport validate_complex_structure(const LieAlgebraPresentation& g,
                                                         const Matrix& j) {
  ComplexStructureReport rep;
  const size_t n = g.dim();
  const auto& spec = g.spec();
  if (j.rows() != n || j.cols() != n)
    throw Error(ErrKind::InvalidInput, "complex structure matrix has wrong shape");
  rep.dim_even = n % 2 == 0;
  rep.square = (j * j + Matrix::identity(spec, n)).is_zero();
  if (!rep.dim_even || !rep.square) return rep;

  rep.nijenhuis = true;
  rep.abelian = true;
  rep.abelian_on_n = true;
  std::set<size_t> nset(g.n_indices().begin(), g.n_indices().end());
  for (size_t a = 0; a < n; ++a)
    for (size_t b = a + 1; b < n; ++b) {
      auto ja = j.col(a), jb = j.col(b);
      auto jj = g.bracket(ja, jb);
      auto ab = g.bracket(g.unit(a), g.unit(b));
      if (!LieAlgebraPresentation::vec_eq(jj, ab)) {
        rep.abelian = false;
        if (nset.count(a) && nset.count(b)) rep.abelian_on_n = false;
      }
      // N(a,b) = [Ja,Jb] - [a,b] - J([Ja,b] + [a,Jb])
      auto t = j.apply(LieAlgebraPresentation::add_vec(g.bracket(ja, g.unit(b)),
                                                       g.bracket(g.unit(a), jb)));
      bool nz = false;
      for (size_t i = 0; i < n; ++i)
        if (!(jj[i] - ab[i] - t[i]).is_zero()) nz = true;
      if (nz) rep.nijenhuis = false;
    }

  rep.preserves_n = detail::preserves_span(j, g.n_indices(), n);
  rep.preserves_v = detail::preserves_span(j, g.v_indices(), n);
  rep.ads_commuting = true;
  try {
    for (const auto& d : g.compute_ad_s())
      if (!d.commutes_with(j)) rep.ads_commuting = false;
  } catch (const Error&) {
    rep.ads_commuting = false;
  }
  return rep;
}

/** Infinitesimal holomorphic-Mostow condition: on the nilpotent part, J commutes with
 *  every semisimple ad_s and with the full ad of every V generator. */
inline bool holomorphic_mostow_check(const LieAlgebraPresentation& g, const Matrix& j) {
  const auto& spec = g.spec();
  if (!detail::preserves_span(j, g.n_indices(), g.dim())) return false;
  Matrix jn = detail::coordinate_block(j, g.n_indices(), spec);
  std::vector<Matrix> ops;
  try {
    for (const auto& d : g.compute_ad_s())
      ops.push_back(detail::coordinate_block(d, g.n_indices(), spec));
  } catch (const Error&) {
    return false;
  }
  for (size_t l : g.v_indices())
    ops.push_back(detail::coordinate_block(g.ad(l), g.n_indices(), spec));
  for (const auto& op : ops)
    if (!op.commutes_with(jn)) return false;
  return true;
}

/* ------------------------------------------------------------------------- */
/* Frames                                                                     */
/* ------------------------------------------------------------------------- */

struct DolbeaultFrames {
  FieldSpecPtr cspec;
  size_t dim = 0, h = 0, m = 0;  // dim = 2h + 2m
  std::vector<size_t> v_pos;
  Matrix frame;      // columns X_1..X_h, X̄_1..X̄_h, Y_1..Y_m, Ȳ_1..Ȳ_m
  Matrix frame_inv;
  std::vector<ComplexWeight> alpha;  // weight of Y_i as exp(Σ p_j z_j + q_j z̄_j)

  /** Values on the V basis A_1..A_k of the functional whose (1,0)/(0,1) frame
   *  coordinates are the given complex weight. */
  std::vector<FieldElement> functional_of(const ComplexWeight& w) const {
    size_t k = 2 * h;
    Matrix ft(cspec, k, k);  // row j: coordinates of A_l in X_j (then X̄_j)
    for (size_t jc = 0; jc < k; ++jc)
      for (size_t l = 0; l < k; ++l) ft.at(jc, l) = frame.at(v_pos[l], jc);
    std::vector<FieldElement> rhs;
    for (const auto& x : w.p) rhs.push_back(x);
    for (const auto& x : w.q) rhs.push_back(x);
    auto sol = ft.solve(rhs);
    if (!sol) throw Error(ErrKind::Internal, "frame functional system is singular");
    return *sol;
  }

  /** Inverse of functional_of: evaluate f (values on A_l) on the X / X̄ columns. */
  ComplexWeight weight_of(const std::vector<FieldElement>& f) const {
    ComplexWeight w;
    for (size_t jc = 0; jc < h; ++jc) {
      FieldElement p = FieldElement::zero(cspec), q = FieldElement::zero(cspec);
      for (size_t l = 0; l < 2 * h; ++l) {
        p = p + frame.at(v_pos[l], jc) * f[l];
        q = q + frame.at(v_pos[l], h + jc) * f[l];
      }
      w.p.push_back(p);
      w.q.push_back(q);
    }
    return w;
  }
};

namespace detail {

/** Greedy maximal independent set of (1,0)-projections (e - iJe)/2 of the given units. */
inline std::vector<std::vector<FieldElement>> select_10(const Matrix& jc,
                                                        const std::vector<size_t>& idx,
                                                        const FieldSpecPtr& cspec, size_t dim) {
  std::vector<std::vector<FieldElement>> picked;
  FieldElement half = FieldElement::from_rational(cspec, Rational(1, 2));
  FieldElement ihalf = FieldElement::i_unit(cspec).scaled(Rational(1, 2));
  for (size_t e : idx) {
    std::vector<FieldElement> v(dim, FieldElement::zero(cspec));
    for (size_t i = 0; i < dim; ++i) v[i] = v[i] - ihalf * jc.at(i, e);
    v[e] = v[e] + half;
    auto trial = picked;
    trial.push_back(v);
    Matrix t = Matrix::from_cols(cspec, dim, trial);
    if (t.rank() == trial.size()) picked = std::move(trial);
  }
  if (2 * picked.size() != idx.size())
    throw Error(ErrKind::Internal, "(1,0)-projection has unexpected rank");
  return picked;
}

inline std::vector<FieldElement> conj_vec(const std::vector<FieldElement>& v) {
  std::vector<FieldElement> out;
  for (const auto& x : v) out.push_back(x.conj());
  return out;
}

}  // namespace detail

inline DolbeaultFrames build_frames(const WeightSystem& ws, const Matrix& j) {
  DolbeaultFrames fr;
  fr.cspec = ws.cspec;
  fr.dim = ws.dim;
  fr.v_pos = ws.v_pos;
  if (ws.dim % 2 != 0 || ws.k % 2 != 0)
    throw Error(ErrKind::Hypothesis, "dimensions must be even for a complex structure");
  fr.h = ws.k / 2;
  fr.m = (ws.dim - ws.k) / 2;

  Matrix jc = j.lift_to(ws.cspec);
  auto xs = detail::select_10(jc, ws.v_pos, ws.cspec, ws.dim);
  auto ys_raw = detail::select_10(jc, ws.cg.n_indices(), ws.cspec, ws.dim);

  // joint eigenframe of the ad_s family on n^{1,0}
  Matrix b = Matrix::from_cols(ws.cspec, ws.dim, ys_raw);
  std::vector<Matrix> restricted;
  for (const auto& d : ws.cg.compute_ad_s())
    restricted.push_back(restrict_to_subspace(d, b));
  auto spaces = joint_weight_decomposition(restricted, ws.cspec, fr.m);
  std::vector<std::vector<FieldElement>> ys;
  std::vector<std::vector<FieldElement>> yw;  // eigenvalue per V generator
  for (const auto& sp : spaces) {
    Matrix cols = b * sp.basis;
    for (size_t c = 0; c < cols.cols(); ++c) {
      ys.push_back(cols.col(c));
      yw.push_back(sp.weight);
    }
  }
  if (ys.size() != fr.m)
    throw Error(ErrKind::Internal, "eigenframe of n^{1,0} has wrong size");

  std::vector<std::vector<FieldElement>> cols;
  for (const auto& v : xs) cols.push_back(v);
  for (const auto& v : xs) cols.push_back(detail::conj_vec(v));
  for (const auto& v : ys) cols.push_back(v);
  for (const auto& v : ys) cols.push_back(detail::conj_vec(v));
  fr.frame = Matrix::from_cols(ws.cspec, ws.dim, cols);
  fr.frame_inv = fr.frame.inverse();

  // α_i as a complex weight: C-linear extension of the eigenvalue functional
  for (size_t i = 0; i < fr.m; ++i) {
    ComplexWeight a;
    for (size_t jc2 = 0; jc2 < fr.h; ++jc2) {
      FieldElement p = FieldElement::zero(ws.cspec), q = FieldElement::zero(ws.cspec);
      for (size_t l = 0; l < ws.k; ++l) {
        p = p + fr.frame.at(ws.v_pos[l], jc2) * yw[i][l];
        q = q + fr.frame.at(ws.v_pos[l], fr.h + jc2) * yw[i][l];
      }
      a.p.push_back(p);
      a.q.push_back(q);
    }
    fr.alpha.push_back(std::move(a));
  }
  return fr;
}

/* ------------------------------------------------------------------------- */
/* Bigraded complex                                                           */
/* ------------------------------------------------------------------------- */

struct BigradedComplex {
  size_t h = 0, m = 0;  // complex dimension N = h + m
  ExteriorComplex cx;

  size_t complex_dim() const { return h + m; }
  bool anti(size_t gen) const { return (gen >= h && gen < 2 * h) || gen >= 2 * h + m; }
  std::pair<size_t, size_t> bidegree(uint32_t mask) const {
    size_t p = 0, q = 0;
    for (uint32_t mm = mask; mm; mm &= mm - 1)
      (anti(static_cast<size_t>(std::countr_zero(mm))) ? q : p) += 1;
    return {p, q};
  }
  size_t monomials(size_t p, size_t q) const {
    size_t c = 0;
    for (uint32_t mask : cx.basis(p + q))
      if (bidegree(mask) == std::pair<size_t, size_t>{p, q}) ++c;
    return c;
  }
  size_t total_monomials() const {
    size_t c = 0;
    for (size_t d = 0; d <= 2 * complex_dim(); ++d) c += cx.basis(d).size();
    return c;
  }
};

using FrameConstants = std::map<std::pair<size_t, size_t>, std::vector<FieldElement>>;

/** Structure constants of the algebra measured in the frame columns. */
inline FrameConstants frame_constants(const LieAlgebraPresentation& cg, const Matrix& frame,
                                      const Matrix& frame_inv) {
  FrameConstants chat;
  for (size_t a = 0; a < cg.dim(); ++a)
    for (size_t b = a + 1; b < cg.dim(); ++b)
      chat[{a, b}] = frame_inv.apply(cg.bracket(frame.col(a), frame.col(b)));
  return chat;
}

/** One builder for every pipeline: frame CE terms plus per-generator logarithmic
 *  multiplier twists; each differential term must raise the bidegree by (1,0) or
 *  (0,1), so with d² = 0 (asserted downstream) the (0,2)-component identity ∂̄² = 0
 *  holds exactly. */
inline BigradedComplex build_bigraded(const FieldSpecPtr& spec, size_t h, size_t m,
                                      const FrameConstants& chat,
                                      const std::vector<ComplexWeight>& twists,
                                      const std::function<bool(uint32_t)>& admissible = nullptr) {
  BigradedComplex bc;
  bc.h = h;
  bc.m = m;
  size_t n = 2 * h + 2 * m;
  auto anti = [&](size_t gen) { return (gen >= h && gen < 2 * h) || gen >= 2 * h + m; };

  auto dgen = [&](int c) {
    std::vector<DTerm> terms;
    auto push = [&](FieldElement coeff, size_t u, size_t v) {
      if (coeff.is_zero() || u == v) return;
      if (u > v) {
        std::swap(u, v);
        coeff = -coeff;
      }
      size_t dp = (anti(u) ? 0 : 1) + (anti(v) ? 0 : 1) - (anti(static_cast<size_t>(c)) ? 0 : 1);
      size_t dq = (anti(u) ? 1 : 0) + (anti(v) ? 1 : 0) - (anti(static_cast<size_t>(c)) ? 1 : 0);
      if (!((dp == 1 && dq == 0) || (dp == 0 && dq == 1)))
        throw Error(ErrKind::Hypothesis,
                    "differential term of mixed bidegree: structure is not integrable for "
                    "this splitting");
      terms.push_back({coeff, static_cast<int>(u), static_cast<int>(v)});
    };
    if (!twists.empty()) {
      const auto& tw = twists[static_cast<size_t>(c)];
      for (size_t jx = 0; jx < tw.p.size(); ++jx) {
        push(tw.p[jx], jx, static_cast<size_t>(c));
        push(tw.q[jx], h + jx, static_cast<size_t>(c));
      }
    }
    for (const auto& [ab, coords] : chat) push(-coords[static_cast<size_t>(c)], ab.first, ab.second);
    // merge duplicate (u,v) targets
    std::map<std::pair<int, int>, FieldElement> acc;
    for (const auto& t : terms) {
      auto it = acc.find({t.u, t.v});
      if (it == acc.end())
        acc.emplace(std::pair<int, int>{t.u, t.v}, t.coeff);
      else
        it->second = it->second + t.coeff;
    }
    std::vector<DTerm> out;
    for (const auto& [uv, coeff] : acc)
      if (!coeff.is_zero()) out.push_back({coeff, uv.first, uv.second});
    return out;
  };
  bc.cx = ExteriorComplex::build(spec, n, dgen, admissible);
  return bc;
}

/** h^{p,q} = (number of (p,q)-monomials) − rank ∂̄^{p,q} − rank ∂̄^{p,q-1}, where
 *  ∂̄^{p,q} is the (p,q+1)-row block of the degree-(p+q) differential. */
inline HodgeTable hodge_numbers(const BigradedComplex& bc) {
  size_t N = bc.complex_dim();
  const auto& spec = bc.cx.d(0).spec();
  // rank of the ∂̄ block out of (p,q)
  std::vector<std::vector<size_t>> rk(N + 2, std::vector<size_t>(N + 2, 0));
  for (size_t p = 0; p <= N; ++p)
    for (size_t q = 0; q <= N; ++q) {
      size_t deg = p + q;
      if (deg >= 2 * N) continue;
      std::vector<size_t> cols, rows;
      for (size_t c = 0; c < bc.cx.basis(deg).size(); ++c)
        if (bc.bidegree(bc.cx.basis(deg)[c]) == std::pair<size_t, size_t>{p, q}) cols.push_back(c);
      for (size_t r = 0; r < bc.cx.basis(deg + 1).size(); ++r)
        if (bc.bidegree(bc.cx.basis(deg + 1)[r]) == std::pair<size_t, size_t>{p, q + 1})
          rows.push_back(r);
      if (cols.empty() || rows.empty()) continue;
      Matrix sub(spec, rows.size(), cols.size());
      const Matrix& d = bc.cx.d(deg);
      for (size_t a = 0; a < rows.size(); ++a)
        for (size_t b = 0; b < cols.size(); ++b) sub.at(a, b) = d.at(rows[a], cols[b]);
      rk[p][q] = sub.rank();
    }
  HodgeTable t(N + 1, std::vector<size_t>(N + 1, 0));
  for (size_t p = 0; p <= N; ++p)
    for (size_t q = 0; q <= N; ++q) {
      size_t nm = bc.monomials(p, q);
      size_t below = q == 0 ? 0 : rk[p][q - 1];
      t[p][q] = nm - rk[p][q] - below;
    }
  return t;
}

/* ------------------------------------------------------------------------- */
/* The lattice bigraded complex                                               */
/* ------------------------------------------------------------------------- */

namespace detail {

inline void require_gates(const ComplexStructureReport& rep, bool mostow) {
  auto fail = [](const std::string& gate) {
    throw Error(ErrKind::Hypothesis, "complex-structure gate failed: " + gate);
  };
  if (!rep.dim_even) fail("even dimension");
  if (!rep.square) fail("J^2 = -I");
  if (!rep.nijenhuis) fail("Nijenhuis integrability");
  if (!rep.preserves_n) fail("J preserves n");
  if (!rep.preserves_v) fail("J preserves V");
  if (!rep.ads_commuting) fail("J commutes with the ad_s family");
  if (!mostow) fail("holomorphic Mostow fibration (infinitesimal check)");
}

}  // namespace detail

struct LatticeBigraded {
  DolbeaultFrames frames;
  BigradedComplex complex;
  size_t admitted_monomials = 0;
  bool nilmanifold_assumption_auto = false;  // satisfied automatically (J abelian on n)
};

inline LatticeBigraded build_B_gamma(const LieAlgebraPresentation& g, const WeightSystem& ws,
                                     const Matrix& j, const LatticeEvaluation& lat) {
  auto rep = validate_complex_structure(g, j);
  detail::require_gates(rep, holomorphic_mostow_check(g, j));

  LatticeBigraded out;
  out.frames = build_frames(ws, j);
  out.nilmanifold_assumption_auto = rep.abelian_on_n;
  const auto& fr = out.frames;
  const size_t h = fr.h, m = fr.m;

  // multiplier characters: y_i carries β_i, ȳ_i carries γ_i
  std::vector<ComplexWeight> twists;
  ComplexWeight trivial;
  for (size_t jx = 0; jx < h; ++jx) {
    trivial.p.push_back(FieldElement::zero(ws.cspec));
    trivial.q.push_back(FieldElement::zero(ws.cspec));
  }
  for (size_t c = 0; c < 2 * h; ++c) twists.push_back(trivial);
  std::vector<std::vector<CharacterValue>> vy, vg;  // [i][generator]
  for (size_t i = 0; i < m; ++i) {
    auto u = unitary_parts(fr.alpha[i]);
    twists.push_back(u.beta);
    vy.push_back(evaluate_functional(fr.functional_of(u.beta), lat, ws.cspec, ws.k));
  }
  for (size_t i = 0; i < m; ++i) {
    auto u = unitary_parts(fr.alpha[i]);
    twists.push_back(u.gamma);
    vg.push_back(evaluate_functional(fr.functional_of(u.gamma), lat, ws.cspec, ws.k));
  }

  // admission: (β_I γ_J)|Γ = 1, a function of the y/ȳ content only
  size_t ng = lat.n_generators();
  std::vector<char> ok(uint32_t{1} << (2 * m), 1);
  for (uint32_t tm = 1; tm < (uint32_t{1} << (2 * m)); ++tm) {
    bool good = true;
    for (size_t gi = 0; gi < ng && good; ++gi) {
      CharacterValue v = CharacterValue::one();
      for (uint32_t mm = tm; mm; mm &= mm - 1) {
        size_t pos = static_cast<size_t>(std::countr_zero(mm));
        v = v * (pos < m ? vy[pos][gi] : vg[pos - m][gi]);
      }
      if (!v.is_one()) good = false;
    }
    ok[tm] = good ? 1 : 0;
  }
  auto admissible = [ok, h](uint32_t mask) { return ok[mask >> (2 * h)] != 0; };

  FrameConstants chat = frame_constants(ws.cg, fr.frame, fr.frame_inv);
  out.complex = build_bigraded(ws.cspec, h, m, chat, twists, admissible);
  out.admitted_monomials = out.complex.total_monomials();
  return out;
}

/* ------------------------------------------------------------------------- */
/* Plain CE-Dolbeault of an algebra with integrable J (no lattice, no twist)  */
/* ------------------------------------------------------------------------- */

inline HodgeTable lie_dolbeault(const LieAlgebraPresentation& g, const Matrix& j) {
  auto rep = validate_complex_structure(g, j);
  if (!rep.integrable())
    throw Error(ErrKind::Hypothesis, "complex structure is not integrable");
  auto cg = g.spec()->i_adjoined ? g : g.complexify();
  auto cspec = cg.spec();
  Matrix jc = j.lift_to(cspec);
  std::vector<size_t> all(g.dim());
  for (size_t i = 0; i < g.dim(); ++i) all[i] = i;
  auto p10 = detail::select_10(jc, all, cspec, g.dim());
  std::vector<std::vector<FieldElement>> cols = p10;
  for (const auto& v : p10) cols.push_back(detail::conj_vec(v));
  Matrix frame = Matrix::from_cols(cspec, g.dim(), cols);
  auto chat = frame_constants(cg, frame, frame.inverse());
  auto bc = build_bigraded(cspec, 0, g.dim() / 2, chat, {});
  return hodge_numbers(bc);
}

/* ------------------------------------------------------------------------- */
/* Breve pair                                                                 */
/* ------------------------------------------------------------------------- */

struct BrevePair {
  LieAlgebraPresentation algebra;  // real form ğ
  Matrix j;                        // J̆ over the real-form field
  std::vector<ComplexWeight> beta_t, gamma_t, delta;  // character replacements
  ComplexStructureReport jreport;
  size_t rho_rank = 0;      // rank of the unitary-character lattice
  size_t trivial_rank = 0;  // rank of its trivial-on-the-lattice sublattice
};

inline BrevePair breve_pair(const LieAlgebraPresentation& g, const WeightSystem& ws,
                            const Matrix& j, const LatticeEvaluation& lat,
                            SubtorusMode choice = SubtorusMode::Auto) {
  auto rep = validate_complex_structure(g, j);
  detail::require_gates(rep, holomorphic_mostow_check(g, j));
  auto fr = build_frames(ws, j);
  const size_t h = fr.h, m = fr.m, k = ws.k;
  const auto& cs = ws.cspec;

  // the unitary-character lattice generated by all β_i, γ_i
  std::vector<ComplexWeight> beta, gamma;
  std::vector<std::vector<FieldElement>> rho_gens;
  for (size_t i = 0; i < m; ++i) {
    auto u = unitary_parts(fr.alpha[i]);
    beta.push_back(u.beta);
    gamma.push_back(u.gamma);
    rho_gens.push_back(fr.functional_of(u.beta));
    rho_gens.push_back(fr.functional_of(u.gamma));
  }
  auto rho = build_functional_lattice(cs, k, rho_gens);

  // directions of that lattice trivial on Γ, and the projector onto their span
  CharTable rt;
  rt.n_generators = lat.n_generators();
  for (size_t mm = 0; mm < rho.r; ++mm)
    rt.values.push_back(evaluate_functional(rho.basis[mm], lat, cs, k));
  IntCols triv;
  if (choice == SubtorusMode::Full) {
    for (size_t mm = 0; mm < rho.r; ++mm) {
      IntVec e(rho.r, Int(0));
      e[mm] = 1;
      triv.push_back(e);
    }
  } else {
    triv = trivial_exponent_sublattice(rt, rho.r);
  }

  // The infinitesimal pair replaces each multiplier by its projection, so it can only
  // reproduce the bigraded subalgebra when "trivial on Γ" coincides with "inside the
  // chosen span": the span's saturation must stay trivial (a character trivial only at
  // a finite power has no counterpart in the pair), and every trivial exponent must
  // already lie in the span.
  {
    RatRows span;
    for (const auto& e : triv) {
      RatVec er;
      for (const auto& x : e) er.push_back(Rational(x));
      span.push_back(std::move(er));
    }
    for (const auto& e : intlat::saturate(span, rho.r)) {
      RatVec er;
      for (const auto& x : e) er.push_back(Rational(x));
      if (!restrict_trivial(rt, er))
        throw Error(ErrKind::Hypothesis,
                    "a multiplier character is trivial on the lattice only at a finite power");
    }
    for (const auto& e : trivial_exponent_subgroup(rt, rho.r)) {
      RatVec er;
      for (const auto& x : e) er.push_back(Rational(x));
      if (!intlat::rational_coords(span, er))
        throw Error(ErrKind::Hypothesis,
                    "lattice-trivial multiplier characters fall outside the chosen subtorus");
    }
  }
  size_t qdim = k * static_cast<size_t>(FieldElement::q_dim(*cs));
  std::vector<RatVec> bcols;
  for (const auto& e : triv) {
    RatVec er;
    for (const auto& x : e) er.push_back(Rational(x));
    bcols.push_back(q_embed_functional(rho.functional_of(er)));
  }
  RatRows proj = detail::orth_projector(bcols, qdim);

  BrevePair bp;
  bp.rho_rank = rho.r;
  bp.trivial_rank = triv.size();
  auto project = [&](const ComplexWeight& w) {
    auto fq = q_embed_functional(fr.functional_of(w));
    auto pq = detail::apply_rows(proj, fq);
    return fr.weight_of(q_unembed_functional(cs, k, pq));
  };
  for (size_t i = 0; i < m; ++i) {
    ComplexWeight bt = project(beta[i]), gt = project(gamma[i]);
    if (!bt.is_unitary() || !gt.is_unitary())
      throw Error(ErrKind::Internal, "projected character replacement is not unitary");
    ComplexWeight d = solve_delta(bt * gt);
    // conjugation closure of the replaced frame sections
    if (!((bt * d).conj_weight() == gt * d))
      throw Error(ErrKind::Internal, "conjugation closure failed for the breve frame");
    bp.beta_t.push_back(bt);
    bp.gamma_t.push_back(gt);
    bp.delta.push_back(d);
  }

  // corrected frame constants: [F_a, (β̃δ)^{-1} Y_i] gains -dlog(β̃_i δ_i)(F_a) on the
  // diagonal; all other coefficients are unchanged by weight additivity
  FrameConstants chat = frame_constants(ws.cg, fr.frame, fr.frame_inv);
  for (size_t i = 0; i < m; ++i) {
    ComplexWeight eta = bp.beta_t[i] * bp.delta[i];
    ComplexWeight etc = eta.conj_weight();  // = γ̃_i δ_i
    for (size_t jx = 0; jx < h; ++jx) {
      chat[{jx, 2 * h + i}][2 * h + i] = chat[{jx, 2 * h + i}][2 * h + i] - eta.p[jx];
      chat[{h + jx, 2 * h + i}][2 * h + i] = chat[{h + jx, 2 * h + i}][2 * h + i] - eta.q[jx];
      chat[{jx, 2 * h + m + i}][2 * h + m + i] =
          chat[{jx, 2 * h + m + i}][2 * h + m + i] - etc.p[jx];
      chat[{h + jx, 2 * h + m + i}][2 * h + m + i] =
          chat[{h + jx, 2 * h + m + i}][2 * h + m + i] - etc.q[jx];
    }
  }

  // real form: u_j = X_j + X̄_j, w_j = i(X_j - X̄_j), s_i = Ŷ_i + conj, t_i = i(Ŷ_i - conj)
  const size_t dim = ws.dim;
  Matrix u(cs, dim, dim);  // frame coordinates of the real basis
  FieldElement one = FieldElement::one(cs), iu = FieldElement::i_unit(cs);
  for (size_t jx = 0; jx < h; ++jx) {
    u.at(jx, jx) = one;
    u.at(h + jx, jx) = one;
    u.at(jx, h + jx) = iu;
    u.at(h + jx, h + jx) = -iu;
  }
  for (size_t i = 0; i < m; ++i) {
    u.at(2 * h + i, 2 * h + i) = one;
    u.at(2 * h + m + i, 2 * h + i) = one;
    u.at(2 * h + i, 2 * h + m + i) = iu;
    u.at(2 * h + m + i, 2 * h + m + i) = -iu;
  }
  Matrix ui = u.inverse();

  auto base = g.spec();
  std::vector<std::string> names;
  for (size_t jx = 0; jx < h; ++jx) names.push_back("u" + std::to_string(jx + 1));
  for (size_t jx = 0; jx < h; ++jx) names.push_back("w" + std::to_string(jx + 1));
  for (size_t i = 0; i < m; ++i) names.push_back("s" + std::to_string(i + 1));
  for (size_t i = 0; i < m; ++i) names.push_back("t" + std::to_string(i + 1));
  std::vector<size_t> vi, ni;
  for (size_t jx = 0; jx < 2 * h; ++jx) vi.push_back(jx);
  for (size_t i = 2 * h; i < dim; ++i) ni.push_back(i);
  LieAlgebraPresentation br(base, dim, names, vi, ni);
  for (size_t a = 0; a < dim; ++a)
    for (size_t b = a + 1; b < dim; ++b) {
      auto xa = u.col(a), xb = u.col(b);
      std::vector<FieldElement> acc(dim, FieldElement::zero(cs));
      for (const auto& [idx, cvec] : chat) {
        auto [a1, b1] = idx;
        FieldElement coeff = xa[a1] * xb[b1] - xa[b1] * xb[a1];
        if (coeff.is_zero()) continue;
        for (size_t c = 0; c < dim; ++c) acc[c] = acc[c] + coeff * cvec[c];
      }
      auto coords = ui.apply(acc);
      for (size_t c = 0; c < dim; ++c)
        if (!coords[c].is_zero()) br.set_bracket(a, b, c, detail::decomplexify(coords[c], base));
    }
  bp.algebra = std::move(br);

  Matrix jb(base, dim, dim);
  FieldElement bone = FieldElement::one(base);
  for (size_t jx = 0; jx < h; ++jx) {
    jb.at(h + jx, jx) = bone;
    jb.at(jx, h + jx) = -bone;
  }
  for (size_t i = 0; i < m; ++i) {
    jb.at(2 * h + m + i, 2 * h + i) = bone;
    jb.at(2 * h + i, 2 * h + m + i) = -bone;
  }
  bp.j = std::move(jb);

  auto vrep = bp.algebra.validate();
  if (!vrep.ok()) {
    std::string det;
    for (const auto& c : vrep.checks)
      if (!c.pass) det += c.name + " ";
    throw Error(ErrKind::Internal, "breve real form fails validation: " + det);
  }
  bp.jreport = validate_complex_structure(bp.algebra, bp.j);
  if (!bp.jreport.integrable())
    throw Error(ErrKind::Internal, "breve complex structure is not integrable");
  return bp;
}

/* ------------------------------------------------------------------------- */
/* Shortcuts                                                                  */
/* ------------------------------------------------------------------------- */

enum class ShortcutMode { Abelian, Parallelizable, General };

namespace detail {

/** Betti numbers of the CE complex of the subalgebra spanned by the given columns. */
inline std::vector<size_t> span_ce_betti(const LieAlgebraPresentation& cg,
                                         const std::vector<std::vector<FieldElement>>& cols) {
  const auto& spec = cg.spec();
  size_t N = cols.size();
  Matrix b = Matrix::from_cols(spec, cg.dim(), cols);
  std::map<std::pair<size_t, size_t>, std::vector<FieldElement>> lam;
  for (size_t a = 0; a < N; ++a)
    for (size_t c = a + 1; c < N; ++c) {
      auto sol = b.solve(cg.bracket(cols[a], cols[c]));
      if (!sol) throw Error(ErrKind::Hypothesis, "frame span is not a subalgebra");
      lam[{a, c}] = *sol;
    }
  auto dgen = [&](int i) {
    std::vector<DTerm> terms;
    for (const auto& [ac, coords] : lam)
      if (!coords[static_cast<size_t>(i)].is_zero())
        terms.push_back({-coords[static_cast<size_t>(i)], static_cast<int>(ac.first),
                         static_cast<int>(ac.second)});
    return terms;
  };
  return ExteriorComplex::build(spec, N, dgen).betti();
}

}  // namespace detail

inline HodgeTable shortcut_hodge(const BrevePair& bp, ShortcutMode mode) {
  if (mode == ShortcutMode::General) return lie_dolbeault(bp.algebra, bp.j);

  auto cg = bp.algebra.spec()->i_adjoined ? bp.algebra : bp.algebra.complexify();
  auto cspec = cg.spec();
  Matrix jc = bp.j.lift_to(cspec);
  std::vector<size_t> all(bp.algebra.dim());
  for (size_t i = 0; i < bp.algebra.dim(); ++i) all[i] = i;
  auto p10 = detail::select_10(jc, all, cspec, bp.algebra.dim());
  size_t N = p10.size();

  if (mode == ShortcutMode::Abelian) {
    if (!bp.jreport.abelian)
      throw Error(ErrKind::Hypothesis, "abelian shortcut requires an abelian complex structure");
    auto bh = detail::span_ce_betti(cg, p10);
    HodgeTable t(N + 1, std::vector<size_t>(N + 1, 0));
    for (size_t p = 0; p <= N; ++p)
      for (size_t q = 0; q <= N; ++q) t[p][q] = bh[p] * binomial(N, q);
    return t;
  }

  // parallelizable: ad ∘ J̆ = J̆ ∘ ad for the whole algebra
  for (size_t a = 0; a < bp.algebra.dim(); ++a)
    if (!bp.algebra.ad(a).commutes_with(bp.j))
      throw Error(ErrKind::Hypothesis,
                  "parallelizable shortcut requires a bi-invariant complex structure");
  std::vector<std::vector<FieldElement>> p01;
  for (const auto& v : p10) p01.push_back(detail::conj_vec(v));
  auto bh = detail::span_ce_betti(cg, p01);
  HodgeTable t(N + 1, std::vector<size_t>(N + 1, 0));
  for (size_t p = 0; p <= N; ++p)
    for (size_t q = 0; q <= N; ++q) t[p][q] = binomial(N, p) * bh[q];
  return t;
}

}  // namespace solvco
