#pragma once

/*
 * Weight systems and character lattices.
 *
 * build_weight_system diagonalizes the commuting semisimple family ad_s(A_j), A_j the
 * declared V-generators, over the complexified field. The eigenbasis is adapted so that
 * the V basis vectors come first (they always lie in the joint zero-weight space) and
 * every non-V eigenvector lies in n. Each eigenvector carries its weight functional
 * a_i : V -> K (values on the V basis).
 *
 * The weight functionals generate a finitely generated subgroup of the Q-vector space of
 * K-valued functionals on V; its canonical basis (char_basis) is a scaled column HNF, and
 * every weight gets an integer exponent vector in that basis.
 *
 * A LatticeEvaluation supplies, straight from the input document, the values of some
 * spanning set of characters at the lattice generators. Arbitrary functionals in the
 * Q(i)-span are evaluated by solving for coefficients and combining values exactly; this
 * is the single evaluation path behind every triviality test in the toolkit.
 */

#include <bit>
#include <set>

#include "cochain.hpp"
#include "intlattice.hpp"
#include "symreal.hpp"

namespace solvco {

/** value of exp(c·w) at a point where exp(w) has the given value; c = a+bi Gaussian. */
inline CharacterValue cv_apply_gaussian(const CharacterValue& v, const CRat& c) {
  // w = M + iθ with M the log-modulus and θ = 2πP + S (radians, S symbolic).
  // (a+bi)w = aM − bθ + i(bM + aθ).
  const Rational& a = c.re;
  const Rational& b = c.im;
  CharacterValue r;
  r.modulus = v.modulus.scaled(a);
  r.modulus.add_term(kTwoPi, -b * v.phase.lift);
  r.modulus = r.modulus + v.phase_sym.scaled(-b);
  r.phase = Phase(a * v.phase.lift);
  r.phase_sym = v.modulus.scaled(b) + v.phase_sym.scaled(a);
  r.normalize();
  return r;
}

/* Q-vectorization of K-valued functionals on a k-dimensional space. */
inline RatVec q_embed_functional(const std::vector<FieldElement>& f) {
  RatVec out;
  for (const auto& x : f) {
    auto q = x.q_coords();
    out.insert(out.end(), q.begin(), q.end());
  }
  return out;
}

inline std::vector<FieldElement> q_unembed_functional(const FieldSpecPtr& spec, size_t k,
                                                      const RatVec& v) {
  size_t qd = static_cast<size_t>(FieldElement::q_dim(*spec));
  std::vector<FieldElement> out;
  for (size_t j = 0; j < k; ++j) {
    std::vector<Rational> chunk(v.begin() + static_cast<long>(j * qd),
                                v.begin() + static_cast<long>((j + 1) * qd));
    out.push_back(FieldElement::from_q_coords(spec, chunk));
  }
  return out;
}

/** Canonical basis (scaled column HNF over the Q-vectorization) of the subgroup
 *  generated by a finite family of functionals, with the integer exponents of each
 *  input in that basis. */
struct FunctionalLattice {
  FieldSpecPtr cspec;
  size_t k = 0;  // functional arity
  size_t r = 0;  // lattice rank
  std::vector<std::vector<FieldElement>> basis;
  std::vector<IntVec> input_exponents;  // per input functional, length r

  std::vector<FieldElement> functional_of(const RatVec& e) const {
    std::vector<FieldElement> f(k, FieldElement::zero(cspec));
    for (size_t m = 0; m < r; ++m) {
      if (e[m] == 0) continue;
      for (size_t j = 0; j < k; ++j) f[j] = f[j] + basis[m][j].scaled(e[m]);
    }
    return f;
  }
};

inline FunctionalLattice build_functional_lattice(
    const FieldSpecPtr& cspec, size_t k,
    const std::vector<std::vector<FieldElement>>& functionals) {
  FunctionalLattice L;
  L.cspec = cspec;
  L.k = k;
  std::vector<RatVec> fq;
  for (const auto& f : functionals) fq.push_back(q_embed_functional(f));
  Int D = 1;
  for (const auto& v : fq)
    for (const auto& x : v) D = int_lcm(D, rat_den(x));
  IntCols gens;
  for (const auto& v : fq) {
    IntVec iv;
    for (const auto& x : v) iv.push_back(rat_num(x) * (D / rat_den(x)));
    bool zero = true;
    for (const auto& y : iv)
      if (y != 0) zero = false;
    if (!zero) gens.push_back(std::move(iv));
  }
  IntCols hnf = intlat::lattice_basis(gens);
  L.r = hnf.size();
  for (const auto& b : hnf) {
    RatVec f;
    for (const auto& x : b) f.push_back(Rational(x, D));
    L.basis.push_back(q_unembed_functional(cspec, k, f));
  }
  for (const auto& v : fq) {
    RatVec vr;
    for (const auto& x : v) vr.push_back(Rational(rat_num(x) * (D / rat_den(x))));
    auto coords = intlat::integer_coords(hnf, vr);
    if (!coords)
      throw Error(ErrKind::Internal, "lattice input not integral in its own HNF basis");
    L.input_exponents.push_back(*coords);
  }
  return L;
}

struct LatticeCharacter {
  std::string name;
  std::vector<FieldElement> functional;  // values on the V basis, length k
  std::vector<CharacterValue> values;    // one per lattice generator
};

struct LatticeEvaluation {
  std::vector<std::string> generators;
  std::vector<LatticeCharacter> characters;

  size_t n_generators() const { return generators.size(); }
};

struct WeightSystem {
  FieldSpecPtr cspec;          // complexified field
  size_t dim = 0;              // algebra dimension
  size_t k = 0;                // |V|
  std::vector<size_t> v_pos;   // original indices of the V basis, in declared order
  Matrix eigenbasis;           // dim x dim; columns 0..k-1 are the V basis vectors
  Matrix eigenbasis_inv;
  std::vector<std::vector<FieldElement>> weights;  // per column, length k
  LieAlgebraPresentation cg;   // complexified presentation (original basis)

  // character lattice
  size_t r = 0;                                    // rank of the weight lattice
  std::vector<std::vector<FieldElement>> char_basis;  // canonical functionals, length k each
  std::vector<IntVec> exponents;                   // per column, length r

  bool weight_zero(size_t col) const {
    for (const auto& w : weights[col])
      if (!w.is_zero()) return false;
    return true;
  }

  /** Q-vectorization of a K-valued functional on V. */
  std::vector<Rational> q_embed(const std::vector<FieldElement>& f) const {
    std::vector<Rational> out;
    for (const auto& x : f) {
      auto q = x.q_coords();
      out.insert(out.end(), q.begin(), q.end());
    }
    return out;
  }
  std::vector<FieldElement> q_unembed(const std::vector<Rational>& v) const {
    size_t qd = static_cast<size_t>(FieldElement::q_dim(*cspec));
    std::vector<FieldElement> out;
    for (size_t j = 0; j < k; ++j) {
      std::vector<Rational> chunk(v.begin() + static_cast<long>(j * qd),
                                  v.begin() + static_cast<long>((j + 1) * qd));
      out.push_back(FieldElement::from_q_coords(cspec, chunk));
    }
    return out;
  }

  /** Functional of an arbitrary rational exponent vector in the char basis. */
  std::vector<FieldElement> functional_of(const RatVec& e) const {
    std::vector<FieldElement> f(k, FieldElement::zero(cspec));
    for (size_t m = 0; m < r; ++m) {
      if (e[m] == 0) continue;
      for (size_t j = 0; j < k; ++j) f[j] = f[j] + char_basis[m][j].scaled(e[m]);
    }
    return f;
  }

  /** Weight functional of a monomial (bitmask over eigenbasis columns), as exponents. */
  RatVec exponent_of_mask(uint32_t mask) const {
    RatVec e(r, Rational(0));
    for (uint32_t mm = mask; mm; mm &= mm - 1) {
      int i = std::countr_zero(mm);
      for (size_t m = 0; m < r; ++m) e[m] += Rational(exponents[static_cast<size_t>(i)][m]);
    }
    return e;
  }
};

/** Build the weight system of a validated presentation (complexifies internally). */
inline WeightSystem build_weight_system(const LieAlgebraPresentation& g) {
  WeightSystem ws;
  ws.cg = g.spec()->i_adjoined ? g : g.complexify();
  ws.cspec = ws.cg.spec();
  ws.dim = g.dim();
  ws.v_pos = g.v_indices();
  ws.k = ws.v_pos.size();
  const auto& spec = ws.cspec;

  auto family = ws.cg.compute_ad_s();
  auto spaces = joint_weight_decomposition(family, spec, ws.dim);

  // adapt the zero-weight space: V basis vectors first, complement inside n
  std::vector<std::vector<FieldElement>> cols;
  std::vector<std::vector<FieldElement>> wts;
  auto zero_w = std::vector<FieldElement>(ws.k, FieldElement::zero(spec));
  for (size_t j : ws.v_pos) {
    cols.push_back(ws.cg.unit(j));
    wts.push_back(zero_w);
  }
  for (const auto& sp : spaces) {
    bool is_zero_space = true;
    for (const auto& w : sp.weight)
      if (!w.is_zero()) is_zero_space = false;
    if (is_zero_space) {
      // W0 ∩ n: coefficient vectors whose V-coordinates vanish
      size_t s = sp.basis.cols();
      Matrix vrows(spec, ws.k, s);
      for (size_t a = 0; a < ws.k; ++a)
        for (size_t b = 0; b < s; ++b) vrows.at(a, b) = sp.basis.at(ws.v_pos[a], b);
      auto ker = vrows.kernel();
      if (ker.size() != s - ws.k)
        throw Error(ErrKind::Internal, "zero-weight space does not split as V + (W0 ∩ n)");
      for (const auto& coeff : ker) {
        std::vector<FieldElement> v(ws.dim, FieldElement::zero(spec));
        for (size_t b = 0; b < s; ++b)
          for (size_t i = 0; i < ws.dim; ++i) v[i] = v[i] + sp.basis.at(i, b) * coeff[b];
        cols.push_back(std::move(v));
        wts.push_back(zero_w);
      }
    } else {
      for (size_t b = 0; b < sp.basis.cols(); ++b) {
        cols.push_back(sp.basis.col(b));
        wts.push_back(sp.weight);
      }
    }
  }
  if (cols.size() != ws.dim)
    throw Error(ErrKind::Internal, "adapted eigenbasis has wrong size");
  ws.eigenbasis = Matrix::from_cols(spec, ws.dim, cols);
  ws.eigenbasis_inv = ws.eigenbasis.inverse();
  ws.weights = std::move(wts);

  // non-V eigenvectors must lie in n (guaranteed for nonzero weights; the zero-weight
  // complement was built inside n by construction) — verify:
  {
    std::set<size_t> nset(g.n_indices().begin(), g.n_indices().end());
    for (size_t c = ws.k; c < ws.dim; ++c)
      for (size_t i = 0; i < ws.dim; ++i)
        if (!ws.eigenbasis.at(i, c).is_zero() && !nset.count(i))
          throw Error(ErrKind::Hypothesis, "eigenvector outside n carries nonzero weight");
  }

  // canonical char basis via scaled column HNF of the Q-vectorized weights
  std::vector<RatVec> wq;
  for (const auto& w : ws.weights) wq.push_back(ws.q_embed(w));
  Int D = 1;
  for (const auto& v : wq)
    for (const auto& x : v) D = int_lcm(D, rat_den(x));
  IntCols gens;
  for (const auto& v : wq) {
    IntVec iv;
    for (const auto& x : v) iv.push_back(rat_num(x) * (D / rat_den(x)));
    bool zero = true;
    for (const auto& y : iv)
      if (y != 0) zero = false;
    if (!zero) gens.push_back(std::move(iv));
  }
  IntCols basis = intlat::lattice_basis(gens);
  ws.r = basis.size();
  for (const auto& b : basis) {
    RatVec f;
    for (const auto& x : b) f.push_back(Rational(x, D));
    ws.char_basis.push_back(ws.q_unembed(f));
  }
  for (const auto& v : wq) {
    IntVec scaled;
    for (const auto& x : v) scaled.push_back(rat_num(x) * (D / rat_den(x)));
    RatVec vr;
    for (const auto& x : scaled) vr.push_back(Rational(x));
    auto coords = intlat::integer_coords(basis, vr);
    if (!coords)
      throw Error(ErrKind::Internal, "weight not integral in canonical char basis");
    ws.exponents.push_back(*coords);
  }
  return ws;
}

/** Evaluate exp(f) at every lattice generator by expressing f in the supplied
 *  characters with Gaussian-rational coefficients. */
inline std::vector<CharacterValue> evaluate_functional(const std::vector<FieldElement>& f,
                                                       const LatticeEvaluation& lat,
                                                       const FieldSpecPtr& cspec, size_t k) {
  Matrix sys(cspec, k, lat.characters.size());
  for (size_t m = 0; m < lat.characters.size(); ++m) {
    if (lat.characters[m].functional.size() != k)
      throw Error(ErrKind::InvalidInput, "character functional has wrong length");
    for (size_t j = 0; j < k; ++j) sys.at(j, m) = lat.characters[m].functional[j].lift_to(cspec);
  }
  std::vector<FieldElement> rhs;
  for (const auto& x : f) rhs.push_back(x.lift_to(cspec));
  auto sol = sys.solve(rhs);
  if (!sol)
    throw Error(ErrKind::Hypothesis,
                "functional is not in the span of the supplied lattice characters");
  std::vector<CharacterValue> out(lat.n_generators(), CharacterValue::one());
  for (size_t m = 0; m < sol->size(); ++m) {
    if ((*sol)[m].is_zero()) continue;
    if (!(*sol)[m].is_gaussian())
      throw Error(ErrKind::Hypothesis,
                  "character coefficient outside Q(i): would need products of distinct "
                  "transcendental symbols");
    CRat c = (*sol)[m].to_gaussian();
    for (size_t gidx = 0; gidx < out.size(); ++gidx)
      out[gidx] = out[gidx] * cv_apply_gaussian(lat.characters[m].values[gidx], c);
  }
  return out;
}

/** Values of the canonical char-basis characters at every generator: [m][generator]. */
struct CharTable {
  std::vector<std::vector<CharacterValue>> values;
  size_t n_generators = 0;
};

inline CharTable build_char_table(const WeightSystem& ws, const LatticeEvaluation& lat) {
  CharTable t;
  t.n_generators = lat.n_generators();
  for (size_t m = 0; m < ws.r; ++m)
    t.values.push_back(evaluate_functional(ws.char_basis[m], lat, ws.cspec, ws.k));
  return t;
}

/** Value of χ^E at one generator (E rational: lift-based single-valued powers). */
inline CharacterValue evaluate_exponent_at(const CharTable& t, const RatVec& e, size_t gidx) {
  CharacterValue v = CharacterValue::one();
  for (size_t m = 0; m < e.size(); ++m) {
    if (e[m] == 0) continue;
    v = v * t.values[m][gidx].pow(e[m]);
  }
  return v;
}

/** restrict_trivial: is χ^E trivial on every lattice generator? */
inline bool restrict_trivial(const CharTable& t, const RatVec& e) {
  for (size_t gidx = 0; gidx < t.n_generators; ++gidx)
    if (!evaluate_exponent_at(t, e, gidx).is_one()) return false;
  return true;
}

/* ------------------------------------------------------------------------- */
/* Complex weights on the base torus: exp(Σ p_j z_j + q_j z̄_j)               */
/* ------------------------------------------------------------------------- */

struct ComplexWeight {
  std::vector<FieldElement> p, q;

  bool is_trivial() const {
    for (const auto& x : p)
      if (!x.is_zero()) return false;
    for (const auto& x : q)
      if (!x.is_zero()) return false;
    return true;
  }
  bool is_holomorphic() const {
    for (const auto& x : q)
      if (!x.is_zero()) return false;
    return true;
  }
  /** unitary: purely imaginary exponent pointwise, i.e. q = -conj(p). */
  bool is_unitary() const {
    for (size_t j = 0; j < p.size(); ++j)
      if (q[j] != -p[j].conj()) return false;
    return true;
  }
  ComplexWeight conj_weight() const {
    ComplexWeight r;
    for (const auto& x : q) r.p.push_back(x.conj());
    for (const auto& x : p) r.q.push_back(x.conj());
    return r;
  }
  ComplexWeight operator*(const ComplexWeight& o) const {  // product of characters
    ComplexWeight r = *this;
    for (size_t j = 0; j < p.size(); ++j) {
      r.p[j] = r.p[j] + o.p[j];
      r.q[j] = r.q[j] + o.q[j];
    }
    return r;
  }
  ComplexWeight inverse() const {
    ComplexWeight r = *this;
    for (auto& x : r.p) x = -x;
    for (auto& x : r.q) x = -x;
    return r;
  }
  bool operator==(const ComplexWeight& o) const { return p == o.p && q == o.q; }
};

struct UnitaryParts {
  ComplexWeight beta;   // unitary, α·β^{-1} holomorphic
  ComplexWeight gamma;  // unitary, ᾱ·γ^{-1} holomorphic
};

inline UnitaryParts unitary_parts(const ComplexWeight& alpha) {
  UnitaryParts u;
  for (size_t j = 0; j < alpha.p.size(); ++j) {
    u.beta.p.push_back(-alpha.q[j].conj());
    u.beta.q.push_back(alpha.q[j]);
    u.gamma.p.push_back(-alpha.p[j]);
    u.gamma.q.push_back(alpha.p[j].conj());
  }
  // verification by recomposition
  if (!u.beta.is_unitary() || !u.gamma.is_unitary())
    throw Error(ErrKind::Internal, "unitary_parts: parts not unitary");
  ComplexWeight ab = alpha * u.beta.inverse();
  if (!ab.is_holomorphic())
    throw Error(ErrKind::Internal, "unitary_parts: alpha/beta not holomorphic");
  ComplexWeight ag = alpha.conj_weight() * u.gamma.inverse();
  if (!ag.is_holomorphic())
    throw Error(ErrKind::Internal, "unitary_parts: conj(alpha)/gamma not holomorphic");
  return u;
}

/** Holomorphic δ with conj(δ)/δ = u, for unitary u (δ = exp(-Σ p_u z)). */
inline ComplexWeight solve_delta(const ComplexWeight& u) {
  if (!u.is_unitary())
    throw Error(ErrKind::Hypothesis, "solve_delta: argument is not unitary");
  ComplexWeight d;
  for (size_t j = 0; j < u.p.size(); ++j) {
    d.p.push_back(-u.p[j]);
    d.q.push_back(FieldElement::zero(u.p[j].spec()));
  }
  ComplexWeight check = d.conj_weight() * d.inverse();
  if (!(check == u))
    throw Error(ErrKind::Internal, "solve_delta: verification failed");
  return d;
}

}  // namespace solvco
