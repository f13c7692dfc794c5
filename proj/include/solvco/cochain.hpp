#pragma once

/*
 * Exterior (Chevalley–Eilenberg type) cochain complexes on up to 32 generators.
 *
 * Degree-p basis monomials are index subsets, stored as bitmasks and enumerated in
 * increasing numeric order (this is the lexicographic order on sorted index tuples), so
 * all matrices and reported numbers are deterministic. The differential is defined on
 * generators as a linear combination of 2-monomials, d e^i = Σ coeff · e^u ∧ e^v,
 * and extended by the graded Leibniz rule; d∘d = 0 is asserted at construction.
 *
 * An optional admissibility predicate restricts the complex to a monomial-spanned
 * subcomplex (used for A*_Γ); any differential leakage out of the admitted span raises
 * an error instead of silently truncating.
 */

#include "lie.hpp"

#include <bit>
#include <cstdint>
#include <functional>
#include <map>

namespace solvco {

inline int popcount32(uint32_t m) { return std::popcount(m); }

/** Sign of sorting the concatenation (A, B) of two disjoint sorted monomials. */
inline int wedge_sign(uint32_t a, uint32_t b) {
  int inv = 0;
  for (uint32_t bb = b; bb; bb &= bb - 1) {
    int pos = std::countr_zero(bb);
    inv += popcount32(a & ~((uint32_t{1} << (pos + 1)) - 1));
  }
  return inv % 2 == 0 ? 1 : -1;
}

/** One differential term on a generator: coeff · e^u ∧ e^v (u < v). */
struct DTerm {
  FieldElement coeff;
  int u, v;
};

class ExteriorComplex {
 public:
  /** dgen(i) returns the differential of generator i; admissible (if set) selects the
   *  monomial subcomplex. */
  static ExteriorComplex build(const FieldSpecPtr& spec, size_t n,
                               const std::function<std::vector<DTerm>(int)>& dgen,
                               const std::function<bool(uint32_t)>& admissible = nullptr) {
    ExteriorComplex cx;
    cx.spec_ = spec;
    cx.n_ = n;
    cx.basis_.resize(n + 1);
    std::vector<std::map<uint32_t, size_t>> index(n + 1);
    for (uint32_t m = 0; m < (uint32_t{1} << n); ++m) {
      if (admissible && !admissible(m)) continue;
      int p = popcount32(m);
      index[p][m] = cx.basis_[p].size();
      cx.basis_[p].push_back(m);
    }
    std::vector<std::vector<DTerm>> dg;
    for (size_t i = 0; i < n; ++i) dg.push_back(dgen(static_cast<int>(i)));

    cx.d_.resize(n + 1);
    for (size_t p = 0; p <= n; ++p) {
      size_t rows = p + 1 <= n ? cx.basis_[p + 1].size() : 0;
      Matrix d(spec, rows, cx.basis_[p].size());
      for (size_t col = 0; col < cx.basis_[p].size(); ++col) {
        uint32_t mask = cx.basis_[p][col];
        int lpos = 0;
        for (uint32_t mm = mask; mm; mm &= mm - 1, ++lpos) {
          int i = std::countr_zero(mm);
          uint32_t rest = mask & ~(uint32_t{1} << i);
          int leib = lpos % 2 == 0 ? 1 : -1;
          for (const auto& t : dg[i]) {
            uint32_t pair = (uint32_t{1} << t.u) | (uint32_t{1} << t.v);
            if (rest & pair) continue;
            uint32_t target = rest | pair;
            // sign of sorting (u, v, rest): inversions of u and v against rest
            int ins = popcount32(rest & ((uint32_t{1} << t.u) - 1)) +
                      popcount32(rest & ((uint32_t{1} << t.v) - 1));
            int sgn = leib * (ins % 2 == 0 ? 1 : -1);
            auto it = index[p + 1].find(target);
            if (it == index[p + 1].end()) {
              if (!t.coeff.is_zero())
                throw Error(ErrKind::Hypothesis,
                            "subcomplex is not closed under the differential");
              continue;
            }
            FieldElement add = sgn > 0 ? t.coeff : -t.coeff;
            d.at(it->second, col) = d.at(it->second, col) + add;
          }
        }
      }
      cx.d_[p] = std::move(d);
    }

    // d∘d = 0 invariant
    for (size_t p = 0; p + 1 <= n; ++p) {
      if (cx.d_[p].cols() == 0 || cx.d_[p + 1].rows() == 0) continue;
      if (!(cx.d_[p + 1] * cx.d_[p]).is_zero())
        throw Error(ErrKind::Internal, "d^2 != 0 in exterior complex");
    }
    return cx;
  }

  size_t generators() const { return n_; }
  const std::vector<uint32_t>& basis(size_t p) const { return basis_[p]; }
  const Matrix& d(size_t p) const { return d_[p]; }

  std::vector<size_t> betti() const {
    std::vector<size_t> b;
    std::vector<size_t> ranks(n_ + 2, 0);
    for (size_t p = 0; p <= n_; ++p) ranks[p + 1] = d_[p].rank();
    for (size_t p = 0; p <= n_; ++p)
      b.push_back(basis_[p].size() - ranks[p + 1] - ranks[p]);
    return b;
  }

 private:
  FieldSpecPtr spec_;
  size_t n_ = 0;
  std::vector<std::vector<uint32_t>> basis_;
  std::vector<Matrix> d_;
};

/** The sign convention fixed for the toolkit: d x^i = -Σ_{j<k} c^i_{jk} x^j ∧ x^k. */
inline ExteriorComplex ce_complex(const LieAlgebraPresentation& g) {
  const auto& spec = g.spec();
  auto dgen = [&g, &spec](int i) {
    std::vector<DTerm> terms;
    for (size_t j = 0; j < g.dim(); ++j)
      for (size_t k = j + 1; k < g.dim(); ++k) {
        FieldElement cv = g.c(static_cast<size_t>(i), j, k);
        if (!cv.is_zero()) terms.push_back({-cv, static_cast<int>(j), static_cast<int>(k)});
      }
    return terms;
  };
  return ExteriorComplex::build(spec, g.dim(), dgen);
}

inline std::vector<size_t> betti(const LieAlgebraPresentation& g) {
  return ce_complex(g).betti();
}

}  // namespace solvco
