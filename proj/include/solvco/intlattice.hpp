#pragma once

/*
 * Integer lattices: column-style Hermite normal form, integer kernels (saturated by
 * construction), saturation of a sublattice, and congruence kernels {E : A·E ∈ Z^t}.
 * These drive the character-lattice bookkeeping (canonical char bases, trivial
 * sublattices, subtorus choices).
 */

#include "rational.hpp"

#include <vector>

namespace solvco {

using IntVec = std::vector<Int>;
using IntCols = std::vector<IntVec>;  // list of column vectors, all the same length

using RatVec = std::vector<Rational>;
using RatRows = std::vector<RatVec>;  // list of row vectors

namespace intlat {

/** Column HNF (lower echelon, positive pivots, entries left of a pivot reduced mod it).
 *  Columns are reduced in place; zero columns are dropped. Deterministic. */
inline IntCols col_hnf(IntCols cols) {
  if (cols.empty()) return cols;
  size_t r = cols[0].size();
  size_t h = 0;
  for (size_t i = 0; i < r && h < cols.size(); ++i) {
    // clear row i across columns >= h by repeated Euclidean column reduction
    while (true) {
      size_t best = cols.size();
      for (size_t j = h; j < cols.size(); ++j) {
        if (cols[j][i] == 0) continue;
        if (best == cols.size() ||
            boost::multiprecision::abs(cols[j][i]) < boost::multiprecision::abs(cols[best][i]))
          best = j;
      }
      if (best == cols.size()) break;  // row i all zero in columns >= h
      std::swap(cols[h], cols[best]);
      bool others = false;
      for (size_t j = h + 1; j < cols.size(); ++j) {
        if (cols[j][i] == 0) continue;
        Int q = cols[j][i] / cols[h][i];  // truncated division is fine for the Euclid loop
        if (q != 0)
          for (size_t k = 0; k < r; ++k) cols[j][k] -= q * cols[h][k];
        if (cols[j][i] != 0) others = true;
      }
      if (!others) {
        if (cols[h][i] < 0)
          for (size_t k = 0; k < r; ++k) cols[h][k] = -cols[h][k];
        // reduce the entries of row i in columns < h modulo the pivot
        for (size_t j = 0; j < h; ++j) {
          Int q = cols[j][i] / cols[h][i];
          if (cols[j][i] - q * cols[h][i] < 0) q -= 1;  // floor division
          if (q != 0)
            for (size_t k = 0; k < r; ++k) cols[j][k] -= q * cols[h][k];
        }
        ++h;
        break;
      }
    }
  }
  cols.resize(h);
  return cols;
}

/** Basis (column HNF) of the lattice generated by the given integer vectors. */
inline IntCols lattice_basis(const IntCols& gens) { return col_hnf(gens); }

/** Saturated integer kernel {x in Z^c : A x = 0} of an integer matrix given by rows. */
inline IntCols integer_kernel(const RatRows& rows_in, size_t ncols) {
  // integerize rows
  std::vector<IntVec> rows;
  for (const auto& row : rows_in) {
    Int L = 1;
    for (const auto& x : row) L = int_lcm(L, rat_den(x));
    IntVec r;
    for (const auto& x : row) r.push_back(rat_num(x) * (L / rat_den(x)));
    rows.push_back(std::move(r));
  }
  // columns of the stacked matrix [A; I]; reduce driven by the A-part
  IntCols cols(ncols, IntVec(rows.size() + ncols, Int(0)));
  for (size_t j = 0; j < ncols; ++j) {
    for (size_t i = 0; i < rows.size(); ++i) cols[j][i] = rows[i][j];
    cols[j][rows.size() + j] = 1;
  }
  size_t h = 0;
  for (size_t i = 0; i < rows.size() && h < cols.size(); ++i) {
    while (true) {
      size_t best = cols.size();
      for (size_t j = h; j < cols.size(); ++j) {
        if (cols[j][i] == 0) continue;
        if (best == cols.size() ||
            boost::multiprecision::abs(cols[j][i]) < boost::multiprecision::abs(cols[best][i]))
          best = j;
      }
      if (best == cols.size()) break;
      std::swap(cols[h], cols[best]);
      bool others = false;
      for (size_t j = h + 1; j < cols.size(); ++j) {
        if (cols[j][i] == 0) continue;
        Int q = cols[j][i] / cols[h][i];
        if (q != 0)
          for (size_t k = 0; k < cols[j].size(); ++k) cols[j][k] -= q * cols[h][k];
        if (cols[j][i] != 0) others = true;
      }
      if (!others) {
        ++h;
        break;
      }
    }
  }
  // columns h.. have zero A-part; their I-parts form a (saturated) kernel basis
  IntCols ker;
  for (size_t j = h; j < cols.size(); ++j) {
    IntVec v(cols[j].begin() + static_cast<long>(rows.size()), cols[j].end());
    ker.push_back(std::move(v));
  }
  return col_hnf(ker);
}

/** Rational kernel basis of a matrix given by rows (Gauss–Jordan over Q). */
inline std::vector<RatVec> rational_kernel(RatRows rows, size_t ncols) {
  size_t r = 0;
  std::vector<size_t> pivots;
  for (size_t c = 0; c < ncols && r < rows.size(); ++c) {
    size_t piv = rows.size();
    for (size_t i = r; i < rows.size(); ++i)
      if (rows[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    Rational inv = 1 / rows[r][c];
    for (size_t j = 0; j < ncols; ++j) rows[r][j] *= inv;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rational f = rows[i][c];
      for (size_t j = 0; j < ncols; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(ncols, false);
  for (size_t c : pivots) is_pivot[c] = true;
  std::vector<RatVec> basis;
  for (size_t c = 0; c < ncols; ++c) {
    if (is_pivot[c]) continue;
    RatVec v(ncols, Rational(0));
    v[c] = 1;
    for (size_t pr = 0; pr < pivots.size(); ++pr) v[pivots[pr]] = -rows[pr][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

/** Saturation: Z^r ∩ Q-span of the given (rational) generators. */
inline IntCols saturate(const std::vector<RatVec>& gens, size_t r) {
  if (gens.empty()) return {};
  // annihilator of the span: rational kernel of the transpose
  RatRows rows;  // one row per coordinate? we need kernel of B^T: rows = gens as rows
  for (const auto& g : gens) rows.push_back(g);
  auto ann = rational_kernel(rows, r);  // functionals vanishing on all generators
  RatRows ann_rows;
  for (auto& f : ann) ann_rows.push_back(f);
  return integer_kernel(ann_rows, r);  // integer vectors killed by the annihilator
}

/** Congruence kernel {E in Z^r : A E ∈ Z^t} for rational A (rows). */
inline IntCols congruence_kernel(const RatRows& a, size_t r) {
  size_t t = a.size();
  if (t == 0) {
    IntCols id(r, IntVec(r, Int(0)));
    for (size_t k = 0; k < r; ++k) id[k][k] = 1;
    return id;
  }
  Int D = 1;
  for (const auto& row : a)
    for (const auto& x : row) D = int_lcm(D, rat_den(x));
  // solve A' E + D y = 0 over Z, project to E
  RatRows sys;
  for (size_t i = 0; i < t; ++i) {
    RatVec row(r + t, Rational(0));
    for (size_t j = 0; j < r; ++j) row[j] = a[i][j] * Rational(D);
    row[r + i] = Rational(D);
    sys.push_back(std::move(row));
  }
  IntCols full = integer_kernel(sys, r + t);
  IntCols proj;
  for (const auto& v : full) proj.push_back(IntVec(v.begin(), v.begin() + static_cast<long>(r)));
  return col_hnf(proj);
}

/** Integer coordinates of v in the given basis (columns); nullopt if not integral. */
inline std::optional<IntVec> integer_coords(const IntCols& basis, const RatVec& v) {
  size_t r = v.size();
  // solve basis * x = v over Q (least-structure: Gaussian elimination on augmented)
  RatRows rows(r, RatVec(basis.size() + 1, Rational(0)));
  for (size_t i = 0; i < r; ++i) {
    for (size_t j = 0; j < basis.size(); ++j) rows[i][j] = Rational(basis[j][i]);
    rows[i][basis.size()] = v[i];
  }
  // eliminate
  size_t rr = 0;
  std::vector<size_t> pivots;
  for (size_t c = 0; c < basis.size() && rr < r; ++c) {
    size_t piv = r;
    for (size_t i = rr; i < r; ++i)
      if (rows[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv == r) continue;
    std::swap(rows[piv], rows[rr]);
    Rational inv = 1 / rows[rr][c];
    for (auto& x : rows[rr]) x *= inv;
    for (size_t i = 0; i < r; ++i) {
      if (i == rr || rows[i][c] == 0) continue;
      Rational f = rows[i][c];
      for (size_t j = 0; j <= basis.size(); ++j) rows[i][j] -= f * rows[rr][j];
    }
    pivots.push_back(c);
    ++rr;
  }
  for (size_t i = rr; i < r; ++i)
    if (rows[i][basis.size()] != 0) return std::nullopt;  // inconsistent
  IntVec x(basis.size(), Int(0));
  for (size_t pr = 0; pr < pivots.size(); ++pr) {
    const Rational& val = rows[pr][basis.size()];
    if (!is_integer(val)) return std::nullopt;
    x[pivots[pr]] = rat_num(val);
  }
  return x;
}

/** Rational coordinates of v in the given (rational) basis; nullopt if not in the span. */
inline std::optional<RatVec> rational_coords(const std::vector<RatVec>& basis, const RatVec& v) {
  size_t r = v.size();
  RatRows rows(r, RatVec(basis.size() + 1, Rational(0)));
  for (size_t i = 0; i < r; ++i) {
    for (size_t j = 0; j < basis.size(); ++j) rows[i][j] = basis[j][i];
    rows[i][basis.size()] = v[i];
  }
  size_t rr = 0;
  std::vector<size_t> pivots;
  for (size_t c = 0; c < basis.size() && rr < r; ++c) {
    size_t piv = r;
    for (size_t i = rr; i < r; ++i)
      if (rows[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv == r) continue;
    std::swap(rows[piv], rows[rr]);
    Rational inv = 1 / rows[rr][c];
    for (auto& x : rows[rr]) x *= inv;
    for (size_t i = 0; i < r; ++i) {
      if (i == rr || rows[i][c] == 0) continue;
      Rational f = rows[i][c];
      for (size_t j = 0; j <= basis.size(); ++j) rows[i][j] -= f * rows[rr][j];
    }
    pivots.push_back(c);
    ++rr;
  }
  for (size_t i = rr; i < r; ++i)
    if (rows[i][basis.size()] != 0) return std::nullopt;
  RatVec x(basis.size(), Rational(0));
  for (size_t pr = 0; pr < pivots.size(); ++pr) x[pivots[pr]] = rows[pr][basis.size()];
  return x;
}

}  // namespace intlat
}  // namespace solvco
