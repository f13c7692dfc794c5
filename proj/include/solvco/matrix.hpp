#pragma once

/*
 * Exact dense linear algebra over a number field.
 *
 * Elimination uses exact field division with a deterministic pivot rule (first nonzero
 * entry in column-major scan order), so ranks, kernels and echelon forms are reproducible
 * bit for bit across runs. Kernel bases use the reduced-echelon parametrization: one basis
 * vector per free column, with a 1 in that column's coordinate.
 */

#include "poly.hpp"

#include <vector>

namespace solvco {

class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(FieldSpecPtr spec, size_t rows, size_t cols)
      : spec_(std::move(spec)), rows_(rows), cols_(cols),
        a_(rows * cols, FieldElement::zero(spec_)) {}

  static Matrix identity(const FieldSpecPtr& spec, size_t n) {
    Matrix m(spec, n, n);
    for (size_t k = 0; k < n; ++k) m.at(k, k) = FieldElement::one(spec);
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  const FieldSpecPtr& spec() const { return spec_; }

  FieldElement& at(size_t r, size_t c) { return a_[r * cols_ + c]; }
  const FieldElement& at(size_t r, size_t c) const { return a_[r * cols_ + c]; }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }

  Matrix operator+(const Matrix& o) const {
    check_dims(o, true);
    Matrix r = *this;
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = r.a_[k] + o.a_[k];
    return r;
  }
  Matrix operator-(const Matrix& o) const {
    check_dims(o, true);
    Matrix r = *this;
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = r.a_[k] - o.a_[k];
    return r;
  }
  Matrix operator-() const {
    Matrix r = *this;
    for (auto& x : r.a_) x = -x;
    return r;
  }
  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw Error(ErrKind::Internal, "matrix product shape mismatch");
    Matrix r(spec_, rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t k = 0; k < cols_; ++k) {
        if (at(i, k).is_zero()) continue;
        for (size_t j = 0; j < o.cols_; ++j) {
          if (o.at(k, j).is_zero()) continue;
          r.at(i, j) = r.at(i, j) + at(i, k) * o.at(k, j);
        }
      }
    return r;
  }
  Matrix scaled(const FieldElement& f) const {
    Matrix r = *this;
    for (auto& x : r.a_) x = x * f;
    return r;
  }
  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

  std::vector<FieldElement> apply(const std::vector<FieldElement>& v) const {
    if (v.size() != cols_) throw Error(ErrKind::Internal, "matrix apply shape mismatch");
    std::vector<FieldElement> r(rows_, FieldElement::zero(spec_));
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j)
        if (!at(i, j).is_zero() && !v[j].is_zero()) r[i] = r[i] + at(i, j) * v[j];
    return r;
  }

  Matrix transpose() const {
    Matrix r(spec_, cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  FieldElement trace() const {
    FieldElement t = FieldElement::zero(spec_);
    for (size_t k = 0; k < std::min(rows_, cols_); ++k) t = t + at(k, k);
    return t;
  }

  Matrix conj() const {
    Matrix r = *this;
    for (auto& x : r.a_) x = x.conj();
    return r;
  }

  Matrix lift_to(const FieldSpecPtr& target) const {
    Matrix r(target, rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k].lift_to(target);
    return r;
  }

  std::vector<FieldElement> col(size_t j) const {
    std::vector<FieldElement> v;
    for (size_t i = 0; i < rows_; ++i) v.push_back(at(i, j));
    return v;
  }
  void set_col(size_t j, const std::vector<FieldElement>& v) {
    for (size_t i = 0; i < rows_; ++i) at(i, j) = v[i];
  }
  static Matrix from_cols(const FieldSpecPtr& spec, size_t rows,
                          const std::vector<std::vector<FieldElement>>& cols) {
    Matrix m(spec, rows, cols.size());
    for (size_t j = 0; j < cols.size(); ++j) m.set_col(j, cols[j]);
    return m;
  }

  struct Echelon;

  Echelon echelon() const;
  size_t rank() const;

  /** Kernel basis in the reduced-echelon parametrization (one vector per free column). */
  std::vector<std::vector<FieldElement>> kernel() const;

  /** Solve A x = b; nullopt if inconsistent. Free variables are set to zero. */
  std::optional<std::vector<FieldElement>> solve(const std::vector<FieldElement>& b) const;

  /** Solve A X = B column by column; nullopt if any column is inconsistent. */
  std::optional<Matrix> solve_matrix(const Matrix& B) const {
    Matrix X(spec_, cols_, B.cols());
    for (size_t j = 0; j < B.cols(); ++j) {
      auto x = solve(B.col(j));
      if (!x) return std::nullopt;
      X.set_col(j, *x);
    }
    return X;
  }

  Matrix inverse() const {
    if (rows_ != cols_) throw Error(ErrKind::Internal, "inverse of non-square matrix");
    auto X = solve_matrix(identity(spec_, rows_));
    if (!X) throw Error(ErrKind::Internal, "matrix not invertible");
    return *X;
  }

  /** Characteristic polynomial det(xI - A) via Faddeev–LeVerrier (exact, char 0). */
  Poly charpoly() const {
    if (rows_ != cols_) throw Error(ErrKind::Internal, "charpoly of non-square matrix");
    size_t n = rows_;
    std::vector<FieldElement> c(n + 1, FieldElement::zero(spec_));
    c[n] = FieldElement::one(spec_);
    Matrix M = Matrix(spec_, n, n);  // M_0 = 0
    for (size_t k = 1; k <= n; ++k) {
      // M_k = A*M_{k-1} + c_{n-k+1} * I
      M = (*this) * M;
      for (size_t d = 0; d < n; ++d) M.at(d, d) = M.at(d, d) + c[n - k + 1];
      FieldElement t = ((*this) * M).trace();
      c[n - k] = -t.scaled(Rational(1, static_cast<long>(k)));
    }
    return Poly(spec_, std::move(c));
  }

  /** Minimal polynomial via the first linear dependency among vec(A^k). */
  Poly minpoly() const {
    if (rows_ != cols_) throw Error(ErrKind::Internal, "minpoly of non-square matrix");
    size_t n = rows_;
    std::vector<Matrix> powers;
    powers.push_back(identity(spec_, n));
    for (size_t k = 1; k <= n; ++k) powers.push_back(powers.back() * (*this));
    for (size_t deg = 1; deg <= n; ++deg) {
      // solve sum_{k<deg} x_k vec(A^k) = -vec(A^deg)
      Matrix sys(spec_, n * n, deg);
      std::vector<FieldElement> rhs;
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
          for (size_t k = 0; k < deg; ++k) sys.at(i * n + j, k) = powers[k].at(i, j);
          rhs.push_back(-powers[deg].at(i, j));
        }
      if (auto x = sys.solve(rhs)) {
        std::vector<FieldElement> c = *x;
        c.push_back(FieldElement::one(spec_));
        return Poly(spec_, std::move(c));
      }
    }
    throw Error(ErrKind::Internal, "minpoly: no dependency found");  // unreachable
  }

  bool is_nilpotent() const {
    if (rows_ != cols_) return false;
    Matrix p = *this;
    size_t steps = 1;
    while (steps < rows_ && !p.is_zero()) {
      p = p * p;
      steps *= 2;
    }
    return p.is_zero();
  }

  /** Evaluate a polynomial at this matrix. */
  Matrix poly_eval(const Poly& p) const {
    Matrix r(spec_, rows_, cols_);
    for (int k = p.degree(); k >= 0; --k) {
      r = r * (*this);
      for (size_t d = 0; d < rows_; ++d) r.at(d, d) = r.at(d, d) + p[k];
    }
    return r;
  }

  bool commutes_with(const Matrix& o) const { return ((*this) * o) == (o * (*this)); }

 private:
  FieldSpecPtr spec_;
  size_t rows_, cols_;
  std::vector<FieldElement> a_;

  void check_dims(const Matrix& o, bool same) const {
    if (same && (rows_ != o.rows_ || cols_ != o.cols_))
      throw Error(ErrKind::Internal, "matrix shape mismatch");
  }
};

struct Matrix::Echelon {
  Matrix rref;                 // reduced row echelon form
  std::vector<size_t> pivots;  // pivot column per pivot row
  size_t rank = 0;
};

inline Matrix::Echelon Matrix::echelon() const {
  Echelon e{*this, {}, 0};
  Matrix& m = e.rref;
  size_t r = 0;
  for (size_t c = 0; c < cols_ && r < rows_; ++c) {
    size_t piv = rows_;  // deterministic: first nonzero entry at or below row r
    for (size_t i = r; i < rows_; ++i)
      if (!m.at(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv == rows_) continue;
    if (piv != r)
      for (size_t j = 0; j < cols_; ++j) std::swap(m.at(piv, j), m.at(r, j));
    FieldElement inv = m.at(r, c).inv();
    for (size_t j = c; j < cols_; ++j) m.at(r, j) = m.at(r, j) * inv;
    for (size_t i = 0; i < rows_; ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      FieldElement f = m.at(i, c);
      for (size_t j = c; j < cols_; ++j) m.at(i, j) = m.at(i, j) - f * m.at(r, j);
    }
    e.pivots.push_back(c);
    ++r;
  }
  e.rank = r;
  return e;
}

inline size_t Matrix::rank() const { return echelon().rank; }

inline std::vector<std::vector<FieldElement>> Matrix::kernel() const {
  Echelon e = echelon();
  std::vector<bool> is_pivot(cols_, false);
  for (size_t c : e.pivots) is_pivot[c] = true;
  std::vector<std::vector<FieldElement>> basis;
  for (size_t c = 0; c < cols_; ++c) {
    if (is_pivot[c]) continue;
    std::vector<FieldElement> v(cols_, FieldElement::zero(spec_));
    v[c] = FieldElement::one(spec_);
    for (size_t pr = 0; pr < e.pivots.size(); ++pr) v[e.pivots[pr]] = -e.rref.at(pr, c);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::optional<std::vector<FieldElement>> Matrix::solve(
    const std::vector<FieldElement>& b) const {
  Matrix aug(spec_, rows_, cols_ + 1);
  for (size_t i = 0; i < rows_; ++i) {
    for (size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, cols_) = b[i];
  }
  Echelon e = aug.echelon();
  for (size_t c : e.pivots)
    if (c == cols_) return std::nullopt;  // pivot in augmented column
  std::vector<FieldElement> x(cols_, FieldElement::zero(spec_));
  for (size_t pr = 0; pr < e.pivots.size(); ++pr) x[e.pivots[pr]] = e.rref.at(pr, cols_);
  return x;
}

}  // namespace solvco
