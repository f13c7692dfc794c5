#pragma once

/*
 * Jordan–Chevalley decomposition M = S + N over the base field, without factoring the
 * characteristic polynomial: Newton iteration x <- x - g(x)/g'(x) against the squarefree
 * part g of charpoly(M), carried out in K[x] mod charpoly. The iterate converges to a
 * polynomial a with a(M) semisimple (g(a(M)) = 0) and M - a(M) nilpotent; both parts are
 * polynomials in M, hence commute with M and with each other and with anything commuting
 * with M. Everything stays inside the base field.
 */

#include "matrix.hpp"

namespace solvco {

struct JordanPair {
  Matrix s;  // semisimple part (squarefree minimal polynomial)
  Matrix n;  // nilpotent part
};

namespace detail {

/** Composition p(q) reduced mod m. */
inline Poly compose_mod(const Poly& p, const Poly& q, const Poly& m) {
  const auto& spec = p.spec();
  Poly r = Poly::zero(spec);
  for (int k = p.degree(); k >= 0; --k) {
    r = (r * q).mod(m);
    r = r + Poly::constant(spec, p[k]);
  }
  return r;
}

/** Inverse of a mod m (coprime case), by extended Euclid. */
inline Poly inverse_mod(const Poly& a, const Poly& m) {
  const auto& spec = a.spec();
  Poly r0 = m, r1 = a.mod(m);
  Poly s0 = Poly::zero(spec), s1 = Poly::constant(spec, FieldElement::one(spec));
  while (!r1.is_zero()) {
    auto [q, rem] = r0.divmod(r1);
    Poly s2 = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.degree() != 0)
    throw Error(ErrKind::Internal, "inverse_mod: arguments not coprime");
  return s0.scaled(r0[0].inv()).mod(m);
}

}  // namespace detail

inline JordanPair jordan_chevalley(const Matrix& m) {
  if (m.rows() != m.cols())
    throw Error(ErrKind::Internal, "jordan_chevalley: non-square matrix");
  const auto& spec = m.spec();
  size_t n = m.rows();
  Poly p = m.charpoly();
  Poly g = p.squarefree_part();

  if (g.degree() == p.degree()) {
    // M already semisimple (charpoly squarefree)
    JordanPair jp{m, Matrix(spec, n, n)};
    return jp;
  }

  Poly a = Poly::x(spec);  // iterate in K[x] mod p, starting at x itself
  size_t max_iter = 1;
  while ((size_t{1} << max_iter) < n + 1) ++max_iter;
  ++max_iter;
  for (size_t it = 0; it <= max_iter; ++it) {
    Poly ga = detail::compose_mod(g, a, p);
    if (ga.is_zero()) break;
    Poly dga = detail::compose_mod(g.derivative(), a, p);
    Poly corr = (ga * detail::inverse_mod(dga, p)).mod(p);
    a = (a - corr).mod(p);
    if (it == max_iter)
      throw Error(ErrKind::Internal, "jordan_chevalley: Newton iteration did not converge");
  }

  Matrix s = m.poly_eval(a);
  Matrix nn = m - s;
  if (!nn.is_nilpotent())
    throw Error(ErrKind::Internal, "jordan_chevalley: nilpotent part check failed");
  if (!s.commutes_with(nn))
    throw Error(ErrKind::Internal, "jordan_chevalley: parts do not commute");
  return JordanPair{std::move(s), std::move(nn)};
}

/** Semisimplicity test: squarefree minimal polynomial. */
inline bool is_semisimple(const Matrix& m) {
  Poly mp = m.minpoly();
  return Poly::gcd(mp, mp.derivative()).degree() == 0;
}

}  // namespace solvco
