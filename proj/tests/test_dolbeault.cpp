#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "solvco/dolbeault.hpp"

using namespace solvco;

namespace {

FieldElement fe(const FieldSpecPtr& s, long re, long im = 0) {
  auto x = FieldElement::from_rational(s, Rational(re));
  if (im != 0) x = x + FieldElement::i_unit(s).scaled(Rational(im));
  return x;
}

CharacterValue cv_lift(const Rational& lift) {
  CharacterValue v;
  v.phase = Phase(lift);
  return v;
}

CharacterValue cv_mod_symbol(const std::string& sym, const Rational& c) {
  CharacterValue v;
  v.modulus.add_term(sym, c);
  return v;
}

/** dim-4 nilpotent algebra [e1,e2] = e3 with J e1 = e2, J e3 = e4. */
LieAlgebraPresentation heisenberg4() {
  auto spec = FieldSpec::rationals(false);
  LieAlgebraPresentation g(spec, 4, {}, {}, {0, 1, 2, 3});
  g.set_bracket(0, 1, 2, FieldElement::one(spec));
  REQUIRE(g.validate().ok());
  return g;
}

Matrix block_j(const FieldSpecPtr& spec, size_t dim, const std::vector<std::pair<size_t, size_t>>& pairs) {
  Matrix j(spec, dim, dim);
  auto one = FieldElement::one(spec);
  for (auto [a, b] : pairs) {
    j.at(b, a) = one;
    j.at(a, b) = -one;
  }
  return j;
}

/** dim-6 solvable algebra whose eigenframe weights are e^{±z̄} (anti-holomorphic);
 *  the complex structure e1→e2, e3→e4, e5→e6 is abelian. */
LieAlgebraPresentation antiholo_algebra() {
  auto spec = FieldSpec::rationals(false);
  LieAlgebraPresentation g(spec, 6, {}, {0, 1}, {2, 3, 4, 5});
  auto one = FieldElement::one(spec);
  g.set_bracket(0, 2, 2, one);
  g.set_bracket(0, 3, 3, one);
  g.set_bracket(1, 2, 3, -one);
  g.set_bracket(1, 3, 2, one);
  g.set_bracket(0, 4, 4, -one);
  g.set_bracket(0, 5, 5, -one);
  g.set_bracket(1, 4, 5, one);
  g.set_bracket(1, 5, 4, -one);
  REQUIRE(g.validate().ok());
  return g;
}

/** dim-6 solvable algebra with holomorphic eigenframe weights e^{±z}. */
LieAlgebraPresentation holo_algebra() {
  auto spec = FieldSpec::rationals(false);
  LieAlgebraPresentation g(spec, 6, {}, {0, 1}, {2, 3, 4, 5});
  auto one = FieldElement::one(spec);
  g.set_bracket(0, 2, 2, one);
  g.set_bracket(0, 3, 3, one);
  g.set_bracket(1, 2, 3, one);
  g.set_bracket(1, 3, 2, -one);
  g.set_bracket(0, 4, 4, -one);
  g.set_bracket(0, 5, 5, -one);
  g.set_bracket(1, 4, 5, -one);
  g.set_bracket(1, 5, 4, one);
  REQUIRE(g.validate().ok());
  return g;
}

/** two characters: χ_A = (1,0) with symbolic modulus, χ_B = (0,i) with rational lift. */
LatticeEvaluation sixdim_lattice(const FieldSpecPtr& cs, const Rational& lift_b) {
  LatticeEvaluation lat;
  lat.generators = {"g1"};
  lat.characters.push_back({"chiA", {fe(cs, 1), fe(cs, 0)}, {cv_mod_symbol("t0", 1)}});
  lat.characters.push_back({"chiB", {fe(cs, 0), fe(cs, 0, 1)}, {cv_lift(lift_b)}});
  return lat;
}

bool serre_symmetric(const HodgeTable& t) {
  size_t n = t.size() - 1;
  for (size_t p = 0; p <= n; ++p)
    for (size_t q = 0; q <= n; ++q)
      if (t[p][q] != t[n - p][n - q]) return false;
  return true;
}

bool torus_table(const HodgeTable& t, size_t n) {
  for (size_t p = 0; p <= n; ++p)
    for (size_t q = 0; q <= n; ++q)
      if (t[p][q] != binomial(n, p) * binomial(n, q)) return false;
  return true;
}

bool is_abelian(const LieAlgebraPresentation& a) {
  for (size_t j = 0; j < a.dim(); ++j)
    for (size_t k = j + 1; k < a.dim(); ++k)
      for (size_t i = 0; i < a.dim(); ++i)
        if (!a.c(i, j, k).is_zero()) return false;
  return true;
}

}  // namespace

TEST_CASE("nilpotent dim-4 example: structure report and Hodge table") {
  auto g = heisenberg4();
  auto j = block_j(g.spec(), 4, {{0, 1}, {2, 3}});

  auto rep = validate_complex_structure(g, j);
  CHECK(rep.dim_even);
  CHECK(rep.square);
  CHECK(rep.nijenhuis);
  CHECK(rep.preserves_n);
  CHECK(rep.preserves_v);
  CHECK(rep.ads_commuting);
  CHECK(rep.abelian);  // [Je1, Je2] = -[e2, e1] = [e1, e2]
  CHECK(rep.compatible());
  CHECK(holomorphic_mostow_check(g, j));

  auto ws = build_weight_system(g);
  CHECK(ws.k == 0);
  LatticeEvaluation lat;  // nilmanifold: no torus characters, no conditions

  auto bg = build_B_gamma(g, ws, j, lat);
  CHECK(bg.admitted_monomials == 16);
  auto t = hodge_numbers(bg.complex);
  CHECK(t[0][0] == 1);
  CHECK(t[1][0] == 1);
  CHECK(t[0][1] == 2);
  CHECK(t[2][0] == 1);
  CHECK(t[1][1] == 2);
  CHECK(t[0][2] == 1);
  CHECK(t[2][1] == 2);
  CHECK(t[1][2] == 1);
  CHECK(t[2][2] == 1);
  CHECK(serre_symmetric(t));

  // untwisted CE-Dolbeault of the same algebra gives the same table
  CHECK(lie_dolbeault(g, j) == t);
}

TEST_CASE("abelian complex structure with anti-holomorphic weights: torus Hodge numbers") {
  auto g = antiholo_algebra();
  auto j = block_j(g.spec(), 6, {{0, 1}, {2, 3}, {4, 5}});

  auto rep = validate_complex_structure(g, j);
  CHECK(rep.compatible());
  CHECK(rep.abelian);
  CHECK(holomorphic_mostow_check(g, j));

  auto ws = build_weight_system(g);
  auto lat = sixdim_lattice(ws.cspec, Rational(1, 2));

  auto bg = build_B_gamma(g, ws, j, lat);
  CHECK(bg.admitted_monomials == 64);  // every multiplier character is trivial
  auto t = hodge_numbers(bg.complex);
  CHECK(torus_table(t, 3));

  auto bp = breve_pair(g, ws, j, lat);
  CHECK(bp.rho_rank == 1);
  CHECK(bp.trivial_rank == 1);
  CHECK(is_abelian(bp.algebra));
  CHECK(bp.jreport.abelian);
  CHECK(torus_table(shortcut_hodge(bp, ShortcutMode::General), 3));
  CHECK(torus_table(shortcut_hodge(bp, ShortcutMode::Abelian), 3));
  CHECK(torus_table(shortcut_hodge(bp, ShortcutMode::Parallelizable), 3));
}

TEST_CASE("holomorphic weights: pipeline agreement between the lattice complex and the breve pair") {
  auto g = holo_algebra();
  auto j = block_j(g.spec(), 6, {{0, 1}, {2, 3}, {4, 5}});

  auto rep = validate_complex_structure(g, j);
  CHECK(rep.compatible());
  CHECK_FALSE(rep.abelian);
  CHECK(holomorphic_mostow_check(g, j));

  auto ws = build_weight_system(g);
  auto lat = sixdim_lattice(ws.cspec, Rational(1));

  auto bg = build_B_gamma(g, ws, j, lat);
  CHECK(bg.admitted_monomials == 64);
  auto t = hodge_numbers(bg.complex);
  CHECK(torus_table(t, 3));

  auto bp = breve_pair(g, ws, j, lat);
  CHECK(bp.rho_rank == 1);
  CHECK(bp.trivial_rank == 1);
  CHECK(is_abelian(bp.algebra));
  CHECK(shortcut_hodge(bp, ShortcutMode::General) == t);
  CHECK(shortcut_hodge(bp, ShortcutMode::Parallelizable) == t);
}

TEST_CASE("non-integral multiplier lifts: admission filters monomials, Serre symmetry survives") {
  auto g = holo_algebra();
  auto j = block_j(g.spec(), 6, {{0, 1}, {2, 3}, {4, 5}});
  auto ws = build_weight_system(g);
  auto lat = sixdim_lattice(ws.cspec, Rational(1, 3));

  auto bg = build_B_gamma(g, ws, j, lat);
  CHECK(bg.admitted_monomials == 32);
  auto t = hodge_numbers(bg.complex);
  CHECK(t[0][0] == 1);
  CHECK(t[1][0] == 3);  // x1, y1, y2 survive in bidegree (1,0)
  CHECK(t[0][1] == 1);  // lone ȳ monomials are not admitted
  CHECK(serre_symmetric(t));

  // the multiplier character is trivial only at its third power, so no subtorus of the
  // multiplier torus separates trivial from non-trivial monomials: the pair construction
  // must refuse rather than return the (larger) untwisted table
  try {
    breve_pair(g, ws, j, lat);
    CHECK_MESSAGE(false, "breve_pair accepted a finite-order non-trivial multiplier");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrKind::Hypothesis);
  }
}

TEST_CASE("complex structure crossing the weight blocks fails the commutation gates") {
  auto g = holo_algebra();
  auto j = block_j(g.spec(), 6, {{0, 1}, {2, 4}, {3, 5}});

  auto rep = validate_complex_structure(g, j);
  CHECK(rep.square);
  CHECK_FALSE(rep.ads_commuting);
  CHECK_FALSE(holomorphic_mostow_check(g, j));

  auto ws = build_weight_system(g);
  auto lat = sixdim_lattice(ws.cspec, Rational(1));
  CHECK_THROWS_AS(build_B_gamma(g, ws, j, lat), Error);
  CHECK_THROWS_AS(breve_pair(g, ws, j, lat), Error);
}
