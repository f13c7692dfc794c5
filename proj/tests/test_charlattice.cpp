#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "solvco/charlattice.hpp"

using namespace solvco;

namespace {

FieldElement fe(const FieldSpecPtr& s, long re, long im = 0) {
  return FieldElement::from_rational(s, Rational(re)) +
         FieldElement::i_unit(s).scaled(Rational(im));
}

/* rotation algebra: [T,V]=W, [T,W]=-V with splitting V={T}, n={V,W} */
LieAlgebraPresentation rotation_algebra() {
  auto spec = FieldSpec::rationals(false);
  LieAlgebraPresentation g(spec, 3, {"T", "V", "W"}, {0}, {1, 2});
  g.set_bracket(0, 1, 2, FieldElement::one(spec));
  g.set_bracket(0, 2, 1, -FieldElement::one(spec));
  REQUIRE(g.validate().ok());
  return g;
}

/* 6-dim completely solvable-by-rotation algebra: abelian V = <e1,e2> acting on n = R^4 */
LieAlgebraPresentation sixdim_algebra() {
  auto spec = FieldSpec::rationals(false);
  LieAlgebraPresentation g(spec, 6, {}, {0, 1}, {2, 3, 4, 5});
  auto one = FieldElement::one(spec);
  g.set_bracket(0, 2, 2, one);
  g.set_bracket(0, 3, 3, one);
  g.set_bracket(0, 4, 4, -one);
  g.set_bracket(0, 5, 5, -one);
  g.set_bracket(1, 2, 3, one);
  g.set_bracket(1, 3, 2, -one);
  g.set_bracket(1, 4, 5, -one);
  g.set_bracket(1, 5, 4, one);
  REQUIRE(g.validate().ok());
  return g;
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

}  // namespace

TEST_CASE("weight system of the rotation algebra") {
  auto g = rotation_algebra();
  auto ws = build_weight_system(g);
  REQUIRE(ws.dim == 3);
  REQUIRE(ws.k == 1);
  auto cs = ws.cspec;
  CHECK(cs->i_adjoined);

  // weights on V = <T>: 0 (for T itself), +i, -i
  REQUIRE(ws.weights.size() == 3);
  CHECK(ws.weights[0][0].is_zero());
  std::multiset<std::string> wts{ws.weights[1][0].str(), ws.weights[2][0].str()};
  CHECK(wts == std::multiset<std::string>{fe(cs, 0, 1).str(), fe(cs, 0, -1).str()});

  // eigenbasis column 0 is T, the others lie in n and are genuine eigenvectors
  CHECK(ws.eigenbasis.at(0, 0) == FieldElement::one(cs));
  auto fam = ws.cg.compute_ad_s();
  for (size_t c = 1; c < 3; ++c) {
    CHECK(ws.eigenbasis.at(0, c).is_zero());
    auto img = fam[0].apply(ws.eigenbasis.col(c));
    for (size_t i = 0; i < 3; ++i)
      CHECK(img[i] == ws.weights[c][0] * ws.eigenbasis.at(i, c));
  }

  // char lattice has rank 1 with the two nonzero weights at exponents +1 / -1
  REQUIRE(ws.r == 1);
  CHECK(ws.exponents[0] == IntVec{Int(0)});
  std::multiset<Int> exps{ws.exponents[1][0], ws.exponents[2][0]};
  CHECK(exps == std::multiset<Int>{Int(1), Int(-1)});
  // every weight is recovered from its exponents
  for (size_t c = 0; c < 3; ++c) {
    RatVec e;
    for (const auto& x : ws.exponents[c]) e.push_back(Rational(x));
    CHECK(ws.functional_of(e)[0] == ws.weights[c][0]);
  }
  // monomial exponent = sum over set bits
  CHECK(ws.exponent_of_mask(0b110) == RatVec{Rational(0)});
  CHECK(ws.exponent_of_mask(0b010) == RatVec{Rational(ws.exponents[1][0])});
}

TEST_CASE("character evaluation for the two rotation lattices") {
  auto g = rotation_algebra();
  auto ws = build_weight_system(g);
  auto cs = ws.cspec;

  // lattice data: one generator, one character exp(i·x) with given value
  auto make_lat = [&](const Rational& lift) {
    LatticeEvaluation lat;
    lat.generators = {"g1"};
    lat.characters.push_back({"chi", {fe(cs, 0, 1)}, {cv_lift(lift)}});
    return lat;
  };

  SUBCASE("half-turn lattice: chi nontrivial, chi^2 trivial") {
    auto t = build_char_table(ws, make_lat(Rational(1, 2)));
    // orient: which canonical direction does exp(i·x) have?
    // char_basis[0] is ±i; exponent of exp(i·x) in it is ±1
    CHECK_FALSE(restrict_trivial(t, {Rational(1)}));
    CHECK(restrict_trivial(t, {Rational(2)}));
    CHECK(restrict_trivial(t, {Rational(0)}));
    CHECK_FALSE(restrict_trivial(t, {Rational(3)}));
  }
  SUBCASE("full-turn lattice: chi itself trivial") {
    auto t = build_char_table(ws, make_lat(Rational(1)));
    CHECK(restrict_trivial(t, {Rational(1)}));
    CHECK(restrict_trivial(t, {Rational(-5)}));
    CHECK_FALSE(restrict_trivial(t, {Rational(1, 2)}));
  }
  SUBCASE("Gaussian coefficients: a real functional through a unitary character") {
    auto lat = make_lat(Rational(1, 2));
    // exp(1·x) = chi^{-i}: modulus picks up (1/2)·2π, phase becomes trivial
    auto vals = evaluate_functional({fe(cs, 1, 0)}, lat, cs, 1);
    REQUIRE(vals.size() == 1);
    CHECK(vals[0].phase.lift == 0);
    CHECK(vals[0].phase_sym.is_zero());
    LogReal expect;
    expect.add_term(kTwoPi, Rational(1, 2));
    CHECK(vals[0].modulus == expect);
  }
  SUBCASE("functional outside the span is rejected") {
    auto lat = make_lat(Rational(1, 2));
    LieAlgebraPresentation dummy;  // silence unused warnings on some compilers
    (void)dummy;
    LatticeEvaluation empty;
    empty.generators = {"g1"};
    CHECK_THROWS_AS(evaluate_functional({fe(cs, 0, 1)}, empty, cs, 1), Error);
  }
}

TEST_CASE("weight system and evaluation for the 6-dim example") {
  auto g = sixdim_algebra();
  auto ws = build_weight_system(g);
  auto cs = ws.cspec;
  REQUIRE(ws.k == 2);
  REQUIRE(ws.dim == 6);

  // weights on <e1,e2>: 0,0 then (±1, ±i) with the sign pairs (1,i),(1,-i),(-1,-i),(-1,i)
  std::multiset<std::string> seen;
  for (size_t c = 2; c < 6; ++c)
    seen.insert(ws.weights[c][0].str() + "|" + ws.weights[c][1].str());
  std::multiset<std::string> expect;
  for (auto [a, b] : {std::pair{1, 1}, {1, -1}, {-1, -1}, {-1, 1}})
    expect.insert(fe(cs, a).str() + "|" + fe(cs, 0, b).str());
  CHECK(seen == expect);

  // rank-2 char lattice; every weight integral in it
  REQUIRE(ws.r == 2);
  for (size_t c = 0; c < 6; ++c) {
    RatVec e;
    for (const auto& x : ws.exponents[c]) e.push_back(Rational(x));
    auto f = ws.functional_of(e);
    CHECK(f[0] == ws.weights[c][0]);
    CHECK(f[1] == ws.weights[c][1]);
  }

  // lattice characters: A = exp((x1)) with |A(g)| = e^{t0}, and the unitary
  // B = exp(i·x2) with B(g) = e^{2πi} (trivial)
  LatticeEvaluation lat;
  lat.generators = {"g1"};
  lat.characters.push_back({"A", {fe(cs, 1), fe(cs, 0)}, {cv_mod_symbol("t0", Rational(1))}});
  lat.characters.push_back({"B", {fe(cs, 0), fe(cs, 0, 1)}, {cv_lift(Rational(1))}});
  auto t = build_char_table(ws, lat);

  // the weight (1, i) evaluates to A·B: nontrivial modulus e^{t0}
  auto vab = evaluate_functional({fe(cs, 1), fe(cs, 0, 1)}, lat, cs, 2);
  CHECK_FALSE(vab[0].is_one());
  LogReal t0;
  t0.add_term("t0", Rational(1));
  CHECK(vab[0].modulus == t0);
  CHECK(vab[0].phase.lift == 1);

  // the purely unitary weight direction is trivial on this lattice
  auto vb = evaluate_functional({fe(cs, 0), fe(cs, 0, 1)}, lat, cs, 2);
  CHECK(vb[0].is_one());

  // through the char table: each eigenvector's weight character evaluates consistently
  for (size_t c = 2; c < 6; ++c) {
    RatVec e;
    for (const auto& x : ws.exponents[c]) e.push_back(Rational(x));
    auto via_table = evaluate_exponent_at(t, e, 0);
    auto direct = evaluate_functional(ws.weights[c], lat, cs, 2);
    CHECK(via_table.modulus == direct[0].modulus);
    CHECK(via_table.phase_sym == direct[0].phase_sym);
    // lifts may differ by the choice of path only when exponents are non-integral;
    // here they are integral, so they agree exactly
    CHECK(via_table.phase == direct[0].phase);
  }
}

TEST_CASE("coefficients outside Q(i) are rejected") {
  auto spec = FieldSpec::complexified(FieldSpec{"Q(t)", "t", {Rational(-2), Rational(0), Rational(1)}, false});
  LatticeEvaluation lat;
  lat.generators = {"g1"};
  lat.characters.push_back({"chi", {FieldElement::generator(spec)}, {cv_lift(Rational(1, 3))}});
  // exp(1·x) = chi^{1/t} and 1/t = t/2 is not Gaussian
  CHECK_THROWS_AS(evaluate_functional({FieldElement::one(spec)}, lat, spec, 1), Error);
  // exp(t·x) = chi itself is fine
  auto v = evaluate_functional({FieldElement::generator(spec)}, lat, spec, 1);
  CHECK(v[0].phase.lift == Rational(1, 3));
}

TEST_CASE("cv_apply_gaussian is a homomorphism in the exponent") {
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> d(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  for (int iter = 0; iter < 200; ++iter) {
    CharacterValue v;
    v.modulus.add_term("s", Rational(d(rng), den(rng)));
    v.phase = Phase(Rational(d(rng), den(rng)));
    v.phase_sym.add_term("u", Rational(d(rng), den(rng)));
    CRat c1(Rational(d(rng), den(rng)), Rational(d(rng), den(rng)));
    CRat c2(Rational(d(rng), den(rng)), Rational(d(rng), den(rng)));
    auto lhs = cv_apply_gaussian(v, c1 + c2);
    auto rhs = cv_apply_gaussian(v, c1) * cv_apply_gaussian(v, c2);
    CHECK(lhs == rhs);
    // real exponents reduce to pow
    Rational q(d(rng), den(rng));
    CHECK(cv_apply_gaussian(v, CRat(q, Rational(0))) == v.pow(q));
  }
}

TEST_CASE("unitary parts and delta solving") {
  auto spec = FieldSpec::rationals(true);
  auto mk = [&](std::initializer_list<std::pair<int, int>> ps,
                std::initializer_list<std::pair<int, int>> qs) {
    ComplexWeight w;
    for (auto [a, b] : ps) w.p.push_back(fe(spec, a, b));
    for (auto [a, b] : qs) w.q.push_back(fe(spec, a, b));
    return w;
  };

  // alpha = exp(z): beta trivial, gamma = exp(z̄ - z)
  auto u1 = unitary_parts(mk({{1, 0}}, {{0, 0}}));
  CHECK(u1.beta.is_trivial());
  CHECK(u1.gamma == mk({{-1, 0}}, {{1, 0}}));

  // alpha = exp(z̄): beta = exp(z̄ - z), gamma trivial
  auto u2 = unitary_parts(mk({{0, 0}}, {{1, 0}}));
  CHECK(u2.beta == mk({{-1, 0}}, {{1, 0}}));
  CHECK(u2.gamma.is_trivial());

  // unitary alpha = exp(i(z + z̄)) is its own beta and the conjugate of its gamma
  auto a3 = mk({{0, 1}}, {{0, 1}});
  CHECK(a3.is_unitary());
  auto u3 = unitary_parts(a3);
  CHECK(u3.beta == a3);
  CHECK(u3.gamma == a3.inverse());

  // delta: conj(δ)/δ recomposes the unitary input
  auto d = solve_delta(mk({{-1, 0}}, {{1, 0}}));
  CHECK(d == mk({{1, 0}}, {{0, 0}}));
  CHECK_THROWS_AS(solve_delta(mk({{1, 0}}, {{0, 0}})), Error);

  // generic alpha on two variables: recomposition invariants hold inside unitary_parts
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> dd(-3, 3);
  for (int iter = 0; iter < 200; ++iter) {
    ComplexWeight w;
    for (int j = 0; j < 2; ++j) {
      w.p.push_back(fe(spec, dd(rng), dd(rng)));
      w.q.push_back(fe(spec, dd(rng), dd(rng)));
    }
    auto u = unitary_parts(w);  // throws on any broken invariant
    CHECK(u.beta.is_unitary());
    CHECK(u.gamma.is_unitary());
    CHECK((w * u.beta.inverse()).is_holomorphic());
    CHECK((w.conj_weight() * u.gamma.inverse()).is_holomorphic());
    auto dd2 = solve_delta(u.beta);
    CHECK((dd2.conj_weight() * dd2.inverse()) == u.beta);
  }
}
