#pragma once

/*
 * Finite Lie-algebra presentations with a declared splitting g = V ⊕ n.
 *
 * Structure constants are exact field elements; validate() checks antisymmetry (implicit
 * in storage), the Jacobi identity, solvability, that span(n) is a nilpotent ideal
 * containing [g,g], unimodularity (trace ad = 0, necessary for a lattice to exist), and
 * the V-condition (ad_A)_s(B) = 0 for A,B in V, which makes ad_s well defined.
 *
 * compute_ad_s produces the semisimple parts of ad_A for the V-generators; these commute
 * pairwise, vanish on V, and act as commuting semisimple derivations preserving n.
 */

#include "weights.hpp"

#include <map>
#include <set>
#include <string>

namespace solvco {

struct CheckResult {
  std::string name;
  bool pass;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool ok() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

class LieAlgebraPresentation {
 public:
  LieAlgebraPresentation() = default;
  LieAlgebraPresentation(FieldSpecPtr spec, size_t dim, std::vector<std::string> names,
                         std::vector<size_t> v_indices, std::vector<size_t> n_indices)
      : spec_(std::move(spec)), dim_(dim), names_(std::move(names)),
        v_(std::move(v_indices)), n_(std::move(n_indices)) {
    if (names_.empty())
      for (size_t k = 0; k < dim_; ++k) names_.push_back("e" + std::to_string(k + 1));
  }

  const FieldSpecPtr& spec() const { return spec_; }
  size_t dim() const { return dim_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<size_t>& v_indices() const { return v_; }
  const std::vector<size_t>& n_indices() const { return n_; }

  void set_bracket(size_t j, size_t k, size_t i, const FieldElement& c) {
    if (j == k)
      throw Error(ErrKind::InvalidInput, "bracket [x,x] must vanish");
    if (j < k)
      c_[{j, k}][i] = c_.count({j, k}) && c_[{j, k}].count(i) ? c_[{j, k}][i] + c : c;
    else
      set_bracket(k, j, i, -c);
    prune(j < k ? std::pair<size_t, size_t>{j, k} : std::pair<size_t, size_t>{k, j});
  }

  FieldElement c(size_t i, size_t j, size_t k) const {  // coefficient of e_i in [e_j, e_k]
    if (j == k) return FieldElement::zero(spec_);
    if (j > k) return -c(i, k, j);
    auto it = c_.find({j, k});
    if (it == c_.end()) return FieldElement::zero(spec_);
    auto jt = it->second.find(i);
    return jt == it->second.end() ? FieldElement::zero(spec_) : jt->second;
  }

  std::vector<FieldElement> bracket_basis(size_t j, size_t k) const {
    std::vector<FieldElement> out(dim_, FieldElement::zero(spec_));
    for (size_t i = 0; i < dim_; ++i) out[i] = c(i, j, k);
    return out;
  }

  std::vector<FieldElement> bracket(const std::vector<FieldElement>& x,
                                    const std::vector<FieldElement>& y) const {
    std::vector<FieldElement> out(dim_, FieldElement::zero(spec_));
    for (size_t j = 0; j < dim_; ++j) {
      if (x[j].is_zero()) continue;
      for (size_t k = 0; k < dim_; ++k) {
        if (y[k].is_zero() || j == k) continue;
        FieldElement f = x[j] * y[k];
        for (size_t i = 0; i < dim_; ++i) {
          FieldElement ci = c(i, j, k);
          if (!ci.is_zero()) out[i] = out[i] + ci * f;
        }
      }
    }
    return out;
  }

  Matrix ad(size_t j) const {
    Matrix m(spec_, dim_, dim_);
    for (size_t k = 0; k < dim_; ++k)
      for (size_t i = 0; i < dim_; ++i) m.at(i, k) = c(i, j, k);
    return m;
  }

  Matrix ad_vec(const std::vector<FieldElement>& x) const {
    Matrix m(spec_, dim_, dim_);
    for (size_t j = 0; j < dim_; ++j) {
      if (x[j].is_zero()) continue;
      Matrix aj = ad(j);
      m = m + aj.scaled(x[j]);
    }
    return m;
  }

  LieAlgebraPresentation complexify() const {
    auto cs = FieldSpec::complexified(*spec_);
    LieAlgebraPresentation out(cs, dim_, names_, v_, n_);
    for (const auto& [jk, row] : c_)
      for (const auto& [i, v] : row) out.c_[jk][i] = v.lift_to(cs);
    return out;
  }

  ValidationReport validate() const {
    ValidationReport rep;
    auto add = [&](const std::string& name, bool pass, const std::string& detail = "") {
      rep.checks.push_back({name, pass, detail});
    };

    // index sanity
    {
      std::set<size_t> seen;
      bool ok = true;
      for (size_t idx : v_) ok = ok && idx < dim_ && seen.insert(idx).second;
      for (size_t idx : n_) ok = ok && idx < dim_ && seen.insert(idx).second;
      ok = ok && seen.size() == dim_;
      add("splitting_indices", ok, ok ? "" : "v_indices/n_indices must partition 0..dim-1");
      if (!ok) return rep;
    }

    // Jacobi
    {
      bool ok = true;
      std::string det;
      for (size_t a = 0; a < dim_ && ok; ++a)
        for (size_t b = a + 1; b < dim_ && ok; ++b)
          for (size_t cc = b + 1; cc < dim_ && ok; ++cc) {
            auto ea = unit(a), eb = unit(b), ec = unit(cc);
            auto s = add_vec(add_vec(bracket(ea, bracket(eb, ec)), bracket(eb, bracket(ec, ea))),
                             bracket(ec, bracket(ea, eb)));
            if (!vec_zero(s)) {
              ok = false;
              det = "Jacobi fails on (" + names_[a] + "," + names_[b] + "," + names_[cc] + ")";
            }
          }
      add("jacobi", ok, det);
      if (!ok) return rep;
    }

    // [g,g] ⊆ n, n ideal, n nilpotent, g solvable, unimodular
    add("derived_in_n", derived_in_n(), "");
    add("n_ideal", n_is_ideal(), "");
    add("n_nilpotent", n_nilpotent(), "");
    add("solvable", solvable(), "");
    {
      bool ok = true;
      for (size_t j = 0; j < dim_; ++j)
        if (!ad(j).trace().is_zero()) ok = false;
      add("unimodular", ok, ok ? "" : "trace ad != 0: no lattice can exist");
    }

    // V-condition: (ad_A)_s(B) = 0 for A, B in V
    {
      bool ok = true;
      std::string det;
      try {
        for (size_t a : v_) {
          auto jp = jordan_chevalley(ad(a));
          for (size_t b : v_) {
            auto img = jp.s.apply(unit(b));
            if (!vec_zero(img)) {
              ok = false;
              det = "(ad_" + names_[a] + ")_s(" + names_[b] + ") != 0";
            }
          }
        }
      } catch (const Error& e) {
        ok = false;
        det = e.what();
      }
      add("v_condition", ok, det);
    }
    return rep;
  }

  /** Semisimple parts of ad_A for the declared V-generators (order of v_indices),
   *  with the derivation/commutation/semisimplicity invariants checked. */
  std::vector<Matrix> compute_ad_s() const {
    std::vector<Matrix> fam;
    for (size_t a : v_) fam.push_back(jordan_chevalley(ad(a)).s);
    for (size_t x = 0; x < fam.size(); ++x)
      for (size_t y = x + 1; y < fam.size(); ++y)
        if (!fam[x].commutes_with(fam[y]))
          throw Error(ErrKind::Hypothesis, "ad_s maps do not commute");
    check_derivations(fam);
    return fam;
  }

  void check_derivations(const std::vector<Matrix>& fam) const {
    for (const auto& d : fam) {
      for (size_t a = 0; a < dim_; ++a)
        for (size_t b = a + 1; b < dim_; ++b) {
          auto lhs = d.apply(bracket_basis(a, b));
          auto rhs = add_vec(bracket(d.col(a), unit(b)), bracket(unit(a), d.col(b)));
          if (!vec_eq(lhs, rhs))
            throw Error(ErrKind::Hypothesis, "ad_s is not a derivation");
        }
      // vanishing on V
      for (size_t a : v_)
        if (!vec_zero(d.apply(unit(a))))
          throw Error(ErrKind::Hypothesis, "ad_s does not vanish on V");
      // preserves n: columns of d at n-indices stay in span(n)
      std::set<size_t> nset(n_.begin(), n_.end());
      for (size_t j = 0; j < dim_; ++j) {
        auto v = d.col(j);
        for (size_t i = 0; i < dim_; ++i)
          if (!v[i].is_zero() && !nset.count(i))
            throw Error(ErrKind::Hypothesis, "ad_s image leaves n");
      }
    }
  }

  std::vector<FieldElement> unit(size_t k) const {
    std::vector<FieldElement> v(dim_, FieldElement::zero(spec_));
    v[k] = FieldElement::one(spec_);
    return v;
  }

  static std::vector<FieldElement> add_vec(std::vector<FieldElement> a,
                                           const std::vector<FieldElement>& b) {
    for (size_t k = 0; k < a.size(); ++k) a[k] = a[k] + b[k];
    return a;
  }
  static bool vec_zero(const std::vector<FieldElement>& v) {
    for (const auto& x : v)
      if (!x.is_zero()) return false;
    return true;
  }
  static bool vec_eq(const std::vector<FieldElement>& a, const std::vector<FieldElement>& b) {
    for (size_t k = 0; k < a.size(); ++k)
      if (a[k] != b[k]) return false;
    return true;
  }

  const std::map<std::pair<size_t, size_t>, std::map<size_t, FieldElement>>& constants() const {
    return c_;
  }

 private:
  FieldSpecPtr spec_;
  size_t dim_ = 0;
  std::vector<std::string> names_;
  std::vector<size_t> v_, n_;
  // (j,k) with j<k -> { i -> c^i_{jk} }
  std::map<std::pair<size_t, size_t>, std::map<size_t, FieldElement>> c_;

  void prune(std::pair<size_t, size_t> jk) {
    auto it = c_.find(jk);
    if (it == c_.end()) return;
    for (auto jt = it->second.begin(); jt != it->second.end();)
      jt = jt->second.is_zero() ? it->second.erase(jt) : std::next(jt);
    if (it->second.empty()) c_.erase(it);
  }

  bool derived_in_n() const {
    std::set<size_t> nset(n_.begin(), n_.end());
    for (const auto& [jk, row] : c_)
      for (const auto& [i, v] : row)
        if (!v.is_zero() && !nset.count(i)) return false;
    return true;
  }

  bool n_is_ideal() const {
    std::set<size_t> nset(n_.begin(), n_.end());
    for (size_t j = 0; j < dim_; ++j)
      for (size_t k : n_) {
        auto b = bracket_basis(std::min(j, k), std::max(j, k));
        for (size_t i = 0; i < dim_; ++i)
          if (!b[i].is_zero() && !nset.count(i)) return false;
      }
    return true;
  }

  /** Lower central series of span(n) terminates at 0. */
  bool n_nilpotent() const {
    std::vector<std::vector<FieldElement>> base;
    for (size_t k : n_) base.push_back(unit(k));
    std::vector<std::vector<FieldElement>> cur = span_basis(base);
    for (size_t step = 0; step <= dim_ + 1; ++step) {
      if (cur.empty()) return true;
      std::vector<std::vector<FieldElement>> next;
      for (const auto& x : base)
        for (const auto& y : cur) next.push_back(bracket(x, y));
      next = span_basis(next);
      if (next.size() >= cur.size()) return false;  // stabilized nonzero
      cur = std::move(next);
    }
    return false;
  }

  bool solvable() const {
    std::vector<std::vector<FieldElement>> cur;
    for (size_t k = 0; k < dim_; ++k) cur.push_back(unit(k));
    for (size_t step = 0; step <= dim_ + 1; ++step) {
      cur = span_basis(cur);
      if (cur.empty()) return true;
      std::vector<std::vector<FieldElement>> next;
      for (size_t a = 0; a < cur.size(); ++a)
        for (size_t b = a + 1; b < cur.size(); ++b) next.push_back(bracket(cur[a], cur[b]));
      next = span_basis(next);
      if (next.size() == cur.size()) return false;
      cur = std::move(next);
    }
    return false;
  }

  std::vector<std::vector<FieldElement>> span_basis(
      const std::vector<std::vector<FieldElement>>& vecs) const {
    if (vecs.empty()) return {};
    Matrix m(spec_, vecs.size(), dim_);
    for (size_t r = 0; r < vecs.size(); ++r)
      for (size_t c2 = 0; c2 < dim_; ++c2) m.at(r, c2) = vecs[r][c2];
    auto e = m.echelon();
    std::vector<std::vector<FieldElement>> out;
    for (size_t r = 0; r < e.rank; ++r) {
      std::vector<FieldElement> v;
      for (size_t c2 = 0; c2 < dim_; ++c2) v.push_back(e.rref.at(r, c2));
      out.push_back(std::move(v));
    }
    return out;
  }
};

}  // namespace solvco
