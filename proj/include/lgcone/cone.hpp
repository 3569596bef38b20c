// Residue pairing, cone points and the regularity recursion that rebuilds a
// point of the Givental cone from its regular part and its u = 0 slice.
//
// Points are stored in the J-convention: F(t, u, z) = z phi_0 + t + P(u, z) +
// N(t, u, z) with F(t, u, -z) on the cone, P polynomial in z and N in z^-1.
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lgcone/hyperi.hpp"
#include "lgcone/model.hpp"
#include "lgcone/parallel.hpp"
#include "lgcone/series.hpp"

namespace lgcone {

using ScalarZSeries = ZSeries<Rational>;

/// (a(z), b(z)) with the pairing applied power by power.
inline Laurent<Rational> pair_laurent(const LgModel& model, const Laurent<StateVector>& a,
                                      const Laurent<StateVector>& b) {
  return multiply_laurent(a, b, [&](const StateVector& x, const StateVector& y) {
    return model.pair(x, y);
  });
}

/// Coefficient-wise (f(z), g(-z)) as a Laurent series in z.
inline ScalarZSeries pairing_series(const LgModel& model, const VectorZSeries& f,
                                    const VectorZSeries& g) {
  const VectorZSeries gm = negate_z(g);
  return series_mul(f, gm, [&](const Laurent<StateVector>& x, const Laurent<StateVector>& y) {
    return pair_laurent(model, x, y);
  });
}

/// Omega(f, g) = Res_{z=0} (f(z), g(-z)).
inline ScalarSeries omega_pairing(const LgModel& model, const VectorZSeries& f,
                                  const VectorZSeries& g) {
  return laurent_residue(pairing_series(model, f, g));
}

/// q(z) = t(z) - phi_0 z and back.
inline VectorZSeries dilaton_shift(const VectorZSeries& t) { return t - z_phi0(t.truncation()); }
inline VectorZSeries dilaton_unshift(const VectorZSeries& q) { return q + z_phi0(q.truncation()); }

struct ConePoint {
  VectorZSeries series;
  Truncation region;

  VectorZSeries regular_part() const { return positive_part(series); }
  VectorZSeries negative() const { return negative_part(series); }
  /// Regular part with the leading z phi_0 removed.
  VectorZSeries t_hat() const { return regular_part() - z_phi0(region); }
};

// ---------------------------------------------------------------------------
// Monomial enumeration

inline std::vector<Variable> narrow_variables(const LgModel& model, VarKind kind) {
  std::vector<Variable> vs;
  for (int k : model.narrow()) vs.push_back({kind, k});
  return vs;
}

/// All monomials in `vars` admitted by `tr`.
inline std::vector<Monomial> enumerate_monomials(const std::vector<Variable>& vars,
                                                 const Truncation& tr) {
  std::vector<Monomial> out;
  std::function<void(std::size_t, const Monomial&)> rec = [&](std::size_t i, const Monomial& m) {
    if (i == vars.size()) {
      out.push_back(m);
      return;
    }
    for (int e = 0;; ++e) {
      Monomial next = m;
      next.set(vars[i], e);
      if (!tr.admits(next)) break;
      if (e > 0 && next.total_degree() > 255) throw SeriesError("enumeration needs a bounded truncation");
      rec(i + 1, next);
    }
  };
  rec(0, Monomial{});
  return out;
}

/// Every monomial dividing m.
inline std::vector<Monomial> divisors(const Monomial& m) {
  std::vector<Monomial> out{Monomial{}};
  for (const Variable& v : m.support()) {
    const int e = m.exponent(v);
    const std::size_t base = out.size();
    for (int k = 1; k <= e; ++k)
      for (std::size_t i = 0; i < base; ++i) {
        Monomial d = out[i];
        d.set(v, k);
        out.push_back(d);
      }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Regularity relation

namespace detail {

/// [Q] of (d_{u^r} F(z), d_{t^s} F(-z)) for every narrow s, using what F
/// currently stores.
inline std::map<int, Laurent<Rational>> relation(const LgModel& model, const VectorZSeries& F,
                                                 const Monomial& q, int r) {
  const Variable ur = Variable::u(r);
  std::vector<std::pair<Monomial, Laurent<StateVector>>> left;
  for (const Monomial& alpha : divisors(q)) {
    const Laurent<StateVector>* a = F.find(alpha * Monomial::of(ur));
    if (!a) continue;
    Laurent<StateVector> scaled = *a;
    scaled *= Rational(alpha.exponent(ur) + 1);
    left.emplace_back(q.quotient(alpha), std::move(scaled));
  }
  std::map<int, Laurent<Rational>> out;
  for (int s : model.narrow()) {
    const Variable ts = Variable::t(s);
    Laurent<Rational> rel;
    for (const auto& [beta, a] : left) {
      const Laurent<StateVector>* b = F.find(beta * Monomial::of(ts));
      if (!b) continue;
      Laurent<StateVector> bm = b->negate_z();
      bm *= Rational(beta.exponent(ts) + 1);
      rel += pair_laurent(model, a, bm);
    }
    out.emplace(s, std::move(rel));
  }
  return out;
}

inline int smallest_u_sector(const Monomial& m) {
  for (int k = 0; k < kMaxSectors; ++k)
    if (m.u_exp(k) > 0) return k;
  return -1;
}

}  // namespace detail

/// Targets of the recursion: monomials in the region with at least one u,
/// grouped by (u count, t degree).
inline std::vector<std::vector<Monomial>> recursion_levels(const LgModel& model,
                                                           const Truncation& region) {
  std::vector<Variable> vars = narrow_variables(model, VarKind::u);
  for (const Variable& v : narrow_variables(model, VarKind::t)) vars.push_back(v);
  std::map<std::pair<int, int>, std::vector<Monomial>> levels;
  for (const Monomial& m : enumerate_monomials(vars, region))
    if (m.u_count() >= 1) levels[{m.u_count(), m.t_degree()}].push_back(m);
  std::vector<std::vector<Monomial>> out;
  for (auto& [k, ms] : levels) out.push_back(std::move(ms));
  return out;
}

/// Rebuilds the cone point with regular part z phi_0 + t + P(u, z) and u = 0
/// slice `base`, solving each regularity relation for its leading unknown.
inline ConePoint reconstruct(const LgModel& model, const VectorZSeries& P, const VectorZSeries& base,
                             const Truncation& region) {
  VectorZSeries F(region);
  for (const auto& [m, l] : base.terms()) {
    if (m.u_count() != 0) throw InconsistencyError("reconstruct: base depends on u");
    F.add_term(m, l);
  }
  for (const auto& [m, l] : P.terms()) {
    if (m.is_one()) throw InconsistencyError("reconstruct: f(0, z) must vanish");
    if (m.t_degree() != 0) throw InconsistencyError("reconstruct: f depends on t");
    if (l.min_power() < 0) throw InconsistencyError("reconstruct: f has negative z-powers");
    for (const auto& [p, v] : l.powers())
      for (const auto& [k, c] : v.components())
        if (!model.is_narrow(k)) throw InconsistencyError("reconstruct: f has a broad component");
    F.add_term(m, l);
  }
  for (int s : model.narrow()) {
    const Laurent<StateVector> expect = Laurent<StateVector>::single(0, StateVector::basis(s));
    const Laurent<StateVector>* got = F.find(Monomial::t(s));
    if (region.admits(Monomial::t(s)) && (!got || !(*got == expect))) {
      throw InconsistencyError("reconstruct: base is not of the form z phi_0 + t + O(t^2) at t" +
                               std::to_string(s));
    }
  }

  for (const auto& level : recursion_levels(model, region)) {
    std::vector<Laurent<StateVector>> solved(level.size());
    parallel_for(level.size(), [&](std::size_t i) {
      const Monomial& target = level[i];
      const int r = detail::smallest_u_sector(target);
      const Monomial q = target.quotient(Monomial::u(r));
      const Rational leading = target.u_exp(r);
      Laurent<StateVector> n;
      for (const auto& [s, rel] : detail::relation(model, F, q, r))
        for (const auto& [p, c] : rel.powers())
          if (p < 0) n.add(p, StateVector::basis(model.dual(s), -c / leading));
      solved[i] = std::move(n);
    });
    for (std::size_t i = 0; i < level.size(); ++i) F.add_term(level[i], solved[i]);
  }
  return {F, region};
}

struct RegularityViolation {
  int r = 0;
  int s = 0;
  Monomial monomial;  // t^m u^n of the relation
  int z_power = 0;
  Rational value;
};

struct RegularityReport {
  std::vector<RegularityViolation> violations;
  std::size_t relations_checked = 0;
  Truncation range;
  bool passed() const { return violations.empty(); }
};

/// Checks every (r, s) relation whose coefficient is complete in the region of F.
inline RegularityReport regularity_check(const LgModel& model, const VectorZSeries& F,
                                         std::vector<int> rs = {}) {
  if (rs.empty()) rs = model.narrow();
  RegularityReport report;
  report.range = F.truncation();
  const auto levels = recursion_levels(model, F.truncation());
  std::vector<Monomial> targets;
  for (const auto& level : levels) targets.insert(targets.end(), level.begin(), level.end());
  for (int r : rs) {
    std::vector<std::vector<RegularityViolation>> found(targets.size());
    std::vector<std::size_t> counted(targets.size(), 0);
    parallel_for(targets.size(), [&](std::size_t i) {
      const Monomial& target = targets[i];
      if (target.u_exp(r) == 0) return;
      const Monomial q = target.quotient(Monomial::u(r));
      for (const auto& [s, rel] : detail::relation(model, F, q, r)) {
        ++counted[i];
        for (const auto& [p, c] : rel.powers())
          if (p < 0) found[i].push_back({r, s, q, p, c});
      }
    });
    for (std::size_t i = 0; i < targets.size(); ++i) {
      report.relations_checked += counted[i];
      report.violations.insert(report.violations.end(), found[i].begin(), found[i].end());
    }
  }
  return report;
}

}  // namespace lgcone
