// End-to-end pipelines: sigma from the big I-function, the big J-function,
// the small mirror route, J^eps for every chamber, and chamber transport.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lgcone/cone.hpp"
#include "lgcone/hyperi.hpp"
#include "lgcone/invariants.hpp"

namespace lgcone {

/// Working orders: T_u bounds the u-weight, T_t the t-degree of reported data.
struct Orders {
  int t_u = 4;
  int t_t = 3;
  int u_count = Truncation::kUnbounded;
  int z_neg = Truncation::kUnbounded;
  int total = Truncation::kUnbounded;  // optional extra cap on |m| + |n|

  /// Region the recursion runs on; it contains the reported box.
  Truncation region() const {
    Truncation r;
    r.u_weight = t_u;
    r.u_count = u_count;
    r.total_degree = std::min(t_u + t_t, total);
    return r;
  }
  Truncation box() const {
    Truncation b = region();
    b.t_degree = t_t;
    return b;
  }
};

namespace detail {

template <class C>
std::vector<std::vector<std::pair<Monomial, C>>> by_level(const GradedSeries<C>& s, int levels) {
  std::vector<std::vector<std::pair<Monomial, C>>> out(levels + 1);
  for (const auto& [m, c] : s.terms())
    if (m.total_degree() <= levels) out[m.total_degree()].emplace_back(m, c);
  return out;
}

inline int count_cap(const Truncation& tr) {
  if (tr.u_weight != Truncation::kUnbounded || tr.t_degree != Truncation::kUnbounded) {
    throw SeriesError("expected a truncation by total degree only");
  }
  const int c = std::min(tr.u_count, tr.total_degree);
  if (c == Truncation::kUnbounded) throw SeriesError("expected a bounded total degree");
  return c;
}

inline VectorSeries identity_vector(const std::vector<int>& sectors, VarKind kind, Truncation tr) {
  VectorSeries v(tr);
  for (int k : sectors) v.add_term(Monomial::of({kind, k}), StateVector::basis(k));
  return v;
}

}  // namespace detail

struct SigmaResult {
  VectorSeries sigma;           // z^0 coefficient of the normalized point
  VectorZSeries point;          // z phi_0 + sigma(u) + O(1/z), on the cone
  std::map<int, ScalarZSeries> multipliers;  // c_r(u, z) in front of z d_{u^r} I
};

/// Birkhoff-type elimination: adds C[z]-combinations of z d_{u^r} I to I,
/// level by level in the number of u's, until only z phi_0 remains in z^{>=1}.
inline SigmaResult sigma_extract(const LgModel& model, const VectorZSeries& I) {
  const Truncation tr = I.truncation();
  const int cap = detail::count_cap(tr);
  const VectorZSeries leading = z_phi0(tr);
  if (!(VectorZSeries::constant(I.coefficient(Monomial{}), tr) == leading)) {
    throw SeriesError("sigma_extract: I(0) must be z phi_0");
  }
  for (const auto& [m, l] : I.terms())
    for (const auto& [p, v] : l.powers())
      for (const auto& [k, c] : v.components())
        if (!model.is_narrow(k)) throw SeriesError("sigma_extract: project I to the narrow sector first");

  std::map<int, std::vector<std::vector<std::pair<Monomial, Laurent<StateVector>>>>> dz;
  for (int r : model.narrow()) {
    dz[r] = detail::by_level(times_z(derivative(I, Variable::u(r)), 1), cap);
    const auto& lvl0 = dz[r][0];
    const auto expect = Laurent<StateVector>::single(1, StateVector::basis(r));
    if (lvl0.size() != 1 || !(lvl0[0].second == expect)) {
      throw SeriesError("sigma_extract: linear part of I is not sum u^r phi_r");
    }
  }
  std::map<int, std::vector<std::vector<std::pair<Monomial, Laurent<Rational>>>>> mult;
  for (int r : model.narrow()) mult[r].resize(cap + 1);

  VectorZSeries G = I;
  for (int c = 1; c <= cap; ++c) {
    for (int r : model.narrow())
      for (int c1 = 1; c1 < c; ++c1)
        for (const auto& [m1, l1] : mult[r][c1])
          for (const auto& [m2, l2] : dz[r][c - c1]) {
            G.add_term(m1 * m2, multiply_laurent(l1, l2, [](const Rational& x, const StateVector& y) {
                         return multiply(x, y);
                       }));
          }
    std::vector<std::pair<Monomial, Laurent<StateVector>>> level;
    for (const auto& [m, l] : G.terms())
      if (m.total_degree() == c) level.emplace_back(m, l);
    for (const auto& [m, l] : level) {
      for (int r : model.narrow()) {
        Laurent<Rational> cr;
        for (const auto& [p, v] : l.powers())
          if (p >= 1) cr.add(p - 1, -v[r]);
        if (cr.is_zero()) continue;
        mult[r][c].emplace_back(m, cr);
        G.add_term(m, multiply_laurent(cr, dz[r][0][0].second,
                                       [](const Rational& x, const StateVector& y) { return multiply(x, y); }));
      }
    }
  }

  SigmaResult out{VectorSeries(tr), G, {}};
  for (const auto& [m, l] : G.terms()) {
    if (!m.is_one() && l.max_power() >= 1) {
      throw InconsistencyError("sigma_extract: z^{>=1} terms survive the elimination");
    }
  }
  out.sigma = z_coefficient(G, 0);
  const VectorSeries linear = detail::identity_vector(model.narrow(), VarKind::u, tr);
  const VectorSeries low = out.sigma.filtered([](const Monomial& m) { return m.total_degree() <= 1; });
  if (!(low == linear)) throw InconsistencyError("sigma_extract: sigma(u) is not u + O(u^2)");
  for (int r : model.narrow()) {
    ScalarZSeries s(tr);
    for (int c = 1; c <= cap; ++c)
      for (const auto& [m, l] : mult[r][c]) s.add_term(m, l);
    out.multipliers[r] = s;
  }
  return out;
}

struct BigJ {
  VectorZSeries J;  // z phi_0 + t + sum_k phi^k <<phi_k / (z - psi)>>(t), t narrow primary
  SigmaResult sigma;
  Substitution sigma_inverse;
  Truncation truncation;

  ConePoint point() const { return {J, truncation}; }
};

/// J(t) = G(sigma^{-1}(t)) with G the normalized big I point.
inline BigJ big_J(const LgModel& model, int total_degree) {
  const Truncation tr = Truncation::total(total_degree);
  BigJ out;
  out.truncation = tr;
  out.sigma = sigma_extract(model, project_narrow(model, big_I(model, tr)));
  out.sigma_inverse = series_reversion(as_substitution(out.sigma.sigma, model.narrow(), VarKind::u));
  out.J = rename_variables(series_compose(out.sigma.point, out.sigma_inverse, tr), VarKind::u,
                           VarKind::t, tr);
  const VectorSeries z0 = z_coefficient(out.J, 0);
  if (!(z0 == detail::identity_vector(model.narrow(), VarKind::t, tr))) {
    throw InconsistencyError("big_J: z^0 part is not t");
  }
  return out;
}

inline InvariantTable big_J_table(const LgModel& model, const BigJ& bj, int z_neg = Truncation::kUnbounded) {
  Truncation box = bj.truncation;
  box.t_degree = detail::count_cap(bj.truncation);
  InvariantTable t = extract_invariants(model, negative_part(bj.J), Epsilon::infinity(), box, "big_J", z_neg);
  t.t_u = 0;
  t.t_t = box.t_degree;
  return t;
}

struct MirrorSmall {
  VectorZSeries J;  // t over the degree <= 1 sectors only
  ScalarSeries I0;
  VectorSeries eta;
  Substitution eta_inverse;
  Truncation truncation;
};

/// J restricted to the small directions: (I / I_0) composed with eta^{-1}.
inline MirrorSmall mirror_small(const LgModel& model, int total_degree) {
  const Truncation tr = Truncation::total(total_degree);
  const std::vector<int> sectors = model.small_sectors();
  MirrorSmall out;
  out.truncation = tr;
  const VectorZSeries I = project_narrow(model, small_I(model, tr));
  VectorSeries i1;
  std::tie(out.I0, i1) = I0_I1(I);
  const ScalarSeries inv0 = series_invert(out.I0);
  out.eta = scale_by(inv0, i1);
  out.eta_inverse = series_reversion(as_substitution(out.eta, sectors, VarKind::u));
  out.J = rename_variables(series_compose(scale_by(inv0, I), out.eta_inverse, tr), VarKind::u,
                           VarKind::t, tr);
  if (!(z_coefficient(out.J, 0) == detail::identity_vector(sectors, VarKind::t, tr))) {
    throw InconsistencyError("mirror_small: z^0 part is not t");
  }
  return out;
}

inline InvariantTable mirror_small_table(const LgModel& model, const MirrorSmall& ms,
                                         int z_neg = Truncation::kUnbounded) {
  Truncation box = ms.truncation;
  box.t_degree = detail::count_cap(ms.truncation);
  InvariantTable t =
      extract_invariants(model, negative_part(ms.J), Epsilon::infinity(), box, "mirror_small", z_neg);
  t.t_u = 0;
  t.t_t = box.t_degree;
  return t;
}

/// Big J restricted to t^k = 0 outside `sectors`.
inline VectorZSeries restrict_t(const VectorZSeries& J, const std::vector<int>& sectors) {
  return J.filtered([&](const Monomial& m) {
    for (const Variable& v : m.support())
      if (v.kind == VarKind::t && std::find(sectors.begin(), sectors.end(), v.sector) == sectors.end())
        return false;
    return true;
  });
}

struct JEpsilon {
  Epsilon epsilon = Epsilon::infinity();
  Orders orders;
  ConePoint point;
  VectorZSeries regular_input;      // P(u, z): z^{>=0} unstable part minus z phi_0
  VectorZSeries unstable_negative;  // closed-form negative unstable part
  InvariantTable table;
};

inline JEpsilon j_epsilon(const LgModel& model, const Epsilon& eps, const Orders& orders,
                          const BigJ* base = nullptr) {
  const Truncation region = orders.region();
  const int cap = region.max_total_degree();
  std::optional<BigJ> own;
  if (!base || detail::count_cap(base->truncation) < cap) {
    own = big_J(model, cap);
    base = &*own;
  }
  const VectorZSeries U = project_narrow(model, unstable_sum(model, eps, region));
  JEpsilon out;
  out.epsilon = eps;
  out.orders = orders;
  out.regular_input = positive_part(U).filtered([](const Monomial& m) { return !m.is_one(); });
  out.unstable_negative = negative_part(U);
  out.point = reconstruct(model, out.regular_input, base->J, region);
  out.table = extract_invariants(model, negative_part(out.point.series) - out.unstable_negative, eps,
                                 orders.box(), "j_epsilon", orders.z_neg);
  out.table.t_u = orders.t_u;
  out.table.t_t = orders.t_t;
  return out;
}

struct TransportReport {
  std::size_t compared = 0;
  std::vector<std::string> mismatches;
  std::vector<Monomial> excluded;  // u-monomials whose multiples are out of the complete range
  Truncation range;
  bool passed() const { return mismatches.empty(); }
};

/// F^eps(tau^eps(t, u), u, z) / J_0^eps(u) for the primary part of tau.
inline VectorZSeries transported(const LgModel& model, const JEpsilon& je) {
  const Truncation region = je.point.region;
  const TauChange tau = tau_change(model, je.epsilon, region);
  const Substitution sub = tau.primary_substitution(model, region);
  return scale_by(series_invert(tau.J0), series_compose(je.point.series, sub, region));
}

inline TransportReport transport_check(const LgModel& model, const Epsilon& e1, const Epsilon& e2,
                                       const Orders& orders, const BigJ* base = nullptr) {
  std::optional<BigJ> own;
  if (!base) {
    own = big_J(model, orders.region().max_total_degree());
    base = &*own;
  }
  const JEpsilon a = j_epsilon(model, e1, orders, base);
  const JEpsilon b = j_epsilon(model, e2, orders, base);
  TransportReport report;
  report.range = orders.region();
  for (const Epsilon& e : {e1, e2})
    for (const Monomial& m : regular_part_data(model, e, report.range).descendant_monomials)
      if (std::find(report.excluded.begin(), report.excluded.end(), m) == report.excluded.end())
        report.excluded.push_back(m);

  const VectorZSeries lhs = transported(model, a);
  const VectorZSeries rhs = transported(model, b);
  auto complete = [&](const Monomial& m) {
    for (const Monomial& s : report.excluded)
      if (s.divides(m)) return false;
    return true;
  };
  std::set<Monomial> monomials;
  for (const auto& [m, l] : lhs.terms()) monomials.insert(m);
  for (const auto& [m, l] : rhs.terms()) monomials.insert(m);
  for (const Monomial& m : monomials) {
    if (!complete(m)) continue;
    const Laurent<StateVector> x = lhs.coefficient(m);
    const Laurent<StateVector> y = rhs.coefficient(m);
    std::set<std::pair<int, int>> slots;
    for (const auto* l : {&x, &y})
      for (const auto& [p, v] : l->powers())
        for (const auto& [k, c] : v.components()) slots.insert({p, k});
    for (const auto& [p, k] : slots) {
      ++report.compared;
      const Rational cx = x.coefficient(p)[k];
      const Rational cy = y.coefficient(p)[k];
      if (cx != cy) {
        report.mismatches.push_back("z^" + std::to_string(p) + detail::monomial_text(m) + " phi_" +
                                    std::to_string(k) + ": " + to_string(cx) + " vs " + to_string(cy));
      }
    }
  }
  return report;
}

}  // namespace lgcone
