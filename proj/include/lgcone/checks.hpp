// Verification checks with machine-readable reports. Each returns a JSON
// object with "check", "status" ("pass" / "fail") and the range it covers.
#pragma once

#include <string>
#include <vector>

#include "lgcone/io.hpp"
#include "lgcone/pipelines.hpp"

namespace lgcone {

inline Json status_json(const std::string& check, bool pass) {
  return Json{{"check", check}, {"status", pass ? "pass" : "fail"}};
}

inline bool passed(const Json& report) { return report.value("status", "") == "pass"; }

/// Adds 1 to the first stored negative-power coefficient at u-count >= 1.
/// Returns a description of the perturbed coefficient.
inline Json inject_fault(VectorZSeries& F) {
  for (const auto& [m, l] : F.terms()) {
    if (m.u_count() == 0 || l.min_power() >= 0) continue;
    const int p = l.min_power();
    const int k = l.powers().begin()->second.components().begin()->first;
    const Monomial where = m;
    F.add_term(where, Laurent<StateVector>::single(p, StateVector::basis(k, 1)));
    return Json{{"monomial", monomial_json(where)}, {"z_power", p}, {"sector", k}, {"delta", "1"}};
  }
  throw SeriesError("inject_fault: no negative-part coefficient to perturb");
}

inline Json check_regularity(const LgModel& model, const Epsilon& eps, const Orders& orders,
                             bool fault = false) {
  JEpsilon je = j_epsilon(model, eps, orders);
  Json injected = nullptr;
  if (fault) injected = inject_fault(je.point.series);
  const RegularityReport rep = regularity_check(model, je.point.series);
  Json report = status_json("regularity", rep.passed());
  report["epsilon"] = eps.to_string();
  report["range"] = truncation_json(rep.range);
  report["relations_checked"] = rep.relations_checked;
  report["violation_count"] = rep.violations.size();
  Json vs = Json::array();
  for (std::size_t i = 0; i < rep.violations.size() && i < 20; ++i) {
    const auto& v = rep.violations[i];
    vs.push_back(Json{{"r", v.r}, {"s", v.s}, {"monomial", monomial_json(v.monomial)},
                      {"z_power", v.z_power}, {"value", to_string(v.value)}});
  }
  report["violations"] = vs;
  if (fault) report["injected_fault"] = injected;
  return report;
}

/// eps -> 0 round trip: the t = 0 slice of the reconstructed point equals the
/// narrow negative part of the big I-function.
inline Json check_cor4(const LgModel& model, int t_u) {
  Orders o;
  o.t_u = t_u;
  o.t_t = 0;
  const JEpsilon je = j_epsilon(model, Epsilon::zero(), o);
  const VectorZSeries slice =
      negative_part(je.point.series).filtered([](const Monomial& m) { return m.t_degree() == 0; });
  const VectorZSeries I = negative_part(project_narrow(model, big_I(model, o.region())));
  std::size_t mism = 0;
  std::set<Monomial> ms;
  for (const auto& [m, l] : slice.terms()) ms.insert(m);
  for (const auto& [m, l] : I.terms()) ms.insert(m);
  for (const Monomial& m : ms)
    if (!(slice.coefficient(m) == I.coefficient(m))) ++mism;
  Json report = status_json("cor4", mism == 0);
  report["range"] = truncation_json(o.region());
  report["monomials_compared"] = ms.size();
  report["mismatches"] = mism;
  return report;
}

inline Json check_transport(const LgModel& model, const Epsilon& e1, const Epsilon& e2,
                            const Orders& orders) {
  const TransportReport rep = transport_check(model, e1, e2, orders);
  Json report = status_json("transport", rep.passed());
  report["epsilon"] = Json::array({e1.to_string(), e2.to_string()});
  report["range"] = truncation_json(rep.range);
  Json excl = Json::array();
  for (const Monomial& m : rep.excluded) excl.push_back(monomial_json(m));
  report["excluded_multiples_of"] = excl;
  report["coefficients_compared"] = rep.compared;
  report["mismatches"] = rep.mismatches;
  return report;
}

inline Json check_string(const LgModel& model, int t_t) {
  const InvariantTable table = big_J_table(model, big_J(model, t_t));
  const CheckReport rep = string_dilaton_check(table);
  Json report = status_json("string", rep.passed() && rep.compared > 0);
  report["t_degree"] = t_t;
  report["pairs_compared"] = rep.compared;
  report["mismatches"] = rep.mismatches;
  return report;
}

inline Substitution identity_substitution(const std::vector<int>& sectors, Truncation tr) {
  Substitution id;
  for (int k : sectors) id[Variable::u(k)] = variable_series(Variable::u(k), tr);
  return id;
}

inline bool substitutions_equal(const Substitution& a, const Substitution& b) {
  if (a.size() != b.size()) return false;
  for (const auto& [v, s] : a) {
    auto it = b.find(v);
    if (it == b.end() || !(it->second == s)) return false;
  }
  return true;
}

/// sigma(u) = u + O(u^2) and sigma o sigma^{-1} = sigma^{-1} o sigma = id.
inline Json check_sigma(const LgModel& model, int order) {
  const Truncation tr = Truncation::total(order);
  const SigmaResult sr = sigma_extract(model, project_narrow(model, big_I(model, tr)));
  const Substitution s = as_substitution(sr.sigma, model.narrow(), VarKind::u);
  const Substitution inv = series_reversion(s);
  const Substitution id = identity_substitution(model.narrow(), tr);
  bool linear_ok = true;
  for (const auto& [v, series] : s)
    for (const auto& [m, c] : series.terms())
      if (m.u_weight() < 2 && !(m == Monomial::of(v) && c == 1)) linear_ok = false;
  const bool forward = substitutions_equal(compose_substitutions(s, inv, tr), id);
  const bool backward = substitutions_equal(compose_substitutions(inv, s, tr), id);
  Json report = status_json("sigma", linear_ok && forward && backward);
  report["order"] = order;
  report["sigma_is_u_plus_higher"] = linear_ok;
  report["sigma_after_inverse_is_id"] = forward;
  report["inverse_after_sigma_is_id"] = backward;
  return report;
}

/// Small mirror route against the big J-function on the shared directions,
/// plus J_big(eta(u)) = I(u) / I_0(u).
inline Json check_routes(const LgModel& model, int order) {
  const Truncation tr = Truncation::total(order);
  const BigJ bj = big_J(model, order);
  const MirrorSmall ms = mirror_small(model, order);
  const std::vector<int> sectors = model.small_sectors();
  const VectorZSeries restricted = restrict_t(bj.J, sectors);
  const bool same_J = restricted == ms.J;

  const Substitution eta = as_substitution(ms.eta, sectors, VarKind::u);
  const Substitution id = identity_substitution(sectors, tr);
  const bool eta_round_trip = substitutions_equal(compose_substitutions(eta, ms.eta_inverse, tr), id) &&
                              substitutions_equal(compose_substitutions(ms.eta_inverse, eta, tr), id);

  Substitution t_to_eta;
  for (int k : sectors) t_to_eta[Variable::t(k)] = eta.at(Variable::u(k));
  const VectorZSeries lhs = series_compose(restricted, t_to_eta, tr);
  const VectorZSeries I = project_narrow(model, small_I(model, tr));
  const VectorZSeries rhs = scale_by(series_invert(ms.I0), I);
  const bool mirror = lhs == rhs;

  const InvariantTable big = big_J_table(model, bj);
  const InvariantTable small = mirror_small_table(model, ms);
  std::size_t shared = 0;
  std::vector<std::string> diffs;
  for (const auto& [key, e] : small.entries) {
    ++shared;
    if (big.value(key) != e.value) diffs.push_back(key.to_string());
  }
  Json report = status_json("routes", same_J && eta_round_trip && mirror && diffs.empty());
  report["order"] = order;
  report["small_route_equals_big_J"] = same_J;
  report["eta_round_trip"] = eta_round_trip;
  report["I_over_I0_equals_J_of_eta"] = mirror;
  report["entries_compared"] = shared;
  report["entry_mismatches"] = diffs;
  return report;
}

/// Every key with m heavy (m <= max_heavy) and n light (n <= max_light)
/// points: selection-rule vanishing and, for nonzero values, the degree and
/// divisibility constraints.
inline CheckReport selection_sweep(const LgModel& model, const InvariantTable& table, int max_heavy,
                                   int max_light, int max_psi) {
  CheckReport rep;
  for (const std::string& v : table.violations) rep.mismatches.push_back(v);
  const int d = model.degree();
  std::vector<std::vector<int>> multisets;
  std::function<void(std::vector<int>&, int, int)> gen = [&](std::vector<int>& cur, int from, int left) {
    multisets.push_back(cur);
    if (left == 0) return;
    for (int k = from; k < d; ++k) {
      cur.push_back(k);
      gen(cur, k, left - 1);
      cur.pop_back();
    }
  };
  std::vector<int> cur;
  gen(cur, 0, std::max(max_heavy - 1, max_light));
  for (const auto& others : multisets) {
    if (static_cast<int>(others.size()) > max_heavy - 1) continue;
    for (int k = 0; k < d; ++k)
      for (int j = 0; j <= max_psi; ++j)
        for (const auto& light : multisets) {
          if (static_cast<int>(light.size()) > max_light) continue;
          if (table.epsilon.kind() == Epsilon::Kind::infinity && !light.empty()) continue;
          CorrelatorKey key;
          key.epsilon = table.epsilon;
          for (int h : others) key.heavy.emplace_back(h, 0);
          key.heavy.emplace_back(k, j);
          key.light = light;
          ++rep.compared;
          const Rational v = table.value(key);
          const Vanishing why = trivially_zero(model, key);
          if (why != Vanishing::none && !is_zero(v)) {
            rep.mismatches.push_back(key.canonical().to_string() + " = " + to_string(v) + " but " +
                                     to_string(why));
          }
          if (!is_zero(v)) {
            const Rational wd = witten_degree(model, key);
            int sum = 2;
            for (const auto& h : key.heavy) sum += h.first;
            for (int l : key.light) sum += l;
            if (wd != key.psi_total() || sum % d != 0) {
              rep.mismatches.push_back(key.canonical().to_string() + " violates degree/divisibility");
            }
          }
        }
  }
  return rep;
}

inline Json check_selection(const LgModel& model, const Epsilon& eps, int max_heavy = 5,
                            int max_light = 4) {
  InvariantTable table;
  if (eps.kind() == Epsilon::Kind::infinity) {
    table = big_J_table(model, big_J(model, max_heavy - 1));
  } else {
    Orders o;
    o.t_t = max_heavy - 1;
    o.u_count = max_light;
    o.t_u = max_light * (model.degree() - 2);
    o.total = o.t_t + max_light;
    table = j_epsilon(model, eps, o).table;
  }
  const int max_psi = max_heavy + max_light;
  const CheckReport rep = selection_sweep(model, table, max_heavy, max_light, max_psi);
  Json report = status_json("selection", rep.passed());
  report["epsilon"] = eps.to_string();
  report["max_heavy"] = max_heavy;
  report["max_light"] = max_light;
  report["keys_swept"] = rep.compared;
  report["nonzero_entries"] = table.entries.size();
  report["mismatches"] = rep.mismatches;
  return report;
}

}  // namespace lgcone
