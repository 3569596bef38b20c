// Closed-form hypergeometric series: the big and small I-functions, the
// unstable part of J^eps for each chamber, and the regular-part data
// (I_0, I_1, mirror map, J_0^eps, J_1^eps, tau^eps).
#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "lgcone/model.hpp"
#include "lgcone/series.hpp"

namespace lgcone {

using VectorZSeries = ZSeries<StateVector>;

struct ITerm {
  Monomial a;
  int output_sector = 0;
  int z_power = 1;
  Rational coefficient = 1;
};

/// Term of the big I-function for the u-multi-index `a`.
inline ITerm big_I_term(const LgModel& model, const Monomial& a) {
  ITerm term;
  term.a = a;
  Integer inv_fact = 1;
  int count_a = 0;
  int sector = 0;
  Rational bound = 1;
  for (int k = 0; k < kMaxSectors; ++k) {
    const int e = a.u_exp(k);
    if (e == 0) continue;
    if (!model.is_narrow(k)) {
      throw ModelError("I-function index a is supported on broad sector " + std::to_string(k));
    }
    inv_fact *= factorial(e);
    count_a += e;
    sector += e * k;
    bound += e * (model.state_degree(k) - 1);
  }
  term.output_sector = sector % model.degree();

  Rational coeff = Rational(1, 1) / Rational(inv_fact);
  int counts = 0;
  for (const Rational& q : model.charges()) {
    Rational s;
    for (int k = 0; k < kMaxSectors; ++k)
      if (int e = a.u_exp(k)) s += e * frac(k * q);
    const Rational f = frac(s);
    const Rational c = s - f;
    if (!is_integer(c) || sgn(c) < 0) throw SeriesError("I-term count s_j - <s_j> is not a nonnegative integer");
    const long n = c.get_num().get_si();
    for (long i = 0; i < n; ++i) coeff *= f + i + q;
    counts += static_cast<int>(n);
  }
  term.coefficient = coeff;
  term.z_power = 1 - count_a + counts;
  if (Rational(term.z_power) > bound) throw SeriesError("I-term exceeds the z-power bound");
  return term;
}

/// All u-monomials over `sectors` admitted by `tr`.
inline std::vector<Monomial> enumerate_u_monomials(const std::vector<int>& sectors,
                                                   const Truncation& tr) {
  if (std::min({tr.u_weight, tr.u_count, tr.total_degree}) == Truncation::kUnbounded &&
      !sectors.empty()) {
    throw SeriesError("enumeration needs a bounded u truncation");
  }
  std::vector<Monomial> out;
  std::function<void(std::size_t, Monomial)> rec = [&](std::size_t i, Monomial m) {
    if (i == sectors.size()) {
      out.push_back(m);
      return;
    }
    for (int e = 0;; ++e) {
      Monomial next = m;
      next.set(Variable::u(sectors[i]), e);
      if (!tr.admits(next)) break;
      rec(i + 1, next);
    }
  };
  rec(0, Monomial{});
  return out;
}

inline VectorZSeries i_series(const LgModel& model, const std::vector<int>& sectors,
                              const Truncation& tr) {
  VectorZSeries r(tr);
  for (const Monomial& a : enumerate_u_monomials(sectors, tr)) {
    const ITerm term = big_I_term(model, a);
    r.add_term(a, Laurent<StateVector>::single(
                      term.z_power, StateVector::basis(term.output_sector, term.coefficient)));
  }
  return r;
}

/// The big I-function on every narrow direction, broad outputs included.
inline VectorZSeries big_I(const LgModel& model, const Truncation& tr) {
  return i_series(model, model.narrow(), tr);
}
inline VectorZSeries big_I(const LgModel& model, int t_u) {
  return big_I(model, Truncation::weighted(t_u));
}

/// Restriction to the narrow directions of degree <= 1.
inline VectorZSeries small_I(const LgModel& model, const Truncation& tr) {
  return i_series(model, model.small_sectors(), tr);
}
inline VectorZSeries small_I(const LgModel& model, int t_u) {
  return small_I(model, Truncation::weighted(t_u));
}

/// Big I restricted to |a| <= ceil(1/eps).
inline VectorZSeries unstable_sum(const LgModel& model, const Epsilon& eps, const Truncation& tr) {
  Truncation capped = tr;
  capped.u_count = std::min(tr.u_count, eps.cap());
  VectorZSeries r(tr);
  const VectorZSeries full = big_I(model, capped);
  for (const auto& [m, l] : full.terms()) r.add_term(m, l);
  return r;
}

inline VectorZSeries project_narrow(const LgModel& model, const VectorZSeries& s) {
  return s.map_coefficients([&](const Monomial&, const Laurent<StateVector>& l) {
    return l.map_values([&](const StateVector& v) { return model.project_narrow(v); });
  });
}

inline VectorZSeries broad_part(const LgModel& model, const VectorZSeries& s) {
  return s.map_coefficients([&](const Monomial&, const Laurent<StateVector>& l) {
    return l.map_values(
        [&](const StateVector& v) { return v.filtered([&](int k) { return !model.is_narrow(k); }); });
  });
}

/// Sets u^k = 0 for the given sector.
template <class C>
GradedSeries<C> set_u_zero(const GradedSeries<C>& s, int sector) {
  return s.filtered([sector](const Monomial& m) { return m.u_exp(sector) == 0; });
}

inline VectorZSeries z_phi0(const Truncation& tr = {}) {
  return VectorZSeries::constant(Laurent<StateVector>::single(1, StateVector::basis(0)), tr);
}

/// (I_0, I_1) from I = I_0 z phi_0 + I_1 + O(1/z).
inline std::pair<ScalarSeries, VectorSeries> I0_I1(const VectorZSeries& I) {
  ScalarSeries i0(I.truncation());
  VectorSeries i1(I.truncation());
  for (const auto& [m, l] : I.terms()) {
    for (const auto& [p, v] : l.powers()) {
      if (p >= 2) throw SeriesError("I0_I1: z-power " + std::to_string(p) + " present");
      if (p == 1) {
        if (v.components().size() != 1 || v.components().begin()->first != 0) {
          throw SeriesError("I0_I1: z^1 part is not proportional to phi_0");
        }
        i0.add_term(m, v[0]);
      }
      if (p == 0) i1.add_term(m, v);
    }
  }
  return {i0, i1};
}

/// eta = I_1 / I_0 for the small I-function.
inline VectorSeries mirror_map(const LgModel& model, const Truncation& tr) {
  auto [i0, i1] = I0_I1(small_I(model, tr));
  return scale_by(series_invert(i0), i1);
}
inline VectorSeries mirror_map(const LgModel& model, int t_u) {
  return mirror_map(model, Truncation::weighted(t_u));
}

/// Vector series v = sum_k v^k phi_k read as the substitution kind^k -> v^k.
inline Substitution as_substitution(const VectorSeries& v, const std::vector<int>& sectors,
                                    VarKind kind) {
  Substitution sub;
  for (int k : sectors) {
    ScalarSeries c(v.truncation());
    for (const auto& [m, x] : v.terms()) c.add_term(m, x[k]);
    sub[{kind, k}] = c;
  }
  for (const auto& [m, x] : v.terms())
    for (const auto& [k, c] : x.components())
      if (std::find(sectors.begin(), sectors.end(), k) == sectors.end()) {
        throw SeriesError("vector series has a component outside the coordinate block (phi_" +
                          std::to_string(k) + ")");
      }
  return sub;
}

struct RegularPart {
  ScalarSeries J0;
  VectorZSeries J1;  // z-powers >= 0 of f, without the z^1 phi_0 part
  VectorZSeries f;   // unstable_sum - z phi_0
  std::vector<Monomial> descendant_monomials;  // u-monomials carrying z^{>=2} or non-phi_0 z^1
};

inline RegularPart regular_part_data(const LgModel& model, const Epsilon& eps,
                                     const Truncation& tr) {
  RegularPart r{ScalarSeries(tr), VectorZSeries(tr), VectorZSeries(tr), {}};
  r.f = unstable_sum(model, eps, tr) - z_phi0(tr);
  r.J0.add_term(Monomial{}, Rational(1));
  for (const auto& [m, l] : r.f.terms()) {
    bool descendant = false;
    for (const auto& [p, v] : l.powers()) {
      if (p < 0) continue;
      StateVector rest = v;
      if (p == 1) {
        r.J0.add_term(m, v[0]);
        rest = v.filtered([](int k) { return k != 0; });
        if (!rest.is_zero()) descendant = true;
      }
      if (p >= 2) descendant = true;
      r.J1.add_term(m, Laurent<StateVector>::single(p, rest));
    }
    if (descendant) r.descendant_monomials.push_back(m);
  }
  return r;
}

/// tau^eps(t, u) = J_0(u) t - J_1(u, z); only the z^0 part acts on primary t.
struct TauChange {
  ScalarSeries J0;
  VectorZSeries minus_J1;

  Substitution primary_substitution(const LgModel& model, const Truncation& tr) const {
    Substitution sub;
    const VectorSeries shift = z_coefficient(minus_J1, 0);
    for (int k : model.narrow()) {
      ScalarSeries s = scale_by(J0, variable_series(Variable::t(k), tr)).truncated(tr);
      for (const auto& [m, v] : shift.terms()) s.add_term(m, v[k]);
      sub[Variable::t(k)] = s;
    }
    return sub;
  }
};

inline TauChange tau_change(const LgModel& model, const Epsilon& eps, const Truncation& tr) {
  RegularPart rp = regular_part_data(model, eps, tr);
  return {rp.J0, -rp.J1};
}

}  // namespace lgcone
