// Graded truncated series over exact rationals.
//
// GradedSeries<C> is a sparse map from monomials in (u, t) to coefficients of
// type C (Rational, StateVector or Laurent<...>), restricted to a Truncation
// region. ZSeries<C> = GradedSeries<Laurent<C>> puts the z dependence inside
// each coefficient: for every object in this library the coefficient of a
// fixed (t, u)-monomial is a Laurent polynomial in z, so z never needs
// truncating.
#pragma once

#include <algorithm>
#include <concepts>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lgcone/monomial.hpp"
#include "lgcone/rational.hpp"
#include "lgcone/state_vector.hpp"

namespace lgcone {

template <class C>
class Laurent;

template <class C>
bool is_zero(const Laurent<C>& x);

namespace detail {

template <class C>
bool accumulate(C& target, const C& value) {
  target += value;
  return is_zero(target);
}

}  // namespace detail

/// Finite Laurent polynomial in z with coefficients in C.
template <class C>
class Laurent {
 public:
  using value_type = C;

  Laurent() = default;

  static Laurent single(int power, const C& c) {
    Laurent l;
    l.add(power, c);
    return l;
  }

  void add(int power, const C& c) {
    if (lgcone::is_zero(c)) return;
    auto [it, inserted] = c_.try_emplace(power, c);
    if (!inserted && detail::accumulate(it->second, c)) c_.erase(it);
  }

  C coefficient(int power) const {
    auto it = c_.find(power);
    return it == c_.end() ? C{} : it->second;
  }
  const C* find(int power) const {
    auto it = c_.find(power);
    return it == c_.end() ? nullptr : &it->second;
  }

  bool is_zero() const { return c_.empty(); }
  int min_power() const { return c_.begin()->first; }
  int max_power() const { return c_.rbegin()->first; }
  const std::map<int, C>& powers() const { return c_; }

  Laurent& operator+=(const Laurent& o) {
    for (const auto& [p, c] : o.c_) add(p, c);
    return *this;
  }
  Laurent& operator-=(const Laurent& o) {
    for (const auto& [p, c] : o.c_) add(p, -c);
    return *this;
  }
  Laurent& operator*=(const Rational& s) {
    if (lgcone::is_zero(s)) {
      c_.clear();
    } else {
      for (auto& [p, c] : c_) c *= s;
    }
    return *this;
  }
  Laurent operator-() const {
    Laurent r;
    for (const auto& [p, c] : c_) r.c_.emplace(p, -c);
    return r;
  }

  /// f(z) -> f(-z).
  Laurent negate_z() const {
    Laurent r = *this;
    for (auto& [p, c] : r.c_)
      if (p % 2 != 0) c = -c;
    return r;
  }

  /// f(z) -> z^k f(z).
  Laurent shifted(int k) const {
    Laurent r;
    for (const auto& [p, c] : c_) r.c_.emplace(p + k, c);
    return r;
  }

  Laurent filtered(const std::function<bool(int)>& keep_power) const {
    Laurent r;
    for (const auto& [p, c] : c_)
      if (keep_power(p)) r.c_.emplace(p, c);
    return r;
  }

  template <class F>
  auto map_values(F&& f) const {
    using R = std::decay_t<decltype(f(std::declval<const C&>()))>;
    Laurent<R> r;
    for (const auto& [p, c] : c_) r.add(p, f(c));
    return r;
  }

  bool operator==(const Laurent& o) const { return c_ == o.c_; }

 private:
  std::map<int, C> c_;
};

template <class C>
bool is_zero(const Laurent<C>& x) {
  return x.is_zero();
}

template <class A, class B, class Op>
auto multiply_laurent(const Laurent<A>& a, const Laurent<B>& b, Op&& op) {
  using R = std::decay_t<decltype(op(std::declval<const A&>(), std::declval<const B&>()))>;
  Laurent<R> r;
  for (const auto& [p, x] : a.powers())
    for (const auto& [q, y] : b.powers()) r.add(p + q, op(x, y));
  return r;
}

template <class A, class B>
auto multiply(const Laurent<A>& a, const Laurent<B>& b) {
  return multiply_laurent(a, b, [](const A& x, const B& y) { return multiply(x, y); });
}

template <class C>
Laurent<C> multiply(const Rational& s, const Laurent<C>& l) {
  Laurent<C> r = l;
  r *= s;
  return r;
}

template <class C>
Laurent<C> multiply(const Laurent<C>& l, const Rational& s) {
  return multiply(s, l);
}

/// Sparse truncated series in the (u, t) variables.
template <class C>
class GradedSeries {
 public:
  using coefficient_type = C;
  using term_map = std::map<Monomial, C>;

  explicit GradedSeries(Truncation truncation = {}) : trunc_(truncation) {}

  static GradedSeries constant(const C& c, Truncation truncation = {}) {
    GradedSeries s(truncation);
    s.add_term(Monomial{}, c);
    return s;
  }
  static GradedSeries monomial(const Monomial& m, const C& c, Truncation truncation = {}) {
    GradedSeries s(truncation);
    s.add_term(m, c);
    return s;
  }

  const Truncation& truncation() const { return trunc_; }
  const term_map& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Adds c * m; monomials outside the truncation region are dropped.
  void add_term(const Monomial& m, const C& c) {
    if (lgcone::is_zero(c) || !trunc_.admits(m)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted && detail::accumulate(it->second, c)) terms_.erase(it);
  }

  /// Overwrites the stored coefficient (used by the order-by-order solvers).
  void set_term(const Monomial& m, const C& c) {
    if (!trunc_.admits(m)) return;
    if (lgcone::is_zero(c)) {
      terms_.erase(m);
    } else {
      terms_[m] = c;
    }
  }

  C coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? C{} : it->second;
  }
  const C* find(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? nullptr : &it->second;
  }

  GradedSeries truncated(const Truncation& tr) const {
    GradedSeries r(trunc_.meet(tr));
    for (const auto& [m, c] : terms_)
      if (r.trunc_.admits(m)) r.terms_.emplace(m, c);
    return r;
  }

  GradedSeries filtered(const std::function<bool(const Monomial&)>& keep) const {
    GradedSeries r(trunc_);
    for (const auto& [m, c] : terms_)
      if (keep(m)) r.terms_.emplace(m, c);
    return r;
  }

  template <class F>
  auto map_coefficients(F&& f) const {
    using R = std::decay_t<decltype(f(std::declval<const Monomial&>(), std::declval<const C&>()))>;
    GradedSeries<R> r(trunc_);
    for (const auto& [m, c] : terms_) r.add_term(m, f(m, c));
    return r;
  }

  /// Replaces the truncation without touching stored terms beyond dropping
  /// those the new region excludes.
  void restrict_to(const Truncation& tr) { *this = truncated(tr); }

  GradedSeries& operator+=(const GradedSeries& o) {
    trunc_ = trunc_.meet(o.trunc_);
    prune_outside();
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  GradedSeries& operator-=(const GradedSeries& o) {
    trunc_ = trunc_.meet(o.trunc_);
    prune_outside();
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  GradedSeries& operator*=(const Rational& s) {
    if (lgcone::is_zero(s)) {
      terms_.clear();
    } else {
      for (auto& [m, c] : terms_) c *= s;
    }
    return *this;
  }
  GradedSeries operator-() const {
    GradedSeries r(trunc_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }
  friend GradedSeries operator+(GradedSeries a, const GradedSeries& b) { return a += b; }
  friend GradedSeries operator-(GradedSeries a, const GradedSeries& b) { return a -= b; }
  friend GradedSeries operator*(GradedSeries a, const Rational& s) { return a *= s; }
  friend GradedSeries operator*(const Rational& s, GradedSeries a) { return a *= s; }

  /// Equality of stored terms (truncations are not compared).
  bool operator==(const GradedSeries& o) const { return terms_ == o.terms_; }

 private:
  void prune_outside() {
    std::erase_if(terms_, [&](const auto& kv) { return !trunc_.admits(kv.first); });
  }

  Truncation trunc_;
  term_map terms_;
};

template <class C>
using ZSeries = GradedSeries<Laurent<C>>;

using ScalarSeries = GradedSeries<Rational>;
using VectorSeries = GradedSeries<StateVector>;
using Substitution = std::map<Variable, ScalarSeries>;

template <class C>
bool is_zero(const GradedSeries<C>& s) {
  return s.is_zero();
}

inline ScalarSeries variable_series(Variable v, Truncation tr = {}) {
  return ScalarSeries::monomial(Monomial::of(v), Rational(1), tr);
}

// ---------------------------------------------------------------------------
// Products

/// Coefficient-wise convolution truncated to the meet of both regions.
template <class A, class B, class Op>
  requires std::invocable<Op&, const A&, const B&>
auto series_mul(const GradedSeries<A>& a, const GradedSeries<B>& b, Op&& op) {
  using R = std::decay_t<decltype(op(std::declval<const A&>(), std::declval<const B&>()))>;
  GradedSeries<R> r(a.truncation().meet(b.truncation()));
  const Truncation& tr = r.truncation();
  for (const auto& [ma, ca] : a.terms()) {
    if (!tr.admits(ma)) continue;
    for (const auto& [mb, cb] : b.terms()) {
      const Monomial m = ma * mb;
      if (tr.admits(m)) r.add_term(m, op(ca, cb));
    }
  }
  return r;
}

template <class A, class B>
auto series_mul(const GradedSeries<A>& a, const GradedSeries<B>& b) {
  return series_mul(a, b, [](const A& x, const B& y) { return multiply(x, y); });
}

/// Vector-valued product under an explicit product rule; a missing rule is an error.
inline VectorSeries series_mul(const VectorSeries& a, const VectorSeries& b,
                               const std::optional<ProductRule>& rule) {
  return series_mul(a, b, [&](const StateVector& x, const StateVector& y) {
    return multiply(x, y, rule);
  });
}

inline ZSeries<StateVector> series_mul(const ZSeries<StateVector>& a,
                                       const ZSeries<StateVector>& b,
                                       const std::optional<ProductRule>& rule) {
  return series_mul(a, b, [&](const Laurent<StateVector>& x, const Laurent<StateVector>& y) {
    return multiply_laurent(x, y, [&](const StateVector& p, const StateVector& q) {
      return multiply(p, q, rule);
    });
  });
}

/// Multiplies every coefficient of `s` by the scalar series `f`.
template <class C>
GradedSeries<C> scale_by(const ScalarSeries& f, const GradedSeries<C>& s) {
  return series_mul(f, s, [](const Rational& x, const C& c) { return multiply(x, c); });
}

/// Formal partial derivative.
template <class C>
GradedSeries<C> derivative(const GradedSeries<C>& s, Variable v) {
  GradedSeries<C> r(s.truncation());
  for (const auto& [m, c] : s.terms()) {
    const int e = m.exponent(v);
    if (e == 0) continue;
    Monomial q = m;
    q.set(v, e - 1);
    C scaled = c;
    scaled *= Rational(e);
    r.add_term(q, scaled);
  }
  return r;
}

/// Reciprocal of a unit scalar series.
inline ScalarSeries series_invert(const ScalarSeries& a) {
  const Rational c0 = a.coefficient(Monomial{});
  if (is_zero(c0)) throw SeriesError("series_invert: constant term is zero (not a unit)");
  const Rational inv0 = 1 / c0;
  ScalarSeries step = a.filtered([](const Monomial& m) { return !m.is_one(); });
  step *= -inv0;  // -(a - c0)/c0
  ScalarSeries result = ScalarSeries::constant(Rational(1), a.truncation());
  ScalarSeries power = result;
  for (int guard = 0;; ++guard) {
    if (guard > 4096) throw SeriesError("series_invert: truncation does not bound the degree");
    power = series_mul(power, step);
    if (power.is_zero()) break;
    result += power;
  }
  result *= inv0;
  return result;
}

// ---------------------------------------------------------------------------
// Composition and reversion

namespace detail {

class PowerCache {
 public:
  PowerCache(const Substitution& sub, Truncation tr) : sub_(sub), tr_(tr) {}

  const ScalarSeries& power(Variable v, int e) {
    auto& powers = cache_[v];
    if (powers.empty()) powers.push_back(ScalarSeries::constant(Rational(1), tr_));
    while (static_cast<int>(powers.size()) <= e) {
      powers.push_back(series_mul(powers.back(), sub_.at(v).truncated(tr_)));
    }
    return powers[e];
  }

 private:
  const Substitution& sub_;
  Truncation tr_;
  std::map<Variable, std::vector<ScalarSeries>> cache_;
};

}  // namespace detail

/// Formal substitution v -> sub[v] for the listed variables; other variables
/// are left in place. Every substituted series must have zero constant term.
/// The result is exact on `target` provided `f` is stored on a region that
/// contains every monomial of total degree <= target.max_total_degree().
template <class C>
GradedSeries<C> series_compose(const GradedSeries<C>& f, const Substitution& sub,
                               const Truncation& target) {
  for (const auto& [v, s] : sub) {
    if (!is_zero(s.coefficient(Monomial{}))) {
      throw SeriesError("series_compose: substitution for " + v.name() +
                        " has a nonzero constant term");
    }
  }
  detail::PowerCache cache(sub, target);
  GradedSeries<C> r(target);
  for (const auto& [m, c] : f.terms()) {
    Monomial kept;
    std::vector<std::pair<Variable, int>> substituted;
    for (const Variable& v : m.support()) {
      if (sub.count(v)) {
        substituted.emplace_back(v, m.exponent(v));
      } else {
        kept.set(v, m.exponent(v));
      }
    }
    if (!target.admits(kept)) continue;
    ScalarSeries prod = ScalarSeries::monomial(kept, Rational(1), target);
    for (const auto& [v, e] : substituted) {
      prod = series_mul(prod, cache.power(v, e));
      if (prod.is_zero()) break;
    }
    for (const auto& [pm, pc] : prod.terms()) r.add_term(pm, multiply(pc, c));
  }
  return r;
}

/// Compositional inverse of v -> f[v] (identity linear part), computed by the
/// fixed-point iteration g <- v - (f - id)(g), which gains one degree per pass.
inline Substitution series_reversion(const Substitution& f) {
  if (f.empty()) return {};
  Truncation tr = f.begin()->second.truncation();
  for (const auto& [v, s] : f) {
    tr = tr.meet(s.truncation());
    if (!is_zero(s.coefficient(Monomial{}))) {
      throw SeriesError("series_reversion: component " + v.name() + " has a constant term");
    }
    for (const auto& [m, c] : s.terms()) {
      if (m.total_degree() != 1) continue;
      const Variable w = m.support().front();
      const bool ok = (w == v) ? c == 1 : is_zero(c);
      if (!ok || (w != v && f.count(w) == 0 && !is_zero(c))) {
        throw SeriesError("series_reversion: linear part of " + v.name() +
                          " is not the identity");
      }
    }
    if (is_zero(s.coefficient(Monomial::of(v)))) {
      throw SeriesError("series_reversion: linear part of " + v.name() + " is not the identity");
    }
  }
  Substitution higher;
  for (const auto& [v, s] : f) higher[v] = (s - variable_series(v, tr)).truncated(tr);

  Substitution g;
  for (const auto& [v, s] : f) g[v] = variable_series(v, tr);
  const int max_degree = tr.max_total_degree();
  for (int pass = 0;; ++pass) {
    if (pass > 4096 || (max_degree != Truncation::kUnbounded && pass > max_degree + 1)) {
      throw SeriesError("series_reversion: iteration did not stabilise");
    }
    Substitution next;
    bool changed = false;
    for (const auto& [v, h] : higher) {
      next[v] = variable_series(v, tr) - series_compose(h, g, tr);
      if (!(next[v] == g[v])) changed = true;
    }
    g = std::move(next);
    if (!changed) break;
  }
  return g;
}

/// Applies `sub` to every component of a substitution map.
inline Substitution compose_substitutions(const Substitution& outer, const Substitution& inner,
                                          const Truncation& target) {
  Substitution r;
  for (const auto& [v, s] : outer) r[v] = series_compose(s, inner, target);
  return r;
}

/// u^k -> t^k (or back) for every variable of the given kind.
template <class C>
GradedSeries<C> rename_variables(const GradedSeries<C>& s, VarKind from, VarKind to,
                                 Truncation tr) {
  GradedSeries<C> r(tr);
  for (const auto& [m, c] : s.terms()) {
    Monomial out;
    for (const Variable& v : m.support()) {
      Variable w = v;
      if (v.kind == from) w.kind = to;
      out.set(w, out.exponent(w) + m.exponent(v));
    }
    r.add_term(out, c);
  }
  return r;
}

// ---------------------------------------------------------------------------
// z structure

struct ZWindow {
  int min_power = 0;
  int max_power = -1;  // empty when max < min
  bool empty() const { return max_power < min_power; }
  bool contains(int p) const { return p >= min_power && p <= max_power; }
};

template <class C>
ZWindow z_window(const ZSeries<C>& s) {
  ZWindow w;
  bool first = true;
  for (const auto& [m, l] : s.terms()) {
    if (first) {
      w = {l.min_power(), l.max_power()};
      first = false;
    } else {
      w.min_power = std::min(w.min_power, l.min_power());
      w.max_power = std::max(w.max_power, l.max_power());
    }
  }
  return w;
}

/// Embeds s as the coefficient of z^power.
template <class C>
ZSeries<C> lift_z(const GradedSeries<C>& s, int power = 0) {
  ZSeries<C> r(s.truncation());
  for (const auto& [m, c] : s.terms()) r.add_term(m, Laurent<C>::single(power, c));
  return r;
}

template <class C>
GradedSeries<C> z_coefficient(const ZSeries<C>& s, int power) {
  GradedSeries<C> r(s.truncation());
  for (const auto& [m, l] : s.terms())
    if (const C* c = l.find(power)) r.add_term(m, *c);
  return r;
}

template <class C>
ZSeries<C> from_z_coefficients(const std::map<int, GradedSeries<C>>& coeffs, Truncation tr) {
  ZSeries<C> r(tr);
  for (const auto& [p, s] : coeffs)
    for (const auto& [m, c] : s.terms()) r.add_term(m, Laurent<C>::single(p, c));
  return r;
}

template <class C>
std::map<int, GradedSeries<C>> z_coefficients(const ZSeries<C>& s) {
  std::map<int, GradedSeries<C>> out;
  for (const auto& [m, l] : s.terms())
    for (const auto& [p, c] : l.powers()) {
      auto it = out.try_emplace(p, GradedSeries<C>(s.truncation())).first;
      it->second.add_term(m, c);
    }
  return out;
}

template <class C>
ZSeries<C> filter_z(const ZSeries<C>& s, const std::function<bool(int)>& keep_power) {
  return s.map_coefficients([&](const Monomial&, const Laurent<C>& l) { return l.filtered(keep_power); });
}

/// Powers >= 0 (the H^+ component).
template <class C>
ZSeries<C> positive_part(const ZSeries<C>& s) {
  return filter_z(s, [](int p) { return p >= 0; });
}

/// Powers < 0 (the H^- component).
template <class C>
ZSeries<C> negative_part(const ZSeries<C>& s) {
  return filter_z(s, [](int p) { return p < 0; });
}

template <class C>
ZSeries<C> negate_z(const ZSeries<C>& s) {
  return s.map_coefficients([](const Monomial&, const Laurent<C>& l) { return l.negate_z(); });
}

template <class C>
ZSeries<C> times_z(const ZSeries<C>& s, int k) {
  return s.map_coefficients([k](const Monomial&, const Laurent<C>& l) { return l.shifted(k); });
}

/// Coefficient of z^-1.
template <class C>
GradedSeries<C> laurent_residue(const ZSeries<C>& s) {
  return z_coefficient(s, -1);
}

// ---------------------------------------------------------------------------
// Debug dump: one term per line, `z^j u^(a) t^(m) phi_k : num/den`, sorted by
// (z power, monomial, sector).

namespace detail {

inline std::string exponent_vector(const Monomial& m, VarKind kind) {
  std::string out;
  for (int k = 0; k < kMaxSectors; ++k) {
    const int e = m.exponent({kind, k});
    if (e == 0) continue;
    if (!out.empty()) out += '+';
    out += std::to_string(e) + "e_" + std::to_string(k);
  }
  return out;
}

inline std::string monomial_text(const Monomial& m) {
  std::string out;
  const std::string u = exponent_vector(m, VarKind::u);
  const std::string t = exponent_vector(m, VarKind::t);
  if (!u.empty()) out += " u^(" + u + ")";
  if (!t.empty()) out += " t^(" + t + ")";
  return out;
}

struct DumpKey {
  int z;
  Monomial m;
  int sector;
  auto operator<=>(const DumpKey&) const = default;
};

inline std::string join_sorted(std::map<DumpKey, std::string>& lines) {
  std::string out;
  for (const auto& [k, line] : lines) out += line + '\n';
  return out;
}

}  // namespace detail

inline std::string dump(const ZSeries<StateVector>& s) {
  std::map<detail::DumpKey, std::string> lines;
  for (const auto& [m, l] : s.terms())
    for (const auto& [p, v] : l.powers())
      for (const auto& [k, c] : v.components()) {
        lines[{p, m, k}] = "z^" + std::to_string(p) + detail::monomial_text(m) + " phi_" +
                           std::to_string(k) + " : " + to_string(c);
      }
  return detail::join_sorted(lines);
}

inline std::string dump(const ZSeries<Rational>& s) {
  std::map<detail::DumpKey, std::string> lines;
  for (const auto& [m, l] : s.terms())
    for (const auto& [p, c] : l.powers())
      lines[{p, m, -1}] = "z^" + std::to_string(p) + detail::monomial_text(m) + " : " + to_string(c);
  return detail::join_sorted(lines);
}

inline std::string dump(const VectorSeries& s) { return dump(lift_z(s)); }
inline std::string dump(const ScalarSeries& s) { return dump(lift_z(s)); }

}  // namespace lgcone
