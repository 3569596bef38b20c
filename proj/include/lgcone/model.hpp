// Fermat Landau-Ginzburg model data: charges, narrow sector, degrees,
// pairing, group product, and the selection rules for correlators.
#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lgcone/monomial.hpp"
#include "lgcone/rational.hpp"
#include "lgcone/state_vector.hpp"

namespace lgcone {

class LgModel {
 public:
  LgModel(std::vector<int> weights, int degree) : weights_(std::move(weights)), d_(degree) {
    if (weights_.empty()) throw ModelError("weights must be nonempty");
    if (d_ < 2) throw ModelError("degree d must be >= 2 (got " + std::to_string(d_) + ")");
    if (d_ > kMaxSectors) {
      throw ModelError("degree d must be <= " + std::to_string(kMaxSectors) +
                       " (sector index range)");
    }
    int g = d_;
    for (int w : weights_) {
      if (w <= 0) throw ModelError("weights must be positive integers");
      if (d_ % w != 0) {
        throw ModelError("Fermat condition violated: weight " + std::to_string(w) +
                         " does not divide d = " + std::to_string(d_));
      }
      g = std::gcd(g, w);
    }
    if (g != 1) throw ModelError("gcd(w_1..w_N, d) = " + std::to_string(g) + ", must be 1");

    for (int w : weights_) {
      charges_.push_back(make_rational(w, d_));
      total_charge_ += charges_.back();
    }
    degrees_.resize(d_);
    narrow_flag_.resize(d_);
    for (int k = 0; k < d_; ++k) {
      bool narrow = true;
      for (const Rational& q : charges_) {
        degrees_[k] += frac(q * k);
        if (is_zero(frac(q * (k + 1)))) narrow = false;
      }
      narrow_flag_[k] = narrow;
      if (narrow) narrow_.push_back(k);
    }
  }

  const std::vector<int>& weights() const { return weights_; }
  int degree() const { return d_; }
  int num_variables() const { return static_cast<int>(weights_.size()); }
  const std::vector<Rational>& charges() const { return charges_; }
  const Rational& total_charge() const { return total_charge_; }

  const std::vector<int>& narrow() const { return narrow_; }
  bool is_narrow(int k) const { return k >= 0 && k < d_ && narrow_flag_[k]; }
  const Rational& state_degree(int k) const { return degrees_.at(k); }

  /// Index of the dual basis element phi^k = phi_{d-2-k}.
  int dual(int k) const { return d_ - 2 - k; }

  Rational pairing(int i, int j) const {
    if (!is_narrow(i) || !is_narrow(j)) {
      throw ModelError("pairing is defined on narrow sectors only (got " + std::to_string(i) +
                       ", " + std::to_string(j) + ")");
    }
    return i + j == d_ - 2 ? Rational(1) : Rational(0);
  }

  int group_product(int i, int j) const { return (i + j) % d_; }
  ProductRule product_rule() const { return {d_}; }

  /// Narrow sectors of degree <= 1 (the small I-function directions).
  std::vector<int> small_sectors() const {
    std::vector<int> r;
    for (int k : narrow_)
      if (degrees_[k] <= 1) r.push_back(k);
    return r;
  }

  StateVector project_narrow(const StateVector& v) const {
    return v.filtered([this](int k) { return is_narrow(k); });
  }

  /// (phi_a, phi_b) extended bilinearly over narrow components.
  Rational pair(const StateVector& a, const StateVector& b) const {
    Rational r;
    for (const auto& [i, x] : a.components()) {
      if (!is_narrow(i)) throw ModelError("pairing applied to a broad component phi_" + std::to_string(i));
      const Rational y = b[dual(i)];
      if (!is_zero(y)) r += x * y;
    }
    for (const auto& [j, y] : b.components())
      if (!is_narrow(j)) throw ModelError("pairing applied to a broad component phi_" + std::to_string(j));
    return r;
  }

  std::string name() const {
    std::string s = "W(";
    for (std::size_t i = 0; i < weights_.size(); ++i) s += (i ? "," : "") + std::to_string(weights_[i]);
    return s + ";" + std::to_string(d_) + ")";
  }

  bool operator==(const LgModel& o) const { return weights_ == o.weights_ && d_ == o.d_; }

 private:
  std::vector<int> weights_;
  int d_;
  std::vector<Rational> charges_;
  Rational total_charge_;
  std::vector<Rational> degrees_;
  std::vector<bool> narrow_flag_;
  std::vector<int> narrow_;
};

inline LgModel build_model(const std::vector<int>& weights, int degree) {
  return LgModel(weights, degree);
}

/// Light-point weight: a positive rational, the infinity chamber (any eps > 1)
/// or the eps -> 0 limit.
class Epsilon {
 public:
  enum class Kind { finite, infinity, zero };

  static Epsilon infinity() { return Epsilon(Kind::infinity, 0); }
  static Epsilon zero() { return Epsilon(Kind::zero, 0); }
  static Epsilon of(const Rational& e) {
    if (sgn(e) <= 0) throw ModelError("epsilon must be positive");
    if (e > 1) return infinity();
    return Epsilon(Kind::finite, e);
  }
  static Epsilon parse(const std::string& text) {
    if (text == "infinity" || text == "inf") return infinity();
    if (text == "zero" || text == "0") return zero();
    try {
      return of(parse_rational(text));
    } catch (const SeriesError&) {
      throw ModelError("epsilon must be 'infinity', 'zero' or a positive rational p/q (got '" +
                       text + "')");
    }
  }

  Kind kind() const { return kind_; }
  const Rational& value() const { return value_; }

  /// ceil(1/eps); Truncation::kUnbounded for the zero chamber.
  int cap() const {
    switch (kind_) {
      case Kind::infinity:
        return 1;
      case Kind::zero:
        return Truncation::kUnbounded;
      case Kind::finite:
        break;
    }
    return static_cast<int>(ceil_of(1 / value_).get_si());
  }

  /// m heavy and n light points: m + n eps > 2.
  bool stable(int m, int n) const {
    switch (kind_) {
      case Kind::infinity:
        return n == 0 && m >= 3;
      case Kind::zero:
        return m > 2 || (m == 2 && n >= 1);
      case Kind::finite:
        break;
    }
    return Rational(m) + Rational(n) * value_ > 2;
  }

  std::string to_string() const {
    switch (kind_) {
      case Kind::infinity:
        return "infinity";
      case Kind::zero:
        return "zero";
      case Kind::finite:
        break;
    }
    return lgcone::to_string(value_);
  }

  bool operator==(const Epsilon&) const = default;

 private:
  Epsilon(Kind k, Rational v) : kind_(k), value_(std::move(v)) {}
  Kind kind_;
  Rational value_;
};

/// <phi_{k_1} psi^{j_1}, ..., phi_{k_m} psi^{j_m} | phi_{l_1}, ..., phi_{l_n}>^eps
struct CorrelatorKey {
  std::vector<std::pair<int, int>> heavy;  // (sector, psi power)
  std::vector<int> light;
  Epsilon epsilon = Epsilon::infinity();

  int psi_total() const {
    int s = 0;
    for (const auto& h : heavy) s += h.second;
    return s;
  }

  /// Sorted insertions; invariants are symmetric under reordering.
  CorrelatorKey canonical() const {
    CorrelatorKey c = *this;
    std::sort(c.heavy.begin(), c.heavy.end(),
              [](const auto& a, const auto& b) {
                return std::pair(a.second, a.first) < std::pair(b.second, b.first);
              });
    std::sort(c.light.begin(), c.light.end());
    return c;
  }

  auto operator<=>(const CorrelatorKey& o) const {
    if (auto c = heavy <=> o.heavy; c != 0) return c;
    return light <=> o.light;
  }
  bool operator==(const CorrelatorKey& o) const {
    return heavy == o.heavy && light == o.light && epsilon == o.epsilon;
  }

  std::string to_string() const {
    std::string s = "<";
    for (std::size_t i = 0; i < heavy.size(); ++i) {
      if (i) s += ", ";
      s += "phi_" + std::to_string(heavy[i].first);
      if (heavy[i].second) s += " psi^" + std::to_string(heavy[i].second);
    }
    if (!light.empty()) {
      s += " |";
      for (int l : light) s += " phi_" + std::to_string(l);
    }
    return s + ">";
  }
};

inline bool moduli_nonempty(const LgModel& model, const CorrelatorKey& key) {
  int sum = 2;
  for (const auto& h : key.heavy) sum += h.first;
  for (int l : key.light) sum += l;
  if (sum % model.degree() != 0) return false;
  return key.epsilon.stable(static_cast<int>(key.heavy.size()), static_cast<int>(key.light.size()));
}

inline Rational witten_degree(const LgModel& model, const CorrelatorKey& key) {
  const int m = static_cast<int>(key.heavy.size());
  const int n = static_cast<int>(key.light.size());
  Rational deg = Rational(model.num_variables() - 3 + m + n) - 2 * model.total_charge();
  for (const auto& h : key.heavy) deg -= model.state_degree(h.first);
  for (int l : key.light) deg -= model.state_degree(l);
  return deg;
}

enum class Vanishing { none, broad_insertion, empty_moduli, degree_mismatch };

inline std::string to_string(Vanishing v) {
  switch (v) {
    case Vanishing::none:
      return "none";
    case Vanishing::broad_insertion:
      return "broad-insertion";
    case Vanishing::empty_moduli:
      return "empty-moduli";
    case Vanishing::degree_mismatch:
      return "degree-mismatch";
  }
  return "?";
}

inline Vanishing trivially_zero(const LgModel& model, const CorrelatorKey& key) {
  for (const auto& h : key.heavy)
    if (!model.is_narrow(h.first)) return Vanishing::broad_insertion;
  for (int l : key.light)
    if (!model.is_narrow(l)) return Vanishing::broad_insertion;
  // Degree is reported ahead of divisibility when both fail.
  const Rational deg = witten_degree(model, key);
  if (!is_integer(deg) || sgn(deg) < 0 || deg != key.psi_total()) return Vanishing::degree_mismatch;
  if (!moduli_nonempty(model, key)) return Vanishing::empty_moduli;
  return Vanishing::none;
}

}  // namespace lgcone
