// Elements of the extended state space H_W = Q^d, stored sparsely by sector.
#pragma once

#include <functional>
#include <map>
#include <optional>

#include "lgcone/rational.hpp"

namespace lgcone {

class StateVector {
 public:
  StateVector() = default;

  static StateVector basis(int sector, const Rational& value = 1) {
    StateVector v;
    v.add(sector, value);
    return v;
  }

  Rational operator[](int sector) const {
    auto it = c_.find(sector);
    return it == c_.end() ? Rational(0) : it->second;
  }

  void add(int sector, const Rational& value) {
    if (lgcone::is_zero(value)) return;
    auto [it, inserted] = c_.try_emplace(sector, value);
    if (!inserted) {
      it->second += value;
      if (lgcone::is_zero(it->second)) c_.erase(it);
    }
  }

  bool is_zero() const { return c_.empty(); }
  const std::map<int, Rational>& components() const { return c_; }

  StateVector& operator+=(const StateVector& o) {
    for (const auto& [k, v] : o.c_) add(k, v);
    return *this;
  }
  StateVector& operator-=(const StateVector& o) {
    for (const auto& [k, v] : o.c_) add(k, -v);
    return *this;
  }
  StateVector& operator*=(const Rational& s) {
    if (lgcone::is_zero(s)) {
      c_.clear();
    } else {
      for (auto& [k, v] : c_) v *= s;
    }
    return *this;
  }
  StateVector operator-() const {
    StateVector r = *this;
    for (auto& [k, v] : r.c_) v = -v;
    return r;
  }

  StateVector filtered(const std::function<bool(int)>& keep) const {
    StateVector r;
    for (const auto& [k, v] : c_)
      if (keep(k)) r.c_.emplace(k, v);
    return r;
  }

  bool operator==(const StateVector& o) const { return c_ == o.c_; }

 private:
  std::map<int, Rational> c_;
};

inline bool is_zero(const StateVector& v) { return v.is_zero(); }

/// Multiplication rule for two state vectors: phi_i . phi_j = phi_{(i+j) mod d}.
struct ProductRule {
  int modulus = 0;
};

inline Rational multiply(const Rational& a, const Rational& b) { return a * b; }

inline StateVector multiply(const Rational& a, const StateVector& b) {
  StateVector r = b;
  r *= a;
  return r;
}

inline StateVector multiply(const StateVector& a, const Rational& b) { return multiply(b, a); }

inline StateVector multiply(const StateVector& a, const StateVector& b,
                            const std::optional<ProductRule>& rule) {
  if (!rule || rule->modulus <= 0) {
    throw SeriesError("state-vector product requested without a declared product rule");
  }
  StateVector r;
  for (const auto& [i, x] : a.components())
    for (const auto& [j, y] : b.components()) r.add((i + j) % rule->modulus, x * y);
  return r;
}

}  // namespace lgcone
