// Monomials in the u^k (light / mirror) and t^k (primary) variables, and the
// truncation regions series live in.
#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "lgcone/rational.hpp"

namespace lgcone {

inline constexpr int kMaxSectors = 16;

enum class VarKind : std::uint8_t { u = 0, t = 1 };

struct Variable {
  VarKind kind = VarKind::u;
  int sector = 0;

  static Variable u(int k) { return {VarKind::u, k}; }
  static Variable t(int k) { return {VarKind::t, k}; }

  int slot() const { return static_cast<int>(kind) * kMaxSectors + sector; }
  std::string name() const {
    return (kind == VarKind::u ? "u" : "t") + std::to_string(sector);
  }

  auto operator<=>(const Variable&) const = default;
};

/// Grading weight of u^k: k for k >= 1 and 1 for the string direction u^0.
inline int u_weight_of(int sector) { return sector == 0 ? 1 : sector; }

class Monomial {
 public:
  Monomial() = default;

  static Monomial of(Variable v, int e = 1) {
    Monomial m;
    m.set(v, e);
    return m;
  }
  static Monomial u(int k, int e = 1) { return of(Variable::u(k), e); }
  static Monomial t(int k, int e = 1) { return of(Variable::t(k), e); }

  int exponent(Variable v) const { return e_[check(v)]; }
  int u_exp(int k) const { return exponent(Variable::u(k)); }
  int t_exp(int k) const { return exponent(Variable::t(k)); }

  void set(Variable v, int e) {
    if (e < 0 || e > 255) throw SeriesError("exponent out of range");
    e_[check(v)] = static_cast<std::uint8_t>(e);
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r;
    for (std::size_t i = 0; i < e_.size(); ++i) {
      const int s = e_[i] + o.e_[i];
      if (s > 255) throw SeriesError("exponent overflow");
      r.e_[i] = static_cast<std::uint8_t>(s);
    }
    return r;
  }

  bool divides(const Monomial& o) const {
    for (std::size_t i = 0; i < e_.size(); ++i)
      if (e_[i] > o.e_[i]) return false;
    return true;
  }

  /// Precondition: divides(o) holds for `*this` by `d`.
  Monomial quotient(const Monomial& d) const {
    Monomial r;
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - d.e_[i];
    return r;
  }

  bool is_one() const {
    return std::all_of(e_.begin(), e_.end(), [](auto x) { return x == 0; });
  }

  int u_count() const { return sum(0); }
  int t_degree() const { return sum(kMaxSectors); }
  int total_degree() const { return u_count() + t_degree(); }
  int u_weight() const {
    int w = 0;
    for (int k = 0; k < kMaxSectors; ++k) w += e_[k] * u_weight_of(k);
    return w;
  }

  Monomial u_part() const {
    Monomial r;
    std::copy_n(e_.begin(), kMaxSectors, r.e_.begin());
    return r;
  }
  Monomial t_part() const {
    Monomial r;
    std::copy_n(e_.begin() + kMaxSectors, kMaxSectors, r.e_.begin() + kMaxSectors);
    return r;
  }

  /// Product of factorials of the exponents; the 1/(m! n!) symmetry factor.
  Integer factorial_product() const {
    Integer f = 1;
    for (auto x : e_)
      if (x > 1) f *= factorial(x);
    return f;
  }

  /// Variables with nonzero exponent, u's before t's, ascending sector.
  std::vector<Variable> support() const {
    std::vector<Variable> vs;
    for (int i = 0; i < 2 * kMaxSectors; ++i)
      if (e_[i] != 0) vs.push_back(variable_at(i));
    return vs;
  }

  static Variable variable_at(int slot) {
    return {slot < kMaxSectors ? VarKind::u : VarKind::t, slot % kMaxSectors};
  }

  auto operator<=>(const Monomial&) const = default;

 private:
  static int check(Variable v) {
    if (v.sector < 0 || v.sector >= kMaxSectors) throw SeriesError("sector index out of range");
    return v.slot();
  }
  int sum(int offset) const {
    int s = 0;
    for (int k = 0; k < kMaxSectors; ++k) s += e_[offset + k];
    return s;
  }

  std::array<std::uint8_t, 2 * kMaxSectors> e_{};
};

/// An order ideal of monomials cut out by independent caps. Every cap is
/// monotone, so products computed inside the region are exact.
struct Truncation {
  static constexpr int kUnbounded = std::numeric_limits<int>::max();

  int u_weight = kUnbounded;
  int u_count = kUnbounded;
  int t_degree = kUnbounded;
  int total_degree = kUnbounded;

  static Truncation unbounded() { return {}; }
  static Truncation total(int k) {
    Truncation t;
    t.total_degree = k;
    return t;
  }
  static Truncation weighted(int w) {
    Truncation t;
    t.u_weight = w;
    return t;
  }

  bool admits(const Monomial& m) const {
    const int uc = m.u_count();
    const int td = m.t_degree();
    return uc <= u_count && td <= t_degree && uc + td <= total_degree &&
           m.u_weight() <= u_weight;
  }

  Truncation meet(const Truncation& o) const {
    return {std::min(u_weight, o.u_weight), std::min(u_count, o.u_count),
            std::min(t_degree, o.t_degree), std::min(total_degree, o.total_degree)};
  }

  /// Largest total degree any admitted monomial can have, or kUnbounded.
  int max_total_degree() const {
    const int uc = std::min(u_weight, u_count);
    if (uc == kUnbounded || t_degree == kUnbounded) return total_degree;
    return std::min(total_degree, uc + t_degree);
  }

  bool operator==(const Truncation&) const = default;
};

}  // namespace lgcone
