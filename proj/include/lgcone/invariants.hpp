// Invariant tables read off the 1/z expansion of a cone point, and the
// string / dilaton consistency checks on them.
#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lgcone/cone.hpp"
#include "lgcone/model.hpp"

namespace lgcone {

struct InvariantEntry {
  Rational value;
  std::string provenance;
};

struct InvariantTable {
  std::vector<int> weights;
  int degree = 0;
  Epsilon epsilon = Epsilon::infinity();
  int t_u = 0;
  int t_t = 0;
  int z_neg = Truncation::kUnbounded;
  std::map<CorrelatorKey, InvariantEntry> entries;
  std::vector<std::string> violations;  // symmetry conflicts and selection-rule breaches

  Rational value(CorrelatorKey key) const {
    key.epsilon = epsilon;
    auto it = entries.find(key.canonical());
    return it == entries.end() ? Rational(0) : it->second.value;
  }
};

/// Expands the 1/z part of a cone point into correlators: the coefficient of
/// t^m u^n z^{-j-1} phi^k is <t-insertions, phi_k psi^j | u-insertions> / (m! n!).
/// `stable_negative` must already exclude closed-form unstable terms.
inline InvariantTable extract_invariants(const LgModel& model, const VectorZSeries& stable_negative,
                                         const Epsilon& eps, const Truncation& box,
                                         const std::string& provenance,
                                         int z_neg = Truncation::kUnbounded) {
  InvariantTable table;
  table.weights = model.weights();
  table.degree = model.degree();
  table.epsilon = eps;
  table.z_neg = z_neg;
  table.t_u = box.u_weight;
  table.t_t = box.t_degree;
  for (const auto& [m, l] : stable_negative.terms()) {
    if (!box.admits(m)) continue;
    CorrelatorKey base;
    base.epsilon = eps;
    for (const Variable& v : m.support()) {
      for (int e = 0; e < m.exponent(v); ++e) {
        if (v.kind == VarKind::t) {
          base.heavy.emplace_back(v.sector, 0);
        } else {
          base.light.push_back(v.sector);
        }
      }
    }
    const Rational symmetry(m.factorial_product());
    for (const auto& [p, vec] : l.powers()) {
      if (p >= 0) continue;
      if (-p > z_neg) continue;
      for (const auto& [sector, c] : vec.components()) {
        CorrelatorKey key = base;
        key.heavy.emplace_back(model.dual(sector), -p - 1);
        key = key.canonical();
        const Rational value = c * symmetry;
        auto [it, inserted] = table.entries.try_emplace(key, InvariantEntry{value, provenance});
        if (!inserted && it->second.value != value) {
          table.violations.push_back("symmetry conflict at " + key.to_string() + ": " +
                                     to_string(it->second.value) + " vs " + to_string(value));
        }
        const Vanishing why = trivially_zero(model, key);
        if (inserted && why != Vanishing::none) {
          table.violations.push_back("nonzero value " + to_string(value) + " on " + key.to_string() +
                                     " (" + to_string(why) + ")");
        }
      }
    }
  }
  return table;
}

struct CheckReport {
  std::size_t compared = 0;
  std::vector<std::string> mismatches;
  bool passed() const { return mismatches.empty(); }
};

/// String equation <phi_0, ..., phi_k psi^j> = <..., phi_k psi^{j-1}> and the
/// dilaton equation <phi_0 psi, x_1..x_m> = (m - 2) <x_1..x_m>, on light-free
/// keys whose reduced key is stable. Pairs are generated from every stored
/// entry on either side, so a missing (zero) partner is caught too.
inline CheckReport string_dilaton_check(const InvariantTable& table) {
  CheckReport report;
  const int max_heavy = table.t_t == Truncation::kUnbounded ? 255 : table.t_t + 1;
  std::set<CorrelatorKey> string_lhs;
  std::set<CorrelatorKey> dilaton_lhs;
  auto fits = [&](const CorrelatorKey& k) {
    return static_cast<int>(k.heavy.size()) <= max_heavy && k.psi_total() + 1 <= table.z_neg;
  };
  for (const auto& [key, entry] : table.entries) {
    (void)entry;
    if (!key.light.empty()) continue;
    const int m = static_cast<int>(key.heavy.size());
    // key as the left side of the string equation
    auto pos = std::find(key.heavy.begin(), key.heavy.end(), std::pair{0, 0});
    if (pos != key.heavy.end() && m >= 4) string_lhs.insert(key);
    // key as the right side: add phi_0, raise one slot
    if (m >= 3) {
      for (std::size_t i = 0; i < key.heavy.size(); ++i) {
        if (key.psi_total() > 0 && key.heavy[i].second == 0) continue;
        CorrelatorKey lhs = key;
        ++lhs.heavy[i].second;
        lhs.heavy.emplace_back(0, 0);
        lhs = lhs.canonical();
        if (fits(lhs)) string_lhs.insert(lhs);
      }
    }
    // dilaton, key as either side
    auto dil = std::find(key.heavy.begin(), key.heavy.end(), std::pair{0, 1});
    if (dil != key.heavy.end() && m - 1 >= 3 && key.psi_total() == 1) dilaton_lhs.insert(key);
    if (key.psi_total() == 0 && m >= 3) {
      CorrelatorKey lhs = key;
      lhs.heavy.emplace_back(0, 1);
      lhs = lhs.canonical();
      if (fits(lhs)) dilaton_lhs.insert(lhs);
    }
  }
  auto without = [](const CorrelatorKey& k, std::pair<int, int> h) {
    CorrelatorKey r = k;
    r.heavy.erase(std::find(r.heavy.begin(), r.heavy.end(), h));
    return r;
  };
  for (const CorrelatorKey& lhs : string_lhs) {
    Rational rhs = 0;
    CorrelatorKey lowered = without(lhs, {0, 0});
    auto slot = std::find_if(lowered.heavy.begin(), lowered.heavy.end(),
                             [](const auto& h) { return h.second > 0; });
    if (slot != lowered.heavy.end()) {
      --slot->second;
      rhs = table.value(lowered);
    }
    ++report.compared;
    if (table.value(lhs) != rhs) {
      report.mismatches.push_back("string: " + lhs.to_string() + " = " + to_string(table.value(lhs)) +
                                  ", expected " + to_string(rhs));
    }
  }
  for (const CorrelatorKey& lhs : dilaton_lhs) {
    const CorrelatorKey reduced = without(lhs, {0, 1});
    const Rational rhs = Rational(static_cast<int>(reduced.heavy.size()) - 2) * table.value(reduced);
    ++report.compared;
    if (table.value(lhs) != rhs) {
      report.mismatches.push_back("dilaton: " + lhs.to_string() + " = " + to_string(table.value(lhs)) +
                                  ", expected " + to_string(rhs));
    }
  }
  return report;
}

}  // namespace lgcone
