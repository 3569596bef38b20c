// JSON / CSV serialization for models, invariant tables and check reports.
#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "lgcone/model.hpp"
#include "lgcone/pipelines.hpp"

namespace lgcone {

using Json = nlohmann::ordered_json;

inline LgModel model_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("weights") || !j.contains("degree")) {
    throw ModelError("model spec must be an object with \"weights\" and \"degree\"");
  }
  if (!j["weights"].is_array() || !j["degree"].is_number_integer()) {
    throw ModelError("model spec: \"weights\" must be an integer array and \"degree\" an integer");
  }
  std::vector<int> w;
  for (const auto& x : j["weights"]) {
    if (!x.is_number_integer()) throw ModelError("model spec: weights must be integers");
    w.push_back(x.get<int>());
  }
  return build_model(w, j["degree"].get<int>());
}

inline LgModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot read model spec '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ModelError("model spec '" + path + "' is not valid JSON: " + e.what());
  }
  return model_from_json(j);
}

inline Json model_json(const LgModel& m) {
  return Json{{"weights", m.weights()}, {"degree", m.degree()}};
}

inline std::string bound_text(int v) {
  return v == Truncation::kUnbounded ? "unbounded" : std::to_string(v);
}

inline Json model_report_json(const LgModel& m, int walls = 6) {
  Json charges = Json::array();
  for (const Rational& q : m.charges()) charges.push_back(to_string(q));
  Json degrees = Json::object();
  for (int k = 0; k < m.degree(); ++k) degrees[std::to_string(k)] = to_string(m.state_degree(k));
  Json pairing = Json::array();
  for (int i : m.narrow()) {
    Json row = Json::array();
    for (int j : m.narrow()) row.push_back(to_string(m.pairing(i, j)));
    pairing.push_back(row);
  }
  Json wall_list = Json::array();
  for (int n = 1; n <= walls; ++n) wall_list.push_back(to_string(make_rational(1, n)));
  return Json{{"model", model_json(m)},      {"charges", charges},
              {"total_charge", to_string(m.total_charge())},
              {"narrow", m.narrow()},         {"degrees", degrees},
              {"pairing", pairing},           {"chamber_walls", wall_list}};
}

inline std::string model_report_text(const LgModel& m, int walls = 6) {
  std::ostringstream os;
  os << "model " << m.name() << "\n";
  os << "charges";
  for (const Rational& q : m.charges()) os << ' ' << to_string(q);
  os << "\nq = " << to_string(m.total_charge()) << "\nnarrow {";
  for (std::size_t i = 0; i < m.narrow().size(); ++i) os << (i ? "," : "") << m.narrow()[i];
  os << "}\ndegrees";
  for (int k = 0; k < m.degree(); ++k) os << " deg(phi_" << k << ")=" << to_string(m.state_degree(k));
  os << "\npairing (narrow x narrow)\n";
  for (int i : m.narrow()) {
    os << ' ';
    for (int j : m.narrow()) os << ' ' << to_string(m.pairing(i, j));
    os << '\n';
  }
  os << "chamber walls";
  for (int n = 1; n <= walls; ++n) os << ' ' << to_string(make_rational(1, n));
  os << " ...\n";
  return os.str();
}

inline Json table_json(const InvariantTable& t) {
  Json entries = Json::array();
  for (const auto& [key, e] : t.entries) {
    Json heavy = Json::array();
    for (const auto& [k, j] : key.heavy) heavy.push_back(Json::array({k, j}));
    entries.push_back(Json{{"heavy", heavy},
                           {"light", key.light},
                           {"value", to_string(e.value)},
                           {"provenance", e.provenance}});
  }
  Json orders{{"t_u", t.t_u}, {"t_t", t.t_t}};
  orders["z_neg"] = t.z_neg == Truncation::kUnbounded ? Json(nullptr) : Json(t.z_neg);
  return Json{{"model", Json{{"weights", t.weights}, {"degree", t.degree}}},
              {"epsilon", t.epsilon.to_string()},
              {"orders", orders},
              {"normalization", "values include the overall factor d of the correlator definition"},
              {"entries", entries},
              {"violations", t.violations}};
}

inline std::string table_csv(const InvariantTable& t, bool header = true) {
  std::ostringstream os;
  if (header) os << "epsilon,heavy,light,value,provenance\n";
  for (const auto& [key, e] : t.entries) {
    Json heavy = Json::array();
    for (const auto& [k, j] : key.heavy) heavy.push_back(Json::array({k, j}));
    os << t.epsilon.to_string() << ",\"" << heavy.dump() << "\",\"" << Json(key.light).dump()
       << "\"," << to_string(e.value) << ',' << e.provenance << '\n';
  }
  return os.str();
}

inline Json truncation_json(const Truncation& t) {
  return Json{{"u_weight", bound_text(t.u_weight)},
              {"u_count", bound_text(t.u_count)},
              {"t_degree", bound_text(t.t_degree)},
              {"total_degree", bound_text(t.total_degree)}};
}

inline Json monomial_json(const Monomial& m) {
  std::string s = detail::monomial_text(m);
  if (!s.empty() && s.front() == ' ') s.erase(0, 1);
  return s.empty() ? Json("1") : Json(s);
}

}  // namespace lgcone
