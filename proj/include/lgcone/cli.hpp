// Command-line front end: model, ifunction, invariants, verify.
//
// Exit codes: 0 ok, 1 usage, 2 model invariant violated, 3 verification
// failure, 4 internal inconsistency.
#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lgcone/checks.hpp"
#include "lgcone/io.hpp"
#include "lgcone/pipelines.hpp"

namespace lgcone {

enum ExitCode { kOk = 0, kUsage = 1, kModelError = 2, kVerifyFailed = 3, kInconsistent = 4 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct JobConfig {
  std::string command;
  std::vector<int> weights;
  std::optional<int> degree;
  std::string model_path;
  std::vector<std::string> eps;
  std::optional<int> order;
  std::optional<int> t_order;
  std::optional<int> zneg;
  bool small = false;
  std::vector<std::string> checks;
  std::string out;
  std::string format;
  bool inject_fault = false;
};

/// Fills fields the command line left unset from a JSON config file.
inline void merge_config(JobConfig& job, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("config is not valid JSON: ") + e.what());
  }
  try {
    if (job.weights.empty() && j.contains("weights")) job.weights = j["weights"].get<std::vector<int>>();
    if (!job.degree && j.contains("degree")) job.degree = j["degree"].get<int>();
    if (job.model_path.empty() && j.contains("model")) {
      if (j["model"].is_string()) {
        job.model_path = j["model"].get<std::string>();
      } else {
        const LgModel m = model_from_json(j["model"]);
        job.weights = m.weights();
        job.degree = m.degree();
      }
    }
    if (job.eps.empty() && j.contains("eps")) {
      if (j["eps"].is_array()) {
        job.eps = j["eps"].get<std::vector<std::string>>();
      } else {
        job.eps = {j["eps"].get<std::string>()};
      }
    }
    if (!job.order && j.contains("order")) job.order = j["order"].get<int>();
    if (!job.t_order && j.contains("t_order")) job.t_order = j["t_order"].get<int>();
    if (!job.zneg && j.contains("zneg")) job.zneg = j["zneg"].get<int>();
    if (!job.small && j.contains("small")) job.small = j["small"].get<bool>();
    if (job.checks.empty() && j.contains("check")) {
      if (j["check"].is_array()) {
        job.checks = j["check"].get<std::vector<std::string>>();
      } else {
        job.checks = {j["check"].get<std::string>()};
      }
    }
    if (job.out.empty() && j.contains("out")) job.out = j["out"].get<std::string>();
    if (job.format.empty() && j.contains("format")) job.format = j["format"].get<std::string>();
    if (!job.inject_fault && j.contains("inject_fault")) job.inject_fault = j["inject_fault"].get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("config field has the wrong type: ") + e.what());
  }
}

inline LgModel job_model(const JobConfig& job) {
  if (!job.model_path.empty()) return load_model(job.model_path);
  if (job.weights.empty() || !job.degree) throw UsageError("give --weights and --degree, or --model");
  return build_model(job.weights, *job.degree);
}

inline Orders job_orders(const JobConfig& job) {
  Orders o;
  o.t_u = job.order.value_or(4);
  o.t_t = job.t_order.value_or(3);
  if (job.zneg) o.z_neg = *job.zneg;
  if (o.t_u < 0 || o.t_t < 0) throw UsageError("orders must be nonnegative");
  return o;
}

inline std::vector<Epsilon> job_eps(const JobConfig& job, std::vector<std::string> fallback) {
  std::vector<Epsilon> out;
  for (const std::string& e : job.eps.empty() ? fallback : job.eps) out.push_back(Epsilon::parse(e));
  return out;
}

inline void emit(const JobConfig& job, const std::string& text, std::ostream& out) {
  if (job.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(job.out);
  if (!f) throw UsageError("cannot write '" + job.out + "'");
  f << text;
}

inline int cmd_model(const JobConfig& job, std::ostream& out) {
  const LgModel m = job_model(job);
  emit(job, job.format == "json" ? model_report_json(m).dump(2) + "\n" : model_report_text(m), out);
  return kOk;
}

inline int cmd_ifunction(const JobConfig& job, std::ostream& out) {
  const LgModel m = job_model(job);
  const Truncation tr = Truncation::weighted(job.order.value_or(4));
  VectorZSeries s;
  if (!job.eps.empty()) {
    s = unstable_sum(m, Epsilon::parse(job.eps.front()), tr);
  } else if (job.small) {
    s = small_I(m, tr);
  } else {
    s = big_I(m, tr);
  }
  if (job.small && !job.eps.empty()) s = s.filtered([&](const Monomial& mono) {
    for (const Variable& v : mono.support())
      if (m.state_degree(v.sector) > 1) return false;
    return true;
  });
  const std::string text = dump(s);
  if (job.format == "json") {
    Json lines = Json::array();
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);) lines.push_back(line);
    emit(job, Json{{"model", model_json(m)}, {"terms", lines}}.dump(2) + "\n", out);
  } else {
    emit(job, text, out);
  }
  return kOk;
}

inline int cmd_invariants(const JobConfig& job, std::ostream& out) {
  const LgModel m = job_model(job);
  const Orders orders = job_orders(job);
  std::vector<InvariantTable> tables;
  std::string dumps;
  for (const Epsilon& eps : job_eps(job, {"infinity"})) {
    if (eps.kind() == Epsilon::Kind::infinity) {
      const int cap = std::max(orders.t_t, 1);
      if (job.small) {
        const MirrorSmall ms = mirror_small(m, cap);
        tables.push_back(mirror_small_table(m, ms, orders.z_neg));
        dumps += dump(ms.J);
      } else {
        const BigJ bj = big_J(m, cap);
        tables.push_back(big_J_table(m, bj, orders.z_neg));
        dumps += dump(bj.J);
      }
    } else {
      const JEpsilon je = j_epsilon(m, eps, orders);
      tables.push_back(je.table);
      dumps += dump(je.point.series);
    }
  }
  std::string text;
  if (job.format == "csv") {
    for (std::size_t i = 0; i < tables.size(); ++i) text += table_csv(tables[i], i == 0);
  } else if (job.format == "dump") {
    text = dumps;
  } else {
    Json j = Json::array();
    for (const auto& t : tables) j.push_back(table_json(t));
    text = (tables.size() == 1 ? j[0] : j).dump(2) + "\n";
  }
  emit(job, text, out);
  bool clean = true;
  for (const auto& t : tables) clean = clean && t.violations.empty();
  return clean ? kOk : kVerifyFailed;
}

inline int cmd_verify(const JobConfig& job, std::ostream& out) {
  const LgModel m = job_model(job);
  const Orders orders = job_orders(job);
  std::vector<std::string> checks = job.checks;
  if (checks.empty()) checks = {"regularity", "cor4", "transport", "string", "sigma", "routes", "selection"};
  Json reports = Json::array();
  bool all = true;
  for (const std::string& c : checks) {
    Json r;
    if (c == "regularity") {
      r = check_regularity(m, job_eps(job, {"1/2"}).front(), orders, job.inject_fault);
    } else if (c == "cor4") {
      r = check_cor4(m, orders.t_u);
    } else if (c == "transport") {
      std::vector<Epsilon> e = job_eps(job, {"infinity", "1/2"});
      if (e.size() == 1) e.insert(e.begin(), Epsilon::infinity());
      r = check_transport(m, e[0], e[1], orders);
    } else if (c == "string") {
      r = check_string(m, std::max(orders.t_t, 3));
    } else if (c == "sigma") {
      r = check_sigma(m, orders.t_u);
    } else if (c == "routes") {
      r = check_routes(m, orders.t_u);
    } else if (c == "selection") {
      Json sub = Json::array();
      bool ok = true;
      for (const Epsilon& e : job_eps(job, {"infinity", "1/2", "zero"})) {
        Json one = check_selection(m, e, orders.t_t + 1, orders.t_u);
        ok = ok && passed(one);
        sub.push_back(one);
      }
      r = status_json("selection", ok);
      r["tables"] = sub;
    } else {
      throw UsageError("unknown check '" + c + "'");
    }
    all = all && passed(r);
    reports.push_back(r);
  }
  Json report{{"model", model_json(m)}, {"status", all ? "pass" : "fail"}, {"checks", reports}};
  emit(job, report.dump(2) + "\n", out);
  return all ? kOk : kVerifyFailed;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  CLI::App app{"Exact genus-zero Landau-Ginzburg invariants of Fermat polynomials", "lgcone"};
  app.require_subcommand(1);
  JobConfig job;
  std::string config;
  std::optional<int> degree, order, t_order, zneg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--weights", job.weights, "weights w_1..w_N")->delimiter(',');
    sub->add_option("--degree", degree, "degree d");
    sub->add_option("--model", job.model_path, "model spec JSON file");
    sub->add_option("--config", config, "job config JSON file");
    sub->add_option("--out", job.out, "output file (default stdout)");
  };
  auto add_orders = [&](CLI::App* sub) {
    sub->add_option("--eps", job.eps, "epsilon: p/q, infinity or zero");
    sub->add_option("--order", order, "T_u, the u-weight cap");
    sub->add_option("--t-order", t_order, "T_t, the t-degree cap");
    sub->add_option("--zneg", zneg, "largest 1/z power reported");
    sub->add_flag("--small", job.small, "restrict to degree <= 1 directions");
  };

  CLI::App* model = app.add_subcommand("model", "print model data");
  add_common(model);
  model->add_option("--format", job.format)->check(CLI::IsMember({"json", "text"}));

  CLI::App* ifn = app.add_subcommand("ifunction", "dump the I-function or an unstable sum");
  add_common(ifn);
  add_orders(ifn);
  ifn->add_option("--format", job.format)->check(CLI::IsMember({"dump", "json"}));

  CLI::App* inv = app.add_subcommand("invariants", "invariant table");
  add_common(inv);
  add_orders(inv);
  inv->add_option("--format", job.format)->check(CLI::IsMember({"json", "csv", "dump"}));

  CLI::App* ver = app.add_subcommand("verify", "run verification checks");
  add_common(ver);
  add_orders(ver);
  ver->add_option("--check", job.checks)
      ->check(CLI::IsMember({"regularity", "cor4", "transport", "string", "sigma", "routes", "selection"}));
  ver->add_flag("--inject-fault", job.inject_fault, "perturb one coefficient before checking");
  ver->add_option("--format", job.format)->check(CLI::IsMember({"json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }
  job.degree = degree;
  job.order = order;
  job.t_order = t_order;
  job.zneg = zneg;
  for (CLI::App* sub : {model, ifn, inv, ver})
    if (sub->parsed()) job.command = sub->get_name();

  try {
    if (!config.empty()) merge_config(job, config);
    if (job.command == "model") return cmd_model(job, out);
    if (job.command == "ifunction") return cmd_ifunction(job, out);
    if (job.command == "invariants") return cmd_invariants(job, out);
    return cmd_verify(job, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ModelError& e) {
    err << "model error: " << e.what() << "\n";
    return kModelError;
  } catch (const InconsistencyError& e) {
    err << "inconsistency: " << e.what() << "\n";
    return kInconsistent;
  } catch (const SeriesError& e) {
    err << "inconsistency: " << e.what() << "\n";
    return kInconsistent;
  }
}

}  // namespace lgcone
