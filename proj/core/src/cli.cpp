#include "stopgame/cli.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "stopgame/json_io.hpp"
#include "stopgame/refine.hpp"
#include "stopgame/verify.hpp"

namespace stopgame {

namespace {

using nlohmann::json;

struct CsvRow {
  std::string quantity;
  std::string value_num;
  std::string value_den;
  std::string mode;
  std::string witness_id;
};

json row_to_json(const CsvRow& row) {
  return json::array({row.quantity, row.value_num, row.value_den, row.mode, row.witness_id});
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string rows_to_csv(const std::vector<CsvRow>& rows) {
  std::string out = "quantity,value_num,value_den,mode,witness_id\n";
  for (const CsvRow& row : rows) {
    out += csv_escape(row.quantity) + "," + csv_escape(row.value_num) + "," +
           csv_escape(row.value_den) + "," + csv_escape(row.mode) + "," +
           csv_escape(row.witness_id) + "\n";
  }
  return out;
}

const char* mode_name(bool rational) { return rational ? "rational" : "float"; }

template <Scalar T>
json value_to_json(const T& v) {
  if constexpr (scalar_exact<T>()) {
    return v.str();
  } else {
    return v;
  }
}

template <Scalar T>
CsvRow value_row(const std::string& quantity, const T& v, bool rational,
                 const std::string& witness = "") {
  if constexpr (scalar_exact<T>()) {
    return CsvRow{quantity, v.num_str(), v.den_str(), mode_name(rational), witness};
  } else {
    return CsvRow{quantity, scalar_str<double>(v), "1", mode_name(rational), witness};
  }
}

template <Scalar T>
json family_json(const std::vector<T>& values) {
  json arr = json::array();
  for (const T& v : values) arr.push_back(value_to_json(v));
  return arr;
}

json instance_meta(const fixtures::Instance& instance) {
  json meta;
  meta["name"] = instance.name;
  meta["nodes"] = instance.space->node_count();
  meta["leaves"] = instance.space->leaf_count();
  json grid = json::array();
  for (const Rat& t : instance.space->grid().times) grid.push_back(t.str());
  meta["grid"] = grid;
  meta["payoff_kind"] = payoff_kind_name(instance.payoff->kind());
  return meta;
}

fixtures::Instance load_instance(const std::string& path, bool payoff_required) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open instance file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  ParsedInstance parsed = parse_instance_json(buf.str());
  if (payoff_required && parsed.payoff == nullptr) {
    throw ValidationError("instance file " + path + " has no payoff");
  }
  return fixtures::Instance{path, parsed.space, parsed.payoff};
}

template <Scalar T>
void solve_into(const fixtures::Instance& instance, const RunConfig& config, json& doc,
                std::vector<CsvRow>& rows) {
  const FilteredSpace& space = *instance.space;
  const Payoff& payoff = *instance.payoff;
  const StoppingTimeSet set = StoppingTimeSet::enumerate(space, config.cap_stopping_times);

  const auto lower = value_lower<T>(payoff, false).values;
  const auto lower_strict = value_lower<T>(payoff, true).values;
  const auto upper = value_upper<T>(payoff, false).values;
  const auto upper_strict = value_upper<T>(payoff, true).values;

  doc["families"]["V1"] = family_json(lower);
  doc["families"]["V1_strict"] = family_json(lower_strict);
  doc["families"]["V2"] = family_json(upper);
  doc["families"]["V2_strict"] = family_json(upper_strict);
  doc["families"]["diagonal"] = family_json(diagonal_per_node<T>(payoff));

  rows.push_back(value_row("V1[root]", lower[0], config.rational_mode));
  rows.push_back(value_row("V1+[root]", lower_strict[0], config.rational_mode));
  rows.push_back(value_row("V2[root]", upper[0], config.rational_mode));
  rows.push_back(value_row("V2+[root]", upper_strict[0], config.rational_mode));

  struct Variant {
    const char* lower_name;
    const char* upper_name;
    const std::vector<T>* lo;
    const std::vector<T>* up;
  };
  const Variant variants[] = {{"V1", "V2", &lower, &upper},
                              {"V1", "V2+", &lower, &upper_strict},
                              {"V1+", "V2", &lower_strict, &upper},
                              {"V1+", "V2+", &lower_strict, &upper_strict}};

  json games = json::array();
  for (const Variant& var : variants) {
    for (TieRule tie : {TieRule::kLow, TieRule::kHigh}) {
      DynkinSpec<T> spec{*var.lo, *var.up, tie};
      json game;
      game["lower"] = var.lower_name;
      game["upper"] = var.upper_name;
      game["tie"] = tie_rule_name(tie);
      const T inf_sup = open_loop_solve(set, spec, OpenLoopOrder::kInfSup).value;
      const T sup_inf = open_loop_solve(set, spec, OpenLoopOrder::kSupInf).value;
      game["inf_sup"] = value_to_json(inf_sup);
      game["sup_inf"] = value_to_json(sup_inf);
      bool ordered = true;
      for (std::size_t i = 0; i < var.lo->size() && ordered; ++i) {
        ordered = !((*var.up)[i] < (*var.lo)[i]);
      }
      game["ordered"] = ordered;
      if (ordered) {
        DynkinSolution<T> sol = dynkin_closed_loop(space, spec);
        game["closed_root"] = value_to_json(sol.root_value);
        game["values"] = family_json(sol.value);
        json regions;
        regions["tau"] = json(sol.tau_region);
        regions["rho"] = json(sol.rho_region);
        game["stop_regions"] = regions;
        game["tau_star"] = json(sol.tau_star.labels());
        game["rho_star"] = json(sol.rho_star.labels());
      }
      games.push_back(game);
      const std::string tag =
          std::string("D:") + var.lower_name + ":" + var.upper_name + ":" + tie_rule_name(tie);
      rows.push_back(value_row(tag + ":inf_sup", inf_sup, config.rational_mode));
      rows.push_back(value_row(tag + ":sup_inf", sup_inf, config.rational_mode));
    }
  }
  doc["dynkin"] = games;

  JJResult<T> jj = jj_decomposition(space, lower, upper);
  doc["jj"]["value"] = value_to_json(jj.value);
  doc["jj"]["iterations"] = jj.iterations;
  doc["jj"]["shift"] = value_to_json(jj.shift);
  rows.push_back(value_row("JJ[value]", jj.value, config.rational_mode));
}

template <Scalar T>
void oracle_into(const fixtures::Instance& instance, const RunConfig& config, json& doc,
                 std::vector<CsvRow>& rows) {
  SandwichReport<T> report =
      sandwich_report<T>(*instance.payoff, config.cap_stopping_times, config.cap_maps);
  const GameValues<T>& games = report.games;
  auto table_json = [](const std::vector<std::size_t>& t) {
    json arr = json::array();
    for (std::size_t v : t) arr.push_back(v);
    return arr;
  };
  doc["A_upper"] = value_to_json(games.a_upper);
  doc["A_lower"] = value_to_json(games.a_lower);
  doc["B_upper"] = value_to_json(games.b_upper);
  doc["B_lower"] = value_to_json(games.b_lower);
  doc["witnesses"]["A_upper"]["map"] = table_json(games.a_upper_map);
  doc["witnesses"]["A_upper"]["inner"] = games.a_upper_inner;
  doc["witnesses"]["A_lower"]["map"] = table_json(games.a_lower_map);
  doc["witnesses"]["A_lower"]["inner"] = games.a_lower_inner;
  doc["witnesses"]["B_upper"]["map"] = table_json(games.b_upper_map);
  doc["witnesses"]["B_upper"]["inner"] = games.b_upper_inner;
  doc["witnesses"]["B_lower"]["map"] = table_json(games.b_lower_map);
  doc["witnesses"]["B_lower"]["inner"] = games.b_lower_inner;

  // Enumeration manifest: witness tables index into this canonical order.
  const StoppingTimeSet set = StoppingTimeSet::enumerate(*instance.space, config.cap_stopping_times);
  json manifest = json::array();
  for (std::size_t i = 0; i < set.size(); ++i) manifest.push_back(json(set[i].leaf_depths()));
  doc["enumeration"] = manifest;

  doc["D1"] = value_to_json(report.d1);
  doc["D2"] = value_to_json(report.d2);
  doc["D3"] = value_to_json(report.d3);
  doc["D4"] = value_to_json(report.d4);
  doc["D5"] = value_to_json(report.d5);
  doc["D6"] = value_to_json(report.d6);
  doc["S1_binds"] = report.s1_binds;
  doc["S5_binds"] = report.s5_binds;
  json statuses = json::array();
  for (const SandwichStatus& s : report.statuses) {
    statuses.push_back(json{{"name", s.name}, {"pass", s.pass}, {"detail", s.detail}});
  }
  doc["statuses"] = statuses;

  rows.push_back(value_row("A_upper", games.a_upper, config.rational_mode, "map"));
  rows.push_back(value_row("A_lower", games.a_lower, config.rational_mode, "map"));
  rows.push_back(value_row("B_upper", games.b_upper, config.rational_mode, "map"));
  rows.push_back(value_row("B_lower", games.b_lower, config.rational_mode, "map"));
  rows.push_back(value_row("D1", report.d1, config.rational_mode));
  rows.push_back(value_row("D2", report.d2, config.rational_mode));
  rows.push_back(value_row("D3", report.d3, config.rational_mode));
  rows.push_back(value_row("D4", report.d4, config.rational_mode));
  rows.push_back(value_row("D5", report.d5, config.rational_mode));
  rows.push_back(value_row("D6", report.d6, config.rational_mode));
}

void refine_into(const RunConfig& config, json& doc, std::vector<CsvRow>& rows) {
  RefineStudy study =
      refine_study(refine_kind_from_name(config.refine_payoff), config.refine_levels, config.seed,
                   config.rational_mode, config.cap_stopping_times, config.cap_maps);
  doc["kind"] = refine_kind_name(study.kind);
  doc["seed"] = study.seed;
  json levels = json::array();
  for (const RefineLevel& level : study.levels) {
    json row;
    row["level"] = level.level;
    row["steps"] = level.steps;
    row["delta"] = level.delta.str();
    row["oracle_computable"] = level.oracle_computable;
    json values;
    for (const RefineValue& v : level.values) {
      values[v.quantity] = study.rational_mode ? json(v.exact.str()) : json(v.approx);
    }
    row["values"] = values;
    row["spread"] = study.rational_mode ? json(level.spread_exact.str()) : json(level.spread_float);
    row["d_spread"] =
        study.rational_mode ? json(level.d_spread_exact.str()) : json(level.d_spread_float);
    levels.push_back(row);

    const std::string tag = "level" + std::to_string(level.level);
    rows.push_back(value_row(tag + ".delta", level.delta, true));
    if (study.rational_mode) {
      rows.push_back(value_row(tag + ".spread", level.spread_exact, true));
      rows.push_back(value_row(tag + ".d_spread", level.d_spread_exact, true));
      for (const RefineValue& v : level.values) {
        rows.push_back(value_row(tag + "." + v.quantity, v.exact, true));
      }
    } else {
      rows.push_back(value_row(tag + ".spread", level.spread_float, false));
      rows.push_back(value_row(tag + ".d_spread", level.d_spread_float, false));
      for (const RefineValue& v : level.values) {
        rows.push_back(value_row(tag + "." + v.quantity, v.approx, false));
      }
    }
  }
  doc["levels"] = levels;
}

int counterexample_into(const RunConfig& config, json& doc, std::vector<CsvRow>& rows) {
  auto space = std::make_shared<const FilteredSpace>(fixtures::chain(2));
  auto payoff = std::make_shared<const Payoff>(fixtures::step_payoff(*space));
  fixtures::Instance instance{"counterexample", space, payoff};
  doc["instance"] = instance_meta(instance);
  GameValues<Rat> games = brute_game_values<Rat>(*payoff, config.cap_stopping_times, config.cap_maps);
  doc["A_upper"] = games.a_upper.str();
  doc["A_lower"] = games.a_lower.str();
  doc["B_upper"] = games.b_upper.str();
  doc["B_lower"] = games.b_lower.str();
  const bool ok = games.a_upper == Rat(1) && games.a_lower == Rat(0) &&
                  games.b_upper == Rat(0) && games.b_lower == Rat(1);
  doc["expected"] = {{"A_upper", "1"}, {"A_lower", "0"}, {"B_upper", "0"}, {"B_lower", "1"}};
  doc["golden_ok"] = ok;
  rows.push_back(value_row("A_upper", games.a_upper, true));
  rows.push_back(value_row("A_lower", games.a_lower, true));
  rows.push_back(value_row("B_upper", games.b_upper, true));
  rows.push_back(value_row("B_lower", games.b_lower, true));
  return ok ? kExitOk : kExitVerification;
}

int verify_into(const RunConfig& config, json& doc, std::vector<CsvRow>& rows) {
  std::vector<CheckResult> checks;
  if (config.instance_path.empty()) {
    checks = builtin_verification_battery(config.cap_stopping_times, config.cap_maps);
  } else {
    checks = verify_instance(load_instance(config.instance_path, true), config.cap_stopping_times,
                             config.cap_maps);
  }
  json arr = json::array();
  for (const CheckResult& c : checks) {
    json item;
    item["name"] = c.name;
    item["pass"] = c.pass;
    if (!c.detail.empty()) item["detail"] = c.detail;
    arr.push_back(item);
    rows.push_back(CsvRow{c.name, c.pass ? "1" : "0", "1", mode_name(true), c.detail});
  }
  doc["checks"] = arr;
  const int failures = count_failures(checks);
  doc["failures"] = failures;
  return failures == 0 ? kExitOk : kExitVerification;
}

void report_into(const RunConfig& config, json& doc, std::vector<CsvRow>& rows) {
  json sources = json::array();
  for (const std::string& path : config.report_inputs) {
    std::ifstream in(path);
    if (!in) throw ValidationError("report: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    json prior = json::parse(buf.str(), nullptr, false);
    if (prior.is_discarded() || !prior.is_object() || !prior.contains("csv_rows")) {
      throw ValidationError("report: " + path + " is not a prior run report");
    }
    sources.push_back(path);
    // Qualify quantities with the source command so merged rows stay unique.
    const std::string tag =
        prior.contains("command") ? prior["command"].get<std::string>() : std::string("run");
    for (const auto& row : prior["csv_rows"]) {
      rows.push_back(CsvRow{tag + "." + row[0].get<std::string>(), row[1].get<std::string>(),
                            row[2].get<std::string>(), row[3].get<std::string>(),
                            row[4].get<std::string>()});
    }
  }
  doc["sources"] = sources;
}

const char* command_name(RunConfig::Command c) {
  switch (c) {
    case RunConfig::Command::kSolve: return "solve";
    case RunConfig::Command::kOracle: return "oracle";
    case RunConfig::Command::kVerify: return "verify";
    case RunConfig::Command::kCounterexample: return "counterexample";
    case RunConfig::Command::kRefine: return "refine";
    case RunConfig::Command::kReport: return "report";
  }
  return "?";
}

}  // namespace

int run(const RunConfig& config, std::ostream& fallback) {
  json doc;
  doc["command"] = command_name(config.command);
  doc["mode"] = mode_name(config.rational_mode);
  doc["seed"] = config.seed;
  std::vector<CsvRow> rows;
  int exit_code = kExitOk;

  switch (config.command) {
    case RunConfig::Command::kSolve: {
      fixtures::Instance instance = load_instance(config.instance_path, true);
      doc["instance"] = instance_meta(instance);
      if (config.rational_mode) {
        solve_into<Rat>(instance, config, doc, rows);
      } else {
        solve_into<double>(instance, config, doc, rows);
      }
      break;
    }
    case RunConfig::Command::kOracle: {
      fixtures::Instance instance = load_instance(config.instance_path, true);
      doc["instance"] = instance_meta(instance);
      if (config.rational_mode) {
        oracle_into<Rat>(instance, config, doc, rows);
      } else {
        oracle_into<double>(instance, config, doc, rows);
      }
      break;
    }
    case RunConfig::Command::kVerify:
      exit_code = verify_into(config, doc, rows);
      break;
    case RunConfig::Command::kCounterexample:
      exit_code = counterexample_into(config, doc, rows);
      break;
    case RunConfig::Command::kRefine:
      refine_into(config, doc, rows);
      break;
    case RunConfig::Command::kReport:
      report_into(config, doc, rows);
      break;
  }

  json rows_json = json::array();
  for (const CsvRow& row : rows) rows_json.push_back(row_to_json(row));
  doc["csv_rows"] = rows_json;

  const std::string payload =
      config.format == RunConfig::Format::kJson ? doc.dump(2) + "\n" : rows_to_csv(rows);
  if (config.out_path.empty()) {
    fallback << payload;
  } else {
    std::ofstream out(config.out_path, std::ios::binary);
    if (!out) throw ValidationError("cannot open output file " + config.out_path);
    out << payload;
  }
  return exit_code;
}

}  // namespace stopgame
