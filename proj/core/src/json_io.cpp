#include "stopgame/json_io.hpp"

#include <json.hpp>

namespace stopgame {

namespace {

using nlohmann::json;

Rat rat_from_json(const json& j, const char* what) {
  if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
  if (j.is_number_float()) return Rat::from_double_exact(j.get<double>());
  if (j.is_string()) {
    auto parsed = Rat::parse(j.get<std::string>());
    if (parsed.has_value()) return *parsed;
    throw ValidationError(std::string(what) + ": cannot parse rational '" +
                          j.get<std::string>() + "'");
  }
  throw ValidationError(std::string(what) + ": expected a number or a rational string");
}

json parse_document(const std::string& text) {
  json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) throw ValidationError("instance: malformed JSON");
  return doc;
}

std::vector<Rat> rat_array(const json& j, const char* what) {
  if (!j.is_array()) throw ValidationError(std::string(what) + ": expected an array");
  std::vector<Rat> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(rat_from_json(e, what));
  return out;
}

int mapped_node(const std::unordered_map<int, int>& ids, int original, const char* what) {
  auto it = ids.find(original);
  if (it == ids.end()) {
    throw ValidationError(std::string(what) + ": unknown node label " + std::to_string(original),
                          original);
  }
  return it->second;
}

std::shared_ptr<const Payoff> payoff_from_json(const std::shared_ptr<const FilteredSpace>& space,
                                               const json& doc,
                                               const std::unordered_map<int, int>& ids) {
  if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string()) {
    throw ValidationError("payoff: missing kind");
  }
  const std::string kind = doc["kind"].get<std::string>();
  if (kind == "abs_time_diff") {
    return std::make_shared<const Payoff>(Payoff::abs_time_diff(*space));
  }
  if (kind == "abs_diff_f") {
    if (!doc.contains("f")) throw ValidationError("abs_diff_f: missing f table");
    return std::make_shared<const Payoff>(Payoff::abs_diff_f(*space, rat_array(doc["f"], "abs_diff_f f")));
  }
  if (kind == "table") {
    if (!doc.contains("entries") || !doc["entries"].is_array()) {
      throw ValidationError("table payoff: missing entries");
    }
    std::vector<PayoffTableEntry> entries;
    for (const auto& e : doc["entries"]) {
      if (!e.contains("s") || !e.contains("t") || !e.contains("node") || !e.contains("v")) {
        throw ValidationError("table payoff: entry must have s, t, node, v");
      }
      entries.push_back(PayoffTableEntry{e["s"].get<int>(), e["t"].get<int>(),
                                         mapped_node(ids, e["node"].get<int>(), "table payoff"),
                                         rat_from_json(e["v"], "table payoff v")});
    }
    return std::make_shared<const Payoff>(Payoff::table(*space, entries));
  }
  if (kind == "w_process") {
    if (!doc.contains("W") || !doc["W"].is_object() || !doc["W"].contains("entries")) {
      throw ValidationError("w_process: missing W kernel entries");
    }
    WProcessSpec spec;
    for (const auto& e : doc["W"]["entries"]) {
      spec.kernel.push_back(WKernelEntry{e["s"].get<int>(), e["t"].get<int>(),
                                         rat_from_json(e["x"], "w_process x"),
                                         rat_from_json(e["y"], "w_process y"),
                                         rat_from_json(e["v"], "w_process v")});
    }
    if (!doc.contains("L")) throw ValidationError("w_process: missing Lipschitz constant L");
    spec.lipschitz = rat_from_json(doc["L"], "w_process L");
    if (!doc.contains("f") || !doc.contains("g")) {
      throw ValidationError("w_process: missing f or g node table");
    }
    spec.f_nodes = rat_array(doc["f"], "w_process f");
    spec.g_nodes = rat_array(doc["g"], "w_process g");
    return std::make_shared<const Payoff>(Payoff::w_process(*space, spec));
  }
  if (kind == "utility_spread") {
    if (!doc.contains("utility") || !doc["utility"].is_array()) {
      throw ValidationError("utility_spread: missing utility breakpoints");
    }
    UtilitySpreadSpec spec;
    for (const auto& pair : doc["utility"]) {
      if (!pair.is_array() || pair.size() != 2) {
        throw ValidationError("utility_spread: breakpoints must be [x, u] pairs");
      }
      spec.utility.emplace_back(rat_from_json(pair[0], "utility x"),
                                rat_from_json(pair[1], "utility u"));
    }
    if (!doc.contains("f") || !doc.contains("g")) {
      throw ValidationError("utility_spread: missing f or g node table");
    }
    spec.f_nodes = rat_array(doc["f"], "utility_spread f");
    spec.g_nodes = rat_array(doc["g"], "utility_spread g");
    return std::make_shared<const Payoff>(Payoff::utility_spread(*space, spec));
  }
  throw ValidationError("payoff: unknown kind '" + kind + "'");
}

}  // namespace

ParsedInstance parse_instance_json(const std::string& text) {
  const json doc = parse_document(text);
  if (!doc.is_object() || !doc.contains("grid") || !doc.contains("nodes")) {
    throw ValidationError("instance: expected an object with grid and nodes");
  }

  SpaceSpec spec;
  spec.grid = rat_array(doc["grid"], "grid");
  if (!doc["nodes"].is_array()) throw ValidationError("instance: nodes must be an array");
  for (const auto& n : doc["nodes"]) {
    if (!n.is_object() || !n.contains("id") || !n.contains("depth")) {
      throw ValidationError("instance: every node needs id and depth");
    }
    SpaceNodeSpec node;
    node.id = n["id"].get<int>();
    node.depth = n["depth"].get<int>();
    if (n.contains("parent")) node.parent = n["parent"].get<int>();
    if (n.contains("p")) node.branch_prob = rat_from_json(n["p"], "node probability");
    spec.nodes.push_back(node);
  }

  ParsedInstance out;
  out.space = std::make_shared<const FilteredSpace>(FilteredSpace::build(spec));
  for (int internal = 0; internal < out.space->node_count(); ++internal) {
    out.internal_id_by_original.emplace(out.space->original_id(internal), internal);
  }
  if (doc.contains("payoff")) {
    out.payoff = payoff_from_json(out.space, doc["payoff"], out.internal_id_by_original);
  }
  return out;
}

std::shared_ptr<const Payoff> parse_payoff_json(
    const std::shared_ptr<const FilteredSpace>& space, const std::string& text,
    const std::unordered_map<int, int>& internal_id_by_original) {
  return payoff_from_json(space, parse_document(text), internal_id_by_original);
}

}  // namespace stopgame
