#include "gsg/instance_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "gsg/errors.hpp"

namespace gsg {

using nlohmann::json;

namespace {

std::string IdString(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw ValidationError("ids must be strings or integers");
}

int Lookup(const std::map<std::string, int>& index, const std::string& id) {
  auto it = index.find(id);
  return it == index.end() ? -1 : it->second;
}

}  // namespace

GameInstance ParseInstance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed instance JSON: ") + e.what());
  }
  try {
    GameInstance inst;
    for (const auto& t : doc.at("targets")) {
      inst.targets.push_back({t.at("rd").get<double>(), t.at("pd").get<double>(),
                              t.at("ra").get<double>(), t.at("pa").get<double>()});
    }
    auto& g = inst.graph;
    std::map<std::string, int> informant_index, attacker_index;
    for (const auto& u : doc.value("informants", json::array())) {
      informant_index.emplace(IdString(u), g.NumInformants());
      g.informant_ids.push_back(IdString(u));
    }
    for (const auto& a : doc.value("attackers", json::array())) {
      attacker_index.emplace(IdString(a.at("id")), g.NumAttackers());
      g.attacker_ids.push_back(IdString(a.at("id")));
      g.attack_prob.push_back(a.at("p").get<double>());
    }
    for (const auto& e : doc.value("edges", json::array())) {
      g.edges.push_back({Lookup(informant_index, IdString(e.at("u"))),
                         Lookup(attacker_index, IdString(e.at("v"))),
                         e.at("w").get<double>()});
    }
    inst.resources = doc.at("r").get<int>();
    inst.recruit_budget = doc.value("k", 0);
    inst.lambda = doc.at("lambda").get<double>();
    return inst;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("instance JSON missing or mistyped field: ") +
                          e.what());
  }
}

std::string DumpInstance(const GameInstance& instance, int indent) {
  json doc;
  doc["targets"] = json::array();
  for (const auto& t : instance.targets) {
    doc["targets"].push_back(
        {{"rd", t.reward_def}, {"pd", t.penalty_def}, {"ra", t.reward_att}, {"pa", t.penalty_att}});
  }
  const auto& g = instance.graph;
  doc["informants"] = g.informant_ids;
  doc["attackers"] = json::array();
  for (int v = 0; v < g.NumAttackers(); ++v) {
    doc["attackers"].push_back({{"id", g.attacker_ids[v]}, {"p", g.attack_prob[v]}});
  }
  doc["edges"] = json::array();
  for (const auto& e : g.edges) {
    if (e.informant < 0 || e.attacker < 0 || e.informant >= g.NumInformants() ||
        e.attacker >= g.NumAttackers()) {
      throw ValidationError("cannot serialize an edge with a dangling endpoint");
    }
    doc["edges"].push_back({{"u", g.informant_ids[e.informant]},
                            {"v", g.attacker_ids[e.attacker]},
                            {"w", e.intensity}});
  }
  doc["r"] = instance.resources;
  doc["k"] = instance.recruit_budget;
  doc["lambda"] = instance.lambda;
  return doc.dump(indent) + "\n";
}

GameInstance ReadInstanceFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open instance file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return ParseInstance(ss.str());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

void WriteInstanceFile(const std::filesystem::path& path,
                       const GameInstance& instance) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write instance file '" + path.string() + "'");
  out << DumpInstance(instance);
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

}  // namespace gsg
