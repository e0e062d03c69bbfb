#include "uhsn/netsim/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "uhsn/error.hpp"

namespace uhsn::netsim {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& why) {
  throw Error(Errc::kConfig, path + ": " + why);
}

const json& require(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) fail(path + "." + key, "missing");
  return obj.at(key);
}

std::uint64_t as_uint(const json& v, const std::string& path, std::uint64_t max) {
  if (!v.is_number_unsigned()) fail(path, "expected a non-negative integer");
  const std::uint64_t x = v.get<std::uint64_t>();
  if (x > max) fail(path, "value " + std::to_string(x) + " exceeds " + std::to_string(max));
  return x;
}

bool as_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) fail(path, "expected true or false");
  return v.get<bool>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

Role parse_role(const json& v, const std::string& path) {
  const std::string s = as_string(v, path);
  if (s == "PT") return Role::kPatient;
  if (s == "HSS") return Role::kHealthcareService;
  if (s == "SBS") return Role::kBaseStation;
  fail(path, "expected one of PT, HSS, SBS (got '" + s + "')");
}

}  // namespace

std::string_view role_name(Role role) {
  switch (role) {
    case Role::kPatient: return "PT";
    case Role::kHealthcareService: return "HSS";
    case Role::kBaseStation: return "SBS";
  }
  return "?";
}

void ScenarioConfig::validate() const {
  if (m == 0) fail("dims.m", "must be >= 1");
  if (n == 0) fail("dims.n", "must be >= 1");
  if (k == 0) fail("dims.k", "must be >= 1");
  if (nodes.empty()) fail("nodes", "at least one node required");

  std::set<Address> ids;
  std::set<Address> sensors;
  std::size_t stations = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string path = "nodes[" + std::to_string(i) + "]";
    if (!ids.insert(nodes[i].id).second) fail(path + ".id", "duplicate id " + std::to_string(nodes[i].id));
    if (nodes[i].role == Role::kBaseStation) {
      ++stations;
    } else {
      sensors.insert(nodes[i].id);
    }
  }
  if (stations != 1) fail("nodes", "exactly one SBS required, found " + std::to_string(stations));

  for (std::size_t i = 0; i < script.size(); ++i) {
    const std::string path = "script[" + std::to_string(i) + "]";
    const ScriptStep& step = script[i];
    auto check_sensor = [&](Address id, const char* key) {
      if (!sensors.contains(id)) fail(path + "." + key, "unknown sensor node " + std::to_string(id));
    };
    switch (step.op) {
      case ScriptStep::Op::kHandshake:
      case ScriptStep::Op::kRevoke:
        check_sensor(step.node, "node");
        break;
      case ScriptStep::Op::kSend:
        check_sensor(step.from, "from");
        check_sensor(step.to, "to");
        if (step.message.size() + crypto::kCiphertextOverhead > kMaxMessageSize) {
          fail(path + ".message", "too long to fit in " + std::to_string(kMaxFragments) + " frames");
        }
        break;
    }
  }
}

ScenarioConfig parse_scenario(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::kConfig, std::string("syntax: ") + e.what());
  }
  if (!doc.is_object()) fail("$", "expected a JSON object");

  ScenarioConfig cfg;
  if (doc.contains("field_modulus")) {
    const auto q = as_uint(doc["field_modulus"], "field_modulus", 0xFFFFFFFFu);
    try {
      cfg.field = gf::FieldSpec(static_cast<std::uint32_t>(q));
    } catch (const Error& e) {
      fail("field_modulus", e.what());
    }
  }
  if (doc.contains("dims")) {
    const json& dims = doc["dims"];
    cfg.m = as_uint(require(dims, "m", "dims"), "dims.m", 255);
    cfg.n = as_uint(require(dims, "n", "dims"), "dims.n", 255);
    cfg.k = as_uint(require(dims, "k", "dims"), "dims.k", 255);
  }
  if (doc.contains("seed")) cfg.seed = as_uint(doc["seed"], "seed", UINT64_MAX);
  if (doc.contains("auth_tag")) cfg.suite.auth_tag = as_bool(doc["auth_tag"], "auth_tag");
  if (doc.contains("hash")) {
    cfg.suite.hash_name = as_string(doc["hash"], "hash");
    try {
      (void)crypto::HashFunction::named(cfg.suite.hash_name);
    } catch (const Error& e) {
      fail("hash", e.what());
    }
  }
  if (doc.contains("analysis")) cfg.analysis = as_bool(doc["analysis"], "analysis");

  const json& nodes = require(doc, "nodes", "$");
  if (!nodes.is_array()) fail("nodes", "expected an array");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string path = "nodes[" + std::to_string(i) + "]";
    NodeIdentity node;
    node.id = static_cast<Address>(as_uint(require(nodes[i], "id", path), path + ".id", 0xFFFF));
    node.role = parse_role(require(nodes[i], "role", path), path + ".role");
    if (nodes[i].contains("station_id")) {
      node.station_id = static_cast<std::uint16_t>(as_uint(nodes[i]["station_id"], path + ".station_id", 0xFFFF));
    }
    cfg.nodes.push_back(node);
  }

  if (doc.contains("script")) {
    const json& script = doc["script"];
    if (!script.is_array()) fail("script", "expected an array");
    for (std::size_t i = 0; i < script.size(); ++i) {
      const std::string path = "script[" + std::to_string(i) + "]";
      const json& s = script[i];
      const std::string op = as_string(require(s, "op", path), path + ".op");
      ScriptStep step;
      if (op == "handshake" || op == "revoke") {
        step.op = op == "handshake" ? ScriptStep::Op::kHandshake : ScriptStep::Op::kRevoke;
        step.node = static_cast<Address>(as_uint(require(s, "node", path), path + ".node", 0xFFFF));
        if (s.contains("rehandshake")) step.rehandshake = as_bool(s["rehandshake"], path + ".rehandshake");
      } else if (op == "send") {
        step.op = ScriptStep::Op::kSend;
        step.from = static_cast<Address>(as_uint(require(s, "from", path), path + ".from", 0xFFFF));
        step.to = static_cast<Address>(as_uint(require(s, "to", path), path + ".to", 0xFFFF));
        step.message = as_string(require(s, "message", path), path + ".message");
        if (s.contains("expect")) {
          const std::string expect = as_string(s["expect"], path + ".expect");
          if (expect != "delivered" && expect != "failed") {
            fail(path + ".expect", "expected delivered or failed (got '" + expect + "')");
          }
          step.expect_delivered = expect == "delivered";
        }
      } else {
        fail(path + ".op", "expected handshake, send or revoke (got '" + op + "')");
      }
      cfg.script.push_back(std::move(step));
    }
  }
  cfg.validate();
  return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kConfig, "scenario: cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

}  // namespace uhsn::netsim
