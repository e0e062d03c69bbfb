#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "uhsn/crypto/cipher.hpp"
#include "uhsn/gf/field.hpp"
#include "uhsn/handshake.hpp"
#include "uhsn/netsim/frame.hpp"

namespace uhsn::netsim {

enum class Role { kPatient, kHealthcareService, kBaseStation };

std::string_view role_name(Role role);

struct NodeIdentity {
  Address id = 0;
  Role role = Role::kPatient;
  // Every station currently maps to one logical SBS; kept for multi-station setups.
  std::uint16_t station_id = 0;
};

struct ScriptStep {
  enum class Op { kHandshake, kSend, kRevoke };
  Op op = Op::kHandshake;
  Address node = 0;  // handshake, revoke
  Address from = 0;  // send
  Address to = 0;    // send
  std::string message;
  bool rehandshake = false;  // revoke
  bool expect_delivered = true;  // send; "expect": "failed" flips it
};

// JSON document:
// {
//   "field_modulus": 251, "dims": {"m": 2, "n": 3, "k": 2}, "seed": 7,
//   "auth_tag": true, "hash": "SHA256", "analysis": false,
//   "nodes":  [{"id": 1, "role": "SBS"}, {"id": 10, "role": "PT"}, ...],
//   "script": [{"op": "handshake", "node": 10},
//              {"op": "send", "from": 10, "to": 20, "message": "...",
//               "expect": "delivered"},
//              {"op": "revoke", "node": 10, "rehandshake": false}]
// }
struct ScenarioConfig {
  gf::FieldSpec field{251};
  std::size_t m = 2;
  std::size_t n = 3;
  std::size_t k = 2;
  std::uint64_t seed = 1;
  crypto::CipherSuite suite;
  bool analysis = false;
  std::vector<NodeIdentity> nodes;
  std::vector<ScriptStep> script;

  handshake::Params params() const { return handshake::Params{m, n, k, field}; }
  // Throws Error(kConfig) with a "path: reason" message.
  void validate() const;
};

// Errors name the offending field path, or the line/column for syntax errors.
ScenarioConfig parse_scenario(std::string_view json_text);
ScenarioConfig load_scenario(const std::filesystem::path& path);

}  // namespace uhsn::netsim
