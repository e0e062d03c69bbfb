#include "uhsn/cli.hpp"

#include <array>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "uhsn/analysis.hpp"
#include "uhsn/crypto/vectors.hpp"
#include "uhsn/error.hpp"
#include "uhsn/netsim/costs.hpp"
#include "uhsn/netsim/simulator.hpp"

#ifndef UHSN_DEFAULT_VECTOR_FILE
#define UHSN_DEFAULT_VECTOR_FILE "tests/vectors/crypto_vectors.txt"
#endif

namespace uhsn::cli {

namespace {

using nlohmann::json;

struct Options {
  std::uint32_t field = 251;
  std::string dims = "2,3,2";
  std::uint64_t seed = 1;
  std::string scenario;
  std::string output;
  std::string format = "json";
  std::string accounting = "scheme_total";
  bool exact_energy = false;
  bool no_auth_tag = false;
  std::size_t trials = 1;
  std::string vectors = UHSN_DEFAULT_VECTOR_FILE;
  bool write_vectors = false;
};

struct Dims {
  std::size_t m, n, k;
};

Dims parse_dims(const std::string& text) {
  std::array<std::size_t, 3> v{};
  static constexpr std::array<const char*, 3> kNames{"m", "n", "k"};
  std::istringstream in(text);
  std::string part;
  std::size_t i = 0;
  while (std::getline(in, part, ',')) {
    if (i == 3) throw Error(Errc::kConfig, "dims: expected m,n,k");
    const std::string name = kNames[i];
    std::size_t used = 0;
    long long x = 0;
    try {
      x = std::stoll(part, &used);
    } catch (const std::logic_error&) {
      throw Error(Errc::kConfig, name + ": '" + part + "' is not an integer");
    }
    if (used != part.size()) throw Error(Errc::kConfig, name + ": '" + part + "' is not an integer");
    if (x < 1) throw Error(Errc::kConfig, name + ": dimension must be >= 1 (got " + part + ")");
    if (x > 255) throw Error(Errc::kConfig, name + ": dimension must be <= 255 (got " + part + ")");
    v[i++] = static_cast<std::size_t>(x);
  }
  if (i != 3) throw Error(Errc::kConfig, "dims: expected m,n,k");
  return Dims{v[0], v[1], v[2]};
}

gf::FieldSpec parse_field(std::uint32_t q) {
  if (!gf::is_prime(q)) throw Error(Errc::kConfig, "field: " + std::to_string(q) + " is not prime");
  return gf::FieldSpec(q);
}

void require_json(const Options& o, const char* command) {
  if (o.format != "json") throw Error(Errc::kConfig, std::string("format: ") + command + " only emits json");
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.output, std::ios::binary);
  if (!file) throw Error(Errc::kConfig, "output: cannot write " + o.output);
  file << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

int cmd_handshake(const Options& o, std::ostream& out) {
  require_json(o, "handshake");
  const Dims d = parse_dims(o.dims);
  const gf::FieldSpec field = parse_field(o.field);
  const netsim::HandshakeCostReport r = netsim::handshake_cost_report(d.m, d.n, d.k, field, o.seed);
  json j = r.to_json();
  j["seed"] = o.seed;
  j["formula_bits"] = d.n * (2 * d.n + d.k + d.m);
  emit(o, dump(j), out);
  return r.agreed ? kExitOk : kExitViolation;
}

int cmd_e2e(const Options& o, std::ostream& out) {
  require_json(o, "e2e");
  if (o.scenario.empty()) throw Error(Errc::kConfig, "scenario: a scenario file is required");
  netsim::ScenarioConfig cfg = netsim::load_scenario(o.scenario);
  if (o.no_auth_tag) cfg.suite.auth_tag = false;
  const netsim::SimulationReport report = netsim::run_scenario(cfg);
  json j = report.to_json();
  const auto accounting = netsim::parse_accounting(o.accounting);
  j["comparison"] = netsim::comparison_json(netsim::comparison_table(accounting, o.exact_energy));
  bool ok = true;
  for (const auto& h : report.handshakes) ok = ok && h.agreed && !h.weak;
  for (const auto& f : report.flows) ok = ok && f.delivered == f.expect_delivered;
  j["status"] = ok ? "ok" : "flow_failure";
  emit(o, dump(j), out);
  return ok ? kExitOk : kExitViolation;
}

int cmd_costs(const Options& o, std::ostream& out) {
  const Dims d = parse_dims(o.dims);
  const gf::FieldSpec field = parse_field(o.field);
  const auto accounting = netsim::parse_accounting(o.accounting);
  const auto rows = netsim::comparison_table(accounting, o.exact_energy);
  if (o.format == "csv") {
    emit(o, netsim::comparison_csv(rows), out);
    return kExitOk;
  }
  if (o.format != "json") throw Error(Errc::kConfig, "format: expected json or csv");
  const auto hs = netsim::handshake_cost_report(d.m, d.n, d.k, field, o.seed);
  json j;
  j["accounting"] = std::string(netsim::accounting_name(accounting));
  j["exact_energy"] = o.exact_energy;
  j["comparison"] = netsim::comparison_json(rows);
  const auto per_message = netsim::node_to_node_cost_report(netsim::Accounting::kPerMessage, o.exact_energy);
  const auto scheme_total = netsim::node_to_node_cost_report(netsim::Accounting::kSchemeTotal, o.exact_energy);
  j["node_to_node"] = {
      {"per_message", {{"sender_mj", per_message.sender.millijoules()}, {"receiver_mj", per_message.receiver.millijoules()}}},
      {"scheme_total",
       {{"sender_mj", scheme_total.sender.millijoules()}, {"receiver_mj", scheme_total.receiver.millijoules()}}}};
  j["per_frame"] = {{"tx_deci_uj", netsim::kTxPerFrame.deci_uj()},
                    {"rx_deci_uj", netsim::kRxPerFrame.deci_uj()},
                    {"frame_bytes", netsim::kFrameSize},
                    {"cycles_per_transmitted_bit", netsim::kCyclesPerTransmittedBit}};
  j["handshake"] = hs.to_json();
  j["handshake"]["formula_bits"] = d.n * (2 * d.n + d.k + d.m);
  emit(o, dump(j), out);
  return kExitOk;
}

int cmd_attack(const Options& o, std::ostream& out) {
  require_json(o, "attack");
  const Dims d = parse_dims(o.dims);
  const gf::FieldSpec field = parse_field(o.field);
  if (o.trials == 0) throw Error(Errc::kConfig, "trials: must be >= 1");
  const handshake::Params params{d.m, d.n, d.k, field};
  json runs = json::array();
  bool sound = true;
  std::uint64_t min_count = UINT64_MAX, max_count = 0, leaks = 0, closed_form = 0;
  for (std::size_t t = 0; t < o.trials; ++t) {
    const std::uint64_t seed = o.seed + t;
    const handshake::Run run = handshake::run_handshake(params, {seed, 1}, {seed, 2});
    const analysis::Transcript transcript = analysis::capture(run);
    const analysis::AmbiguityReport rep = [&] {
      try {
        return analysis::count_consistent_keys(transcript, run.node_key.matrix);
      } catch (const Error& e) {
        throw Error(Errc::kConfig, std::string("dims: ") + e.what());
      }
    }();
    const bool leak = analysis::key_leak_scan(transcript, run.node_key.matrix);
    sound = sound && rep.true_key_found;
    min_count = std::min(min_count, rep.consistent_key_count);
    max_count = std::max(max_count, rep.consistent_key_count);
    leaks += leak ? 1 : 0;
    // X Y Y_g X_g X Y reduces to X Y whenever either projector is the identity.
    const bool product_is_key = transcript.t4 * transcript.t2 == run.node_key.matrix;
    closed_form += product_is_key ? 1 : 0;
    json entry = rep.to_json();
    entry["seed"] = seed;
    entry["weak_key"] = run.node_key.weak();
    entry["key_in_transcript"] = leak;
    entry["key_equals_t4_t2"] = product_is_key;
    runs.push_back(std::move(entry));
  }
  json j{{"dims", {{"m", d.m}, {"n", d.n}, {"k", d.k}}},
         {"field_modulus", field.modulus()},
         {"trials", o.trials},
         {"true_key_found", sound},
         {"min_consistent_keys", min_count},
         {"max_consistent_keys", max_count},
         {"key_in_transcript_runs", leaks},
         {"key_equals_t4_t2_runs", closed_form},
         {"runs", std::move(runs)}};
  emit(o, dump(j), out);
  return sound ? kExitOk : kExitViolation;
}

int cmd_vectors(const Options& o, std::ostream& out, std::ostream& err) {
  const crypto::VectorSet generated = crypto::generate_reference_vectors();
  if (o.write_vectors) {
    std::ofstream file(o.vectors, std::ios::binary);
    if (!file) throw Error(Errc::kConfig, "vectors: cannot write " + o.vectors);
    file << crypto::format_vectors(generated);
    out << "wrote " << generated.kdf.size() + generated.cipher.size() << " vectors to " << o.vectors << "\n";
    return kExitOk;
  }
  std::ifstream file(o.vectors, std::ios::binary);
  if (!file) throw Error(Errc::kConfig, "vectors: cannot open " + o.vectors);
  std::ostringstream buf;
  buf << file.rdbuf();
  const crypto::VectorSet frozen = crypto::parse_vectors(buf.str());
  crypto::VectorCheck check = crypto::verify_vectors(frozen);
  // The regenerated set must also reproduce the frozen file line for line.
  if (crypto::format_vectors(generated) != crypto::format_vectors(frozen)) {
    check.mismatches.push_back("regenerated vectors differ from " + o.vectors);
  }
  json j{{"file", o.vectors}, {"checked", check.checked}, {"mismatches", check.mismatches}, {"ok", check.ok()}};
  emit(o, dump(j), out);
  if (!check.ok()) {
    for (const auto& m : check.mismatches) err << "vector mismatch: " << m << "\n";
    return kExitViolation;
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pseudoinverse-matrix key agreement for healthcare sensor networks: handshake, "
               "key-generator flows, energy accounting and toy-scale transcript analysis."};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&o](CLI::App* sub) {
    sub->add_option("--field", o.field, "Prime field modulus q");
    sub->add_option("--dims", o.dims, "Matrix dimensions m,n,k");
    sub->add_option("--seed", o.seed, "Deterministic seed");
    sub->add_option("--output", o.output, "Write the report here instead of stdout");
    sub->add_option("--format", o.format, "json or csv");
  };

  CLI::App* hs = app.add_subcommand("handshake", "Run one node/SBS key handshake and report agreement and cost");
  add_common(hs);

  CLI::App* e2e = app.add_subcommand("e2e", "Run a scripted scenario (handshakes, CKG flows, revocations)");
  add_common(e2e);
  e2e->add_option("--scenario", o.scenario, "Scenario JSON file")->required();
  e2e->add_flag("--no-auth-tag", o.no_auth_tag, "Disable ciphertext authentication tags");
  e2e->add_option("--accounting", o.accounting, "per_message or scheme_total");
  e2e->add_flag("--exact-energy", o.exact_energy, "Use unrounded per-frame energy in the comparison block");

  CLI::App* costs = app.add_subcommand("costs", "Emit the communication-cost comparison table");
  add_common(costs);
  costs->add_option("--accounting", o.accounting, "per_message or scheme_total");
  costs->add_flag("--exact-energy", o.exact_energy, "Use unrounded per-frame energy");

  CLI::App* attack = app.add_subcommand("attack", "Exhaustive eavesdropper analysis at toy scale");
  add_common(attack);
  attack->add_option("--trials", o.trials, "Number of seeded transcripts to analyse");

  CLI::App* vectors = app.add_subcommand("vectors", "Verify (or regenerate) the frozen KDF/cipher vectors");
  vectors->add_option("--vectors", o.vectors, "Vector file");
  vectors->add_option("--output", o.output, "Write the report here instead of stdout");
  vectors->add_flag("--write", o.write_vectors, "Overwrite the vector file from this build");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (hs->parsed()) return cmd_handshake(o, out);
    if (e2e->parsed()) return cmd_e2e(o, out);
    if (costs->parsed()) return cmd_costs(o, out);
    if (attack->parsed()) {
      // The options are shared, so the toy-scale defaults apply only when unset.
      if (attack->count("--field") == 0) o.field = 2;
      if (attack->count("--dims") == 0) o.dims = "2,2,2";
      return cmd_attack(o, out);
    }
    if (vectors->parsed()) return cmd_vectors(o, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.code()) {
      case Errc::kConfig:
      case Errc::kNotPrime:
      case Errc::kSpaceTooLarge:
        return kExitConfig;
      default:
        return kExitViolation;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitViolation;
  }
  return kExitConfig;
}

}  // namespace uhsn::cli
