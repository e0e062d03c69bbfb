#include <gtest/gtest.h>

#include <algorithm>

#include "uhsn/crypto/cipher.hpp"
#include "uhsn/error.hpp"
#include "uhsn/gf/matrix_codec.hpp"
#include "uhsn/gf/rng.hpp"
#include "uhsn/netsim/costs.hpp"
#include "uhsn/netsim/simulator.hpp"

using namespace uhsn;
using namespace uhsn::netsim;

namespace {

ScenarioConfig ward(std::size_t sensors, std::uint64_t seed = 3) {
  ScenarioConfig c;
  c.seed = seed;
  c.nodes.push_back({1, Role::kBaseStation, 0});
  for (std::size_t i = 0; i < sensors; ++i)
    c.nodes.push_back({static_cast<Address>(10 + i), i % 2 ? Role::kHealthcareService : Role::kPatient, 0});
  return c;
}

std::vector<std::uint8_t> text(std::string_view s) { return {s.begin(), s.end()}; }

std::vector<std::uint8_t> all_wire_bytes(const Simulator& sim) {
  std::vector<std::uint8_t> out;
  for (const auto& w : sim.wire_log()) out.insert(out.end(), w.frame.begin(), w.frame.end());
  return out;
}

bool contains(const std::vector<std::uint8_t>& hay, std::span<const std::uint8_t> needle) {
  return std::search(hay.begin(), hay.end(), needle.begin(), needle.end()) != hay.end();
}

}  // namespace

TEST(Frame, EncodeDecodeRoundTrip) {
  Frame f;
  f.src = 0x0102;
  f.dst = 0x0304;
  f.length = 7;
  f.packet_id = 9;
  f.control = kControlLastFragment;
  f.msg_type = MsgType::kKeyResponse;
  f.session_id = 0xBEEF;
  f.seq = 3;
  f.frag_index = 0;
  f.frag_total = 1;
  f.dims_hint = 0x0203;
  for (std::size_t i = 0; i < 7; ++i) f.payload[i] = static_cast<std::uint8_t>(i + 1);
  const RawFrame raw = f.encode();
  EXPECT_EQ(raw.size(), 49u);
  EXPECT_EQ(raw[0], 0x01);
  EXPECT_EQ(raw[3], 0x04);
  EXPECT_EQ(raw[kPreambleSize], static_cast<std::uint8_t>(MsgType::kKeyResponse));
  std::uint8_t x = 0;
  for (std::size_t i = 0; i < raw.size(); ++i)
    if (i != kCrcOffset) x ^= raw[i];
  EXPECT_EQ(raw[kCrcOffset], x);
  const Frame back = Frame::decode(raw);
  EXPECT_EQ(back.encode(), raw);
  EXPECT_EQ(back.session_id, 0xBEEF);
}

TEST(Frame, EverySingleByteCorruptionIsDetected) {
  Envelope env{10, 1, MsgType::kData, 0, 0, 0, text("corruption sweep")};
  const RawFrame raw = fragment(env)[0];
  for (std::size_t i = 0; i < raw.size(); ++i)
    for (int delta = 1; delta < 256; ++delta) {
      RawFrame bad = raw;
      bad[i] ^= static_cast<std::uint8_t>(delta);
      try {
        Frame::decode(bad);
        FAIL() << i << " " << delta;
      } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::kCrcFailure);
      }
    }
}

TEST(Frame, FragmentCounts) {
  auto frames_for = [](std::size_t n) {
    return fragment(Envelope{1, 2, MsgType::kData, 0, 0, 0, std::vector<std::uint8_t>(n, 0xAA)}).size();
  };
  EXPECT_EQ(frames_for(0), 1u);
  EXPECT_EQ(frames_for(1), 1u);
  EXPECT_EQ(frames_for(32), 1u);
  EXPECT_EQ(frames_for(33), 2u);
  EXPECT_EQ(frames_for(64), 2u);
  EXPECT_EQ(frames_for(kMaxMessageSize), 255u);
  try {
    frames_for(kMaxMessageSize + 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kOversize);
  }
}

TEST(Frame, ReassemblyRoundTripsInAnyOrder) {
  gf::CounterRng rng({5, 5});
  for (std::size_t len : {0u, 5u, 32u, 500u, 8160u}) {
    Envelope env{7, 8, MsgType::kData, 3, 4, 0x0102, {}};
    env.bytes.resize(len);
    for (auto& b : env.bytes) b = static_cast<std::uint8_t>(rng.next_u64());
    auto frames = fragment(env, 250);
    EXPECT_EQ(reassemble(frames), env);
    std::reverse(frames.begin(), frames.end());
    EXPECT_EQ(reassemble(frames), env);
    if (frames.size() > 1) {
      auto missing = frames;
      missing.pop_back();
      EXPECT_THROW(reassemble(missing), Error);
      auto dup = frames;
      dup.back() = dup.front();
      EXPECT_THROW(reassemble(dup), Error);
    }
  }
}

TEST(Energy, PerFrameConstantsAreExact) {
  EXPECT_EQ(kFrameSize, 49u);
  EXPECT_EQ(kTxPerFrame.deci_uj(), 29008);
  EXPECT_EQ(kRxPerFrame.deci_uj(), 14014);
  EXPECT_EQ(kTxPerFrame.uj_string(), "2900.8");
  EXPECT_EQ(kRxPerFrame.uj_string(), "1401.4");
  EXPECT_EQ(Energy{}.uj_string(), "0");
  EXPECT_EQ((kRoundedTxPerFrame * 2 + kRoundedRxPerFrame).mj_string(), "7.2");
}

TEST(Energy, LedgerChargesFramesTimesConstants) {
  EnergyLedger l;
  l.add_node(5);
  l.charge_tx(5, 3);
  l.charge_rx(5, 2);
  EXPECT_EQ(l.entry(5).tx_energy, kTxPerFrame * 3);
  EXPECT_EQ(l.entry(5).rx_energy, kRxPerFrame * 2);
  EXPECT_EQ(l.entry(5).tx_bytes, 3 * kFrameSize);
  EXPECT_THROW(l.charge_tx(6, 1), Error);
}

TEST(Costs, ReferenceTable) {
  const auto& ref = reference_costs();
  EXPECT_EQ(ref[0].sender.mj_string(), "6.3");
  EXPECT_EQ(ref[0].receiver.mj_string(), "4.8");
  EXPECT_EQ(ref[2].sender.mj_string(), "19.4");
  EXPECT_EQ(ref[2].receiver.mj_string(), "19.6");
  auto pm = node_to_node_cost_report(Accounting::kPerMessage);
  EXPECT_EQ(pm.sender.mj_string(), "2.9");
  EXPECT_EQ(pm.receiver.mj_string(), "5.7");
  auto st = node_to_node_cost_report(Accounting::kSchemeTotal);
  EXPECT_EQ(st.sender.mj_string(), "10.1");
  EXPECT_EQ(st.receiver.mj_string(), "5.7");
  auto table = comparison_table(Accounting::kSchemeTotal);
  EXPECT_EQ(table[1].sender.mj_string(), ref[1].sender.mj_string());
  EXPECT_EQ(table[1].receiver.mj_string(), ref[1].receiver.mj_string());
  EXPECT_THROW(parse_accounting("both"), Error);
}

TEST(Costs, HandshakeBitFormulaOverGf2) {
  for (auto [m, n, k] : {std::tuple<std::size_t, std::size_t, std::size_t>{2, 3, 4}, {1, 1, 1}, {4, 2, 3}}) {
    auto r = handshake_cost_report(m, n, k, gf::FieldSpec(2), 1);
    EXPECT_EQ(r.transmitted_bits, n * (2 * n + k + m)) << m << n << k;
    EXPECT_EQ(r.msg1_bits, n * n);
    EXPECT_EQ(r.msg2_bits, n * k + n * n);
    EXPECT_EQ(r.msg3_bits, m * n);
  }
  EXPECT_EQ(handshake_cost_report(2, 3, 4, gf::FieldSpec(2)).transmitted_bits, 36u);
  EXPECT_EQ(handshake_cost_report(1, 1, 1, gf::FieldSpec(2)).transmitted_bits, 4u);
}

TEST(Costs, SmallHandshakeCostsSevenPointTwo) {
  auto r = handshake_cost_report(2, 3, 2, gf::FieldSpec(2), 1);
  EXPECT_TRUE(r.agreed);
  EXPECT_EQ(r.node_tx_frames, 2u);
  EXPECT_EQ(r.node_rx_frames, 1u);
  EXPECT_EQ(r.rounded.mj_string(), "7.2");
  EXPECT_EQ(r.exact.mj_string(), "7.203");
}

TEST(Scenario, ParseAndValidate) {
  const char* doc = R"({"field_modulus": 5, "dims": {"m": 1, "n": 2, "k": 1}, "seed": 9,
    "nodes": [{"id": 1, "role": "SBS"}, {"id": 10, "role": "PT"}, {"id": 20, "role": "HSS"}],
    "script": [{"op": "handshake", "node": 10}, {"op": "send", "from": 10, "to": 20, "message": "hi"},
               {"op": "revoke", "node": 10}, {"op": "send", "from": 10, "to": 20, "message": "x",
                "expect": "failed"}]})";
  auto c = parse_scenario(doc);
  EXPECT_EQ(c.field.modulus(), 5u);
  EXPECT_EQ(c.n, 2u);
  EXPECT_EQ(c.script.size(), 4u);
  EXPECT_FALSE(c.script[3].expect_delivered);

  auto error_of = [](const std::string& s) {
    try {
      parse_scenario(s);
    } catch (const Error& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(error_of(R"({"field_modulus": 4, "nodes": []})").find("field_modulus"), std::string::npos);
  EXPECT_NE(error_of(R"({"dims": {"m": 0, "n": 1, "k": 1}, "nodes": [{"id": 1, "role": "SBS"}]})").find("dims"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"nodes": [{"id": 10, "role": "PT"}]})").find("nodes"), std::string::npos);
  EXPECT_NE(error_of(R"({"nodes": [{"id": 1, "role": "SBS"}, {"id": 1, "role": "PT"}]})").find("nodes"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"nodes": [{"id": 1, "role": "SBS"}], "script": [{"op": "send", "from": 1, "to": 9}]})")
                .find("script[0]"),
            std::string::npos);
  EXPECT_FALSE(error_of("{ not json").empty());
}

TEST(Simulator, TwoNodeFlowDeliversAndCountsMessages) {
  Simulator sim(ward(2));
  EXPECT_TRUE(sim.handshake(10).agreed);
  EXPECT_TRUE(sim.handshake(11).agreed);
  const auto before_a = sim.ledger().entry(10), before_b = sim.ledger().entry(11);
  auto flow = sim.send(10, 11, text("blood pressure 120/80"));
  EXPECT_TRUE(flow.delivered) << flow.reason;
  EXPECT_EQ(flow.key_requests, 1u);
  const auto& a = sim.ledger().entry(10);
  const auto& b = sim.ledger().entry(11);
  EXPECT_EQ(a.messages_sent - before_a.messages_sent, 1u);
  EXPECT_EQ(a.messages_received - before_a.messages_received, 0u);
  EXPECT_EQ(b.messages_received - before_b.messages_received, 2u);
  EXPECT_EQ(b.messages_sent - before_b.messages_sent, 1u);
  for (const auto& [id, e] : sim.ledger().entries()) {
    EXPECT_EQ(e.tx_energy, kTxPerFrame * static_cast<std::int64_t>(e.frames_sent));
    EXPECT_EQ(e.rx_energy, kRxPerFrame * static_cast<std::int64_t>(e.frames_received));
  }
  // Second message reuses the cached decryption key.
  auto again = sim.send(10, 11, text("pulse 72"));
  EXPECT_TRUE(again.delivered);
  EXPECT_EQ(again.key_requests, 0u);
}

TEST(Simulator, FlowsFailWithoutKeys) {
  Simulator sim(ward(2));
  EXPECT_FALSE(sim.send(10, 11, text("x")).delivered);
  sim.handshake(10);
  auto f = sim.send(10, 11, text("x"));
  EXPECT_FALSE(f.delivered);
  EXPECT_NE(f.reason.find("refused"), std::string::npos);
  EXPECT_THROW(sim.send(10, 99, text("x")), Error);
}

TEST(Simulator, RevocationIsolatesOnlyTheRevokedNode) {
  Simulator sim(ward(12));
  for (Address id = 10; id < 22; ++id) ASSERT_TRUE(sim.handshake(id).agreed);
  ASSERT_TRUE(sim.send(10, 11, text("before")).delivered);
  sim.revoke(10, false);
  auto f = sim.send(10, 11, text("after"));
  EXPECT_FALSE(f.delivered);
  EXPECT_NE(f.reason.find("sender_revoked"), std::string::npos) << f.reason;
  EXPECT_FALSE(sim.send(12, 10, text("to revoked")).delivered);
  for (Address a = 11; a < 21; ++a) EXPECT_TRUE(sim.send(a, a + 1, text("ok")).delivered) << a;

  const auto re = sim.revoke(10, true);
  EXPECT_EQ(re.new_epoch, 1u);
  EXPECT_EQ(sim.node_key(10)->epoch, 1u);
  EXPECT_TRUE(sim.send(10, 11, text("rekeyed")).delivered);
}

TEST(Simulator, EavesdropperNeverSeesRawKeys) {
  Simulator sim(ward(4));
  for (Address id = 10; id < 14; ++id) sim.handshake(id);
  sim.send(10, 11, text("a"));
  sim.send(12, 13, text("b"));
  sim.send(11, 12, text("c"));
  const auto wire = all_wire_bytes(sim);
  for (Address id = 10; id < 14; ++id) {
    const auto key = sim.node_key(id);
    ASSERT_TRUE(key.has_value());
    EXPECT_FALSE(contains(wire, key->sym_key.bytes));
  }
}

TEST(Simulator, RunsAreDeterministic) {
  auto build = [] {
    auto c = ward(4, 17);
    c.script = {{ScriptStep::Op::kHandshake, 10}, {ScriptStep::Op::kHandshake, 11},
                {ScriptStep::Op::kSend, 0, 10, 11, "hello"}, {ScriptStep::Op::kRevoke, 10, 0, 0, "", true}};
    return run_scenario(c).to_json().dump();
  };
  EXPECT_EQ(build(), build());
  auto c = ward(4, 18);
  c.script = {{ScriptStep::Op::kHandshake, 10}};
  EXPECT_NE(run_scenario(c).to_json().dump(), build());
}

TEST(Simulator, HandshakeAcrossDimsUsesExpectedFrames) {
  for (std::size_t n = 1; n <= 4; ++n) {
    auto c = ward(1);
    c.field = gf::FieldSpec(251);
    c.m = 2;
    c.n = n;
    c.k = 3;
    Simulator sim(c);
    auto h = sim.handshake(10);
    EXPECT_TRUE(h.agreed);
    const auto msg1 = gf::encoded_size(c.field, n, n);
    const auto msg2 = gf::encoded_size(c.field, n, 3) + msg1;
    const auto msg3 = gf::encoded_size(c.field, 2, n);
    auto frames = [](std::size_t b) { return std::max<std::size_t>(1, (b + kPayloadSize - 1) / kPayloadSize); };
    EXPECT_EQ(h.node_tx_frames, frames(msg1) + frames(msg3));
    EXPECT_EQ(h.node_rx_frames, frames(msg2));
  }
}
