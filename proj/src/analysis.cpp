#include "uhsn/analysis.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "uhsn/error.hpp"
#include "uhsn/gf/generalized_inverse.hpp"
#include "uhsn/gf/matrix_codec.hpp"

namespace uhsn::analysis {

namespace {

// q^e, saturating at UINT64_MAX.
std::uint64_t saturating_pow(std::uint64_t q, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (r > UINT64_MAX / q) return UINT64_MAX;
    r *= q;
  }
  return r;
}

// The index-th matrix in base-q order (first entry least significant).
gf::FieldMatrix nth_matrix(const gf::FieldSpec& field, std::size_t rows, std::size_t cols, std::uint64_t index) {
  std::vector<gf::Element> entries(rows * cols);
  for (auto& e : entries) {
    e = static_cast<gf::Element>(index % field.modulus());
    index /= field.modulus();
  }
  return gf::FieldMatrix(field, rows, cols, std::move(entries));
}

std::uint64_t count_of(const gf::FieldSpec& field, std::size_t rows, std::size_t cols) {
  return saturating_pow(field.modulus(), std::uint64_t{rows} * cols);
}

}  // namespace

std::vector<std::uint8_t> Transcript::bytes() const {
  std::vector<std::uint8_t> out;
  for (const gf::FieldMatrix* m : {&t1, &t2, &t3, &t4}) {
    const auto b = gf::mat_serialize(*m);
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

Transcript capture(const handshake::Run& run) {
  return Transcript{run.node.params(), run.msg1.projector, run.msg2.p1, run.msg2.p2, run.msg3.masked};
}

Transcript capture(const netsim::HandshakeTrace& trace) {
  const gf::FieldMatrix& x = trace.node_secret;
  const handshake::Params params{x.rows(), x.cols(), trace.msg2.p1.cols(), x.field()};
  return Transcript{params, trace.msg1.projector, trace.msg2.p1, trace.msg2.p2, trace.msg3.masked};
}

Transcript capture(std::span<const netsim::WireRecord> wire, netsim::Address node, netsim::Address station,
                   std::uint16_t session_id, const handshake::Params& params) {
  using netsim::MsgType;
  std::map<MsgType, std::vector<netsim::RawFrame>> frames;
  for (const netsim::WireRecord& rec : wire) {
    const netsim::Frame f = netsim::Frame::decode(rec.frame);
    if (f.session_id != session_id) continue;
    const bool up = f.src == node && f.dst == station;
    const bool down = f.src == station && f.dst == node;
    if ((f.msg_type == MsgType::kHandshakeInit && up) || (f.msg_type == MsgType::kHandshakeReply && down) ||
        (f.msg_type == MsgType::kHandshakeConfirm && up)) {
      frames[f.msg_type].push_back(rec.frame);
    }
  }
  for (MsgType t : {MsgType::kHandshakeInit, MsgType::kHandshakeReply, MsgType::kHandshakeConfirm}) {
    if (!frames.contains(t)) throw Error(Errc::kIncompleteRun, "handshake message missing from the wire log");
  }
  const auto m1 = handshake::decode_msg1(netsim::reassemble(frames[MsgType::kHandshakeInit]).bytes, params);
  const auto m2 = handshake::decode_msg2(netsim::reassemble(frames[MsgType::kHandshakeReply]).bytes, params);
  const auto m3 = handshake::decode_msg3(netsim::reassemble(frames[MsgType::kHandshakeConfirm]).bytes, params);
  return Transcript{params, m1.projector, m2.p1, m2.p2, m3.masked};
}

std::vector<gf::FieldMatrix> all_generalized_inverses(const gf::FieldMatrix& a) {
  std::vector<gf::FieldMatrix> out;
  const std::uint64_t total = count_of(a.field(), a.cols(), a.rows());
  for (std::uint64_t i = 0; i < total; ++i) {
    gf::FieldMatrix b = nth_matrix(a.field(), a.cols(), a.rows(), i);
    if (gf::is_generalized_inverse(a, b)) out.push_back(std::move(b));
  }
  return out;
}

AmbiguityReport count_consistent_keys(const Transcript& t, const gf::FieldMatrix& true_key) {
  const handshake::Params& p = t.params;
  const gf::FieldSpec& f = p.field;
  const std::uint64_t x_space = count_of(f, p.m, p.n);
  const std::uint64_t y_space = count_of(f, p.n, p.k);
  const std::uint64_t pairs = saturating_pow(f.modulus(), std::uint64_t{p.m} * p.n + std::uint64_t{p.n} * p.k);
  if (pairs > kMaxEnumeratedPairs) {
    throw Error(Errc::kSpaceTooLarge, "q^(mn+nk) = " + (pairs == UINT64_MAX ? std::string(">2^64") : std::to_string(pairs)) +
                                          " candidate pairs exceeds the enumeration limit of 2^24");
  }
  // Generalized inverses are enumerated per candidate; bound that work too.
  const std::uint64_t inverse_work = saturating_pow(x_space, 2) + saturating_pow(y_space, 2);
  if (inverse_work > (std::uint64_t{1} << 32)) {
    throw Error(Errc::kSpaceTooLarge, "generalized-inverse enumeration too large for these dimensions");
  }

  // X' is consistent iff some generalized inverse X'_g gives X'_g X' = t1.
  std::vector<gf::FieldMatrix> xs;
  const std::size_t target_rank = gf::rank(t.t1);
  for (std::uint64_t i = 0; i < x_space; ++i) {
    gf::FieldMatrix x = nth_matrix(f, p.m, p.n, i);
    if (gf::rank(x) != target_rank) continue;
    const auto inverses = all_generalized_inverses(x);
    if (std::any_of(inverses.begin(), inverses.end(), [&](const gf::FieldMatrix& xg) { return xg * x == t.t1; })) {
      xs.push_back(std::move(x));
    }
  }

  // Y' must satisfy t1 Y' = t2; each admissible Y'_g yields a projector
  // P = Y' Y'_g that must give t1 P = t3, and then X' P = t4 pairs it up.
  std::set<std::vector<std::uint8_t>> keys;
  std::uint64_t consistent_pairs = 0;
  bool found = false;
  const auto true_bytes = gf::mat_serialize(true_key);
  for (std::uint64_t j = 0; j < y_space; ++j) {
    gf::FieldMatrix y = nth_matrix(f, p.n, p.k, j);
    if (!(t.t1 * y == t.t2)) continue;
    std::vector<gf::FieldMatrix> projectors;
    for (const gf::FieldMatrix& yg : all_generalized_inverses(y)) {
      gf::FieldMatrix proj = y * yg;
      if (!(t.t1 * proj == t.t3)) continue;
      if (std::find(projectors.begin(), projectors.end(), proj) == projectors.end()) projectors.push_back(std::move(proj));
    }
    if (projectors.empty()) continue;
    for (const gf::FieldMatrix& x : xs) {
      const bool match = std::any_of(projectors.begin(), projectors.end(),
                                     [&](const gf::FieldMatrix& proj) { return x * proj == t.t4; });
      if (!match) continue;
      ++consistent_pairs;
      auto key = gf::mat_serialize(x * y);
      if (key == true_bytes) found = true;
      keys.insert(std::move(key));
    }
  }
  return AmbiguityReport{p, pairs, consistent_pairs, keys.size(), found};
}

nlohmann::json AmbiguityReport::to_json() const {
  return {{"dims", {{"m", params.m}, {"n", params.n}, {"k", params.k}}},
          {"field_modulus", params.field.modulus()},
          {"total_secret_pairs_enumerated", total_secret_pairs_enumerated},
          {"consistent_pair_count", consistent_pair_count},
          {"consistent_key_count", consistent_key_count},
          {"true_key_found", true_key_found}};
}

bool key_leak_scan(const Transcript& t, const gf::FieldMatrix& key) {
  for (const gf::FieldMatrix* m : {&t.t1, &t.t2, &t.t3, &t.t4}) {
    if (*m == key) return true;
  }
  const auto needle = gf::mat_serialize(key);
  const auto hay = t.bytes();
  if (needle.empty()) return true;
  return std::search(hay.begin(), hay.end(), needle.begin(), needle.end()) != hay.end();
}

}  // namespace uhsn::analysis
