#include "uhsn/handshake.hpp"

#include <string>

#include "uhsn/error.hpp"
#include "uhsn/gf/generalized_inverse.hpp"
#include "uhsn/gf/matrix_codec.hpp"

namespace uhsn::handshake {

namespace {

void expect_shape(const gf::FieldMatrix& a, const Params& p, std::size_t rows, std::size_t cols,
                  const char* what) {
  if (!(a.field() == p.field)) throw Error(Errc::kFieldMismatch, std::string(what) + " is over the wrong field");
  if (a.rows() != rows || a.cols() != cols) {
    throw Error(Errc::kDimensionMismatch, std::string(what) + " is " + std::to_string(a.rows()) + "x" +
                                              std::to_string(a.cols()) + ", expected " +
                                              std::to_string(rows) + "x" + std::to_string(cols));
  }
}

void append(std::vector<std::uint8_t>& out, const gf::FieldMatrix& a) {
  const auto bytes = gf::mat_serialize(a);
  out.insert(out.end(), bytes.begin(), bytes.end());
}

}  // namespace

void Params::validate() const {
  if (m == 0) throw Error(Errc::kConfig, "m: dimension must be >= 1");
  if (n == 0) throw Error(Errc::kConfig, "n: dimension must be >= 1");
  if (k == 0) throw Error(Errc::kConfig, "k: dimension must be >= 1");
}

SharedKey make_shared_key(gf::FieldMatrix matrix, std::uint64_t epoch, const crypto::CipherSuite& suite) {
  crypto::SymmetricKey sym = crypto::derive_sym_key(matrix, epoch, suite);
  return SharedKey{std::move(matrix), sym, epoch};
}

std::vector<std::uint8_t> encode(const Msg1& msg) { return gf::mat_serialize(msg.projector); }

std::vector<std::uint8_t> encode(const Msg2& msg) {
  std::vector<std::uint8_t> out;
  append(out, msg.p1);
  append(out, msg.p2);
  return out;
}

std::vector<std::uint8_t> encode(const Msg3& msg) { return gf::mat_serialize(msg.masked); }

Msg1 decode_msg1(std::span<const std::uint8_t> bytes, const Params& p) {
  return Msg1{gf::mat_deserialize(bytes, p.field, p.n, p.n)};
}

Msg2 decode_msg2(std::span<const std::uint8_t> bytes, const Params& p) {
  const std::size_t first = gf::encoded_size(p.field, p.n, p.k);
  const std::size_t second = gf::encoded_size(p.field, p.n, p.n);
  if (bytes.size() != first + second) {
    throw Error(Errc::kMalformed, "handshake reply is " + std::to_string(bytes.size()) + " bytes, expected " +
                                      std::to_string(first + second));
  }
  return Msg2{gf::mat_deserialize(bytes.first(first), p.field, p.n, p.k),
              gf::mat_deserialize(bytes.subspan(first), p.field, p.n, p.n)};
}

Msg3 decode_msg3(std::span<const std::uint8_t> bytes, const Params& p) {
  return Msg3{gf::mat_deserialize(bytes, p.field, p.m, p.n)};
}

NodeSession::NodeSession(Params params, gf::FieldMatrix secret, std::uint64_t epoch, crypto::CipherSuite suite)
    : params_(std::move(params)),
      x_(std::move(secret)),
      x_g_(gf::generalized_inverse(x_)),
      epoch_(epoch),
      suite_(std::move(suite)) {
  params_.validate();
  expect_shape(x_, params_, params_.m, params_.n, "node secret");
}

Msg1 NodeSession::start() {
  if (state_ != State::kInit) throw Error(Errc::kWrongState, "node session already started");
  Msg1 msg{x_g_ * x_};
  state_ = State::kAwaitingSbsReply;
  return msg;
}

std::pair<SharedKey, Msg3> NodeSession::finalize(const Msg2& msg) {
  if (state_ != State::kAwaitingSbsReply) throw Error(Errc::kWrongState, "node session is not awaiting a reply");
  expect_shape(msg.p1, params_, params_.n, params_.k, "P1");
  expect_shape(msg.p2, params_, params_.n, params_.n, "P2");
  // X (X_g X Y Y_g) = X Y Y_g and X (X_g X Y) = X Y, since X X_g X = X.
  Msg3 reply{x_ * msg.p2};
  SharedKey key = make_shared_key(x_ * msg.p1, epoch_, suite_);
  key_ = key;
  state_ = State::kComplete;
  return {std::move(key), std::move(reply)};
}

SbsSession::SbsSession(Params params, gf::FieldMatrix secret, std::uint64_t epoch, crypto::CipherSuite suite)
    : params_(std::move(params)),
      y_(std::move(secret)),
      y_g_(gf::generalized_inverse(y_)),
      epoch_(epoch),
      suite_(std::move(suite)) {
  params_.validate();
  expect_shape(y_, params_, params_.n, params_.k, "station secret");
}

Msg2 SbsSession::respond(const Msg1& msg) {
  if (state_ != State::kAwaitingMsg1) throw Error(Errc::kWrongState, "station session already answered");
  expect_shape(msg.projector, params_, params_.n, params_.n, "X_g X");
  gf::FieldMatrix p1 = msg.projector * y_;
  gf::FieldMatrix p2 = p1 * y_g_;
  projector_ = msg.projector;
  state_ = State::kAwaitingMsg3;
  return Msg2{std::move(p1), std::move(p2)};
}

const SharedKey& SbsSession::finalize(const Msg3& msg) {
  if (state_ != State::kAwaitingMsg3) throw Error(Errc::kWrongState, "station session is not awaiting confirmation");
  expect_shape(msg.masked, params_, params_.m, params_.n, "X Y Y_g");
  // (X Y Y_g) Y = X Y, since Y Y_g Y = Y.
  key_ = make_shared_key(msg.masked * y_, epoch_, suite_);
  state_ = State::kComplete;
  return *key_;
}

std::pair<NodeSession, Msg1> node_init(const Params& params, gf::SeedStream seed, std::uint64_t epoch,
                                       const crypto::CipherSuite& suite) {
  params.validate();
  NodeSession session(params, gf::mat_random(seed, params.m, params.n, params.field), epoch, suite);
  Msg1 msg = session.start();
  return {std::move(session), std::move(msg)};
}

std::pair<SbsSession, Msg2> sbs_respond(gf::SeedStream seed, const Params& params, const Msg1& msg1,
                                        std::uint64_t epoch, const crypto::CipherSuite& suite) {
  params.validate();
  SbsSession session(params, gf::mat_random(seed, params.n, params.k, params.field), epoch, suite);
  Msg2 msg = session.respond(msg1);
  return {std::move(session), std::move(msg)};
}

std::pair<SharedKey, Msg3> node_finalize(NodeSession& session, const Msg2& msg2) { return session.finalize(msg2); }

SharedKey sbs_finalize(SbsSession& session, const Msg3& msg3) { return session.finalize(msg3); }

SharedKey preprovision_key(const Params& params, const gf::FieldMatrix& key_matrix,
                           const crypto::CipherSuite& suite) {
  params.validate();
  expect_shape(key_matrix, params, params.m, params.k, "pre-provisioned key");
  return make_shared_key(key_matrix, 0, suite);
}

Run run_handshake(const Params& params, gf::SeedStream node_seed, gf::SeedStream sbs_seed, std::uint64_t epoch,
                  const crypto::CipherSuite& suite) {
  auto [node, msg1] = node_init(params, node_seed, epoch, suite);
  auto [sbs, msg2] = sbs_respond(sbs_seed, params, msg1, epoch, suite);
  auto [node_key, msg3] = node.finalize(msg2);
  SharedKey sbs_key = sbs.finalize(msg3);
  return Run{std::move(node), std::move(sbs), std::move(msg1), std::move(msg2),
             std::move(msg3), std::move(node_key), std::move(sbs_key)};
}

}  // namespace uhsn::handshake
