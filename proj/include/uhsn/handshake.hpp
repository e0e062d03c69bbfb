#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "uhsn/crypto/cipher.hpp"
#include "uhsn/gf/matrix.hpp"
#include "uhsn/gf/rng.hpp"

namespace uhsn::handshake {

// Node secret X is m x n, station secret Y is n x k, the agreed key XY is m x k.
struct Params {
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t k = 0;
  gf::FieldSpec field;

  // Throws kConfig naming the first zero dimension.
  void validate() const;

  friend bool operator==(const Params&, const Params&) = default;
};

struct SharedKey {
  gf::FieldMatrix matrix;
  crypto::SymmetricKey sym_key;
  std::uint64_t epoch = 0;

  // X = 0 or Y = 0 (or any rank-deficient pair multiplying to zero).
  bool weak() const noexcept { return matrix.is_zero(); }
};

SharedKey make_shared_key(gf::FieldMatrix matrix, std::uint64_t epoch, const crypto::CipherSuite& suite = {});

// Node -> station: X_g X (n x n).
struct Msg1 {
  gf::FieldMatrix projector;
};

// Station -> node, one logical message: P1 = X_g X Y (n x k), then
// P2 = X_g X Y Y_g (n x n).
struct Msg2 {
  gf::FieldMatrix p1;
  gf::FieldMatrix p2;
};

// Node -> station: X Y Y_g (m x n).
struct Msg3 {
  gf::FieldMatrix masked;
};

// Payloads are concatenated canonical matrix encodings.
std::vector<std::uint8_t> encode(const Msg1& msg);
std::vector<std::uint8_t> encode(const Msg2& msg);
std::vector<std::uint8_t> encode(const Msg3& msg);
Msg1 decode_msg1(std::span<const std::uint8_t> bytes, const Params& params);
Msg2 decode_msg2(std::span<const std::uint8_t> bytes, const Params& params);
Msg3 decode_msg3(std::span<const std::uint8_t> bytes, const Params& params);

// Sensor-node side. The secret X and its generalized inverse never leave the
// session; only the products in Msg1/Msg3 do.
class NodeSession {
 public:
  enum class State { kInit, kAwaitingSbsReply, kComplete };

  NodeSession(Params params, gf::FieldMatrix secret, std::uint64_t epoch = 0,
              crypto::CipherSuite suite = {});

  // Init -> AwaitingSbsReply.
  Msg1 start();
  // AwaitingSbsReply -> Complete. Rejected calls leave the session untouched.
  std::pair<SharedKey, Msg3> finalize(const Msg2& msg);

  State state() const noexcept { return state_; }
  const std::optional<SharedKey>& key() const noexcept { return key_; }
  const Params& params() const noexcept { return params_; }

  const gf::FieldMatrix& secret() const noexcept { return x_; }
  const gf::FieldMatrix& secret_inverse() const noexcept { return x_g_; }

 private:
  Params params_;
  gf::FieldMatrix x_;
  gf::FieldMatrix x_g_;
  std::uint64_t epoch_;
  crypto::CipherSuite suite_;
  State state_ = State::kInit;
  std::optional<SharedKey> key_;
};

// Secure-base-station side.
class SbsSession {
 public:
  enum class State { kAwaitingMsg1, kAwaitingMsg3, kComplete };

  SbsSession(Params params, gf::FieldMatrix secret, std::uint64_t epoch = 0,
             crypto::CipherSuite suite = {});

  // AwaitingMsg1 -> AwaitingMsg3.
  Msg2 respond(const Msg1& msg);
  // AwaitingMsg3 -> Complete.
  const SharedKey& finalize(const Msg3& msg);

  State state() const noexcept { return state_; }
  const std::optional<SharedKey>& key() const noexcept { return key_; }
  const Params& params() const noexcept { return params_; }

  const gf::FieldMatrix& secret() const noexcept { return y_; }
  const gf::FieldMatrix& secret_inverse() const noexcept { return y_g_; }

 private:
  Params params_;
  gf::FieldMatrix y_;
  gf::FieldMatrix y_g_;
  std::uint64_t epoch_;
  crypto::CipherSuite suite_;
  State state_ = State::kAwaitingMsg1;
  std::optional<gf::FieldMatrix> projector_;
  std::optional<SharedKey> key_;
};

// Draws X from `seed` and emits Msg1.
std::pair<NodeSession, Msg1> node_init(const Params& params, gf::SeedStream seed, std::uint64_t epoch = 0,
                                       const crypto::CipherSuite& suite = {});
// Draws Y from `seed` and answers `msg1`.
std::pair<SbsSession, Msg2> sbs_respond(gf::SeedStream seed, const Params& params, const Msg1& msg1,
                                        std::uint64_t epoch = 0, const crypto::CipherSuite& suite = {});
std::pair<SharedKey, Msg3> node_finalize(NodeSession& session, const Msg2& msg2);
SharedKey sbs_finalize(SbsSession& session, const Msg3& msg3);

// Installs a key loaded before deployment; epoch 0.
SharedKey preprovision_key(const Params& params, const gf::FieldMatrix& key_matrix,
                           const crypto::CipherSuite& suite = {});

// A complete in-memory exchange, kept for oracles and reporting.
struct Run {
  NodeSession node;
  SbsSession sbs;
  Msg1 msg1;
  Msg2 msg2;
  Msg3 msg3;
  SharedKey node_key;
  SharedKey sbs_key;

  bool agreed() const { return node_key.matrix == sbs_key.matrix && node_key.sym_key == sbs_key.sym_key; }
};

Run run_handshake(const Params& params, gf::SeedStream node_seed, gf::SeedStream sbs_seed,
                  std::uint64_t epoch = 0, const crypto::CipherSuite& suite = {});

}  // namespace uhsn::handshake
