#include "uhsn/error.hpp"

namespace uhsn {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::kInvalidArgument: return "invalid_argument";
    case Errc::kNotPrime: return "not_prime";
    case Errc::kDimensionMismatch: return "dimension_mismatch";
    case Errc::kFieldMismatch: return "field_mismatch";
    case Errc::kMalformed: return "malformed";
    case Errc::kWrongState: return "wrong_state";
    case Errc::kAuthFailure: return "auth_failure";
    case Errc::kNonceReuse: return "nonce_reuse";
    case Errc::kUnknownNode: return "unknown_node";
    case Errc::kSenderRevoked: return "sender_revoked";
    case Errc::kReceiverRevoked: return "receiver_revoked";
    case Errc::kStaleEpoch: return "stale_epoch";
    case Errc::kCrcFailure: return "crc_failure";
    case Errc::kFragmentGap: return "fragment_gap";
    case Errc::kOversize: return "oversize";
    case Errc::kConfig: return "config";
    case Errc::kSpaceTooLarge: return "space_too_large";
    case Errc::kIncompleteRun: return "incomplete_run";
  }
  return "unknown";
}

}  // namespace uhsn
