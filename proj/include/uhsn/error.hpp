#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace uhsn {

enum class Errc {
  kInvalidArgument,
  kNotPrime,
  kDimensionMismatch,
  kFieldMismatch,
  kMalformed,
  kWrongState,
  kAuthFailure,
  kNonceReuse,
  kUnknownNode,
  kSenderRevoked,
  kReceiverRevoked,
  kStaleEpoch,
  kCrcFailure,
  kFragmentGap,
  kOversize,
  kConfig,
  kSpaceTooLarge,
  kIncompleteRun,
};

std::string_view errc_name(Errc code);

// Every failure surfaced by the library carries one of the codes above so
// callers (CLI exit mapping, CKG refusal frames) can branch without parsing
// messages.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace uhsn
