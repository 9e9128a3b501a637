#pragma once

#include <cassert>
#include <string_view>
#include <utility>
#include <variant>

namespace cardproto {

/// Why a verifier turned a message or request down.
enum class RejectReason {
  identity,      // unknown or unregistered user id
  freshness,     // stale, future-dated, or replayed timestamp
  authenticity,  // an authenticator digest failed to recompute
  password,      // card-local password check failed
};

std::string_view to_string(RejectReason reason);

/// Value-or-rejection result for protocol operations.
template <typename T>
class Outcome {
 public:
  Outcome(T value) : state_(std::move(value)) {}
  Outcome(RejectReason reason) : state_(reason) {}

  bool ok() const { return std::holds_alternative<T>(state_); }
  explicit operator bool() const { return ok(); }

  const T& value() const& {
    assert(ok());
    return std::get<T>(state_);
  }
  T& value() & {
    assert(ok());
    return std::get<T>(state_);
  }
  T&& value() && {
    assert(ok());
    return std::get<T>(std::move(state_));
  }

  RejectReason reason() const {
    assert(!ok());
    return std::get<RejectReason>(state_);
  }

 private:
  std::variant<T, RejectReason> state_;
};

}  // namespace cardproto
