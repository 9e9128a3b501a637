#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cardproto/scheme_nonce.hpp"
#include "cardproto/scheme_timestamp.hpp"

namespace cardproto {

enum class EventKind { send, deliver, intercept, inject, drop };

std::string_view to_string(EventKind kind);

/// Every message either scheme puts on the public channel.
using ProtocolMessage = std::variant<LoginRequestT, ServerReplyT,
                                     LoginRequestN, ServerChallengeN,
                                     UserResponseN>;

/// One entry in the channel log. seq is strictly increasing; deliver,
/// intercept, and drop events reference the send/inject they act on.
struct ChannelEvent {
  std::uint64_t seq = 0;
  Timestamp tick;
  EventKind kind;
  std::string actor;
  std::optional<std::uint64_t> source_seq;
  ProtocolMessage message;
};

/// The public channel: an ordered event log plus a pending-delivery queue.
/// Anyone can read past traffic (intercept) or feed the queue (inject);
/// honest parties use send/deliver.
class Channel {
 public:
  using Predicate = std::function<bool(const ProtocolMessage&)>;

  /// Logs a send and queues the message for delivery. Returns its seq.
  std::uint64_t send(std::string actor, Timestamp tick, ProtocolMessage msg);

  /// Queues a message as if `actor` had sent it. Returns its seq.
  std::uint64_t inject(std::string actor, Timestamp tick, ProtocolMessage msg);

  /// Pops the oldest pending message and logs its delivery to `actor`.
  std::optional<ProtocolMessage> deliver(std::string actor, Timestamp tick);

  /// Passive tap: copies the earliest logged send/inject matching `pred`
  /// that has not been intercepted yet. The original delivery still happens.
  /// Returns nothing when no match exists.
  std::optional<ProtocolMessage> intercept(std::string actor, Timestamp tick,
                                           const Predicate& pred);

  /// Discards the oldest pending message, logging who dropped it.
  void drop(std::string actor, Timestamp tick);

  bool has_pending() const { return !queue_.empty(); }
  const std::vector<ChannelEvent>& events() const { return events_; }

 private:
  std::uint64_t append(EventKind kind, std::string actor, Timestamp tick,
                       std::optional<std::uint64_t> source_seq,
                       ProtocolMessage msg);

  std::vector<ChannelEvent> events_;
  std::deque<std::pair<std::uint64_t, ProtocolMessage>> queue_;
  std::vector<std::uint64_t> intercepted_;
  std::uint64_t next_seq_ = 1;
};

}  // namespace cardproto
