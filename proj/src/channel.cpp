#include "cardproto/channel.hpp"

#include <algorithm>

namespace cardproto {

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::send:
      return "send";
    case EventKind::deliver:
      return "deliver";
    case EventKind::intercept:
      return "intercept";
    case EventKind::inject:
      return "inject";
    case EventKind::drop:
      return "drop";
  }
  return "unknown";
}

std::uint64_t Channel::append(EventKind kind, std::string actor,
                              Timestamp tick,
                              std::optional<std::uint64_t> source_seq,
                              ProtocolMessage msg) {
  const std::uint64_t seq = next_seq_++;
  events_.push_back(ChannelEvent{.seq = seq,
                                 .tick = tick,
                                 .kind = kind,
                                 .actor = std::move(actor),
                                 .source_seq = source_seq,
                                 .message = std::move(msg)});
  return seq;
}

std::uint64_t Channel::send(std::string actor, Timestamp tick,
                            ProtocolMessage msg) {
  const std::uint64_t seq =
      append(EventKind::send, std::move(actor), tick, std::nullopt, msg);
  queue_.emplace_back(seq, std::move(msg));
  return seq;
}

std::uint64_t Channel::inject(std::string actor, Timestamp tick,
                              ProtocolMessage msg) {
  const std::uint64_t seq =
      append(EventKind::inject, std::move(actor), tick, std::nullopt, msg);
  queue_.emplace_back(seq, std::move(msg));
  return seq;
}

std::optional<ProtocolMessage> Channel::deliver(std::string actor,
                                                Timestamp tick) {
  if (queue_.empty()) return std::nullopt;
  auto [source_seq, msg] = std::move(queue_.front());
  queue_.pop_front();
  append(EventKind::deliver, std::move(actor), tick, source_seq, msg);
  return msg;
}

std::optional<ProtocolMessage> Channel::intercept(std::string actor,
                                                  Timestamp tick,
                                                  const Predicate& pred) {
  for (const ChannelEvent& ev : events_) {
    const bool taps_source =
        ev.kind == EventKind::send || ev.kind == EventKind::inject;
    if (!taps_source || !pred(ev.message)) continue;
    if (std::find(intercepted_.begin(), intercepted_.end(), ev.seq) !=
        intercepted_.end()) {
      continue;
    }
    // Copy out before append(): growing events_ invalidates ev.
    const std::uint64_t source_seq = ev.seq;
    const ProtocolMessage message = ev.message;
    intercepted_.push_back(source_seq);
    append(EventKind::intercept, std::move(actor), tick, source_seq, message);
    return message;
  }
  return std::nullopt;
}

void Channel::drop(std::string actor, Timestamp tick) {
  if (queue_.empty()) return;
  auto [source_seq, msg] = std::move(queue_.front());
  queue_.pop_front();
  append(EventKind::drop, std::move(actor), tick, source_seq, std::move(msg));
}

}  // namespace cardproto
