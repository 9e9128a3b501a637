#include "cardproto/outcome.hpp"

namespace cardproto {

std::string_view to_string(RejectReason reason) {
  switch (reason) {
    case RejectReason::identity:
      return "identity";
    case RejectReason::freshness:
      return "freshness";
    case RejectReason::authenticity:
      return "authenticity";
    case RejectReason::password:
      return "password";
  }
  return "unknown";
}

}  // namespace cardproto
