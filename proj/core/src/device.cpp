#include "defrag/device.hpp"

#include "defrag/error.hpp"

#include <algorithm>

namespace defrag {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::IndexOutOfRange: return "index-out-of-range";
    case ErrorCode::InvalidTag: return "invalid-tag";
    case ErrorCode::EmptyPattern: return "empty-pattern";
    case ErrorCode::Overlap: return "overlap";
    case ErrorCode::SelfOverlap: return "self-overlap";
    case ErrorCode::PatternMismatch: return "pattern-mismatch";
    case ErrorCode::OutOfBounds: return "out-of-bounds";
    case ErrorCode::DuplicateId: return "duplicate-id";
    case ErrorCode::UnknownId: return "unknown-id";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::PreconditionViolated: return "precondition-violated";
    case ErrorCode::InvalidArgument: return "invalid-argument";
  }
  return "unknown";
}

bool is_valid_tag(char tag) { return (tag >= 'a' && tag <= 'z') || tag == kSeparatorTag; }

Device::Device(std::string slot_types) : slotTypes_(std::move(slot_types)) {
  if (slotTypes_.empty()) {
    throw DefragError(ErrorCode::InvalidArgument, "device length must be positive");
  }
  for (std::size_t i = 0; i < slotTypes_.size(); ++i) {
    if (!is_valid_tag(slotTypes_[i])) {
      throw DefragError(ErrorCode::InvalidTag, "invalid slot tag '" + std::string(1, slotTypes_[i]) +
                                                   "' at slot " + std::to_string(i));
    }
  }
}

Device Device::build(int length, const std::map<int, char> &heterogeneities) {
  if (length <= 0) {
    throw DefragError(ErrorCode::InvalidArgument, "device length must be positive");
  }
  std::string types(static_cast<std::size_t>(length), kLogicTag);
  for (auto [index, tag] : heterogeneities) {
    if (index < 0 || index >= length) {
      throw DefragError(ErrorCode::IndexOutOfRange,
                        "heterogeneity index " + std::to_string(index) + " outside device of length " +
                            std::to_string(length));
    }
    if (!is_valid_tag(tag)) {
      throw DefragError(ErrorCode::InvalidTag, "invalid slot tag '" + std::string(1, tag) + "'");
    }
    types[static_cast<std::size_t>(index)] = tag;
  }
  return Device(std::move(types));
}

bool Device::is_homogeneous() const {
  return std::all_of(slotTypes_.begin(), slotTypes_.end(), [](char c) { return c == kLogicTag; });
}

bool Device::matches(std::string_view pattern, int start) const {
  if (start < 0 || start + static_cast<int>(pattern.size()) > length()) return false;
  return std::string_view(slotTypes_).substr(static_cast<std::size_t>(start), pattern.size()) == pattern;
}

ModuleSpec homogeneous_module(ModuleId id, int size) {
  return ModuleSpec{id, std::string(static_cast<std::size_t>(std::max(size, 0)), kLogicTag)};
}

}  // namespace defrag
