#pragma once

#include <map>
#include <string>
#include <string_view>

namespace defrag {

/// Plain logic column; the default slot type.
inline constexpr char kLogicTag = 'l';
/// Memory column (BlockRAM-like heterogeneity).
inline constexpr char kMemoryTag = 'm';
/// Artificial separator used when flattening a 2D fabric. Never matched.
inline constexpr char kSeparatorTag = '#';

/// Slot-type tags are lowercase letters plus the separator.
bool is_valid_tag(char tag);

/**
 * @brief One-dimensional reconfigurable area: a row of typed slots
 *
 * Immutable once built. Slot indices are 0-based.
 */
class Device {
 public:
  /**
   * @brief Build a device from its full slot-type string
   *
   * Throws DefragError (InvalidArgument for an empty string, InvalidTag for a
   * character outside the alphabet).
   */
  explicit Device(std::string slot_types);

  /// Homogeneous device of the given length with tags overridden at the
  /// listed positions.
  static Device build(int length, const std::map<int, char> &heterogeneities = {});

  int length() const { return static_cast<int>(slotTypes_.size()); }
  char type_at(int slot) const { return slotTypes_[static_cast<std::size_t>(slot)]; }
  const std::string &slot_types() const { return slotTypes_; }
  bool is_homogeneous() const;

  /// True iff `pattern` placed at `start` lies inside the device and every
  /// slot type equals the corresponding pattern tag.
  bool matches(std::string_view pattern, int start) const;

  friend bool operator==(const Device &, const Device &) = default;

 private:
  std::string slotTypes_;
};

using ModuleId = int;

/**
 * @brief A module: identity plus its per-slot resource requirement
 */
struct ModuleSpec {
  ModuleId id = 0;
  std::string pattern;

  int size() const { return static_cast<int>(pattern.size()); }
  bool is_homogeneous() const { return pattern.find_first_not_of(kLogicTag) == std::string::npos; }

  friend bool operator==(const ModuleSpec &, const ModuleSpec &) = default;
};

/// Homogeneous module pattern of the given size.
ModuleSpec homogeneous_module(ModuleId id, int size);

}  // namespace defrag
