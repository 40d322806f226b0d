#pragma once

#include "defrag/device.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

namespace defrag {

/// Maximal run of unoccupied slots [start, start + size).
struct FreeInterval {
  int start = 0;
  int size = 0;

  int end() const { return start + size; }
  friend bool operator==(const FreeInterval &, const FreeInterval &) = default;
};

/// Relocation of one module to a new start slot.
struct Move {
  ModuleId module_id = 0;
  int new_start = 0;

  friend bool operator==(const Move &, const Move &) = default;
};

struct Placement {
  ModuleSpec module;
  int start = 0;
};

/**
 * @brief Legal placement of modules on a device
 *
 * A Layout is an immutable value. The module list is kept sorted by id and
 * shared between copies, so copying a layout only copies the start vector.
 * Every constructed Layout satisfies: occupied intervals are pairwise
 * disjoint, lie inside the device, and each module pattern matches the slot
 * types it covers.
 */
class Layout {
 public:
  /// Validating constructor. Throws DefragError with Overlap, PatternMismatch,
  /// OutOfBounds, DuplicateId, EmptyPattern or InvalidTag.
  static Layout build(Device device, std::vector<Placement> placements);

  /// Layout with no modules placed.
  static Layout empty(Device device);

  const Device &device() const { return *device_; }
  std::size_t module_count() const { return starts_.size(); }

  /// Modules sorted by ascending id.
  const std::vector<ModuleSpec> &modules() const { return *modules_; }
  const ModuleSpec &module(std::size_t index) const { return (*modules_)[index]; }
  int start(std::size_t index) const { return starts_[index]; }

  /// Start slots, parallel to modules(). This is the layout's configuration.
  const std::vector<int> &starts() const { return starts_; }

  std::optional<std::size_t> index_of(ModuleId id) const;
  /// Start of module `id`; throws UnknownId.
  int start_of(ModuleId id) const;

  /// Owner module index of every slot, -1 for free slots.
  std::vector<int> occupancy() const;

  int occupied_slots() const;
  int free_slots() const { return device_->length() - occupied_slots(); }

  std::vector<Placement> placements() const;

  /// Same modules and device, different starts (validated).
  Layout with_starts(std::vector<int> starts) const;

  /// Same device and placements plus one extra module (validated).
  Layout with_module(ModuleSpec module, int start) const;

  /// Same device and placements without module `id`; throws UnknownId.
  Layout without_module(ModuleId id) const;

  friend bool operator==(const Layout &a, const Layout &b);

 private:
  Layout(std::shared_ptr<const Device> device, std::shared_ptr<const std::vector<ModuleSpec>> modules,
         std::vector<int> starts)
      : device_(std::move(device)), modules_(std::move(modules)), starts_(std::move(starts)) {}

  void validate() const;

  std::shared_ptr<const Device> device_;
  std::shared_ptr<const std::vector<ModuleSpec>> modules_;
  std::vector<int> starts_;
};

/// Maximal free intervals, left to right. Unoccupied heterogeneity slots
/// count as free.
std::vector<FreeInterval> free_intervals(const Layout &layout);

/// Size of the largest free interval; 0 for a packed device.
int max_free_interval(const Layout &layout);

/// Largest free interval divided by the number of free slots. A packed
/// device has fitness 1.
double fitness(const Layout &layout);

/// Fraction of slots occupied by modules.
double density(const Layout &layout);

/**
 * @brief Starts at which module `id` could be relocated
 *
 * A start p qualifies when [p, p + size) is disjoint from every occupied
 * interval, including the module's own current one, and the pattern matches
 * the device. Ascending order. Throws UnknownId.
 */
std::vector<int> feasible_positions(const Layout &layout, ModuleId id);

/// Checked relocation. Throws UnknownId, OutOfBounds, SelfOverlap, Overlap or
/// PatternMismatch.
Layout apply_move(const Layout &layout, const Move &move);

}  // namespace defrag
