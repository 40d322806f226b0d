#include "defrag/instance_gen.hpp"

#include "defrag/error.hpp"
#include "defrag/random.hpp"

#include <algorithm>
#include <numeric>

namespace defrag {

namespace {

[[noreturn]] void invalid(const std::string &what) { throw DefragError(ErrorCode::InvalidArgument, what); }

/// Starts of all windows of `size` slots that are unoccupied and contain no
/// separator.
std::vector<int> free_windows(const std::vector<int> &owner, const std::string &types, int size) {
  std::vector<int> result;
  int run = 0;
  for (int slot = 0; slot < static_cast<int>(owner.size()); ++slot) {
    const bool usable = owner[static_cast<std::size_t>(slot)] < 0 && types[static_cast<std::size_t>(slot)] != kSeparatorTag;
    run = usable ? run + 1 : 0;
    if (run >= size) result.push_back(slot - size + 1);
  }
  return result;
}

int longest_usable_run(const std::vector<int> &owner, const std::string &types) {
  int best = 0;
  int run = 0;
  for (std::size_t slot = 0; slot < owner.size(); ++slot) {
    run = (owner[slot] < 0 && types[slot] != kSeparatorTag) ? run + 1 : 0;
    best = std::max(best, run);
  }
  return best;
}

void check_three_partition(const std::vector<int> &elements, int bound) {
  if (elements.empty() || elements.size() % 3 != 0) invalid("element count must be a positive multiple of 3");
  if (bound <= 0) invalid("bound B must be positive");
  const long long k = static_cast<long long>(elements.size() / 3);
  long long sum = 0;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const int c = elements[i];
    // B/4 < c < B/2 in integers.
    if (!(4LL * c > bound && 2LL * c < bound)) {
      invalid("element " + std::to_string(i) + " = " + std::to_string(c) + " is not strictly between B/4 and B/2");
    }
    sum += c;
  }
  if (sum != k * bound) invalid("elements sum to " + std::to_string(sum) + ", expected k*B = " + std::to_string(k * bound));
}

/// Appends modules and gaps left to right; gaps are encoded as negative sizes.
Layout layout_from_sequence(const std::vector<int> &sequence) {
  int length = 0;
  for (int part : sequence) length += std::abs(part);
  std::vector<Placement> placements;
  int cursor = 0;
  ModuleId next_id = 1;
  for (int part : sequence) {
    if (part > 0) placements.push_back({homogeneous_module(next_id++, part), cursor});
    cursor += std::abs(part);
  }
  return Layout::build(Device::build(length), std::move(placements));
}

Layout blocked_layout(const std::vector<int> &elements, int bound, int r) {
  const int k = static_cast<int>(elements.size() / 3);
  const int blocker = k * bound + 1 + r * bound / 2;
  std::vector<int> sequence(elements.begin(), elements.end());
  for (int g = 0; g < k; ++g) {
    sequence.push_back(blocker);
    sequence.push_back(-bound);
  }
  sequence.push_back(blocker);
  for (int i = 1; i <= r; ++i) {
    sequence.push_back(-bound / 4);
    sequence.push_back(k * bound + (i - 1) * bound / 2);
    sequence.push_back(-bound / 4);
    sequence.push_back(blocker);
  }
  return layout_from_sequence(sequence);
}

}  // namespace

GeneratedInstance random_instance(const GenParams &params) {
  if (!(params.target_density < 1.0)) invalid("target density must be below 1");
  const Device &device = params.device;
  const std::string &types = device.slot_types();
  Random rng(params.seed);
  Layout layout = Layout::empty(device);
  std::vector<int> owner(static_cast<std::size_t>(device.length()), -1);
  int occupied = 0;
  ModuleId next_id = 1;
  bool reached = true;
  while (static_cast<double>(occupied) / device.length() < params.target_density) {
    const int longest = longest_usable_run(owner, types);
    if (longest == 0) {
      reached = false;
      break;
    }
    int size = rng.uniform_int(1, longest);
    if (next_id == 1) size = std::max(1, static_cast<int>(size * 0.6));
    const auto windows = free_windows(owner, types, size);
    const int start = windows[static_cast<std::size_t>(rng.below(windows.size()))];
    ModuleSpec module{next_id++, types.substr(static_cast<std::size_t>(start), static_cast<std::size_t>(size))};
    std::fill_n(owner.begin() + start, size, 0);
    occupied += size;
    layout = layout.with_module(std::move(module), start);
  }
  return GeneratedInstance{layout, density(layout), reached};
}

Device heterogeneous_94() {
  return Device::build(94, {{3, kMemoryTag}, {24, kMemoryTag}, {45, kMemoryTag}, {50, kMemoryTag}, {71, kMemoryTag},
                            {82, kMemoryTag}});
}

Device homogeneous_94() { return Device::build(94); }

Layout lower_bound_instance(int n) {
  if (n < 2 || n % 2 != 0) invalid("lower-bound instance needs an even n >= 2, got " + std::to_string(n));
  std::vector<int> sequence{-1};
  for (int j = 1; j <= n; ++j) {
    const int mirror = std::min(j, n + 1 - j);
    sequence.push_back(n + 2 - 2 * mirror);
    sequence.push_back(j == n / 2 ? -2 : -1);
  }
  return layout_from_sequence(sequence);
}

ThreePartitionInstance three_partition_instance(const std::vector<int> &elements, int bound) {
  check_three_partition(elements, bound);
  const int k = static_cast<int>(elements.size() / 3);
  return {blocked_layout(elements, bound, 0), k * bound};
}

Layout inapprox_instance(const std::vector<int> &elements, int bound, int r) {
  check_three_partition(elements, bound);
  if (r < 0) invalid("r must be non-negative");
  if (bound % 4 != 0) invalid("B must be divisible by 4, got " + std::to_string(bound));
  return blocked_layout(elements, bound, r);
}

Device flatten_two_dimensional(const std::vector<std::string> &rows) {
  if (rows.empty() || rows.front().empty()) invalid("need at least one non-empty row");
  std::string flat;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows.front().size()) {
      invalid("row " + std::to_string(r) + " has width " + std::to_string(rows[r].size()) + ", expected " +
              std::to_string(rows.front().size()));
    }
    if (rows[r].find(kSeparatorTag) != std::string::npos) {
      throw DefragError(ErrorCode::InvalidTag, "rows may not contain the separator tag");
    }
    if (r > 0) flat.push_back(kSeparatorTag);
    flat += rows[r];
  }
  return Device(std::move(flat));
}

}  // namespace defrag
