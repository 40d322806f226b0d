#pragma once

#include "defrag/layout.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace defrag {

struct GenParams {
  Device device;
  double target_density = 0.5;
  std::uint64_t seed = 0;
};

struct GeneratedInstance {
  Layout layout;
  double actual_density = 0.0;
  /// False when the device filled up before the target density was reached.
  bool reached_target = true;
};

/**
 * @brief Random fragmented layout
 *
 * Repeats until the density reaches the target: draw a size uniformly from
 * 1..f* (f* = largest free run usable by a module), draw a start uniformly
 * among all free windows of that size, and give the module the slot types it
 * covers. The first module's size is scaled by 0.6 (floor, at least 1).
 * Module ids are 1, 2, ... in insertion order. Pure function of the params.
 */
GeneratedInstance random_instance(const GenParams &params);

/// The 94-slot device with memory columns at 3, 24, 45, 50, 71 and 82.
Device heterogeneous_94();
Device homogeneous_94();

/**
 * @brief Adversarial instance that needs a quadratic number of moves
 *
 * n modules (n even, >= 2) with sizes n, n-2, ..., 2, 2, ..., n-2, n, one free
 * slot at each end and between neighbours, two free slots in the middle.
 * Device length n^2/2 + 2n + 2. Throws InvalidArgument for odd or small n.
 */
Layout lower_bound_instance(int n);

struct ThreePartitionInstance {
  Layout layout;
  /// Size of the free interval asked for: k * B.
  int target_size = 0;
};

/**
 * @brief Layout encoding a 3-Partition instance
 *
 * The 3k element modules are packed from slot 0, followed by k+1 blocking
 * modules of size kB+1 alternating with k free gaps of size B. Throws
 * InvalidArgument if |c| is not a positive multiple of 3, an element is not
 * strictly between B/4 and B/2, or the elements do not sum to kB.
 */
ThreePartitionInstance three_partition_instance(const std::vector<int> &elements, int bound);

/**
 * @brief The inapproximability layout
 *
 * Like three_partition_instance but the blocking modules have size
 * N = kB + 1 + rB/2, followed by r groups of
 * [gap B/4, module kB + (i-1)B/2, gap B/4, module N]. B must be divisible
 * by 4. r = 0 gives the plain 3-Partition layout.
 */
Layout inapprox_instance(const std::vector<int> &elements, int bound, int r);

/// Concatenates equal-width rows with one separator slot between rows.
/// Throws InvalidArgument for ragged or empty input, InvalidTag for bad tags.
Device flatten_two_dimensional(const std::vector<std::string> &rows);

}  // namespace defrag
