#include "defrag/oracle.hpp"

#include "defrag/error.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

namespace defrag {

namespace {

/// Open-addressing set of 63-bit keys; all-ones marks an empty slot.
class KeySet64 {
 public:
  KeySet64() : slots_(1024, kEmpty) {}

  bool insert(std::uint64_t key) {
    if ((size_ + 1) * 2 > slots_.size()) grow();
    return insert_into(slots_, key);
  }
  std::size_t size() const { return size_; }

 private:
  static constexpr std::uint64_t kEmpty = ~0ULL;

  static std::size_t slot_of(std::uint64_t key, std::size_t mask) {
    key ^= key >> 33;
    key *= 0xff51afd7ed558ccdULL;
    key ^= key >> 33;
    return static_cast<std::size_t>(key) & mask;
  }

  bool insert_into(std::vector<std::uint64_t> &slots, std::uint64_t key) {
    const std::size_t mask = slots.size() - 1;
    for (std::size_t i = slot_of(key, mask);; i = (i + 1) & mask) {
      if (slots[i] == key) return false;
      if (slots[i] == kEmpty) {
        slots[i] = key;
        ++size_;
        return true;
      }
    }
  }

  void grow() {
    std::vector<std::uint64_t> bigger(slots_.size() * 2, kEmpty);
    size_ = 0;
    for (std::uint64_t key : slots_) {
      if (key != kEmpty) insert_into(bigger, key);
    }
    slots_.swap(bigger);
  }

  std::vector<std::uint64_t> slots_;
  std::size_t size_ = 0;
};

/// Packs the starts of movable modules into 63 bits.
struct PackedCodec {
  using Key = std::uint64_t;
  using Set = KeySet64;
  int bits = 0;

  Key encode(const std::vector<int> &starts, const std::vector<std::size_t> &movable) const {
    Key key = 0;
    for (std::size_t i : movable) key = (key << bits) | static_cast<Key>(starts[i]);
    return key;
  }
  void decode(Key key, std::vector<int> &starts, const std::vector<std::size_t> &movable) const {
    const Key mask = (Key{1} << bits) - 1;
    for (auto it = movable.rbegin(); it != movable.rend(); ++it) {
      starts[*it] = static_cast<int>(key & mask);
      key >>= bits;
    }
  }
};

/// Fallback for states too large to pack: two bytes per movable start.
struct StringCodec {
  using Key = std::string;
  struct Set {
    std::unordered_set<std::string> keys;
    bool insert(const std::string &key) { return keys.insert(key).second; }
    std::size_t size() const { return keys.size(); }
  };

  Key encode(const std::vector<int> &starts, const std::vector<std::size_t> &movable) const {
    Key key;
    key.reserve(movable.size() * 2);
    for (std::size_t i : movable) {
      key.push_back(static_cast<char>(starts[i] & 0xff));
      key.push_back(static_cast<char>((starts[i] >> 8) & 0xff));
    }
    return key;
  }
  void decode(const Key &key, std::vector<int> &starts, const std::vector<std::size_t> &movable) const {
    for (std::size_t k = 0; k < movable.size(); ++k) {
      starts[movable[k]] = static_cast<unsigned char>(key[2 * k]) | (static_cast<unsigned char>(key[2 * k + 1]) << 8);
    }
  }
};

int longest_free_run(const std::vector<int> &owner) {
  int best = 0;
  int run = 0;
  for (int o : owner) {
    run = o < 0 ? run + 1 : 0;
    best = std::max(best, run);
  }
  return best;
}

struct SearchOutcome {
  int best_free = 0;
  int best_depth = 0;
  std::size_t visited = 0;
  bool truncated = false;
  bool goal_reached = false;
};

class Search {
 public:
  Search(const Layout &layout, const OracleOptions &options) : layout_(layout), options_(options) {
    const int total_free = layout.free_slots();
    for (std::size_t i = 0; i < layout.module_count(); ++i) {
      // A module larger than the whole free space can never find a target.
      if (layout.module(i).size() <= total_free) movable_.push_back(i);
    }
    if (options.interchangeable) {
      std::stable_sort(movable_.begin(), movable_.end(), [&](std::size_t a, std::size_t b) {
        return layout.module(a).pattern < layout.module(b).pattern;
      });
      for (std::size_t begin = 0; begin < movable_.size();) {
        std::size_t end = begin + 1;
        while (end < movable_.size() && layout.module(movable_[end]).pattern == layout.module(movable_[begin]).pattern) {
          ++end;
        }
        if (end - begin > 1) groups_.emplace_back(begin, end);
        begin = end;
      }
    }
  }

  /// Runs BFS until `stop(max_free)` holds for a discovered state.
  template <typename Stop>
  SearchOutcome run(Stop stop) {
    const int bits = std::bit_width(static_cast<unsigned>(layout_.device().length()));
    if (static_cast<long long>(bits) * static_cast<long long>(movable_.size()) <= 63) {
      return run_with(PackedCodec{bits}, stop);
    }
    if (layout_.device().length() > 0xffff) {
      throw DefragError(ErrorCode::InvalidArgument, "device too long for the exact search");
    }
    return run_with(StringCodec{}, stop);
  }

 private:
  /// Sorts starts within each run of equal-pattern modules in movable_.
  void canonicalize(std::vector<int> &starts) const {
    for (auto [begin, end] : groups_) {
      // Groups are small; insertion sort through the index indirection.
      for (std::size_t k = begin + 1; k < end; ++k) {
        const int value = starts[movable_[k]];
        std::size_t j = k;
        for (; j > begin && starts[movable_[j - 1]] > value; --j) starts[movable_[j]] = starts[movable_[j - 1]];
        starts[movable_[j]] = value;
      }
    }
  }

  void fill_owner(const std::vector<int> &starts, std::vector<int> &owner) const {
    std::fill(owner.begin(), owner.end(), -1);
    for (std::size_t i = 0; i < starts.size(); ++i) {
      std::fill_n(owner.begin() + starts[i], layout_.module(i).size(), static_cast<int>(i));
    }
  }

  template <typename Codec, typename Stop>
  SearchOutcome run_with(const Codec &codec, Stop stop) {
    using Key = typename Codec::Key;
    const Device &device = layout_.device();
    const int length = device.length();
    SearchOutcome out;

    std::vector<int> starts = layout_.starts();
    canonicalize(starts);
    std::vector<int> owner(static_cast<std::size_t>(length));
    fill_owner(starts, owner);
    out.best_free = longest_free_run(owner);
    out.visited = 1;
    if (stop(out.best_free)) {
      out.goal_reached = true;
      return out;
    }

    typename Codec::Set visited;
    visited.insert(codec.encode(starts, movable_));
    std::vector<Key> frontier{codec.encode(starts, movable_)};
    std::vector<Key> next;
    std::vector<int> candidate;
    for (int depth = 1; !frontier.empty(); ++depth) {
      next.clear();
      for (const Key &key : frontier) {
        codec.decode(key, starts, movable_);
        fill_owner(starts, owner);
        for (std::size_t i : movable_) {
          const ModuleSpec &spec = layout_.module(i);
          const int size = spec.size();
          const int old_start = starts[i];
          int run = 0;
          for (int slot = 0; slot < length; ++slot) {
            run = owner[static_cast<std::size_t>(slot)] < 0 ? run + 1 : 0;
            if (run < size) continue;
            const int p = slot - size + 1;
            if (!device.matches(spec.pattern, p)) continue;

            candidate = starts;
            candidate[i] = p;
            canonicalize(candidate);
            Key next_key = codec.encode(candidate, movable_);
            if (!visited.insert(next_key)) continue;
            out.visited = visited.size();

            std::fill_n(owner.begin() + old_start, size, -1);
            std::fill_n(owner.begin() + p, size, static_cast<int>(i));
            const int free_after = longest_free_run(owner);
            std::fill_n(owner.begin() + p, size, -1);
            std::fill_n(owner.begin() + old_start, size, static_cast<int>(i));
            if (free_after > out.best_free) {
              out.best_free = free_after;
              out.best_depth = depth;
            }
            if (stop(free_after)) {
              out.goal_reached = true;
              return out;
            }
            if (visited.size() >= options_.budget) {
              out.truncated = true;
              return out;
            }
            next.push_back(std::move(next_key));
          }
        }
      }
      frontier.swap(next);
    }
    return out;
  }

  const Layout &layout_;
  OracleOptions options_;
  std::vector<std::size_t> movable_;
  std::vector<std::pair<std::size_t, std::size_t>> groups_;
};

}  // namespace

OracleResult bfs_optimum(const Layout &layout, const OracleOptions &options) {
  const int total_free = layout.free_slots();
  Search search(layout, options);
  SearchOutcome out = search.run([total_free](int free) { return free >= total_free; });
  return OracleResult{out.best_free, out.best_depth, out.visited, out.truncated && !out.goal_reached};
}

MinMovesResult min_moves_to_size(const Layout &layout, int target_size, const OracleOptions &options) {
  if (target_size < 1) throw DefragError(ErrorCode::InvalidArgument, "target size must be at least 1");
  Search search(layout, options);
  SearchOutcome out = search.run([target_size](int free) { return free >= target_size; });
  MinMovesResult result;
  result.states_explored = out.visited;
  result.truncated = out.truncated;
  if (out.goal_reached) result.moves = out.best_depth;
  return result;
}

}  // namespace defrag
