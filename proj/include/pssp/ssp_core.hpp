#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace pssp {

// Largest column span a count table or network may cover.
inline constexpr std::int64_t kMaxTotal = std::int64_t{1} << 24;
// Exhaustive enumeration guard.
inline constexpr std::size_t kMaxEnumerationSize = 30;
// 2^N must fit in the 64-bit count representation.
inline constexpr std::size_t kMaxCountSize = 63;

/// A validated subset-sum instance: positive elements in their given order,
/// plus an optional target in [0, total].
class Instance {
 public:
  /// Throws Error with kEmptyInstance, kNonPositiveElement or
  /// kTargetOutOfRange. Target out of range is a distinct code so callers can
  /// still answer "no" for it.
  static Instance parse(std::vector<std::int64_t> elements,
                        std::optional<std::int64_t> target = std::nullopt);

  std::span<const std::int64_t> elements() const noexcept { return elements_; }
  std::optional<std::int64_t> target() const noexcept { return target_; }
  std::int64_t total() const noexcept { return total_; }
  std::size_t size() const noexcept { return elements_.size(); }

  Instance with_target(std::optional<std::int64_t> target) const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  Instance() = default;

  std::vector<std::int64_t> elements_;
  std::optional<std::int64_t> target_;
  std::int64_t total_ = 0;
};

/// counts[s] = number of index-subsets whose elements sum to s, s in [0, total].
class SubsetCountTable {
 public:
  explicit SubsetCountTable(std::vector<std::uint64_t> counts)
      : counts_(std::move(counts)) {}

  std::span<const std::uint64_t> counts() const noexcept { return counts_; }
  std::int64_t total() const noexcept {
    return static_cast<std::int64_t>(counts_.size()) - 1;
  }
  // Out-of-range sums have zero subsets.
  std::uint64_t at(std::int64_t sum) const noexcept {
    if (sum < 0 || sum > total()) return 0;
    return counts_[static_cast<std::size_t>(sum)];
  }
  bool achievable(std::int64_t sum) const noexcept { return at(sum) > 0; }

 private:
  std::vector<std::uint64_t> counts_;
};

/// Pseudo-polynomial dynamic program, O(N * total). Throws kCountOverflow when
/// N exceeds kMaxCountSize and kInstanceTooLarge when total exceeds kMaxTotal.
SubsetCountTable count_subsets_dp(const Instance& instance);

/// Calls visit(mask, sum) once for each of the 2^N subsets. Bit i of mask
/// selects element i. Test oracle only; throws kInstanceTooLarge for N > 30.
void enumerate_subsets(
    const Instance& instance,
    const std::function<void(std::uint64_t mask, std::int64_t sum)>& visit);

/// True iff some subset sums to the target. Throws kMissingTarget.
bool decide(const Instance& instance);
bool decide(const Instance& instance, const SubsetCountTable& table);

/// The first n primes {2, 3, 5, 7, ...}.
std::vector<std::int64_t> successive_primes(std::size_t n);

/// Instance over the first n primes (n >= 1), no target.
Instance successive_primes_instance(std::size_t n);

}  // namespace pssp
