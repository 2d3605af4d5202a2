#include "pssp/ssp_core.hpp"

#include <string>

#include "pssp/error.hpp"

namespace pssp {

Instance Instance::parse(std::vector<std::int64_t> elements,
                         std::optional<std::int64_t> target) {
  if (elements.empty()) {
    throw Error(ErrorCode::kEmptyInstance, "instance has no elements");
  }
  std::int64_t total = 0;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const std::int64_t e = elements[i];
    if (e < 1) {
      throw Error(ErrorCode::kNonPositiveElement,
                  "element " + std::to_string(i) + " is " + std::to_string(e) +
                      "; elements must be >= 1");
    }
    if (__builtin_add_overflow(total, e, &total)) {
      throw Error(ErrorCode::kInvalidArgument, "element sum overflows int64");
    }
  }
  if (target && (*target < 0 || *target > total)) {
    throw Error(ErrorCode::kTargetOutOfRange,
                "target " + std::to_string(*target) + " outside [0, " +
                    std::to_string(total) + "]");
  }
  Instance inst;
  inst.elements_ = std::move(elements);
  inst.target_ = target;
  inst.total_ = total;
  return inst;
}

Instance Instance::with_target(std::optional<std::int64_t> target) const {
  return parse(elements_, target);
}

SubsetCountTable count_subsets_dp(const Instance& instance) {
  if (instance.size() > kMaxCountSize) {
    throw Error(ErrorCode::kCountOverflow,
                "2^" + std::to_string(instance.size()) +
                    " subsets exceed the 64-bit count representation");
  }
  if (instance.total() > kMaxTotal) {
    throw Error(ErrorCode::kInstanceTooLarge,
                "total " + std::to_string(instance.total()) +
                    " exceeds the supported column range");
  }
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(instance.total()) + 1, 0);
  counts[0] = 1;
  std::int64_t reach = 0;
  for (const std::int64_t e : instance.elements()) {
    // Descending so each element is used at most once.
    for (std::int64_t s = reach; s >= 0; --s) {
      const auto from = static_cast<std::size_t>(s);
      if (counts[from] == 0) continue;
      auto& to = counts[from + static_cast<std::size_t>(e)];
      if (__builtin_add_overflow(to, counts[from], &to)) {
        throw Error(ErrorCode::kCountOverflow, "subset count overflow");
      }
    }
    reach += e;
  }
  return SubsetCountTable(std::move(counts));
}

void enumerate_subsets(
    const Instance& instance,
    const std::function<void(std::uint64_t mask, std::int64_t sum)>& visit) {
  const std::size_t n = instance.size();
  if (n > kMaxEnumerationSize) {
    throw Error(ErrorCode::kInstanceTooLarge,
                "enumeration limited to N <= 30, got " + std::to_string(n));
  }
  const auto elements = instance.elements();
  const std::uint64_t limit = std::uint64_t{1} << n;
  // Gray-code order: each step flips one element in or out.
  std::int64_t sum = 0;
  std::uint64_t mask = 0;
  visit(mask, sum);
  for (std::uint64_t k = 1; k < limit; ++k) {
    const int bit = __builtin_ctzll(k);
    const std::uint64_t flip = std::uint64_t{1} << bit;
    mask ^= flip;
    sum += (mask & flip) ? elements[bit] : -elements[bit];
    visit(mask, sum);
  }
}

bool decide(const Instance& instance, const SubsetCountTable& table) {
  if (!instance.target()) {
    throw Error(ErrorCode::kMissingTarget, "instance has no target");
  }
  return table.achievable(*instance.target());
}

bool decide(const Instance& instance) {
  if (!instance.target()) {
    throw Error(ErrorCode::kMissingTarget, "instance has no target");
  }
  return decide(instance, count_subsets_dp(instance));
}

std::vector<std::int64_t> successive_primes(std::size_t n) {
  std::vector<std::int64_t> primes;
  primes.reserve(n);
  for (std::int64_t k = 2; primes.size() < n; ++k) {
    bool prime = true;
    for (const std::int64_t p : primes) {
      if (p * p > k) break;
      if (k % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(k);
  }
  return primes;
}

Instance successive_primes_instance(std::size_t n) {
  return Instance::parse(successive_primes(n));
}

}  // namespace pssp
