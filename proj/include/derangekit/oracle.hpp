#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "derangekit/constraints.hpp"
#include "derangekit/numeric.hpp"

namespace derangekit {

/// Hard cap on the number of candidate functions the oracle will visit.
/// Exceeding it is an error, never a truncation: a partial enumeration is
/// not a count.
struct EnumerationBudget {
  std::uint64_t max_search_space = 10'000'000;
};

class BudgetExceededError : public std::runtime_error {
 public:
  BigInt space;
  explicit BudgetExceededError(BigInt s)
      : std::runtime_error("search space exceeds budget: " + s.str() +
                           " candidates"),
        space(std::move(s)) {}
};

/// Number of candidate functions the oracle would visit: n^m for all
/// functions, n falling to m for injections.
inline BigInt search_space_size(const ConstraintSystem& sys) {
  if (sys.function_class == FunctionClass::AllFunctions)
    return power(sys.n, sys.m);
  return falling_factorial(sys.n, sys.m);
}

namespace detail {

// One constraint, reduced to what the candidate test needs. The check is
// deliberately literal: build the image of X as a set, then compare.
struct PreparedConstraint {
  std::vector<int> x_idx;  // zero-based positions
  std::vector<int> y;      // sorted values
  Relation relation;
};

inline std::vector<PreparedConstraint> prepare(const ConstraintSystem& sys) {
  std::vector<PreparedConstraint> out;
  out.reserve(sys.k());
  for (const Constraint& c : sys.constraints) {
    PreparedConstraint p;
    for (int v : c.domain_block.elements) p.x_idx.push_back(v - 1);
    p.y = c.codomain_set.elements;
    p.relation = c.relation;
    out.push_back(std::move(p));
  }
  return out;
}

// True when f violates no constraint. f[j] is the value at position j+1.
inline bool avoids_all(const std::vector<int>& f,
                       const std::vector<PreparedConstraint>& cs,
                       std::vector<int>& image_scratch) {
  for (const PreparedConstraint& c : cs) {
    image_scratch.clear();
    for (int idx : c.x_idx) image_scratch.push_back(f[idx]);
    std::sort(image_scratch.begin(), image_scratch.end());
    image_scratch.erase(
        std::unique(image_scratch.begin(), image_scratch.end()),
        image_scratch.end());
    const bool violated =
        c.relation == Relation::ContainmentForbidden
            ? std::includes(c.y.begin(), c.y.end(), image_scratch.begin(),
                            image_scratch.end())
            : image_scratch == c.y;
    if (violated) return false;
  }
  return true;
}

// Candidates rank..rank+count-1 in the mixed-radix order of [n]^m.
inline std::uint64_t count_function_range(
    int m, int n, std::uint64_t rank, std::uint64_t count,
    const std::vector<PreparedConstraint>& cs) {
  std::vector<int> f(m);
  std::uint64_t r = rank;
  for (int j = 0; j < m; ++j) {
    f[j] = static_cast<int>(r % n) + 1;
    r /= n;
  }
  std::vector<int> scratch;
  std::uint64_t hits = 0;
  for (std::uint64_t step = 0; step < count; ++step) {
    if (avoids_all(f, cs, scratch)) ++hits;
    for (int j = 0; j < m; ++j) {  // increment with carry
      if (f[j] < n) {
        ++f[j];
        break;
      }
      f[j] = 1;
    }
  }
  return hits;
}

// Unranks arrangement `rank` in the lexicographic order of injections
// [m] -> [n] (value lists over the sorted remaining values).
inline std::vector<int> unrank_arrangement(int m, int n, std::uint64_t rank,
                                           const std::vector<std::uint64_t>& suffix) {
  std::vector<int> avail(n);
  std::iota(avail.begin(), avail.end(), 1);
  std::vector<int> f(m);
  for (int j = 0; j < m; ++j) {
    const std::uint64_t block = suffix[j + 1];
    const std::uint64_t q = rank / block;
    rank %= block;
    f[j] = avail[q];
    avail.erase(avail.begin() + static_cast<std::ptrdiff_t>(q));
  }
  return f;
}

inline std::uint64_t count_injection_range(
    int m, int n, std::uint64_t rank, std::uint64_t count,
    const std::vector<std::uint64_t>& suffix,
    const std::vector<PreparedConstraint>& cs) {
  std::vector<int> scratch;
  std::uint64_t hits = 0;
  for (std::uint64_t r = rank; r < rank + count; ++r) {
    std::vector<int> f = unrank_arrangement(m, n, r, suffix);
    if (avoids_all(f, cs, scratch)) ++hits;
  }
  return hits;
}

}  // namespace detail

/// Exact count of functions in the system's class that avoid every
/// forbidden relation, by testing each candidate literally. The search
/// space may be split across `workers` threads; partial counts are exact
/// integers, so the result is identical for every worker count.
inline BigInt enumerate_count(const ConstraintSystem& sys,
                              EnumerationBudget budget = {},
                              unsigned workers = 1) {
  require_valid(sys);
  const BigInt space = search_space_size(sys);
  if (space > budget.max_search_space) throw BudgetExceededError(space);
  const std::uint64_t total = space.convert_to<std::uint64_t>();
  if (total == 0) return 0;

  const auto cs = detail::prepare(sys);
  const bool injective = sys.function_class == FunctionClass::Injections;

  // suffix[j] = number of ways to extend a fixed injective prefix of
  // length j; suffix[0] is the whole space.
  std::vector<std::uint64_t> suffix;
  if (injective) {
    suffix.assign(sys.m + 1, 1);
    for (int j = sys.m - 1; j >= 0; --j)
      suffix[j] = suffix[j + 1] * static_cast<std::uint64_t>(sys.n - j);
  }

  auto count_range = [&](std::uint64_t lo, std::uint64_t len) {
    return injective
               ? detail::count_injection_range(sys.m, sys.n, lo, len, suffix, cs)
               : detail::count_function_range(sys.m, sys.n, lo, len, cs);
  };

  if (workers < 1) workers = 1;
  const std::uint64_t w =
      std::min<std::uint64_t>(workers, total);  // no empty ranges
  if (w == 1) return count_range(0, total);

  std::vector<std::uint64_t> partial(w, 0);
  std::vector<std::thread> threads;
  threads.reserve(w);
  for (std::uint64_t t = 0; t < w; ++t) {
    const std::uint64_t lo = total / w * t + std::min(t, total % w);
    const std::uint64_t hi = total / w * (t + 1) + std::min(t + 1, total % w);
    threads.emplace_back(
        [&, t, lo, hi] { partial[t] = count_range(lo, hi - lo); });
  }
  for (auto& th : threads) th.join();
  BigInt sum = 0;
  for (std::uint64_t t = 0; t < w; ++t) sum += partial[t];
  return sum;
}

/// Exact count of permutations f of [nk] with f(X_i) != X_i (setwise) for
/// the canonical partition X_i = {(i-1)k+1, ..., ik}, by visiting every
/// permutation.
inline BigInt enumerate_block_derangements(int n, int k,
                                           EnumerationBudget budget = {}) {
  if (n < 0) throw std::domain_error("n must be nonnegative");
  if (k < 1) throw std::domain_error("k must be at least 1");
  const int size = n * k;
  const BigInt space = factorial(static_cast<std::uint64_t>(size));
  if (space > budget.max_search_space) throw BudgetExceededError(space);

  std::vector<int> perm(size);
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<int> image;
  BigInt hits = 0;
  do {
    bool fixes_a_block = false;
    for (int i = 0; i < n && !fixes_a_block; ++i) {
      image.assign(perm.begin() + i * k, perm.begin() + (i + 1) * k);
      std::sort(image.begin(), image.end());
      bool equal = true;
      for (int j = 0; j < k; ++j) equal = equal && image[j] == i * k + j + 1;
      fixes_a_block = equal;
    }
    if (!fixes_a_block) ++hits;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return hits;
}

/// Counts partitions of [m] into exactly n nonempty blocks by enumerating
/// restricted growth strings (a canonical labeling: block labels appear
/// in first-use order).
inline BigInt enumerate_stirling2(int m, int n) {
  if (m < 0 || n < 0) throw std::domain_error("arguments must be nonnegative");
  if (m > 12) throw std::domain_error("m too large for enumeration");
  if (m == 0) return n == 0 ? 1 : 0;
  if (n == 0 || n > m) return 0;

  BigInt hits = 0;
  std::vector<int> rgs(m, 0);
  // depth-first over positions; rgs[i] <= max(rgs[0..i-1]) + 1
  auto walk = [&](auto&& self, int pos, int used) -> void {
    if (pos == m) {
      if (used == n) ++hits;
      return;
    }
    if (used + (m - pos) < n) return;  // cannot reach n blocks any more
    for (int label = 0; label <= used && label < n; ++label) {
      rgs[pos] = label;
      self(self, pos + 1, std::max(used, label + 1));
    }
  };
  walk(walk, 0, 0);
  return hits;
}

}  // namespace derangekit
