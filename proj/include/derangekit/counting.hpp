#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "derangekit/constraints.hpp"
#include "derangekit/numeric.hpp"

namespace derangekit {

// 2^k inclusion-exclusion terms; beyond this the subset sum is refused.
inline constexpr int kMaxConstraintCount = 30;

struct CountResult {
  BigInt value;
  std::uint64_t terms_evaluated = 0;  // number of subsets summed
};

enum class Family { D11, D12, D21, D22, S22, I1, BlockDerangement };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::D11: return "d11";
    case Family::D12: return "d12";
    case Family::D21: return "d21";
    case Family::D22: return "d22";
    case Family::S22: return "s22";
    case Family::I1: return "i1";
    case Family::BlockDerangement: return "blockderange";
  }
  return "?";
}

namespace detail {

inline void check(bool cond, const char* msg) {
  if (!cond) throw std::domain_error(msg);
}

inline void require_uniform(const ConstraintSystem& sys, FunctionClass cls,
                            Relation rel, const char* what) {
  require_valid(sys);
  if (sys.function_class != cls)
    throw std::domain_error(std::string("system must use ") +
                            (cls == FunctionClass::AllFunctions ? "all functions"
                                                                : "injections") +
                            " for " + what);
  for (const Constraint& c : sys.constraints)
    if (c.relation != rel)
      throw std::domain_error(std::string("system must use only ") +
                              (rel == Relation::ContainmentForbidden
                                   ? "containment"
                                   : "image-equality") +
                              " constraints for " + what);
  if (sys.k() > kMaxConstraintCount)
    throw std::domain_error("constraint count too large");
}

}  // namespace detail

/// Functions f:[m]->[n] with f(X_i) not contained in Y_i for every i.
/// Signed sum over all subsets I of the constraints of
///   n^(m - |union X_i|) * prod |Y_i|^|X_i|,
/// the count of functions that land inside Y_i on each X_i with i in I.
inline CountResult count_avoiding_containment(const ConstraintSystem& sys) {
  detail::require_uniform(sys, FunctionClass::AllFunctions,
                          Relation::ContainmentForbidden,
                          "containment counting");
  const std::size_t k = sys.k();
  CountResult out;
  out.terms_evaluated = std::uint64_t{1} << k;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    std::uint64_t covered = 0;
    BigInt prod = 1;
    for (std::size_t i = 0; i < k; ++i) {
      if (!(mask >> i & 1)) continue;
      const Constraint& c = sys.constraints[i];
      covered += c.domain_block.size();
      prod *= power(static_cast<std::uint64_t>(c.codomain_set.size()),
                    c.domain_block.size());
    }
    BigInt term = power(sys.n, sys.m - covered) * prod;
    if (std::popcount(mask) & 1)
      out.value -= term;
    else
      out.value += term;
  }
  return out;
}

/// Functions f:[m]->[n] with f(X_i) != Y_i (as sets) for every i. Same
/// subset sum, with the per-constraint factor |Y_i|! * S(|X_i|,|Y_i|):
/// the number of surjections from X_i onto Y_i.
inline CountResult count_avoiding_image_equality(const ConstraintSystem& sys) {
  detail::require_uniform(sys, FunctionClass::AllFunctions,
                          Relation::ImageEqualityForbidden,
                          "image-equality counting");
  const std::size_t k = sys.k();
  CountResult out;
  out.terms_evaluated = std::uint64_t{1} << k;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    std::uint64_t covered = 0;
    BigInt prod = 1;
    for (std::size_t i = 0; i < k; ++i) {
      if (!(mask >> i & 1)) continue;
      const Constraint& c = sys.constraints[i];
      covered += c.domain_block.size();
      prod *= factorial(c.codomain_set.size()) *
              stirling2(c.domain_block.size(), c.codomain_set.size());
    }
    BigInt term = power(sys.n, sys.m - covered) * prod;
    if (std::popcount(mask) & 1)
      out.value -= term;
    else
      out.value += term;
  }
  return out;
}

/// Injections f:[m]->[n] (m <= n) with f(X_i) != Y_i for every i, where
/// |X_i| = |Y_i| and the Y_i are pairwise disjoint. The subset term fixes
/// a bijection X_i -> Y_i for each chosen i (|X_i|! ways each) and lets
/// the remaining m-u positions map injectively into the remaining n-u
/// values: (n-u) falling to (m-u).
inline CountResult count_injections_avoiding_image_equality(
    const ConstraintSystem& sys) {
  detail::require_uniform(sys, FunctionClass::Injections,
                          Relation::ImageEqualityForbidden,
                          "injection counting");
  const std::size_t k = sys.k();
  CountResult out;
  out.terms_evaluated = std::uint64_t{1} << k;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    std::uint64_t covered = 0;
    BigInt prod = 1;
    for (std::size_t i = 0; i < k; ++i) {
      if (!(mask >> i & 1)) continue;
      const Constraint& c = sys.constraints[i];
      covered += c.domain_block.size();
      prod *= factorial(c.domain_block.size());
    }
    BigInt term = falling_factorial(sys.n - covered, sys.m - covered) * prod;
    if (std::popcount(mask) & 1)
      out.value -= term;
    else
      out.value += term;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Closed-form families. Each family has a product closed form and an
// equivalent alternating sum; closed_form_vs_sum_check compares the two
// routes exactly.
// ---------------------------------------------------------------------------

/// Functions with k pointwise forbidden values f(x_i) != y_i (distinct
/// x's, arbitrary y's): n^(m-k) (n-1)^k.
inline BigInt d11(int m, int n, int k) {
  detail::check(m >= 0, "m must be nonnegative");
  detail::check(n >= 1, "n must be at least 1");
  detail::check(k >= 0, "k must be nonnegative");
  detail::check(k <= m, "k must not exceed m");
  return power(n, m - k) * power(n - 1, k);
}

/// Forbidden 2-sets for k single positions, f(x_i) not in Y_i:
/// n^(m-k) (n-2)^k.
inline BigInt d12(int m, int n, int k) {
  detail::check(m >= 0, "m must be nonnegative");
  detail::check(n >= 2, "n must be at least 2");
  detail::check(k >= 0, "k must be nonnegative");
  detail::check(k <= m, "k must not exceed m");
  return power(n, m - k) * power(n - 2, k);
}

/// k disjoint 2-blocks may not collapse onto their forbidden value,
/// f(X_i) != {y_i}: n^(m-2k) (n^2-1)^k.
inline BigInt d21(int m, int n, int k) {
  detail::check(m >= 0, "m must be nonnegative");
  detail::check(n >= 1, "n must be at least 1");
  detail::check(k >= 0, "k must be nonnegative");
  detail::check(2 * k <= m, "2k must not exceed m");
  return power(n, m - 2 * k) * power(BigInt(n) * n - 1, k);
}

/// k disjoint 2-blocks may not land inside their forbidden 2-set,
/// f(X_i) not contained in Y_i: n^(m-2k) (n^2-4)^k.
inline BigInt d22(int m, int n, int k) {
  detail::check(m >= 0, "m must be nonnegative");
  detail::check(n >= 2, "n must be at least 2");
  detail::check(k >= 0, "k must be nonnegative");
  detail::check(2 * k <= m, "2k must not exceed m");
  return power(n, m - 2 * k) * power(BigInt(n) * n - 4, k);
}

/// k disjoint 2-blocks may not have image exactly their forbidden 2-set,
/// f(X_i) != Y_i: n^(m-2k) (n^2-2)^k.
inline BigInt s22(int m, int n, int k) {
  detail::check(m >= 0, "m must be nonnegative");
  detail::check(n >= 2, "n must be at least 2");
  detail::check(k >= 0, "k must be nonnegative");
  detail::check(2 * k <= m, "2k must not exceed m");
  return power(n, m - 2 * k) * power(BigInt(n) * n - 2, k);
}

/// Injections with k forbidden point pairs (distinct x's, distinct y's):
/// sum over i of (-1)^i C(k,i) (n-i) falling to (m-i).
inline BigInt i1(int m, int n, int k) {
  detail::check(m >= 0, "m must be nonnegative");
  detail::check(k >= 0, "k must be nonnegative");
  detail::check(m <= n, "m must not exceed n for injections");
  detail::check(k <= m, "k must not exceed m");
  BigInt sum = 0;
  for (int i = 0; i <= k; ++i) {
    BigInt term = binomial(k, i) * falling_factorial(n - i, m - i);
    if (i & 1)
      sum -= term;
    else
      sum += term;
  }
  return sum;
}

/// Permutations of [kn] mapping no block of the canonical k-uniform
/// partition onto itself: sum of (-1)^i C(n,i) (k!)^i ((n-i)k)!. The
/// C(n,i) factor chooses which i blocks are held fixed; the sum without
/// it gives 24 instead of the enumerated 20 already at n = k = 2, and
/// only the version with the factor reduces to the classical derangement
/// numbers at k = 1.
inline BigInt block_derangements(int n, int k) {
  detail::check(n >= 0, "n must be nonnegative");
  detail::check(k >= 1, "k must be at least 1");
  BigInt sum = 0;
  const BigInt kfact = factorial(k);
  for (int i = 0; i <= n; ++i) {
    BigInt term = binomial(n, i) * power(kfact, i) *
                  factorial(static_cast<std::uint64_t>(n - i) * k);
    if (i & 1)
      sum -= term;
    else
      sum += term;
  }
  return sum;
}

namespace detail {

// Alternating-sum route for the five product closed forms. The pair
// (y_weight, x_width) is |Y|^|X| and |X| of one constraint: the subset
// term is (-1)^i C(k,i) y_weight^i n^(m - x_width*i).
inline BigInt alternating_sum_form(int m, int n, int k, int y_weight, int x_width) {
  BigInt sum = 0;
  for (int i = 0; i <= k; ++i) {
    BigInt term = binomial(k, i) * power(y_weight, i) *
                  power(n, m - x_width * i);
    if (i & 1)
      sum -= term;
    else
      sum += term;
  }
  return sum;
}

}  // namespace detail

/// Exact agreement between a family's alternating sum and its product
/// closed form. Defined for the five families that have a product form.
inline bool closed_form_vs_sum_check(Family family, int m, int n, int k) {
  // Evaluate the closed form first: it performs the parameter checks that
  // keep the sum's exponents nonnegative.
  BigInt closed;
  int y_weight, x_width;
  switch (family) {
    case Family::D11: closed = d11(m, n, k); y_weight = 1; x_width = 1; break;
    case Family::D12: closed = d12(m, n, k); y_weight = 2; x_width = 1; break;
    case Family::D21: closed = d21(m, n, k); y_weight = 1; x_width = 2; break;
    case Family::D22: closed = d22(m, n, k); y_weight = 4; x_width = 2; break;
    case Family::S22: closed = s22(m, n, k); y_weight = 2; x_width = 2; break;
    default:
      throw std::invalid_argument("family has no product closed form");
  }
  return closed == detail::alternating_sum_form(m, n, k, y_weight, x_width);
}

/// The canonical constraint layout realizing a closed-form family, used
/// to cross-check formulas against enumeration. The counts do not depend
/// on the layout choice, only on the block sizes.
inline ConstraintSystem canonical_family_system(Family family, int m, int n,
                                                int k) {
  ConstraintSystem sys;
  sys.m = m;
  sys.n = n;
  auto point = [](int v) { return Block{v}; };
  auto pair_at = [](int i) { return Block{2 * i - 1, 2 * i}; };
  switch (family) {
    case Family::D11:
      d11(m, n, k);  // parameter check
      for (int i = 1; i <= k; ++i)
        sys.constraints.push_back({point(i), point((i - 1) % n + 1),
                                   Relation::ContainmentForbidden});
      break;
    case Family::D12:
      d12(m, n, k);
      for (int i = 1; i <= k; ++i)
        sys.constraints.push_back(
            {point(i), Block{1, 2}, Relation::ContainmentForbidden});
      break;
    case Family::D21:
      d21(m, n, k);
      for (int i = 1; i <= k; ++i)
        sys.constraints.push_back(
            {pair_at(i), point(1), Relation::ContainmentForbidden});
      break;
    case Family::D22:
      d22(m, n, k);
      for (int i = 1; i <= k; ++i)
        sys.constraints.push_back(
            {pair_at(i), Block{1, 2}, Relation::ContainmentForbidden});
      break;
    case Family::S22:
      s22(m, n, k);
      for (int i = 1; i <= k; ++i)
        sys.constraints.push_back(
            {pair_at(i), Block{1, 2}, Relation::ImageEqualityForbidden});
      break;
    case Family::I1:
      i1(m, n, k);
      sys.function_class = FunctionClass::Injections;
      for (int i = 1; i <= k; ++i)
        sys.constraints.push_back(
            {point(i), point(i), Relation::ImageEqualityForbidden});
      break;
    case Family::BlockDerangement: {
      detail::check(n >= 0, "n must be nonnegative");
      detail::check(k >= 1, "k must be at least 1");
      sys.m = sys.n = n * k;
      if (sys.n < 1) sys.n = 1;  // m=0 keeps the codomain nonempty
      sys.function_class = FunctionClass::Injections;
      for (int i = 0; i < n; ++i) {
        std::vector<int> xs;
        for (int j = 1; j <= k; ++j) xs.push_back(i * k + j);
        Block b{xs};
        sys.constraints.push_back({b, b, Relation::ImageEqualityForbidden});
      }
      break;
    }
  }
  require_valid(sys);
  return sys;
}

/// Count for a family at one parameter point.
inline BigInt evaluate_family(Family family, int m, int n, int k) {
  switch (family) {
    case Family::D11: return d11(m, n, k);
    case Family::D12: return d12(m, n, k);
    case Family::D21: return d21(m, n, k);
    case Family::D22: return d22(m, n, k);
    case Family::S22: return s22(m, n, k);
    case Family::I1: return i1(m, n, k);
    case Family::BlockDerangement: return block_derangements(n, k);
  }
  throw std::invalid_argument("unknown family");
}

}  // namespace derangekit
