#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace corecert {

// A nonempty subset of agents, encoded as a bit mask: agent i (0-based) is a
// member iff bit i is set. The grand coalition is the all-ones mask over the
// game's n agents; the empty mask is not a valid coalition.
struct Coalition {
  std::uint32_t mask = 0;

  int size() const { return std::popcount(mask); }
  bool contains(int agent) const { return (mask >> agent) & 1u; }

  // 0-based member indices, ascending.
  std::vector<int> members() const;

  // Render as "{1,3}" with 1-based agent labels (file/CLI convention).
  std::string to_string() const;

  static Coalition grand(int n) { return Coalition{(1u << n) - 1u}; }

  friend bool operator==(const Coalition&, const Coalition&) = default;
};

// All 2^n - 2 proper nonempty coalitions, ordered by (size, mask) ascending.
// This ordering is the canonical row order of every value matrix and
// constraint system in the library.
std::vector<Coalition> enumerate_coalitions(int n);

// Number of proper nonempty coalitions, 2^n - 2. This is the dimension-like
// quantity that bounds the compression-set cardinality a priori.
int proper_coalition_count(int n);

// Sum of the allocation entries of the coalition's members.
double coalition_sum(const Coalition& s, const std::vector<double>& x);

}  // namespace corecert
