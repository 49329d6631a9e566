#include "corecert/coalition.hpp"

#include <algorithm>

#include "corecert/errors.hpp"

namespace corecert {

std::vector<int> Coalition::members() const {
  std::vector<int> out;
  for (int i = 0; i < 32; ++i) {
    if (contains(i)) out.push_back(i);
  }
  return out;
}

std::string Coalition::to_string() const {
  std::string out = "{";
  bool first = true;
  for (int i : members()) {
    if (!first) out += ",";
    out += std::to_string(i + 1);
    first = false;
  }
  out += "}";
  return out;
}

std::vector<Coalition> enumerate_coalitions(int n) {
  if (n < 2) throw InvalidGameError("enumerate_coalitions: need at least 2 agents, got " + std::to_string(n));
  if (n > 20) throw InvalidGameError("enumerate_coalitions: agent count " + std::to_string(n) + " is not supported");
  const std::uint32_t grand = (1u << n) - 1u;
  std::vector<Coalition> out;
  out.reserve(grand - 1u);
  for (std::uint32_t mask = 1; mask < grand; ++mask) out.push_back(Coalition{mask});
  std::sort(out.begin(), out.end(), [](const Coalition& a, const Coalition& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.mask < b.mask;
  });
  return out;
}

int proper_coalition_count(int n) {
  if (n < 2) throw InvalidGameError("proper_coalition_count: need at least 2 agents, got " + std::to_string(n));
  return (1 << n) - 2;
}

double coalition_sum(const Coalition& s, const std::vector<double>& x) {
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (s.contains(static_cast<int>(i))) total += x[i];
  }
  return total;
}

}  // namespace corecert
