#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace eyield {

/// Unordered pair of 1-based site numbers, stored with first < second.
struct SitePair {
  int first = 0;
  int second = 0;

  SitePair() = default;
  SitePair(int m, int n);

  friend bool operator==(const SitePair&, const SitePair&) = default;
};

struct PairGroup {
  std::string label;
  std::vector<SitePair> pairs;
};

/// Named grouping of site pairs. A valid partition is disjoint and covers all
/// N(N-1)/2 pairs, so group sums reproduce the total.
class PairPartition {
 public:
  PairPartition() = default;
  explicit PairPartition(std::vector<PairGroup> groups);

  const std::vector<PairGroup>& groups() const { return groups_; }
  std::vector<std::string> labels() const;

  /// Throws ValidationError naming every missing, duplicated or out-of-range
  /// pair and every duplicate label.
  void validate(std::size_t n_sites) const;

 private:
  std::vector<PairGroup> groups_;
};

}  // namespace eyield
