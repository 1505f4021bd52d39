#include "eyield/partition.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "eyield/error.hpp"

namespace eyield {

namespace {

std::string name(const SitePair& p) {
  return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
}

}  // namespace

SitePair::SitePair(int m, int n) : first(std::min(m, n)), second(std::max(m, n)) {}

PairPartition::PairPartition(std::vector<PairGroup> groups) : groups_(std::move(groups)) {
  for (auto& g : groups_)
    for (auto& p : g.pairs) p = SitePair(p.first, p.second);
}

std::vector<std::string> PairPartition::labels() const {
  std::vector<std::string> out;
  out.reserve(groups_.size());
  for (const auto& g : groups_) out.push_back(g.label);
  return out;
}

void PairPartition::validate(std::size_t n_sites) const {
  std::vector<std::string> bad;
  const int n = static_cast<int>(n_sites);
  std::set<std::string> seen_labels;
  std::map<std::pair<int, int>, std::string> owner;
  for (const auto& g : groups_) {
    if (g.label.empty()) bad.push_back("partition: empty group label");
    if (!seen_labels.insert(g.label).second) bad.push_back("partition: duplicate group label '" + g.label + "'");
    for (const auto& p : g.pairs) {
      if (p.first < 1 || p.second > n || p.first == p.second) {
        bad.push_back("partition group '" + g.label + "': invalid pair " + name(p));
        continue;
      }
      auto [it, inserted] = owner.emplace(std::make_pair(p.first, p.second), g.label);
      if (!inserted)
        bad.push_back("partition: pair " + name(p) + " duplicated (groups '" + it->second + "' and '" +
                      g.label + "')");
    }
  }
  for (int m = 1; m <= n; ++m)
    for (int k = m + 1; k <= n; ++k)
      if (!owner.contains({m, k})) bad.push_back("partition: pair " + name(SitePair(m, k)) + " missing");
  if (!bad.empty()) throw ValidationError(std::move(bad));
}

}  // namespace eyield
