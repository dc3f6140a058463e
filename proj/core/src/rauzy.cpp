#include "ietflow/permutation.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace ietflow {

namespace {

std::vector<SigmaKey> closure(const SigmaKey& start, bool extended, size_t cap,
                              std::set<SigmaKey>& seen) {
  std::vector<SigmaKey> out;
  std::deque<SigmaKey> queue{start};
  seen.insert(start);
  while (!queue.empty()) {
    SigmaKey s = queue.front();
    queue.pop_front();
    out.push_back(s);
    auto p = LabeledPermutation::from_sigma(s);
    std::vector<LabeledPermutation> next{rauzy_move(p, RauzyKind::top),
                                         rauzy_move(p, RauzyKind::bottom)};
    if (extended) next.push_back(p.reversed());
    for (const auto& n : next) {
      SigmaKey k = n.sigma();
      if (seen.insert(k).second) {
        if (seen.size() > cap) throw DomainError("Rauzy class exceeds the size cap");
        queue.push_back(k);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace

std::vector<SigmaKey> rauzy_class(const LabeledPermutation& seed, bool extended, size_t cap) {
  if (!is_irreducible(seed)) throw DomainError("Rauzy class of a reducible permutation");
  std::set<SigmaKey> seen;
  return closure(seed.sigma(), extended, cap, seen);
}

std::vector<std::vector<SigmaKey>> all_rauzy_classes(size_t d, bool extended, size_t cap) {
  if (d < 2) throw DomainError("d must be at least 2");
  SigmaKey s(d);
  std::iota(s.begin(), s.end(), 1);
  std::set<SigmaKey> seen;
  std::vector<std::vector<SigmaKey>> classes;
  do {
    if (seen.count(s)) continue;
    auto p = LabeledPermutation::from_sigma(s);
    if (!is_irreducible(p)) continue;
    classes.push_back(closure(s, extended, cap, seen));
  } while (std::next_permutation(s.begin(), s.end()));
  return classes;
}

LabeledPermutation find_pierost(const std::vector<SigmaKey>& cls) {
  for (const auto& s : cls) {
    auto p = LabeledPermutation::from_sigma(s);
    if (is_pierost(p)) return p;
  }
  throw DomainError("no member with sigma(1)=d and sigma(d)=1 in the class");
}

} // namespace ietflow
