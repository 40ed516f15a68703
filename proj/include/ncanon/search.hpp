#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ncanon/errors.hpp"
#include "ncanon/ids.hpp"

namespace ncanon {

struct SearchLimits {
  /// Maximum number of partial assignments visited before SearchSpaceTooLarge.
  std::size_t node_bound = 1'000'000;
  /// Stop after this many solutions (the result is then marked truncated).
  std::size_t max_solutions = std::numeric_limits<std::size_t>::max();
};

struct SearchResult {
  std::vector<std::vector<MorId>> solutions;
  std::size_t nodes = 0;
  bool truncated = false;
};

/// Depth-first search over one morphism per slot. Each constraint names the
/// slots it reads and is evaluated as soon as the last of them is assigned,
/// so partial assignments that already break an equation are cut off. The
/// search is complete: every assignment satisfying all constraints is found.
class ConstraintSearch {
 public:
  using Predicate = std::function<bool(std::span<const MorId>)>;

  explicit ConstraintSearch(std::vector<std::vector<MorId>> candidates)
      : cands_(std::move(candidates)), attached_(cands_.size()) {}

  std::size_t slot_count() const noexcept { return cands_.size(); }
  const std::vector<MorId>& candidates(std::size_t slot) const { return cands_.at(slot); }

  void add_constraint(std::span<const std::size_t> scope, Predicate p) {
    if (scope.empty()) {
      global_.push_back(std::move(p));
      return;
    }
    const std::size_t last = *std::max_element(scope.begin(), scope.end());
    if (last >= cands_.size()) throw IndexOutOfRange("constraint scope names a missing slot");
    attached_[last].push_back(std::move(p));
  }
  void add_constraint(std::initializer_list<std::size_t> scope, Predicate p) {
    add_constraint(std::span<const std::size_t>(scope.begin(), scope.size()), std::move(p));
  }

  SearchResult run(const SearchLimits& limits = {}) const {
    SearchResult out;
    std::vector<MorId> assign(cands_.size(), kNoMorphism);
    for (const auto& p : global_)
      if (!p(assign)) return out;
    descend(0, assign, limits, out);
    return out;
  }

 private:
  // Returns false once max_solutions is reached.
  bool descend(std::size_t slot, std::vector<MorId>& assign, const SearchLimits& limits, SearchResult& out) const {
    if (slot == cands_.size()) {
      out.solutions.push_back(assign);
      if (out.solutions.size() >= limits.max_solutions) {
        out.truncated = true;
        return false;
      }
      return true;
    }
    for (MorId m : cands_[slot]) {
      if (++out.nodes > limits.node_bound)
        throw SearchSpaceTooLarge("search visited more than " + std::to_string(limits.node_bound) + " nodes",
                                  static_cast<double>(out.nodes));
      assign[slot] = m;
      bool ok = true;
      for (const auto& p : attached_[slot])
        if (!p(assign)) {
          ok = false;
          break;
        }
      if (ok && !descend(slot + 1, assign, limits, out)) return false;
    }
    assign[slot] = kNoMorphism;
    return true;
  }

  std::vector<std::vector<MorId>> cands_;
  std::vector<std::vector<Predicate>> attached_;
  std::vector<Predicate> global_;
};

}  // namespace ncanon
