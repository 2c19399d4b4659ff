// Copyright 2026 The kproj Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Satisfiability and weighted model counting for multi-valued CNF
// constraints. The search works directly on finite domains: it branches on
// the lowest-index category with more than one remaining value, values
// ascending, and prunes with clause-level forward checking.

#ifndef KPROJ_CONSTRAINTS_HPP_
#define KPROJ_CONSTRAINTS_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kproj/model.hpp"
#include "kproj/numeric.hpp"

namespace kproj {

// Fixed values for a subset of the categories.
class PartialAssignment {
 public:
  explicit PartialAssignment(std::size_t num_categories)
      : values_(num_categories) {}

  PartialAssignment& set(std::size_t category, ValueIndex value) {
    values_.at(category) = value;
    return *this;
  }
  const std::optional<ValueIndex>& operator[](std::size_t category) const {
    return values_[category];
  }
  std::size_t size() const { return values_.size(); }

  bool is_extended_by(const CategorizationPoint& p) const {
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (values_[i] && *values_[i] != p[i]) return false;
    }
    return true;
  }

 private:
  std::vector<std::optional<ValueIndex>> values_;
};

namespace detail {

// Per-category allowed-value masks.
using Domains = std::vector<std::vector<char>>;

enum class Propagation { kConflict, kOpen, kAllSatisfied };

class DomainSearch {
 public:
  explicit DomainSearch(const CategorizationModel& model) : model_(model) {}

  Domains initial_domains() const {
    Domains d(model_.num_categories());
    for (std::size_t i = 0; i < d.size(); ++i) {
      d[i].assign(model_.domain_size(i), 1);
    }
    return d;
  }

  Domains domains_for(const PartialAssignment& partial) const {
    if (partial.size() != model_.num_categories()) {
      throw InvalidPointError("partial assignment arity mismatch");
    }
    Domains d = initial_domains();
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (!partial[i]) continue;
      if (*partial[i] >= d[i].size()) {
        throw InvalidPointError("partial assignment value out of range for '" +
                                model_.category(i).name + "'");
      }
      std::fill(d[i].begin(), d[i].end(), 0);
      d[i][*partial[i]] = 1;
    }
    return d;
  }

  // Runs clause-level forward checking to a fixpoint. A literal is certain
  // when every remaining value of its category satisfies it, dead when none
  // does. A clause whose live literals all sit on one category narrows that
  // category to the union of the literals' satisfying values.
  Propagation propagate(Domains& d) const {
    const auto& clauses = model_.constraints().clauses;
    bool changed = true;
    bool all_satisfied = false;
    while (changed) {
      changed = false;
      all_satisfied = true;
      for (const Clause& clause : clauses) {
        bool satisfied = false;
        std::size_t live_category = kNone;
        bool multi_category = false;
        for (const Literal& lit : clause) {
          const auto& dom = d[lit.category];
          std::size_t total = 0;
          std::size_t holding = 0;
          for (ValueIndex v = 0; v < dom.size(); ++v) {
            if (!dom[v]) continue;
            ++total;
            if (lit.holds_for(v)) ++holding;
          }
          if (total > 0 && holding == total) {
            satisfied = true;
            break;
          }
          if (holding == 0) continue;
          if (live_category == kNone) {
            live_category = lit.category;
          } else if (live_category != lit.category) {
            multi_category = true;
          }
        }
        if (satisfied) continue;
        all_satisfied = false;
        if (live_category == kNone) return Propagation::kConflict;
        if (multi_category) continue;
        auto& dom = d[live_category];
        for (ValueIndex v = 0; v < dom.size(); ++v) {
          if (!dom[v]) continue;
          bool keep = false;
          for (const Literal& lit : clause) {
            if (lit.category == live_category && lit.holds_for(v)) {
              keep = true;
              break;
            }
          }
          if (!keep) {
            dom[v] = 0;
            changed = true;
          }
        }
      }
    }
    return all_satisfied ? Propagation::kAllSatisfied : Propagation::kOpen;
  }

  // Depth-first enumeration of satisfying full points in lexicographic order.
  // `visit` returns true to stop the search; the return value reports whether
  // it was stopped.
  template <typename Visitor>
  bool search(Domains d, Visitor&& visit) const {
    if (propagate(d) == Propagation::kConflict) return false;
    std::size_t branch = kNone;
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (std::count(d[i].begin(), d[i].end(), 1) > 1) {
        branch = i;
        break;
      }
    }
    if (branch == kNone) {
      std::vector<ValueIndex> values(d.size());
      for (std::size_t i = 0; i < d.size(); ++i) {
        values[i] = static_cast<ValueIndex>(
            std::find(d[i].begin(), d[i].end(), 1) - d[i].begin());
      }
      return visit(CategorizationPoint(std::move(values)));
    }
    for (ValueIndex v = 0; v < d[branch].size(); ++v) {
      if (!d[branch][v]) continue;
      Domains child = d;
      std::fill(child[branch].begin(), child[branch].end(), 0);
      child[branch][v] = 1;
      if (search(std::move(child), visit)) return true;
    }
    return false;
  }

  // Weighted count of satisfying points below `d`. Once every clause is
  // certain, the remaining box is summed in closed form.
  BigInt weighted_count(Domains d) const {
    const Propagation status = propagate(d);
    if (status == Propagation::kConflict) return 0;
    if (status == Propagation::kAllSatisfied) return box_weight(d);
    std::size_t branch = kNone;
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (std::count(d[i].begin(), d[i].end(), 1) > 1) {
        branch = i;
        break;
      }
    }
    if (branch == kNone) return box_weight(d);
    BigInt total = 0;
    for (ValueIndex v = 0; v < d[branch].size(); ++v) {
      if (!d[branch][v]) continue;
      Domains child = d;
      std::fill(child[branch].begin(), child[branch].end(), 0);
      child[branch][v] = 1;
      total += weighted_count(std::move(child));
    }
    return total;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  BigInt box_weight(const Domains& d) const {
    std::vector<std::vector<Weight>> factors(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
      for (ValueIndex v = 0; v < d[i].size(); ++v) {
        if (d[i][v]) factors[i].push_back(model_.weight(i, v));
      }
    }
    return sum_of_combined_weights(factors, model_.combine_op());
  }

  const CategorizationModel& model_;
};

inline void check_enumeration_limit(const CategorizationModel& model,
                                    std::uint64_t limit) {
  if (model.space_size() > limit) {
    throw LimitExceededError(
        "space too large for exact full-coverage denominator (" +
        to_string(model.space_size()) + " points, limit " +
        std::to_string(limit) + ")");
  }
}

}  // namespace detail

// A satisfying full point extending `partial`, if one exists. The first such
// point in lexicographic order is returned.
inline std::optional<CategorizationPoint> find_extension(
    const CategorizationModel& model, const PartialAssignment& partial) {
  detail::DomainSearch solver(model);
  std::optional<CategorizationPoint> found;
  solver.search(solver.domains_for(partial),
                [&](const CategorizationPoint& p) {
                  found = p;
                  return true;
                });
  return found;
}

// Occupation check: can a constraint-satisfying point take these values?
inline bool satisfiable_under(const CategorizationModel& model,
                              const PartialAssignment& partial) {
  if (model.constraints().empty()) {
    detail::DomainSearch(model).domains_for(partial);  // range check only
    return true;
  }
  return find_extension(model, partial).has_value();
}

inline bool satisfiable(const CategorizationModel& model) {
  return satisfiable_under(model, PartialAssignment(model.num_categories()));
}

// Calls `visit` on every satisfying point in lexicographic order. Refuses
// spaces larger than `limit`.
inline void for_each_satisfying(
    const CategorizationModel& model,
    const std::function<void(const CategorizationPoint&)>& visit,
    std::uint64_t limit = kDefaultEnumerationLimit) {
  detail::check_enumeration_limit(model, limit);
  detail::DomainSearch solver(model);
  solver.search(solver.initial_domains(), [&](const CategorizationPoint& p) {
    visit(p);
    return false;
  });
}

inline std::vector<CategorizationPoint> enumerate_satisfying(
    const CategorizationModel& model,
    std::uint64_t limit = kDefaultEnumerationLimit) {
  std::vector<CategorizationPoint> out;
  for_each_satisfying(
      model, [&](const CategorizationPoint& p) { out.push_back(p); }, limit);
  return out;
}

// Sum over sat(CS) of the combined point weight: the full-coverage
// denominator. Counting is #P-hard in general, so it is opt-in by size.
inline BigInt count_weighted_models(
    const CategorizationModel& model,
    std::uint64_t limit = kDefaultEnumerationLimit) {
  detail::check_enumeration_limit(model, limit);
  detail::DomainSearch solver(model);
  return solver.weighted_count(solver.initial_domains());
}

}  // namespace kproj

#endif  // KPROJ_CONSTRAINTS_HPP_
