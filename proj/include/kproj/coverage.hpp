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

// k-projection coverage.
//
// For every set Delta of k categories, points are projected onto the Delta
// plane and each cell (one value per category in Delta) is asked to hold at
// least its combined weight in data points. The coverage numerator sums the
// observed counts capped at the cell weight; the denominator sums the cell
// weights over cells that some constraint-satisfying point can occupy. Cells
// with weight 0 and cells ruled out by the constraints count on neither side.
//
// With k = n this coincides with full categorization coverage over sat(CS),
// which `full_coverage` computes directly by weighted model counting.

#ifndef KPROJ_COVERAGE_HPP_
#define KPROJ_COVERAGE_HPP_

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kproj/constraints.hpp"
#include "kproj/model.hpp"
#include "kproj/numeric.hpp"

namespace kproj {

// Strictly ascending set of category indices (0-based).
class ProjectionIndex {
 public:
  ProjectionIndex() = default;
  explicit ProjectionIndex(std::vector<std::size_t> categories)
      : categories_(std::move(categories)) {
    for (std::size_t i = 1; i < categories_.size(); ++i) {
      if (categories_[i - 1] >= categories_[i]) {
        throw Error("projection index must be strictly ascending");
      }
    }
  }
  ProjectionIndex(std::initializer_list<std::size_t> categories)
      : ProjectionIndex(std::vector<std::size_t>(categories)) {}

  std::size_t size() const { return categories_.size(); }
  std::size_t operator[](std::size_t i) const { return categories_[i]; }
  const std::vector<std::size_t>& categories() const { return categories_; }
  auto begin() const { return categories_.begin(); }
  auto end() const { return categories_.end(); }

  friend auto operator<=>(const ProjectionIndex&,
                          const ProjectionIndex&) = default;
  friend bool operator==(const ProjectionIndex&,
                         const ProjectionIndex&) = default;

 private:
  std::vector<std::size_t> categories_;
};

// Value indices aligned with a ProjectionIndex.
using Cell = std::vector<ValueIndex>;

inline void check_projection_size(const CategorizationModel& model,
                                   std::size_t k) {
  if (k < 1 || k > model.num_categories()) {
    throw Error("projection size k=" + std::to_string(k) +
                " outside [1, " + std::to_string(model.num_categories()) + "]");
  }
}

// Visits every k-subset of {0..n-1} in lexicographic order.
inline void for_each_projection_index(
    std::size_t n, std::size_t k,
    const std::function<void(const ProjectionIndex&)>& visit) {
  if (k == 0 || k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    visit(ProjectionIndex(idx));
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
    if (pos == 0) return;
    ++idx[pos - 1];
    for (std::size_t i = pos; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
}

inline std::vector<ProjectionIndex> projection_indices(std::size_t n,
                                                       std::size_t k) {
  std::vector<ProjectionIndex> out;
  for_each_projection_index(n, k,
                            [&](const ProjectionIndex& d) { out.push_back(d); });
  return out;
}

inline BigInt plane_cell_count(const CategorizationModel& model,
                               const ProjectionIndex& delta) {
  BigInt count = 1;
  for (std::size_t c : delta) count *= model.domain_size(c);
  return count;
}

// Visits every cell of the Delta plane in lexicographic order.
inline void for_each_cell(const CategorizationModel& model,
                          const ProjectionIndex& delta,
                          const std::function<void(const Cell&)>& visit) {
  Cell cell(delta.size(), 0);
  while (true) {
    visit(cell);
    bool advanced = false;
    for (std::size_t pos = delta.size(); pos > 0 && !advanced; --pos) {
      if (++cell[pos - 1] < model.domain_size(delta[pos - 1])) {
        advanced = true;
      } else {
        cell[pos - 1] = 0;
      }
    }
    if (!advanced) return;
  }
}

inline Cell project(const CategorizationPoint& p, const ProjectionIndex& delta) {
  Cell cell(delta.size());
  for (std::size_t i = 0; i < delta.size(); ++i) cell[i] = p[delta[i]];
  return cell;
}

inline BigInt cell_weight(const CategorizationModel& model,
                          const ProjectionIndex& delta, const Cell& cell) {
  std::vector<Weight> ws(delta.size());
  for (std::size_t i = 0; i < delta.size(); ++i) {
    ws[i] = model.weight(delta[i], cell[i]);
  }
  return combine_weights(ws, model.combine_op());
}

inline PartialAssignment cell_assignment(const CategorizationModel& model,
                                         const ProjectionIndex& delta,
                                         const Cell& cell) {
  PartialAssignment partial(model.num_categories());
  for (std::size_t i = 0; i < delta.size(); ++i) partial.set(delta[i], cell[i]);
  return partial;
}

// Occupation checks with memoization. Only categories mentioned by some
// clause can affect satisfiability, so results are keyed on the cell's
// restriction to those categories.
class OccupationChecker {
 public:
  explicit OccupationChecker(const CategorizationModel& model)
      : model_(model), constrained_(model.num_categories(), false) {
    for (const Clause& clause : model.constraints().clauses) {
      for (const Literal& lit : clause) constrained_[lit.category] = true;
    }
  }

  bool feasible(const ProjectionIndex& delta, const Cell& cell) {
    if (model_.constraints().empty()) return true;
    std::vector<std::pair<std::size_t, ValueIndex>> key;
    PartialAssignment partial(model_.num_categories());
    for (std::size_t i = 0; i < delta.size(); ++i) {
      if (!constrained_[delta[i]]) continue;
      key.emplace_back(delta[i], cell[i]);
      partial.set(delta[i], cell[i]);
    }
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const bool ok = satisfiable_under(model_, partial);
    cache_.emplace(std::move(key), ok);
    return ok;
  }

 private:
  const CategorizationModel& model_;
  std::vector<bool> constrained_;
  std::map<std::vector<std::pair<std::size_t, ValueIndex>>, bool> cache_;
};

struct CellStats {
  std::size_t count = 0;
  // 0-based row of the first data point that landed in the cell.
  std::size_t first_row = 0;
};

struct ProjectionPlane {
  ProjectionIndex delta;
  std::map<Cell, CellStats> cells;  // absent cells have count 0

  std::size_t count(const Cell& cell) const {
    auto it = cells.find(cell);
    return it == cells.end() ? 0 : it->second.count;
  }
  const CellStats* stats(const Cell& cell) const {
    auto it = cells.find(cell);
    return it == cells.end() ? nullptr : &it->second;
  }
};

// Book-keeping of projected counts for every Delta of size k.
class ProjectionTables {
 public:
  ProjectionTables(std::size_t num_categories, std::size_t k) : k_(k) {
    for_each_projection_index(num_categories, k, [&](const ProjectionIndex& d) {
      planes_.push_back(ProjectionPlane{d, {}});
    });
  }

  std::size_t k() const { return k_; }
  std::size_t rows() const { return rows_; }
  const std::vector<ProjectionPlane>& planes() const { return planes_; }

  const ProjectionPlane& plane(const ProjectionIndex& delta) const {
    auto it = std::lower_bound(
        planes_.begin(), planes_.end(), delta,
        [](const ProjectionPlane& p, const ProjectionIndex& d) {
          return p.delta < d;
        });
    if (it == planes_.end() || it->delta != delta) {
      throw Error("no plane for requested projection index");
    }
    return *it;
  }

  void add(const CategorizationPoint& p) {
    for (ProjectionPlane& plane : planes_) {
      auto [it, inserted] =
          plane.cells.try_emplace(project(p, plane.delta), CellStats{0, rows_});
      ++it->second.count;
    }
    ++rows_;
  }

 private:
  std::size_t k_;
  std::size_t rows_ = 0;
  std::vector<ProjectionPlane> planes_;
};

inline ProjectionTables build_tables(const DataSet& data,
                                     const CategorizationModel& model,
                                     std::size_t k) {
  check_projection_size(model, k);
  ProjectionTables tables(model.num_categories(), k);
  for (const CategorizationPoint& p : data.rows()) tables.add(p);
  return tables;
}

struct CoverageOptions {
  // Upper bound on full points (full coverage) or cells per plane
  // (constrained projection coverage) that are enumerated.
  std::uint64_t enumeration_limit = kDefaultEnumerationLimit;
  // Cap on the number of infeasible / weight-0 cells listed in a result.
  std::size_t max_listed_cells = 1000;
};

struct CellRef {
  ProjectionIndex delta;
  Cell cell;

  friend bool operator==(const CellRef&, const CellRef&) = default;
};

struct PlaneCoverage {
  ProjectionIndex delta;
  BigInt numerator = 0;
  BigInt denominator = 0;
};

struct CoverageResult {
  std::size_t k = 0;
  bool full = false;  // computed from full points rather than projections
  BigInt numerator = 0;
  BigInt denominator = 0;
  Rational ratio = 0;
  bool vacuous = false;  // denominator 0; ratio defined as 1
  std::vector<PlaneCoverage> planes;
  std::vector<CellRef> infeasible_cells;
  std::vector<CellRef> zero_weight_cells;
  BigInt infeasible_cell_count = 0;
  BigInt zero_weight_cell_count = 0;

  bool is_complete() const { return numerator == denominator; }

  void finalize() {
    vacuous = denominator == 0;
    ratio = vacuous ? Rational(1) : Rational(numerator, denominator);
  }
};

// A cell that can be occupied and has positive weight.
struct CoverableCell {
  Cell cell;
  BigInt weight;
};

struct CoverablePlane {
  ProjectionIndex delta;
  std::vector<CoverableCell> cells;
};

namespace detail {

inline void check_plane_limit(const CategorizationModel& model,
                              const ProjectionIndex& delta,
                              std::uint64_t limit) {
  if (plane_cell_count(model, delta) > limit) {
    throw LimitExceededError("projection plane has " +
                             to_string(plane_cell_count(model, delta)) +
                             " cells, above enumeration limit " +
                             std::to_string(limit));
  }
}

// Count of weight-0 cells in the plane, by closed form.
inline BigInt zero_weight_count(const CategorizationModel& model,
                                const ProjectionIndex& delta) {
  BigInt zero_everywhere = 1;
  BigInt nonzero_everywhere = 1;
  for (std::size_t c : delta) {
    std::size_t zeros = 0;
    for (Weight w : model.category(c).weights) zeros += (w == 0);
    zero_everywhere *= zeros;
    nonzero_everywhere *= model.domain_size(c) - zeros;
  }
  if (model.combine_op() == CombineOp::kProduct) {
    return plane_cell_count(model, delta) - nonzero_everywhere;
  }
  return zero_everywhere;
}

// Denominator contribution of one plane; appends listed cells to `result`.
inline BigInt plane_denominator(const CategorizationModel& model,
                                const ProjectionIndex& delta,
                                OccupationChecker& occupation,
                                const CoverageOptions& options,
                                CoverageResult* result) {
  const auto list = [&](std::vector<CellRef>& out, const Cell& cell) {
    if (result == nullptr) return;
    if (result->infeasible_cells.size() + result->zero_weight_cells.size() <
        options.max_listed_cells) {
      out.push_back(CellRef{delta, cell});
    }
  };
  if (model.constraints().empty()) {
    std::vector<std::vector<Weight>> factors;
    for (std::size_t c : delta) factors.push_back(model.category(c).weights);
    if (result != nullptr) {
      const BigInt zeros = zero_weight_count(model, delta);
      result->zero_weight_cell_count += zeros;
      if (zeros > 0) {
        const bool small =
            plane_cell_count(model, delta) <= options.enumeration_limit;
        if (small) {
          for_each_cell(model, delta, [&](const Cell& cell) {
            if (cell_weight(model, delta, cell) == 0) {
              list(result->zero_weight_cells, cell);
            }
          });
        }
      }
    }
    return sum_of_combined_weights(factors, model.combine_op());
  }
  check_plane_limit(model, delta, options.enumeration_limit);
  BigInt total = 0;
  for_each_cell(model, delta, [&](const Cell& cell) {
    if (!occupation.feasible(delta, cell)) {
      if (result != nullptr) {
        result->infeasible_cell_count += 1;
        list(result->infeasible_cells, cell);
      }
      return;
    }
    const BigInt w = cell_weight(model, delta, cell);
    if (w == 0) {
      if (result != nullptr) {
        result->zero_weight_cell_count += 1;
        list(result->zero_weight_cells, cell);
      }
      return;
    }
    total += w;
  });
  return total;
}

inline BigInt plane_numerator(const CategorizationModel& model,
                              const ProjectionPlane& plane,
                              OccupationChecker& occupation) {
  BigInt total = 0;
  for (const auto& [cell, stats] : plane.cells) {
    if (stats.count == 0) continue;
    const BigInt w = cell_weight(model, plane.delta, cell);
    if (w == 0 || !occupation.feasible(plane.delta, cell)) continue;
    total += std::min<BigInt>(BigInt(stats.count), w);
  }
  return total;
}

}  // namespace detail

// Every feasible, weight-positive cell of every size-k plane.
inline std::vector<CoverablePlane> coverable_cells(
    const CategorizationModel& model, std::size_t k,
    const CoverageOptions& options = {}) {
  check_projection_size(model, k);
  OccupationChecker occupation(model);
  std::vector<CoverablePlane> out;
  for_each_projection_index(
      model.num_categories(), k, [&](const ProjectionIndex& delta) {
        detail::check_plane_limit(model, delta, options.enumeration_limit);
        CoverablePlane plane{delta, {}};
        for_each_cell(model, delta, [&](const Cell& cell) {
          BigInt w = cell_weight(model, delta, cell);
          if (w == 0 || !occupation.feasible(delta, cell)) return;
          plane.cells.push_back(CoverableCell{cell, std::move(w)});
        });
        out.push_back(std::move(plane));
      });
  return out;
}

// Coverage of already built tables.
inline CoverageResult coverage_from_tables(const CategorizationModel& model,
                                           const ProjectionTables& tables,
                                           const CoverageOptions& options = {}) {
  check_projection_size(model, tables.k());
  OccupationChecker occupation(model);
  CoverageResult result;
  result.k = tables.k();
  for (const ProjectionPlane& plane : tables.planes()) {
    PlaneCoverage pc{plane.delta, 0, 0};
    pc.numerator = detail::plane_numerator(model, plane, occupation);
    pc.denominator = detail::plane_denominator(model, plane.delta, occupation,
                                               options, &result);
    result.numerator += pc.numerator;
    result.denominator += pc.denominator;
    result.planes.push_back(std::move(pc));
  }
  result.finalize();
  return result;
}

inline CoverageResult k_coverage(const CategorizationModel& model,
                                 const DataSet& data, std::size_t k,
                                 const CoverageOptions& options = {}) {
  return coverage_from_tables(model, build_tables(data, model, k), options);
}

// Projection-coverage denominator alone. Unconstrained planes use closed
// forms, so k = n on a 3^20 space costs nothing.
inline BigInt k_denominator(const CategorizationModel& model, std::size_t k,
                            const CoverageOptions& options = {}) {
  check_projection_size(model, k);
  OccupationChecker occupation(model);
  BigInt total = 0;
  for_each_projection_index(
      model.num_categories(), k, [&](const ProjectionIndex& delta) {
        total += detail::plane_denominator(model, delta, occupation, options,
                                           nullptr);
      });
  return total;
}

// Categorization coverage over full points: distinct points capped at their
// combined weight, over the weighted count of sat(CS).
inline CoverageResult full_coverage(const CategorizationModel& model,
                                    const DataSet& data,
                                    const CoverageOptions& options = {}) {
  CoverageResult result;
  result.k = model.num_categories();
  result.full = true;
  result.denominator = count_weighted_models(model, options.enumeration_limit);
  for (const auto& [point, count] : data.multiplicities()) {
    result.numerator += std::min<BigInt>(BigInt(count), model.point_weight(point));
  }
  result.finalize();
  return result;
}

}  // namespace kproj

#endif  // KPROJ_COVERAGE_HPP_
