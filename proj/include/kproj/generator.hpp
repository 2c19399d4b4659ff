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

// Test-point generation for k-projection coverage.
//
//  * minimum_one_projection: the round-based completion for k = 1 on
//    unconstrained models. It returns a minimum number of points.
//  * encode_next_point / next_best_point: the point that occupies the most
//    improvable cells, found as a 0-1 program over one-hot value variables
//    and one occupation variable per improvable cell.
//  * achieve_full_coverage: greedy loop over next_best_point. Finding the
//    single best point is already NP-hard for k >= 3, so the loop makes no
//    global minimality claim.

#ifndef KPROJ_GENERATOR_HPP_
#define KPROJ_GENERATOR_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kproj/constraints.hpp"
#include "kproj/coverage.hpp"
#include "kproj/ilp.hpp"
#include "kproj/model.hpp"
#include "kproj/numeric.hpp"

namespace kproj {

struct ScoredPoint {
  CategorizationPoint point;
  std::int64_t objective = 0;  // improvable cells newly occupied
};

// Round-based completion of 1-projection coverage. Each round takes, for
// every category, the first value still below its weight and bumps its
// count; categories with nothing missing get value 0. Stops after a round
// that picks nothing, so the result has exactly
// max_i sum_j max(0, W_i(j) - count_i(j)) points.
inline std::vector<CategorizationPoint> minimum_one_projection(
    const ProjectionTables& tables, const CategorizationModel& model) {
  if (!model.constraints().empty()) {
    throw Error("minimum 1-projection completion requires an unconstrained model");
  }
  if (tables.k() != 1) throw Error("1-projection tables required");
  const std::size_t n = model.num_categories();
  std::vector<std::vector<std::size_t>> counts(n);
  for (std::size_t i = 0; i < n; ++i) {
    const ProjectionPlane& plane = tables.plane(ProjectionIndex{i});
    counts[i].resize(model.domain_size(i));
    for (ValueIndex j = 0; j < counts[i].size(); ++j) {
      counts[i][j] = plane.count(Cell{j});
    }
  }
  std::vector<CategorizationPoint> out;
  while (true) {
    std::vector<std::optional<ValueIndex>> picked(n);
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
      for (ValueIndex j = 0; j < counts[i].size(); ++j) {
        if (counts[i][j] < model.weight(i, j)) {
          picked[i] = j;
          ++counts[i][j];
          any = true;
          break;
        }
      }
    }
    if (!any) return out;
    std::vector<ValueIndex> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = picked[i].value_or(0);
    out.emplace_back(std::move(values));
  }
}

// The 0-1 program for "which single point occupies the most improvable
// cells", together with the variable layout needed to decode a solution.
struct NextPointEncoding {
  struct OccupationVariable {
    ProjectionIndex delta;
    Cell cell;
    VarIndex var;
  };

  IlpProblem problem;
  std::vector<std::vector<VarIndex>> value_vars;  // [category][value]
  std::vector<OccupationVariable> occupation_vars;

  CategorizationPoint decode(const IlpSolution& solution) const {
    std::vector<ValueIndex> values(value_vars.size(), 0);
    for (std::size_t i = 0; i < value_vars.size(); ++i) {
      for (ValueIndex j = 0; j < value_vars[i].size(); ++j) {
        if (solution.assignment.at(value_vars[i][j])) values[i] = j;
      }
    }
    return CategorizationPoint(std::move(values));
  }
};

inline std::string value_var_name(const CategorizationModel& model,
                                  std::size_t category, ValueIndex value) {
  const Category& c = model.category(category);
  return "var[" + c.name + "=" + c.values.at(value) + "]";
}

inline std::string occupation_var_name(const CategorizationModel& model,
                                       const ProjectionIndex& delta,
                                       const Cell& cell) {
  std::string out = "occ[";
  for (std::size_t i = 0; i < delta.size(); ++i) {
    if (i > 0) out += ",";
    const Category& c = model.category(delta[i]);
    out += c.name + "=" + c.values.at(cell[i]);
  }
  return out + "]";
}

// Builds the program from precomputed coverable cells. Only cells that pass
// the occupation check get an occ variable, so every occ variable can be
// set by some constraint-satisfying point. Returns nullopt when nothing is
// left to improve.
inline std::optional<NextPointEncoding> encode_next_point(
    const ProjectionTables& tables, const CategorizationModel& model,
    const std::vector<CoverablePlane>& coverable) {
  NextPointEncoding enc;
  const std::size_t n = model.num_categories();
  enc.value_vars.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<LinearTerm> one_hot;
    for (ValueIndex j = 0; j < model.domain_size(i); ++j) {
      const VarIndex v = enc.problem.add_variable(value_var_name(model, i, j));
      enc.value_vars[i].push_back(v);
      one_hot.push_back(LinearTerm{v, 1});
    }
    enc.problem.add_constraint(one_hot, 1, 1,
                               "one_value[" + model.category(i).name + "]");
  }
  for (const CoverablePlane& cp : coverable) {
    const ProjectionPlane& plane = tables.plane(cp.delta);
    const auto k = static_cast<std::int64_t>(cp.delta.size());
    for (const CoverableCell& cc : cp.cells) {
      if (BigInt(plane.count(cc.cell)) >= cc.weight) continue;
      const VarIndex occ = enc.problem.add_variable(
          occupation_var_name(model, cp.delta, cc.cell), 1);
      std::vector<LinearTerm> link;
      for (std::size_t i = 0; i < cp.delta.size(); ++i) {
        link.push_back(LinearTerm{enc.value_vars[cp.delta[i]][cc.cell[i]], 1});
      }
      link.push_back(LinearTerm{occ, -k});
      // occ = 1 iff every value in the cell is chosen.
      enc.problem.add_constraint(link, 0, k - 1,
                                 "link" + enc.problem.variable_name(occ).substr(3));
      enc.occupation_vars.push_back({cp.delta, cc.cell, occ});
    }
  }
  if (enc.occupation_vars.empty()) return std::nullopt;
  const auto& clauses = model.constraints().clauses;
  for (std::size_t ci = 0; ci < clauses.size(); ++ci) {
    // sum_eq var + sum_neq (1 - var) >= 1
    std::vector<LinearTerm> terms;
    std::int64_t negated = 0;
    for (const Literal& lit : clauses[ci]) {
      const VarIndex v = enc.value_vars[lit.category][lit.value];
      if (lit.op == LiteralOp::kEq) {
        terms.push_back(LinearTerm{v, 1});
      } else {
        terms.push_back(LinearTerm{v, -1});
        ++negated;
      }
    }
    enc.problem.add_constraint(terms, 1 - negated, kIlpInfinity,
                               "clause[" + std::to_string(ci + 1) + "]");
  }
  return enc;
}

inline std::optional<NextPointEncoding> encode_next_point(
    const ProjectionTables& tables, const CategorizationModel& model,
    const CoverageOptions& options = {}) {
  return encode_next_point(tables, model,
                           coverable_cells(model, tables.k(), options));
}

inline std::optional<ScoredPoint> next_best_point(
    const ProjectionTables& tables, const CategorizationModel& model,
    const std::vector<CoverablePlane>& coverable) {
  auto enc = encode_next_point(tables, model, coverable);
  if (!enc) return std::nullopt;
  const IlpSolution sol = solve(enc->problem);
  if (sol.status != IlpStatus::kOptimal) {
    // Only reachable when the constraint set itself is unsatisfiable, in
    // which case there are no coverable cells either.
    throw Error("next-point program infeasible");
  }
  return ScoredPoint{enc->decode(sol), sol.objective_value};
}

inline std::optional<ScoredPoint> next_best_point(
    const ProjectionTables& tables, const CategorizationModel& model,
    const CoverageOptions& options = {}) {
  return next_best_point(tables, model,
                         coverable_cells(model, tables.k(), options));
}

// Exhaustive oracle: scores every satisfying point against the data and
// returns the lexicographically first maximizer (objective 0 when coverage
// is already full). Nullopt when the constraint set has no models.
inline std::optional<ScoredPoint> brute_force_next_point(
    const CategorizationModel& model, const DataSet& data, std::size_t k,
    std::uint64_t limit = 100'000) {
  const ProjectionTables tables = build_tables(data, model, k);
  std::optional<ScoredPoint> best;
  for_each_satisfying(
      model,
      [&](const CategorizationPoint& p) {
        std::int64_t score = 0;
        for (const ProjectionPlane& plane : tables.planes()) {
          const Cell cell = project(p, plane.delta);
          if (BigInt(plane.count(cell)) < cell_weight(model, plane.delta, cell)) {
            ++score;
          }
        }
        if (!best || score > best->objective) best = ScoredPoint{p, score};
      },
      limit);
  return best;
}

enum class TerminationReason { kFullCoverage, kBudgetExhausted };

inline std::string_view to_string(TerminationReason reason) {
  return reason == TerminationReason::kFullCoverage ? "full-coverage"
                                                    : "budget-exhausted";
}

struct TraceStep {
  CategorizationPoint point;
  std::int64_t objective = 0;  // numerator gain of this point
  BigInt numerator = 0;        // after adding the point
  Rational ratio = 0;
};

struct GenerationTrace {
  std::size_t k = 0;
  BigInt initial_numerator = 0;
  BigInt denominator = 0;
  std::vector<TraceStep> steps;
  TerminationReason reason = TerminationReason::kFullCoverage;

  std::vector<CategorizationPoint> points() const {
    std::vector<CategorizationPoint> out;
    for (const TraceStep& s : steps) out.push_back(s.point);
    return out;
  }
  Rational initial_ratio() const {
    return denominator == 0 ? Rational(1)
                            : Rational(initial_numerator, denominator);
  }
  Rational final_ratio() const {
    return steps.empty() ? initial_ratio() : steps.back().ratio;
  }
};

struct GenerationOptions {
  std::optional<std::size_t> budget;  // nullopt: run until full coverage
  // Use minimum_one_projection when k = 1 and the model is unconstrained.
  bool one_projection_fast_path = false;
  CoverageOptions coverage;
};

namespace detail {

// Numerator increase from adding `p` to `tables`.
inline std::int64_t numerator_gain(const CategorizationModel& model,
                                   const ProjectionTables& tables,
                                   const CategorizationPoint& p) {
  std::int64_t gain = 0;
  for (const ProjectionPlane& plane : tables.planes()) {
    const Cell cell = project(p, plane.delta);
    if (BigInt(plane.count(cell)) < cell_weight(model, plane.delta, cell)) {
      ++gain;
    }
  }
  return gain;
}

}  // namespace detail

inline GenerationTrace achieve_full_coverage(const CategorizationModel& model,
                                             const DataSet& data, std::size_t k,
                                             const GenerationOptions& options =
                                                 {}) {
  ProjectionTables tables = build_tables(data, model, k);
  const CoverageResult initial =
      coverage_from_tables(model, tables, options.coverage);
  GenerationTrace trace;
  trace.k = k;
  trace.initial_numerator = initial.numerator;
  trace.denominator = initial.denominator;
  BigInt numerator = initial.numerator;

  const auto record = [&](const CategorizationPoint& p, std::int64_t objective) {
    tables.add(p);
    numerator += objective;
    TraceStep step{p, objective, numerator,
                   trace.denominator == 0
                       ? Rational(1)
                       : Rational(numerator, trace.denominator)};
    trace.steps.push_back(std::move(step));
  };
  const auto budget_left = [&] {
    return !options.budget || trace.steps.size() < *options.budget;
  };

  if (options.one_projection_fast_path && k == 1 &&
      model.constraints().empty()) {
    for (const CategorizationPoint& p : minimum_one_projection(tables, model)) {
      if (!budget_left()) break;
      record(p, detail::numerator_gain(model, tables, p));
    }
  } else {
    const std::vector<CoverablePlane> coverable =
        coverable_cells(model, k, options.coverage);
    while (numerator != trace.denominator && budget_left()) {
      auto next = next_best_point(tables, model, coverable);
      if (!next || next->objective < 1) {
        throw Error("no improving point although coverage is incomplete");
      }
      record(next->point, next->objective);
    }
  }
  trace.reason = numerator == trace.denominator
                     ? TerminationReason::kFullCoverage
                     : TerminationReason::kBudgetExhausted;
  return trace;
}

}  // namespace kproj

#endif  // KPROJ_GENERATOR_HPP_
