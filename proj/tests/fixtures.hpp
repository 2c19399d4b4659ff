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

// Shared models and data sets for the test suites, plus a seeded random model
// generator for property tests.

#ifndef KPROJ_TESTS_FIXTURES_HPP_
#define KPROJ_TESTS_FIXTURES_HPP_

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "kproj/kproj.hpp"

namespace kproj::testing {

inline std::vector<std::string> labels(std::size_t m) {
  std::vector<std::string> out;
  for (std::size_t j = 0; j < m; ++j) out.push_back(std::to_string(j));
  return out;
}

// Three categories over {0,1,2}, the floor of each coordinate of a point in
// [0,3)^3.
inline CategorizationModel cube_model(Weight w = 1, ConstraintSet cs = {}) {
  return CategorizationModel({make_category("C1", labels(3), w),
                              make_category("C2", labels(3), w),
                              make_category("C3", labels(3), w)},
                             CombineOp::kProduct, std::move(cs));
}

// C1 != 0 or C2 = 2.
inline ConstraintSet cube_clause() {
  return ConstraintSet{{{Literal{0, LiteralOp::kNeq, 0},
                         Literal{1, LiteralOp::kEq, 2}}}};
}

// W1(2) = W3(2) = 3, every other weight 1.
inline CategorizationModel cube_weighted_model() {
  Category c1 = make_category("C1", labels(3));
  Category c2 = make_category("C2", labels(3));
  Category c3 = make_category("C3", labels(3));
  c1.weights[2] = 3;
  c3.weights[2] = 3;
  return CategorizationModel({c1, c2, c3});
}

// d1..d6: d2, d5, d6 fall in (2,0,2); d1, d4 in (1,1,1); d3 in (0,2,0).
inline std::vector<CategorizationPoint> cube_points() {
  return {{1, 1, 1}, {2, 0, 2}, {0, 2, 0}, {1, 1, 1}, {2, 0, 2}, {2, 0, 2}};
}

inline DataSet make_data(const CategorizationModel& model,
                         const std::vector<CategorizationPoint>& points) {
  DataSet data;
  for (const auto& p : points) data.add(model, p);
  return data;
}

// Four binary categories.
inline CategorizationModel binary_model(std::size_t n = 4, Weight w = 1) {
  std::vector<Category> cats;
  for (std::size_t i = 0; i < n; ++i) {
    cats.push_back(make_category("C" + std::to_string(i + 1), labels(2), w));
  }
  return CategorizationModel(std::move(cats));
}

inline std::vector<CategorizationPoint> binary_points() {
  return {{0, 0, 1, 1}, {1, 0, 0, 0}, {1, 0, 0, 1}};
}

// n categories with m values each, unit weights, no constraints.
inline CategorizationModel uniform_model(std::size_t n, std::size_t m,
                                         Weight w = 1) {
  std::vector<Category> cats;
  for (std::size_t i = 0; i < n; ++i) {
    cats.push_back(make_category("C" + std::to_string(i + 1), labels(m), w));
  }
  return CategorizationModel(std::move(cats));
}

// Driving scenario: weather x #lanes x current lane x curve x forward car x
// oncoming car, with "one lane excludes driving on the second lane".
inline CategorizationModel driving_model() {
  std::vector<Category> cats = {
      make_category("weather", {"Sunny", "Cloudy", "Rainy"}),
      make_category("lanes", {"1", "2"}),
      make_category("current_lane", {"1st", "2nd"}),
      make_category("lane_curve", {"Straight", "Curvy"}),
      make_category("forward_car", {"No", "Yes"}),
      make_category("oncoming_car", {"No", "Yes"}),
  };
  ConstraintSet cs{{{Literal{1, LiteralOp::kNeq, 0},
                     Literal{2, LiteralOp::kNeq, 1}}}};
  return CategorizationModel(std::move(cats), CombineOp::kProduct, cs);
}

// Five recorded scenarios used as a starting data set.
inline std::vector<CategorizationPoint> driving_seed() {
  return {
      {0, 1, 0, 0, 1, 0},  // Sunny, 2 lanes, 1st, Straight, FC, no OC
      {1, 1, 0, 1, 1, 1},  // Cloudy, 2 lanes, 1st, Curvy, FC, OC
      {2, 0, 0, 1, 0, 1},  // Rainy, 1 lane, 1st, Curvy, no FC, OC
      {2, 1, 0, 1, 1, 1},  // Rainy, 2 lanes, 1st, Curvy, FC, OC
      {2, 0, 0, 1, 0, 0},  // Rainy, 1 lane, 1st, Curvy, no FC, no OC
  };
}

struct RandomModelSpec {
  std::size_t max_categories = 5;
  std::size_t max_values = 3;
  Weight max_weight = 2;
  std::size_t max_clauses = 3;
  std::size_t max_literals = 3;
  bool allow_zero_weight = true;
};

inline CategorizationModel random_model(std::mt19937& rng,
                                        const RandomModelSpec& spec = {}) {
  auto pick = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  const std::size_t n = pick(1, spec.max_categories);
  std::vector<Category> cats;
  for (std::size_t i = 0; i < n; ++i) {
    Category c = make_category("C" + std::to_string(i + 1),
                               labels(pick(1, spec.max_values)));
    for (Weight& w : c.weights) {
      w = pick(spec.allow_zero_weight ? 0 : 1, spec.max_weight);
    }
    cats.push_back(std::move(c));
  }
  ConstraintSet cs;
  const std::size_t clauses = pick(0, spec.max_clauses);
  for (std::size_t ci = 0; ci < clauses; ++ci) {
    Clause clause;
    const std::size_t lits = pick(1, spec.max_literals);
    for (std::size_t li = 0; li < lits; ++li) {
      const std::size_t cat = pick(0, n - 1);
      clause.push_back(Literal{cat, pick(0, 1) ? LiteralOp::kEq : LiteralOp::kNeq,
                               pick(0, cats[cat].size() - 1)});
    }
    cs.clauses.push_back(std::move(clause));
  }
  const auto op = static_cast<CombineOp>(pick(0, 2));
  return CategorizationModel(std::move(cats), op, std::move(cs));
}

// Up to `max_points` random rows drawn from the satisfying points.
inline DataSet random_data(std::mt19937& rng, const CategorizationModel& model,
                           std::size_t max_points) {
  const auto sat = enumerate_satisfying(model);
  DataSet data;
  if (sat.empty()) return data;
  const std::size_t count =
      std::uniform_int_distribution<std::size_t>(0, max_points)(rng);
  std::uniform_int_distribution<std::size_t> which(0, sat.size() - 1);
  for (std::size_t i = 0; i < count; ++i) data.add(model, sat[which(rng)]);
  return data;
}

}  // namespace kproj::testing

#endif  // KPROJ_TESTS_FIXTURES_HPP_
