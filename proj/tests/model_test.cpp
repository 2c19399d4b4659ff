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


#include <gtest/gtest.h>

#include <vector>

#include "fixtures.hpp"
#include "kproj/kproj.hpp"
#include "oracle.hpp"

namespace kproj {
namespace {

using testing::cube_model;
using testing::labels;

TEST(CombineWeights, Operators) {
  EXPECT_EQ(combine_weights({2, 3, 4}, CombineOp::kSum), 9);
  EXPECT_EQ(combine_weights({2, 3, 4}, CombineOp::kProduct), 24);
  EXPECT_EQ(combine_weights({2, 3, 4}, CombineOp::kMax), 4);
  EXPECT_EQ(combine_weights({7}, CombineOp::kSum), 7);
  EXPECT_EQ(combine_weights({0, 5}, CombineOp::kProduct), 0);
}

TEST(CombineWeights, EmptyThrows) {
  std::vector<Weight> none;
  EXPECT_THROW(combine_weights(none, CombineOp::kSum), Error);
}

TEST(CombineWeights, ProductDoesNotOverflow) {
  std::vector<Weight> ws(4, Weight{1} << 40);
  BigInt expected = 1;
  for (int i = 0; i < 4; ++i) expected *= BigInt(Weight{1} << 40);
  EXPECT_EQ(combine_weights(ws, CombineOp::kProduct), expected);
}

TEST(CombineWeights, ParseAndPrint) {
  for (CombineOp op : {CombineOp::kSum, CombineOp::kProduct, CombineOp::kMax}) {
    EXPECT_EQ(parse_combine_op(to_string(op)), op);
  }
  EXPECT_FALSE(parse_combine_op("min").has_value());
}

// Closed forms against brute force over every box in a small family.
TEST(SumOfCombinedWeights, MatchesEnumeration) {
  const std::vector<std::vector<std::vector<Weight>>> boxes = {
      {{1, 2}},
      {{1, 2}, {3}},
      {{0, 2, 1}, {1, 1}, {2, 0}},
      {{5}, {}, {1}},
      {{2, 2}, {2, 2}},
      {{0}, {0, 3}, {1, 2, 3}},
  };
  for (CombineOp op : {CombineOp::kSum, CombineOp::kProduct, CombineOp::kMax}) {
    for (const auto& box : boxes) {
      std::vector<std::size_t> sizes;
      for (const auto& f : box) sizes.push_back(f.size());
      std::uint64_t expected = 0;
      oracle::odometer(sizes, [&](const oracle::Values& t) {
        std::vector<std::uint64_t> ws;
        for (std::size_t i = 0; i < t.size(); ++i) ws.push_back(box[i][t[i]]);
        expected += oracle::combine(ws, op);
      });
      EXPECT_EQ(sum_of_combined_weights(box, op), expected)
          << to_string(op) << " box of " << box.size();
    }
  }
}

TEST(CategorizationModel, Accessors) {
  const auto m = cube_model(2);
  EXPECT_EQ(m.num_categories(), 3u);
  EXPECT_EQ(m.domain_size(1), 3u);
  EXPECT_EQ(m.weight(2, 1), 2u);
  EXPECT_EQ(m.space_size(), 27);
  EXPECT_EQ(m.find_category("C2"), 1u);
  EXPECT_FALSE(m.find_category("C9").has_value());
  EXPECT_EQ(m.find_value(0, "2"), 2u);
  EXPECT_FALSE(m.find_value(0, "x").has_value());
  EXPECT_EQ(m.point_weight({0, 1, 2}), 8);
  EXPECT_EQ(m.with_combine_op(CombineOp::kSum).point_weight({0, 1, 2}), 6);
  EXPECT_EQ(m.combine_op(), CombineOp::kProduct);
}

TEST(CategorizationModel, RejectsMalformedInput) {
  EXPECT_THROW(CategorizationModel({}), ModelError);
  EXPECT_THROW(CategorizationModel({make_category("", {"a"})}), ModelError);
  EXPECT_THROW(CategorizationModel({make_category("A", {})}), ModelError);
  EXPECT_THROW(CategorizationModel({make_category("A", {"x", "x"})}),
               ModelError);
  EXPECT_THROW(CategorizationModel(
                   {make_category("A", {"x"}), make_category("A", {"y"})}),
               ModelError);
  EXPECT_THROW(CategorizationModel({Category{"A", {"x", "y"}, {1}}}),
               ModelError);
  const std::vector<Category> cats = {make_category("A", labels(2))};
  EXPECT_THROW(CategorizationModel(cats, CombineOp::kProduct,
                                   ConstraintSet{{Clause{}}}),
               ModelError);
  EXPECT_THROW(CategorizationModel(
                   cats, CombineOp::kProduct,
                   ConstraintSet{{{Literal{1, LiteralOp::kEq, 0}}}}),
               ModelError);
  EXPECT_THROW(CategorizationModel(
                   cats, CombineOp::kProduct,
                   ConstraintSet{{{Literal{0, LiteralOp::kEq, 2}}}}),
               ModelError);
}

TEST(Literal, Semantics) {
  const Literal eq{1, LiteralOp::kEq, 2};
  const Literal ne{1, LiteralOp::kNeq, 2};
  EXPECT_TRUE(eq.holds({0, 2, 0}));
  EXPECT_FALSE(eq.holds({0, 1, 0}));
  EXPECT_FALSE(ne.holds({0, 2, 0}));
  EXPECT_TRUE(ne.holds({0, 1, 0}));
}

TEST(ConstraintSet, ClauseAndConjunction) {
  const ConstraintSet cs = testing::cube_clause();
  EXPECT_TRUE(point_satisfies(cs, {1, 0, 0}));
  EXPECT_TRUE(point_satisfies(cs, {0, 2, 0}));
  EXPECT_FALSE(point_satisfies(cs, {0, 1, 0}));
  EXPECT_TRUE(point_satisfies(ConstraintSet{}, {0, 0, 0}));
  const ConstraintSet both =
      cs.conjoined_with(ConstraintSet{{{Literal{2, LiteralOp::kEq, 1}}}});
  EXPECT_EQ(both.size(), 2u);
  EXPECT_FALSE(point_satisfies(both, {1, 0, 0}));
  EXPECT_TRUE(point_satisfies(both, {1, 0, 1}));
}

TEST(ValidatePoint, ReportsFirstProblem) {
  const auto m = cube_model(1, testing::cube_clause());
  EXPECT_FALSE(validate_point(m, {1, 1, 1}).has_value());
  auto arity = validate_point(m, {1, 1});
  ASSERT_TRUE(arity);
  EXPECT_EQ(arity->kind, Violation::Kind::kWrongArity);
  auto range = validate_point(m, {0, 3, 0});
  ASSERT_TRUE(range);
  EXPECT_EQ(range->kind, Violation::Kind::kOutOfRange);
  EXPECT_EQ(range->index, 1u);
  auto clause = validate_point(m, {0, 0, 0});
  ASSERT_TRUE(clause);
  EXPECT_EQ(clause->kind, Violation::Kind::kClauseViolated);
  EXPECT_EQ(clause->message, "violates clause 1 (C1 != 0 | C2 = 2)");
}

TEST(Format, PointAndClause) {
  const auto m = testing::driving_model();
  EXPECT_EQ(format_point(m, {2, 0, 0, 1, 0, 1}),
            "(Rainy, 1, 1st, Curvy, No, Yes)");
  EXPECT_EQ(format_clause(m, m.constraints().clauses[0]),
            "lanes != 1 | current_lane != 2nd");
}

TEST(DataSet, MultisetAndOrder) {
  const auto m = cube_model();
  const auto data = testing::make_data(m, testing::cube_points());
  EXPECT_EQ(data.size(), 6u);
  EXPECT_EQ(data.multiplicity({2, 0, 2}), 3u);
  EXPECT_EQ(data.multiplicity({1, 1, 1}), 2u);
  EXPECT_EQ(data.multiplicity({0, 0, 0}), 0u);
  EXPECT_EQ(data.multiplicities().size(), 3u);
  EXPECT_EQ(data.rows().front(), (CategorizationPoint{1, 1, 1}));

  DataSet more;
  more.add(m, {0, 0, 0}, 2);
  more.append(m, data);
  EXPECT_EQ(more.size(), 8u);
  EXPECT_EQ(more.rows()[2], (CategorizationPoint{1, 1, 1}));
}

TEST(DataSet, RejectsInvalidPoints) {
  const auto m = cube_model(1, testing::cube_clause());
  DataSet data;
  EXPECT_THROW(data.add(m, {0, 0, 0}), InvalidPointError);
  EXPECT_THROW(data.add(m, {5, 0, 0}), InvalidPointError);
  EXPECT_TRUE(data.empty());
}

TEST(Numeric, Formatting) {
  EXPECT_EQ(to_string(Rational(15, 18)), "5/6");
  EXPECT_EQ(to_string(Rational(4, 2)), "2");
  EXPECT_EQ(to_decimal_string(Rational(1, 6)), "0.166667");
  EXPECT_EQ(to_decimal_string(Rational(1, 1)), "1.000000");
  EXPECT_EQ(to_decimal_string(Rational(2, 3), 2), "0.67");
  EXPECT_EQ(binomial(20, 3), 1140);
  EXPECT_EQ(binomial(3, 5), 0);
}

}  // namespace
}  // namespace kproj
