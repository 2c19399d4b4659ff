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

// Categorization spaces: categories with finite value domains and integer
// weights, the operator that combines weights across categories, and CNF
// constraints over eq/neq literals. Everything works on dense value indices;
// labels are only kept for I/O.

#ifndef KPROJ_MODEL_HPP_
#define KPROJ_MODEL_HPP_

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "kproj/numeric.hpp"

namespace kproj {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Structural problems in a model (duplicate names, bad weights, ...).
class ModelError : public Error {
 public:
  using Error::Error;
};

// A point that is out of range or violates the constraint set.
class InvalidPointError : public Error {
 public:
  using Error::Error;
};

// Exact enumeration refused because the space exceeds the configured limit.
class LimitExceededError : public Error {
 public:
  using Error::Error;
};

using ValueIndex = std::size_t;
using Weight = std::uint64_t;

// Default bound on the number of full points (or cells) that exact
// enumeration is willing to visit.
inline constexpr std::uint64_t kDefaultEnumerationLimit = 10'000'000;

enum class CombineOp { kSum, kProduct, kMax };

inline std::string_view to_string(CombineOp op) {
  switch (op) {
    case CombineOp::kSum:
      return "sum";
    case CombineOp::kProduct:
      return "product";
    case CombineOp::kMax:
      return "max";
  }
  return "product";
}

inline std::optional<CombineOp> parse_combine_op(std::string_view text) {
  if (text == "sum") return CombineOp::kSum;
  if (text == "product") return CombineOp::kProduct;
  if (text == "max") return CombineOp::kMax;
  return std::nullopt;
}

// Folds per-category weights into one cell weight. Throws on an empty list.
inline BigInt combine_weights(std::span<const Weight> weights, CombineOp op) {
  if (weights.empty()) throw Error("empty weight combination");
  BigInt acc = weights.front();
  for (const Weight w : weights.subspan(1)) {
    switch (op) {
      case CombineOp::kSum:
        acc += w;
        break;
      case CombineOp::kProduct:
        acc *= w;
        break;
      case CombineOp::kMax:
        if (acc < w) acc = w;
        break;
    }
  }
  return acc;
}

inline BigInt combine_weights(std::initializer_list<Weight> weights,
                              CombineOp op) {
  return combine_weights(std::span<const Weight>(weights.begin(), weights.size()),
                         op);
}

// Sum over the box F_1 x ... x F_r of the combined weight of each tuple, where
// F_i lists the weights of the values still allowed in factor i. Closed forms
// per operator; no enumeration of the box.
inline BigInt sum_of_combined_weights(
    std::span<const std::vector<Weight>> factors, CombineOp op) {
  if (factors.empty()) throw Error("empty weight combination");
  for (const auto& f : factors) {
    if (f.empty()) return 0;
  }
  switch (op) {
    case CombineOp::kProduct: {
      BigInt total = 1;
      for (const auto& f : factors) {
        BigInt s = 0;
        for (const Weight w : f) s += w;
        total *= s;
      }
      return total;
    }
    case CombineOp::kSum: {
      // Each value of factor i appears in prod_{l != i} |F_l| tuples.
      BigInt total = 0;
      for (std::size_t i = 0; i < factors.size(); ++i) {
        BigInt s = 0;
        for (const Weight w : factors[i]) s += w;
        for (std::size_t l = 0; l < factors.size(); ++l) {
          if (l != i) s *= factors[l].size();
        }
        total += s;
      }
      return total;
    }
    case CombineOp::kMax: {
      // Tuples whose max is <= t number prod_i |{w in F_i : w <= t}|.
      std::vector<Weight> thresholds;
      for (const auto& f : factors) {
        thresholds.insert(thresholds.end(), f.begin(), f.end());
      }
      std::sort(thresholds.begin(), thresholds.end());
      thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                       thresholds.end());
      BigInt total = 0;
      BigInt below = 0;
      for (const Weight t : thresholds) {
        BigInt at_most = 1;
        for (const auto& f : factors) {
          at_most *= static_cast<std::size_t>(
              std::count_if(f.begin(), f.end(), [t](Weight w) { return w <= t; }));
        }
        total += BigInt(t) * (at_most - below);
        below = at_most;
      }
      return total;
    }
  }
  return 0;
}

struct Category {
  std::string name;
  std::vector<std::string> values;
  std::vector<Weight> weights;

  std::size_t size() const { return values.size(); }

  friend bool operator==(const Category&, const Category&) = default;
};

// One tuple of value indices, one per category.
class CategorizationPoint {
 public:
  CategorizationPoint() = default;
  explicit CategorizationPoint(std::vector<ValueIndex> values)
      : values_(std::move(values)) {}
  CategorizationPoint(std::initializer_list<ValueIndex> values)
      : values_(values) {}

  std::size_t size() const { return values_.size(); }
  ValueIndex operator[](std::size_t i) const { return values_[i]; }
  ValueIndex& operator[](std::size_t i) { return values_[i]; }
  const std::vector<ValueIndex>& values() const { return values_; }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  friend auto operator<=>(const CategorizationPoint&,
                          const CategorizationPoint&) = default;
  friend bool operator==(const CategorizationPoint&,
                         const CategorizationPoint&) = default;

 private:
  std::vector<ValueIndex> values_;
};

enum class LiteralOp { kEq, kNeq };

struct Literal {
  std::size_t category = 0;
  LiteralOp op = LiteralOp::kEq;
  ValueIndex value = 0;

  bool holds_for(ValueIndex v) const {
    return op == LiteralOp::kEq ? v == value : v != value;
  }
  bool holds(const CategorizationPoint& p) const {
    return holds_for(p[category]);
  }

  friend bool operator==(const Literal&, const Literal&) = default;
};

// Non-empty disjunction of literals.
using Clause = std::vector<Literal>;

// Conjunction of clauses; empty means unconstrained.
struct ConstraintSet {
  std::vector<Clause> clauses;

  bool empty() const { return clauses.empty(); }
  std::size_t size() const { return clauses.size(); }

  ConstraintSet conjoined_with(const ConstraintSet& other) const {
    ConstraintSet out = *this;
    out.clauses.insert(out.clauses.end(), other.clauses.begin(),
                       other.clauses.end());
    return out;
  }

  friend bool operator==(const ConstraintSet&, const ConstraintSet&) = default;
};

inline bool clause_satisfied(const Clause& clause,
                             const CategorizationPoint& p) {
  for (const Literal& lit : clause) {
    if (lit.holds(p)) return true;
  }
  return false;
}

inline bool point_satisfies(const ConstraintSet& cs,
                            const CategorizationPoint& p) {
  for (const Clause& clause : cs.clauses) {
    if (!clause_satisfied(clause, p)) return false;
  }
  return true;
}

class CategorizationModel {
 public:
  CategorizationModel(std::vector<Category> categories,
                      CombineOp combine_op = CombineOp::kProduct,
                      ConstraintSet constraints = {})
      : categories_(std::move(categories)),
        combine_op_(combine_op),
        constraints_(std::move(constraints)) {
    validate();
  }

  std::size_t num_categories() const { return categories_.size(); }
  const std::vector<Category>& categories() const { return categories_; }
  const Category& category(std::size_t i) const { return categories_.at(i); }
  std::size_t domain_size(std::size_t i) const { return categories_[i].size(); }
  Weight weight(std::size_t i, ValueIndex j) const {
    return categories_[i].weights[j];
  }
  CombineOp combine_op() const { return combine_op_; }
  const ConstraintSet& constraints() const { return constraints_; }

  // Number of full points, i.e. prod(m_i).
  BigInt space_size() const {
    BigInt size = 1;
    for (const Category& c : categories_) size *= c.size();
    return size;
  }

  std::optional<std::size_t> find_category(std::string_view name) const {
    for (std::size_t i = 0; i < categories_.size(); ++i) {
      if (categories_[i].name == name) return i;
    }
    return std::nullopt;
  }

  std::optional<ValueIndex> find_value(std::size_t category,
                                       std::string_view label) const {
    const auto& values = categories_.at(category).values;
    for (ValueIndex j = 0; j < values.size(); ++j) {
      if (values[j] == label) return j;
    }
    return std::nullopt;
  }

  CategorizationModel with_combine_op(CombineOp op) const {
    return CategorizationModel(categories_, op, constraints_);
  }

  CategorizationModel with_constraints(ConstraintSet cs) const {
    return CategorizationModel(categories_, combine_op_, std::move(cs));
  }

  // Combined weight of a full point.
  BigInt point_weight(const CategorizationPoint& p) const {
    std::vector<Weight> ws(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) ws[i] = weight(i, p[i]);
    return combine_weights(ws, combine_op_);
  }

  friend bool operator==(const CategorizationModel&,
                         const CategorizationModel&) = default;

 private:
  void validate() const {
    if (categories_.empty()) throw ModelError("model has no categories");
    std::unordered_set<std::string> names;
    for (const Category& c : categories_) {
      if (c.name.empty()) throw ModelError("category with empty name");
      if (!names.insert(c.name).second) {
        throw ModelError("duplicate category '" + c.name + "'");
      }
      if (c.values.empty()) {
        throw ModelError("category '" + c.name + "' has no values");
      }
      std::unordered_set<std::string> labels;
      for (const std::string& v : c.values) {
        if (!labels.insert(v).second) {
          throw ModelError("duplicate value '" + v + "' in category '" +
                           c.name + "'");
        }
      }
      if (c.weights.size() != c.values.size()) {
        throw ModelError("category '" + c.name + "' has " +
                         std::to_string(c.values.size()) + " values but " +
                         std::to_string(c.weights.size()) + " weights");
      }
    }
    for (std::size_t ci = 0; ci < constraints_.clauses.size(); ++ci) {
      const Clause& clause = constraints_.clauses[ci];
      if (clause.empty()) {
        throw ModelError("clause " + std::to_string(ci + 1) + " is empty");
      }
      for (const Literal& lit : clause) {
        if (lit.category >= categories_.size()) {
          throw ModelError("clause " + std::to_string(ci + 1) +
                           " references category index " +
                           std::to_string(lit.category) + " out of range");
        }
        if (lit.value >= categories_[lit.category].size()) {
          throw ModelError("clause " + std::to_string(ci + 1) +
                           " references value index " +
                           std::to_string(lit.value) + " out of range for '" +
                           categories_[lit.category].name + "'");
        }
      }
    }
  }

  std::vector<Category> categories_;
  CombineOp combine_op_;
  ConstraintSet constraints_;
};

// Convenience: category with every weight set to `weight`.
inline Category make_category(std::string name, std::vector<std::string> values,
                              Weight weight = 1) {
  std::vector<Weight> weights(values.size(), weight);
  return Category{std::move(name), std::move(values), std::move(weights)};
}

inline std::string format_literal(const CategorizationModel& model,
                                  const Literal& lit) {
  const Category& c = model.category(lit.category);
  return c.name + (lit.op == LiteralOp::kEq ? " = " : " != ") +
         c.values.at(lit.value);
}

inline std::string format_clause(const CategorizationModel& model,
                                 const Clause& clause) {
  std::string out;
  for (std::size_t i = 0; i < clause.size(); ++i) {
    if (i > 0) out += " | ";
    out += format_literal(model, clause[i]);
  }
  return out;
}

inline std::string format_point(const CategorizationModel& model,
                                const CategorizationPoint& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i > 0) out += ", ";
    out += model.category(i).values.at(p[i]);
  }
  return out + ")";
}

struct Violation {
  enum class Kind { kWrongArity, kOutOfRange, kClauseViolated };
  Kind kind;
  // Offending category for kOutOfRange, offending clause for kClauseViolated.
  std::size_t index = 0;
  std::string message;
};

// First structural or constraint problem with `p`, or nullopt when valid.
inline std::optional<Violation> validate_point(const CategorizationModel& model,
                                               const CategorizationPoint& p) {
  if (p.size() != model.num_categories()) {
    return Violation{Violation::Kind::kWrongArity, p.size(),
                     "point has " + std::to_string(p.size()) +
                         " values, model has " +
                         std::to_string(model.num_categories()) +
                         " categories"};
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] >= model.domain_size(i)) {
      return Violation{Violation::Kind::kOutOfRange, i,
                       "value index " + std::to_string(p[i]) +
                           " out of range for category '" +
                           model.category(i).name + "' (size " +
                           std::to_string(model.domain_size(i)) + ")"};
    }
  }
  const auto& clauses = model.constraints().clauses;
  for (std::size_t ci = 0; ci < clauses.size(); ++ci) {
    if (!clause_satisfied(clauses[ci], p)) {
      return Violation{Violation::Kind::kClauseViolated, ci,
                       "violates clause " + std::to_string(ci + 1) + " (" +
                           format_clause(model, clauses[ci]) + ")"};
    }
  }
  return std::nullopt;
}

// Multiset of categorization points. Rows keep insertion order so reports can
// say which row first covered a cell; every row satisfies the model it was
// added under.
class DataSet {
 public:
  void add(const CategorizationModel& model, const CategorizationPoint& p,
           std::size_t count = 1) {
    if (auto v = validate_point(model, p)) throw InvalidPointError(v->message);
    for (std::size_t i = 0; i < count; ++i) rows_.push_back(p);
    if (count > 0) counts_[p] += count;
  }

  void append(const CategorizationModel& model, const DataSet& other) {
    for (const auto& p : other.rows()) add(model, p);
  }

  const std::vector<CategorizationPoint>& rows() const { return rows_; }
  const std::map<CategorizationPoint, std::size_t>& multiplicities() const {
    return counts_;
  }
  std::size_t multiplicity(const CategorizationPoint& p) const {
    auto it = counts_.find(p);
    return it == counts_.end() ? 0 : it->second;
  }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

 private:
  std::vector<CategorizationPoint> rows_;
  std::map<CategorizationPoint, std::size_t> counts_;
};

}  // namespace kproj

#endif  // KPROJ_MODEL_HPP_
