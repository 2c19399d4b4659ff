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

// Exact 0-1 integer programming (maximization) by depth-first branch and
// bound. There is no LP relaxation: nodes are pruned by interval propagation
// on two-sided linear constraints and by the optimistic objective bound
// "current value + sum of positive coefficients still free".
//
// Search order is fixed: branch on the lowest-index free variable, trying 1
// first when its objective coefficient is positive and 0 first otherwise. An
// incumbent is replaced only by a strictly better solution, so the returned
// assignment is the first optimum in that order.

#ifndef KPROJ_ILP_HPP_
#define KPROJ_ILP_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kproj/model.hpp"

namespace kproj {

using VarIndex = std::size_t;

// Stand-in for an absent bound on one side of a constraint.
inline constexpr std::int64_t kIlpInfinity =
    std::numeric_limits<std::int64_t>::max() / 4;

struct LinearTerm {
  VarIndex var;
  std::int64_t coefficient;

  friend bool operator==(const LinearTerm&, const LinearTerm&) = default;
};

// lower <= sum(terms) <= upper
struct LinearConstraint {
  std::string name;
  std::vector<LinearTerm> terms;
  std::int64_t lower = -kIlpInfinity;
  std::int64_t upper = kIlpInfinity;
};

class IlpProblem {
 public:
  VarIndex add_variable(std::string name, std::int64_t objective = 0) {
    names_.push_back(std::move(name));
    objective_.push_back(objective);
    return names_.size() - 1;
  }

  // Terms on the same variable are merged; zero coefficients dropped.
  std::size_t add_constraint(const std::vector<LinearTerm>& terms,
                             std::int64_t lower, std::int64_t upper,
                             std::string name = {}) {
    if (lower > upper) throw Error("constraint with lower bound above upper");
    std::map<VarIndex, std::int64_t> merged;
    for (const LinearTerm& t : terms) {
      if (t.var >= names_.size()) throw Error("constraint on unknown variable");
      merged[t.var] += t.coefficient;
    }
    LinearConstraint c{std::move(name), {}, lower, upper};
    for (const auto& [var, coef] : merged) {
      if (coef != 0) c.terms.push_back(LinearTerm{var, coef});
    }
    constraints_.push_back(std::move(c));
    return constraints_.size() - 1;
  }

  void set_objective(VarIndex var, std::int64_t coefficient) {
    objective_.at(var) = coefficient;
  }

  std::size_t num_variables() const { return names_.size(); }
  const std::string& variable_name(VarIndex v) const { return names_.at(v); }
  const std::vector<std::int64_t>& objective() const { return objective_; }
  const std::vector<LinearConstraint>& constraints() const {
    return constraints_;
  }

  std::int64_t objective_value(std::span<const std::uint8_t> assignment) const {
    std::int64_t value = 0;
    for (VarIndex v = 0; v < objective_.size(); ++v) {
      value += objective_[v] * assignment[v];
    }
    return value;
  }

  // Human-readable form, e.g. "0 <= var[C1=0] + var[C2=1] - 2 occ[...] <= 1".
  std::string format_constraint(const LinearConstraint& c) const {
    std::string out;
    if (c.lower > -kIlpInfinity) out += std::to_string(c.lower) + " <= ";
    for (std::size_t i = 0; i < c.terms.size(); ++i) {
      const std::int64_t coef = c.terms[i].coefficient;
      const std::int64_t mag = coef < 0 ? -coef : coef;
      if (i == 0) {
        if (coef < 0) out += "-";
      } else {
        out += coef < 0 ? " - " : " + ";
      }
      if (mag != 1) out += std::to_string(mag) + " ";
      out += names_[c.terms[i].var];
    }
    if (c.terms.empty()) out += "0";
    if (c.upper < kIlpInfinity) out += " <= " + std::to_string(c.upper);
    return out;
  }

 private:
  std::vector<std::string> names_;
  std::vector<std::int64_t> objective_;
  std::vector<LinearConstraint> constraints_;
};

enum class IlpStatus { kOptimal, kInfeasible };

struct IlpSolution {
  IlpStatus status = IlpStatus::kInfeasible;
  std::vector<std::uint8_t> assignment;
  std::int64_t objective_value = 0;
  std::uint64_t nodes = 0;
};

struct SolveOptions {
  // Off: plain enumeration of all 2^v assignments, checked at the leaves.
  bool pruning = true;
};

inline std::int64_t activity(const LinearConstraint& c,
                             std::span<const std::uint8_t> assignment) {
  std::int64_t sum = 0;
  for (const LinearTerm& t : c.terms) sum += t.coefficient * assignment[t.var];
  return sum;
}

// True iff every constraint holds under `assignment`.
inline bool check(const IlpProblem& problem,
                  std::span<const std::uint8_t> assignment) {
  if (assignment.size() != problem.num_variables()) {
    throw Error("assignment length does not match variable count");
  }
  for (const LinearConstraint& c : problem.constraints()) {
    const std::int64_t a = activity(c, assignment);
    if (a < c.lower || a > c.upper) return false;
  }
  return true;
}

namespace detail {

class BranchAndBound {
 public:
  BranchAndBound(const IlpProblem& problem, SolveOptions options)
      : problem_(problem),
        options_(options),
        value_(problem.num_variables(), kFree),
        occurs_(problem.num_variables()),
        fixed_sum_(problem.constraints().size(), 0),
        free_pos_(problem.constraints().size(), 0),
        free_neg_(problem.constraints().size(), 0) {
    const auto& cons = problem.constraints();
    for (std::size_t c = 0; c < cons.size(); ++c) {
      for (const LinearTerm& t : cons[c].terms) {
        occurs_[t.var].emplace_back(c, t.coefficient);
        (t.coefficient > 0 ? free_pos_[c] : free_neg_[c]) += t.coefficient;
      }
    }
    for (std::int64_t coef : problem.objective()) {
      if (coef > 0) free_obj_ += coef;
    }
  }

  IlpSolution run() {
    IlpSolution solution;
    bool root_ok = true;
    if (options_.pruning) {
      std::vector<std::size_t> all(problem_.constraints().size());
      for (std::size_t c = 0; c < all.size(); ++c) all[c] = c;
      root_ok = propagate(all);
    }
    if (root_ok) dfs(0);
    solution.nodes = nodes_;
    if (has_incumbent_) {
      solution.status = IlpStatus::kOptimal;
      solution.assignment = incumbent_;
      solution.objective_value = incumbent_value_;
    } else {
      solution.status = IlpStatus::kInfeasible;
    }
    return solution;
  }

 private:
  static constexpr std::int8_t kFree = -1;

  void fix(VarIndex v, std::uint8_t x) {
    value_[v] = static_cast<std::int8_t>(x);
    trail_.push_back(v);
    for (const auto& [c, coef] : occurs_[v]) {
      (coef > 0 ? free_pos_[c] : free_neg_[c]) -= coef;
      fixed_sum_[c] += coef * x;
    }
    const std::int64_t obj = problem_.objective()[v];
    if (obj > 0) free_obj_ -= obj;
    fixed_obj_ += obj * x;
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      const VarIndex v = trail_.back();
      trail_.pop_back();
      const std::int64_t x = value_[v];
      for (const auto& [c, coef] : occurs_[v]) {
        (coef > 0 ? free_pos_[c] : free_neg_[c]) += coef;
        fixed_sum_[c] -= coef * x;
      }
      const std::int64_t obj = problem_.objective()[v];
      if (obj > 0) free_obj_ += obj;
      fixed_obj_ -= obj * x;
      value_[v] = kFree;
    }
  }

  // Interval propagation to a fixpoint over the queued constraints.
  bool propagate(std::vector<std::size_t> queue) {
    const auto& cons = problem_.constraints();
    std::vector<char> queued(cons.size(), 0);
    for (std::size_t c : queue) queued[c] = 1;
    while (!queue.empty()) {
      const std::size_t c = queue.back();
      queue.pop_back();
      queued[c] = 0;
      const LinearConstraint& con = cons[c];
      const std::int64_t lo = fixed_sum_[c] + free_neg_[c];
      const std::int64_t hi = fixed_sum_[c] + free_pos_[c];
      if (hi < con.lower || lo > con.upper) return false;
      for (const LinearTerm& t : con.terms) {
        if (value_[t.var] != kFree) continue;
        const std::int64_t a = t.coefficient;
        int forced = -1;
        if (a > 0) {
          if (lo + a > con.upper) forced = 0;
          else if (hi - a < con.lower) forced = 1;
        } else {
          if (lo - a > con.upper) forced = 1;
          else if (hi + a < con.lower) forced = 0;
        }
        if (forced < 0) continue;
        fix(t.var, static_cast<std::uint8_t>(forced));
        for (const auto& [other, coef] : occurs_[t.var]) {
          if (!queued[other]) {
            queued[other] = 1;
            queue.push_back(other);
          }
        }
        // Bounds of `c` moved; revisit it from scratch.
        if (!queued[c]) {
          queued[c] = 1;
          queue.push_back(c);
        }
        break;
      }
    }
    return true;
  }

  void dfs(VarIndex from) {
    ++nodes_;
    if (options_.pruning && has_incumbent_ &&
        fixed_obj_ + free_obj_ <= incumbent_value_) {
      return;
    }
    VarIndex v = from;
    while (v < value_.size() && value_[v] != kFree) ++v;
    if (v == value_.size()) {
      std::vector<std::uint8_t> x(value_.begin(), value_.end());
      if (!options_.pruning && !check(problem_, x)) return;
      if (!has_incumbent_ || fixed_obj_ > incumbent_value_) {
        has_incumbent_ = true;
        incumbent_ = std::move(x);
        incumbent_value_ = fixed_obj_;
      }
      return;
    }
    const bool one_first = problem_.objective()[v] > 0;
    for (int pass = 0; pass < 2; ++pass) {
      const std::uint8_t x = (pass == 0) == one_first ? 1 : 0;
      const std::size_t mark = trail_.size();
      fix(v, x);
      bool ok = true;
      if (options_.pruning) {
        std::vector<std::size_t> touched;
        for (const auto& [c, coef] : occurs_[v]) touched.push_back(c);
        ok = propagate(std::move(touched));
      }
      if (ok) dfs(v + 1);
      undo_to(mark);
    }
  }

  const IlpProblem& problem_;
  SolveOptions options_;
  std::vector<std::int8_t> value_;
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> occurs_;
  std::vector<std::int64_t> fixed_sum_;
  std::vector<std::int64_t> free_pos_;
  std::vector<std::int64_t> free_neg_;
  std::int64_t fixed_obj_ = 0;
  std::int64_t free_obj_ = 0;
  std::vector<VarIndex> trail_;
  bool has_incumbent_ = false;
  std::vector<std::uint8_t> incumbent_;
  std::int64_t incumbent_value_ = 0;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

inline IlpSolution solve(const IlpProblem& problem, SolveOptions options = {}) {
  return detail::BranchAndBound(problem, options).run();
}

// Dumps the problem in CPLEX LP format for cross-checking with external
// solvers. Variables are renamed x0, x1, ...; the original names are listed
// in the leading comment block. Two-sided rows are split into _lo/_hi rows.
inline void write_lp(const IlpProblem& problem, std::ostream& out) {
  const auto var = [](VarIndex v) { return "x" + std::to_string(v); };
  const auto row = [&](const LinearConstraint& c) {
    std::string s;
    for (std::size_t i = 0; i < c.terms.size(); ++i) {
      const std::int64_t coef = c.terms[i].coefficient;
      s += (coef < 0 ? " - " : (i == 0 ? " " : " + "));
      s += std::to_string(coef < 0 ? -coef : coef) + " " + var(c.terms[i].var);
    }
    if (c.terms.empty()) s += " 0 " + var(0);
    return s;
  };
  for (VarIndex v = 0; v < problem.num_variables(); ++v) {
    out << "\\ " << var(v) << " = " << problem.variable_name(v) << "\n";
  }
  out << "Maximize\n obj:";
  bool any = false;
  for (VarIndex v = 0; v < problem.num_variables(); ++v) {
    const std::int64_t coef = problem.objective()[v];
    if (coef == 0) continue;
    out << (coef < 0 ? " - " : (any ? " + " : " ")) << (coef < 0 ? -coef : coef)
        << " " << var(v);
    any = true;
  }
  if (!any && problem.num_variables() > 0) out << " 0 " << var(0);
  out << "\nSubject To\n";
  const auto& cons = problem.constraints();
  for (std::size_t i = 0; i < cons.size(); ++i) {
    const LinearConstraint& c = cons[i];
    const std::string name = "c" + std::to_string(i);
    if (c.lower == c.upper) {
      out << " " << name << ":" << row(c) << " = " << c.lower << "\n";
      continue;
    }
    if (c.lower > -kIlpInfinity) {
      out << " " << name << "_lo:" << row(c) << " >= " << c.lower << "\n";
    }
    if (c.upper < kIlpInfinity) {
      out << " " << name << "_hi:" << row(c) << " <= " << c.upper << "\n";
    }
  }
  out << "Binary\n";
  for (VarIndex v = 0; v < problem.num_variables(); ++v) out << " " << var(v) << "\n";
  out << "End\n";
}

}  // namespace kproj

#endif  // KPROJ_ILP_HPP_
