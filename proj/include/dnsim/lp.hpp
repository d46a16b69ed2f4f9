#pragma once

#include <vector>

// Self-contained dense two-phase simplex, maximization over nonnegative
// variables. Problem sizes here stay in the low hundreds of variables, so a
// dense tableau with Bland's rule as the anti-cycling fallback is plenty.

namespace dnsim::lp {

enum class Rel { kLe, kGe, kEq };
enum class Status { kOptimal, kInfeasible, kUnbounded };

struct Term {
  int var;
  double coeff;
};

struct Solution {
  Status status = Status::kInfeasible;
  double objective = 0.0;
  std::vector<double> x;
};

class Problem {
 public:
  // Adds a variable with x >= 0 and the given objective coefficient.
  int add_variable(double objective_coeff = 0.0);
  void set_objective_coeff(int var, double coeff);
  void add_constraint(std::vector<Term> terms, Rel rel, double rhs);

  int num_variables() const { return static_cast<int>(obj_.size()); }
  int num_constraints() const { return static_cast<int>(cons_.size()); }

  Solution maximize() const;

 private:
  struct Con {
    std::vector<Term> terms;
    Rel rel;
    double rhs;
  };

  std::vector<double> obj_;
  std::vector<Con> cons_;
};

}  // namespace dnsim::lp
