#include "dnsim/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dnsim::lp {
namespace {

constexpr double kEps = 1e-9;

// Dense tableau: rows = constraints, last column = rhs. Basis tracks the
// variable occupying each row.
struct Tableau {
  int rows = 0;
  int cols = 0;  // total columns incl. rhs
  std::vector<double> a;
  std::vector<int> basis;

  double& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  double at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

  void pivot(int pr, int pc) {
    double inv = 1.0 / at(pr, pc);
    for (int c = 0; c < cols; ++c) at(pr, c) *= inv;
    at(pr, pc) = 1.0;
    for (int r = 0; r < rows; ++r) {
      if (r == pr) continue;
      double f = at(r, pc);
      if (std::fabs(f) < kEps) {
        at(r, pc) = 0.0;
        continue;
      }
      for (int c = 0; c < cols; ++c) at(r, c) -= f * at(pr, c);
      at(r, pc) = 0.0;
    }
    basis[pr] = pc;
  }
};

// Reduced costs for maximizing obj over the current basis.
void reduced_costs(const Tableau& t, const std::vector<double>& obj,
                   std::vector<double>& out, double& basis_value) {
  int nv = t.cols - 1;
  out.assign(nv, 0.0);
  basis_value = 0.0;
  std::vector<double> cb(t.rows, 0.0);
  for (int r = 0; r < t.rows; ++r) {
    cb[r] = t.basis[r] < static_cast<int>(obj.size()) ? obj[t.basis[r]] : 0.0;
    basis_value += cb[r] * t.at(r, nv);
  }
  for (int c = 0; c < nv; ++c) {
    double z = 0.0;
    for (int r = 0; r < t.rows; ++r)
      if (cb[r] != 0.0) z += cb[r] * t.at(r, c);
    double cj = c < static_cast<int>(obj.size()) ? obj[c] : 0.0;
    out[c] = cj - z;
  }
}

// Returns kOptimal or kUnbounded. allowed[c] masks columns usable for entry.
Status run_simplex(Tableau& t, const std::vector<double>& obj,
                   const std::vector<char>& allowed) {
  int nv = t.cols - 1;
  std::vector<double> rc;
  double value = 0.0;
  double last_value = -std::numeric_limits<double>::infinity();
  int stall = 0;
  const int stall_limit = 4 * (t.rows + nv);
  long iter_cap = 200l * (t.rows + nv) + 2000;

  for (long iter = 0; iter < iter_cap; ++iter) {
    reduced_costs(t, obj, rc, value);
    bool bland = stall > stall_limit;

    int enter = -1;
    double best = kEps;
    for (int c = 0; c < nv; ++c) {
      if (!allowed[c] || rc[c] <= kEps) continue;
      if (bland) {
        enter = c;
        break;
      }
      if (rc[c] > best) {
        best = rc[c];
        enter = c;
      }
    }
    if (enter < 0) return Status::kOptimal;

    int leave = -1;
    double best_ratio = 0.0;
    for (int r = 0; r < t.rows; ++r) {
      double arc = t.at(r, enter);
      if (arc <= kEps) continue;
      double ratio = t.at(r, nv) / arc;
      if (leave < 0 || ratio < best_ratio - kEps ||
          (ratio < best_ratio + kEps && t.basis[r] < t.basis[leave])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (leave < 0) return Status::kUnbounded;

    t.pivot(leave, enter);
    if (value > last_value + kEps) {
      stall = 0;
      last_value = value;
    } else {
      ++stall;
    }
  }
  // iteration cap acts as a hard stop; the cap is generous enough that
  // hitting it means numerical trouble, treat as optimal-at-current-point
  return Status::kOptimal;
}

}  // namespace

int Problem::add_variable(double objective_coeff) {
  obj_.push_back(objective_coeff);
  return static_cast<int>(obj_.size()) - 1;
}

void Problem::set_objective_coeff(int var, double coeff) {
  obj_.at(static_cast<size_t>(var)) = coeff;
}

void Problem::add_constraint(std::vector<Term> terms, Rel rel, double rhs) {
  for (const Term& t : terms)
    if (t.var < 0 || t.var >= num_variables())
      throw std::invalid_argument("constraint references unknown variable");
  cons_.push_back({std::move(terms), rel, rhs});
}

Solution Problem::maximize() const {
  int n = num_variables();
  int m = num_constraints();

  // normalize to rhs >= 0
  std::vector<Con> cons = cons_;
  for (Con& c : cons) {
    if (c.rhs < 0) {
      for (Term& t : c.terms) t.coeff = -t.coeff;
      c.rhs = -c.rhs;
      if (c.rel == Rel::kLe)
        c.rel = Rel::kGe;
      else if (c.rel == Rel::kGe)
        c.rel = Rel::kLe;
    }
  }

  int n_slack = 0, n_art = 0;
  for (const Con& c : cons) {
    if (c.rel != Rel::kEq) ++n_slack;
    if (c.rel != Rel::kLe) ++n_art;
  }

  Tableau t;
  t.rows = m;
  t.cols = n + n_slack + n_art + 1;
  t.a.assign(static_cast<size_t>(t.rows) * t.cols, 0.0);
  t.basis.assign(m, -1);

  int slack_at = n;
  int art_at = n + n_slack;
  int rhs_col = t.cols - 1;
  std::vector<char> is_artificial(t.cols - 1, 0);

  for (int r = 0; r < m; ++r) {
    const Con& c = cons[r];
    for (const Term& term : c.terms) t.at(r, term.var) += term.coeff;
    t.at(r, rhs_col) = c.rhs;
    if (c.rel == Rel::kLe) {
      t.at(r, slack_at) = 1.0;
      t.basis[r] = slack_at++;
    } else if (c.rel == Rel::kGe) {
      t.at(r, slack_at) = -1.0;
      ++slack_at;
      t.at(r, art_at) = 1.0;
      is_artificial[art_at] = 1;
      t.basis[r] = art_at++;
    } else {
      t.at(r, art_at) = 1.0;
      is_artificial[art_at] = 1;
      t.basis[r] = art_at++;
    }
  }

  Solution sol;

  if (n_art > 0) {
    // phase 1: drive artificials to zero
    std::vector<double> phase1_obj(t.cols - 1, 0.0);
    for (int c = 0; c < t.cols - 1; ++c)
      if (is_artificial[c]) phase1_obj[c] = -1.0;
    std::vector<char> allowed(t.cols - 1, 1);
    Status st = run_simplex(t, phase1_obj, allowed);
    (void)st;  // phase 1 is never unbounded (objective <= 0)

    double infeas = 0.0;
    for (int r = 0; r < m; ++r)
      if (is_artificial[t.basis[r]]) infeas += t.at(r, rhs_col);
    if (infeas > 1e-7) {
      sol.status = Status::kInfeasible;
      return sol;
    }
    // pivot any zero-valued artificial out of the basis when possible
    for (int r = 0; r < m; ++r) {
      if (!is_artificial[t.basis[r]]) continue;
      int pc = -1;
      for (int c = 0; c < t.cols - 1; ++c) {
        if (is_artificial[c]) continue;
        if (std::fabs(t.at(r, c)) > 1e-7) {
          pc = c;
          break;
        }
      }
      if (pc >= 0) t.pivot(r, pc);
      // else: redundant row, artificial stays basic at value zero
    }
  }

  // phase 2
  std::vector<double> obj(t.cols - 1, 0.0);
  for (int c = 0; c < n; ++c) obj[c] = obj_[c];
  std::vector<char> allowed(t.cols - 1, 1);
  for (int c = 0; c < t.cols - 1; ++c)
    if (is_artificial[c]) allowed[c] = 0;

  Status st = run_simplex(t, obj, allowed);
  if (st == Status::kUnbounded) {
    sol.status = Status::kUnbounded;
    return sol;
  }

  sol.status = Status::kOptimal;
  sol.x.assign(n, 0.0);
  for (int r = 0; r < m; ++r)
    if (t.basis[r] < n) sol.x[t.basis[r]] = t.at(r, rhs_col);
  sol.objective = 0.0;
  for (int c = 0; c < n; ++c) sol.objective += obj_[c] * sol.x[c];
  return sol;
}

}  // namespace dnsim::lp
