#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include "dnsim/lp.hpp"

using namespace dnsim;
using lp::Problem;
using lp::Rel;
using lp::Status;
using lp::Term;

namespace {

// Vertex-enumeration oracle: every optimum of a bounded feasible LP sits on a
// vertex, i.e. an intersection of n active constraints drawn from the
// constraint rows and the axes. Exhaustive for n <= 4.
struct OracleCon {
  std::vector<double> row;  // dense over n variables
  Rel rel;
  double rhs;
};

std::optional<std::vector<double>> solve_square(
    std::vector<std::vector<double>> a, std::vector<double> b) {
  size_t n = b.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    for (size_t r = col; r < n; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
    if (std::fabs(a[piv][col]) < 1e-12) return std::nullopt;
    std::swap(a[col], a[piv]);
    std::swap(b[col], b[piv]);
    for (size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      double f = a[r][col] / a[col][col];
      for (size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

std::optional<double> oracle_max(const std::vector<double>& obj,
                                 const std::vector<OracleCon>& cons) {
  size_t n = obj.size();
  // candidate active sets: constraint rows plus axis planes x_i = 0
  std::vector<OracleCon> all = cons;
  for (size_t i = 0; i < n; ++i) {
    OracleCon axis;
    axis.row.assign(n, 0.0);
    axis.row[i] = 1.0;
    axis.rel = Rel::kGe;
    axis.rhs = 0.0;
    all.push_back(axis);
  }
  double best = -1e300;
  bool found = false;
  std::vector<size_t> idx(n);
  size_t m = all.size();
  // enumerate all n-subsets
  std::vector<size_t> comb(n);
  for (size_t i = 0; i < n; ++i) comb[i] = i;
  auto advance = [&]() -> bool {
    size_t i = n;
    while (i > 0) {
      --i;
      if (comb[i] != i + m - n) {
        ++comb[i];
        for (size_t j = i + 1; j < n; ++j) comb[j] = comb[j - 1] + 1;
        return true;
      }
    }
    return false;
  };
  do {
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    for (size_t i : comb) {
      a.push_back(all[i].row);
      b.push_back(all[i].rhs);
    }
    auto x = solve_square(a, b);
    if (!x) continue;
    bool feasible = true;
    for (size_t i = 0; i < n && feasible; ++i)
      if ((*x)[i] < -1e-7) feasible = false;
    for (const auto& c : all) {
      if (!feasible) break;
      double lhs = 0.0;
      for (size_t i = 0; i < n; ++i) lhs += c.row[i] * (*x)[i];
      if (c.rel == Rel::kLe && lhs > c.rhs + 1e-7) feasible = false;
      if (c.rel == Rel::kGe && lhs < c.rhs - 1e-7) feasible = false;
      if (c.rel == Rel::kEq && std::fabs(lhs - c.rhs) > 1e-7) feasible = false;
    }
    if (!feasible) continue;
    double v = 0.0;
    for (size_t i = 0; i < n; ++i) v += obj[i] * (*x)[i];
    if (!found || v > best) best = v;
    found = true;
  } while (advance());
  if (!found) return std::nullopt;
  return best;
}

}  // namespace

TEST_CASE("single bottleneck") {
  Problem p;
  int x = p.add_variable(1.0);
  p.add_constraint({{x, 1.0}}, Rel::kLe, 10.0);
  auto s = p.maximize();
  REQUIRE(s.status == Status::kOptimal);
  CHECK(s.objective == doctest::Approx(10.0));
  CHECK(s.x[x] == doctest::Approx(10.0));
}

TEST_CASE("two variables, shared resource") {
  // max x0 + x1 s.t. x0/20 + x1/10 <= 1 (time sharing): all of it to x0
  Problem p;
  int x0 = p.add_variable(1.0);
  int x1 = p.add_variable(1.0);
  p.add_constraint({{x0, 1.0 / 20.0}, {x1, 1.0 / 10.0}}, Rel::kLe, 1.0);
  auto s = p.maximize();
  REQUIRE(s.status == Status::kOptimal);
  CHECK(s.objective == doctest::Approx(20.0));
  CHECK(s.x[x0] == doctest::Approx(20.0));
  CHECK(s.x[x1] == doctest::Approx(0.0));
}

TEST_CASE("greater-equal and equality constraints") {
  // max x1 s.t. x0 + x1 <= 8, x0 >= 3, x0 = 5 -> x1 = 3
  Problem p;
  int x0 = p.add_variable(0.0);
  int x1 = p.add_variable(1.0);
  p.add_constraint({{x0, 1.0}, {x1, 1.0}}, Rel::kLe, 8.0);
  p.add_constraint({{x0, 1.0}}, Rel::kGe, 3.0);
  p.add_constraint({{x0, 1.0}}, Rel::kEq, 5.0);
  auto s = p.maximize();
  REQUIRE(s.status == Status::kOptimal);
  CHECK(s.x[x0] == doctest::Approx(5.0));
  CHECK(s.x[x1] == doctest::Approx(3.0));
}

TEST_CASE("infeasible and unbounded detection") {
  {
    Problem p;
    int x = p.add_variable(1.0);
    p.add_constraint({{x, 1.0}}, Rel::kLe, 1.0);
    p.add_constraint({{x, 1.0}}, Rel::kGe, 2.0);
    CHECK(p.maximize().status == Status::kInfeasible);
  }
  {
    Problem p;
    int x = p.add_variable(1.0);
    int y = p.add_variable(0.0);
    p.add_constraint({{y, 1.0}}, Rel::kLe, 5.0);
    (void)x;
    CHECK(p.maximize().status == Status::kUnbounded);
  }
}

TEST_CASE("negative rhs normalization") {
  // x0 - x1 >= -4 with rhs flip
  Problem p;
  int x0 = p.add_variable(0.0);
  int x1 = p.add_variable(1.0);
  p.add_constraint({{x0, 1.0}, {x1, -1.0}}, Rel::kGe, -4.0);
  p.add_constraint({{x0, 1.0}}, Rel::kLe, 2.0);
  auto s = p.maximize();
  REQUIRE(s.status == Status::kOptimal);
  CHECK(s.objective == doctest::Approx(6.0));
}

TEST_CASE("randomized instances match the vertex-enumeration oracle") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> coeff(0.1, 3.0);
  std::uniform_real_distribution<double> cap(1.0, 20.0);
  std::uniform_int_distribution<int> nvars(1, 3);
  std::uniform_int_distribution<int> ncons(1, 4);

  int compared = 0;
  for (int trial = 0; trial < 300; ++trial) {
    int n = nvars(rng);
    int m = ncons(rng);
    std::vector<double> obj(n);
    for (auto& v : obj) v = coeff(rng);

    Problem p;
    std::vector<OracleCon> ocons;
    for (int i = 0; i < n; ++i) (void)p.add_variable(obj[i]);
    for (int c = 0; c < m; ++c) {
      OracleCon oc;
      oc.row.assign(n, 0.0);
      std::vector<Term> terms;
      for (int i = 0; i < n; ++i) {
        double a = coeff(rng);
        oc.row[i] = a;
        terms.push_back({i, a});
      }
      oc.rel = Rel::kLe;
      oc.rhs = cap(rng);
      ocons.push_back(oc);
      p.add_constraint(terms, Rel::kLe, oc.rhs);
    }
    // box to keep everything bounded
    for (int i = 0; i < n; ++i) {
      OracleCon box;
      box.row.assign(n, 0.0);
      box.row[i] = 1.0;
      box.rel = Rel::kLe;
      box.rhs = 50.0;
      ocons.push_back(box);
      p.add_constraint({{i, 1.0}}, Rel::kLe, 50.0);
    }

    auto s = p.maximize();
    auto want = oracle_max(obj, ocons);
    REQUIRE(s.status == Status::kOptimal);
    REQUIRE(want.has_value());
    CHECK(s.objective ==
          doctest::Approx(*want).epsilon(1e-6));
    ++compared;
  }
  CHECK(compared == 300);
}
