#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <Eigen/Dense>
#include <random>

#include "doctest.h"
#include "support/test_support.hpp"
#include "ustad/eum/merge.hpp"
#include "ustad/eum/update_map.hpp"
#include "ustad/poly/parse.hpp"

using namespace ustad;

namespace {

struct Env {
  VarTable vars;
  std::vector<AssignStep> steps;

  int var(const std::string& n) {
    const int i = vars.find(n);
    return i >= 0 ? i : vars.add(n);
  }
  // Declares variables up front so polynomials share one table width.
  explicit Env(const std::vector<std::string>& names) {
    for (const auto& n : names) vars.add(n);
  }
  void assign(const std::string& v, const std::string& rhs) {
    VarTable copy = vars;
    steps.push_back({var(v), parse_poly(rhs, copy, false)});
  }
};

}  // namespace

TEST_CASE("substitute rewrites linear chains") {
  Env env({"x", "y", "a", "b", "c"});
  env.assign("x", "a + b");
  env.assign("y", "x + c");
  const EffectiveUpdateMap sigma =
      compute_eum(env.steps, env.vars.size(), &env.vars);
  REQUIRE(sigma.find(0) != nullptr);
  REQUIRE(sigma.find(1) != nullptr);
  CHECK(sigma.find(0)->to_string(&env.vars) == "a + b");
  CHECK(sigma.find(1)->to_string(&env.vars) == "a + b + c");
  CHECK(sigma.find(2) == nullptr);  // untouched variables stay identity
}

TEST_CASE("substitute carries products into quadratics") {
  Env env({"x", "y", "a", "b", "c"});
  env.assign("x", "a + b");
  env.assign("y", "x*c");
  const EffectiveUpdateMap sigma =
      compute_eum(env.steps, env.vars.size(), &env.vars);
  CHECK(sigma.find(1)->to_string(&env.vars) == "a*c + b*c");
}

TEST_CASE("self-referencing updates fold through") {
  Env env({"x"});
  env.assign("x", "x + 1");
  env.assign("x", "2*x");
  const EffectiveUpdateMap sigma = compute_eum(env.steps, 1, &env.vars);
  CHECK(sigma.find(0)->to_string(&env.vars) == "2*x + 2");
}

TEST_CASE("block-split example folds both halves") {
  // First block: x := 2a; y := x*b. Second: z := y*c - a; w := z + d.
  Env b1({"x", "y", "z", "w", "a", "b", "c", "d"});
  b1.assign("x", "2*a");
  b1.assign("y", "x*b");
  const EffectiveUpdateMap s1 = compute_eum(b1.steps, 8, &b1.vars);
  CHECK(s1.find(0)->to_string(&b1.vars) == "2*a");
  CHECK(s1.find(1)->to_string(&b1.vars) == "2*a*b");

  Env b2({"x", "y", "z", "w", "a", "b", "c", "d"});
  b2.assign("z", "y*c - a");
  b2.assign("w", "z + d");
  const EffectiveUpdateMap s2 = compute_eum(b2.steps, 8, &b2.vars);
  CHECK(s2.find(2)->to_string(&b2.vars) == "y*c - a");
  CHECK(s2.find(3)->to_string(&b2.vars) == "y*c - a + d");
}

TEST_CASE("degree overflow reports the 1-based step") {
  Env env({"x", "y", "a", "b", "c"});
  env.assign("x", "a*b");
  env.assign("y", "x*c");
  try {
    compute_eum(env.steps, env.vars.size(), &env.vars);
    FAIL("expected DegreeError");
  } catch (const DegreeError& e) {
    CHECK(e.instruction == 2);
    CHECK(e.degree == 3);
  }
}

TEST_CASE("cancelling quartic products stay in the class") {
  // y := x*x; y := y - x*x leaves sigma(y) = 0 after both substitutions...
  // the second rhs rewrites to x^2 - x^2 before the cap check.
  Env env({"x", "y"});
  env.assign("y", "x*x");
  env.assign("y", "y - x*x");
  const EffectiveUpdateMap sigma = compute_eum(env.steps, 2, &env.vars);
  CHECK(sigma.find(1)->degree() == 0);
  CHECK(sigma.find(1)->constant_term() == 0.0);
}

TEST_CASE("effective objective combines rows with the map") {
  Env env({"x", "y"});
  env.assign("x", "x + y");
  env.assign("y", "2*y");
  const EffectiveUpdateMap sigma = compute_eum(env.steps, 2, &env.vars);
  Eigen::RowVectorXd row(2);
  row << 1, -1;  // x - y after the block
  const QuadPoly f = effective_objective(row, sigma, &env.vars);
  CHECK(f.to_string(&env.vars) == "x - y");
  row << -1, 1;
  CHECK(effective_objective(row, sigma, &env.vars).to_string(&env.vars) ==
        "-x + y");
}

TEST_CASE("effective objective keeps identity variables") {
  Env env({"x", "y"});
  env.assign("x", "y + 3");
  const EffectiveUpdateMap sigma = compute_eum(env.steps, 2, &env.vars);
  Eigen::RowVectorXd row(2);
  row << 1, 1;
  CHECK(effective_objective(row, sigma, &env.vars).to_string(&env.vars) ==
        "2*y + 3");
}

TEST_CASE("merge all fuses whole runs within the cap") {
  Env env({"x", "y", "a"});
  env.assign("x", "a + 1");
  env.assign("y", "x + a");
  env.assign("x", "x - y");
  const auto groups = merge_assignments(env.steps, 3, {MergePolicy::all, 1},
                                        &env.vars);
  REQUIRE(groups.size() == 1);
  CHECK(groups[0].first == 0);
  CHECK(groups[0].steps.size() == 3);
  CHECK(groups[0].sigma.find(0)->to_string(&env.vars) == "-a");
  CHECK(groups[0].sigma.find(1)->to_string(&env.vars) == "2*a + 1");
}

TEST_CASE("merge splits when fusion would overflow the degree") {
  Env env({"x", "y", "z"});
  env.assign("x", "y*y");
  env.assign("z", "x*y");
  const auto groups =
      merge_assignments(env.steps, 3, {MergePolicy::all, 1}, &env.vars);
  REQUIRE(groups.size() == 2);
  CHECK(groups[0].steps.size() == 1);
  CHECK(groups[1].steps.size() == 1);
  CHECK(groups[1].first == 1);
}

TEST_CASE("capped policy bounds the group length") {
  Env env({"x"});
  env.assign("x", "x + 1");
  env.assign("x", "x + 2");
  env.assign("x", "x + 3");
  const auto one =
      merge_assignments(env.steps, 1, {MergePolicy::capped, 1}, &env.vars);
  CHECK(one.size() == 3);
  const auto two =
      merge_assignments(env.steps, 1, {MergePolicy::capped, 2}, &env.vars);
  REQUIRE(two.size() == 2);
  CHECK(two[0].steps.size() == 2);
  CHECK(two[0].sigma.find(0)->to_string(&env.vars) == "x + 3");
  CHECK(two[1].steps.size() == 1);
}

TEST_CASE("quad_only policy splits purely linear groups") {
  Env env({"x", "y"});
  env.assign("x", "x + 1");
  env.assign("y", "y + 2");
  const auto lin = merge_assignments(env.steps, 2,
                                     {MergePolicy::quad_only, 1}, &env.vars);
  CHECK(lin.size() == 2);

  Env env2({"x", "y"});
  env2.assign("x", "x + 1");
  env2.assign("y", "x*x");
  const auto quad = merge_assignments(env2.steps, 2,
                                      {MergePolicy::quad_only, 1}, &env2.vars);
  REQUIRE(quad.size() == 1);
  CHECK(quad[0].steps.size() == 2);
}

TEST_CASE("merge policy names round-trip") {
  for (auto p :
       {MergePolicy::all, MergePolicy::quad_only, MergePolicy::capped})
    CHECK(merge_policy_from_name(merge_policy_name(p)) == p);
  CHECK_THROWS_AS(merge_policy_from_name("sometimes"), Error);
}

TEST_CASE("groups tile the sequence and refold to the same map") {
  std::mt19937_64 g(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 3;
    std::vector<AssignStep> seq;
    for (int s = ts::irand(g, 1, 6); s > 0; --s) {
      QuadPoly rhs = ts::random_poly(g, n, ts::coin(g, 0.3));
      seq.push_back(ustad::AssignStep{ts::irand(g, 0, n - 1), rhs});
    }
    for (auto policy :
         {MergePolicy::all, MergePolicy::quad_only, MergePolicy::capped}) {
      const auto groups = merge_assignments(seq, n, {policy, 2});
      size_t covered = 0;
      for (const auto& gr : groups) {
        CHECK(gr.first == static_cast<int>(covered));
        covered += gr.steps.size();
        // each group's map refolds from its own steps
        const EffectiveUpdateMap direct = compute_eum(gr.steps, n);
        for (const auto& [v, p] : gr.sigma.exprs) {
          REQUIRE(direct.find(v) != nullptr);
          QuadPoly diff = p - *direct.find(v);
          diff.prune();
          CHECK(diff.degree() == 0);
          CHECK(diff.constant_term() == 0.0);
        }
      }
      CHECK(covered == seq.size());
    }
  }
}

TEST_CASE("composition equals stepwise execution on integer states") {
  std::mt19937_64 g(11);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = ts::irand(g, 2, 4);
    std::vector<AssignStep> seq;
    for (int s = ts::irand(g, 1, 5); s > 0; --s)
      seq.push_back(ustad::AssignStep{ts::irand(g, 0, n - 1), ts::random_poly(g, n, ts::coin(g, 0.2))});
    EffectiveUpdateMap sigma;
    try {
      sigma = compute_eum(seq, n);
    } catch (const DegreeError&) {
      continue;  // sequence leaves the class; nothing to compare
    }
    for (int k = 0; k < 5; ++k) {
      Eigen::VectorXd v(n);
      for (int j = 0; j < n; ++j) v(j) = ts::irand(g, -4, 4);
      Eigen::VectorXd direct = v;
      for (const auto& st : seq) direct(st.var) = st.rhs.eval(direct);
      Eigen::VectorXd composed = v;
      for (int j = 0; j < n; ++j)
        if (const QuadPoly* p = sigma.find(j)) composed(j) = p->eval(v);
      CHECK(direct == composed);
      ++checked;
    }
  }
  CHECK(checked > 300);
}
