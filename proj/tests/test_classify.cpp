#include <doctest.h>

#include <cmath>

#include "foliation/classify.hpp"

using namespace foliation;

namespace {

const std::vector<std::string> kZ{"z"};

ErrorKind case_error(int id, int kappa) {
  std::mt19937_64 rng(1);
  try {
    (void)random_case(id, kappa, rng);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::NonReal;
}

}  // namespace

TEST_CASE("random draws of every nonempty case are invariant") {
  for (int kappa : {1, -1}) {
    for (int id = 1; id <= 8; ++id) {
      const bool empty = kappa == -1 && (id == 3 || id == 4 || id == 6 || id == 7);
      CaseDrawSummary s = verify_random_draws(id, kappa, 10, 1234);
      if (empty) {
        CHECK(s.failure.has_value());
        CHECK(case_error(id, kappa) == ErrorKind::ConstraintViolation);
        continue;
      }
      CHECK_MESSAGE(!s.failure.has_value(), "case ", id, " kappa ", kappa);
      CHECK(s.draws == 10);
      CHECK_MESSAGE(s.max_residual < 1e-9, "case ", id, " kappa ", kappa);
    }
  }
}

TEST_CASE("case expressions agree with direct evaluation") {
  std::mt19937_64 rng(77);
  for (int id = 1; id <= 8; ++id) {
    TheoremCase tc = random_case(id, 1, rng);
    CaseInstance ci = theorem_case(tc);
    Complex z(1.1, 0.1);
    CHECK(std::abs(eval_jet1(ci.b, z, 0).value() - case_value(tc, z)) < 1e-10 * (1.0 + std::abs(case_value(tc, z))));
  }
}

TEST_CASE("constraint violations") {
  TheoremCase tc;
  tc.id = 5;
  tc.kappa = 1;
  tc.C1 = Complex(1.0, 0.5);  // C1 must be real
  tc.C2 = Complex(0.0, 1.0);
  tc.beta = 1.0;
  CHECK_THROWS_AS(theorem_case(tc), Error);
  tc.id = 9;
  CHECK_THROWS_AS(theorem_case(tc), Error);
}

TEST_CASE("classification of sample b") {
  const auto grid = case_grid(1);
  struct Item {
    const char* b;
    const char* verdict;
    int id;
  };
  const Item items[] = {{"z^2 + i", "ConformallyNonInvariant", 0},
                        {"exp(z) + 2*i", "ConformallyNonInvariant", 0},
                        {"1/(z + 2) + i", "ConformallyNonInvariant", 0},
                        {"0.5", "InvariantCaseMatched", 8},
                        {"-2*z + 1", "InvariantCaseMatched", 5},
                        {"2*i*z + 1", "InvariantCaseMatched", 7}};
  for (const auto& it : items) {
    auto v = classify_b(parse(it.b, kZ), 1, grid);
    CHECK_MESSAGE(verdict_name(v) == it.verdict, it.b);
    if (auto* m = std::get_if<InvariantCaseMatched>(&v)) {
      CHECK_MESSAGE(m->constants.id == it.id, it.b);
      CHECK(m->max_residual < 1e-8);
    }
    if (auto* w = std::get_if<ConformallyNonInvariant>(&v)) CHECK(w->gap > 1e-6);
  }
}

TEST_CASE("automorphic consistency") {
  Expr b = parse("z^2 + i", kZ);
  AutomorphicCheck a = automorphic_check(b, 1, {1.0, Complex(1.0, 0.0)}, parse("sqrt(z - i)", kZ));
  CHECK(std::abs(a.eta_over_rho3 - 2.0) < 1e-10);
  CHECK(std::abs(a.phi_from_b - 2.0) < 1e-10);
  REQUIRE(a.phi_from_f.has_value());
  CHECK(std::abs(*a.phi_from_f - 2.0) < 1e-10);
  CHECK(std::abs(a.xi - 1.0) < 1e-10);
  CHECK(std::abs(a.xi_from_b - 1.0) < 1e-10);
  CHECK(std::abs(a.theta + 2.0) < 1e-10);
  CHECK(std::abs(a.theta_from_b + 2.0) < 1e-10);

  Expr bm = parse("exp(z) - 2*i", kZ);
  AutomorphicCheck m = automorphic_check(bm, -1, {0.8, Complex(0.2, 0.1)}, parse("ln(z + 2*i)", kZ));
  CHECK(std::abs(m.eta_over_rho3 - m.phi_from_b) < 1e-9);
  CHECK(std::abs(*m.phi_from_f - m.phi_from_b) < 1e-9);
  CHECK(std::abs(m.xi - m.xi_from_b) < 1e-9);
  CHECK(std::abs(m.theta - m.theta_from_b) < 1e-9);
}

TEST_CASE("automorphic residual") {
  // f inverts b, so f'(b) = 1/b' and w = 1 balances b' = w^2 / f'(b).
  Expr b = parse("z^2 + i", kZ);
  Expr f = parse("sqrt(z - i)", kZ);
  Expr w = parse("1", kZ);
  CHECK(std::abs(automorphic_residual(b, f, w, Complex(0.9, 0.3))) < 1e-12);
  CHECK(std::abs(automorphic_residual(b, f, parse("2", kZ), Complex(0.9, 0.3))) > 0.1);
  CHECK_THROWS_AS(automorphic_residual(b, parse("z*0 + 1", kZ), w, Complex(0.9, 0.3)), Error);
}
