#include <doctest.h>

#include <cmath>

#include "foliation/resolving.hpp"

using namespace foliation;

namespace {

const std::vector<std::string> kPhiVars{"xi", "theta"};

Complex value(const Expr& e, const ResolvingPoint& p) {
  std::vector<Complex> at{p.t, p.ut, p.rho};
  return eval_jetN(e, at, 0).value();
}

ErrorKind kind_of(const ResolvingFunctions& rf, const ResolvingPoint& p) {
  try {
    (void)resolving_residuals(rf, p);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::NonReal;
}

}  // namespace

TEST_CASE("ansatz solves the resolving system") {
  for (int kappa : {1, -1}) {
    auto pts = sample_resolving_points(kappa, 100, 42);
    REQUIRE(pts.size() == 100);
    for (const char* phi : {"1", "2", "xi", "xi*theta", "exp(-xi)"}) {
      auto rf = ansatz_functions(parse(phi, kPhiVars), kappa);
      double worst = 0.0, worst_jacobi = 0.0;
      int skipped = 0;
      for (const auto& p : pts) {
        try {
          for (Complex r : resolving_residuals(rf, p).values()) worst = std::max(worst, std::abs(r));
          for (Complex r : jacobi_residual(rf, p)) worst_jacobi = std::max(worst_jacobi, std::abs(r));
        } catch (const Error& e) {
          // F = rho^3 phi has zeros when phi does
          REQUIRE(e.kind() == ErrorKind::FVanishes);
          ++skipped;
        }
      }
      CHECK(skipped <= 2);
      CHECK_MESSAGE(worst < 1e-9, phi, " kappa=", kappa);
      CHECK_MESSAGE(worst_jacobi < 1e-8, phi, " kappa=", kappa);
    }
  }
}

TEST_CASE("lambda pair identities") {
  for (int kappa : {1, -1}) {
    auto rf = ansatz_functions(parse("xi", kPhiVars), kappa);
    for (const auto& p : sample_resolving_points(kappa, 20, 7)) {
      Complex l = value(rf.lambda, p), lb = value(rf.lambda_bar, p);
      CHECK(std::abs(l * lb - 2.0 * kappa * p.rho) < 1e-12);
      CHECK(std::abs(l + lb - 2.0 * kappa * p.ut) < 1e-12);
    }
  }
}

TEST_CASE("projected commutators match the structure functions") {
  auto rf = ansatz_functions(parse("xi*theta", kPhiVars), 1);
  for (const auto& p : sample_resolving_points(1, 20, 3)) {
    for (auto target : {ResolvingTarget::T, ResolvingTarget::Ut, ResolvingTarget::Rho})
      for (Complex r : projected_commutator_residual(target, rf, p)) CHECK(std::abs(r) < 1e-8);
  }
}

TEST_CASE("characteristic variables are constant along delta") {
  for (int kappa : {1, -1}) {
    auto [xi, theta] = characteristic_variables(kappa);
    auto rf = ansatz_functions(parse("2", kPhiVars), kappa);
    for (const auto& p : sample_resolving_points(kappa, 20, 9)) {
      CHECK(std::abs(projected_apply(ProjectedOp::Delta, xi, rf, p)) < 1e-9);
      CHECK(std::abs(projected_apply(ProjectedOp::Delta, theta, rf, p)) < 1e-9);
    }
  }
  auto [xi, theta] = characteristic_variables(1);
  ResolvingPoint spot{1.0, 0.8, 0.4, 1};
  CHECK(std::abs(value(xi, spot) - 1.0) < 1e-12);
  CHECK(std::abs(value(theta, spot) + 2.0) < 1e-12);
}

TEST_CASE("perturbations are detected") {
  auto rf = ansatz_functions(parse("2", kPhiVars), 1);
  auto pts = sample_resolving_points(1, 20, 1);
  for (const char* name : {"F", "tau", "lambda"}) {
    auto bad = perturbed(rf, name, 0.1);
    double worst = 0.0;
    for (const auto& p : pts)
      for (Complex r : resolving_residuals(bad, p).values()) worst = std::max(worst, std::abs(r));
    CHECK_MESSAGE(worst > 1e-3, name);
  }
  CHECK_THROWS_AS(perturbed(rf, "rho", 0.1), Error);
}

TEST_CASE("domain errors") {
  auto rf = ansatz_functions(parse("2", kPhiVars), 1);
  CHECK(kind_of(rf, {0.0, 1.0, 0.1, 1}) == ErrorKind::NegativeDiscriminant);
  auto zero = ansatz_functions(parse("0", kPhiVars), 1);
  CHECK(kind_of(zero, {0.0, 0.5, 0.5, 1}) == ErrorKind::FVanishes);
}

TEST_CASE("sampling is reproducible") {
  auto a = sample_resolving_points(-1, 10, 5), b = sample_resolving_points(-1, 10, 5);
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].t == b[k].t);
    CHECK(a[k].ut == b[k].ut);
    CHECK(a[k].rho == b[k].rho);
    CHECK(2.0 * a[k].kappa * a[k].rho - a[k].ut * a[k].ut > 0.0);
  }
  auto c = sample_resolving_points(-1, 10, 6);
  CHECK(c[0].t != a[0].t);
}
