#include <doctest.h>

#include <cmath>

#include "foliation/invariants.hpp"

using namespace foliation;

namespace {

const std::vector<std::string> kZ{"z"};

SolutionField noninv(const char* b, int kappa) {
  FamilyParams p;
  p.b = parse(b, kZ);
  return make_solution(kappa == 1 ? Family::NonInvPlus : Family::NonInvMinus, p, kappa);
}

}  // namespace

// Reference values from tests/oracle/spot_values.py.
TEST_CASE("spot values for b = z^2 + i at t = 1, z = 1") {
  auto field = noninv("z^2 + i", 1);
  Point p{1.0, Complex(1.0, 0.0)};
  InvariantSet s = invariants_at(field, p);
  CHECK(std::abs(s.rho - 0.4) < 1e-12);
  CHECK(std::abs(s.u_t - 0.8) < 1e-12);
  CHECK(std::abs(s.u_tt + 0.24) < 1e-12);
  CHECK(std::abs(s.eta - 0.128) < 1e-12);
  CHECK(std::abs(s.tau + 0.32) < 1e-12);
  CHECK(std::abs(s.sigma - Complex(0.1024, 0.0512)) < 1e-12);
  CHECK(std::abs(s.sigma_bar - Complex(0.1024, -0.0512)) < 1e-12);
  REQUIRE(s.lambda.has_value());
  CHECK(std::abs(*s.lambda - Complex(0.8, 0.4)) < 1e-12);
  CHECK(std::abs(*s.lambda_bar - Complex(0.8, -0.4)) < 1e-12);
  CHECK(std::abs(s.sigma - s.sigma_bar) == doctest::Approx(0.1024).epsilon(1e-12));
  CHECK(std::abs(invariant_pde_residual(s, 1)) < 1e-12);
}

TEST_CASE("operators on the basic invariants") {
  auto field = noninv("exp(z) + 2*i", 1);
  Point p{1.3, Complex(0.9, 0.2)};
  InvariantSet s = invariants_at(field, p);
  CHECK(std::abs(apply_inv_op(InvDiffOp::DeltaZ, InvariantName::Ut, field, p) - s.eta) < 1e-12);
  CHECK(std::abs(apply_inv_op(InvDiffOp::DeltaZbar, InvariantName::Ut, field, p) - s.eta) < 1e-12);
  CHECK(std::abs(apply_inv_op(InvDiffOp::Y, InvariantName::Ut, field, p) - 1.0) < 1e-12);
  CHECK(std::abs(apply_inv_op(InvDiffOp::Y, InvariantName::Rho, field, p) - *s.lambda) < 1e-12);
  CHECK(std::abs(apply_inv_op(InvDiffOp::Ybar, InvariantName::Rho, field, p) - *s.lambda_bar) < 1e-12);
  CHECK(std::abs(apply_inv_op(InvDiffOp::Delta_t, InvariantName::Rho, field, p) - s.tau) < 1e-12);
  CHECK(std::abs(apply_inv_op(InvDiffOp::Delta_t, InvariantName::T, field, p) - 1.0) < 1e-12);
  CHECK(std::abs(apply_inv_op(InvDiffOp::DeltaZ, InvariantName::T, field, p)) < 1e-12);
}

TEST_CASE("commutator residuals vanish on solutions") {
  const OperatorPair pairs[] = {OperatorPair::DeltaT_DeltaZ, OperatorPair::DeltaT_DeltaZbar,
                                OperatorPair::DeltaZ_DeltaZbar, OperatorPair::DeltaT_Y,
                                OperatorPair::DeltaT_Ybar, OperatorPair::Y_Ybar};
  struct Item {
    const char* b;
    int kappa;
    Point p;
  };
  const Item items[] = {{"z^2 + i", 1, {1.0, Complex(1.0, 0.0)}},
                        {"exp(z) + 2*i", 1, {0.7, Complex(1.2, -0.3)}},
                        {"1/(z + 2) + i", 1, {1.6, Complex(0.6, 0.4)}},
                        {"z^2 - i", -1, {1.1, Complex(0.3, 0.2)}}};
  for (const auto& it : items) {
    auto field = noninv(it.b, it.kappa);
    for (auto pair : pairs) {
      for (auto target : {InvariantName::Ut, InvariantName::Rho}) {
        Complex r = commutator_residual(pair, target, field, it.p, 4);
        CHECK_MESSAGE(std::abs(r) < 1e-7, it.b, " ", to_string(pair), " ", to_string(target));
      }
    }
  }
}

TEST_CASE("commutator residual detects a non-solution") {
  // u = ln(t^2 + 1) + z zbar is not a solution.
  FamilyParams bad;
  bad.b = parse("z", kZ);
  auto inner = noninv("z^2 + i", 1);
  SolutionField broken(Family::NonInvPlus, 1, bad, [inner](const Coordinates& x) {
    return inner.u(x) + 0.3 * x.z * x.zbar * x.t;
  });
  Point p{1.0, Complex(1.0, 0.1)};
  CHECK(std::abs(pde_residual(broken, p)) > 1e-3);
  double worst = 0.0;
  for (auto pair : {OperatorPair::DeltaT_DeltaZ, OperatorPair::DeltaT_Y, OperatorPair::Y_Ybar})
    worst = std::max(worst, std::abs(commutator_residual(pair, InvariantName::Rho, broken, p, 4)));
  CHECK(worst > 1e-4);
}

TEST_CASE("eta vanishes on the flat family") {
  FamilyParams f0;
  f0.C = 1.0;
  auto field = make_solution(Family::F0Plus, f0, 1);
  Point p{1.0, Complex(1.0, 0.0)};
  InvariantSet s = invariants_at(field, p);
  CHECK(std::abs(s.eta) < 1e-14);
  CHECK_FALSE(s.lambda.has_value());
  try {
    (void)apply_inv_op(InvDiffOp::Y, InvariantName::Rho, field, p);
    FAIL("expected EtaVanishes");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EtaVanishes);
  }
}

TEST_CASE("order limits") {
  auto field = noninv("z^2 + i", 1);
  Point p{1.0, Complex(1.0, 0.0)};
  CHECK_THROWS_AS(invariants_at(field, p, 2), Error);
  CHECK_THROWS_AS(InvariantCalculus(field, p, 5), Error);
  CHECK_NOTHROW(InvariantCalculus(field, p, 3));
}
