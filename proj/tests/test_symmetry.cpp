#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "foliation/symmetry.hpp"

using namespace foliation;

namespace {

const std::vector<std::string> kZ{"z"};

SolutionField noninv(const char* b, int kappa) {
  FamilyParams p;
  p.b = parse(b, kZ);
  return make_solution(kappa == 1 ? Family::NonInvPlus : Family::NonInvMinus, p, kappa);
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return "(" + os.str() + ")";
}

// Random polynomial of degree <= 4 with complex coefficients.
Expr random_poly(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::uniform_int_distribution<int> D(0, 4);
  const int deg = D(rng);
  std::string s;
  for (int k = 0; k <= deg; ++k) {
    if (k) s += " + ";
    s += "(" + fmt(U(rng)) + " + " + fmt(U(rng)) + "*i)*z^" + std::to_string(k);
  }
  return parse(s, kZ);
}

}  // namespace

TEST_CASE("second prolongation annihilates the invariants") {
  std::mt19937_64 rng(2024);
  auto field = noninv("z^2 + i", 1);
  Point p{1.0, Complex(1.0, 0.0)};
  for (int n = 0; n < 10; ++n) {
    Expr a = random_poly(rng);
    for (auto target : {X2Target::T, X2Target::Ut, X2Target::Utt, X2Target::Rho, X2Target::Eta})
      CHECK_MESSAGE(std::abs(x2_apply(a, target, field, p)) < 1e-10, a.to_string(), " ", to_string(target));
  }
}

TEST_CASE("u_z is not annihilated") {
  auto field = noninv("z^2 + i", 1);
  Point p{1.0, Complex(1.0, 0.0)};
  CHECK(std::abs(x2_apply(parse("z^2 + i*z", kZ), X2Target::Uz, field, p)) > 0.1);
}

TEST_CASE("commutator algebra of X_a") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> U(-0.5, 0.5);
  for (int n = 0; n < 10; ++n) {
    Expr a = random_poly(rng), b = random_poly(rng);
    Complex z(0.5 + U(rng), U(rng));
    double u = U(rng);
    auto [rz, ru] = algebra_commutator_check(a, b, z, u);
    CHECK(std::abs(rz) < 1e-10);
    CHECK(std::abs(ru) < 1e-10);
    auto [sz, su] = algebra_commutator_check(b, a, z, u);
    CHECK(std::abs(sz + rz) < 1e-15);
    CHECK(std::abs(su + ru) < 1e-15);
  }
  auto [ez, eu] = algebra_commutator_check(parse("exp(z)", kZ), parse("z^2", kZ), Complex(0.4, 0.2), 0.1);
  CHECK(std::abs(ez) < 1e-10);
  CHECK(std::abs(eu) < 1e-10);
}

TEST_CASE("infinitesimal invariance criterion") {
  // F0Plus with C = 0 is fixed by scaling z.
  FamilyParams f0;
  auto flat = make_solution(Family::F0Plus, f0, 1);
  GeneratorSpec scale{0.0, 0.0, parse("z", kZ)};
  GeneratorSpec time{1.0, 0.0, {}};
  Point p{1.2, Complex(0.8, 0.3)};
  CHECK(std::abs(invariance_residual(flat, scale, p)) < 1e-12);
  CHECK(std::abs(invariance_residual(flat, time, p)) > 0.1);

  // b constant: translation of z along the imaginary axis keeps u.
  auto shift = noninv("2*i", 1);
  GeneratorSpec im{0.0, 0.0, parse("i", kZ)};
  CHECK(std::abs(invariance_residual(shift, im, p)) < 1e-12);

  auto generic = noninv("z^2 + i", 1);
  CHECK(std::abs(invariance_residual(generic, scale, p)) > 1e-3);
}

TEST_CASE("witness separates non-invariant solutions") {
  std::vector<Point> grid;
  for (double t : {0.8, 1.2})
    for (double x : {0.7, 1.3})
      for (double y : {-0.2, 0.3}) grid.push_back({t, Complex(x, y)});

  for (const char* b : {"z^2 + i", "exp(z) + 2*i", "1/(z + 2) + i"}) {
    WitnessReport r = conf_inv_witness(noninv(b, 1), grid);
    CHECK_MESSAGE(r.verdict == WitnessVerdict::ConformallyNonInvariant, b);
    CHECK(r.max_gap > 1e-6);
    CHECK(r.witness.has_value());
    CHECK(r.evaluated == 8);
  }

  // sigma = sigmabar for every f on the conformally invariant family.
  FamilyParams conf;
  conf.f = parse("exp(t)*(xi + 2)", {"xi", "t"});
  conf.A = parse("z", kZ);
  std::vector<Point> lower;
  for (auto p : grid) lower.push_back({p.t, Complex(p.z.real(), -std::abs(p.z.imag()) - 0.1)});
  WitnessReport c = conf_inv_witness(make_solution(Family::ConfInvariant, conf, 1), lower);
  CHECK(c.verdict == WitnessVerdict::Inconclusive);
  CHECK(c.max_gap < 1e-9);

  // eta = 0 everywhere on F0.
  FamilyParams f0;
  f0.C = 1.0;
  WitnessReport z = conf_inv_witness(make_solution(Family::F0Plus, f0, 1), grid);
  CHECK(z.verdict == WitnessVerdict::Inconclusive);
  CHECK(z.excluded == 8);
  CHECK(z.note.find("EtaVanishes") != std::string::npos);
}
