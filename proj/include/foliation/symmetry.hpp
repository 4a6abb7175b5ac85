#pragma once

// Point symmetries of the heavenly equation
//   T = d_t,  G = t d_t + 2 d_u,  X_a = a d_z + abar d_zbar - (a' + abar') d_u
// and the tests built on them: annihilation of the second-order invariants by
// the prolonged X_a, the commutator algebra [X_a, X_b] = X_{ab' - ba'}, the
// infinitesimal invariance criterion and the sigma != sigmabar witness.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "foliation/invariants.hpp"

namespace foliation {

struct GeneratorSpec {
  double alpha = 0.0;
  double beta = 0.0;
  Expr a;  // empty means a = 0
};

enum class X2Target { T, Ut, Utt, Rho, Eta, Uz };

std::string_view to_string(X2Target target) noexcept;

/// Second prolongation of X_a applied to `target` at p.  Zero for the five
/// invariants t, u_t, u_tt, rho, eta; Uz is a non-invariant control.
Complex x2_apply(const Expr& a, X2Target target, const SolutionField& field, const Point& p);

/// [X_a, X_b] - X_{ab'-ba'} applied to the coordinate functions z and u at
/// the test point (z, u).
std::pair<Complex, Complex> algebra_commutator_check(const Expr& a, const Expr& b, Complex z, double u);

/// (alpha + beta t) u_t + a u_z + abar u_zbar - 2 beta + a' + abar'.
Complex invariance_residual(const SolutionField& field, const GeneratorSpec& g, const Point& p);

enum class WitnessVerdict { ConformallyNonInvariant, Inconclusive };

struct WitnessReport {
  WitnessVerdict verdict = WitnessVerdict::Inconclusive;
  double max_gap = 0.0;            // max |sigma - sigmabar|
  std::optional<Point> witness;    // point attaining max_gap
  int evaluated = 0;
  int excluded = 0;                // points outside the domain or with eta = 0
  std::string note;
};

std::string_view to_string(WitnessVerdict verdict) noexcept;

WitnessReport conf_inv_witness(const SolutionField& field, const std::vector<Point>& grid, double tol = 1e-9);

}  // namespace foliation
