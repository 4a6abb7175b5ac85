#pragma once

// The resolving system on functions of (t, u_t, rho), with the invariant
// operators projected on the solution manifold
//   delta = d_t + (kappa rho - u_t^2) d_{u_t} + tau d_rho,
//   Y = d_{u_t} + lambda d_rho,  Ybar = d_{u_t} + lambdabar d_rho.
// Unknowns F, lambda, lambdabar, tau are expressions over (t, ut, rho); all
// derivatives come from 3-variable jets.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "foliation/error.hpp"
#include "foliation/expr.hpp"

namespace foliation {

/// Variable names of every resolving expression, in jet-slot order.
inline const std::vector<std::string>& resolving_variables() {
  static const std::vector<std::string> vars{"t", "ut", "rho"};
  return vars;
}

struct ResolvingFunctions {
  Expr F;
  Expr lambda;
  Expr lambda_bar;  // conjugate partner of lambda, never entered separately
  Expr tau;
  /// 2 kappa rho - ut^2 for ansatz-derived functions; must be >= 0.
  std::optional<Expr> discriminant;
};

struct ResolvingPoint {
  double t = 0.0;
  double ut = 0.0;
  double rho = 0.0;
  int kappa = 1;
};

enum class ProjectedOp { Delta, Y, Ybar };
enum class ResolvingTarget { T, Ut, Rho };

std::string_view to_string(ProjectedOp op) noexcept;
std::string_view to_string(ResolvingTarget target) noexcept;

/// Builds functions with lambda_bar = conjugate(lambda).
ResolvingFunctions make_resolving(Expr F, Expr lambda, Expr tau);

Complex projected_apply(ProjectedOp op, const Expr& target, const ResolvingFunctions& rf, const ResolvingPoint& p);

/// R1, R2, R2bar, R3, R4 in that order.
struct ResolvingResiduals {
  Complex R1, R2, R2bar, R3, R4;
  std::array<Complex, 5> values() const { return {R1, R2, R2bar, R3, R4}; }
};
inline constexpr std::array<const char*, 5> kResidualNames{"R1", "R2", "R2bar", "R3", "R4"};

ResolvingResiduals resolving_residuals(const ResolvingFunctions& rf, const ResolvingPoint& p);

/// Jacobi identity for the commutator representation
///   [delta, Y] = A Y, [delta, Ybar] = Abar Ybar, [Y, Ybar] = c (Y - Ybar),
/// A = kappa lambdabar - 3 ut - delta F / F, c = (ut rho + tau) / F, applied to
/// the targets t, ut, rho.
std::array<Complex, 3> jacobi_residual(const ResolvingFunctions& rf, const ResolvingPoint& p);

/// Actual commutator of the projected vector fields minus the structure
/// combination above, on one target.  Pairs in order (delta,Y), (delta,Ybar),
/// (Y,Ybar).
std::array<Complex, 3> projected_commutator_residual(ResolvingTarget target, const ResolvingFunctions& rf,
                                                     const ResolvingPoint& p);

/// xi = (2 kappa rho - ut^2)/rho^2 and theta = t - (kappa/rho)(ut + sqrt(2 kappa rho - ut^2)).
std::pair<Expr, Expr> characteristic_variables(int kappa);

/// F = rho^3 phi(xi, theta), tau = -ut rho, lambda = kappa ut + i sqrt(2 kappa rho - ut^2).
ResolvingFunctions ansatz_functions(const Expr& phi, int kappa);

/// Adds a constant to one unknown ("F", "tau" or "lambda"; lambda keeps its
/// conjugate partner in step).
ResolvingFunctions perturbed(const ResolvingFunctions& rf, const std::string& name, double shift);

/// Seeded points with t, ut in [-1, 1] and 2 kappa rho - ut^2 in (delta0, 2].
std::vector<ResolvingPoint> sample_resolving_points(int kappa, int count, std::uint64_t seed, double delta0 = 1e-6);

}  // namespace foliation
