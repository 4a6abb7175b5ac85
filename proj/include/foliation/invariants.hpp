#pragma once

// Differential invariants of the conformal subgroup and the operators of
// invariant differentiation
//   delta = D_t,  Delta = e^{-u} u_{zbar t} D_z,  Deltabar = e^{-u} u_{z t} D_zbar,
//   Delta = eta Y,  Deltabar = eta Ybar.
// Every invariant is built as a jet over (z, zbar, t), so applying an operator
// is reading first-order coefficients; no symbolic differentiation happens.

#include <optional>
#include <string_view>

#include "foliation/fields.hpp"

namespace foliation {

enum class InvariantName { T, Ut, Utt, Rho, Eta, Sigma, SigmaBar, Tau, Lambda, LambdaBar };
enum class InvDiffOp { Delta_t, DeltaZ, DeltaZbar, Y, Ybar };
enum class OperatorPair { DeltaT_DeltaZ, DeltaT_DeltaZbar, DeltaZ_DeltaZbar, DeltaT_Y, DeltaT_Ybar, Y_Ybar };

std::string_view to_string(InvariantName name) noexcept;
std::string_view to_string(InvDiffOp op) noexcept;
std::string_view to_string(OperatorPair pair) noexcept;

inline constexpr double kRealityTolerance = 1e-10;
inline constexpr double kEtaEps = 1e-12;

struct InvariantSet {
  double t = 0.0;
  double u_t = 0.0;
  double u_tt = 0.0;
  double rho = 0.0;
  double eta = 0.0;
  Complex sigma{};
  Complex sigma_bar{};
  double tau = 0.0;
  /// Absent where eta vanishes (e.g. the F = 0 families).
  std::optional<Complex> lambda;
  std::optional<Complex> lambda_bar;
};

/// u_{z zbar} - kappa e^u (u_tt + u_t^2) at p.
Complex pde_residual(const SolutionField& field, const Point& p);

/// Needs order >= 3; throws NonReal if a real invariant carries an imaginary
/// part above the reality tolerance.
InvariantSet invariants_at(const SolutionField& field, const Point& p, int order = 4);

/// u_tt - (kappa rho - u_t^2).
double invariant_pde_residual(const InvariantSet& s, int kappa);

Complex apply_inv_op(InvDiffOp op, InvariantName target, const SolutionField& field, const Point& p,
                     int order = 4);

/// [A, B](target) minus the structure-coefficient combination of the
/// commutator algebra.  Vanishes on solutions; needs order 4 for target Rho.
Complex commutator_residual(OperatorPair pair, InvariantName target, const SolutionField& field,
                            const Point& p, int order = 4);

/// Jets of the invariants at a point, with the operators acting on them.
/// Public so other modules can compose invariant expressions directly.
class InvariantCalculus {
 public:
  InvariantCalculus(const SolutionField& field, const Point& p, int order);

  int kappa() const noexcept { return kappa_; }
  const Jet& u() const noexcept { return u_; }

  Jet invariant(InvariantName name) const;

  Jet delta(const Jet& x) const;
  Jet Delta(const Jet& x) const;
  Jet DeltaBar(const Jet& x) const;
  Jet Y(const Jet& x) const;
  Jet Ybar(const Jet& x) const;
  Jet apply(InvDiffOp op, const Jet& x) const;

 private:
  int kappa_;
  Base base_;
  Jet u_;
  Jet emu_;     // e^{-u}
  Jet u_zt_;
  Jet u_zbt_;
  Jet u_t_;
  Jet rho_;
  Jet eta_;
};

}  // namespace foliation
