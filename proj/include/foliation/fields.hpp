#pragma once

// Closed-form solution families of the heavenly equation
//   u_{z zbar} = kappa (e^u)_{tt}
// as jet evaluators.  A field maps coordinate jets (z, zbar, t) to the jet of
// u, so fields compose: a conformal pushforward feeds phi(z~) into an inner
// field.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "foliation/expr.hpp"
#include "foliation/jet.hpp"

namespace foliation {

struct Point {
  double t = 0.0;
  Complex z{};
};

enum class Family {
  F0Plus,
  F0Minus,
  F0General,
  NonInvPlus,
  NonInvMinus,
  GeneralNonInvPlus,
  GeneralNonInvMinus,
  ConfInvariant,
  Liouville,
  Pushforward,
};

std::string_view to_string(Family family) noexcept;

/// Parameters by family:
///   F0Plus/F0Minus:          C
///   F0General:               l > 0, C1, C2, a(z)
///   NonInvPlus/NonInvMinus:  b(z)
///   GeneralNonInv*:          b(z), c(z)
///   ConfInvariant:           f(xi, t), A(z) with A' = 1/a
///   Liouville:               c(z)
struct FamilyParams {
  double C = 0.0;
  double l = 1.0;
  double C1 = 0.0;
  double C2 = 0.0;
  std::optional<Expr> a;
  std::optional<Expr> b;
  std::optional<Expr> c;
  std::optional<Expr> f;
  std::optional<Expr> A;
};

/// Coordinate jets at which a field is evaluated.
struct Coordinates {
  Jet z;
  Jet zbar;
  Jet t;
};

class SolutionField {
 public:
  using Evaluator = std::function<Jet(const Coordinates&)>;

  SolutionField(Family family, int kappa, FamilyParams params, Evaluator evaluator);

  Family family() const noexcept { return family_; }
  int kappa() const noexcept { return kappa_; }
  const FamilyParams& params() const noexcept { return params_; }

  /// Jet of u for arbitrary coordinate jets (all sharing one base point).
  Jet u(const Coordinates& coords) const { return evaluator_(coords); }

  /// Warning text when Im b(z) violates the sign convention for kappa at p.
  std::optional<std::string> sign_convention_warning(const Point& p) const;

 private:
  Family family_;
  int kappa_;
  FamilyParams params_;
  Evaluator evaluator_;
};

/// kappa must be +1 for the *Plus families, -1 for the *Minus families and
/// +-1 for F0General, ConfInvariant and Liouville.
SolutionField make_solution(Family family, FamilyParams params, int kappa);

/// Seed jets of z, zbar = conj(z), t at a physical point.
Coordinates seed_coordinates(const Point& p, int order);

Jet eval_u(const SolutionField& field, const Point& p, int order);

/// u~(z~, zbar~, t) = u(phi(z~), phibar(zbar~), t) + ln(phi'(z~) phibar'(zbar~)),
/// the conformal image of `field`; a solution maps to a solution.
SolutionField conformal_pushforward(const SolutionField& field, const Expr& phi);

/// Residual Gamma_{z zbar} - 2 kappa e^Gamma of a Liouville field.
Complex liouville_residual(const SolutionField& field, const Point& p);

}  // namespace foliation
