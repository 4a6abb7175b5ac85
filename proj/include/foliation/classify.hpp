#pragma once

// Invariant members of the non-invariant families
//   u = ln((t + b)(t + bbar)) - 2 ln(z + zbar)      (kappa = 1)
//   u = ln((t + b)(t + bbar)) - 2 ln(z zbar + 1)    (kappa = -1)
// The eight exceptional forms of b(z) with their generators, a checker for
// them, and a classifier for a user-supplied b(z).

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "foliation/symmetry.hpp"

namespace foliation {

/// Constants of one exceptional case.
///
/// kappa = 1:  a(z) = C1 (z + lambda)^2 + C2 for cases 1-4 with C1, C2,
///             lambda imaginary; a(z) = C1 z + C2 for cases 5-8 with C1 real
///             and C2 imaginary.
/// kappa = -1: a(z) = C1 z^2 - lambda z + conj(C1) with lambda imaginary;
///             cases 1, 2 use the shifted constants lambda~ = -lambda/(2 C1),
///             C2~ = conj(C1) - lambda^2/(4 C1); cases 5 and 8 use a = -lambda z.
///             C2 is implied and may be left at zero.
struct TheoremCase {
  int id = 8;
  int kappa = 1;
  double alpha = 0.0;
  double beta = 0.0;
  Complex C{};
  Complex C1{};
  Complex C2{};
  Complex lambda{};
};

struct CaseInstance {
  Expr b;
  GeneratorSpec generator;
  /// Case 8 with b = alpha/beta is also invariant under alpha T + beta G.
  std::optional<GeneratorSpec> extra;
};

/// Throws ConstraintViolation naming the failed condition.  For kappa = -1
/// cases 3, 4, 6 and 7 have no admissible constants.
CaseInstance theorem_case(const TheoremCase& tc);

/// b(z) of the case, evaluated directly in complex arithmetic.
Complex case_value(const TheoremCase& tc, Complex z);

/// Max |invariance_residual| of the case's NonInv solution over the grid and
/// over every generator of the case.
double verify_case(const TheoremCase& tc, const std::vector<Point>& grid);

/// 3 x 3 grid in (t, z) inside the domain of the kappa family.
std::vector<Point> case_grid(int kappa);

/// Admissible random constants for the case; throws ConstraintViolation when
/// the case is empty for kappa.
TheoremCase random_case(int id, int kappa, std::mt19937_64& rng);

struct CaseDrawSummary {
  int draws = 0;
  int redraws = 0;     // draws rejected by domain or branch-cut errors
  double max_residual = 0.0;
  std::optional<std::string> failure;  // set when the case cannot be drawn
};

CaseDrawSummary verify_random_draws(int id, int kappa, int draws, std::uint64_t seed);

struct InvariantCaseMatched {
  TheoremCase constants;
  GeneratorSpec generator;
  double max_residual = 0.0;  // invariance residual of the input b
  double fit_rms = 0.0;
};
struct ConformallyNonInvariant {
  Point witness;
  double gap = 0.0;           // |sigma - sigmabar| at the witness
};
struct Inconclusive {
  std::string reason;
};
using ClassificationVerdict = std::variant<InvariantCaseMatched, ConformallyNonInvariant, Inconclusive>;

std::string verdict_name(const ClassificationVerdict& v);

/// (i) solution sanity, (ii) least-squares match against the case forms in
/// the order 8, 7, 4, 6, 2, 5, 3, 1, accepted when the fit RMS and the
/// invariance residual are below `tol`, (iii) the sigma != sigmabar witness.
ClassificationVerdict classify_b(const Expr& b, int kappa, const std::vector<Point>& grid, double tol = 1e-8);

/// Best fit of one case form to b on the z values of the grid.
struct CaseFit {
  TheoremCase constants;
  double rms = 0.0;
};
std::optional<CaseFit> fit_case(int id, int kappa, const Expr& b, const std::vector<Complex>& zs);

/// b'(z) - w(z)^2 / f'(b(z)); throws SingularDenominator when f'(b) = 0.
Complex automorphic_residual(const Expr& b, const Expr& f, const Expr& w, Complex z);

struct AutomorphicCheck {
  Complex eta_over_rho3;        // from the invariants of the solution
  Complex phi_from_b;           // (z+zbar)^2 b' bbar' / 8, or -(z zbar+1)^2 b' bbar' / 8
  std::optional<Complex> phi_from_f;  // [f(b) + fbar]^2/(8 f' fbar'), or -(f fbar + 1)^2/(8 f' fbar')
  double xi = 0.0, xi_from_b = 0.0;
  double theta = 0.0, theta_from_b = 0.0;
};

/// Compares eta/rho^3 and the characteristic variables of the NonInv
/// solution built from b with their closed forms in b, bbar (and f = b^-1).
AutomorphicCheck automorphic_check(const Expr& b, int kappa, const Point& p, const std::optional<Expr>& f = {});

}  // namespace foliation
