#include "foliation/symmetry.hpp"

#include <cmath>

namespace foliation {
namespace {

/// Holomorphic coefficient a and its derivatives up to order n at z; a is
/// zero when the expression is empty.
std::vector<Complex> coefficient_derivatives(const Expr& a, Complex z, int n) {
  if (a.empty()) return std::vector<Complex>(static_cast<std::size_t>(n + 1), Complex{});
  return derivatives(a, z, n);
}

/// Dual number value + d eps carried in slot 0 of an order-1 jet.
Jet dual(Complex value, Complex d) {
  Jet j = Jet::constant(value, Base{}, 1);
  j.set_coeff({1, 0, 0}, d);
  return j;
}

/// X_a F = a F_z + abar F_zbar - (a' + abar') F_u on jets over (z, zbar, u).
Jet conformal_action(const Expr& a, const Expr& abar, const Jet& z, const Jet& zbar, const Jet& F) {
  const Jet az = apply(a, z), abz = apply(abar, zbar);
  const Jet da = apply(a, z, 1), dab = apply(abar, zbar, 1);
  return az * F.derivative(0) + abz * F.derivative(1) - (da + dab) * F.derivative(2);
}

}  // namespace

std::string_view to_string(X2Target target) noexcept {
  switch (target) {
    case X2Target::T: return "t";
    case X2Target::Ut: return "u_t";
    case X2Target::Utt: return "u_tt";
    case X2Target::Rho: return "rho";
    case X2Target::Eta: return "eta";
    case X2Target::Uz: return "u_z";
  }
  return "?";
}

std::string_view to_string(WitnessVerdict verdict) noexcept {
  switch (verdict) {
    case WitnessVerdict::ConformallyNonInvariant: return "ConformallyNonInvariant";
    case WitnessVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

Complex x2_apply(const Expr& a, X2Target target, const SolutionField& field, const Point& p) {
  const Jet u = eval_u(field, p, 2);
  const Complex zbar = std::conj(p.z);
  const auto A = coefficient_derivatives(a, p.z, 3);
  const auto B = coefficient_derivatives(a.empty() ? a : conjugate(a), zbar, 3);

  const Complex u_z = partial(u, {1, 0, 0});
  const Complex u_zt = partial(u, {1, 0, 1});
  const Complex u_zbt = partial(u, {0, 1, 1});
  const Complex u_zzb = partial(u, {1, 1, 0});

  // Prolongation coefficients of X_a; t, u_t and u_tt have none.
  const Jet U = dual(u.value(), -(A[1] + B[1]));
  const Jet Uz = dual(u_z, -(A[2] + A[1] * u_z));
  const Jet Uzt = dual(u_zt, -A[1] * u_zt);
  const Jet Uzbt = dual(u_zbt, -B[1] * u_zbt);
  const Jet Uzzb = dual(u_zzb, -(A[1] + B[1]) * u_zzb);

  switch (target) {
    case X2Target::T:
    case X2Target::Ut:
    case X2Target::Utt:
      return Complex{};
    case X2Target::Rho:
      return (exp(-U) * Uzzb).coeff({1, 0, 0});
    case X2Target::Eta:
      return (exp(-U) * Uzt * Uzbt).coeff({1, 0, 0});
    case X2Target::Uz:
      return Uz.coeff({1, 0, 0});
  }
  return Complex{};
}

std::pair<Complex, Complex> algebra_commutator_check(const Expr& a, const Expr& b, Complex z, double u) {
  if (a.arity() != 1 || b.arity() != 1) throw Error(ErrorKind::ArityMismatch, "generators take one variable");
  const Base base{z, std::conj(z), Complex(u, 0.0)};
  const int order = 2;
  const Jet Z = Jet::variable(0, base, order);
  const Jet Zb = Jet::variable(1, base, order);
  const Jet U = Jet::variable(2, base, order);
  const Expr abar = conjugate(a), bbar = conjugate(b);

  // c = ab' - ba' and its derivative, assembled from jets of a and b.
  const Jet c = apply(a, Z) * apply(b, Z, 1) - apply(b, Z) * apply(a, Z, 1);
  const Jet dc = apply(a, Z) * apply(b, Z, 2) - apply(b, Z) * apply(a, Z, 2);
  const Jet cb = apply(abar, Zb) * apply(bbar, Zb, 1) - apply(bbar, Zb) * apply(abar, Zb, 1);
  const Jet dcb = apply(abar, Zb) * apply(bbar, Zb, 2) - apply(bbar, Zb) * apply(abar, Zb, 2);

  auto residual = [&](const Jet& F) {
    const Jet lhs = conformal_action(a, abar, Z, Zb, conformal_action(b, bbar, Z, Zb, F)) -
                    conformal_action(b, bbar, Z, Zb, conformal_action(a, abar, Z, Zb, F));
    const Jet rhs = c * F.derivative(0) + cb * F.derivative(1) - (dc + dcb) * F.derivative(2);
    return lhs.value() - rhs.value();
  };
  return {residual(Z), residual(U)};
}

Complex invariance_residual(const SolutionField& field, const GeneratorSpec& g, const Point& p) {
  const Jet u = eval_u(field, p, 1);
  const auto A = coefficient_derivatives(g.a, p.z, 1);
  const auto B = coefficient_derivatives(g.a.empty() ? g.a : conjugate(g.a), std::conj(p.z), 1);
  return (g.alpha + g.beta * p.t) * partial(u, {0, 0, 1}) + A[0] * partial(u, {1, 0, 0}) +
         B[0] * partial(u, {0, 1, 0}) - 2.0 * g.beta + A[1] + B[1];
}

WitnessReport conf_inv_witness(const SolutionField& field, const std::vector<Point>& grid, double tol) {
  WitnessReport report;
  int eta_zero = 0;
  for (const Point& p : grid) {
    try {
      const InvariantCalculus calc(field, p, 3);
      if (std::abs(calc.invariant(InvariantName::Eta).value()) < kEtaEps) {
        ++eta_zero;
        ++report.excluded;
        continue;
      }
      const double gap = std::abs(calc.invariant(InvariantName::Sigma).value() -
                                  calc.invariant(InvariantName::SigmaBar).value());
      ++report.evaluated;
      if (!report.witness || gap > report.max_gap) {
        report.max_gap = gap;
        report.witness = p;
      }
    } catch (const Error&) {
      ++report.excluded;
    }
  }
  if (report.evaluated > 0 && report.max_gap > tol) {
    report.verdict = WitnessVerdict::ConformallyNonInvariant;
  } else if (report.evaluated == 0 && eta_zero > 0) {
    report.note = "EtaVanishes: eta = 0 on every admissible grid point, sigma != sigmabar test has no power";
  } else if (report.evaluated == 0) {
    report.note = "no admissible grid point";
  } else {
    report.note = "sigma = sigmabar on the sampled grid; the criterion is sufficient, not necessary";
  }
  return report;
}

}  // namespace foliation
