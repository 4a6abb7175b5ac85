#include "foliation/resolving.hpp"

#include <cmath>
#include <random>

namespace foliation {
namespace {

constexpr int kOrder = 2;
constexpr double kFEps = 1e-12;

struct VectorField {
  Jet ct, cu, crho;
  Jet operator()(const Jet& x) const {
    return ct * x.derivative(0) + cu * x.derivative(1) + crho * x.derivative(2);
  }
};

/// Jets of the coordinates and the four unknowns at a point.
struct Env {
  int kappa;
  Jet T, U, R;
  Jet F, lam, lamb, tau;
  VectorField delta, Y, Ybar;

  Env(const ResolvingFunctions& rf, const ResolvingPoint& p, int order, bool need_F = true) : kappa(p.kappa) {
    if (p.kappa != 1 && p.kappa != -1) throw Error(ErrorKind::DomainError, "kappa must be +1 or -1");
    const Base base{Complex(p.t), Complex(p.ut), Complex(p.rho)};
    T = Jet::variable(0, base, order);
    U = Jet::variable(1, base, order);
    R = Jet::variable(2, base, order);
    const std::array<Jet, 3> args{T, U, R};
    if (rf.discriminant) {
      const double d = eval(*rf.discriminant, args).value().real();
      if (d < 0.0) {
        throw Error(ErrorKind::NegativeDiscriminant,
                    "2 kappa rho - ut^2 = " + std::to_string(d) + " is negative at the evaluation point");
      }
    }
    F = eval(rf.F, args);
    if (need_F && std::abs(F.value()) < kFEps) throw Error(ErrorKind::FVanishes, "F vanishes at the evaluation point");
    lam = eval(rf.lambda, args);
    lamb = eval(rf.lambda_bar, args);
    tau = eval(rf.tau, args);
    const Jet one = Jet::constant(1.0, base, order), zero = Jet::constant(0.0, base, order);
    delta = {one, static_cast<double>(kappa) * R - U * U, tau};
    Y = {zero, one, lam};
    Ybar = {zero, one, lamb};
  }

  const Jet& coordinate(ResolvingTarget target) const {
    switch (target) {
      case ResolvingTarget::T: return T;
      case ResolvingTarget::Ut: return U;
      case ResolvingTarget::Rho: return R;
    }
    return T;
  }

  // Structure functions of the commutator representation.
  Jet A() const { return kappa * lamb - 3.0 * U - delta(F) / F; }
  Jet Abar() const { return kappa * lam - 3.0 * U - delta(F) / F; }
  Jet c() const { return (U * R + tau) / F; }
};

Expr add_constant(const Expr& e, double shift) {
  return Expr(make_binary(NodeKind::Add, e.root(), make_const(shift)), e.variables());
}

}  // namespace

std::string_view to_string(ProjectedOp op) noexcept {
  switch (op) {
    case ProjectedOp::Delta: return "delta";
    case ProjectedOp::Y: return "Y";
    case ProjectedOp::Ybar: return "Y_bar";
  }
  return "?";
}

std::string_view to_string(ResolvingTarget target) noexcept {
  switch (target) {
    case ResolvingTarget::T: return "t";
    case ResolvingTarget::Ut: return "ut";
    case ResolvingTarget::Rho: return "rho";
  }
  return "?";
}

ResolvingFunctions make_resolving(Expr F, Expr lambda, Expr tau) {
  for (const Expr* e : {&F, &lambda, &tau}) {
    if (e->empty() || e->variables() != resolving_variables()) {
      throw Error(ErrorKind::ArityMismatch, "resolving functions are expressions over (t, ut, rho)");
    }
  }
  ResolvingFunctions rf;
  rf.lambda_bar = conjugate(lambda);
  rf.F = std::move(F);
  rf.lambda = std::move(lambda);
  rf.tau = std::move(tau);
  return rf;
}

Complex projected_apply(ProjectedOp op, const Expr& target, const ResolvingFunctions& rf, const ResolvingPoint& p) {
  const Env env(rf, p, kOrder, false);
  const std::array<Jet, 3> args{env.T, env.U, env.R};
  const Jet x = eval(target, args);
  switch (op) {
    case ProjectedOp::Delta: return env.delta(x).value();
    case ProjectedOp::Y: return env.Y(x).value();
    case ProjectedOp::Ybar: return env.Ybar(x).value();
  }
  return Complex{};
}

ResolvingResiduals resolving_residuals(const ResolvingFunctions& rf, const ResolvingPoint& p) {
  const Env e(rf, p, kOrder);
  const double k = e.kappa;
  const Jet& u = e.U;
  const Jet& rho = e.R;
  const Jet shift = u * rho + e.tau;

  ResolvingResiduals r;
  r.R1 = (e.delta(e.F) - (k * (e.lam + e.lamb) - 5.0 * u) * e.F).value();
  r.R2 = (e.delta(e.lam) - e.Y(e.tau) - 2.0 * u * e.lam + k * e.lam * e.lam).value();
  r.R2bar = (e.delta(e.lamb) - e.Ybar(e.tau) - 2.0 * u * e.lamb + k * e.lamb * e.lamb).value();
  r.R3 = (e.F * (e.Y(e.lamb) - e.Ybar(e.lam)) - shift * (e.lam - e.lamb)).value();
  r.R4 = (e.F * (e.Y(e.lamb) + e.Ybar(e.lam)) + shift * (e.lam + e.lamb) -
          2.0 * k * (e.delta(e.tau) + 2.0 * e.F + 4.0 * u * e.tau + k * rho * rho + 2.0 * u * u * rho))
             .value();
  return r;
}

std::array<Complex, 3> jacobi_residual(const ResolvingFunctions& rf, const ResolvingPoint& p) {
  const Env e(rf, p, kOrder);
  const Jet A = e.A(), Abar = e.Abar(), c = e.c();
  const Jet JY = e.delta(c) - Abar * c + e.Ybar(A);
  const Jet JYbar = -e.delta(c) - e.Y(Abar) + A * c;
  std::array<Complex, 3> out{};
  for (ResolvingTarget target : {ResolvingTarget::T, ResolvingTarget::Ut, ResolvingTarget::Rho}) {
    const Jet& x = e.coordinate(target);
    out[static_cast<std::size_t>(target)] = (JY * e.Y(x) + JYbar * e.Ybar(x)).value();
  }
  return out;
}

std::array<Complex, 3> projected_commutator_residual(ResolvingTarget target, const ResolvingFunctions& rf,
                                                     const ResolvingPoint& p) {
  const Env e(rf, p, kOrder);
  const Jet& x = e.coordinate(target);
  const Jet A = e.A(), Abar = e.Abar(), c = e.c();
  const Jet dY = e.delta(e.Y(x)) - e.Y(e.delta(x)) - A * e.Y(x);
  const Jet dYbar = e.delta(e.Ybar(x)) - e.Ybar(e.delta(x)) - Abar * e.Ybar(x);
  const Jet YYbar = e.Y(e.Ybar(x)) - e.Ybar(e.Y(x)) - c * (e.Y(x) - e.Ybar(x));
  return {dY.value(), dYbar.value(), YYbar.value()};
}

std::pair<Expr, Expr> characteristic_variables(int kappa) {
  if (kappa != 1 && kappa != -1) throw Error(ErrorKind::DomainError, "kappa must be +1 or -1");
  const std::string D = kappa == 1 ? "(2*rho - ut^2)" : "(-2*rho - ut^2)";
  const std::string sign = kappa == 1 ? "-" : "+";
  return {parse(D + "/rho^2", resolving_variables()),
          parse("t " + sign + " (ut + sqrt" + D + ")/rho", resolving_variables())};
}

ResolvingFunctions ansatz_functions(const Expr& phi, int kappa) {
  if (phi.arity() != 2) throw Error(ErrorKind::ArityMismatch, "phi is a function of (xi, theta)");
  const auto [xi, theta] = characteristic_variables(kappa);
  const std::array<Expr, 2> replacements{xi, theta};
  const Expr phi_sub = substitute(phi, replacements, resolving_variables());
  const Expr F(make_binary(NodeKind::Mul, make_binary(NodeKind::Pow, make_var(2), make_const(3.0)), phi_sub.root()),
               resolving_variables());
  const std::string D = kappa == 1 ? "(2*rho - ut^2)" : "(-2*rho - ut^2)";
  const std::string ku = kappa == 1 ? "ut" : "-ut";
  ResolvingFunctions rf = make_resolving(F, parse(ku + " + i*sqrt" + D, resolving_variables()),
                                         parse("-ut*rho", resolving_variables()));
  rf.discriminant = parse(D, resolving_variables());
  return rf;
}

ResolvingFunctions perturbed(const ResolvingFunctions& rf, const std::string& name, double shift) {
  ResolvingFunctions out = rf;
  if (name == "F") {
    out.F = add_constant(rf.F, shift);
  } else if (name == "tau") {
    out.tau = add_constant(rf.tau, shift);
  } else if (name == "lambda") {
    out.lambda = add_constant(rf.lambda, shift);
    out.lambda_bar = conjugate(out.lambda);
  } else {
    throw Error(ErrorKind::DomainError, "unknown resolving function '" + name + "' (expected F, tau or lambda)");
  }
  return out;
}

std::vector<ResolvingPoint> sample_resolving_points(int kappa, int count, std::uint64_t seed, double delta0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> disc(delta0, 2.0);
  std::vector<ResolvingPoint> points;
  points.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) {
    ResolvingPoint p;
    p.kappa = kappa;
    p.t = unit(rng);
    p.ut = unit(rng);
    const double s = disc(rng);
    p.rho = kappa * (s + p.ut * p.ut) / 2.0;
    points.push_back(p);
  }
  return points;
}

}  // namespace foliation
