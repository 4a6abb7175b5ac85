#include "foliation/invariants.hpp"

#include <cmath>
#include <sstream>

namespace foliation {
namespace {

double require_real(Complex value, const char* name) {
  if (std::abs(value.imag()) > kRealityTolerance * std::max(1.0, std::abs(value.real()))) {
    std::ostringstream os;
    os << name << " = " << value << " is not real on the physical slice";
    throw Error(ErrorKind::NonReal, os.str());
  }
  return value.real();
}

}  // namespace

std::string_view to_string(InvariantName name) noexcept {
  switch (name) {
    case InvariantName::T: return "t";
    case InvariantName::Ut: return "u_t";
    case InvariantName::Utt: return "u_tt";
    case InvariantName::Rho: return "rho";
    case InvariantName::Eta: return "eta";
    case InvariantName::Sigma: return "sigma";
    case InvariantName::SigmaBar: return "sigma_bar";
    case InvariantName::Tau: return "tau";
    case InvariantName::Lambda: return "lambda";
    case InvariantName::LambdaBar: return "lambda_bar";
  }
  return "?";
}

std::string_view to_string(InvDiffOp op) noexcept {
  switch (op) {
    case InvDiffOp::Delta_t: return "delta";
    case InvDiffOp::DeltaZ: return "Delta";
    case InvDiffOp::DeltaZbar: return "Delta_bar";
    case InvDiffOp::Y: return "Y";
    case InvDiffOp::Ybar: return "Y_bar";
  }
  return "?";
}

std::string_view to_string(OperatorPair pair) noexcept {
  switch (pair) {
    case OperatorPair::DeltaT_DeltaZ: return "[delta,Delta]";
    case OperatorPair::DeltaT_DeltaZbar: return "[delta,Delta_bar]";
    case OperatorPair::DeltaZ_DeltaZbar: return "[Delta,Delta_bar]";
    case OperatorPair::DeltaT_Y: return "[delta,Y]";
    case OperatorPair::DeltaT_Ybar: return "[delta,Y_bar]";
    case OperatorPair::Y_Ybar: return "[Y,Y_bar]";
  }
  return "?";
}

InvariantCalculus::InvariantCalculus(const SolutionField& field, const Point& p, int order)
    : kappa_(field.kappa()) {
  if (order < 2 || order > 4) {
    throw Error(ErrorKind::OrderExceeded, "invariant calculus needs jet order in [2, 4]");
  }
  u_ = eval_u(field, p, order);
  base_ = u_.base();
  emu_ = exp(-u_);
  u_zt_ = u_.derivative(0).derivative(2);
  u_zbt_ = u_.derivative(1).derivative(2);
  u_t_ = u_.derivative(2);
  rho_ = emu_ * u_.derivative(0).derivative(1);
  eta_ = emu_ * u_zt_ * u_zbt_;
}

Jet InvariantCalculus::delta(const Jet& x) const { return x.derivative(2); }
Jet InvariantCalculus::Delta(const Jet& x) const { return emu_ * u_zbt_ * x.derivative(0); }
Jet InvariantCalculus::DeltaBar(const Jet& x) const { return emu_ * u_zt_ * x.derivative(1); }

Jet InvariantCalculus::Y(const Jet& x) const {
  if (std::abs(eta_.value()) < kEtaEps) throw Error(ErrorKind::EtaVanishes, "Y is undefined where eta = 0");
  return Delta(x) / eta_;
}

Jet InvariantCalculus::Ybar(const Jet& x) const {
  if (std::abs(eta_.value()) < kEtaEps) throw Error(ErrorKind::EtaVanishes, "Ybar is undefined where eta = 0");
  return DeltaBar(x) / eta_;
}

Jet InvariantCalculus::apply(InvDiffOp op, const Jet& x) const {
  switch (op) {
    case InvDiffOp::Delta_t: return delta(x);
    case InvDiffOp::DeltaZ: return Delta(x);
    case InvDiffOp::DeltaZbar: return DeltaBar(x);
    case InvDiffOp::Y: return Y(x);
    case InvDiffOp::Ybar: return Ybar(x);
  }
  throw Error(ErrorKind::DomainError, "unknown operator");
}

Jet InvariantCalculus::invariant(InvariantName name) const {
  switch (name) {
    case InvariantName::T: return Jet::variable(2, base_, u_.order());
    case InvariantName::Ut: return u_t_;
    case InvariantName::Utt: return u_t_.derivative(2);
    case InvariantName::Rho: return rho_;
    case InvariantName::Eta: return eta_;
    case InvariantName::Sigma: return Delta(rho_);
    case InvariantName::SigmaBar: return DeltaBar(rho_);
    case InvariantName::Tau: return delta(rho_);
    case InvariantName::Lambda:
      if (std::abs(eta_.value()) < kEtaEps) throw Error(ErrorKind::EtaVanishes, "lambda is undefined where eta = 0");
      return Delta(rho_) / eta_;
    case InvariantName::LambdaBar:
      if (std::abs(eta_.value()) < kEtaEps) throw Error(ErrorKind::EtaVanishes, "lambda_bar is undefined where eta = 0");
      return DeltaBar(rho_) / eta_;
  }
  throw Error(ErrorKind::DomainError, "unknown invariant");
}

Complex pde_residual(const SolutionField& field, const Point& p) {
  const Jet u = eval_u(field, p, 2);
  const Complex ut = partial(u, {0, 0, 1});
  return partial(u, {1, 1, 0}) - static_cast<double>(field.kappa()) * std::exp(u.value()) *
                                     (partial(u, {0, 0, 2}) + ut * ut);
}

InvariantSet invariants_at(const SolutionField& field, const Point& p, int order) {
  if (order < 3) throw Error(ErrorKind::OrderExceeded, "third-order invariants need jet order >= 3");
  const InvariantCalculus calc(field, p, order);
  InvariantSet s;
  s.t = p.t;
  s.u_t = require_real(calc.invariant(InvariantName::Ut).value(), "u_t");
  s.u_tt = require_real(calc.invariant(InvariantName::Utt).value(), "u_tt");
  s.rho = require_real(calc.invariant(InvariantName::Rho).value(), "rho");
  s.eta = require_real(calc.invariant(InvariantName::Eta).value(), "eta");
  s.tau = require_real(calc.invariant(InvariantName::Tau).value(), "tau");
  s.sigma = calc.invariant(InvariantName::Sigma).value();
  s.sigma_bar = calc.invariant(InvariantName::SigmaBar).value();
  if (std::abs(s.eta) >= kEtaEps) {
    s.lambda = s.sigma / s.eta;
    s.lambda_bar = s.sigma_bar / s.eta;
  }
  return s;
}

double invariant_pde_residual(const InvariantSet& s, int kappa) {
  return s.u_tt - (kappa * s.rho - s.u_t * s.u_t);
}

Complex apply_inv_op(InvDiffOp op, InvariantName target, const SolutionField& field, const Point& p, int order) {
  const InvariantCalculus calc(field, p, order);
  return calc.apply(op, calc.invariant(target)).value();
}

Complex commutator_residual(OperatorPair pair, InvariantName target, const SolutionField& field, const Point& p,
                            int order) {
  const InvariantCalculus calc(field, p, order);
  const Jet x = calc.invariant(target);
  const double kappa = calc.kappa();
  const Jet eta = calc.invariant(InvariantName::Eta);
  const Jet ut = calc.invariant(InvariantName::Ut);
  const Jet rho = calc.invariant(InvariantName::Rho);
  const Jet tau = calc.invariant(InvariantName::Tau);

  auto commutator = [&](InvDiffOp a, InvDiffOp b) {
    return calc.apply(a, calc.apply(b, x)) - calc.apply(b, calc.apply(a, x));
  };

  Jet lhs, rhs;
  switch (pair) {
    case OperatorPair::DeltaT_DeltaZ: {
      lhs = commutator(InvDiffOp::Delta_t, InvDiffOp::DeltaZ);
      const Jet coeff = kappa * calc.invariant(InvariantName::SigmaBar) / eta - 3.0 * ut;
      rhs = coeff * calc.Delta(x);
      break;
    }
    case OperatorPair::DeltaT_DeltaZbar: {
      lhs = commutator(InvDiffOp::Delta_t, InvDiffOp::DeltaZbar);
      const Jet coeff = kappa * calc.invariant(InvariantName::Sigma) / eta - 3.0 * ut;
      rhs = coeff * calc.DeltaBar(x);
      break;
    }
    case OperatorPair::DeltaZ_DeltaZbar: {
      lhs = commutator(InvDiffOp::DeltaZ, InvDiffOp::DeltaZbar);
      const Jet shift = ut * rho + tau;
      rhs = (calc.Delta(eta) / eta - shift) * calc.DeltaBar(x) - (calc.DeltaBar(eta) / eta - shift) * calc.Delta(x);
      break;
    }
    case OperatorPair::DeltaT_Y: {
      lhs = commutator(InvDiffOp::Delta_t, InvDiffOp::Y);
      const Jet coeff = kappa * calc.invariant(InvariantName::LambdaBar) - 3.0 * ut - calc.delta(eta) / eta;
      rhs = coeff * calc.Y(x);
      break;
    }
    case OperatorPair::DeltaT_Ybar: {
      lhs = commutator(InvDiffOp::Delta_t, InvDiffOp::Ybar);
      const Jet coeff = kappa * calc.invariant(InvariantName::Lambda) - 3.0 * ut - calc.delta(eta) / eta;
      rhs = coeff * calc.Ybar(x);
      break;
    }
    case OperatorPair::Y_Ybar: {
      lhs = commutator(InvDiffOp::Y, InvDiffOp::Ybar);
      rhs = (ut * rho + tau) / eta * (calc.Y(x) - calc.Ybar(x));
      break;
    }
  }
  return lhs.value() - rhs.value();
}

}  // namespace foliation
