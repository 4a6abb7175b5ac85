#include "foliation/fields.hpp"

#include <cmath>
#include <sstream>

namespace foliation {
namespace {

constexpr double kVanishing = 1e-8;

const Expr& require(const std::optional<Expr>& e, const char* name, Family family) {
  if (!e || e->empty()) {
    throw Error(ErrorKind::FamilyParamMismatch,
                std::string(to_string(family)) + " requires parameter " + name);
  }
  return *e;
}

void require_arity(const Expr& e, std::size_t n, const char* name) {
  if (e.arity() != n) {
    throw Error(ErrorKind::FamilyParamMismatch,
                std::string(name) + " must declare " + std::to_string(n) + " variable(s)");
  }
}

void require_kappa(Family family, int kappa, int expected) {
  if (kappa != expected) {
    throw Error(ErrorKind::FamilyParamMismatch,
                std::string(to_string(family)) + " requires kappa = " + std::to_string(expected));
  }
}

/// ln of the product h(z) hbar(zbar), which is positive on the physical slice.
Jet log_modulus_squared(const Jet& h, const Jet& hbar) { return log(h * hbar); }

/// ln((t + b)(t + bbar)) with the vanishing of t + b(z) reported by name.
Jet log_time_factor(const Jet& t, const Jet& b, const Jet& bbar) {
  const Jet lhs = t + b;
  if (std::abs(lhs.value()) < kVanishing) {
    throw Error(ErrorKind::DomainError, "t + b(z) vanishes at the evaluation point");
  }
  return log_modulus_squared(lhs, t + bbar);
}

/// -2 ln(c + cbar) for kappa = 1, -2 ln(c cbar + 1) for kappa = -1.
Jet liouville_denominator(int kappa, const Jet& c, const Jet& cbar) {
  if (kappa == 1) {
    const Jet sum = c + cbar;
    if (sum.value().real() <= kVanishing) {
      throw Error(ErrorKind::DomainError, "c(z) + cbar(zbar) must be positive (Re c > 0)");
    }
    return -2.0 * log(sum);
  }
  return -2.0 * log(c * cbar + 1.0);
}

/// Gamma = ln(c' cbar') - 2 ln(c + cbar) or - 2 ln(c cbar + 1).
Jet liouville_gamma(int kappa, const Expr& c, const Expr& cbar, const Coordinates& x) {
  const Jet cz = apply(c, x.z);
  const Jet czb = apply(cbar, x.zbar);
  const Jet dc = apply(c, x.z, 1);
  const Jet dcb = apply(cbar, x.zbar, 1);
  if (std::abs(dc.value()) < kSingularEps) {
    throw Error(ErrorKind::DomainError, "c'(z) vanishes at the evaluation point");
  }
  return log_modulus_squared(dc, dcb) + liouville_denominator(kappa, cz, czb);
}

}  // namespace

std::string_view to_string(Family family) noexcept {
  switch (family) {
    case Family::F0Plus: return "F0Plus";
    case Family::F0Minus: return "F0Minus";
    case Family::F0General: return "F0General";
    case Family::NonInvPlus: return "NonInvPlus";
    case Family::NonInvMinus: return "NonInvMinus";
    case Family::GeneralNonInvPlus: return "GeneralNonInvPlus";
    case Family::GeneralNonInvMinus: return "GeneralNonInvMinus";
    case Family::ConfInvariant: return "ConfInvariant";
    case Family::Liouville: return "Liouville";
    case Family::Pushforward: return "Pushforward";
  }
  return "Unknown";
}

SolutionField::SolutionField(Family family, int kappa, FamilyParams params, Evaluator evaluator)
    : family_(family), kappa_(kappa), params_(std::move(params)), evaluator_(std::move(evaluator)) {}

std::optional<std::string> SolutionField::sign_convention_warning(const Point& p) const {
  if (!params_.b) return std::nullopt;
  if (family_ != Family::NonInvPlus && family_ != Family::NonInvMinus &&
      family_ != Family::GeneralNonInvPlus && family_ != Family::GeneralNonInvMinus) {
    return std::nullopt;
  }
  const double im = eval_jet1(*params_.b, p.z, 0).value().imag();
  if ((kappa_ == 1 && im < 0.0) || (kappa_ == -1 && im > 0.0)) {
    std::ostringstream os;
    os << "Im b(z) = " << im << " at z = " << p.z << " has the opposite sign to the convention for kappa = "
       << kappa_ << " (equivalent under z <-> zbar)";
    return os.str();
  }
  return std::nullopt;
}

Coordinates seed_coordinates(const Point& p, int order) {
  if (!std::isfinite(p.t) || !std::isfinite(p.z.real()) || !std::isfinite(p.z.imag())) {
    throw Error(ErrorKind::DomainError, "non-finite evaluation point");
  }
  const Base base{p.z, std::conj(p.z), Complex(p.t, 0.0)};
  return {Jet::variable(0, base, order), Jet::variable(1, base, order), Jet::variable(2, base, order)};
}

Jet eval_u(const SolutionField& field, const Point& p, int order) {
  return field.u(seed_coordinates(p, order));
}

SolutionField make_solution(Family family, FamilyParams params, int kappa) {
  if (kappa != 1 && kappa != -1) throw Error(ErrorKind::FamilyParamMismatch, "kappa must be +1 or -1");

  switch (family) {
    case Family::F0Plus:
    case Family::F0Minus: {
      require_kappa(family, kappa, family == Family::F0Plus ? 1 : -1);
      const double C = params.C;
      return SolutionField(family, kappa, params, [C, kappa](const Coordinates& x) {
        const Jet time = x.t * x.t + C;
        if (time.value().real() <= 0.0) throw Error(ErrorKind::DomainError, "t^2 + C must be positive");
        return log(time) + liouville_denominator(kappa, x.z, x.zbar);
      });
    }
    case Family::F0General: {
      const Expr a = require(params.a, "a", family);
      require_arity(a, 1, "a");
      if (!(params.l > 0.0)) throw Error(ErrorKind::FamilyParamMismatch, "separation constant l must be positive");
      const Expr abar = conjugate(a);
      const double l = params.l, C1 = params.C1, C2 = params.C2;
      return SolutionField(family, kappa, params, [=](const Coordinates& x) {
        const Jet time = l * x.t * x.t + C1 * x.t + C2;
        if (time.value().real() <= 0.0) {
          throw Error(ErrorKind::DomainError, "l t^2 + C1 t + C2 must be positive");
        }
        return log(time) + liouville_gamma(kappa, a, abar, x) - std::log(l);
      });
    }
    case Family::NonInvPlus:
    case Family::NonInvMinus: {
      require_kappa(family, kappa, family == Family::NonInvPlus ? 1 : -1);
      const Expr b = require(params.b, "b", family);
      require_arity(b, 1, "b");
      const Expr bbar = conjugate(b);
      return SolutionField(family, kappa, params, [=](const Coordinates& x) {
        return log_time_factor(x.t, apply(b, x.z), apply(bbar, x.zbar)) +
               liouville_denominator(kappa, x.z, x.zbar);
      });
    }
    case Family::GeneralNonInvPlus:
    case Family::GeneralNonInvMinus: {
      require_kappa(family, kappa, family == Family::GeneralNonInvPlus ? 1 : -1);
      const Expr b = require(params.b, "b", family);
      const Expr c = require(params.c, "c", family);
      require_arity(b, 1, "b");
      require_arity(c, 1, "c");
      const Expr bbar = conjugate(b), cbar = conjugate(c);
      return SolutionField(family, kappa, params, [=](const Coordinates& x) {
        return log_time_factor(x.t, apply(b, x.z), apply(bbar, x.zbar)) + liouville_gamma(kappa, c, cbar, x);
      });
    }
    case Family::ConfInvariant: {
      const Expr f = require(params.f, "f", family);
      const Expr A = require(params.A, "A", family);
      require_arity(f, 2, "f");
      require_arity(A, 1, "A");
      const Expr Abar = conjugate(A);
      return SolutionField(family, kappa, params, [=](const Coordinates& x) {
        const Jet xi = Complex(0.0, 1.0) * (apply(A, x.z) - apply(Abar, x.zbar));
        const std::array<Jet, 2> args{xi, x.t};
        const Jet fv = eval(f, args);
        if (fv.value().real() <= 0.0) throw Error(ErrorKind::DomainError, "f(xi, t) must be positive");
        // -ln a - ln abar with a = 1/A'
        return log(fv) + log_modulus_squared(apply(A, x.z, 1), apply(Abar, x.zbar, 1));
      });
    }
    case Family::Liouville: {
      const Expr c = require(params.c, "c", family);
      require_arity(c, 1, "c");
      const Expr cbar = conjugate(c);
      return SolutionField(family, kappa, params,
                           [=](const Coordinates& x) { return liouville_gamma(kappa, c, cbar, x); });
    }
    case Family::Pushforward:
      break;
  }
  throw Error(ErrorKind::FamilyParamMismatch, "family cannot be constructed directly");
}

SolutionField conformal_pushforward(const SolutionField& field, const Expr& phi) {
  if (phi.arity() != 1) throw Error(ErrorKind::FamilyParamMismatch, "phi must declare one variable");
  const Expr phibar = conjugate(phi);
  const auto inner = std::make_shared<const SolutionField>(field);
  FamilyParams params = field.params();
  return SolutionField(Family::Pushforward, field.kappa(), params, [=](const Coordinates& x) {
    const Jet dphi = apply(phi, x.z, 1);
    if (std::abs(dphi.value()) < kSingularEps) {
      throw Error(ErrorKind::SingularMap, "phi'(z) vanishes at the evaluation point");
    }
    const Jet dphibar = apply(phibar, x.zbar, 1);
    const Coordinates mapped{apply(phi, x.z), apply(phibar, x.zbar), x.t};
    return inner->u(mapped) + log_modulus_squared(dphi, dphibar);
  });
}

Complex liouville_residual(const SolutionField& field, const Point& p) {
  const Jet gamma = eval_u(field, p, 2);
  return partial(gamma, {1, 1, 0}) - 2.0 * field.kappa() * std::exp(gamma.value());
}

}  // namespace foliation
