#include "foliation/classify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include <unsupported/Eigen/LevenbergMarquardt>
#include <unsupported/Eigen/NumericalDiff>

namespace foliation {
namespace {

constexpr double kConstraintTol = 1e-12;
constexpr double kFitBound = 1e3;
const Complex I{0.0, 1.0};

// Small expression builder over the single variable z.
struct E {
  NodePtr n;
};
E lit(Complex v) { return {make_const(v)}; }
E z_var() { return {make_var(0)}; }
E operator+(E a, E b) { return {make_binary(NodeKind::Add, a.n, b.n)}; }
E operator-(E a, E b) { return {make_binary(NodeKind::Sub, a.n, b.n)}; }
E operator*(E a, E b) { return {make_binary(NodeKind::Mul, a.n, b.n)}; }
E operator/(E a, E b) { return {make_binary(NodeKind::Div, a.n, b.n)}; }
E power(E a, E b) { return {make_binary(NodeKind::Pow, a.n, b.n)}; }
E expo(E a) { return {make_unary(NodeKind::Exp, a.n)}; }
E ln(E a) { return {make_unary(NodeKind::Ln, a.n)}; }
Expr to_expr(E e) { return Expr(e.n, {"z"}); }

[[noreturn]] void violation(const TheoremCase& tc, const std::string& what) {
  std::ostringstream os;
  os << "case " << tc.id << " (kappa = " << tc.kappa << "): " << what;
  throw Error(ErrorKind::ConstraintViolation, os.str());
}

bool is_zero(Complex v) { return std::abs(v) <= kConstraintTol; }
bool is_imaginary(Complex v) { return std::abs(v.real()) <= kConstraintTol * std::max(1.0, std::abs(v)); }
bool is_real(Complex v) { return std::abs(v.imag()) <= kConstraintTol * std::max(1.0, std::abs(v)); }

/// Constants of the quadratic generator in the shifted form
/// a = C1 (z + lam)^2 + C2 shared by cases 1-4.
struct Quadratic {
  Complex C1, lam, C2;
  Complex nu() const { return std::sqrt(-C2 / C1); }
};

Quadratic quadratic_constants(const TheoremCase& tc) {
  if (is_zero(tc.C1)) violation(tc, "C1 must be nonzero");
  if (!is_imaginary(tc.lambda)) violation(tc, "lambda must be purely imaginary");
  if (tc.kappa == 1) {
    if (!is_imaginary(tc.C1)) violation(tc, "C1 must be purely imaginary");
    if (!is_imaginary(tc.C2)) violation(tc, "C2 must be purely imaginary");
    return {tc.C1, tc.lambda, tc.C2};
  }
  if (!is_zero(tc.C2) && std::abs(tc.C2 - std::conj(tc.C1)) > kConstraintTol * std::max(1.0, std::abs(tc.C1))) {
    violation(tc, "C2 must equal conj(C1)");
  }
  return {tc.C1, -tc.lambda / (2.0 * tc.C1), std::conj(tc.C1) - tc.lambda * tc.lambda / (4.0 * tc.C1)};
}

/// a(z) of the case as an expression.
Expr generator_coefficient(const TheoremCase& tc) {
  const E z = z_var();
  if (tc.kappa == 1) {
    if (tc.id <= 4) return to_expr(lit(tc.C1) * power(z + lit(tc.lambda), lit(2.0)) + lit(tc.C2));
    if (is_zero(tc.C1)) return to_expr(lit(tc.C2));
    return to_expr(lit(tc.C1) * z + lit(tc.C2));
  }
  if (tc.id <= 4) {
    return to_expr(lit(tc.C1) * power(z, lit(2.0)) - lit(tc.lambda) * z + lit(std::conj(tc.C1)));
  }
  return to_expr(lit(-tc.lambda) * z);
}

void check_beta(const TheoremCase& tc, bool nonzero) {
  if (nonzero && tc.beta == 0.0) violation(tc, "beta must be nonzero");
  if (!nonzero && tc.beta != 0.0) violation(tc, "beta must vanish");
}

void check_linear_kappa_plus(const TheoremCase& tc, bool c1_zero) {
  if (!is_real(tc.C1)) violation(tc, "C1 must be real");
  if (!is_imaginary(tc.C2)) violation(tc, "C2 must be purely imaginary");
  if (c1_zero && !is_zero(tc.C1)) violation(tc, "C1 must vanish");
  if (!c1_zero && is_zero(tc.C1)) violation(tc, "C1 must be nonzero");
}

void check_rotation_kappa_minus(const TheoremCase& tc) {
  if (!is_zero(tc.C1)) violation(tc, "C1 must vanish (then C2 = conj(C1) = 0 and a = -lambda z)");
  if (!is_imaginary(tc.lambda) || is_zero(tc.lambda)) violation(tc, "lambda must be nonzero and purely imaginary");
}

[[noreturn]] void empty_case(const TheoremCase& tc) {
  switch (tc.id) {
    case 3:
    case 4:
      violation(tc, "no admissible constants: C2~ = conj(C1) - lambda^2/(4 C1) vanishes only if "
                    "4|C1|^2 = lambda^2, impossible for imaginary lambda and C1 != 0");
    default:
      violation(tc, "no admissible constants: with C1 -> -lambda the condition C1 = 0 forces a = 0");
  }
}

/// Validates the constants; returns the case-8 extra-generator flag.
bool validate(const TheoremCase& tc) {
  if (tc.kappa != 1 && tc.kappa != -1) violation(tc, "kappa must be +1 or -1");
  if (tc.id < 1 || tc.id > 8) violation(tc, "case id must be in 1..8");
  if (tc.kappa == -1 && (tc.id == 3 || tc.id == 4 || tc.id == 6 || tc.id == 7)) empty_case(tc);
  switch (tc.id) {
    case 1:
    case 3: {
      check_beta(tc, true);
      const Quadratic q = quadratic_constants(tc);
      if (tc.id == 1 && is_zero(q.C2)) violation(tc, "C2 must be nonzero");
      if (tc.id == 3 && !is_zero(q.C2)) violation(tc, "C2 must vanish");
      return false;
    }
    case 2:
    case 4: {
      check_beta(tc, false);
      const Quadratic q = quadratic_constants(tc);
      if (tc.id == 2 && is_zero(q.C2)) violation(tc, "C2 must be nonzero");
      if (tc.id == 4 && !is_zero(q.C2)) violation(tc, "C2 must vanish");
      return false;
    }
    case 5:
      check_beta(tc, true);
      if (tc.kappa == 1) {
        check_linear_kappa_plus(tc, false);
      } else {
        check_rotation_kappa_minus(tc);
      }
      return false;
    case 6:
    case 7:
      check_beta(tc, tc.id == 6);
      check_linear_kappa_plus(tc, true);
      if (is_zero(tc.C2)) violation(tc, "C2 must be nonzero");
      return false;
    case 8: {
      if (tc.kappa == 1) {
        check_linear_kappa_plus(tc, true);
        if (is_zero(tc.C2)) violation(tc, "C2 must be nonzero");
      } else {
        check_rotation_kappa_minus(tc);
      }
      if (tc.beta == 0.0) {
        if (tc.alpha != 0.0) violation(tc, "alpha must vanish when beta = 0");
        return false;
      }
      if (std::abs(tc.C - tc.alpha / tc.beta) > kConstraintTol) {
        violation(tc, "a nonzero beta requires b = alpha/beta");
      }
      return true;
    }
  }
  return false;
}

}  // namespace

CaseInstance theorem_case(const TheoremCase& tc) {
  const bool extra = validate(tc);
  const E z = z_var();
  CaseInstance out;
  switch (tc.id) {
    case 1: {
      const Quadratic q = quadratic_constants(tc);
      const Complex nu = q.nu();
      const Complex gamma = tc.beta / (2.0 * q.C1 * nu);
      const E w = z + lit(q.lam);
      out.b = to_expr(lit(tc.C) * power((w - lit(nu)) / (w + lit(nu)), lit(gamma)) + lit(tc.alpha / tc.beta));
      break;
    }
    case 2: {
      const Quadratic q = quadratic_constants(tc);
      const Complex nu = q.nu();
      const E w = z + lit(q.lam);
      out.b = to_expr(lit(tc.alpha / (2.0 * q.C1 * nu)) * ln((w + lit(nu)) / (w - lit(nu))) + lit(tc.C));
      break;
    }
    case 3: {
      const Quadratic q = quadratic_constants(tc);
      out.b = to_expr(lit(tc.C) * expo(lit(-tc.beta / q.C1) / (z + lit(q.lam))) + lit(tc.alpha / tc.beta));
      break;
    }
    case 4: {
      const Quadratic q = quadratic_constants(tc);
      out.b = to_expr(lit(tc.alpha / q.C1) / (z + lit(q.lam)) + lit(tc.C));
      break;
    }
    case 5:
      if (tc.kappa == 1) {
        out.b = to_expr(lit(tc.C) * power(lit(tc.C1) * z + lit(tc.C2), lit(tc.beta / tc.C1)) +
                        lit(tc.alpha / tc.beta));
      } else {
        out.b = to_expr(lit(tc.C) * power(lit(-tc.lambda) * z, lit(-tc.beta / tc.lambda)) + lit(tc.alpha / tc.beta));
      }
      break;
    case 6:
      out.b = to_expr(lit(tc.C) * expo(lit(tc.beta / tc.C2) * z) + lit(tc.alpha / tc.beta));
      break;
    case 7:
      out.b = to_expr(lit(-tc.alpha / tc.C2) * z + lit(tc.C));
      break;
    case 8:
      out.b = to_expr(lit(tc.C));
      break;
  }
  out.generator = GeneratorSpec{tc.id == 8 ? 0.0 : tc.alpha, tc.id == 8 ? 0.0 : tc.beta, generator_coefficient(tc)};
  if (extra) out.extra = GeneratorSpec{tc.alpha, tc.beta, Expr{}};
  return out;
}

Complex case_value(const TheoremCase& tc, Complex z) {
  switch (tc.id) {
    case 1: {
      const Quadratic q = quadratic_constants(tc);
      const Complex nu = q.nu(), w = z + q.lam;
      return tc.C * std::pow((w - nu) / (w + nu), tc.beta / (2.0 * q.C1 * nu)) + tc.alpha / tc.beta;
    }
    case 2: {
      const Quadratic q = quadratic_constants(tc);
      const Complex nu = q.nu(), w = z + q.lam;
      return tc.alpha / (2.0 * q.C1 * nu) * std::log((w + nu) / (w - nu)) + tc.C;
    }
    case 3: {
      const Quadratic q = quadratic_constants(tc);
      return tc.C * std::exp(-tc.beta / q.C1 / (z + q.lam)) + tc.alpha / tc.beta;
    }
    case 4: {
      const Quadratic q = quadratic_constants(tc);
      return tc.alpha / q.C1 / (z + q.lam) + tc.C;
    }
    case 5:
      if (tc.kappa == 1) return tc.C * std::pow(tc.C1 * z + tc.C2, tc.beta / tc.C1) + tc.alpha / tc.beta;
      return tc.C * std::pow(-tc.lambda * z, -tc.beta / tc.lambda) + tc.alpha / tc.beta;
    case 6: return tc.C * std::exp(tc.beta / tc.C2 * z) + tc.alpha / tc.beta;
    case 7: return -tc.alpha / tc.C2 * z + tc.C;
    default: return tc.C;
  }
}

double verify_case(const TheoremCase& tc, const std::vector<Point>& grid) {
  const CaseInstance inst = theorem_case(tc);
  FamilyParams params;
  params.b = inst.b;
  const SolutionField field =
      make_solution(tc.kappa == 1 ? Family::NonInvPlus : Family::NonInvMinus, params, tc.kappa);
  double worst = 0.0;
  for (const Point& p : grid) {
    worst = std::max(worst, std::abs(invariance_residual(field, inst.generator, p)));
    if (inst.extra) worst = std::max(worst, std::abs(invariance_residual(field, *inst.extra, p)));
  }
  return worst;
}

std::vector<Point> case_grid(int kappa) {
  const std::array<Complex, 3> zs = kappa == 1
                                        ? std::array<Complex, 3>{Complex(1.0, 0.0), Complex(1.1, 0.1), Complex(0.9, -0.1)}
                                        : std::array<Complex, 3>{Complex(0.5, 0.0), Complex(0.55, 0.1), Complex(0.45, -0.1)};
  std::vector<Point> grid;
  for (double t : {0.9, 1.0, 1.1}) {
    for (Complex z : zs) grid.push_back({t, z});
  }
  return grid;
}

TheoremCase random_case(int id, int kappa, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mag(0.5, 1.5), small(0.1, 0.5), unit(-1.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  auto signed_mag = [&] { return coin(rng) ? mag(rng) : -mag(rng); };
  auto signed_small = [&] { return coin(rng) ? small(rng) : -small(rng); };

  TheoremCase tc;
  tc.id = id;
  tc.kappa = kappa;
  tc.C = Complex(unit(rng), unit(rng));
  tc.alpha = unit(rng);
  const bool needs_beta = id == 1 || id == 3 || id == 5 || id == 6;
  tc.beta = needs_beta ? signed_mag() : 0.0;
  if (kappa == -1 && (id == 3 || id == 4 || id == 6 || id == 7)) empty_case(tc);

  if (kappa == 1) {
    switch (id) {
      case 1:
      case 2:
        tc.C1 = I * signed_mag();
        tc.C2 = I * signed_mag();
        tc.lambda = I * signed_small();
        break;
      case 3:
      case 4:
        tc.C1 = I * signed_mag();
        tc.lambda = I * signed_small();
        break;
      case 5:
        tc.C1 = signed_mag();
        tc.C2 = I * signed_small();
        break;
      default:
        tc.C2 = I * signed_mag();
        break;
    }
  } else {
    if (id <= 2) {
      const double angle = std::uniform_real_distribution<double>(-M_PI, M_PI)(rng);
      tc.C1 = std::polar(mag(rng), angle);
      tc.C2 = std::conj(tc.C1);
      tc.lambda = I * signed_mag();
    } else {
      tc.lambda = I * signed_mag();
    }
  }
  if (id == 8) {
    tc.alpha = 0.0;
    tc.beta = 0.0;
  }
  return tc;
}

CaseDrawSummary verify_random_draws(int id, int kappa, int draws, std::uint64_t seed) {
  CaseDrawSummary summary;
  std::mt19937_64 rng(seed);
  const auto grid = case_grid(kappa);
  constexpr int kMaxRedraws = 200;
  while (summary.draws < draws) {
    TheoremCase tc;
    try {
      tc = random_case(id, kappa, rng);
    } catch (const Error& e) {
      summary.failure = e.what();
      return summary;
    }
    try {
      summary.max_residual = std::max(summary.max_residual, verify_case(tc, grid));
      ++summary.draws;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::ConstraintViolation || ++summary.redraws > kMaxRedraws) {
        summary.failure = e.what();
        return summary;
      }
    }
  }
  return summary;
}

std::string verdict_name(const ClassificationVerdict& v) {
  if (std::holds_alternative<InvariantCaseMatched>(v)) return "InvariantCaseMatched";
  if (std::holds_alternative<ConformallyNonInvariant>(v)) return "ConformallyNonInvariant";
  return "Inconclusive";
}

namespace {

/// Real parameterization of each case form.  Scale freedom of the generator
/// is fixed by pinning one constant; imaginary constants carry one real each.
int parameter_count(int id, int kappa) {
  if (kappa == 1) {
    static constexpr int counts[9] = {0, 6, 5, 5, 4, 5, 4, 3, 2};
    return counts[id];
  }
  switch (id) {
    case 1: return 6;
    case 2: return 5;
    case 5: return 4;
    case 8: return 2;
    default: return 0;
  }
}

TheoremCase case_from_parameters(int id, int kappa, const Eigen::VectorXd& x) {
  TheoremCase tc;
  tc.id = id;
  tc.kappa = kappa;
  if (kappa == 1) {
    switch (id) {
      case 1:
        tc.C1 = I, tc.C2 = I * x[0], tc.lambda = I * x[1], tc.beta = x[2], tc.C = {x[3], x[4]}, tc.alpha = x[5] * x[2];
        break;
      case 2:
        tc.C1 = I, tc.C2 = I * x[0], tc.lambda = I * x[1], tc.alpha = x[2], tc.C = {x[3], x[4]};
        break;
      case 3:
        tc.C1 = I, tc.lambda = I * x[0], tc.beta = x[1], tc.C = {x[2], x[3]}, tc.alpha = x[4] * x[1];
        break;
      case 4:
        tc.C1 = I, tc.lambda = I * x[0], tc.alpha = x[1], tc.C = {x[2], x[3]};
        break;
      case 5:
        tc.C1 = 1.0, tc.C2 = I * x[0], tc.beta = x[1], tc.C = {x[2], x[3]}, tc.alpha = x[4] * x[1];
        break;
      case 6:
        tc.C2 = I, tc.beta = x[0], tc.C = {x[1], x[2]}, tc.alpha = x[3] * x[0];
        break;
      case 7:
        tc.C2 = I, tc.alpha = x[0], tc.C = {x[1], x[2]};
        break;
      default:
        tc.C2 = I, tc.C = {x[0], x[1]};
        break;
    }
    return tc;
  }
  switch (id) {
    case 1:
      tc.C1 = std::polar(1.0, x[0]), tc.lambda = I * x[1], tc.beta = x[2], tc.C = {x[3], x[4]}, tc.alpha = x[5] * x[2];
      break;
    case 2:
      tc.C1 = std::polar(1.0, x[0]), tc.lambda = I * x[1], tc.alpha = x[2], tc.C = {x[3], x[4]};
      break;
    case 5:
      tc.lambda = I, tc.beta = x[0], tc.C = {x[1], x[2]}, tc.alpha = x[3] * x[0];
      break;
    default:
      tc.lambda = I, tc.C = {x[0], x[1]};
      break;
  }
  tc.C2 = std::conj(tc.C1);
  return tc;
}

struct FitFunctor : Eigen::DenseFunctor<double> {
  FitFunctor(int id, int kappa, const std::vector<Complex>& zs, const std::vector<Complex>& targets)
      : Eigen::DenseFunctor<double>(parameter_count(id, kappa), static_cast<int>(2 * zs.size())),
        id(id), kappa(kappa), zs(zs), targets(targets) {}

  int operator()(const InputType& x, ValueType& f) const {
    const TheoremCase tc = case_from_parameters(id, kappa, x);
    for (std::size_t k = 0; k < zs.size(); ++k) {
      Complex r{1e3, 1e3};
      if (x.cwiseAbs().maxCoeff() <= 10 * kFitBound) {
        const Complex v = case_value(tc, zs[k]) - targets[k];
        if (std::isfinite(v.real()) && std::isfinite(v.imag())) r = v;
      }
      f[static_cast<Eigen::Index>(2 * k)] = r.real();
      f[static_cast<Eigen::Index>(2 * k + 1)] = r.imag();
    }
    return 0;
  }

  int id, kappa;
  const std::vector<Complex>& zs;
  const std::vector<Complex>& targets;
};

constexpr std::array<int, 8> kMatchOrder{8, 7, 4, 6, 2, 5, 3, 1};
constexpr int kStarts = 24;

}  // namespace

std::optional<CaseFit> fit_case(int id, int kappa, const Expr& b, const std::vector<Complex>& zs) {
  const int n = parameter_count(id, kappa);
  if (n == 0 || 2 * zs.size() < static_cast<std::size_t>(n)) return std::nullopt;
  std::vector<Complex> targets;
  targets.reserve(zs.size());
  for (Complex z : zs) targets.push_back(eval_jet1(b, z, 0).value());

  FitFunctor functor(id, kappa, zs, targets);
  Eigen::NumericalDiff<FitFunctor> numdiff(functor);
  std::mt19937_64 rng(0x5eedULL + static_cast<std::uint64_t>(id * 7 + kappa + 1));
  std::uniform_real_distribution<double> start(-2.0, 2.0);

  std::optional<CaseFit> best;
  for (int s = 0; s < kStarts; ++s) {
    Eigen::VectorXd x(n);
    for (int k = 0; k < n; ++k) x[k] = start(rng);
    Eigen::LevenbergMarquardt<Eigen::NumericalDiff<FitFunctor>> lm(numdiff);
    lm.setMaxfev(400 * (n + 1));
    lm.setXtol(1e-15);
    lm.setFtol(1e-15);
    lm.minimize(x);
    if (!x.allFinite() || x.cwiseAbs().maxCoeff() > kFitBound) continue;
    Eigen::VectorXd f(functor.values());
    functor(x, f);
    const double rms = std::sqrt(f.squaredNorm() / static_cast<double>(zs.size()));
    if (!best || rms < best->rms) best = CaseFit{case_from_parameters(id, kappa, x), rms};
    if (best->rms < 1e-12) break;
  }
  return best;
}

ClassificationVerdict classify_b(const Expr& b, int kappa, const std::vector<Point>& grid, double tol) {
  if (b.arity() != 1) throw Error(ErrorKind::ArityMismatch, "b must declare one variable");
  FamilyParams params;
  params.b = b;
  const SolutionField field = make_solution(kappa == 1 ? Family::NonInvPlus : Family::NonInvMinus, params, kappa);

  // (i) the family must be a solution on the admissible part of the grid
  std::vector<Point> admissible;
  for (const Point& p : grid) {
    try {
      if (std::abs(pde_residual(field, p)) > 1e-6) {
        return Inconclusive{"pde residual is not small; b does not give a solution on the grid"};
      }
      admissible.push_back(p);
    } catch (const Error&) {
    }
  }
  if (admissible.empty()) return Inconclusive{"no admissible grid point"};

  // (ii) exceptional forms
  std::vector<Complex> zs;
  for (const Point& p : admissible) {
    if (std::none_of(zs.begin(), zs.end(), [&](Complex z) { return std::abs(z - p.z) < 1e-14; })) zs.push_back(p.z);
  }
  for (int id : kMatchOrder) {
    const auto fit = fit_case(id, kappa, b, zs);
    if (!fit || fit->rms >= tol) continue;
    try {
      const CaseInstance inst = theorem_case(fit->constants);
      double worst = 0.0;
      for (const Point& p : admissible) worst = std::max(worst, std::abs(invariance_residual(field, inst.generator, p)));
      if (worst < tol) return InvariantCaseMatched{fit->constants, inst.generator, worst, fit->rms};
    } catch (const Error&) {
    }
  }

  // (iii) sigma != sigmabar witness
  const WitnessReport w = conf_inv_witness(field, admissible, 1e-9);
  if (w.verdict == WitnessVerdict::ConformallyNonInvariant) return ConformallyNonInvariant{*w.witness, w.max_gap};
  return Inconclusive{w.note.empty() ? "no exceptional form matched and sigma = sigmabar on the grid" : w.note};
}

Complex automorphic_residual(const Expr& b, const Expr& f, const Expr& w, Complex z) {
  const auto db = derivatives(b, z, 1);
  const auto df = derivatives(f, db[0], 1);
  if (std::abs(df[1]) < kSingularEps) throw Error(ErrorKind::SingularDenominator, "f'(b(z)) vanishes");
  const Complex wz = eval_jet1(w, z, 0).value();
  return db[1] - wz * wz / df[1];
}

AutomorphicCheck automorphic_check(const Expr& b, int kappa, const Point& p, const std::optional<Expr>& f) {
  FamilyParams params;
  params.b = b;
  const SolutionField field = make_solution(kappa == 1 ? Family::NonInvPlus : Family::NonInvMinus, params, kappa);
  const InvariantSet s = invariants_at(field, p, 3);

  const Complex z = p.z, zb = std::conj(p.z);
  const Expr bbar = conjugate(b);
  const auto db = derivatives(b, z, 1);
  const auto dbb = derivatives(bbar, zb, 1);
  const Complex geom = kappa == 1 ? (z + zb) * (z + zb) : -(z * zb + 1.0) * (z * zb + 1.0);

  AutomorphicCheck out;
  out.eta_over_rho3 = s.eta / (s.rho * s.rho * s.rho);
  out.phi_from_b = geom * db[1] * dbb[1] / 8.0;
  if (f) {
    const Expr fbar = conjugate(*f);
    const auto df = derivatives(*f, db[0], 1);
    const auto dfb = derivatives(fbar, dbb[0], 1);
    const Complex num = kappa == 1 ? (df[0] + dfb[0]) * (df[0] + dfb[0]) : -(df[0] * dfb[0] + 1.0) * (df[0] * dfb[0] + 1.0);
    out.phi_from_f = num / (8.0 * df[1] * dfb[1]);
  }
  out.xi = (2.0 * kappa * s.rho - s.u_t * s.u_t) / (s.rho * s.rho);
  out.theta = p.t - (kappa / s.rho) * (s.u_t + std::sqrt(std::max(0.0, 2.0 * kappa * s.rho - s.u_t * s.u_t)));
  out.xi_from_b = (-(db[0] - dbb[0]) * (db[0] - dbb[0]) / 4.0).real();
  out.theta_from_b = (-(db[0] + dbb[0]) / 2.0).real() - std::sqrt(std::max(0.0, out.xi_from_b));
  return out;
}

}  // namespace foliation
