#include "foliation/jet.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace foliation {
namespace {

struct Tables {
  std::array<MultiIndex, kMaxCoeffs> indices{};
  // flat index lookup, indexed [dz][dzbar][dt]
  std::array<std::array<std::array<int, kMaxOrder + 1>, kMaxOrder + 1>, kMaxOrder + 1> lookup{};
  struct Term {
    int lhs;
    int rhs;
    int out;
  };
  // products contributing to a jet of each order
  std::array<std::vector<Term>, kMaxOrder + 1> products;

  Tables() {
    for (auto& plane : lookup)
      for (auto& row : plane) row.fill(-1);
    int n = 0;
    for (int total = 0; total <= kMaxOrder; ++total) {
      for (int i = total; i >= 0; --i) {
        for (int j = total - i; j >= 0; --j) {
          const MultiIndex idx{i, j, total - i - j};
          indices[static_cast<std::size_t>(n)] = idx;
          lookup[i][j][total - i - j] = n;
          ++n;
        }
      }
    }
    for (int order = 0; order <= kMaxOrder; ++order) {
      const int count = coefficient_count(order);
      for (int a = 0; a < count; ++a) {
        for (int b = 0; b < count; ++b) {
          const auto& ia = indices[static_cast<std::size_t>(a)];
          const auto& ib = indices[static_cast<std::size_t>(b)];
          if (ia.total() + ib.total() > order) continue;
          products[static_cast<std::size_t>(order)].push_back(
              {a, b, lookup[ia.dz + ib.dz][ia.dzbar + ib.dzbar][ia.dt + ib.dt]});
        }
      }
    }
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

void check_order(int order) {
  if (order < 0 || order > kMaxOrder) {
    throw Error(ErrorKind::OrderExceeded,
                "jet order " + std::to_string(order) + " outside [0, " +
                    std::to_string(kMaxOrder) + "]");
  }
}

bool on_negative_real_axis(Complex c) {
  return c.real() < 0.0 && std::abs(c.imag()) <= 1e-14 * std::abs(c);
}

std::string describe(Complex c) {
  std::ostringstream os;
  os << c;
  return os.str();
}

void check_branch(const Jet& a, const char* fn, double eps) {
  const Complex a0 = a.value();
  if (std::abs(a0) < eps) {
    throw Error(ErrorKind::DomainError,
                std::string(fn) + " of a jet with vanishing constant term");
  }
  if (on_negative_real_axis(a0)) {
    throw Error(ErrorKind::BranchCutViolation,
                std::string(fn) + " argument " + describe(a0) + " lies on the branch cut");
  }
}

}  // namespace

int flat_index(const MultiIndex& idx) {
  if (idx.dz < 0 || idx.dzbar < 0 || idx.dt < 0 || idx.total() > kMaxOrder) {
    throw Error(ErrorKind::OrderExceeded, "multi-index outside supported range");
  }
  return tables().lookup[idx.dz][idx.dzbar][idx.dt];
}

const MultiIndex& multi_index(int flat) { return tables().indices.at(static_cast<std::size_t>(flat)); }

double factorial(int n) noexcept {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

Jet::Jet(int order, const Base& base) : order_(order), base_(base) {
  check_order(order);
  coeffs_.setZero();
}

Jet Jet::constant(Complex value, const Base& base, int order) {
  Jet j(order, base);
  j.coeffs_[0] = value;
  return j;
}

Jet Jet::variable(int slot, const Base& base, int order) {
  Jet j(order, base);
  j.coeffs_[0] = base[static_cast<std::size_t>(slot)];
  if (order >= 1) {
    MultiIndex idx{};
    if (slot == 0) idx.dz = 1;
    else if (slot == 1) idx.dzbar = 1;
    else idx.dt = 1;
    j.coeffs_[flat_index(idx)] = 1.0;
  }
  return j;
}

Complex Jet::coeff(const MultiIndex& idx) const {
  if (idx.total() > order_) {
    throw Error(ErrorKind::OrderExceeded, "coefficient of order " + std::to_string(idx.total()) +
                                              " requested from a jet of order " +
                                              std::to_string(order_));
  }
  return coeffs_[flat_index(idx)];
}

void Jet::set_coeff(const MultiIndex& idx, Complex value) {
  if (idx.total() > order_) throw Error(ErrorKind::OrderExceeded, "coefficient beyond jet order");
  coeffs_[flat_index(idx)] = value;
}

Jet Jet::truncated(int order) const {
  if (order >= order_) return *this;
  check_order(order);
  Jet out(order, base_);
  const int n = coefficient_count(order);
  out.coeffs_.head(n) = coeffs_.head(n);
  return out;
}

Jet Jet::derivative(int slot) const {
  if (order_ == 0) throw Error(ErrorKind::OrderExceeded, "derivative of an order-0 jet");
  Jet out(order_ - 1, base_);
  const int n = coefficient_count(order_ - 1);
  for (int k = 0; k < n; ++k) {
    MultiIndex up = multi_index(k);
    int power = 0;
    if (slot == 0) power = ++up.dz;
    else if (slot == 1) power = ++up.dzbar;
    else power = ++up.dt;
    out.coeffs_[k] = static_cast<double>(power) * coeffs_[flat_index(up)];
  }
  return out;
}

Jet Jet::conjugated() const {
  Jet out = *this;
  out.coeffs_ = coeffs_.conjugate();
  return out;
}

void Jet::check_base(const Jet& other) const {
  if (base_ != other.base_) {
    throw Error(ErrorKind::BaseMismatch, "jets expanded about different base points");
  }
}

Jet Jet::operator-() const {
  Jet out = *this;
  out.coeffs_ = -coeffs_;
  return out;
}

Jet& Jet::operator+=(const Jet& rhs) {
  check_base(rhs);
  *this = truncated(std::min(order_, rhs.order_));
  const int n = coefficient_count(order_);
  coeffs_.head(n) += rhs.coeffs_.head(n);
  return *this;
}

Jet& Jet::operator-=(const Jet& rhs) {
  check_base(rhs);
  *this = truncated(std::min(order_, rhs.order_));
  const int n = coefficient_count(order_);
  coeffs_.head(n) -= rhs.coeffs_.head(n);
  return *this;
}

Jet& Jet::operator*=(const Jet& rhs) { return *this = multiply(*this, rhs); }
Jet& Jet::operator/=(const Jet& rhs) { return *this = divide(*this, rhs); }

Jet& Jet::operator+=(Complex rhs) {
  coeffs_[0] += rhs;
  return *this;
}

Jet& Jet::operator-=(Complex rhs) {
  coeffs_[0] -= rhs;
  return *this;
}

Jet& Jet::operator*=(Complex rhs) {
  coeffs_ *= rhs;
  return *this;
}

Jet& Jet::operator/=(Complex rhs) {
  coeffs_ /= rhs;
  return *this;
}

Jet operator+(Jet lhs, const Jet& rhs) { return lhs += rhs; }
Jet operator-(Jet lhs, const Jet& rhs) { return lhs -= rhs; }
Jet operator*(const Jet& lhs, const Jet& rhs) { return multiply(lhs, rhs); }
Jet operator/(const Jet& lhs, const Jet& rhs) { return divide(lhs, rhs); }
Jet operator+(Jet lhs, Complex rhs) { return lhs += rhs; }
Jet operator+(Complex lhs, Jet rhs) { return rhs += lhs; }
Jet operator-(Jet lhs, Complex rhs) { return lhs -= rhs; }
Jet operator-(Complex lhs, const Jet& rhs) { return (-rhs) += lhs; }
Jet operator*(Jet lhs, Complex rhs) { return lhs *= rhs; }
Jet operator*(Complex lhs, Jet rhs) { return rhs *= lhs; }
Jet operator/(Jet lhs, Complex rhs) { return lhs /= rhs; }
Jet operator/(Complex lhs, const Jet& rhs) { return reciprocal(rhs) * lhs; }

Jet multiply(const Jet& a, const Jet& b) {
  if (a.base() != b.base()) {
    throw Error(ErrorKind::BaseMismatch, "jets expanded about different base points");
  }
  const int order = std::min(a.order(), b.order());
  Jet out(order, a.base());
  Jet::Coeffs acc;
  acc.setZero();
  const auto& ca = a.coeffs();
  const auto& cb = b.coeffs();
  for (const auto& term : tables().products[static_cast<std::size_t>(order)]) {
    acc[term.out] += ca[term.lhs] * cb[term.rhs];
  }
  for (int k = 0; k < coefficient_count(order); ++k) out.set_coeff(multi_index(k), acc[k]);
  return out;
}

Jet compose(std::span<const Complex> taylor, const Jet& arg) {
  const int order = arg.order();
  Jet shift = arg;
  shift -= arg.value();
  Jet result = Jet::constant(0.0, arg.base(), order);
  const int top = std::min<int>(order, static_cast<int>(taylor.size()) - 1);
  for (int n = top; n >= 0; --n) {
    result = multiply(result, shift);
    result += taylor[static_cast<std::size_t>(n)];
  }
  return result;
}

Jet reciprocal(const Jet& a, double eps) {
  const Complex a0 = a.value();
  if (std::abs(a0) < eps) {
    throw Error(ErrorKind::DivisionBySingularJet,
                "division by a jet with constant term " + describe(a0));
  }
  std::vector<Complex> taylor(static_cast<std::size_t>(a.order() + 1));
  Complex inv = 1.0 / a0;
  Complex term = inv;
  for (std::size_t n = 0; n < taylor.size(); ++n) {
    taylor[n] = term;
    term *= -inv;
  }
  return compose(taylor, a);
}

Jet divide(const Jet& a, const Jet& b, double eps) { return multiply(a, reciprocal(b, eps)); }

Jet exp(const Jet& a) {
  std::vector<Complex> taylor(static_cast<std::size_t>(a.order() + 1));
  const Complex e0 = std::exp(a.value());
  for (std::size_t n = 0; n < taylor.size(); ++n) taylor[n] = e0 / factorial(static_cast<int>(n));
  return compose(taylor, a);
}

Jet log(const Jet& a, double eps) {
  check_branch(a, "ln", eps);
  const Complex a0 = a.value();
  std::vector<Complex> taylor(static_cast<std::size_t>(a.order() + 1));
  taylor[0] = std::log(a0);
  Complex power = 1.0;
  for (std::size_t n = 1; n < taylor.size(); ++n) {
    power /= a0;
    const double sign = (n % 2 == 1) ? 1.0 : -1.0;
    taylor[n] = sign * power / static_cast<double>(n);
  }
  return compose(taylor, a);
}

Jet pow(const Jet& a, Complex exponent, double eps) {
  check_branch(a, "pow", eps);
  const Complex a0 = a.value();
  std::vector<Complex> taylor(static_cast<std::size_t>(a.order() + 1));
  Complex binom = 1.0;
  const Complex lead = std::pow(a0, exponent);
  Complex power = 1.0;
  for (std::size_t n = 0; n < taylor.size(); ++n) {
    taylor[n] = binom * lead * power;
    binom *= (exponent - static_cast<double>(n)) / static_cast<double>(n + 1);
    power /= a0;
  }
  return compose(taylor, a);
}

Jet sqrt(const Jet& a, double eps) {
  if (a.order() == 0 && std::abs(a.value()) < eps) return Jet::constant(0.0, a.base(), 0);
  check_branch(a, "sqrt", eps);
  return pow(a, Complex(0.5, 0.0), eps);
}

Jet pow(const Jet& a, int exponent, double eps) {
  if (exponent < 0) return reciprocal(pow(a, -exponent, eps), eps);
  Jet result = Jet::constant(1.0, a.base(), a.order());
  Jet base = a;
  unsigned e = static_cast<unsigned>(exponent);
  while (e != 0) {
    if (e & 1U) result = multiply(result, base);
    e >>= 1U;
    if (e != 0) base = multiply(base, base);
  }
  return result;
}

Complex partial(const Jet& a, const MultiIndex& idx) {
  return a.coeff(idx) * (factorial(idx.dz) * factorial(idx.dzbar) * factorial(idx.dt));
}

}  // namespace foliation
