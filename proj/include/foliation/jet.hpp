#pragma once

// Truncated multivariate Taylor arithmetic over complex scalars.
//
// A Jet stores the Taylor coefficients (d^|a| f / a!) of a function of three
// formally independent variables at a base point.  In the field code the
// slots are (z, zbar, t); the resolving code reuses them for (t, u_t, rho)
// and the expression evaluator for whatever variables an expression declares.
// Coefficients are kept dense, graded by total degree, so truncating to a
// lower order is a prefix of the coefficient array.

#include <array>
#include <complex>
#include <cstddef>
#include <span>

#include <Eigen/Core>

#include "foliation/error.hpp"

namespace foliation {

using Complex = std::complex<double>;
using Base = std::array<Complex, 3>;

inline constexpr int kNumSlots = 3;
/// Public jets are built with order <= 4; one or two extra orders are needed
/// internally because every derivative lowers the order by one.
inline constexpr int kMaxOrder = 6;
inline constexpr int kMaxCoeffs = 84;  // binomial(kMaxOrder + 3, 3)
inline constexpr double kSingularEps = 1e-12;

struct MultiIndex {
  int dz = 0;
  int dzbar = 0;
  int dt = 0;

  constexpr int total() const noexcept { return dz + dzbar + dt; }
  constexpr int operator[](int slot) const noexcept {
    return slot == 0 ? dz : (slot == 1 ? dzbar : dt);
  }
  friend constexpr bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

/// Number of coefficients of a jet of total order `order`.
constexpr int coefficient_count(int order) noexcept {
  return (order + 1) * (order + 2) * (order + 3) / 6;
}

int flat_index(const MultiIndex& idx);
const MultiIndex& multi_index(int flat);

class Jet {
 public:
  using Coeffs = Eigen::Array<Complex, kMaxCoeffs, 1>;

  Jet() : Jet(0, Base{}) {}
  Jet(int order, const Base& base);

  static Jet constant(Complex value, const Base& base, int order);
  /// The coordinate function of `slot`: value base[slot], unit first derivative.
  static Jet variable(int slot, const Base& base, int order);

  int order() const noexcept { return order_; }
  const Base& base() const noexcept { return base_; }
  Complex value() const noexcept { return coeffs_[0]; }

  Complex coeff(const MultiIndex& idx) const;
  void set_coeff(const MultiIndex& idx, Complex value);
  const Coeffs& coeffs() const noexcept { return coeffs_; }

  Jet truncated(int order) const;
  /// Total derivative with respect to one slot; the result has order - 1.
  Jet derivative(int slot) const;
  /// Coefficient-wise complex conjugate (base point untouched).
  Jet conjugated() const;

  Jet operator-() const;
  Jet& operator+=(const Jet& rhs);
  Jet& operator-=(const Jet& rhs);
  Jet& operator*=(const Jet& rhs);
  Jet& operator/=(const Jet& rhs);
  Jet& operator+=(Complex rhs);
  Jet& operator-=(Complex rhs);
  Jet& operator*=(Complex rhs);
  Jet& operator/=(Complex rhs);

 private:
  void check_base(const Jet& other) const;

  int order_;
  Base base_;
  Coeffs coeffs_;
};

// Binary operations combine jets of different orders by truncating to the
// smaller order; this is what truncated Taylor semantics require once
// derivatives of different depth are mixed.
Jet operator+(Jet lhs, const Jet& rhs);
Jet operator-(Jet lhs, const Jet& rhs);
Jet operator*(const Jet& lhs, const Jet& rhs);
Jet operator/(const Jet& lhs, const Jet& rhs);
Jet operator+(Jet lhs, Complex rhs);
Jet operator+(Complex lhs, Jet rhs);
Jet operator-(Jet lhs, Complex rhs);
Jet operator-(Complex lhs, const Jet& rhs);
Jet operator*(Jet lhs, Complex rhs);
Jet operator*(Complex lhs, Jet rhs);
Jet operator/(Jet lhs, Complex rhs);
Jet operator/(Complex lhs, const Jet& rhs);

Jet multiply(const Jet& a, const Jet& b);
/// Throws DivisionBySingularJet when |b.value()| < eps.
Jet divide(const Jet& a, const Jet& b, double eps = kSingularEps);
Jet reciprocal(const Jet& a, double eps = kSingularEps);

Jet exp(const Jet& a);
/// Principal branch; cut on the closed negative real axis.
Jet log(const Jet& a, double eps = kSingularEps);
Jet sqrt(const Jet& a, double eps = kSingularEps);
/// Principal-branch power exp(p * log(a)).
Jet pow(const Jet& a, Complex exponent, double eps = kSingularEps);
/// Integer power by repeated multiplication; no branch involved.
Jet pow(const Jet& a, int exponent, double eps = kSingularEps);

/// Substitutes `arg` into the univariate Taylor polynomial with coefficients
/// `taylor` expanded about arg.value(): sum_n taylor[n] (arg - arg0)^n.
Jet compose(std::span<const Complex> taylor, const Jet& arg);

/// Partial-derivative value d^|idx| f at the base point.
Complex partial(const Jet& a, const MultiIndex& idx);

double factorial(int n) noexcept;

}  // namespace foliation
