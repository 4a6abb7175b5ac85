#pragma once

// Finite-difference reference for the jet code.  Works on a real function
// u(x, y, t) with z = x + i y and forms the Wirtinger derivatives
// d_z = (d_x - i d_y)/2 from central differences.  Agreement is ~1e-6, so
// tests compare at a loose tolerance.

#include <cmath>
#include <complex>
#include <functional>

namespace fd {

using C = std::complex<double>;
using RealField = std::function<double(double, double, double)>;

// u = ln((t + b)(t + bbar)) - 2 ln(z + zbar), written without jets.
inline RealField noninv_plus(std::function<C(C)> b) {
  return [b](double x, double y, double t) {
    C bz = b(C(x, y));
    return std::log(std::norm(t + bz)) - 2.0 * std::log(2.0 * x);
  };
}

inline RealField noninv_minus(std::function<C(C)> b) {
  return [b](double x, double y, double t) {
    C bz = b(C(x, y));
    return std::log(std::norm(t + bz)) - 2.0 * std::log(x * x + y * y + 1.0);
  };
}

struct Derivs {
  double u, ux, uy, ut, utt, uxx, uyy, uxt, uyt;
};

inline Derivs derivs(const RealField& u, double x, double y, double t, double h = 1e-4) {
  Derivs d{};
  d.u = u(x, y, t);
  d.ux = (u(x + h, y, t) - u(x - h, y, t)) / (2 * h);
  d.uy = (u(x, y + h, t) - u(x, y - h, t)) / (2 * h);
  d.ut = (u(x, y, t + h) - u(x, y, t - h)) / (2 * h);
  d.utt = (u(x, y, t + h) - 2 * d.u + u(x, y, t - h)) / (h * h);
  d.uxx = (u(x + h, y, t) - 2 * d.u + u(x - h, y, t)) / (h * h);
  d.uyy = (u(x, y + h, t) - 2 * d.u + u(x, y - h, t)) / (h * h);
  d.uxt = (u(x + h, y, t + h) - u(x + h, y, t - h) - u(x - h, y, t + h) + u(x - h, y, t - h)) / (4 * h * h);
  d.uyt = (u(x, y + h, t + h) - u(x, y + h, t - h) - u(x, y - h, t + h) + u(x, y - h, t - h)) / (4 * h * h);
  return d;
}

inline double rho(const RealField& u, double x, double y, double t) {
  Derivs d = derivs(u, x, y, t);
  return std::exp(-d.u) * (d.uxx + d.uyy) / 4.0;
}

inline double eta(const RealField& u, double x, double y, double t) {
  Derivs d = derivs(u, x, y, t);
  C uzt = C(d.uxt, -d.uyt) / 2.0;
  return std::exp(-d.u) * std::norm(uzt);
}

inline C uz(const RealField& u, double x, double y, double t) {
  Derivs d = derivs(u, x, y, t);
  return C(d.ux, -d.uy) / 2.0;
}

// tau = rho_t by a further central difference of rho.
inline double tau(const RealField& u, double x, double y, double t, double h = 1e-3) {
  return (rho(u, x, y, t + h) - rho(u, x, y, t - h)) / (2 * h);
}

}  // namespace fd
