#pragma once

#include <complex>
#include <functional>
#include <stdexcept>

namespace adez {
namespace numerics {

using Complex = std::complex<double>;

struct ComplexValueWithError {
    Complex value;
    double abs_error_bound = 0.0;
};

struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Principal-branch log Gamma; relative error < 1e-13 for |s| <= 100.
/// Throws DomainError at nonpositive integers.
ComplexValueWithError log_gamma(Complex s);

inline Complex gamma_fn(Complex s) { return std::exp(log_gamma(s).value); }

/// Upper incomplete Gamma(s, x) = int_x^inf t^{s-1} e^{-t} dt, x > 0 real,
/// complex s. Continued fraction (modified Lentz) for x >= |s| + 2, otherwise
/// lower-function series plus reflection through log_gamma.
ComplexValueWithError upper_incomplete_gamma(Complex s, double x);

enum class RayKind { to_infinity, unit_interval };

/// Adaptive Gauss-Kronrod (G7/K15) integration of f on [a, inf) or on [0, 1].
ComplexValueWithError integrate_ray(const std::function<Complex(double)>& f, double a,
                                    RayKind kind, double tol = 1e-10);

}  // namespace numerics
}  // namespace adez
