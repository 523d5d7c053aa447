#pragma once

#include "adez/lattice.hpp"
#include "adez/weil.hpp"

namespace adez {

enum class HalfPlane { upper_tau, rotated_xi };

struct BoundaryError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Vector theta values at one point with a certified truncation tail bound.
struct ThetaEvaluation {
    Complex point;
    HalfPlane plane = HalfPlane::upper_tau;
    CVector values;
    Rat truncation_bound;
    double tail_bound = 0.0;
};

/// Theta with the constant term dropped: values[0] decremented by 1.
using PsiEvaluation = ThetaEvaluation;

/// Effective Gaussian decay rate of the series at this point (Im tau or Re xi).
double decay_rate(Complex point, HalfPlane plane);

/// Smallest even truncation bound whose certified tail is below tol at this decay rate.
Rat choose_theta_bound(int rank, double y, double tol);

/// Per-entry count growth constant used in the tail estimate: counts <= K (1+m)^r.
double spectrum_growth_constant(const SpectrumTable& spectra);

/// theta_a(point) summed over a precomputed spectrum table.
ThetaEvaluation theta_vector(const SpectrumTable& spectra, Complex point, HalfPlane plane);

/// Convenience: picks the truncation bound for the requested tolerance, then sums.
ThetaEvaluation theta_vector(const DiscriminantData& data, Complex point, HalfPlane plane,
                             double tol = 1e-11);

PsiEvaluation psi_vector(const SpectrumTable& spectra, Complex point, HalfPlane plane);

/// Theta on the positive real axis, using the S-transform below xi = 0.6 so that
/// small arguments stay cheap. Used by the Mellin quadrature.
CVector theta_rotated_real(const DiscriminantData& data, const WeilRep& rep, double xi,
                           double tol = 1e-11);

/// Residual of Theta(-1/tau) = (-i tau)^k rho_s^{-1} Theta(tau), both sides
/// evaluated independently.
ResidualRecord verify_S_transform(const DiscriminantData& data, const WeilRep& rep,
                                  const std::vector<Complex>& taus, double tol = 1e-11);

/// Residual of Theta(tau + 1) = rho_t^{-1} Theta(tau).
ResidualRecord verify_T_transform(const DiscriminantData& data, const WeilRep& rep,
                                  const std::vector<Complex>& taus, double tol = 1e-11);

struct InvariantThetaCombo {
    CVector direction;        // unit vector x in the C-invariant subspace
    std::string pattern;      // closed-form component pattern
    bool identically_zero;    // antisymmetric patterns kill the symmetric theta vector
};

/// Projection patterns of the theta vector onto the C-invariant subspace;
/// empty when the subspace is trivial.
std::vector<InvariantThetaCombo> invariant_theta(const DiscriminantData& data, const WeilRep& rep);

}  // namespace adez
