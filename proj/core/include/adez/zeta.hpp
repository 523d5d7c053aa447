#pragma once

#include "adez/theta.hpp"

namespace adez {

enum class ZetaMethod { direct, continued };

struct PoleError : std::domain_error {
    CVector residue;
    PoleError(const std::string& msg, CVector res) : std::domain_error(msg), residue(std::move(res)) {}
};

struct ZetaEvaluation {
    Complex s;
    CVector zeta;
    ZetaMethod method = ZetaMethod::direct;
    double abs_error = 0.0;
};

/// Dirichlet summation over the enumerated spectrum; requires Re s > k + 1/2.
/// The reported error is a certified bound on the omitted tail.
ZetaEvaluation zeta_direct(const SpectrumTable& spectra, Complex s);

/// Incomplete-gamma continuation pieces. xi = xi_prime + e_term, with
/// xi_prime mixed through rho_s^{-1} (the phase-free form the theta
/// S-transform implies); xi_hat is the literal shifted vector
/// xi - e(-k/2) rho_s e0 / s, which keeps a pole at s = k.
struct XiEvaluation {
    Complex s;
    CVector xi;
    CVector xi_prime;
    CVector e_term;
    CVector xi_hat;
    double abs_error = 0.0;
};

/// Truncation bound that certifies both incomplete-gamma series at this s.
Rat choose_xi_bound(const DiscriminantData& data, Complex s, double tol);

/// Meromorphic continuation, valid in the whole plane minus {0, k}.
XiEvaluation xi_continued(const SpectrumTable& spectra, const WeilRep& rep, Complex s);
XiEvaluation xi_continued(const DiscriminantData& data, const WeilRep& rep, Complex s,
                          double tol = 1e-10);

/// zeta components recovered from the continuation: pi^s / Gamma(s) * xi.
CVector zeta_from_xi(const XiEvaluation& ev);

/// Quadrature of the Mellin integral of the cusp-shifted theta vector against
/// the incomplete-gamma continuation. Samples need Re s > k (the integral
/// diverges at the origin end otherwise).
ResidualRecord mellin_consistency(const DiscriminantData& data, const WeilRep& rep,
                                  const std::vector<Complex>& samples, double tol = 1e-8);

/// Both renderings of the reflection identity are measured at every sample.
/// "verified": Xi(s) = rho_s^{-1} Xi(k-s), the phase-free form that the
/// S-transform of the theta vector actually implies; it holds for every
/// lattice with no obstruction.
/// "literal": Xi(s) = e(-k/2) rho_s Xi(k-s) + (e(-k) rho_c - Id) e0 / s, the
/// phased rendering; its defect equals (1 - e(-k/2)) Xi(s) exactly, so it
/// closes only when e(-k/2) = 1 and the stated obstruction never matches
/// unless it vanishes.
struct FEPointResult {
    Complex s;
    double verified_residual;    // |Xi(s) - rho_s^{-1} Xi(k-s)|, whole vector
    double invariant_residual;   // the same defect projected onto the C-invariant subspace
    double literal_residual;     // |Xi(s) - e(-k/2) rho_s Xi(k-s)|, whole vector
    double obstruction_match;    // distance of the literal defect from (pi_C - Id) e0 / s
    double phase_artifact_match; // distance of the literal defect from (1 - e(-k/2)) Xi(s)
};

struct FEReport {
    LatticeSpec spec;
    int invariant_dimension = 0;
    std::vector<FEPointResult> points;
    double kernel_residual = 0.0;  // kernel reflection G(s,k|xi) = rho_s^{-1} G(k-s,k|xi)
    double pole_term_residual = 0.0;  // pole-term reflection E(s,k) = rho_s^{-1} E(k-s,k)
    double ks_residual = 0.0;       // entire-part reflection Xi'(s) = rho_s^{-1} Xi'(k-s)
    double min_literal_norm = 0.0;  // smallest literal defect norm over the samples
    double max_verified_residual() const;
    double max_invariant_residual() const;
    double max_obstruction_match() const;
    double max_phase_artifact_match() const;
};

FEReport verify_functional_equation(const DiscriminantData& data, const WeilRep& rep,
                                    const std::vector<Complex>& samples, double tol = 1e-10);

/// The exact pole-term vector E(s, k) of the continuation.
CVector e_term_vector(const WeilRep& rep, Complex s);

/// Richardson-extrapolated limit of (s - pole) Xi(s) from one approach direction.
CVector residue_limit(const DiscriminantData& data, const WeilRep& rep, Complex pole,
                      Complex direction, double eps = 4e-3);

struct InvariantZetaCombo {
    CVector direction;
    std::string pattern;
    bool identically_zero;
    double cks_residual;  // || pi_C zeta - zeta || on the projection at a sample s
};

std::vector<InvariantZetaCombo> c_invariant_zeta(const DiscriminantData& data, const WeilRep& rep);

}  // namespace adez
