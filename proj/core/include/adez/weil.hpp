#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "adez/lattice.hpp"

namespace adez {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// e(x) = exp(i*pi*x) for exact rational x; quarter-period values are exact.
Complex e_phase(const Rat& x);

/// The Weil matrices for the generators S, T and the center C = S^2.
struct WeilRep {
    long long l = 0;
    Rat k;
    CMatrix rho_s;  // Phi / sqrt(l), Phi_ab = e(-2 (w_a, w_b))
    CMatrix rho_t;  // diag e(-(w_a, w_a))
    CMatrix rho_c;  // rho_s^2; numerically a 0/1 permutation matrix
    std::vector<int> c_perm;  // exact permutation: c_perm[a] = b with w_a + w_b in Q

    Complex c_eigenphase() const { return e_phase(k); }  // e(k) = i^rank
};

WeilRep build_weil(const DiscriminantData& data);

struct ResidualRecord {
    std::string name;
    double residual = 0.0;
    std::string notes;
};

/// Checks rho_c against the exact block/permutation form; for cyclic groups also
/// against index negation a+b = 0 (mod l). Returns the max absolute deviation.
ResidualRecord verify_center(const DiscriminantData& data, const WeilRep& rep);

struct Mp2Report {
    double s_squared_residual = 0.0;   // || rho_s^2 - rho_c ||_max
    double c_squared_residual = 0.0;   // || rho_c^2 - I ||_max
    double unitarity_residual = 0.0;   // || rho_s rho_s* - I ||_max
    Complex zeta;                      // (rho_s rho_t)^3 = zeta * Id (signature phase)
    double zeta_consistency = 0.0;     // || (rho_s rho_t)^3 - zeta Id ||_max
    double operator_probe_residual = 0.0;  // (ST)^3 on a probe function vs zeta * e(-k)
    double max_residual() const;
};

Mp2Report verify_mp2_relations(const WeilRep& rep);

/// Eigenspace of the (exact, permutation) center matrix for eigenvalue e(k),
/// built combinatorially from fixed points and 2-cycles.
struct InvariantSubspace {
    int dimension = 0;
    std::vector<CVector> basis;   // orthogonal; unit-normalized
    Complex eigenvalue;           // e(k)
    std::string closed_form;      // e.g. "(x0,x1,x2,x2,x1)" or "0"
    bool agrees_with_table = true;
    int tabulated_dimension = 0;
};

InvariantSubspace c_invariant_subspace(const WeilRep& rep);

/// Classical tabulated dimension of the C-invariant subspace for this spec.
int tabulated_invariant_dimension(const LatticeSpec& spec);

/// Orthogonal projector onto the C-invariant subspace (zero matrix when trivial).
CMatrix invariant_projector(const InvariantSubspace& sub, long long l);

struct ClassificationRow {
    LatticeSpec spec;
    int computed_dimension;
    int tabulated_dimension;
    bool match;
    std::string closed_form;
};

/// Scans every ADE spec up to max_rank and compares against the tabulated dimensions;
/// mismatches are flagged, never silently adopted.
std::vector<ClassificationRow> classify_all(int max_rank);

}  // namespace adez
