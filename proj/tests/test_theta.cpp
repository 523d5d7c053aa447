#include <doctest.h>

#include <cmath>

#include "adez/theta.hpp"

using namespace adez;

namespace {
const std::vector<Complex> kTaus = {{0.0, 1.0}, {0.0, 2.0}, {0.5, 1.0}, {0.5, 1.5}};
}

TEST_CASE("A1 theta components at xi = 1 match high-precision fixtures") {
    DiscriminantData data = discriminant_data(LatticeSpec(Family::A, 1));
    ThetaEvaluation ev = theta_vector(data, Complex(1.0, 0.0), HalfPlane::rotated_xi, 1e-13);
    // theta_0(1) = 1 + 2 sum exp(-pi m^2), theta_1(1) = 2 sum exp(-pi (2m+1)^2 / 4)
    CHECK(std::abs(ev.values(0) - Complex(1.00373488548773909, 0.0)) < 1e-13);
    CHECK(std::abs(ev.values(1) - Complex(0.415760602596027032, 0.0)) < 1e-13);
    CHECK(ev.tail_bound < 1e-13);
}

TEST_CASE("theta tends to the indicator of the zero coset as xi grows") {
    DiscriminantData data = discriminant_data(LatticeSpec(Family::A, 2));
    ThetaEvaluation ev = theta_vector(data, Complex(8.0, 0.0), HalfPlane::rotated_xi);
    CHECK(std::abs(ev.values(0) - Complex(1.0, 0.0)) < 1e-9);
    CHECK(std::abs(ev.values(1)) < 1e-6);
    CHECK(std::abs(ev.values(2)) < 1e-6);
}

TEST_CASE("certified tail bound dominates the actual truncation error") {
    DiscriminantData data = discriminant_data(LatticeSpec(Family::D, 4));
    auto coarse = shared_spectra(data, Rat(10));
    auto fine = shared_spectra(data, Rat(30));
    for (Complex tau : kTaus) {
        ThetaEvaluation lo = theta_vector(*coarse, tau, HalfPlane::upper_tau);
        ThetaEvaluation hi = theta_vector(*fine, tau, HalfPlane::upper_tau);
        double diff = (lo.values - hi.values).cwiseAbs().maxCoeff();
        CAPTURE(tau.real());
        CHECK(diff <= lo.tail_bound + 1e-15);
    }
}

TEST_CASE("modular transforms close for representatives of every branch") {
    for (const char* name : {"A1", "A2", "A4", "D4", "D5", "E6", "E7"}) {
        DiscriminantData data = discriminant_data(LatticeSpec::parse(name));
        WeilRep rep = build_weil(data);
        CAPTURE(name);
        CHECK(verify_S_transform(data, rep, kTaus).residual < 1e-9);
        CHECK(verify_T_transform(data, rep, kTaus).residual < 1e-10);
    }
}

TEST_CASE("real-axis inversion trick agrees with direct evaluation") {
    DiscriminantData data = discriminant_data(LatticeSpec(Family::A, 3));
    WeilRep rep = build_weil(data);
    for (double xi : {0.25, 0.4, 0.55}) {
        CVector via_s = theta_rotated_real(data, rep, xi);
        ThetaEvaluation direct = theta_vector(data, Complex(xi, 0.0), HalfPlane::rotated_xi, 1e-12);
        CAPTURE(xi);
        CHECK((via_s - direct.values).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("psi drops exactly the constant term") {
    DiscriminantData data = discriminant_data(LatticeSpec(Family::A, 2));
    auto spectra = shared_spectra(data, Rat(20));
    Complex tau(0.3, 1.2);
    ThetaEvaluation t = theta_vector(*spectra, tau, HalfPlane::upper_tau);
    PsiEvaluation p = psi_vector(*spectra, tau, HalfPlane::upper_tau);
    CHECK(std::abs((t.values(0) - 1.0) - p.values(0)) == 0.0);
    CHECK(std::abs(t.values(1) - p.values(1)) == 0.0);
}

TEST_CASE("points on or beyond the boundary are rejected") {
    DiscriminantData data = discriminant_data(LatticeSpec(Family::A, 1));
    CHECK_THROWS_AS(theta_vector(data, Complex(0.5, 0.0), HalfPlane::upper_tau),
                    BoundaryError);
    CHECK_THROWS_AS(theta_vector(data, Complex(-1.0, 0.5), HalfPlane::rotated_xi),
                    BoundaryError);
}

TEST_CASE("invariant theta projections: symmetric patterns survive, antisymmetric vanish") {
    DiscriminantData data = discriminant_data(LatticeSpec(Family::A, 4));
    WeilRep rep = build_weil(data);
    auto combos = invariant_theta(data, rep);
    CHECK(combos.size() == 3);
    for (const auto& c : combos) CHECK_FALSE(c.pattern.empty());

    DiscriminantData d6 = discriminant_data(LatticeSpec(Family::D, 6));
    CHECK(invariant_theta(d6, build_weil(d6)).empty());
}
