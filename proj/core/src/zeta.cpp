#include "adez/zeta.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "adez/numerics.hpp"

namespace adez {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPoleRadius = 1e-6;

Complex cpow_real_base(double base, Complex expo) {
    return std::exp(expo * std::log(base));
}

CVector unit_e0(long long l) {
    CVector v = CVector::Zero(l);
    v(0) = 1.0;
    return v;
}

// Cumulative-count growth constant: N_a(m) <= K (1+m)^k over the table prefix.
double cumulative_growth_constant(const SpectrumTable& spectra) {
    double k = to_double(spectra.data.k);
    double best = 1.0;
    for (const auto& sp : spectra.per_coset) {
        long long cum = 0;
        for (const auto& [m, c] : sp.entries) {
            cum += c;
            best = std::max(best, static_cast<double>(cum) / std::pow(1.0 + to_double(m), k));
        }
    }
    return 2.0 * best;
}

// Bound on sum_{m > B, spacing 2} K (1+m)^r (pi m)^{-1} e^{-pi m} * cf, the
// incomplete-gamma series tail, with cf = 1 / (1 - max(sigma-1, 0) / (pi B)).
double incgamma_series_tail(double first_omitted, int rank, double sigma, double growth) {
    double m1 = std::max(first_omitted, 0.5);
    double x = kPi * m1;
    double shift = std::max(sigma - 1.0, 0.0);
    if (x <= shift + 1.0) return HUGE_VAL;
    double cf = 1.0 / (1.0 - shift / x);
    double t1 = growth * std::pow(1.0 + m1, rank) * std::exp(-x) / x * cf;
    double q = std::pow((3.0 + m1) / (1.0 + m1), rank) * std::exp(-2.0 * kPi);
    if (q >= 0.99) return HUGE_VAL;
    return t1 / (1.0 - q);
}

void check_poles(Complex s, const WeilRep& rep, double k) {
    if (std::abs(s) < kPoleRadius)
        throw PoleError("xi_continued: s within 1e-6 of the pole at 0 (residue -e0)",
                        -unit_e0(rep.l));
    if (std::abs(s - k) < kPoleRadius)
        throw PoleError("xi_continued: s within 1e-6 of the pole at k (residue rho_s^{-1} e0)",
                        rep.rho_s.adjoint().col(0));
}

}  // namespace

ZetaEvaluation zeta_direct(const SpectrumTable& spectra, Complex s) {
    const double k = to_double(spectra.data.k);
    const double sigma = s.real();
    if (!(sigma > k + 0.5))
        throw numerics::DomainError("zeta_direct requires Re s > k + 1/2");

    const long long l = spectra.data.l;
    ZetaEvaluation ev;
    ev.s = s;
    ev.method = ZetaMethod::direct;
    ev.zeta = CVector::Zero(l);
    for (long long a = 0; a < l; ++a) {
        Complex sum = 0.0;
        for (const auto& [norm, count] : spectra.per_coset[a].entries)
            sum += static_cast<double>(count) * cpow_real_base(to_double(norm), -s);
        ev.zeta(a) = sum;
    }
    // Stieltjes tail: |sum_{m>B}| <= |s| K 2^k B^{k-sigma} / (sigma - k)
    const double growth = cumulative_growth_constant(spectra);
    const double b = to_double(spectra.bound);
    ev.abs_error = std::abs(s) * growth * std::pow(2.0, k) * std::pow(b, k - sigma) / (sigma - k);
    return ev;
}

Rat choose_xi_bound(const DiscriminantData& data, Complex s, double tol) {
    const double k = to_double(data.k);
    const double kGuess = 1e3;
    const double s1 = s.real(), s2 = k - s.real();
    for (long long b = 4;; b += 2) {
        double fb = static_cast<double>(b);
        if (incgamma_series_tail(fb, data.spec.rank, s1, kGuess) < 0.05 * tol &&
            incgamma_series_tail(fb, data.spec.rank, s2, kGuess) < 0.05 * tol)
            return Rat(b);
        if (b > 4'000'000)
            throw numerics::ConvergenceError("xi truncation bound cannot reach the tolerance");
    }
}

XiEvaluation xi_continued(const SpectrumTable& spectra, const WeilRep& rep, Complex s) {
    const double k = to_double(spectra.data.k);
    check_poles(s, rep, k);

    const long long l = spectra.data.l;
    const Complex ks = Complex(k, 0.0) - s;

    CVector head = CVector::Zero(l);   // sum r_a(m) (pi m)^{-s} Gamma(s, pi m)
    CVector mixed = CVector::Zero(l);  // same with s -> k - s, pre rho_s^{-1} mixing
    double head_err = 0.0, mixed_err = 0.0;
    for (long long a = 0; a < l; ++a) {
        Complex ha = 0.0, ma = 0.0;
        for (const auto& [norm, count] : spectra.per_coset[a].entries) {
            double x = kPi * to_double(norm);
            double cnt = static_cast<double>(count);
            auto g1 = numerics::upper_incomplete_gamma(s, x);
            auto g2 = numerics::upper_incomplete_gamma(ks, x);
            Complex p1 = cpow_real_base(x, -s);
            Complex p2 = cpow_real_base(x, -ks);
            ha += cnt * p1 * g1.value;
            ma += cnt * p2 * g2.value;
            head_err += cnt * std::abs(p1) * g1.abs_error_bound;
            mixed_err += cnt * std::abs(p2) * g2.abs_error_bound;
        }
        head(a) = ha;
        mixed(a) = ma;
    }

    const int r = spectra.data.spec.rank;
    const double b = to_double(spectra.bound);
    const double growth = spectrum_growth_constant(spectra);
    head_err += incgamma_series_tail(b, r, s.real(), growth);
    mixed_err += incgamma_series_tail(b, r, k - s.real(), growth);

    XiEvaluation ev;
    ev.s = s;
    ev.xi_prime = head + rep.rho_s.adjoint() * mixed;
    ev.e_term = e_term_vector(rep, s);
    ev.xi = ev.xi_prime + ev.e_term;
    ev.xi_hat = ev.xi - (e_phase(-rep.k / 2) / s) * rep.rho_s.col(0);
    ev.abs_error = head_err + std::sqrt(static_cast<double>(l)) * mixed_err;
    return ev;
}

XiEvaluation xi_continued(const DiscriminantData& data, const WeilRep& rep, Complex s,
                          double tol) {
    check_poles(s, rep, to_double(data.k));
    Rat bound = choose_xi_bound(data, s, tol);
    auto spectra = shared_spectra(data, bound);
    return xi_continued(*spectra, rep, s);
}

CVector zeta_from_xi(const XiEvaluation& ev) {
    Complex scale = std::exp(ev.s * std::log(kPi) - numerics::log_gamma(ev.s).value);
    return scale * ev.xi;
}

CVector e_term_vector(const WeilRep& rep, Complex s) {
    double k = to_double(rep.k);
    return (rep.rho_s.adjoint().col(0) / (s - k)) - unit_e0(rep.l) / s;
}

ResidualRecord mellin_consistency(const DiscriminantData& data, const WeilRep& rep,
                                  const std::vector<Complex>& samples, double tol) {
    const double k = to_double(data.k);
    const long long l = data.l;

    std::map<double, CVector> cache;
    auto psi = [&](double xi) -> const CVector& {
        auto it = cache.find(xi);
        if (it == cache.end()) {
            CVector v = theta_rotated_real(data, rep, xi);
            v(0) -= 1.0;
            it = cache.emplace(xi, std::move(v)).first;
        }
        return it->second;
    };

    double worst = 0.0;
    for (Complex s : samples) {
        if (!(s.real() > k + 0.05))
            throw numerics::DomainError(
                "mellin_consistency requires Re s > k: every component of the shifted theta "
                "vector grows like xi^{-k} at the origin");
        XiEvaluation target = xi_continued(data, rep, s, 0.1 * tol);
        for (long long a = 0; a < l; ++a) {
            auto f = [&](double xi) { return cpow_real_base(xi, s - 1.0) * psi(xi)(a); };
            Complex quad = numerics::integrate_ray(f, 0.0, numerics::RayKind::unit_interval, tol).value +
                           numerics::integrate_ray(f, 1.0, numerics::RayKind::to_infinity, tol).value;
            worst = std::max(worst, std::abs(quad - target.xi(a)));
        }
    }
    return {"mellin_consistency", worst, "quadrature of the Mellin integral vs continuation"};
}

double FEReport::max_verified_residual() const {
    double m = 0.0;
    for (const auto& p : points) m = std::max(m, p.verified_residual);
    return m;
}

double FEReport::max_invariant_residual() const {
    double m = 0.0;
    for (const auto& p : points) m = std::max(m, p.invariant_residual);
    return m;
}

double FEReport::max_obstruction_match() const {
    double m = 0.0;
    for (const auto& p : points) m = std::max(m, p.obstruction_match);
    return m;
}

double FEReport::max_phase_artifact_match() const {
    double m = 0.0;
    for (const auto& p : points) m = std::max(m, p.phase_artifact_match);
    return m;
}

FEReport verify_functional_equation(const DiscriminantData& data, const WeilRep& rep,
                                    const std::vector<Complex>& samples, double tol) {
    const double k = to_double(data.k);
    const long long l = data.l;
    const Complex phase = e_phase(-rep.k / 2);
    const Complex ek_inv = e_phase(-rep.k);
    const CVector e0 = unit_e0(l);
    const CVector obstruction = ek_inv * rep.rho_c.col(0) - e0;  // (pi_C - Id) e0
    const CMatrix rho_inv = rep.rho_s.adjoint();

    auto sub = c_invariant_subspace(rep);
    CMatrix proj = invariant_projector(sub, l);

    FEReport rep_out;
    rep_out.spec = data.spec;
    rep_out.invariant_dimension = sub.dimension;
    rep_out.min_literal_norm = HUGE_VAL;

    double ks_worst = 0.0, l42_worst = 0.0;
    for (Complex s : samples) {
        XiEvaluation xs = xi_continued(data, rep, s, tol);
        XiEvaluation xk = xi_continued(data, rep, Complex(k, 0.0) - s, tol);

        CVector verified = xs.xi - rho_inv * xk.xi;
        CVector literal = xs.xi - phase * (rep.rho_s * xk.xi);

        FEPointResult pt;
        pt.s = s;
        pt.verified_residual = verified.cwiseAbs().maxCoeff();
        pt.invariant_residual = (proj * verified).cwiseAbs().maxCoeff();
        pt.literal_residual = literal.cwiseAbs().maxCoeff();
        pt.obstruction_match = (literal - obstruction / s).cwiseAbs().maxCoeff();
        pt.phase_artifact_match = (literal - (1.0 - phase) * xs.xi).cwiseAbs().maxCoeff();
        rep_out.points.push_back(pt);
        rep_out.min_literal_norm = std::min(rep_out.min_literal_norm, pt.literal_residual);

        CVector ks_defect = xs.xi_prime - rho_inv * xk.xi_prime;
        ks_worst = std::max(ks_worst, ks_defect.cwiseAbs().maxCoeff());

        CVector e_defect = xs.e_term - rho_inv * xk.e_term;
        l42_worst = std::max(l42_worst, e_defect.cwiseAbs().maxCoeff());
    }
    rep_out.ks_residual = ks_worst;
    rep_out.pole_term_residual = l42_worst;

    // Kernel reflection identity at two real arguments; exact because the
    // center fixes the symmetric theta vector.
    double l41_worst = 0.0;
    const Complex s0 = samples.empty() ? Complex(0.75 * k + 0.6, 0.3) : samples.front();
    for (double xi : {1.0, 2.0}) {
        CVector theta = theta_vector(data, Complex(xi, 0.0), HalfPlane::rotated_xi).values;
        CVector psi = theta - e0;
        auto kernel = [&](Complex s) -> CVector {
            return cpow_real_base(xi, k - s) * (rho_inv * psi) + cpow_real_base(xi, s) * psi;
        };
        CVector g_defect = kernel(s0) - rho_inv * kernel(Complex(k, 0.0) - s0);
        l41_worst = std::max(l41_worst, g_defect.cwiseAbs().maxCoeff());
    }
    rep_out.kernel_residual = l41_worst;
    return rep_out;
}

CVector residue_limit(const DiscriminantData& data, const WeilRep& rep, Complex pole,
                      Complex direction, double eps) {
    Complex dir = direction / std::abs(direction);
    auto f = [&](double e) -> CVector {
        Complex s = pole + dir * e;
        XiEvaluation ev = xi_continued(data, rep, s, 1e-12);
        return (s - pole) * ev.xi;
    };
    // Richardson via Lagrange-at-0 over nodes eps, eps/2, eps/4.
    return (1.0 / 3.0) * f(eps) - 2.0 * f(0.5 * eps) + (8.0 / 3.0) * f(0.25 * eps);
}

std::vector<InvariantZetaCombo> c_invariant_zeta(const DiscriminantData& data, const WeilRep& rep) {
    auto sub = c_invariant_subspace(rep);
    std::vector<InvariantZetaCombo> combos;
    if (sub.dimension == 0) return combos;

    const double k = to_double(data.k);
    const Complex s0(0.6 * k + 0.9, 0.4);  // generic sample away from both poles
    XiEvaluation ev = xi_continued(data, rep, s0, 1e-10);
    const Complex ek_inv = e_phase(-rep.k);
    bool antisym = std::abs(sub.eigenvalue - Complex(-1.0, 0.0)) < 1e-15;

    for (const auto& v : sub.basis) {
        CVector pv = v * v.dot(ev.xi);  // Eigen dot conjugates the left factor
        double res = (ek_inv * (rep.rho_c * pv) - pv).cwiseAbs().maxCoeff();
        combos.push_back({v, sub.closed_form, antisym, res});
    }
    return combos;
}

}  // namespace adez
