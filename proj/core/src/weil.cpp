#include "adez/weil.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

namespace adez {

Complex e_phase(const Rat& x) {
    Rat q = mod2(x);
    if (q == Rat(0)) return {1.0, 0.0};
    if (q == Rat(1, 2)) return {0.0, 1.0};
    if (q == Rat(1)) return {-1.0, 0.0};
    if (q == Rat(3, 2)) return {0.0, -1.0};
    double a = std::numbers::pi * to_double(q);
    return {std::cos(a), std::sin(a)};
}

WeilRep build_weil(const DiscriminantData& data) {
    WeilRep rep;
    rep.l = data.l;
    rep.k = data.k;
    const long long l = data.l;
    rep.rho_s.resize(l, l);
    rep.rho_t = CMatrix::Zero(l, l);
    const double inv_sqrt_l = 1.0 / std::sqrt(static_cast<double>(l));
    for (long long a = 0; a < l; ++a) {
        for (long long b = 0; b < l; ++b) {
            Rat ip = data.inner(data.cosets[a], data.cosets[b]);
            rep.rho_s(a, b) = inv_sqrt_l * e_phase(Rat(-2) * ip);
        }
        rep.rho_t(a, a) = e_phase(-data.inner(data.cosets[a], data.cosets[a]));
    }
    rep.rho_c = rep.rho_s * rep.rho_s;

    rep.c_perm.assign(l, -1);
    for (long long a = 0; a < l; ++a) {
        for (long long b = 0; b < l; ++b) {
            RatVec sum(data.spec.rank);
            for (int i = 0; i < data.spec.rank; ++i) sum[i] = data.cosets[a][i] + data.cosets[b][i];
            if (data.in_root_lattice(sum)) {
                rep.c_perm[a] = static_cast<int>(b);
                break;
            }
        }
        if (rep.c_perm[a] < 0) throw std::logic_error("no inverse coset found; coset data broken");
    }
    return rep;
}

ResidualRecord verify_center(const DiscriminantData& data, const WeilRep& rep) {
    const long long l = rep.l;
    double dev = 0.0;
    for (long long a = 0; a < l; ++a)
        for (long long b = 0; b < l; ++b) {
            double expect = (rep.c_perm[a] == b) ? 1.0 : 0.0;
            dev = std::max(dev, std::abs(rep.rho_c(a, b) - expect));
        }
    ResidualRecord rec{"center_block_form", dev, ""};
    if (data.group_type == GroupType::cyclic) {
        bool neg = true;
        for (long long a = 0; a < l; ++a)
            if (rep.c_perm[a] != static_cast<int>((l - a) % l)) neg = false;
        rec.notes = neg ? "cyclic index negation holds" : "cyclic index negation FAILS";
        if (!neg) rec.residual = std::max(rec.residual, 1.0);
    } else {
        rec.notes = "klein four-group";
    }
    return rec;
}

double Mp2Report::max_residual() const {
    return std::max({s_squared_residual, c_squared_residual, unitarity_residual, zeta_consistency,
                     operator_probe_residual});
}

namespace {

using VectorFn = std::function<CVector(Complex)>;

Complex cpow(Complex base, double expo) { return std::exp(expo * std::log(base)); }

// pi_k(T) F = rho_t F(tau + 1);  pi_k(S) F = tau^{-k} rho_s F(-1/tau), principal branch.
VectorFn apply_T(const WeilRep& rep, VectorFn f) {
    return [&rep, f](Complex tau) { return CVector(rep.rho_t * f(tau + 1.0)); };
}
VectorFn apply_S(const WeilRep& rep, VectorFn f) {
    double k = to_double(rep.k);
    return [&rep, f, k](Complex tau) {
        return CVector(cpow(tau, -k) * (rep.rho_s * f(-1.0 / tau)));
    };
}

}  // namespace

Mp2Report verify_mp2_relations(const WeilRep& rep) {
    Mp2Report rpt;
    const long long l = rep.l;
    CMatrix id = CMatrix::Identity(l, l);
    rpt.s_squared_residual = (rep.rho_s * rep.rho_s - rep.rho_c).cwiseAbs().maxCoeff();
    rpt.c_squared_residual = (rep.rho_c * rep.rho_c - id).cwiseAbs().maxCoeff();
    rpt.unitarity_residual = (rep.rho_s * rep.rho_s.adjoint() - id).cwiseAbs().maxCoeff();

    CMatrix st3 = rep.rho_s * rep.rho_t;
    st3 = st3 * st3 * st3;
    // (rho_s rho_t)^3 is a scalar matrix; the scalar is the signature phase
    // e(-sig/4). The zero coset is always self-inverse, so the (0,0) entry
    // reads it off directly.
    rpt.zeta = st3(0, 0);
    rpt.zeta_consistency = (st3 - rpt.zeta * id).cwiseAbs().maxCoeff();

    // Operator-level probe: (ST)^3 is the identity Moebius map, so three
    // applications of pi_k(S) pi_k(T) return the argument unchanged while the
    // three tau^{-k} prefactors multiply to exactly e(-k) (the sample orbits
    // stay in the upper half-plane, so the principal branches add cleanly).
    // What remains is the scalar matrix zeta * Id, so the probe cross-checks
    // zeta against the matrix product.
    VectorFn probe = [l](Complex tau) {
        CVector v(l);
        for (long long a = 0; a < l; ++a)
            v(a) = Complex(1.0 + a, 0.0) + tau / Complex(2.0 + a, 0.0) + 0.25 * tau * tau;
        return v;
    };
    VectorFn lhs = probe;
    for (int i = 0; i < 3; ++i) lhs = apply_S(rep, apply_T(rep, lhs));
    Complex c_pref = e_phase(-rep.k);
    const Complex samples[3] = {{0.0, 1.0}, {0.0, 2.0}, {0.5, 1.0}};
    double dev = 0.0;
    for (Complex tau : samples) {
        CVector rhs = rpt.zeta * c_pref * probe(tau);
        dev = std::max(dev, (lhs(tau) - rhs).cwiseAbs().maxCoeff());
    }
    rpt.operator_probe_residual = dev;
    return rpt;
}

int tabulated_invariant_dimension(const LatticeSpec& spec) {
    const int n = spec.rank;
    switch (spec.family) {
        case Family::A:
            if (n % 2 == 1) return 0;           // A_1 and A_{2m+1}
            if (n % 4 == 0) return n / 2 + 1;   // palindrome (x0,...,x_{2m},...,x1)
            return n / 2;                        // n = 4m+2: (0,x1,...,-x1)
        case Family::D:
            if (n % 2 == 1) return 0;
            return 4;                            // tabulated as 4 for every D_{2m}
        case Family::E:
            if (n == 6) return 1;
            if (n == 7) return 0;
            return 1;
    }
    return 0;
}

InvariantSubspace c_invariant_subspace(const WeilRep& rep) {
    InvariantSubspace sub;
    sub.eigenvalue = rep.c_eigenphase();
    sub.tabulated_dimension = 0;  // caller fills via classify helpers when spec is known

    const long long l = rep.l;
    Rat q = mod2(rep.k);
    // permutation with perm^2 = id has spectrum in {+1,-1}; half-integer k gives e(k) = +-i
    bool phase_real = (q == Rat(0) || q == Rat(1));
    double sign = (q == Rat(0)) ? 1.0 : -1.0;

    std::ostringstream pattern;
    if (phase_real) {
        std::vector<std::string> names(l, "0");
        for (long long a = 0; a < l; ++a) {
            int b = rep.c_perm[a];
            if (b == a) {
                if (sign > 0) {
                    CVector v = CVector::Zero(l);
                    v(a) = 1.0;
                    sub.basis.push_back(v);
                    names[a] = "x" + std::to_string(a);
                }
            } else if (b > a) {
                CVector v = CVector::Zero(l);
                v(a) = 1.0 / std::sqrt(2.0);
                v(b) = sign / std::sqrt(2.0);
                sub.basis.push_back(v);
                names[a] = "x" + std::to_string(a);
                names[b] = (sign > 0 ? "x" : "-x") + std::to_string(a);
            }
        }
        pattern << "(";
        for (long long a = 0; a < l; ++a) pattern << (a ? "," : "") << names[a];
        pattern << ")";
    } else {
        pattern << "0";
    }
    sub.dimension = static_cast<int>(sub.basis.size());
    sub.closed_form = sub.dimension ? pattern.str() : "0";
    return sub;
}

CMatrix invariant_projector(const InvariantSubspace& sub, long long l) {
    CMatrix p = CMatrix::Zero(l, l);
    for (const auto& v : sub.basis) p += v * v.adjoint();
    return p;
}

std::vector<ClassificationRow> classify_all(int max_rank) {
    std::vector<ClassificationRow> rows;
    auto add = [&](const LatticeSpec& spec) {
        auto data = discriminant_data(spec);
        auto rep = build_weil(data);
        auto sub = c_invariant_subspace(rep);
        int tab = tabulated_invariant_dimension(spec);
        rows.push_back({spec, sub.dimension, tab, sub.dimension == tab, sub.closed_form});
    };
    for (int n = 1; n <= max_rank; ++n) add(LatticeSpec(Family::A, n, max_rank));
    for (int n = 3; n <= max_rank; ++n) add(LatticeSpec(Family::D, n, max_rank));
    for (int n = 6; n <= std::min(8, max_rank); ++n) add(LatticeSpec(Family::E, n, max_rank));
    return rows;
}

}  // namespace adez
