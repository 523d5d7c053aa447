#include "adez/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <numeric>

namespace adez {

LatticeSpec::LatticeSpec(Family f, int r, int max_rank) : family(f), rank(r) {
    bool ok = false;
    switch (f) {
        case Family::A: ok = r >= 1; break;
        case Family::D: ok = r >= 3; break;
        case Family::E: ok = r == 6 || r == 7 || r == 8; break;
    }
    if (!ok)
        throw std::invalid_argument("invalid rank " + std::to_string(r) + " for family " +
                                    std::string(1, family_char(f)) +
                                    " (A: n>=1, D: n>=3, E: n in {6,7,8})");
    if (r > max_rank)
        throw std::invalid_argument("rank " + std::to_string(r) + " exceeds the rank ceiling " +
                                    std::to_string(max_rank));
}

LatticeSpec LatticeSpec::parse(const std::string& s, int max_rank) {
    if (s.size() < 2)
        throw std::invalid_argument("bad lattice spec '" + s + "': expected A<n>, D<n> or E<n>");
    Family f;
    switch (s[0]) {
        case 'A': case 'a': f = Family::A; break;
        case 'D': case 'd': f = Family::D; break;
        case 'E': case 'e': f = Family::E; break;
        default:
            throw std::invalid_argument("bad lattice family '" + std::string(1, s[0]) +
                                        "': valid families are A, D, E");
    }
    int r;
    try {
        size_t pos = 0;
        r = std::stoi(s.substr(1), &pos);
        if (pos != s.size() - 1) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rank in lattice spec '" + s + "'");
    }
    return LatticeSpec(f, r, max_rank);
}

GramMatrix cartan_matrix(const LatticeSpec& spec) {
    int r = spec.rank;
    GramMatrix g(r, std::vector<long long>(r, 0));
    for (int i = 0; i < r; ++i) g[i][i] = 2;
    auto link = [&](int i, int j) { g[i - 1][j - 1] = -1; g[j - 1][i - 1] = -1; };
    switch (spec.family) {
        case Family::A:
            for (int i = 1; i < r; ++i) link(i, i + 1);
            break;
        case Family::D:
            for (int i = 1; i <= r - 2; ++i) link(i, i + 1);
            link(r - 2, r);
            break;
        case Family::E:
            // Bourbaki: chain 1-3-4-5-6(-7-8), node 2 hangs off node 4.
            link(1, 3); link(3, 4); link(4, 5); link(5, 6); link(2, 4);
            if (r >= 7) link(6, 7);
            if (r == 8) link(7, 8);
            break;
    }
    return g;
}

Rat rat_det(RatMat m) {
    const size_t n = m.size();
    Rat det(1);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col] == Rat(0)) ++piv;
        if (piv == n) return Rat(0);
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (size_t row = col + 1; row < n; ++row) {
            if (m[row][col] == Rat(0)) continue;
            Rat f = m[row][col] / m[col][col];
            for (size_t j = col; j < n; ++j) m[row][j] -= f * m[col][j];
        }
    }
    return det;
}

RatMat rat_inverse(const RatMat& in) {
    const size_t n = in.size();
    RatMat m = in;
    RatMat inv(n, RatVec(n, Rat(0)));
    for (size_t i = 0; i < n; ++i) inv[i][i] = Rat(1);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col] == Rat(0)) ++piv;
        if (piv == n) throw std::invalid_argument("singular matrix");
        std::swap(m[piv], m[col]);
        std::swap(inv[piv], inv[col]);
        Rat p = m[col][col];
        for (size_t j = 0; j < n; ++j) {
            m[col][j] /= p;
            inv[col][j] /= p;
        }
        for (size_t row = 0; row < n; ++row) {
            if (row == col || m[row][col] == Rat(0)) continue;
            Rat f = m[row][col];
            for (size_t j = 0; j < n; ++j) {
                m[row][j] -= f * m[col][j];
                inv[row][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

RatMat fundamental_weights(const LatticeSpec& spec) {
    GramMatrix g = cartan_matrix(spec);
    RatMat gr(spec.rank, RatVec(spec.rank));
    for (int i = 0; i < spec.rank; ++i)
        for (int j = 0; j < spec.rank; ++j) gr[i][j] = Rat(g[i][j]);
    return rat_inverse(gr);
}

Rat DiscriminantData::inner(const RatVec& u, const RatVec& v) const {
    Rat acc(0);
    for (size_t i = 0; i < u.size(); ++i) {
        Rat row(0);
        for (size_t j = 0; j < v.size(); ++j) row += Rat(gram[i][j]) * v[j];
        acc += u[i] * row;
    }
    return acc;
}

bool DiscriminantData::in_root_lattice(const RatVec& v) const {
    return std::all_of(v.begin(), v.end(), [](const Rat& q) { return q.denominator() == 1; });
}

DiscriminantData discriminant_data(const LatticeSpec& spec) {
    DiscriminantData d;
    d.spec = spec;
    d.gram = cartan_matrix(spec);
    d.weight_gram = fundamental_weights(spec);
    {
        RatMat gr(spec.rank, RatVec(spec.rank));
        for (int i = 0; i < spec.rank; ++i)
            for (int j = 0; j < spec.rank; ++j) gr[i][j] = Rat(d.gram[i][j]);
        Rat det = rat_det(gr);
        d.l = det.numerator();  // even positive definite, so a positive integer
    }
    d.k = Rat(spec.rank, 2);
    const int n = spec.rank;
    auto weight = [&](int bourbaki_index) { return d.weight_gram[bourbaki_index - 1]; };

    d.cosets.push_back(RatVec(n, Rat(0)));
    d.coset_weight_index.push_back(0);
    d.group_type = GroupType::cyclic;

    switch (spec.family) {
        case Family::A:
            // Z_{n+1}: class a is represented by the a-th fundamental weight,
            // and [w_a] = a [w_1].
            for (int a = 1; a <= n; ++a) {
                d.cosets.push_back(weight(a));
                d.coset_weight_index.push_back(a);
            }
            break;
        case Family::D:
            if (n % 2 == 0) {
                // Klein four-group; fixed order (0, vector, left spinor, right spinor).
                d.group_type = GroupType::klein_four;
                d.cosets.push_back(weight(1));
                d.coset_weight_index.push_back(1);
                d.cosets.push_back(weight(n - 1));
                d.coset_weight_index.push_back(n - 1);
                d.cosets.push_back(weight(n));
                d.coset_weight_index.push_back(n);
            } else {
                // Z_4 generated by a spinor class g: classes (0, g, 2g, 3g) with
                // 2g the vector class and 3g the opposite-chirality spinor.
                d.cosets.push_back(weight(n));
                d.coset_weight_index.push_back(n);
                d.cosets.push_back(weight(1));
                d.coset_weight_index.push_back(1);
                d.cosets.push_back(weight(n - 1));
                d.coset_weight_index.push_back(n - 1);
            }
            break;
        case Family::E:
            if (n == 6) {
                // Z_3: 2[w_1] = [w_6].
                d.cosets.push_back(weight(1));
                d.coset_weight_index.push_back(1);
                d.cosets.push_back(weight(6));
                d.coset_weight_index.push_back(6);
            } else if (n == 7) {
                d.cosets.push_back(weight(7));
                d.coset_weight_index.push_back(7);
            }
            // E8: only the zero class.
            break;
    }

    if (static_cast<long long>(d.cosets.size()) != d.l)
        throw std::logic_error("coset count disagrees with det(Gram) for " + spec.name());

    // Cyclic ordering sanity: class a must equal a * class 1 modulo Q.
    if (d.group_type == GroupType::cyclic && d.l > 1) {
        for (long long a = 2; a < d.l; ++a) {
            RatVec diff(n);
            for (int i = 0; i < n; ++i) diff[i] = Rat(a) * d.cosets[1][i] - d.cosets[a][i];
            if (!d.in_root_lattice(diff))
                throw std::logic_error("cyclic coset ordering broken for " + spec.name());
        }
    }
    return d;
}

long long NormSpectrum::total_count() const {
    long long t = 0;
    for (auto& [m, c] : entries) t += c;
    return t;
}

Rat NormSpectrum::min_norm() const {
    if (entries.empty()) throw std::out_of_range("empty norm spectrum");
    return entries.front().first;
}

long long default_max_vectors() {
    if (const char* env = std::getenv("ADEZ_MAX_VECTORS")) {
        long long v = std::atoll(env);
        if (v > 0) return v;
    }
    return 10'000'000;
}

namespace {

// Fincke-Pohst style depth-first enumeration. The interval bounds at each
// level are computed in double precision and widened; every candidate leaf is
// accepted or rejected by an exact integer evaluation of the scaled quadratic
// form, so the spectrum keys and counts are exact.
struct Enumerator {
    int r;
    std::vector<std::vector<double>> q;    // q[i][i] diag, q[i][j] (j>i) off-diag of the FP decomposition
    std::vector<double> w;                 // coset shift, double
    std::vector<__int128> c_scaled;        // d * w, integers
    std::vector<std::vector<long long>> gram;
    long long d;                           // common denominator of the shift
    __int128 bound_scaled_num;             // accept iff form_scaled * bound.den <= bound.num * d^2
    long long bound_den;
    double bound_d;
    long long max_vectors;
    long long accepted = 0;
    std::map<long long, long long>* hist;  // scaled integer norm -> count

    std::vector<long long> gamma;

    void run() {
        gamma.assign(r, 0);
        descend(r - 1, 0.0);
    }

    void descend(int level, double partial) {
        // offset of this coordinate given choices at deeper levels
        double off = w[level];
        for (int j = level + 1; j < r; ++j) off += q[level][j] * (gamma[j] + w[j]);
        double budget = bound_d + 1e-6 - partial;
        if (budget < 0) budget = 0;
        double halfw = std::sqrt(budget / q[level][level]);
        long long lo = static_cast<long long>(std::ceil(-halfw - off - 1e-9));
        long long hi = static_cast<long long>(std::floor(halfw - off + 1e-9));
        for (long long g = lo; g <= hi; ++g) {
            gamma[level] = g;
            if (level == 0) {
                accept_leaf();
            } else {
                double z = g + off;
                descend(level - 1, partial + q[level][level] * z * z);
            }
        }
        gamma[level] = 0;
    }

    void accept_leaf() {
        // exact scaled norm: (d*gamma + c)^T G (d*gamma + c)
        __int128 form = 0;
        for (int i = 0; i < r; ++i) {
            __int128 ui = static_cast<__int128>(d) * gamma[i] + c_scaled[i];
            __int128 row = 0;
            for (int j = 0; j < r; ++j)
                row += static_cast<__int128>(gram[i][j]) *
                       (static_cast<__int128>(d) * gamma[j] + c_scaled[j]);
            form += ui * row;
        }
        if (form * bound_den > bound_scaled_num) return;
        if (++accepted > max_vectors)
            throw EnumerationLimitError(
                "enumeration exceeded the vector-count ceiling (" + std::to_string(max_vectors) +
                "); raise ADEZ_MAX_VECTORS or lower the bound");
        (*hist)[static_cast<long long>(form)] += 1;
    }
};

}  // namespace

NormSpectrum enumerate_norms(const DiscriminantData& data, int coset_index, const Rat& bound,
                             long long max_vectors) {
    if (bound <= Rat(0)) throw std::invalid_argument("enumeration bound must be positive");
    if (coset_index < 0 || coset_index >= static_cast<int>(data.cosets.size()))
        throw std::out_of_range("coset index out of range");

    const int r = data.spec.rank;
    const RatVec& wv = data.cosets[coset_index];

    long long d = 1;
    for (auto& q : wv) d = std::lcm(d, q.denominator());

    Enumerator e;
    e.r = r;
    e.gram = data.gram;
    e.d = d;
    e.bound_den = bound.denominator();
    e.bound_scaled_num = static_cast<__int128>(bound.numerator()) * d * d;
    e.bound_d = to_double(bound);
    e.max_vectors = max_vectors;
    e.w.resize(r);
    e.c_scaled.resize(r);
    for (int i = 0; i < r; ++i) {
        e.w[i] = to_double(wv[i]);
        e.c_scaled[i] = wv[i].numerator() * (d / wv[i].denominator());
    }

    // Cholesky-style decomposition Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2.
    e.q.assign(r, std::vector<double>(r, 0.0));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) e.q[i][j] = static_cast<double>(data.gram[i][j]);
    for (int i = 0; i < r; ++i) {
        for (int j = i + 1; j < r; ++j) {
            double t = e.q[i][j] / e.q[i][i];
            for (int kk = j; kk < r; ++kk) e.q[j][kk] -= t * e.q[i][kk];
            e.q[i][j] = t;
        }
    }

    std::map<long long, long long> hist;
    e.hist = &hist;
    e.run();

    NormSpectrum spec;
    spec.coset_index = coset_index;
    spec.bound = bound;
    for (auto& [scaled, count] : hist) {
        if (coset_index == 0 && scaled == 0) continue;  // gamma = 0 excluded from the zero coset
        spec.entries.emplace_back(Rat(scaled, d * d), count);
    }
    return spec;
}

namespace {
std::mutex g_cache_mutex;
std::map<std::pair<std::pair<char, int>, Rat>, std::shared_ptr<const SpectrumTable>> g_cache;
}  // namespace

std::shared_ptr<const SpectrumTable> shared_spectra(const DiscriminantData& data, const Rat& bound,
                                                    long long max_vectors) {
    // Round the bound up to an even integer grid to improve hit rate.
    long long grid = 2 * ((bound.numerator() + 2 * bound.denominator() - 1) / (2 * bound.denominator()));
    Rat b(grid);
    auto key = std::make_pair(std::make_pair(family_char(data.spec.family), data.spec.rank), b);
    {
        std::lock_guard<std::mutex> lock(g_cache_mutex);
        auto it = g_cache.find(key);
        if (it != g_cache.end()) return it->second;
        // any cached table with a larger bound also serves
        for (auto& [k2, tab] : g_cache)
            if (k2.first == key.first && k2.second >= b) return tab;
    }
    auto tab = std::make_shared<SpectrumTable>();
    tab->data = data;
    tab->bound = b;
    for (int a = 0; a < static_cast<int>(data.cosets.size()); ++a)
        tab->per_coset.push_back(enumerate_norms(data, a, b, max_vectors));
    {
        std::lock_guard<std::mutex> lock(g_cache_mutex);
        g_cache[key] = tab;
    }
    return tab;
}

std::vector<LatticeSpec> default_spec_set() {
    std::vector<LatticeSpec> out;
    for (int n = 1; n <= 8; ++n) out.emplace_back(Family::A, n);
    for (int n = 4; n <= 8; ++n) out.emplace_back(Family::D, n);
    for (int n = 6; n <= 8; ++n) out.emplace_back(Family::E, n);
    return out;
}

}  // namespace adez
