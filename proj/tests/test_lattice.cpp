#include <doctest.h>

#include <map>

#include "adez/lattice.hpp"

using namespace adez;

namespace {

long long expected_det(const LatticeSpec& spec) {
    switch (spec.family) {
        case Family::A: return spec.rank + 1;
        case Family::D: return 4;
        default: return spec.rank == 6 ? 3 : (spec.rank == 7 ? 2 : 1);
    }
}

RatMat to_rat(const GramMatrix& g) {
    RatMat m(g.size());
    for (size_t i = 0; i < g.size(); ++i)
        for (long long v : g[i]) m[i].push_back(Rat(v));
    return m;
}

// Independent integer-box enumeration: every gamma in Q with coordinates in
// [-radius, radius] is tested exactly against the norm bound.
std::map<Rat, long long> brute_force_norms(const DiscriminantData& data, int coset, Rat bound,
                                           long long radius) {
    const int r = data.spec.rank;
    std::map<Rat, long long> hist;
    std::vector<long long> g(r, -radius);
    while (true) {
        RatVec v(r);
        for (int i = 0; i < r; ++i) v[i] = Rat(g[i]) + data.cosets[coset][i];
        Rat norm = data.inner(v, v);
        if (norm <= bound && !(coset == 0 && norm == Rat(0))) hist[norm] += 1;
        int i = 0;
        while (i < r && g[i] == radius) g[i++] = -radius;
        if (i == r) break;
        ++g[i];
    }
    return hist;
}

}  // namespace

TEST_CASE("spec parsing accepts the ADE range and rejects everything else") {
    CHECK(LatticeSpec::parse("A4").rank == 4);
    CHECK(LatticeSpec::parse("D5").family == Family::D);
    CHECK(LatticeSpec::parse("E8").name() == "E8");
    CHECK_THROWS_AS(LatticeSpec::parse("B2"), std::invalid_argument);
    CHECK_THROWS_AS(LatticeSpec::parse("A0"), std::invalid_argument);
    CHECK_THROWS_AS(LatticeSpec::parse("D2"), std::invalid_argument);
    CHECK_THROWS_AS(LatticeSpec::parse("E9"), std::invalid_argument);
    CHECK_THROWS_AS(LatticeSpec::parse(""), std::invalid_argument);
    CHECK(default_spec_set().size() == 16);
}

TEST_CASE("Cartan matrices: hand-checked entries") {
    GramMatrix a2 = cartan_matrix(LatticeSpec(Family::A, 2));
    CHECK(a2 == GramMatrix{{2, -1}, {-1, 2}});
    GramMatrix d4 = cartan_matrix(LatticeSpec(Family::D, 4));
    CHECK(d4[1][3] == -1);  // central node couples to both fork tips
    CHECK(d4[2][3] == 0);
    GramMatrix e8 = cartan_matrix(LatticeSpec(Family::E, 8));
    for (int i = 0; i < 8; ++i) CHECK(e8[i][i] == 2);
}

TEST_CASE("determinant equals the discriminant-group order, exactly") {
    for (const auto& spec : default_spec_set()) {
        CAPTURE(spec.name());
        CHECK(rat_det(to_rat(cartan_matrix(spec))) == Rat(expected_det(spec)));
        DiscriminantData data = discriminant_data(spec);
        CHECK(data.l == expected_det(spec));
        CHECK(static_cast<long long>(data.cosets.size()) == data.l);
    }
}

TEST_CASE("fundamental weights are the exact inverse of the Cartan matrix") {
    for (const auto& spec : default_spec_set()) {
        CAPTURE(spec.name());
        GramMatrix g = cartan_matrix(spec);
        RatMat w = fundamental_weights(spec);
        const int r = spec.rank;
        for (int a = 0; a < r; ++a)
            for (int j = 0; j < r; ++j) {
                Rat dot(0);
                for (int i = 0; i < r; ++i) dot += w[a][i] * Rat(g[i][j]);
                CHECK(dot == Rat(a == j ? 1 : 0));
            }
    }
}

TEST_CASE("coset structure: zero class first, group type by family") {
    for (const auto& spec : default_spec_set()) {
        DiscriminantData data = discriminant_data(spec);
        CAPTURE(spec.name());
        for (const auto& q : data.cosets[0]) CHECK(q == Rat(0));
        bool klein = spec.family == Family::D && spec.rank % 2 == 0;
        CHECK((data.group_type == GroupType::klein_four) == klein);
        // every representative either lies in P \ Q or is the zero class
        for (size_t a = 1; a < data.cosets.size(); ++a)
            CHECK_FALSE(data.in_root_lattice(data.cosets[a]));
    }
}

TEST_CASE("root counts at norm 2: A2 = 6, D4 = 24, E7 = 126, E8 = 240") {
    auto roots = [](const char* name) {
        DiscriminantData data = discriminant_data(LatticeSpec::parse(name));
        NormSpectrum sp = enumerate_norms(data, 0, Rat(2));
        for (const auto& [m, c] : sp.entries)
            if (m == Rat(2)) return c;
        return 0LL;
    };
    CHECK(roots("A2") == 6);
    CHECK(roots("D4") == 24);
    CHECK(roots("E7") == 126);
    CHECK(roots("E8") == 240);
}

TEST_CASE("E8 multiplicities are 240 sigma_3(n) at the first ten norms") {
    DiscriminantData data = discriminant_data(LatticeSpec(Family::E, 8));
    NormSpectrum sp = enumerate_norms(data, 0, Rat(20));
    const long long sigma3[10] = {1, 9, 28, 73, 126, 252, 344, 585, 757, 1134};
    REQUIRE(sp.entries.size() >= 10);
    for (int n = 1; n <= 10; ++n) {
        CHECK(sp.entries[n - 1].first == Rat(2 * n));
        CHECK(sp.entries[n - 1].second == 240 * sigma3[n - 1]);
    }
}

TEST_CASE("A1 shifted coset: minimal norm 1/2 with two vectors") {
    DiscriminantData data = discriminant_data(LatticeSpec(Family::A, 1));
    NormSpectrum sp = enumerate_norms(data, 1, Rat(10));
    REQUIRE_FALSE(sp.entries.empty());
    CHECK(sp.min_norm() == Rat(1, 2));
    CHECK(sp.entries[0].second == 2);
    // shifted norms are (2m+1)^2 / 2
    for (const auto& [m, c] : sp.entries) {
        CHECK(m.denominator() == 2);
        CHECK(c == 2);
    }
}

TEST_CASE("branch-and-bound agrees with the integer-box brute force") {
    for (const char* name : {"A3", "D4", "A2", "D5"}) {
        DiscriminantData data = discriminant_data(LatticeSpec::parse(name));
        CAPTURE(name);
        for (int coset = 0; coset < static_cast<int>(data.cosets.size()); ++coset) {
            NormSpectrum sp = enumerate_norms(data, coset, Rat(6));
            auto brute = brute_force_norms(data, coset, Rat(6), 6);
            REQUIRE(sp.entries.size() == brute.size());
            for (const auto& [m, c] : sp.entries) {
                CAPTURE(coset);
                CHECK(brute.at(m) == c);
            }
        }
    }
}

TEST_CASE("zero-coset counts are even: vectors come in +/- pairs") {
    for (const char* name : {"A4", "D5", "E6"}) {
        DiscriminantData data = discriminant_data(LatticeSpec::parse(name));
        NormSpectrum sp = enumerate_norms(data, 0, Rat(8));
        for (const auto& [m, c] : sp.entries) CHECK(c % 2 == 0);
    }
}

TEST_CASE("vector-count ceiling raises a dedicated error") {
    DiscriminantData data = discriminant_data(LatticeSpec(Family::D, 4));
    CHECK_THROWS_AS(enumerate_norms(data, 0, Rat(20), 10), EnumerationLimitError);
    CHECK_THROWS_AS(enumerate_norms(data, 0, Rat(-1)), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_norms(data, 9, Rat(2)), std::out_of_range);
}

TEST_CASE("spectrum cache serves larger cached bounds") {
    DiscriminantData data = discriminant_data(LatticeSpec(Family::A, 3));
    auto big = shared_spectra(data, Rat(12));
    auto small = shared_spectra(data, Rat(6));
    CHECK(small->bound >= Rat(6));  // may be the cached table with bound 12
    CHECK(big->per_coset.size() == 4);
}
