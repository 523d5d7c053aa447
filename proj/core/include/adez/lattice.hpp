#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "adez/rational.hpp"

namespace adez {

enum class Family { A, D, E };

inline char family_char(Family f) {
    switch (f) {
        case Family::A: return 'A';
        case Family::D: return 'D';
        default: return 'E';
    }
}

constexpr int kDefaultMaxRank = 24;

/// ADE family tag plus rank. A: n >= 1, D: n >= 3, E: n in {6,7,8}.
struct LatticeSpec {
    Family family = Family::A;
    int rank = 1;

    LatticeSpec() = default;
    LatticeSpec(Family f, int r, int max_rank = kDefaultMaxRank);

    std::string name() const { return std::string(1, family_char(family)) + std::to_string(rank); }

    /// Parses "A4", "D5", "E8"; throws std::invalid_argument otherwise.
    static LatticeSpec parse(const std::string& s, int max_rank = kDefaultMaxRank);

    friend bool operator==(const LatticeSpec&, const LatticeSpec&) = default;
    friend auto operator<=>(const LatticeSpec& a, const LatticeSpec& b) {
        if (a.family != b.family) return a.family <=> b.family;
        return a.rank <=> b.rank;
    }
};

enum class GroupType { cyclic, klein_four };

/// r x r integer Gram matrix of the simple roots (the Cartan matrix in Bourbaki numbering).
using GramMatrix = std::vector<std::vector<long long>>;

GramMatrix cartan_matrix(const LatticeSpec& spec);

/// Rows are fundamental weights in simple-root coordinates; equals the exact
/// inverse of the Cartan matrix, so row a dotted against G gives the a-th unit vector.
RatMat fundamental_weights(const LatticeSpec& spec);

/// Everything derived exactly from the spec: Gram data, discriminant cosets, weight k = r/2.
struct DiscriminantData {
    LatticeSpec spec;
    GramMatrix gram;
    RatMat weight_gram;       // inverse of gram
    long long l = 0;          // |P/Q| = det(gram)
    std::vector<RatVec> cosets;  // coset representatives in simple-root coordinates; cosets[0] = 0
    std::vector<int> coset_weight_index;  // Bourbaki index of the representative (0 for the zero class)
    GroupType group_type = GroupType::cyclic;
    Rat k;                    // rank / 2

    /// Bilinear form (u, v) = u^T G v, exact.
    Rat inner(const RatVec& u, const RatVec& v) const;
    /// Membership in the root lattice Q: all simple-root coordinates integral.
    bool in_root_lattice(const RatVec& v) const;
};

DiscriminantData discriminant_data(const LatticeSpec& spec);

/// Norm/multiplicity histogram of one shifted coset up to a bound.
/// For coset 0 the norm-0 entry is excluded.
struct NormSpectrum {
    int coset_index = 0;
    Rat bound;
    std::vector<std::pair<Rat, long long>> entries;  // sorted by norm, counts > 0

    long long total_count() const;
    Rat min_norm() const;  // throws if empty
};

struct EnumerationLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

long long default_max_vectors();  // ADEZ_MAX_VECTORS, default 10^7

/// Exhaustive branch-and-bound enumeration of gamma in Q with
/// (gamma + w_a, gamma + w_a) <= bound. Counts are exact; norms are exact rationals.
NormSpectrum enumerate_norms(const DiscriminantData& data, int coset_index, const Rat& bound,
                             long long max_vectors = default_max_vectors());

/// All l coset spectra for one (spec, bound); the shared input of theta and zeta evaluation.
struct SpectrumTable {
    DiscriminantData data;
    Rat bound;
    std::vector<NormSpectrum> per_coset;
};

/// Process-wide cache keyed by (spec, bound); returns a table with bound >= requested.
std::shared_ptr<const SpectrumTable> shared_spectra(const DiscriminantData& data, const Rat& bound,
                                                    long long max_vectors = default_max_vectors());

/// The default verification set {A1..A8, D4..D8, E6, E7, E8}.
std::vector<LatticeSpec> default_spec_set();

}  // namespace adez
