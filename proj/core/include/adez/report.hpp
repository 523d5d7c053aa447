#pragma once

#include <json.hpp>

#include "adez/zeta.hpp"

namespace adez {

using Json = nlohmann::ordered_json;

struct CheckRecord {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    std::string status;  // pass | fail | expected-obstruction
    std::string notes;
};

struct VerificationReport {
    std::string version;
    std::string spec_echo;
    std::string suite;
    std::vector<CheckRecord> checks;  // sorted by name
    double wall_seconds = 0.0;        // metadata only, never in the payload body

    bool all_ok() const;  // true iff no record has status "fail"
};

/// Runs one suite ("lattice", "weil", "theta", "fe" or "all") over the given specs.
VerificationReport run_verification(const std::vector<LatticeSpec>& specs,
                                    const std::string& suite, double tol);

/// Deterministic payload body: identical configs give byte-identical dumps.
Json report_payload(const VerificationReport& report);

/// Full document: payload plus a metadata object carrying the wall time.
Json report_document(const VerificationReport& report);

Json describe_payload(const LatticeSpec& spec);

Json complex_json(Complex z);
Json rational_json(const Rat& q);

/// Locale-independent decimal rendering with 17 significant digits.
std::string format_double(double x);

}  // namespace adez
