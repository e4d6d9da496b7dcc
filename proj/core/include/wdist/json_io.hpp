#pragma once

#include <map>
#include <string>

#include "wdist/distill.hpp"

namespace wdist {

// Run metadata echoed into every artifact.
struct ArtifactMeta {
    std::string tool_version;
    std::string timestamp;                      // ISO 8601 UTC
    std::map<std::string, std::string> config;  // full effective run config
};

std::string iso_timestamp_utc();

// { "rows": n, "cols": n, "entries": [[re, im], ...] } row-major
std::string operator_to_json(const Matrix& x);
Matrix operator_from_json(const std::string& text);

// { "d": int, "alpha": float, "beta": float, "lambda": float }
std::string state_to_json(const StandardState& s);
StandardState state_from_json(const std::string& text);

// state artifact with meta, optionally embedding rho and rho^{T_A}
std::string state_artifact(const StandardState& s, const ArtifactMeta& meta,
                           bool include_matrices);

// ordered events, each { "alternatives": [{ "u_label", "probability" }] }
std::string protocol_to_json(const MixingProtocol& p, const ArtifactMeta& meta);

std::string certificate_to_json(const Certificate& c, const ArtifactMeta& meta);

// RFC-4180-style: header row, '.' decimal separator, 17 significant digits
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

std::string meta_to_json(const ArtifactMeta& meta);

}  // namespace wdist
