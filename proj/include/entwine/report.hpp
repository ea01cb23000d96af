#pragma once

#include "entwine/bundles.hpp"

namespace entwine {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kReportSchema = "entwine-report/1";

/// JSON document for a verification run. Deterministic: keys are sorted and
/// no timing data is included; identical inputs and seed produce identical
/// bytes.
std::string report_json(const BundleReport& rep);

/// Human-readable per-stage summary (one line per stage).
std::string report_summary(const BundleReport& rep);

}  // namespace entwine
