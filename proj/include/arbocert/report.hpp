#pragma once

#include <string>
#include <vector>

#include "arbocert/certificates.hpp"
#include "arbocert/dynamics.hpp"
#include "arbocert/wreath.hpp"
#include "json.hpp"

namespace arbo {

// All reports share one envelope:
//   { "tool": {"name", "version"}, "command", "config", "result",
//     "timing_ms" }
// Big integers and exact rationals are decimal strings throughout, so a
// report survives any JSON parser unchanged. Keys are emitted sorted, which
// makes reports byte-identical across runs up to the timing field.
using Json = nlohmann::json;

Json to_json(const LevelCertificate& cert);
Json to_json(const TowerReport& report);
Json to_json(const Mod3Certificate& cert);
Json to_json(const IteratesEisenstein& ie);
Json to_json(const NewtonPolygon& np);
Json to_json(const NewtonCertificate& cert);
Json to_json(const BdEvidence& bd);
Json to_json(const CurveCheckReport& report);
Json to_json(const std::vector<CurveCheckReport>& reports);
Json to_json(const DensityReport& report);
Json to_json(const DiscCheckReport& report);
Json to_json(const ShapePropertyReport& report);
Json to_json(const CycleTypeDistribution& dist);
Json to_json(const RigidDivisibilityReport& report);
Json to_json(const std::vector<HeightGrowthRow>& rows);
Json to_json(const DynatomicAtZero& dz);

Json report_envelope(const std::string& command, const Json& config,
                     const Json& result, double timing_ms);

// Structural check of the envelope plus every verdict/overall string in the
// payload; throws std::invalid_argument on the first violation.
void validate_report(const Json& report);

std::string dump_report(const Json& report, int indent = 2);

}  // namespace arbo
