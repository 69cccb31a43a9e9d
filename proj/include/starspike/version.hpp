#pragma once

namespace starspike {

inline constexpr const char* kToolName = "starspike";
inline constexpr const char* kToolVersion = "0.1.0";

// Schema tags carried by every serialized artifact so staged runs can
// detect version mismatches instead of mis-parsing.
inline constexpr const char* kReportSchema = "starspike.report.v1";
inline constexpr const char* kSessionSchema = "starspike.session.v1";
inline constexpr const char* kSpikesSchema = "starspike.spikes.v1";
inline constexpr const char* kBurstsSchema = "starspike.bursts.v1";
inline constexpr const char* kTruthSchema = "starspike.truth.v1";
inline constexpr const char* kScoreSchema = "starspike.score.v1";

}  // namespace starspike
