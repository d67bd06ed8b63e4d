#pragma once

// JSON serialisation of the value types and CSV table writers.
//
// JSON numbers are written with round-trip precision, so a record read back
// compares equal to the one written.

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "alc/analytic.hpp"
#include "alc/calibration.hpp"
#include "alc/dynamics.hpp"
#include "alc/experiments.hpp"
#include "alc/model.hpp"
#include "alc/pulse.hpp"

namespace alc {

inline constexpr int kSchemaVersion = 1;

void to_json(nlohmann::json& j, const TransmonParams& q);
void from_json(const nlohmann::json& j, TransmonParams& q);
void to_json(nlohmann::json& j, const PulseParams& p);
void from_json(const nlohmann::json& j, PulseParams& p);
void to_json(nlohmann::json& j, const GateSummary& s);
void from_json(const nlohmann::json& j, GateSummary& s);
void to_json(nlohmann::json& j, const CalibrationTraceEntry& e);
void from_json(const nlohmann::json& j, CalibrationTraceEntry& e);
void to_json(nlohmann::json& j, const CalibrationStage& s);
void from_json(const nlohmann::json& j, CalibrationStage& s);
void to_json(nlohmann::json& j, const CalibrationRecord& r);
void from_json(const nlohmann::json& j, CalibrationRecord& r);
void to_json(nlohmann::json& j, const SweepRow& r);
void to_json(nlohmann::json& j, const RobustnessRow& r);
void to_json(nlohmann::json& j, const AlcSolution& s);
void to_json(nlohmann::json& j, const RefScan& s);
void to_json(nlohmann::json& j, const SpectrumReport& r);
void to_json(nlohmann::json& j, const OptimalParameterPoint& p);

std::string dump_json(const nlohmann::json& j);

// CSV tables. Headers are fixed per table.
void write_waveform_csv(std::ostream& out, const PulseParams& p, const TransmonParams& q, double dt);
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
void write_ref_scan_csv(std::ostream& out, const RefScan& scan);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
void write_robustness_csv(std::ostream& out, const std::vector<RobustnessRow>& rows);
void write_param_curve_csv(std::ostream& out, const std::vector<OptimalParameterPoint>& pts);
void write_spectrum_csv(std::ostream& out, const SpectrumTrace& trace);
void write_spectrum_report_csv(std::ostream& out, const std::vector<SpectrumReport>& reports);

}  // namespace alc
