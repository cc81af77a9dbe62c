#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "rtasim/core.hpp"
#include "rtasim/dynamics.hpp"
#include "rtasim/epm.hpp"
#include "rtasim/mission.hpp"
#include "rtasim/rta.hpp"
#include "rtasim/ssc.hpp"
#include "rtasim/trace.hpp"

namespace rtasim {

enum class PlantKind : std::uint8_t { SingleIntegrator = 0, CoordinatedTurn };

enum class FaultKind : std::uint8_t {
  LeadReportDropout = 0,  // reports absent for the window
  FieldCorruption,        // one report field forced to a value
  StaleTimestamp,         // reports repeat the previous timestamp
  GpsNoise,               // gaussian position noise on reports
  W2Dropout,              // filtered command withheld from the selector
  RtaForcedFault,         // filter reports a fault instead of a command
};
inline constexpr std::size_t kFaultKindCount = 6;
const char* fault_kind_name(FaultKind k);

struct FaultEvent {
  FaultKind kind = FaultKind::LeadReportDropout;
  double t_start_s = 0.0;
  double t_end_s = 0.0;
  ReportField field = ReportField::Fuel;  // FieldCorruption target
  double value = 0.0;                     // FieldCorruption value
  double sigma_ft = 0.0;                  // GpsNoise standard deviation
  RtaFault forced = RtaFault::FrameOverrun;  // RtaForcedFault kind

  bool active_at(double t_s) const { return t_s >= t_start_s && t_s < t_end_s; }
};

struct PilotWindow {
  double t_start_s = 0.0;
  double t_end_s = 0.0;
  bool contains(double t_s) const { return t_s >= t_start_s && t_s < t_end_s; }
};

struct GeofenceChange {
  double t_s = 0.0;
  GeofenceSpec fence;
};

// Pilot behavior between takeovers; during a contingency the pilot flies the
// selected plan once the reaction delay has elapsed.
enum class PilotPolicy : std::uint8_t { HoldFormationLoose = 0, FlyToPoint };

struct PilotConfig {
  PilotPolicy policy = PilotPolicy::HoldFormationLoose;
  int reaction_delay_frames = 25;
  double fly_to_e_ft = 0.0;
  double fly_to_n_ft = 0.0;
  double fly_to_u_ft = 10000.0;
};

struct InitState {
  double e_ft = 0.0;
  double n_ft = 0.0;
  double u_ft = 10000.0;
  double psi_deg = 90.0;  // velocity due North under the shared heading convention
  double phi_deg = 0.0;
  double v_kt = 300.0;
};

struct MonteCarloDraws {
  double range_min_ft = 700.0;
  double range_max_ft = 5000.0;
  double alt_band_ft = 500.0;
  double v_min_kt = 200.0;
  double v_max_kt = 400.0;
};

struct ScenarioConfig {
  double dt_s = 0.02;
  double duration_s = 60.0;
  std::uint64_t seed = 1;
  int test_point_id = 1;

  InitState lead;
  InitState wing;
  LeadScript lead_script;

  AirframeModel airframe;
  PlantKind wing_plant = PlantKind::CoordinatedTurn;

  RtaConfig rta;
  GeofenceSpec fence;
  double init_fence_margin_ft = 100.0;

  SscConfig ssc;
  RejoinSpec rejoin;
  TripLimits trip_limits = TripLimits::defaults();
  ReportLimits report_limits;
  ContingencyTable contingency = ContingencyTable::defaults();
  int staleness_frames = 5;

  std::string policy_id = "rejoin";
  PilotConfig pilot;

  std::vector<FaultEvent> faults;
  std::vector<PilotWindow> pilot_windows;
  std::vector<GeofenceChange> fence_changes;

  MonteCarloDraws mc;
};

// Parse/serialize round-trips through the canonical JSON form used for the
// config hash.  Unknown keys are rejected so typos cannot silently revert a
// parameter to its default.
ScenarioConfig parse_scenario(const std::string& json_text);
ScenarioConfig load_scenario(const std::string& path);
std::string scenario_to_json(const ScenarioConfig& cfg);
std::uint64_t config_hash(const ScenarioConfig& cfg);

// Collects every problem; empty result means the scenario is runnable.
std::vector<std::string> check_scenario(const ScenarioConfig& cfg);

struct VerifierReport {
  std::uint64_t frames = 0;
  double min_collision_h_ft = std::numeric_limits<double>::infinity();
  double min_fence_h_ft = std::numeric_limits<double>::infinity();
  double max_fence_penetration_ft = 0.0;
  bool h1_violation = false;
  bool h3_violation = false;
  bool hard_violation = false;

  std::uint64_t missing_records = 0;
  std::uint64_t verdict_mismatches = 0;

  std::uint64_t tnsc_violation_frames = 0;
  std::uint64_t afsc_violation_frames = 0;
  std::uint64_t sfc_violation_frames = 0;
  std::uint64_t jec_violation_frames = 0;

  std::uint64_t epm_trips = 0;
  std::uint64_t intervention_frames = 0;
  std::uint64_t w2_absent_frames = 0;
  std::uint64_t w2_fault_frames = 0;
  std::uint64_t pilot_source_frames = 0;
  std::uint64_t contingency_frames = 0;
  std::uint64_t w14_alert_frames = 0;
  std::uint64_t fence_changes_applied = 0;
  std::uint64_t fence_changes_rejected = 0;

  bool rejoin_succeeded = false;
  double rejoin_time_s = -1.0;
};

struct RunResult {
  std::vector<TraceRecord> records;
  TraceMeta meta;
  VerifierReport report;
  AircraftState final_lead;
  AircraftState final_wing;
};

RunResult run(const ScenarioConfig& cfg);

// Recomputes safety verdicts and margins from true-state rows plus the frame-0
// parameter rows; works identically on in-memory and file-parsed traces.
VerifierReport verify_records(const std::vector<TraceRecord>& rows);

struct MonteCarloResult {
  std::uint64_t episodes = 0;
  std::uint64_t hard_violation_episodes = 0;
  std::uint64_t below_tolerance_episodes = 0;  // min margin < -1 ft
  double min_h_overall_ft = std::numeric_limits<double>::infinity();
  double mean_intervention_frames = 0.0;
  std::uint64_t episodes_with_intervention = 0;
  std::uint64_t rejoin_successes = 0;
  std::uint64_t epm_trips = 0;
  std::uint64_t missing_records = 0;
  std::uint64_t verdict_mismatches = 0;
  std::vector<double> episode_min_h_ft;  // index = episode
};

// Episode i derives its initial wing placement from (seed, i); with parallel
// execution the per-episode work is farmed out and reduced in index order, so
// serial and parallel runs produce identical results.
MonteCarloResult monte_carlo(const ScenarioConfig& base, int episodes, std::uint64_t seed,
                             bool parallel);

// The wing placement an episode would use (exposed for tests).
ScenarioConfig episode_scenario(const ScenarioConfig& base, std::uint64_t seed, int episode);

}  // namespace rtasim
