#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace rtasim {

// Trace signals.  W-numbered entries mirror the control-structure dataflow;
// the named entries are derived monitor channels.  META rows (frame 0) carry
// the scenario parameters a verifier needs; W12 rows appear on fence-change
// events.  All other signals emit every frame.
enum class Sig : std::uint8_t {
  W1 = 0,   // desired velocity from the active policy
  W2,       // filtered velocity or its absence/fault
  W3,       // selected actuation command
  W4,       // position reports as delivered
  W5,       // pilot command
  W6,       // monitor-selected control source
  W7,       // filter status toward the cockpit
  W8,       // envelope monitor status
  W9,       // pilot takeover discrete
  W12,      // fence/risk settings events
  W14,      // selector alert on missing filtered command
  W16,      // policy input/output record
  W17,      // filter input/output/state record
  VAL,      // report validation verdicts
  SSC,      // safety-of-flight monitor verdicts
  RJN,      // rejoin progress
  SAF,      // true-state safety margins
  CONT,     // contingency engagement state
  META,     // scenario parameters, frame 0 only
};
inline constexpr std::size_t kSigCount = 19;

// Signals that must appear every frame; W12 and META are event rows.
inline constexpr Sig kLiveSignals[] = {Sig::W1, Sig::W2,  Sig::W3,  Sig::W4,  Sig::W5, Sig::W6,
                                       Sig::W7, Sig::W8,  Sig::W9,  Sig::W14, Sig::W16,
                                       Sig::W17, Sig::VAL, Sig::SSC, Sig::RJN, Sig::SAF,
                                       Sig::CONT};
inline constexpr std::size_t kLiveSignalCount = sizeof(kLiveSignals) / sizeof(kLiveSignals[0]);

const char* sig_name(Sig s);
bool sig_from_name(std::string_view name, Sig& out);

// Field names.  Records hold interned pointers so the verifier can compare by
// identity; parse goes through intern_field to restore that property.
namespace tf {
inline constexpr const char* kUeFps = "ue_fps";
inline constexpr const char* kUnFps = "un_fps";
inline constexpr const char* kUuFps = "uu_fps";
inline constexpr const char* kPresent = "present";
inline constexpr const char* kFault = "fault";
inline constexpr const char* kIntervened = "intervened";
inline constexpr const char* kPitchFps = "pitch_fps";
inline constexpr const char* kRollDeg = "roll_deg";
inline constexpr const char* kRollMode = "roll_mode";
inline constexpr const char* kSpeedKt = "speed_kt";
inline constexpr const char* kYawDeg = "yaw_deg";
inline constexpr const char* kLeadEFt = "lead_e_ft";
inline constexpr const char* kLeadNFt = "lead_n_ft";
inline constexpr const char* kLeadUFt = "lead_u_ft";
inline constexpr const char* kLeadPsiDeg = "lead_psi_deg";
inline constexpr const char* kLeadPhiDeg = "lead_phi_deg";
inline constexpr const char* kLeadTasKt = "lead_tas_kt";
inline constexpr const char* kLeadVeFps = "lead_ve_fps";
inline constexpr const char* kLeadVnFps = "lead_vn_fps";
inline constexpr const char* kLeadVuFps = "lead_vu_fps";
inline constexpr const char* kLeadTsS = "lead_ts_s";
inline constexpr const char* kWingEFt = "wing_e_ft";
inline constexpr const char* kWingNFt = "wing_n_ft";
inline constexpr const char* kWingUFt = "wing_u_ft";
inline constexpr const char* kWingPsiDeg = "wing_psi_deg";
inline constexpr const char* kWingPhiDeg = "wing_phi_deg";
inline constexpr const char* kWingTasKt = "wing_tas_kt";
inline constexpr const char* kWingVeFps = "wing_ve_fps";
inline constexpr const char* kWingVnFps = "wing_vn_fps";
inline constexpr const char* kWingVuFps = "wing_vu_fps";
inline constexpr const char* kWingTsS = "wing_ts_s";
inline constexpr const char* kSource = "source";
inline constexpr const char* kEngaged = "engaged";
inline constexpr const char* kTripped = "tripped";
inline constexpr const char* kFaulted = "faulted";
inline constexpr const char* kReasonKind = "reason_kind";
inline constexpr const char* kReasonVar = "reason_var";
inline constexpr const char* kReasonValue = "reason_value";
inline constexpr const char* kTakeover = "takeover";
inline constexpr const char* kAlert = "alert";
inline constexpr const char* kInUeFps = "in_ue_fps";
inline constexpr const char* kInUnFps = "in_un_fps";
inline constexpr const char* kInUuFps = "in_uu_fps";
inline constexpr const char* kOutUeFps = "out_ue_fps";
inline constexpr const char* kOutUnFps = "out_un_fps";
inline constexpr const char* kOutUuFps = "out_uu_fps";
inline constexpr const char* kCollisionOn = "collision_on";
inline constexpr const char* kGeofenceOn = "geofence_on";
inline constexpr const char* kMinHFt = "min_h_ft";
inline constexpr const char* kValid = "valid";
inline constexpr const char* kFailKind = "fail_kind";
inline constexpr const char* kFieldBits = "field_bits";
inline constexpr const char* kStaleCount = "stale_count";
inline constexpr const char* kTnscViolated = "tnsc_violated";
inline constexpr const char* kTnscValueFt = "tnsc_value_ft";
inline constexpr const char* kAfscViolated = "afsc_violated";
inline constexpr const char* kAfscValueFt = "afsc_value_ft";
inline constexpr const char* kSfcViolated = "sfc_violated";
inline constexpr const char* kSfcClosureFps = "sfc_closure_fps";
inline constexpr const char* kSfcRelSpeedFps = "sfc_rel_speed_fps";
inline constexpr const char* kJecViolated = "jec_violated";
inline constexpr const char* kJecValueFt = "jec_value_ft";
inline constexpr const char* kDistFt = "dist_ft";
inline constexpr const char* kTInsideS = "t_inside_s";
inline constexpr const char* kSucceeded = "succeeded";
inline constexpr const char* kPointEFt = "point_e_ft";
inline constexpr const char* kPointNFt = "point_n_ft";
inline constexpr const char* kPointUFt = "point_u_ft";
inline constexpr const char* kHCollisionFt = "h_collision_ft";
inline constexpr const char* kHFenceMinFt = "h_fence_min_ft";
inline constexpr const char* kActive = "active";
inline constexpr const char* kPlan = "plan";
inline constexpr const char* kTriggerKind = "trigger_kind";
inline constexpr const char* kApplied = "applied";
inline constexpr const char* kDtS = "dt_s";
inline constexpr const char* kFrameCount = "frame_count";
inline constexpr const char* kRhoCFt = "rho_c_ft";
inline constexpr const char* kMarginFrac = "margin_frac";
inline constexpr const char* kGammaCollision = "gamma_collision";
inline constexpr const char* kGammaGeofence = "gamma_geofence";
inline constexpr const char* kFenceKind = "fence_kind";
inline constexpr const char* kFenceCenterEFt = "fence_center_e_ft";
inline constexpr const char* kFenceCenterNFt = "fence_center_n_ft";
inline constexpr const char* kFenceRadiusFt = "fence_radius_ft";
inline constexpr const char* kFenceEMinFt = "fence_e_min_ft";
inline constexpr const char* kFenceEMaxFt = "fence_e_max_ft";
inline constexpr const char* kFenceNMinFt = "fence_n_min_ft";
inline constexpr const char* kFenceNMaxFt = "fence_n_max_ft";
inline constexpr const char* kFenceVertCount = "fence_vert_count";
inline constexpr const char* kFenceV0EFt = "fence_v0_e_ft";
inline constexpr const char* kFenceV0NFt = "fence_v0_n_ft";
inline constexpr const char* kFenceV1EFt = "fence_v1_e_ft";
inline constexpr const char* kFenceV1NFt = "fence_v1_n_ft";
inline constexpr const char* kFenceV2EFt = "fence_v2_e_ft";
inline constexpr const char* kFenceV2NFt = "fence_v2_n_ft";
inline constexpr const char* kFenceV3EFt = "fence_v3_e_ft";
inline constexpr const char* kFenceV3NFt = "fence_v3_n_ft";
inline constexpr const char* kFenceV4EFt = "fence_v4_e_ft";
inline constexpr const char* kFenceV4NFt = "fence_v4_n_ft";
inline constexpr const char* kFenceV5EFt = "fence_v5_e_ft";
inline constexpr const char* kFenceV5NFt = "fence_v5_n_ft";
inline constexpr const char* kFenceV6EFt = "fence_v6_e_ft";
inline constexpr const char* kFenceV6NFt = "fence_v6_n_ft";
inline constexpr const char* kFenceV7EFt = "fence_v7_e_ft";
inline constexpr const char* kFenceV7NFt = "fence_v7_n_ft";
inline constexpr const char* kLlFt = "ll_ft";
inline constexpr const char* kFlFt = "fl_ft";
inline constexpr const char* kTnscFt = "tnsc_ft";
inline constexpr const char* kTnscRangeFt = "tnsc_range_ft";
inline constexpr const char* kAfscRangeFt = "afsc_range_ft";
inline constexpr const char* kSfcLoFt = "sfc_lo_ft";
inline constexpr const char* kSfcHiFt = "sfc_hi_ft";
inline constexpr const char* kSfcClosureLimitFps = "sfc_closure_limit_fps";
inline constexpr const char* kJecWindowS = "jec_window_s";
inline constexpr const char* kJecRadiusFt = "jec_radius_ft";
inline constexpr const char* kJecSamplePeriodS = "jec_sample_period_s";
inline constexpr const char* kThetaAaDeg = "theta_aa_deg";
inline constexpr const char* kRhoRFt = "rho_r_ft";
inline constexpr const char* kRhoEFt = "rho_e_ft";
inline constexpr const char* kTSuccessS = "t_success_s";
inline constexpr const char* kStalenessFrames = "staleness_frames";
inline constexpr const char* kPlantKind = "plant_kind";

const char* fence_vert_e_field(std::size_t i);
const char* fence_vert_n_field(std::size_t i);
}  // namespace tf

struct TraceRecord {
  std::uint32_t frame = 0;
  double t_s = 0.0;
  Sig sig = Sig::W1;
  const char* field = nullptr;
  double value = 0.0;
};

// Frame-scoped appender; rows come out in exactly the order they were added.
class Recorder {
 public:
  void begin_frame(std::uint32_t frame, double t_s) {
    frame_ = frame;
    t_ = t_s;
  }
  void rec(Sig sig, const char* field, double value) {
    rows_.push_back({frame_, t_, sig, field, value});
  }
  std::vector<TraceRecord>& rows() { return rows_; }
  const std::vector<TraceRecord>& rows() const { return rows_; }

 private:
  std::vector<TraceRecord> rows_;
  std::uint32_t frame_ = 0;
  double t_ = 0.0;
};

struct TraceMeta {
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  std::string version = "1.0.0";
};

// Nine significant digits, the trace's canonical number format.
std::string format_g9(double v);

// Returns the canonical pointer for a known field name; unknown names are
// interned into a process-lifetime pool so identity comparison stays valid.
const char* intern_field(std::string_view name);

// CSV columns: frame,t_s,signal,field,value.  Metadata goes to a JSON sidecar
// at path + ".meta.json".
void write_trace_csv(const std::string& path, const std::vector<TraceRecord>& rows,
                     const TraceMeta& meta);
std::vector<TraceRecord> read_trace_csv(const std::string& path);
TraceMeta read_trace_meta(const std::string& path);

}  // namespace rtasim
