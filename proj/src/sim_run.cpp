#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "rtasim/rng.hpp"
#include "rtasim/selector.hpp"
#include "rtasim/sim.hpp"

namespace rtasim {

namespace {

// What the pilot is currently trying to do; contingency plans override the
// base behavior after the reaction delay.
enum class PilotIntent : std::uint8_t { Base = 0, MaintainPath, Loiter, FlyPlanPoint };

PilotIntent intent_for_plan(ContingencyPlan plan) {
  switch (plan) {
    case ContingencyPlan::MaintainCurrentPath: return PilotIntent::MaintainPath;
    case ContingencyPlan::Loiter: return PilotIntent::Loiter;
    case ContingencyPlan::FlyToPoint: return PilotIntent::FlyPlanPoint;
    case ContingencyPlan::TerminateToPilot: return PilotIntent::Base;
  }
  return PilotIntent::Base;
}

PositionReport make_lead_report(const AircraftState& s, const Vec3& prev_vel_fps, double dt_s,
                                int test_point, const AirframeModel& m) {
  PositionReport r;
  r.timestamp_s = s.t_s;
  r.test_point_id = test_point;
  r.e_ft = s.e_ft;
  r.n_ft = s.n_ft;
  r.u_ft = s.u_ft;
  r.phi_deg = s.phi_deg;
  r.theta_deg = 0.0;
  r.psi_deg = s.psi_deg;
  r.phi_rate_dps = s.env.phi_rate_dps;
  r.theta_rate_dps = 0.0;
  r.psi_rate_dps = (s.v_true_kt > 1e-9 && std::abs(s.phi_deg) < 90.0)
                       ? m.k2 * std::tan(deg2rad(s.phi_deg)) / s.v_true_kt
                       : 0.0;
  r.tas_kt = s.v_true_kt;
  r.cas_kt = s.env.vc_kt;
  r.ve_fps = s.ve_fps;
  r.vn_fps = s.vn_fps;
  r.vu_fps = s.vu_fps;
  const Vec3 dv = velocity(s) - prev_vel_fps;
  r.ae_fps2 = dv.e / dt_s;
  r.an_fps2 = dv.n / dt_s;
  r.au_fps2 = dv.u / dt_s;
  r.nz_g = s.env.nz_g;
  r.fuel_lb = 5000.0 - 1.0 * s.t_s;
  r.pla_pct = 75.0;
  r.wind_e_fps = 0.0;
  r.wind_n_fps = 0.0;
  return r;
}

void corrupt_field(PositionReport& r, ReportField f, double v) {
  switch (f) {
    case ReportField::Timestamp: r.timestamp_s = v; break;
    case ReportField::Position: r.u_ft = v; break;
    case ReportField::Orientation: r.phi_deg = v; break;
    case ReportField::OrientationRates: r.phi_rate_dps = v; break;
    case ReportField::Tas: r.tas_kt = v; break;
    case ReportField::Cas: r.cas_kt = v; break;
    case ReportField::Velocity: r.ve_fps = v; break;
    case ReportField::Acceleration: r.ae_fps2 = v; break;
    case ReportField::NormalAccel: r.nz_g = v; break;
    case ReportField::Fuel: r.fuel_lb = v; break;
    case ReportField::Pla: r.pla_pct = v; break;
    case ReportField::Wind: r.wind_e_fps = v; break;
  }
}

struct PilotModel {
  PilotIntent current = PilotIntent::Base;
  PilotIntent pending = PilotIntent::Base;
  std::int64_t pending_frame = -1;  // frame at which `pending` becomes current

  void request(PilotIntent target, std::uint64_t frame, int delay_frames) {
    if (target == current) {
      pending_frame = -1;
      return;
    }
    if (pending_frame >= 0 && pending == target) return;
    pending = target;
    pending_frame = static_cast<std::int64_t>(frame) + delay_frames;
  }
  void mature(std::uint64_t frame) {
    if (pending_frame >= 0 && static_cast<std::int64_t>(frame) >= pending_frame) {
      current = pending;
      pending_frame = -1;
    }
  }
};

Vec3 fly_to_velocity(const AircraftState& wing, const Vec3& target, const AirframeModel& m) {
  const Vec3 err = target - position(wing);
  const Vec3 hdir = unit_or_zero({err.e, err.n, 0.0});
  const double speed =
      std::clamp(wing.v_true_kt, m.v_min_kt, m.v_max_kt) * kKtToFps;
  const double climb = std::clamp(0.5 * err.u, -m.max_climb_fps, m.max_climb_fps);
  if (norm(hdir) < 0.5) {
    // Overhead the point: keep current heading.
    return speed * heading_unit(wing.psi_deg) + Vec3{0.0, 0.0, climb};
  }
  return speed * hdir + Vec3{0.0, 0.0, climb};
}

PilotOutput pilot_output(PilotIntent intent, const ScenarioConfig& cfg, const AircraftState& wing,
                         const PositionReport* last_lead) {
  const AirframeModel& m = cfg.airframe;
  PilotOutput out;
  switch (intent) {
    case PilotIntent::MaintainPath: {
      out.velocity_fps = velocity(wing);
      out.command = map_velocity_to_command(out.velocity_fps, wing, m);
      return out;
    }
    case PilotIntent::Loiter: {
      // Constant-bank orbit; the velocity intent rotates by one frame's worth
      // of the matching turn rate so both plant kinds fly the same circle.
      const double bank = 30.0;
      const double v_kt = std::clamp(wing.v_true_kt, m.v_min_kt, m.v_max_kt);
      const double omega = m.k2 * std::tan(deg2rad(bank)) / v_kt;
      out.velocity_fps = v_kt * kKtToFps * heading_unit(wing.psi_deg + omega * cfg.dt_s);
      out.command.pitch_fps = 0.0;
      out.command.roll_deg = bank;
      out.command.roll_mode = RollMode::BankAngle;
      out.command.speed_kt = v_kt;
      return out;
    }
    case PilotIntent::FlyPlanPoint: {
      out.velocity_fps = fly_to_velocity(
          wing, {cfg.pilot.fly_to_e_ft, cfg.pilot.fly_to_n_ft, cfg.pilot.fly_to_u_ft}, m);
      out.command = map_velocity_to_command(out.velocity_fps, wing, m);
      return out;
    }
    case PilotIntent::Base: break;
  }
  if (cfg.pilot.policy == PilotPolicy::FlyToPoint) {
    out.velocity_fps = fly_to_velocity(
        wing, {cfg.pilot.fly_to_e_ft, cfg.pilot.fly_to_n_ft, cfg.pilot.fly_to_u_ft}, m);
  } else if (last_lead != nullptr) {
    // Loose formation: drift toward the slot at a fraction of the closure
    // gains the autonomous policy would use.
    const Vec3 slot = rejoin_point(*last_lead, cfg.rejoin);
    const Vec3 err = slot - position(wing);
    Vec3 v = report_velocity(*last_lead) + 0.1 * Vec3{err.e, err.n, 0.0};
    v.u = std::clamp(v.u + 0.3 * err.u, -m.max_climb_fps, m.max_climb_fps);
    out.velocity_fps = v;
  } else {
    out.velocity_fps = velocity(wing);
  }
  out.command = map_velocity_to_command(out.velocity_fps, wing, cfg.airframe);
  return out;
}

// Emits the scenario parameters a trace consumer needs to recompute verdicts.
void emit_meta(Recorder& rec, const ScenarioConfig& cfg, std::uint64_t frames) {
  rec.begin_frame(0, 0.0);
  auto put = [&rec](const char* field, double v) { rec.rec(Sig::META, field, v); };
  put(tf::kDtS, cfg.dt_s);
  put(tf::kFrameCount, static_cast<double>(frames));
  put(tf::kRhoCFt, cfg.rta.rho_c_ft);
  put(tf::kMarginFrac, cfg.rta.margin_frac);
  put(tf::kGammaCollision, cfg.rta.gamma_collision);
  put(tf::kGammaGeofence, cfg.rta.gamma_geofence);
  put(tf::kCollisionOn, cfg.rta.collision_enabled ? 1.0 : 0.0);
  put(tf::kGeofenceOn, cfg.rta.geofence_enabled ? 1.0 : 0.0);
  put(tf::kLlFt, cfg.ssc.ll_ft);
  put(tf::kFlFt, cfg.ssc.fl_ft);
  put(tf::kTnscFt, cfg.ssc.tnsc_ft);
  put(tf::kTnscRangeFt, cfg.ssc.tnsc_range_ft);
  put(tf::kAfscRangeFt, cfg.ssc.afsc_range_ft);
  put(tf::kSfcLoFt, cfg.ssc.sfc_lo_ft);
  put(tf::kSfcHiFt, cfg.ssc.sfc_hi_ft);
  put(tf::kSfcClosureLimitFps, cfg.ssc.sfc_closure_fps);
  put(tf::kJecWindowS, cfg.ssc.jec_window_s);
  put(tf::kJecRadiusFt, cfg.ssc.jec_radius_ft);
  put(tf::kJecSamplePeriodS, cfg.ssc.jec_sample_period_s);
  put(tf::kThetaAaDeg, cfg.rejoin.theta_aa_deg);
  put(tf::kRhoRFt, cfg.rejoin.rho_r_ft);
  put(tf::kRhoEFt, cfg.rejoin.rho_e_ft);
  put(tf::kTSuccessS, cfg.rejoin.t_success_s);
  put(tf::kStalenessFrames, static_cast<double>(cfg.staleness_frames));
  put(tf::kPlantKind, cfg.wing_plant == PlantKind::SingleIntegrator ? 0.0 : 1.0);
}

void emit_fence(Recorder& rec, Sig sig, const GeofenceSpec& f) {
  auto put = [&rec, sig](const char* field, double v) { rec.rec(sig, field, v); };
  put(tf::kFenceKind, static_cast<double>(f.kind));
  put(tf::kFenceCenterEFt, f.center_e_ft);
  put(tf::kFenceCenterNFt, f.center_n_ft);
  put(tf::kFenceRadiusFt, f.radius_ft);
  put(tf::kFenceEMinFt, f.e_min_ft);
  put(tf::kFenceEMaxFt, f.e_max_ft);
  put(tf::kFenceNMinFt, f.n_min_ft);
  put(tf::kFenceNMaxFt, f.n_max_ft);
  put(tf::kFenceVertCount, static_cast<double>(f.vertices_ft.size()));
  for (std::size_t i = 0; i < f.vertices_ft.size() && i < 8; ++i) {
    put(tf::fence_vert_e_field(i), f.vertices_ft[i].first);
    put(tf::fence_vert_n_field(i), f.vertices_ft[i].second);
  }
}

double min_fence_h(const GeofenceSpec& fence, const Vec3& pos, double gamma) {
  const auto rows = geofence_constraints(fence, pos, gamma);
  double h = std::numeric_limits<double>::infinity();
  for (const BarrierConstraint& row : rows) h = std::min(h, row.h_ft);
  return h;
}

}  // namespace

RunResult run(const ScenarioConfig& cfg) {
  {
    const auto problems = check_scenario(cfg);
    if (!problems.empty()) {
      std::string msg = "scenario rejected:";
      for (const std::string& p : problems) msg += "\n  - " + p;
      throw std::invalid_argument(msg);
    }
  }

  const double dt = cfg.dt_s;
  const std::uint64_t frames = static_cast<std::uint64_t>(std::llround(cfg.duration_s / dt));
  const AirframeModel& m = cfg.airframe;

  AircraftState lead = make_state(cfg.lead.e_ft, cfg.lead.n_ft, cfg.lead.u_ft, cfg.lead.psi_deg,
                                  cfg.lead.phi_deg, cfg.lead.v_kt);
  AircraftState wing = make_state(cfg.wing.e_ft, cfg.wing.n_ft, cfg.wing.u_ft, cfg.wing.psi_deg,
                                  cfg.wing.phi_deg, cfg.wing.v_kt);

  Recorder rec;
  rec.rows().reserve(frames * 110 + 64);
  emit_meta(rec, cfg, frames);
  emit_fence(rec, Sig::META, cfg.fence);

  const auto policy = make_policy(cfg.policy_id);

  GeofenceSpec fence = cfg.fence;
  std::vector<bool> change_done(cfg.fence_changes.size(), false);

  EpmStatus epm;
  SelectorState sel_state;
  PilotModel pilot_model;
  JetWashTrail trail;
  RejoinTimer rejoin_timer;

  std::optional<PositionReport> last_accepted;
  int stale_count = 0;
  double prev_delivered_ts = 0.0;
  bool ever_delivered = false;
  bool contingency_active = false;
  ContingencyPlan contingency_plan = ContingencyPlan::MaintainCurrentPath;
  ValidationFailureKind contingency_trigger = ValidationFailureKind::ReportDropout;
  bool prev_takeover = false;
  double prev_aisl = aisl_ft(lead, wing);
  Vec3 prev_lead_vel = velocity(lead);

  const std::uint64_t sample_every = std::max<std::uint64_t>(
      1, static_cast<std::uint64_t>(std::llround(cfg.ssc.jec_sample_period_s / dt)));

  for (std::uint64_t k = 0; k < frames; ++k) {
    if (k > 0) {
      prev_lead_vel = velocity(lead);
      lead = advance_lead(cfg.lead_script, lead, dt, m);
    }
    const double t = lead.t_s;
    rec.begin_frame(static_cast<std::uint32_t>(k), t);

    // --- lead report: synthesize, then push it through the fault windows ---
    bool report_delivered = true;
    bool w2_dropout = false;
    std::optional<RtaFault> forced_fault;
    PositionReport report = make_lead_report(lead, prev_lead_vel, k == 0 ? 1.0 : dt,
                                             cfg.test_point_id, m);
    if (k == 0) {
      report.ae_fps2 = report.an_fps2 = report.au_fps2 = 0.0;
    }
    for (const FaultEvent& e : cfg.faults) {
      if (!e.active_at(t)) continue;
      switch (e.kind) {
        case FaultKind::LeadReportDropout: report_delivered = false; break;
        case FaultKind::FieldCorruption: corrupt_field(report, e.field, e.value); break;
        case FaultKind::StaleTimestamp:
          if (ever_delivered) report.timestamp_s = prev_delivered_ts;
          break;
        case FaultKind::GpsNoise: {
          CounterRng rng = make_rng(cfg.seed, RngStream::FaultNoise, k);
          report.e_ft += rng.gaussian(0.0, e.sigma_ft);
          report.n_ft += rng.gaussian(0.0, e.sigma_ft);
          report.u_ft += rng.gaussian(0.0, e.sigma_ft);
          break;
        }
        case FaultKind::W2Dropout: w2_dropout = true; break;
        case FaultKind::RtaForcedFault: forced_fault = e.forced; break;
      }
    }
    if (report_delivered) {
      prev_delivered_ts = report.timestamp_s;
      ever_delivered = true;
    }

    // --- validation and staleness ---
    ValidationResult val;
    if (report_delivered) {
      val = validate_report(report, last_accepted ? &*last_accepted : nullptr, cfg.report_limits);
      if (val.valid) {
        last_accepted = report;
        stale_count = 0;
      } else {
        ++stale_count;
      }
    } else {
      val.valid = false;
      val.failure = ValidationFailureKind::ReportDropout;
      val.reason = "no report";
      val.field_valid.fill(false);
      ++stale_count;
    }

    const bool input_stale = stale_count >= cfg.staleness_frames || !last_accepted;
    if (input_stale) {
      const ValidationFailureKind trigger =
          report_delivered ? val.failure : ValidationFailureKind::ReportDropout;
      if (!contingency_active || trigger != contingency_trigger) {
        contingency_trigger = trigger;
        contingency_plan = select_contingency(trigger, cfg.contingency);
        contingency_active = true;
      }
    } else if (stale_count == 0) {
      contingency_active = false;
    }

    // --- desired velocity ---
    Vec3 u_des;
    if (last_accepted) {
      PolicyInput in{wing, *last_accepted, cfg.rejoin, cfg.rta.box, &fence, cfg.seed, k};
      u_des = policy->desired_velocity(in);
    } else {
      u_des = cfg.rta.box.clamp(velocity(wing));
    }

    // --- safety filter ---
    FilterResult w2_result;
    if (input_stale) {
      w2_result.fault = RtaFault::BadInput;
    } else {
      std::vector<BarrierConstraint> rows;
      bool rows_ok = true;
      try {
        rows = build_constraints(cfg.rta, report_position(*last_accepted),
                                 report_velocity(*last_accepted), position(wing), fence);
      } catch (const std::domain_error&) {
        rows_ok = false;
      }
      if (rows_ok) {
        w2_result = filter(u_des, rows, cfg.rta.box, cfg.rta.frame_budget_s);
      } else {
        w2_result.fault = RtaFault::BadInput;
      }
    }
    if (forced_fault) {
      const double computed_min_h = w2_result.min_h_ft;
      w2_result = FilterResult{};
      w2_result.fault = *forced_fault;
      w2_result.min_h_ft = computed_min_h;
    }
    std::optional<FilterResult> w2_msg;
    if (!w2_dropout) w2_msg = w2_result;

    // --- envelope monitor and pilot takeover windows ---
    bool takeover = false;
    for (const PilotWindow& w : cfg.pilot_windows) {
      if (w.contains(t)) {
        takeover = true;
        break;
      }
    }
    epm = check(epm, wing, cfg.trip_limits, takeover);
    if (!takeover && prev_takeover && epm.tripped && epm.reason.kind == TripKind::PilotCommand) {
      epm = reengage(epm, wing, cfg.trip_limits);
    }
    prev_takeover = takeover;

    // --- pilot path ---
    pilot_model.request(contingency_active ? intent_for_plan(contingency_plan) : PilotIntent::Base,
                        k, cfg.pilot.reaction_delay_frames);
    pilot_model.mature(k);
    const PilotOutput pilot =
        pilot_output(pilot_model.current, cfg, wing, last_accepted ? &*last_accepted : nullptr);

    // --- source selection ---
    const Selection sel = select(w2_msg, pilot, epm, wing, m, sel_state);

    // --- fence changes: only while the pilot has the aircraft, only to a
    //     fence the wingman is already inside ---
    for (std::size_t i = 0; i < cfg.fence_changes.size(); ++i) {
      if (change_done[i] || t < cfg.fence_changes[i].t_s) continue;
      change_done[i] = true;
      const GeofenceSpec& next = cfg.fence_changes[i].fence;
      const bool pilot_has_it = sel.source == ControlSource::Pilot;
      const bool inside = min_fence_h(next, position(wing), cfg.rta.gamma_geofence) >= 0.0;
      const bool applied = pilot_has_it && inside;
      if (applied) fence = next;
      emit_fence(rec, Sig::W12, next);
      rec.rec(Sig::W12, tf::kApplied, applied ? 1.0 : 0.0);
    }

    // --- true-state monitors ---
    if (k % sample_every == 0) trail.push(t, position(lead), cfg.ssc);
    const SscVerdict tnsc = check_tnsc(lead, wing, cfg.ssc);
    const SscVerdict afsc = check_afsc(lead, wing, cfg.ssc);
    const SfcVerdict sfc = check_sfc(lead, wing, prev_aisl, dt, cfg.ssc);
    const SscVerdict jec = check_jec(trail, position(wing), cfg.ssc);
    prev_aisl = aisl_ft(lead, wing);

    const Vec3 slot = rejoin_point(lead, cfg.rejoin);
    update_success(rejoin_timer, position(wing), slot, cfg.rejoin, dt);

    const double h_coll = norm(position(wing) - position(lead)) - cfg.rta.rho_c_ft;
    const double h_fence = min_fence_h(fence, position(wing), cfg.rta.gamma_geofence);

    // --- trace rows, fixed signal order within the frame ---
    rec.rec(Sig::W1, tf::kUeFps, u_des.e);
    rec.rec(Sig::W1, tf::kUnFps, u_des.n);
    rec.rec(Sig::W1, tf::kUuFps, u_des.u);

    rec.rec(Sig::W2, tf::kPresent, w2_msg ? 1.0 : 0.0);
    if (w2_msg) {
      rec.rec(Sig::W2, tf::kFault, static_cast<double>(w2_msg->fault));
      rec.rec(Sig::W2, tf::kIntervened, w2_msg->intervened ? 1.0 : 0.0);
      if (w2_msg->u_safe) {
        rec.rec(Sig::W2, tf::kUeFps, w2_msg->u_safe->e);
        rec.rec(Sig::W2, tf::kUnFps, w2_msg->u_safe->n);
        rec.rec(Sig::W2, tf::kUuFps, w2_msg->u_safe->u);
      }
    }

    rec.rec(Sig::W3, tf::kPitchFps, sel.command.pitch_fps);
    rec.rec(Sig::W3, tf::kRollDeg, sel.command.roll_deg);
    rec.rec(Sig::W3, tf::kRollMode, static_cast<double>(sel.command.roll_mode));
    rec.rec(Sig::W3, tf::kSpeedKt, sel.command.speed_kt);
    rec.rec(Sig::W3, tf::kYawDeg, sel.command.yaw_deg);

    rec.rec(Sig::W4, tf::kPresent, report_delivered ? 1.0 : 0.0);
    if (report_delivered) {
      rec.rec(Sig::W4, tf::kLeadEFt, report.e_ft);
      rec.rec(Sig::W4, tf::kLeadNFt, report.n_ft);
      rec.rec(Sig::W4, tf::kLeadUFt, report.u_ft);
      rec.rec(Sig::W4, tf::kLeadPsiDeg, report.psi_deg);
      rec.rec(Sig::W4, tf::kLeadPhiDeg, report.phi_deg);
      rec.rec(Sig::W4, tf::kLeadTasKt, report.tas_kt);
      rec.rec(Sig::W4, tf::kLeadVeFps, report.ve_fps);
      rec.rec(Sig::W4, tf::kLeadVnFps, report.vn_fps);
      rec.rec(Sig::W4, tf::kLeadVuFps, report.vu_fps);
      rec.rec(Sig::W4, tf::kLeadTsS, report.timestamp_s);
    }
    rec.rec(Sig::W4, tf::kWingEFt, wing.e_ft);
    rec.rec(Sig::W4, tf::kWingNFt, wing.n_ft);
    rec.rec(Sig::W4, tf::kWingUFt, wing.u_ft);
    rec.rec(Sig::W4, tf::kWingPsiDeg, wing.psi_deg);
    rec.rec(Sig::W4, tf::kWingPhiDeg, wing.phi_deg);
    rec.rec(Sig::W4, tf::kWingTasKt, wing.v_true_kt);
    rec.rec(Sig::W4, tf::kWingVeFps, wing.ve_fps);
    rec.rec(Sig::W4, tf::kWingVnFps, wing.vn_fps);
    rec.rec(Sig::W4, tf::kWingVuFps, wing.vu_fps);
    rec.rec(Sig::W4, tf::kWingTsS, wing.t_s);

    rec.rec(Sig::W5, tf::kPitchFps, pilot.command.pitch_fps);
    rec.rec(Sig::W5, tf::kRollDeg, pilot.command.roll_deg);
    rec.rec(Sig::W5, tf::kRollMode, static_cast<double>(pilot.command.roll_mode));
    rec.rec(Sig::W5, tf::kSpeedKt, pilot.command.speed_kt);
    rec.rec(Sig::W5, tf::kYawDeg, pilot.command.yaw_deg);

    rec.rec(Sig::W6, tf::kSource, static_cast<double>(sel.source));

    rec.rec(Sig::W7, tf::kFault, static_cast<double>(w2_result.fault));
    rec.rec(Sig::W7, tf::kIntervened, w2_result.intervened ? 1.0 : 0.0);
    rec.rec(Sig::W7, tf::kMinHFt, w2_result.min_h_ft);

    rec.rec(Sig::W8, tf::kEngaged, epm.engaged ? 1.0 : 0.0);
    rec.rec(Sig::W8, tf::kTripped, epm.tripped ? 1.0 : 0.0);
    rec.rec(Sig::W8, tf::kFaulted, epm.faulted ? 1.0 : 0.0);
    rec.rec(Sig::W8, tf::kSource, static_cast<double>(epm.selected_source));
    rec.rec(Sig::W8, tf::kReasonKind, static_cast<double>(epm.reason.kind));
    rec.rec(Sig::W8, tf::kReasonVar, static_cast<double>(epm.reason.var));
    rec.rec(Sig::W8, tf::kReasonValue, epm.reason.value);

    rec.rec(Sig::W9, tf::kTakeover, takeover ? 1.0 : 0.0);

    rec.rec(Sig::W14, tf::kAlert, sel.alert_w14 ? 1.0 : 0.0);

    rec.rec(Sig::W16, tf::kUeFps, u_des.e);
    rec.rec(Sig::W16, tf::kUnFps, u_des.n);
    rec.rec(Sig::W16, tf::kUuFps, u_des.u);

    rec.rec(Sig::W17, tf::kInUeFps, u_des.e);
    rec.rec(Sig::W17, tf::kInUnFps, u_des.n);
    rec.rec(Sig::W17, tf::kInUuFps, u_des.u);
    if (w2_result.u_safe) {
      rec.rec(Sig::W17, tf::kOutUeFps, w2_result.u_safe->e);
      rec.rec(Sig::W17, tf::kOutUnFps, w2_result.u_safe->n);
      rec.rec(Sig::W17, tf::kOutUuFps, w2_result.u_safe->u);
    }
    rec.rec(Sig::W17, tf::kMinHFt, w2_result.min_h_ft);
    rec.rec(Sig::W17, tf::kFault, static_cast<double>(w2_result.fault));

    rec.rec(Sig::VAL, tf::kPresent, report_delivered ? 1.0 : 0.0);
    rec.rec(Sig::VAL, tf::kValid, val.valid ? 1.0 : 0.0);
    rec.rec(Sig::VAL, tf::kFailKind, val.valid ? -1.0 : static_cast<double>(val.failure));
    {
      double bits = 0.0;
      for (std::size_t i = 0; i < kReportFieldCount; ++i) {
        if (!val.field_valid[i]) bits += static_cast<double>(1u << i);
      }
      rec.rec(Sig::VAL, tf::kFieldBits, bits);
    }
    rec.rec(Sig::VAL, tf::kStaleCount, static_cast<double>(stale_count));

    rec.rec(Sig::SSC, tf::kTnscViolated, tnsc.violated ? 1.0 : 0.0);
    rec.rec(Sig::SSC, tf::kTnscValueFt, tnsc.value);
    rec.rec(Sig::SSC, tf::kAfscViolated, afsc.violated ? 1.0 : 0.0);
    rec.rec(Sig::SSC, tf::kAfscValueFt, afsc.value);
    rec.rec(Sig::SSC, tf::kSfcViolated, sfc.violated ? 1.0 : 0.0);
    rec.rec(Sig::SSC, tf::kSfcClosureFps, sfc.closure_fps);
    rec.rec(Sig::SSC, tf::kSfcRelSpeedFps, sfc.rel_speed_fps);
    rec.rec(Sig::SSC, tf::kJecViolated, jec.violated ? 1.0 : 0.0);
    rec.rec(Sig::SSC, tf::kJecValueFt, jec.value);

    rec.rec(Sig::RJN, tf::kDistFt, rejoin_timer.dist_ft);
    rec.rec(Sig::RJN, tf::kTInsideS, rejoin_timer.t_inside_s);
    rec.rec(Sig::RJN, tf::kSucceeded, rejoin_timer.succeeded ? 1.0 : 0.0);
    rec.rec(Sig::RJN, tf::kPointEFt, slot.e);
    rec.rec(Sig::RJN, tf::kPointNFt, slot.n);
    rec.rec(Sig::RJN, tf::kPointUFt, slot.u);

    rec.rec(Sig::SAF, tf::kLeadEFt, lead.e_ft);
    rec.rec(Sig::SAF, tf::kLeadNFt, lead.n_ft);
    rec.rec(Sig::SAF, tf::kLeadUFt, lead.u_ft);
    rec.rec(Sig::SAF, tf::kLeadPsiDeg, lead.psi_deg);
    rec.rec(Sig::SAF, tf::kLeadVeFps, lead.ve_fps);
    rec.rec(Sig::SAF, tf::kLeadVnFps, lead.vn_fps);
    rec.rec(Sig::SAF, tf::kLeadVuFps, lead.vu_fps);
    rec.rec(Sig::SAF, tf::kWingEFt, wing.e_ft);
    rec.rec(Sig::SAF, tf::kWingNFt, wing.n_ft);
    rec.rec(Sig::SAF, tf::kWingUFt, wing.u_ft);
    rec.rec(Sig::SAF, tf::kWingVeFps, wing.ve_fps);
    rec.rec(Sig::SAF, tf::kWingVnFps, wing.vn_fps);
    rec.rec(Sig::SAF, tf::kWingVuFps, wing.vu_fps);
    rec.rec(Sig::SAF, tf::kHCollisionFt, h_coll);
    rec.rec(Sig::SAF, tf::kHFenceMinFt, h_fence);

    rec.rec(Sig::CONT, tf::kActive, contingency_active ? 1.0 : 0.0);
    rec.rec(Sig::CONT, tf::kPlan,
            contingency_active ? static_cast<double>(contingency_plan) : -1.0);
    rec.rec(Sig::CONT, tf::kTriggerKind,
            contingency_active ? static_cast<double>(contingency_trigger) : -1.0);

    // --- advance the wing plant ---
    if (cfg.wing_plant == PlantKind::SingleIntegrator) {
      wing = step_velocity(wing, sel.velocity_fps, dt);
    } else {
      wing = step(wing, sel.command, dt, m);
    }
  }

  RunResult out;
  out.records = std::move(rec.rows());
  out.meta.config_hash = config_hash(cfg);
  out.meta.seed = cfg.seed;
  out.report = verify_records(out.records);
  out.final_lead = lead;
  out.final_wing = wing;
  return out;
}

}  // namespace rtasim
