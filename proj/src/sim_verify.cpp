#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "rtasim/sim.hpp"

namespace rtasim {

namespace {

// Recorded-vs-recomputed margin agreement; wide enough to absorb the trace's
// nine-significant-digit number format at coordinate scale.
constexpr double kValueTol = 1e-2;

struct FenceAcc {
  GeofenceSpec f;
  std::array<std::pair<double, double>, 8> verts{};
  std::size_t vert_count = 0;

  // Returns true when the row belonged to the fence block.
  bool apply(const char* field, double v) {
    if (field == tf::kFenceKind) {
      f.kind = static_cast<GeofenceSpec::Kind>(static_cast<int>(v));
    } else if (field == tf::kFenceCenterEFt) {
      f.center_e_ft = v;
    } else if (field == tf::kFenceCenterNFt) {
      f.center_n_ft = v;
    } else if (field == tf::kFenceRadiusFt) {
      f.radius_ft = v;
    } else if (field == tf::kFenceEMinFt) {
      f.e_min_ft = v;
    } else if (field == tf::kFenceEMaxFt) {
      f.e_max_ft = v;
    } else if (field == tf::kFenceNMinFt) {
      f.n_min_ft = v;
    } else if (field == tf::kFenceNMaxFt) {
      f.n_max_ft = v;
    } else if (field == tf::kFenceVertCount) {
      vert_count = static_cast<std::size_t>(v);
    } else {
      for (std::size_t i = 0; i < 8; ++i) {
        if (field == tf::fence_vert_e_field(i)) {
          verts[i].first = v;
          return true;
        }
        if (field == tf::fence_vert_n_field(i)) {
          verts[i].second = v;
          return true;
        }
      }
      return false;
    }
    return true;
  }

  GeofenceSpec build() const {
    GeofenceSpec out = f;
    out.vertices_ft.assign(verts.begin(), verts.begin() + std::min<std::size_t>(vert_count, 8));
    return out;
  }
};

// Everything one frame's rows contribute, reset per frame.
struct FrameView {
  std::uint32_t sig_mask = 0;

  std::array<double, 13> saf{};  // lead e/n/u/psi ve/vn/vu, wing e/n/u ve/vn/vu
  std::uint32_t saf_mask = 0;
  double rec_h_coll = 0.0, rec_h_fence = 0.0;
  bool rec_h_coll_seen = false, rec_h_fence_seen = false;

  double tnsc = -1.0, afsc = -1.0, sfc = -1.0, jec = -1.0;
  double rjn_succ = -1.0;

  double w2_present = -1.0, w2_fault = 0.0, w2_interv = 0.0;
  double tripped = 0.0, faulted = 0.0;
  double source = -1.0, alert = 0.0, cont_active = 0.0;

  void reset() { *this = FrameView{}; }
};

int saf_index(const char* field) {
  if (field == tf::kLeadEFt) return 0;
  if (field == tf::kLeadNFt) return 1;
  if (field == tf::kLeadUFt) return 2;
  if (field == tf::kLeadPsiDeg) return 3;
  if (field == tf::kLeadVeFps) return 4;
  if (field == tf::kLeadVnFps) return 5;
  if (field == tf::kLeadVuFps) return 6;
  if (field == tf::kWingEFt) return 7;
  if (field == tf::kWingNFt) return 8;
  if (field == tf::kWingUFt) return 9;
  if (field == tf::kWingVeFps) return 10;
  if (field == tf::kWingVnFps) return 11;
  if (field == tf::kWingVuFps) return 12;
  return -1;
}

AircraftState state_from(double e, double n, double u, double psi, const Vec3& vel) {
  AircraftState s;
  s.e_ft = e;
  s.n_ft = n;
  s.u_ft = u;
  s.psi_deg = psi;
  s.ve_fps = vel.e;
  s.vn_fps = vel.n;
  s.vu_fps = vel.u;
  s.v_true_kt = hnorm(vel) / kKtToFps;
  return s;
}

}  // namespace

VerifierReport verify_records(const std::vector<TraceRecord>& rows) {
  std::map<const char*, double> meta;
  FenceAcc meta_fence;
  FenceAcc pending_fence;
  GeofenceSpec fence;
  bool fence_ready = false;

  VerifierReport rep;

  // Scenario parameters, filled at the first frame boundary.
  bool params_ready = false;
  double dt = 0.0;
  double rho_c = 0.0;
  SscConfig ssc;
  RejoinSpec rejoin;
  std::uint64_t sample_every = 1;

  JetWashTrail trail;
  RejoinTimer timer;
  double prev_aisl = 0.0;
  bool have_prev_aisl = false;
  bool prev_epm_latched = false;
  bool rejoin_done = false;

  FrameView fv;
  std::int64_t cur_frame = -1;
  double cur_t = 0.0;
  std::uint64_t verified_frames = 0;

  auto load_params = [&]() {
    if (params_ready) return;
    auto need = [&meta](const char* field) {
      auto it = meta.find(field);
      if (it == meta.end())
        throw std::runtime_error(std::string("trace lacks parameter row ") + field);
      return it->second;
    };
    dt = need(tf::kDtS);
    if (!(dt > 0.0)) throw std::runtime_error("trace has a non-positive frame period");
    rep.frames = static_cast<std::uint64_t>(need(tf::kFrameCount));
    rho_c = need(tf::kRhoCFt);
    ssc.ll_ft = need(tf::kLlFt);
    ssc.fl_ft = need(tf::kFlFt);
    ssc.tnsc_ft = need(tf::kTnscFt);
    ssc.tnsc_range_ft = need(tf::kTnscRangeFt);
    ssc.afsc_range_ft = need(tf::kAfscRangeFt);
    ssc.sfc_lo_ft = need(tf::kSfcLoFt);
    ssc.sfc_hi_ft = need(tf::kSfcHiFt);
    ssc.sfc_closure_fps = need(tf::kSfcClosureLimitFps);
    ssc.jec_window_s = need(tf::kJecWindowS);
    ssc.jec_radius_ft = need(tf::kJecRadiusFt);
    ssc.jec_sample_period_s = need(tf::kJecSamplePeriodS);
    rejoin.theta_aa_deg = need(tf::kThetaAaDeg);
    rejoin.rho_r_ft = need(tf::kRhoRFt);
    rejoin.rho_e_ft = need(tf::kRhoEFt);
    rejoin.t_success_s = need(tf::kTSuccessS);
    sample_every = std::max<std::uint64_t>(
        1, static_cast<std::uint64_t>(std::llround(ssc.jec_sample_period_s / dt)));
    fence = meta_fence.build();
    fence_ready = true;
    params_ready = true;
  };

  auto finalize_frame = [&](std::uint64_t frame, double t) {
    load_params();
    ++verified_frames;

    for (Sig s : kLiveSignals) {
      if ((fv.sig_mask & (1u << static_cast<unsigned>(s))) == 0) ++rep.missing_records;
    }

    const bool saf_complete = fv.saf_mask == 0x1FFFu && fv.rec_h_coll_seen && fv.rec_h_fence_seen;
    if (!saf_complete) {
      ++rep.verdict_mismatches;
    } else {
      const Vec3 lead_pos{fv.saf[0], fv.saf[1], fv.saf[2]};
      const Vec3 lead_vel{fv.saf[4], fv.saf[5], fv.saf[6]};
      const Vec3 wing_pos{fv.saf[7], fv.saf[8], fv.saf[9]};
      const Vec3 wing_vel{fv.saf[10], fv.saf[11], fv.saf[12]};
      const AircraftState lead = state_from(lead_pos.e, lead_pos.n, lead_pos.u, fv.saf[3], lead_vel);
      const AircraftState wing = state_from(wing_pos.e, wing_pos.n, wing_pos.u, 0.0, wing_vel);

      const double h_coll = norm(wing_pos - lead_pos) - rho_c;
      double h_fence = std::numeric_limits<double>::infinity();
      if (fence_ready) {
        for (const BarrierConstraint& row : geofence_constraints(fence, wing_pos, 1.0)) {
          h_fence = std::min(h_fence, row.h_ft);
        }
      }
      rep.min_collision_h_ft = std::min(rep.min_collision_h_ft, h_coll);
      rep.min_fence_h_ft = std::min(rep.min_fence_h_ft, h_fence);
      if (std::abs(h_coll - fv.rec_h_coll) > kValueTol) ++rep.verdict_mismatches;
      if (std::isfinite(h_fence) &&
          std::abs(h_fence - fv.rec_h_fence) > kValueTol)
        ++rep.verdict_mismatches;

      if (frame % sample_every == 0) trail.push(t, lead_pos, ssc);
      const SscVerdict tnsc = check_tnsc(lead, wing, ssc);
      const SscVerdict afsc = check_afsc(lead, wing, ssc);
      const SfcVerdict sfc =
          check_sfc(lead, wing, have_prev_aisl ? prev_aisl : aisl_ft(lead, wing), dt, ssc);
      const SscVerdict jec = check_jec(trail, wing_pos, ssc);
      prev_aisl = aisl_ft(lead, wing);
      have_prev_aisl = true;

      if (tnsc.violated) ++rep.tnsc_violation_frames;
      if (afsc.violated) ++rep.afsc_violation_frames;
      if (sfc.violated) ++rep.sfc_violation_frames;
      if (jec.violated) ++rep.jec_violation_frames;

      if (fv.tnsc != (tnsc.violated ? 1.0 : 0.0)) ++rep.verdict_mismatches;
      if (fv.afsc != (afsc.violated ? 1.0 : 0.0)) ++rep.verdict_mismatches;
      if (fv.sfc != (sfc.violated ? 1.0 : 0.0)) ++rep.verdict_mismatches;
      if (fv.jec != (jec.violated ? 1.0 : 0.0)) ++rep.verdict_mismatches;

      const Vec3 slot = rejoin_point(lead_pos.e, lead_pos.n, lead_pos.u, fv.saf[3], rejoin);
      update_success(timer, wing_pos, slot, rejoin, dt);
      if (fv.rjn_succ != (timer.succeeded ? 1.0 : 0.0)) ++rep.verdict_mismatches;
      if (timer.succeeded && !rejoin_done) {
        rejoin_done = true;
        rep.rejoin_succeeded = true;
        rep.rejoin_time_s = t;
      }
    }

    if (fv.w2_present == 0.0) ++rep.w2_absent_frames;
    if (fv.w2_present == 1.0 && fv.w2_fault != 0.0) ++rep.w2_fault_frames;
    if (fv.w2_present == 1.0 && fv.w2_interv == 1.0) ++rep.intervention_frames;
    const bool latched = fv.tripped == 1.0 || fv.faulted == 1.0;
    if (latched && !prev_epm_latched) ++rep.epm_trips;
    prev_epm_latched = latched;
    if (fv.source == 1.0) ++rep.pilot_source_frames;
    if (fv.alert == 1.0) ++rep.w14_alert_frames;
    if (fv.cont_active == 1.0) ++rep.contingency_frames;

    fv.reset();
  };

  for (const TraceRecord& r : rows) {
    if (static_cast<std::int64_t>(r.frame) != cur_frame) {
      if (static_cast<std::int64_t>(r.frame) < cur_frame)
        throw std::runtime_error("trace rows are not frame-ordered");
      if (cur_frame >= 0) finalize_frame(static_cast<std::uint64_t>(cur_frame), cur_t);
      cur_frame = static_cast<std::int64_t>(r.frame);
    }
    cur_t = r.t_s;
    fv.sig_mask |= 1u << static_cast<unsigned>(r.sig);
    if (r.sig != Sig::META) load_params();

    switch (r.sig) {
      case Sig::META:
        if (!meta_fence.apply(r.field, r.value)) meta[r.field] = r.value;
        break;
      case Sig::W12:
        if (r.field == tf::kApplied) {
          if (r.value == 1.0) {
            fence = pending_fence.build();
            fence_ready = true;
            if (params_ready) ++rep.fence_changes_applied;
          } else if (params_ready) {
            ++rep.fence_changes_rejected;
          }
          pending_fence = FenceAcc{};
        } else {
          pending_fence.apply(r.field, r.value);
        }
        break;
      case Sig::SAF: {
        const int idx = saf_index(r.field);
        if (idx >= 0) {
          fv.saf[static_cast<std::size_t>(idx)] = r.value;
          fv.saf_mask |= 1u << static_cast<unsigned>(idx);
        } else if (r.field == tf::kHCollisionFt) {
          fv.rec_h_coll = r.value;
          fv.rec_h_coll_seen = true;
        } else if (r.field == tf::kHFenceMinFt) {
          fv.rec_h_fence = r.value;
          fv.rec_h_fence_seen = true;
        }
        break;
      }
      case Sig::SSC:
        if (r.field == tf::kTnscViolated) fv.tnsc = r.value;
        if (r.field == tf::kAfscViolated) fv.afsc = r.value;
        if (r.field == tf::kSfcViolated) fv.sfc = r.value;
        if (r.field == tf::kJecViolated) fv.jec = r.value;
        break;
      case Sig::RJN:
        if (r.field == tf::kSucceeded) fv.rjn_succ = r.value;
        break;
      case Sig::W2:
        if (r.field == tf::kPresent) fv.w2_present = r.value;
        if (r.field == tf::kFault) fv.w2_fault = r.value;
        if (r.field == tf::kIntervened) fv.w2_interv = r.value;
        break;
      case Sig::W8:
        if (r.field == tf::kTripped) fv.tripped = r.value;
        if (r.field == tf::kFaulted) fv.faulted = r.value;
        break;
      case Sig::W6:
        if (r.field == tf::kSource) fv.source = r.value;
        break;
      case Sig::W14:
        if (r.field == tf::kAlert) fv.alert = r.value;
        break;
      case Sig::CONT:
        if (r.field == tf::kActive) fv.cont_active = r.value;
        break;
      default:
        break;
    }
  }
  if (cur_frame >= 0) finalize_frame(static_cast<std::uint64_t>(cur_frame), cur_t);
  load_params();
  if (verified_frames < rep.frames)
    rep.missing_records += kLiveSignalCount * (rep.frames - verified_frames);

  rep.max_fence_penetration_ft = std::max(0.0, -rep.min_fence_h_ft);
  rep.h1_violation = rep.min_collision_h_ft < 0.0;
  rep.h3_violation = rep.max_fence_penetration_ft > 0.0;
  rep.hard_violation = rep.h1_violation || rep.h3_violation;
  return rep;
}

}  // namespace rtasim
