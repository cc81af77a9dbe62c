#include "rtasim/mission.hpp"

#include <cmath>
#include <stdexcept>

#include "rtasim/dynamics.hpp"
#include "rtasim/rng.hpp"

namespace rtasim {

Vec3 rejoin_point(double lead_e_ft, double lead_n_ft, double lead_u_ft, double lead_psi_deg,
                  const RejoinSpec& spec) {
  Vec3 dir = heading_unit(lead_psi_deg + 180.0 + spec.theta_aa_deg);
  return {lead_e_ft + spec.rho_r_ft * dir.e, lead_n_ft + spec.rho_r_ft * dir.n, lead_u_ft};
}

Vec3 rejoin_point(const AircraftState& lead, const RejoinSpec& spec) {
  return rejoin_point(lead.e_ft, lead.n_ft, lead.u_ft, lead.psi_deg, spec);
}

Vec3 rejoin_point(const PositionReport& lead, const RejoinSpec& spec) {
  return rejoin_point(lead.e_ft, lead.n_ft, lead.u_ft, lead.psi_deg, spec);
}

void update_success(RejoinTimer& timer, const Vec3& wing_pos_ft, const Vec3& point_ft,
                    const RejoinSpec& spec, double dt_s) {
  timer.dist_ft = norm(wing_pos_ft - point_ft);
  if (timer.succeeded) return;   // latched
  if (timer.dist_ft <= spec.rho_e_ft) {
    timer.t_inside_s += dt_s;
    if (timer.t_inside_s >= spec.t_success_s) timer.succeeded = true;
  } else {
    timer.t_inside_s = 0.0;
  }
}

namespace {

constexpr double kPosGainPerS = 0.2;
constexpr double kAltGainPerS = 0.5;

// Proportional slot capture: feedforward at the formation speed for the
// current geometry plus a position correction toward the slot.
class RejoinPolicy final : public Policy {
 public:
  Vec3 desired_velocity(const PolicyInput& in) const override {
    Vec3 slot = rejoin_point(in.lead, in.rejoin);
    Vec3 wing_pos = position(in.wing);

    double v_form_kt = in.lead.tas_kt;
    double range = std::hypot(in.wing.e_ft - in.lead.e_ft, in.wing.n_ft - in.lead.n_ft);
    if (in.lead.phi_deg != 0.0 && std::fabs(in.lead.phi_deg) < 90.0 && in.lead.tas_kt > 0.0 &&
        range > 1e-9) {
      double theta = aspect_angle_deg(in.lead.e_ft, in.lead.n_ft, in.lead.psi_deg, in.wing.e_ft,
                                      in.wing.n_ft);
      v_form_kt = target_bank_speed(in.lead.tas_kt, in.lead.phi_deg, theta, range).v_kt;
    }

    Vec3 ff = v_form_kt * kKtToFps * heading_unit(in.lead.psi_deg);
    Vec3 err = slot - wing_pos;
    Vec3 u{ff.e + kPosGainPerS * err.e, ff.n + kPosGainPerS * err.n, kAltGainPerS * err.u};
    return in.box.clamp(u);
  }
  const char* name() const override { return "rejoin"; }
};

Vec3 charge_velocity(const PolicyInput& in) {
  Vec3 dir = unit_or_zero(report_position(in.lead) - position(in.wing));
  return in.box.clamp(1e9 * dir);
}

class ChargeLeadPolicy final : public Policy {
 public:
  Vec3 desired_velocity(const PolicyInput& in) const override { return charge_velocity(in); }
  const char* name() const override { return "charge_lead"; }
};

class HoldPolicy final : public Policy {
 public:
  Vec3 desired_velocity(const PolicyInput& in) const override {
    return in.box.clamp(velocity(in.wing));
  }
  const char* name() const override { return "hold"; }
};

// Worst-case seeker: alternates between charging the lead, running for the
// fence, and uniform noise, in five-second blocks drawn from the episode seed.
class AdversarialRandomPolicy final : public Policy {
 public:
  Vec3 desired_velocity(const PolicyInput& in) const override {
    constexpr std::uint64_t kBlockFrames = 250;
    std::uint64_t block = in.frame / kBlockFrames;
    double pick = make_rng(in.seed, RngStream::AdversarialPolicy, (1ULL << 40) + block).uniform();

    if (pick < 0.75) return charge_velocity(in);
    if (pick < 0.90 && in.fence) {
      auto rows = geofence_constraints(*in.fence, position(in.wing), 1.0);
      const BarrierConstraint* nearest = &rows.front();
      for (const BarrierConstraint& r : rows) {
        if (r.h_ft < nearest->h_ft) nearest = &r;
      }
      Vec3 outward = -1.0 * nearest->grad;
      if (norm(outward) < 1e-9) outward = heading_unit(in.wing.psi_deg);
      return in.box.clamp(1e9 * outward);
    }
    CounterRng rng = make_rng(in.seed, RngStream::AdversarialPolicy, (2ULL << 40) + in.frame);
    return {rng.uniform(in.box.e_min_fps, in.box.e_max_fps),
            rng.uniform(in.box.n_min_fps, in.box.n_max_fps),
            rng.uniform(in.box.u_min_fps, in.box.u_max_fps)};
  }
  const char* name() const override { return "adversarial_random"; }
};

}  // namespace

std::unique_ptr<Policy> make_policy(const std::string& id) {
  if (id == "rejoin") return std::make_unique<RejoinPolicy>();
  if (id == "charge_lead") return std::make_unique<ChargeLeadPolicy>();
  if (id == "adversarial_random") return std::make_unique<AdversarialRandomPolicy>();
  if (id == "hold") return std::make_unique<HoldPolicy>();
  throw std::invalid_argument("unknown policy id: " + id);
}

}  // namespace rtasim
