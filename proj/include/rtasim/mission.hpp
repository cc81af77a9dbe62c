#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "rtasim/core.hpp"
#include "rtasim/rta.hpp"

namespace rtasim {

struct RejoinSpec {
  double theta_aa_deg = 60.0;   // commanded aspect angle of the slot
  double rho_r_ft = 1000.0;     // slot range from the lead
  double rho_e_ft = 100.0;      // capture radius around the slot
  double t_success_s = 10.0;    // dwell required inside the capture radius
};

// Slot position: range rho_r from the lead at angle psi_L + 180 + theta_AA,
// co-altitude with the lead.
Vec3 rejoin_point(double lead_e_ft, double lead_n_ft, double lead_u_ft, double lead_psi_deg,
                  const RejoinSpec& spec);
Vec3 rejoin_point(const AircraftState& lead, const RejoinSpec& spec);
Vec3 rejoin_point(const PositionReport& lead, const RejoinSpec& spec);

// Dwell tracker: the clock accumulates while the wingman stays inside the
// capture radius, resets on exit, and success latches once reached.
struct RejoinTimer {
  double t_inside_s = 0.0;
  bool succeeded = false;
  double dist_ft = 0.0;
};

void update_success(RejoinTimer& timer, const Vec3& wing_pos_ft, const Vec3& point_ft,
                    const RejoinSpec& spec, double dt_s);

// Everything a desired-velocity policy may look at for one frame.  The lead
// report is the most recently accepted one; the frame loop never hands an
// invalid report to a policy.
struct PolicyInput {
  const AircraftState& wing;
  const PositionReport& lead;
  RejoinSpec rejoin;
  ControlBox box;
  const GeofenceSpec* fence = nullptr;
  std::uint64_t seed = 0;
  std::uint64_t frame = 0;
};

// Deterministic map from inputs to a desired velocity; randomized policies
// derive their draws from (seed, frame) only.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual Vec3 desired_velocity(const PolicyInput& in) const = 0;
  virtual const char* name() const = 0;
};

// Ids: "rejoin" (proportional slot capture), "charge_lead" (max closure),
// "adversarial_random" (mode-switching worst-case seeker), "hold" (keep the
// current velocity).  Unknown ids throw std::invalid_argument.
std::unique_ptr<Policy> make_policy(const std::string& id);

}  // namespace rtasim
