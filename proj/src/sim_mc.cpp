#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "rtasim/rng.hpp"
#include "rtasim/sim.hpp"

namespace rtasim {

namespace {

bool placement_ok(const ScenarioConfig& c) {
  const Vec3 lead_pos{c.lead.e_ft, c.lead.n_ft, c.lead.u_ft};
  const Vec3 wing_pos{c.wing.e_ft, c.wing.n_ft, c.wing.u_ft};
  if (c.rta.collision_enabled) {
    const double enforced = c.rta.rho_c_ft * (1.0 + c.rta.margin_frac);
    if (norm(wing_pos - lead_pos) < enforced) return false;
  }
  if (c.rta.geofence_enabled) {
    for (const BarrierConstraint& row :
         geofence_constraints(c.fence, wing_pos, c.rta.gamma_geofence)) {
      if (row.h_ft < c.init_fence_margin_ft) return false;
    }
    for (const BarrierConstraint& row :
         geofence_constraints(c.fence, lead_pos, c.rta.gamma_geofence)) {
      if (row.h_ft < c.init_fence_margin_ft) return false;
    }
  }
  return true;
}

}  // namespace

ScenarioConfig episode_scenario(const ScenarioConfig& base, std::uint64_t seed, int episode) {
  CounterRng rng = make_rng(seed, RngStream::MonteCarloInit,
                            static_cast<std::uint64_t>(episode));
  ScenarioConfig c = base;
  c.seed = mix64(seed ^ mix64(static_cast<std::uint64_t>(episode) + 1));
  for (int attempt = 0; attempt < 200; ++attempt) {
    const double bearing = rng.uniform(0.0, 360.0);
    const double range = rng.uniform(base.mc.range_min_ft, base.mc.range_max_ft);
    const double du = rng.uniform(-base.mc.alt_band_ft, base.mc.alt_band_ft);
    const double psi = rng.uniform(0.0, 360.0);
    const double v = rng.uniform(base.mc.v_min_kt, base.mc.v_max_kt);
    const Vec3 pos = Vec3{base.lead.e_ft, base.lead.n_ft, base.lead.u_ft} +
                     range * heading_unit(bearing) + Vec3{0.0, 0.0, du};
    c.wing.e_ft = pos.e;
    c.wing.n_ft = pos.n;
    c.wing.u_ft = pos.u;
    c.wing.psi_deg = psi;
    c.wing.phi_deg = 0.0;
    c.wing.v_kt = v;
    if (placement_ok(c)) return c;
  }
  throw std::runtime_error("episode " + std::to_string(episode) +
                           ": no feasible wing placement after 200 draws");
}

MonteCarloResult monte_carlo(const ScenarioConfig& base, int episodes, std::uint64_t seed,
                             bool parallel) {
  if (episodes < 0) throw std::invalid_argument("episode count cannot be negative");
  std::vector<VerifierReport> reports(static_cast<std::size_t>(episodes));
  std::vector<std::string> errors(static_cast<std::size_t>(episodes));

#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int i = 0; i < episodes; ++i) {
    try {
      const ScenarioConfig c = episode_scenario(base, seed, i);
      reports[static_cast<std::size_t>(i)] = run(c).report;
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(i)] = e.what();
    }
  }

  for (int i = 0; i < episodes; ++i) {
    if (!errors[static_cast<std::size_t>(i)].empty())
      throw std::runtime_error("episode " + std::to_string(i) + " failed: " +
                               errors[static_cast<std::size_t>(i)]);
  }

  // Index-ordered reduction keeps the aggregate bit-identical to a serial run.
  MonteCarloResult out;
  out.episodes = static_cast<std::uint64_t>(episodes);
  out.episode_min_h_ft.reserve(static_cast<std::size_t>(episodes));
  double intervention_sum = 0.0;
  for (int i = 0; i < episodes; ++i) {
    const VerifierReport& r = reports[static_cast<std::size_t>(i)];
    const double min_h = std::min(r.min_collision_h_ft, r.min_fence_h_ft);
    out.episode_min_h_ft.push_back(min_h);
    out.min_h_overall_ft = std::min(out.min_h_overall_ft, min_h);
    if (r.hard_violation) ++out.hard_violation_episodes;
    if (min_h < -1.0) ++out.below_tolerance_episodes;
    if (r.intervention_frames > 0) ++out.episodes_with_intervention;
    intervention_sum += static_cast<double>(r.intervention_frames);
    if (r.rejoin_succeeded) ++out.rejoin_successes;
    out.epm_trips += r.epm_trips;
    out.missing_records += r.missing_records;
    out.verdict_mismatches += r.verdict_mismatches;
  }
  if (episodes > 0) out.mean_intervention_frames = intervention_sum / episodes;
  return out;
}

}  // namespace rtasim
