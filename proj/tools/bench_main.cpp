#include <chrono>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "rtasim/sim.hpp"

// Times the episode batch in parallel and serial form and checks that the two
// aggregates are identical, which is what makes the serial path a usable
// reference implementation rather than dead code.
int main(int argc, char** argv) {
  CLI::App app{"episode-batch benchmark: parallel vs serial reference"};
  std::string scenario_path;
  int episodes = 64;
  std::uint64_t seed = 7;
  app.add_option("--scenario", scenario_path, "scenario JSON file (default: built-in)");
  app.add_option("--episodes", episodes, "episode count")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "placement seed");
  CLI11_PARSE(app, argc, argv);

  try {
    rtasim::ScenarioConfig cfg;
    if (!scenario_path.empty()) {
      cfg = rtasim::load_scenario(scenario_path);
    } else {
      cfg.duration_s = 30.0;
      cfg.policy_id = "adversarial_random";
      cfg.wing_plant = rtasim::PlantKind::SingleIntegrator;
      cfg.trip_limits = rtasim::TripLimits::wide();
      cfg.fence.kind = rtasim::GeofenceSpec::Kind::Circle;
      cfg.fence.radius_ft = 20000.0;
    }

    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    const auto par = rtasim::monte_carlo(cfg, episodes, seed, true);
    const auto t1 = clock::now();
    const auto ser = rtasim::monte_carlo(cfg, episodes, seed, false);
    const auto t2 = clock::now();

    const double par_s = std::chrono::duration<double>(t1 - t0).count();
    const double ser_s = std::chrono::duration<double>(t2 - t1).count();
    std::printf("episodes            %d\n", episodes);
    std::printf("parallel            %.3f s\n", par_s);
    std::printf("serial reference    %.3f s\n", ser_s);
    std::printf("speedup             %.2fx\n", par_s > 0.0 ? ser_s / par_s : 0.0);

    const bool equal = par.episode_min_h_ft == ser.episode_min_h_ft &&
                       par.hard_violation_episodes == ser.hard_violation_episodes &&
                       par.min_h_overall_ft == ser.min_h_overall_ft &&
                       par.mean_intervention_frames == ser.mean_intervention_frames &&
                       par.missing_records == ser.missing_records &&
                       par.verdict_mismatches == ser.verdict_mismatches;
    std::printf("aggregates equal    %s\n", equal ? "yes" : "NO");
    return equal ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
