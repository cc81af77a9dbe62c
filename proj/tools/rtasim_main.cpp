#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rtasim/sim.hpp"

namespace {

using namespace rtasim;

void print_report(const VerifierReport& r) {
  std::printf("frames                 %llu\n", static_cast<unsigned long long>(r.frames));
  std::printf("min separation margin  %.3f ft\n", r.min_collision_h_ft);
  std::printf("min fence margin       %.3f ft\n", r.min_fence_h_ft);
  std::printf("fence penetration      %.3f ft\n", r.max_fence_penetration_ft);
  std::printf("hard violation         %s\n", r.hard_violation ? "YES" : "no");
  std::printf("intervention frames    %llu\n",
              static_cast<unsigned long long>(r.intervention_frames));
  std::printf("pilot-source frames    %llu\n",
              static_cast<unsigned long long>(r.pilot_source_frames));
  std::printf("filter fault frames    %llu\n",
              static_cast<unsigned long long>(r.w2_fault_frames));
  std::printf("filter absent frames   %llu\n",
              static_cast<unsigned long long>(r.w2_absent_frames));
  std::printf("alert frames           %llu\n",
              static_cast<unsigned long long>(r.w14_alert_frames));
  std::printf("contingency frames     %llu\n",
              static_cast<unsigned long long>(r.contingency_frames));
  std::printf("monitor trips          %llu\n", static_cast<unsigned long long>(r.epm_trips));
  std::printf("nose-clearance frames  %llu\n",
              static_cast<unsigned long long>(r.tnsc_violation_frames));
  std::printf("altitude-stack frames  %llu\n",
              static_cast<unsigned long long>(r.afsc_violation_frames));
  std::printf("closure frames         %llu\n",
              static_cast<unsigned long long>(r.sfc_violation_frames));
  std::printf("wash-exclusion frames  %llu\n",
              static_cast<unsigned long long>(r.jec_violation_frames));
  std::printf("rejoin succeeded       %s", r.rejoin_succeeded ? "yes" : "no");
  if (r.rejoin_succeeded) std::printf(" at t=%.2f s", r.rejoin_time_s);
  std::printf("\n");
  std::printf("missing records        %llu\n",
              static_cast<unsigned long long>(r.missing_records));
  std::printf("verdict mismatches     %llu\n",
              static_cast<unsigned long long>(r.verdict_mismatches));
}

// Wide per-frame table of the true-state rows, ready for gnuplot `using`.
void write_plot_data(const std::string& path, const std::vector<TraceRecord>& rows) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open plot file: " + path);
  out << "# t_s lead_e lead_n lead_u wing_e wing_n wing_u h_collision h_fence\n";
  double t = 0.0;
  double v[8] = {0, 0, 0, 0, 0, 0, 0, 0};
  std::uint32_t frame = 0;
  bool any = false;
  auto flush = [&]() {
    if (!any) return;
    out << format_g9(t);
    for (double x : v) out << ' ' << format_g9(x);
    out << '\n';
  };
  for (const TraceRecord& r : rows) {
    if (r.sig != Sig::SAF) continue;
    if (any && r.frame != frame) flush();
    frame = r.frame;
    t = r.t_s;
    any = true;
    if (r.field == tf::kLeadEFt) v[0] = r.value;
    if (r.field == tf::kLeadNFt) v[1] = r.value;
    if (r.field == tf::kLeadUFt) v[2] = r.value;
    if (r.field == tf::kWingEFt) v[3] = r.value;
    if (r.field == tf::kWingNFt) v[4] = r.value;
    if (r.field == tf::kWingUFt) v[5] = r.value;
    if (r.field == tf::kHCollisionFt) v[6] = r.value;
    if (r.field == tf::kHFenceMinFt) v[7] = r.value;
  }
  flush();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-aircraft formation simulator with an optimization-based safety filter"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir;
  std::string plot_path;
  std::string trace_path;
  std::optional<std::uint64_t> seed_override;
  int episodes = 100;
  bool serial = false;

  CLI::App* cmd_run = app.add_subcommand("run", "run one scenario and verify its trace");
  cmd_run->add_option("--scenario", scenario_path, "scenario JSON file")->required();
  cmd_run->add_option("--seed", seed_override, "override the scenario seed");
  cmd_run->add_option("--out", out_dir, "directory for trace.csv and its metadata");
  cmd_run->add_option("--plot", plot_path, "write a gnuplot-ready true-state table");

  CLI::App* cmd_verify = app.add_subcommand("verify", "recheck a recorded trace");
  cmd_verify->add_option("--trace", trace_path, "trace CSV file")->required();

  CLI::App* cmd_mc = app.add_subcommand("montecarlo", "randomized-placement episode batch");
  cmd_mc->add_option("--scenario", scenario_path, "scenario JSON file")->required();
  cmd_mc->add_option("--episodes", episodes, "episode count")->check(CLI::PositiveNumber);
  cmd_mc->add_option("--seed", seed_override, "placement seed (default: scenario seed)");
  cmd_mc->add_flag("--serial", serial, "disable parallel episodes");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_run->parsed()) {
      ScenarioConfig cfg = load_scenario(scenario_path);
      if (seed_override) cfg.seed = *seed_override;
      const RunResult res = run(cfg);
      if (!out_dir.empty()) {
        const std::string trace_file = out_dir + "/trace.csv";
        write_trace_csv(trace_file, res.records, res.meta);
        std::printf("trace written to %s\n", trace_file.c_str());
      }
      if (!plot_path.empty()) write_plot_data(plot_path, res.records);
      print_report(res.report);
      return res.report.hard_violation ? 2 : 0;
    }
    if (cmd_verify->parsed()) {
      const auto rows = read_trace_csv(trace_path);
      const VerifierReport rep = verify_records(rows);
      print_report(rep);
      return rep.hard_violation ? 2 : 0;
    }
    if (cmd_mc->parsed()) {
      ScenarioConfig cfg = load_scenario(scenario_path);
      const std::uint64_t seed = seed_override.value_or(cfg.seed);
      const MonteCarloResult mc = monte_carlo(cfg, episodes, seed, !serial);
      std::printf("episodes               %llu\n",
                  static_cast<unsigned long long>(mc.episodes));
      std::printf("hard violations        %llu\n",
                  static_cast<unsigned long long>(mc.hard_violation_episodes));
      std::printf("below -1 ft            %llu\n",
                  static_cast<unsigned long long>(mc.below_tolerance_episodes));
      std::printf("min margin overall     %.3f ft\n", mc.min_h_overall_ft);
      std::printf("episodes intervened    %llu\n",
                  static_cast<unsigned long long>(mc.episodes_with_intervention));
      std::printf("mean intervention      %.1f frames\n", mc.mean_intervention_frames);
      std::printf("rejoin successes       %llu\n",
                  static_cast<unsigned long long>(mc.rejoin_successes));
      std::printf("monitor trips          %llu\n",
                  static_cast<unsigned long long>(mc.epm_trips));
      std::printf("missing records        %llu\n",
                  static_cast<unsigned long long>(mc.missing_records));
      std::printf("verdict mismatches     %llu\n",
                  static_cast<unsigned long long>(mc.verdict_mismatches));
      return mc.hard_violation_episodes > 0 ? 2 : 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
