#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rtasim/sim.hpp"

namespace rtasim {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& msg) { throw std::invalid_argument("scenario: " + msg); }

void expect_keys(const json& j, const char* ctx, std::initializer_list<const char*> keys) {
  if (!j.is_object()) bad(std::string(ctx) + " must be an object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : keys) {
      if (item.key() == k) {
        known = true;
        break;
      }
    }
    if (!known) bad("unknown key \"" + item.key() + "\" in " + ctx);
  }
}

double num(const json& j, const char* key, double def) {
  if (!j.contains(key)) return def;
  const json& v = j.at(key);
  if (!v.is_number()) bad(std::string("key \"") + key + "\" must be a number");
  return v.get<double>();
}

int integer(const json& j, const char* key, int def) {
  if (!j.contains(key)) return def;
  const json& v = j.at(key);
  if (!v.is_number_integer()) bad(std::string("key \"") + key + "\" must be an integer");
  return v.get<int>();
}

bool boolean(const json& j, const char* key, bool def) {
  if (!j.contains(key)) return def;
  const json& v = j.at(key);
  if (!v.is_boolean()) bad(std::string("key \"") + key + "\" must be a boolean");
  return v.get<bool>();
}

std::string text(const json& j, const char* key, const std::string& def) {
  if (!j.contains(key)) return def;
  const json& v = j.at(key);
  if (!v.is_string()) bad(std::string("key \"") + key + "\" must be a string");
  return v.get<std::string>();
}

// --- enum <-> string ---------------------------------------------------------

const char* plant_kind_name(PlantKind p) {
  return p == PlantKind::SingleIntegrator ? "single_integrator" : "coordinated_turn";
}

PlantKind plant_kind_from(const std::string& s) {
  if (s == "single_integrator") return PlantKind::SingleIntegrator;
  if (s == "coordinated_turn") return PlantKind::CoordinatedTurn;
  bad("unknown wing_plant \"" + s + "\"");
}

const char* pilot_policy_name(PilotPolicy p) {
  return p == PilotPolicy::HoldFormationLoose ? "hold_formation_loose" : "fly_to_point";
}

PilotPolicy pilot_policy_from(const std::string& s) {
  if (s == "hold_formation_loose") return PilotPolicy::HoldFormationLoose;
  if (s == "fly_to_point") return PilotPolicy::FlyToPoint;
  bad("unknown pilot policy \"" + s + "\"");
}

const char* fence_kind_name(GeofenceSpec::Kind k) {
  switch (k) {
    case GeofenceSpec::Kind::Circle: return "circle";
    case GeofenceSpec::Kind::Rect: return "rect";
    case GeofenceSpec::Kind::Polygon: return "polygon";
  }
  return "?";
}

GeofenceSpec::Kind fence_kind_from(const std::string& s) {
  if (s == "circle") return GeofenceSpec::Kind::Circle;
  if (s == "rect") return GeofenceSpec::Kind::Rect;
  if (s == "polygon") return GeofenceSpec::Kind::Polygon;
  bad("unknown fence kind \"" + s + "\"");
}

ReportField report_field_from(const std::string& s) {
  for (std::size_t i = 0; i < kReportFieldCount; ++i) {
    if (s == report_field_name(static_cast<ReportField>(i))) return static_cast<ReportField>(i);
  }
  bad("unknown report field \"" + s + "\"");
}

ContingencyPlan plan_from(const std::string& s) {
  for (int i = 0; i < 4; ++i) {
    if (s == contingency_plan_name(static_cast<ContingencyPlan>(i)))
      return static_cast<ContingencyPlan>(i);
  }
  bad("unknown contingency plan \"" + s + "\"");
}

RtaFault rta_fault_from(const std::string& s) {
  for (int i = 0; i < 4; ++i) {
    if (s == rta_fault_name(static_cast<RtaFault>(i))) return static_cast<RtaFault>(i);
  }
  bad("unknown filter fault \"" + s + "\"");
}

FaultKind fault_kind_from(const std::string& s) {
  for (std::size_t i = 0; i < kFaultKindCount; ++i) {
    if (s == fault_kind_name(static_cast<FaultKind>(i))) return static_cast<FaultKind>(i);
  }
  bad("unknown fault kind \"" + s + "\"");
}

// --- sub-object parsers ------------------------------------------------------

InitState parse_init(const json& j, const char* ctx, const InitState& def) {
  expect_keys(j, ctx, {"e_ft", "n_ft", "u_ft", "psi_deg", "phi_deg", "v_kt"});
  InitState s;
  s.e_ft = num(j, "e_ft", def.e_ft);
  s.n_ft = num(j, "n_ft", def.n_ft);
  s.u_ft = num(j, "u_ft", def.u_ft);
  s.psi_deg = num(j, "psi_deg", def.psi_deg);
  s.phi_deg = num(j, "phi_deg", def.phi_deg);
  s.v_kt = num(j, "v_kt", def.v_kt);
  return s;
}

GeofenceSpec parse_fence(const json& j) {
  expect_keys(j, "fence",
              {"kind", "center_e_ft", "center_n_ft", "radius_ft", "e_min_ft", "e_max_ft",
               "n_min_ft", "n_max_ft", "vertices"});
  GeofenceSpec f;
  f.kind = fence_kind_from(text(j, "kind", "circle"));
  f.center_e_ft = num(j, "center_e_ft", f.center_e_ft);
  f.center_n_ft = num(j, "center_n_ft", f.center_n_ft);
  f.radius_ft = num(j, "radius_ft", f.radius_ft);
  f.e_min_ft = num(j, "e_min_ft", f.e_min_ft);
  f.e_max_ft = num(j, "e_max_ft", f.e_max_ft);
  f.n_min_ft = num(j, "n_min_ft", f.n_min_ft);
  f.n_max_ft = num(j, "n_max_ft", f.n_max_ft);
  if (j.contains("vertices")) {
    const json& verts = j.at("vertices");
    if (!verts.is_array()) bad("fence vertices must be an array of [e, n] pairs");
    for (const json& v : verts) {
      if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        bad("fence vertex must be a [e, n] number pair");
      f.vertices_ft.emplace_back(v[0].get<double>(), v[1].get<double>());
    }
  }
  return f;
}

json fence_to_json(const GeofenceSpec& f) {
  json j;
  j["kind"] = fence_kind_name(f.kind);
  j["center_e_ft"] = f.center_e_ft;
  j["center_n_ft"] = f.center_n_ft;
  j["radius_ft"] = f.radius_ft;
  j["e_min_ft"] = f.e_min_ft;
  j["e_max_ft"] = f.e_max_ft;
  j["n_min_ft"] = f.n_min_ft;
  j["n_max_ft"] = f.n_max_ft;
  json verts = json::array();
  for (const auto& [e, n] : f.vertices_ft) verts.push_back(json::array({e, n}));
  j["vertices"] = verts;
  return j;
}

}  // namespace

const char* fault_kind_name(FaultKind k) {
  switch (k) {
    case FaultKind::LeadReportDropout: return "lead_report_dropout";
    case FaultKind::FieldCorruption: return "field_corruption";
    case FaultKind::StaleTimestamp: return "stale_timestamp";
    case FaultKind::GpsNoise: return "gps_noise";
    case FaultKind::W2Dropout: return "w2_dropout";
    case FaultKind::RtaForcedFault: return "rta_forced_fault";
  }
  return "?";
}

ScenarioConfig parse_scenario(const std::string& json_text) {
  json j = json::parse(json_text);
  expect_keys(j, "scenario",
              {"dt_s", "duration_s", "seed", "test_point_id", "lead", "wing", "lead_script",
               "airframe", "wing_plant", "rta", "fence", "init_fence_margin_ft", "ssc", "rejoin",
               "trip_limits", "report_limits", "contingency", "staleness_frames", "policy",
               "pilot", "faults", "pilot_windows", "fence_changes", "mc"});
  ScenarioConfig c;
  c.dt_s = num(j, "dt_s", c.dt_s);
  c.duration_s = num(j, "duration_s", c.duration_s);
  if (j.contains("seed")) {
    const json& v = j.at("seed");
    if (!v.is_number_unsigned() && !v.is_number_integer()) bad("seed must be an integer");
    c.seed = v.get<std::uint64_t>();
  }
  c.test_point_id = integer(j, "test_point_id", c.test_point_id);

  if (j.contains("lead")) c.lead = parse_init(j.at("lead"), "lead", c.lead);
  if (j.contains("wing")) {
    c.wing = parse_init(j.at("wing"), "wing", c.wing);
  } else {
    // Default wing: a mile astern of the lead, co-altitude, same track.
    c.wing = c.lead;
    Vec3 behind = position(make_state(c.lead.e_ft, c.lead.n_ft, c.lead.u_ft, c.lead.psi_deg,
                                      c.lead.phi_deg, c.lead.v_kt)) -
                  5280.0 * heading_unit(c.lead.psi_deg);
    c.wing.e_ft = behind.e;
    c.wing.n_ft = behind.n;
  }

  if (j.contains("lead_script")) {
    const json& script = j.at("lead_script");
    if (!script.is_array()) bad("lead_script must be an array");
    for (const json& seg : script) {
      expect_keys(seg, "lead_script segment", {"duration_s", "bank_deg", "speed_kt", "climb_fps"});
      LeadSegment s;
      s.duration_s = num(seg, "duration_s", 0.0);
      s.bank_deg = num(seg, "bank_deg", 0.0);
      s.speed_kt = num(seg, "speed_kt", -1.0);
      s.climb_fps = num(seg, "climb_fps", 0.0);
      c.lead_script.push_back(s);
    }
  }

  if (j.contains("airframe")) {
    const json& a = j.at("airframe");
    expect_keys(a, "airframe",
                {"max_bank_deg", "max_bank_rate_dps", "v_min_kt", "v_max_kt", "max_accel_fps2",
                 "max_climb_fps", "k1", "k2"});
    c.airframe.max_bank_deg = num(a, "max_bank_deg", c.airframe.max_bank_deg);
    c.airframe.max_bank_rate_dps = num(a, "max_bank_rate_dps", c.airframe.max_bank_rate_dps);
    c.airframe.v_min_kt = num(a, "v_min_kt", c.airframe.v_min_kt);
    c.airframe.v_max_kt = num(a, "v_max_kt", c.airframe.v_max_kt);
    c.airframe.max_accel_fps2 = num(a, "max_accel_fps2", c.airframe.max_accel_fps2);
    c.airframe.max_climb_fps = num(a, "max_climb_fps", c.airframe.max_climb_fps);
    c.airframe.k1 = num(a, "k1", c.airframe.k1);
    c.airframe.k2 = num(a, "k2", c.airframe.k2);
  }
  c.wing_plant = plant_kind_from(text(j, "wing_plant", plant_kind_name(c.wing_plant)));

  if (j.contains("rta")) {
    const json& r = j.at("rta");
    expect_keys(r, "rta",
                {"collision_enabled", "geofence_enabled", "rho_c_ft", "margin_frac",
                 "gamma_collision", "gamma_geofence", "frame_budget_s", "box"});
    c.rta.collision_enabled = boolean(r, "collision_enabled", c.rta.collision_enabled);
    c.rta.geofence_enabled = boolean(r, "geofence_enabled", c.rta.geofence_enabled);
    c.rta.rho_c_ft = num(r, "rho_c_ft", c.rta.rho_c_ft);
    c.rta.margin_frac = num(r, "margin_frac", c.rta.margin_frac);
    c.rta.gamma_collision = num(r, "gamma_collision", c.rta.gamma_collision);
    c.rta.gamma_geofence = num(r, "gamma_geofence", c.rta.gamma_geofence);
    if (r.contains("frame_budget_s")) c.rta.frame_budget_s = num(r, "frame_budget_s", 0.0);
    if (r.contains("box")) {
      const json& b = r.at("box");
      expect_keys(b, "rta box",
                  {"e_min_fps", "e_max_fps", "n_min_fps", "n_max_fps", "u_min_fps", "u_max_fps"});
      c.rta.box.e_min_fps = num(b, "e_min_fps", c.rta.box.e_min_fps);
      c.rta.box.e_max_fps = num(b, "e_max_fps", c.rta.box.e_max_fps);
      c.rta.box.n_min_fps = num(b, "n_min_fps", c.rta.box.n_min_fps);
      c.rta.box.n_max_fps = num(b, "n_max_fps", c.rta.box.n_max_fps);
      c.rta.box.u_min_fps = num(b, "u_min_fps", c.rta.box.u_min_fps);
      c.rta.box.u_max_fps = num(b, "u_max_fps", c.rta.box.u_max_fps);
    }
  }
  // Half the frame period of compute budget unless the scenario pins one.
  if (!std::isfinite(c.rta.frame_budget_s)) c.rta.frame_budget_s = 0.5 * c.dt_s;

  if (j.contains("fence")) c.fence = parse_fence(j.at("fence"));
  c.init_fence_margin_ft = num(j, "init_fence_margin_ft", c.init_fence_margin_ft);

  if (j.contains("ssc")) {
    const json& s = j.at("ssc");
    expect_keys(s, "ssc",
                {"ll_ft", "fl_ft", "tnsc_ft", "tnsc_range_ft", "afsc_range_ft", "sfc_lo_ft",
                 "sfc_hi_ft", "sfc_closure_fps", "jec_window_s", "jec_radius_ft",
                 "jec_sample_period_s"});
    c.ssc.ll_ft = num(s, "ll_ft", c.ssc.ll_ft);
    c.ssc.fl_ft = num(s, "fl_ft", c.ssc.fl_ft);
    c.ssc.tnsc_ft = num(s, "tnsc_ft", c.ssc.tnsc_ft);
    c.ssc.tnsc_range_ft = num(s, "tnsc_range_ft", c.ssc.tnsc_range_ft);
    c.ssc.afsc_range_ft = num(s, "afsc_range_ft", c.ssc.afsc_range_ft);
    c.ssc.sfc_lo_ft = num(s, "sfc_lo_ft", c.ssc.sfc_lo_ft);
    c.ssc.sfc_hi_ft = num(s, "sfc_hi_ft", c.ssc.sfc_hi_ft);
    c.ssc.sfc_closure_fps = num(s, "sfc_closure_fps", c.ssc.sfc_closure_fps);
    c.ssc.jec_window_s = num(s, "jec_window_s", c.ssc.jec_window_s);
    c.ssc.jec_radius_ft = num(s, "jec_radius_ft", c.ssc.jec_radius_ft);
    c.ssc.jec_sample_period_s = num(s, "jec_sample_period_s", c.ssc.jec_sample_period_s);
  }

  if (j.contains("rejoin")) {
    const json& r = j.at("rejoin");
    expect_keys(r, "rejoin", {"theta_aa_deg", "rho_r_ft", "rho_e_ft", "t_success_s"});
    c.rejoin.theta_aa_deg = num(r, "theta_aa_deg", c.rejoin.theta_aa_deg);
    c.rejoin.rho_r_ft = num(r, "rho_r_ft", c.rejoin.rho_r_ft);
    c.rejoin.rho_e_ft = num(r, "rho_e_ft", c.rejoin.rho_e_ft);
    c.rejoin.t_success_s = num(r, "t_success_s", c.rejoin.t_success_s);
  }

  if (j.contains("trip_limits")) {
    const json& t = j.at("trip_limits");
    if (t.is_string()) {
      const std::string name = t.get<std::string>();
      if (name == "defaults") {
        c.trip_limits = TripLimits::defaults();
      } else if (name == "wide") {
        c.trip_limits = TripLimits::wide();
      } else {
        bad("unknown trip_limits preset \"" + name + "\"");
      }
    } else {
      expect_keys(t, "trip_limits",
                  {"de", "da", "dr", "de_rate", "da_rate", "dr_rate", "alpha", "beta", "nz", "ny",
                   "vc", "phi", "phi_rate"});
      for (std::size_t i = 0; i < kMonitoredVarCount; ++i) {
        const char* name = monitored_var_name(static_cast<MonitoredVar>(i));
        if (!t.contains(name)) continue;
        const json& r = t.at(name);
        if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number())
          bad(std::string("trip_limits.") + name + " must be a [lo, hi] pair");
        c.trip_limits.range[i] = {r[0].get<double>(), r[1].get<double>()};
      }
    }
  }

  if (j.contains("report_limits")) {
    const json& r = j.at("report_limits");
    expect_keys(r, "report_limits",
                {"max_speed_kt", "max_accel_g", "max_orient_rate_dps", "pla_min_pct",
                 "pla_max_pct", "min_alt_ft", "max_alt_ft", "max_wind_fps"});
    c.report_limits.max_speed_kt = num(r, "max_speed_kt", c.report_limits.max_speed_kt);
    c.report_limits.max_accel_g = num(r, "max_accel_g", c.report_limits.max_accel_g);
    c.report_limits.max_orient_rate_dps =
        num(r, "max_orient_rate_dps", c.report_limits.max_orient_rate_dps);
    c.report_limits.pla_min_pct = num(r, "pla_min_pct", c.report_limits.pla_min_pct);
    c.report_limits.pla_max_pct = num(r, "pla_max_pct", c.report_limits.pla_max_pct);
    c.report_limits.min_alt_ft = num(r, "min_alt_ft", c.report_limits.min_alt_ft);
    c.report_limits.max_alt_ft = num(r, "max_alt_ft", c.report_limits.max_alt_ft);
    c.report_limits.max_wind_fps = num(r, "max_wind_fps", c.report_limits.max_wind_fps);
  }

  if (j.contains("contingency")) {
    const json& t = j.at("contingency");
    expect_keys(t, "contingency",
                {"report_dropout", "non_monotonic_timestamp", "invalid_position",
                 "invalid_orientation", "invalid_velocity", "invalid_field"});
    for (std::size_t i = 0; i < kValidationFailureKindCount; ++i) {
      const char* name = validation_failure_name(static_cast<ValidationFailureKind>(i));
      if (t.contains(name)) c.contingency.plan[i] = plan_from(t.at(name).get<std::string>());
    }
  }

  c.staleness_frames = integer(j, "staleness_frames", c.staleness_frames);
  c.policy_id = text(j, "policy", c.policy_id);

  if (j.contains("pilot")) {
    const json& p = j.at("pilot");
    expect_keys(p, "pilot",
                {"policy", "reaction_delay_frames", "fly_to_e_ft", "fly_to_n_ft", "fly_to_u_ft"});
    c.pilot.policy = pilot_policy_from(text(p, "policy", pilot_policy_name(c.pilot.policy)));
    c.pilot.reaction_delay_frames =
        integer(p, "reaction_delay_frames", c.pilot.reaction_delay_frames);
    c.pilot.fly_to_e_ft = num(p, "fly_to_e_ft", c.pilot.fly_to_e_ft);
    c.pilot.fly_to_n_ft = num(p, "fly_to_n_ft", c.pilot.fly_to_n_ft);
    c.pilot.fly_to_u_ft = num(p, "fly_to_u_ft", c.pilot.fly_to_u_ft);
  }

  if (j.contains("faults")) {
    const json& faults = j.at("faults");
    if (!faults.is_array()) bad("faults must be an array");
    for (const json& f : faults) {
      expect_keys(f, "fault",
                  {"kind", "t_start_s", "t_end_s", "field", "value", "sigma_ft", "forced"});
      FaultEvent e;
      e.kind = fault_kind_from(text(f, "kind", ""));
      e.t_start_s = num(f, "t_start_s", 0.0);
      e.t_end_s = num(f, "t_end_s", 0.0);
      if (f.contains("field")) e.field = report_field_from(f.at("field").get<std::string>());
      e.value = num(f, "value", 0.0);
      e.sigma_ft = num(f, "sigma_ft", 0.0);
      if (f.contains("forced")) e.forced = rta_fault_from(f.at("forced").get<std::string>());
      c.faults.push_back(e);
    }
  }

  if (j.contains("pilot_windows")) {
    const json& windows = j.at("pilot_windows");
    if (!windows.is_array()) bad("pilot_windows must be an array");
    for (const json& w : windows) {
      expect_keys(w, "pilot window", {"t_start_s", "t_end_s"});
      c.pilot_windows.push_back({num(w, "t_start_s", 0.0), num(w, "t_end_s", 0.0)});
    }
  }

  if (j.contains("fence_changes")) {
    const json& changes = j.at("fence_changes");
    if (!changes.is_array()) bad("fence_changes must be an array");
    for (const json& ch : changes) {
      expect_keys(ch, "fence change", {"t_s", "fence"});
      GeofenceChange g;
      g.t_s = num(ch, "t_s", 0.0);
      if (!ch.contains("fence")) bad("fence change needs a fence");
      g.fence = parse_fence(ch.at("fence"));
      c.fence_changes.push_back(g);
    }
  }

  if (j.contains("mc")) {
    const json& m = j.at("mc");
    expect_keys(m, "mc", {"range_min_ft", "range_max_ft", "alt_band_ft", "v_min_kt", "v_max_kt"});
    c.mc.range_min_ft = num(m, "range_min_ft", c.mc.range_min_ft);
    c.mc.range_max_ft = num(m, "range_max_ft", c.mc.range_max_ft);
    c.mc.alt_band_ft = num(m, "alt_band_ft", c.mc.alt_band_ft);
    c.mc.v_min_kt = num(m, "v_min_kt", c.mc.v_min_kt);
    c.mc.v_max_kt = num(m, "v_max_kt", c.mc.v_max_kt);
  }

  return c;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string scenario_to_json(const ScenarioConfig& c) {
  json j;
  j["dt_s"] = c.dt_s;
  j["duration_s"] = c.duration_s;
  j["seed"] = c.seed;
  j["test_point_id"] = c.test_point_id;
  auto init_to_json = [](const InitState& s) {
    json v;
    v["e_ft"] = s.e_ft;
    v["n_ft"] = s.n_ft;
    v["u_ft"] = s.u_ft;
    v["psi_deg"] = s.psi_deg;
    v["phi_deg"] = s.phi_deg;
    v["v_kt"] = s.v_kt;
    return v;
  };
  j["lead"] = init_to_json(c.lead);
  j["wing"] = init_to_json(c.wing);
  json script = json::array();
  for (const LeadSegment& s : c.lead_script) {
    json seg;
    seg["duration_s"] = s.duration_s;
    seg["bank_deg"] = s.bank_deg;
    seg["speed_kt"] = s.speed_kt;
    seg["climb_fps"] = s.climb_fps;
    script.push_back(seg);
  }
  j["lead_script"] = script;
  json a;
  a["max_bank_deg"] = c.airframe.max_bank_deg;
  a["max_bank_rate_dps"] = c.airframe.max_bank_rate_dps;
  a["v_min_kt"] = c.airframe.v_min_kt;
  a["v_max_kt"] = c.airframe.v_max_kt;
  a["max_accel_fps2"] = c.airframe.max_accel_fps2;
  a["max_climb_fps"] = c.airframe.max_climb_fps;
  a["k1"] = c.airframe.k1;
  a["k2"] = c.airframe.k2;
  j["airframe"] = a;
  j["wing_plant"] = plant_kind_name(c.wing_plant);
  json r;
  r["collision_enabled"] = c.rta.collision_enabled;
  r["geofence_enabled"] = c.rta.geofence_enabled;
  r["rho_c_ft"] = c.rta.rho_c_ft;
  r["margin_frac"] = c.rta.margin_frac;
  r["gamma_collision"] = c.rta.gamma_collision;
  r["gamma_geofence"] = c.rta.gamma_geofence;
  r["frame_budget_s"] = c.rta.frame_budget_s;
  json b;
  b["e_min_fps"] = c.rta.box.e_min_fps;
  b["e_max_fps"] = c.rta.box.e_max_fps;
  b["n_min_fps"] = c.rta.box.n_min_fps;
  b["n_max_fps"] = c.rta.box.n_max_fps;
  b["u_min_fps"] = c.rta.box.u_min_fps;
  b["u_max_fps"] = c.rta.box.u_max_fps;
  r["box"] = b;
  j["rta"] = r;
  j["fence"] = fence_to_json(c.fence);
  j["init_fence_margin_ft"] = c.init_fence_margin_ft;
  json s;
  s["ll_ft"] = c.ssc.ll_ft;
  s["fl_ft"] = c.ssc.fl_ft;
  s["tnsc_ft"] = c.ssc.tnsc_ft;
  s["tnsc_range_ft"] = c.ssc.tnsc_range_ft;
  s["afsc_range_ft"] = c.ssc.afsc_range_ft;
  s["sfc_lo_ft"] = c.ssc.sfc_lo_ft;
  s["sfc_hi_ft"] = c.ssc.sfc_hi_ft;
  s["sfc_closure_fps"] = c.ssc.sfc_closure_fps;
  s["jec_window_s"] = c.ssc.jec_window_s;
  s["jec_radius_ft"] = c.ssc.jec_radius_ft;
  s["jec_sample_period_s"] = c.ssc.jec_sample_period_s;
  j["ssc"] = s;
  json rj;
  rj["theta_aa_deg"] = c.rejoin.theta_aa_deg;
  rj["rho_r_ft"] = c.rejoin.rho_r_ft;
  rj["rho_e_ft"] = c.rejoin.rho_e_ft;
  rj["t_success_s"] = c.rejoin.t_success_s;
  j["rejoin"] = rj;
  json tl;
  for (std::size_t i = 0; i < kMonitoredVarCount; ++i) {
    tl[monitored_var_name(static_cast<MonitoredVar>(i))] =
        json::array({c.trip_limits.range[i].lo, c.trip_limits.range[i].hi});
  }
  j["trip_limits"] = tl;
  json rl;
  rl["max_speed_kt"] = c.report_limits.max_speed_kt;
  rl["max_accel_g"] = c.report_limits.max_accel_g;
  rl["max_orient_rate_dps"] = c.report_limits.max_orient_rate_dps;
  rl["pla_min_pct"] = c.report_limits.pla_min_pct;
  rl["pla_max_pct"] = c.report_limits.pla_max_pct;
  rl["min_alt_ft"] = c.report_limits.min_alt_ft;
  rl["max_alt_ft"] = c.report_limits.max_alt_ft;
  rl["max_wind_fps"] = c.report_limits.max_wind_fps;
  j["report_limits"] = rl;
  json ct;
  for (std::size_t i = 0; i < kValidationFailureKindCount; ++i) {
    ct[validation_failure_name(static_cast<ValidationFailureKind>(i))] =
        contingency_plan_name(c.contingency.plan[i]);
  }
  j["contingency"] = ct;
  j["staleness_frames"] = c.staleness_frames;
  j["policy"] = c.policy_id;
  json p;
  p["policy"] = pilot_policy_name(c.pilot.policy);
  p["reaction_delay_frames"] = c.pilot.reaction_delay_frames;
  p["fly_to_e_ft"] = c.pilot.fly_to_e_ft;
  p["fly_to_n_ft"] = c.pilot.fly_to_n_ft;
  p["fly_to_u_ft"] = c.pilot.fly_to_u_ft;
  j["pilot"] = p;
  json faults = json::array();
  for (const FaultEvent& e : c.faults) {
    json f;
    f["kind"] = fault_kind_name(e.kind);
    f["t_start_s"] = e.t_start_s;
    f["t_end_s"] = e.t_end_s;
    f["field"] = report_field_name(e.field);
    f["value"] = e.value;
    f["sigma_ft"] = e.sigma_ft;
    f["forced"] = rta_fault_name(e.forced);
    faults.push_back(f);
  }
  j["faults"] = faults;
  json windows = json::array();
  for (const PilotWindow& w : c.pilot_windows) {
    json x;
    x["t_start_s"] = w.t_start_s;
    x["t_end_s"] = w.t_end_s;
    windows.push_back(x);
  }
  j["pilot_windows"] = windows;
  json changes = json::array();
  for (const GeofenceChange& g : c.fence_changes) {
    json x;
    x["t_s"] = g.t_s;
    x["fence"] = fence_to_json(g.fence);
    changes.push_back(x);
  }
  j["fence_changes"] = changes;
  json m;
  m["range_min_ft"] = c.mc.range_min_ft;
  m["range_max_ft"] = c.mc.range_max_ft;
  m["alt_band_ft"] = c.mc.alt_band_ft;
  m["v_min_kt"] = c.mc.v_min_kt;
  m["v_max_kt"] = c.mc.v_max_kt;
  j["mc"] = m;
  return j.dump();
}

std::uint64_t config_hash(const ScenarioConfig& cfg) {
  // FNV-1a over the canonical serialized form.
  const std::string s = scenario_to_json(cfg);
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::vector<std::string> check_scenario(const ScenarioConfig& c) {
  std::vector<std::string> problems;
  auto add = [&problems](const std::string& msg) { problems.push_back(msg); };

  if (!(c.dt_s > 0.0) || !std::isfinite(c.dt_s)) add("dt_s must be positive and finite");
  if (!(c.duration_s > 0.0) || !std::isfinite(c.duration_s)) add("duration_s must be positive");
  if (c.staleness_frames < 1) add("staleness_frames must be at least 1");
  if (c.pilot.reaction_delay_frames < 0) add("pilot reaction delay cannot be negative");

  const AirframeModel& m = c.airframe;
  if (!(m.v_min_kt > 0.0) || !(m.v_max_kt > m.v_min_kt)) add("airframe speed band is empty");
  if (!(m.max_bank_deg > 0.0) || m.max_bank_deg >= 90.0) add("max_bank_deg must be in (0, 90)");
  if (!(m.max_bank_rate_dps > 0.0)) add("max_bank_rate_dps must be positive");
  if (!(m.max_accel_fps2 > 0.0)) add("max_accel_fps2 must be positive");
  if (!(m.max_climb_fps > 0.0)) add("max_climb_fps must be positive");
  if (!(m.k1 > 0.0) || !(m.k2 > 0.0)) add("turn constants must be positive");

  if (!(c.rta.rho_c_ft > 0.0)) add("rho_c_ft must be positive");
  if (c.rta.margin_frac < 0.0) add("margin_frac cannot be negative");
  if (!(c.rta.gamma_collision > 0.0) || !(c.rta.gamma_geofence > 0.0))
    add("barrier gains must be positive");
  if (!c.rta.box.well_formed()) add("control box is empty on some axis");
  if (!(c.rta.frame_budget_s > 0.0)) add("frame budget must be positive");

  if (c.rta.geofence_enabled) {
    for (const std::string& p : c.fence.validate()) add("fence: " + p);
  }

  for (std::size_t i = 0; i < kMonitoredVarCount; ++i) {
    const VarRange& r = c.trip_limits.range[i];
    if (!(r.lo < r.hi))
      add(std::string("trip limit for ") + monitored_var_name(static_cast<MonitoredVar>(i)) +
          " has an empty range");
  }

  if (!(c.report_limits.max_speed_kt > 0.0)) add("report max_speed_kt must be positive");
  if (!(c.report_limits.max_accel_g > 0.0)) add("report max_accel_g must be positive");
  if (!(c.report_limits.max_orient_rate_dps > 0.0))
    add("report max_orient_rate_dps must be positive");
  if (!(c.report_limits.min_alt_ft < c.report_limits.max_alt_ft))
    add("report altitude band is empty");

  auto check_init = [&](const char* who, const InitState& s) {
    if (s.v_kt < m.v_min_kt || s.v_kt > m.v_max_kt)
      add(std::string(who) + " speed outside the airframe band");
    if (std::abs(s.phi_deg) > m.max_bank_deg) add(std::string(who) + " bank beyond the limit");
    for (double v : {s.e_ft, s.n_ft, s.u_ft, s.psi_deg, s.phi_deg, s.v_kt}) {
      if (!std::isfinite(v)) {
        add(std::string(who) + " initial state has a non-finite entry");
        break;
      }
    }
  };
  check_init("lead", c.lead);
  check_init("wing", c.wing);

  int seg_index = 0;
  for (const LeadSegment& s : c.lead_script) {
    const std::string where = "lead_script[" + std::to_string(seg_index++) + "]";
    if (!(s.duration_s > 0.0)) add(where + " duration must be positive");
    if (std::abs(s.bank_deg) > m.max_bank_deg) add(where + " bank beyond the limit");
    if (s.speed_kt >= 0.0 && (s.speed_kt < m.v_min_kt || s.speed_kt > m.v_max_kt))
      add(where + " speed outside the airframe band");
    if (std::abs(s.climb_fps) > m.max_climb_fps) add(where + " climb beyond the limit");
  }

  if (!(c.rejoin.rho_r_ft > 0.0)) add("rejoin slot range must be positive");
  if (!(c.rejoin.rho_e_ft > 0.0)) add("rejoin capture radius must be positive");
  if (c.rejoin.t_success_s < 0.0) add("rejoin dwell cannot be negative");
  if (c.policy_id == "rejoin" && c.rta.collision_enabled &&
      c.rejoin.rho_r_ft <= c.rta.rho_c_ft * (1.0 + c.rta.margin_frac))
    add("rejoin slot sits inside the enforced separation radius");

  try {
    make_policy(c.policy_id);
  } catch (const std::invalid_argument&) {
    add("unknown policy \"" + c.policy_id + "\"");
  }

  if (!(c.ssc.tnsc_ft > 0.0) || !(c.ssc.tnsc_range_ft > 0.0)) add("nose-clearance bounds invalid");
  if (c.ssc.ll_ft < 0.0 || c.ssc.fl_ft < 0.0) add("aircraft lengths cannot be negative");
  if (!(c.ssc.afsc_range_ft > 0.0)) add("altitude-stack range must be positive");
  if (!(c.ssc.sfc_lo_ft < c.ssc.sfc_hi_ft)) add("closure band is empty");
  if (!(c.ssc.sfc_closure_fps > 0.0)) add("closure limit must be positive");
  if (!(c.ssc.jec_window_s > 0.0) || !(c.ssc.jec_radius_ft > 0.0) ||
      !(c.ssc.jec_sample_period_s > 0.0))
    add("exclusion-trail parameters invalid");

  for (const FaultEvent& e : c.faults) {
    if (!(e.t_end_s > e.t_start_s)) add("fault window is empty");
    if (e.kind == FaultKind::GpsNoise && e.sigma_ft < 0.0) add("noise sigma cannot be negative");
    if (e.kind == FaultKind::RtaForcedFault && e.forced == RtaFault::None)
      add("forced filter fault cannot be \"none\"");
  }
  for (const PilotWindow& w : c.pilot_windows) {
    if (!(w.t_end_s > w.t_start_s)) add("pilot window is empty");
  }
  for (const GeofenceChange& g : c.fence_changes) {
    bool inside = false;
    for (const PilotWindow& w : c.pilot_windows) {
      if (w.contains(g.t_s)) {
        inside = true;
        break;
      }
    }
    if (!inside) add("fence change at t=" + std::to_string(g.t_s) + " is outside every pilot window");
    for (const std::string& p : g.fence.validate()) add("fence change: " + p);
  }

  if (!(c.mc.range_min_ft > 0.0) || !(c.mc.range_max_ft >= c.mc.range_min_ft))
    add("placement range band is empty");
  if (c.mc.alt_band_ft < 0.0) add("placement altitude band cannot be negative");
  if (!(c.mc.v_min_kt >= m.v_min_kt) || !(c.mc.v_max_kt <= m.v_max_kt) ||
      !(c.mc.v_min_kt <= c.mc.v_max_kt))
    add("placement speed band must sit inside the airframe band");

  // Initial safety: both enabled barrier families must start satisfied, the
  // fence with extra margin so a run never begins on the boundary.
  const AircraftState lead =
      make_state(c.lead.e_ft, c.lead.n_ft, c.lead.u_ft, c.lead.psi_deg, c.lead.phi_deg, c.lead.v_kt);
  const AircraftState wing =
      make_state(c.wing.e_ft, c.wing.n_ft, c.wing.u_ft, c.wing.psi_deg, c.wing.phi_deg, c.wing.v_kt);
  if (c.rta.collision_enabled) {
    const double sep = norm(position(wing) - position(lead));
    const double enforced = c.rta.rho_c_ft * (1.0 + c.rta.margin_frac);
    if (!(sep >= enforced))
      add("initial separation " + std::to_string(sep) + " ft is inside the enforced radius " +
          std::to_string(enforced) + " ft");
  }
  if (c.rta.geofence_enabled && c.fence.validate().empty()) {
    const auto rows =
        geofence_constraints(c.fence, position(wing), c.rta.gamma_geofence);
    for (const BarrierConstraint& row : rows) {
      if (row.h_ft < c.init_fence_margin_ft) {
        add("initial wing position has less than the required fence margin");
        break;
      }
    }
  }

  return problems;
}

}  // namespace rtasim
