#include "rtasim/trace.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

namespace rtasim {

namespace {

constexpr std::array<const char*, kSigCount> kSigNames = {
    "W1", "W2", "W3",  "W4",  "W5",  "W6",  "W7",  "W8",  "W9", "W12",
    "W14", "W16", "W17", "VAL", "SSC", "RJN", "SAF", "CONT", "META"};

const std::array<const char*, 16>& fence_vert_fields() {
  static const std::array<const char*, 16> kFields = {
      tf::kFenceV0EFt, tf::kFenceV0NFt, tf::kFenceV1EFt, tf::kFenceV1NFt,
      tf::kFenceV2EFt, tf::kFenceV2NFt, tf::kFenceV3EFt, tf::kFenceV3NFt,
      tf::kFenceV4EFt, tf::kFenceV4NFt, tf::kFenceV5EFt, tf::kFenceV5NFt,
      tf::kFenceV6EFt, tf::kFenceV6NFt, tf::kFenceV7EFt, tf::kFenceV7NFt};
  return kFields;
}

const std::vector<const char*>& known_fields() {
  static const std::vector<const char*> kKnown = [] {
    std::vector<const char*> v = {
        tf::kUeFps,        tf::kUnFps,         tf::kUuFps,         tf::kPresent,
        tf::kFault,        tf::kIntervened,    tf::kPitchFps,      tf::kRollDeg,
        tf::kRollMode,     tf::kSpeedKt,       tf::kYawDeg,        tf::kLeadEFt,
        tf::kLeadNFt,      tf::kLeadUFt,       tf::kLeadPsiDeg,    tf::kLeadPhiDeg,
        tf::kLeadTasKt,    tf::kLeadVeFps,     tf::kLeadVnFps,     tf::kLeadVuFps,
        tf::kLeadTsS,      tf::kWingEFt,       tf::kWingNFt,       tf::kWingUFt,
        tf::kWingPsiDeg,   tf::kWingPhiDeg,    tf::kWingTasKt,     tf::kWingVeFps,
        tf::kWingVnFps,    tf::kWingVuFps,     tf::kWingTsS,       tf::kSource,
        tf::kEngaged,      tf::kTripped,       tf::kFaulted,       tf::kReasonKind,
        tf::kReasonVar,    tf::kReasonValue,   tf::kTakeover,      tf::kAlert,
        tf::kInUeFps,      tf::kInUnFps,       tf::kInUuFps,       tf::kOutUeFps,
        tf::kOutUnFps,     tf::kOutUuFps,      tf::kCollisionOn,   tf::kGeofenceOn,
        tf::kMinHFt,       tf::kValid,         tf::kFailKind,      tf::kFieldBits,
        tf::kStaleCount,   tf::kTnscViolated,  tf::kTnscValueFt,   tf::kAfscViolated,
        tf::kAfscValueFt,  tf::kSfcViolated,   tf::kSfcClosureFps, tf::kSfcRelSpeedFps,
        tf::kJecViolated,  tf::kJecValueFt,    tf::kDistFt,        tf::kTInsideS,
        tf::kSucceeded,    tf::kPointEFt,      tf::kPointNFt,      tf::kPointUFt,
        tf::kHCollisionFt, tf::kHFenceMinFt,   tf::kActive,        tf::kPlan,
        tf::kTriggerKind,  tf::kApplied,       tf::kDtS,           tf::kFrameCount,
        tf::kRhoCFt,       tf::kMarginFrac,    tf::kGammaCollision, tf::kGammaGeofence,
        tf::kFenceKind,    tf::kFenceCenterEFt, tf::kFenceCenterNFt, tf::kFenceRadiusFt,
        tf::kFenceEMinFt,  tf::kFenceEMaxFt,   tf::kFenceNMinFt,   tf::kFenceNMaxFt,
        tf::kFenceVertCount, tf::kLlFt,        tf::kFlFt,          tf::kTnscFt,
        tf::kTnscRangeFt,  tf::kAfscRangeFt,   tf::kSfcLoFt,       tf::kSfcHiFt,
        tf::kSfcClosureLimitFps, tf::kJecWindowS, tf::kJecRadiusFt, tf::kJecSamplePeriodS,
        tf::kThetaAaDeg,   tf::kRhoRFt,        tf::kRhoEFt,        tf::kTSuccessS,
        tf::kStalenessFrames, tf::kPlantKind};
    for (const char* f : fence_vert_fields()) v.push_back(f);
    return v;
  }();
  return kKnown;
}

}  // namespace

namespace tf {

const char* fence_vert_e_field(std::size_t i) {
  if (i >= 8) throw std::out_of_range("fence vertex index");
  return fence_vert_fields()[2 * i];
}

const char* fence_vert_n_field(std::size_t i) {
  if (i >= 8) throw std::out_of_range("fence vertex index");
  return fence_vert_fields()[2 * i + 1];
}

}  // namespace tf

const char* sig_name(Sig s) { return kSigNames[static_cast<std::size_t>(s)]; }

bool sig_from_name(std::string_view name, Sig& out) {
  for (std::size_t i = 0; i < kSigCount; ++i) {
    if (name == kSigNames[i]) {
      out = static_cast<Sig>(i);
      return true;
    }
  }
  return false;
}

std::string format_g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

const char* intern_field(std::string_view name) {
  for (const char* f : known_fields()) {
    if (name == f) return f;
  }
  // Unknown names live for the process so identity comparison stays sound.
  static std::unordered_set<std::string> pool;
  return pool.emplace(name).first->c_str();
}

void write_trace_csv(const std::string& path, const std::vector<TraceRecord>& rows,
                     const TraceMeta& meta) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open trace file for write: " + path);
  out << "frame,t_s,signal,field,value\n";
  for (const TraceRecord& r : rows) {
    out << r.frame << ',' << format_g9(r.t_s) << ',' << sig_name(r.sig) << ',' << r.field << ','
        << format_g9(r.value) << '\n';
  }
  if (!out) throw std::runtime_error("trace write failed: " + path);

  nlohmann::json j;
  j["config_hash"] = meta.config_hash;
  j["seed"] = meta.seed;
  j["version"] = meta.version;
  std::ofstream mout(path + ".meta.json", std::ios::trunc);
  if (!mout) throw std::runtime_error("cannot open trace metadata for write: " + path);
  mout << j.dump(2) << '\n';
}

std::vector<TraceRecord> read_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file: " + path);
  std::vector<TraceRecord> rows;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty trace file: " + path);
  if (line != "frame,t_s,signal,field,value")
    throw std::runtime_error("unexpected trace header: " + line);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::array<std::string_view, 5> cols;
    std::string_view rest = line;
    for (std::size_t c = 0; c < 5; ++c) {
      if (c == 4) {
        cols[c] = rest;
        break;
      }
      auto comma = rest.find(',');
      if (comma == std::string_view::npos)
        throw std::runtime_error("bad trace row at line " + std::to_string(lineno));
      cols[c] = rest.substr(0, comma);
      rest = rest.substr(comma + 1);
    }
    TraceRecord r;
    r.frame = static_cast<std::uint32_t>(std::stoul(std::string(cols[0])));
    r.t_s = std::stod(std::string(cols[1]));
    if (!sig_from_name(cols[2], r.sig))
      throw std::runtime_error("unknown trace signal at line " + std::to_string(lineno));
    r.field = intern_field(cols[3]);
    r.value = std::stod(std::string(cols[4]));
    rows.push_back(r);
  }
  return rows;
}

TraceMeta read_trace_meta(const std::string& path) {
  std::ifstream in(path + ".meta.json");
  if (!in) throw std::runtime_error("cannot open trace metadata: " + path + ".meta.json");
  nlohmann::json j = nlohmann::json::parse(in);
  TraceMeta m;
  m.config_hash = j.value("config_hash", std::uint64_t{0});
  m.seed = j.value("seed", std::uint64_t{0});
  m.version = j.value("version", std::string{});
  return m;
}

}  // namespace rtasim
