#include "maxcoh/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <utility>
#include <vector>

#include "maxcoh/errors.hpp"

namespace maxcoh::config {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_number(const std::string& key, const std::string& value) {
  double out = 0.0;
  const char* first = value.data();
  const char* last = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last) {
    throw ConfigError("field '" + key + "': expected a number, got '" + value + "'");
  }
  return out;
}

std::size_t to_count(const std::string& key, const std::string& value) {
  const double v = to_number(key, value);
  if (v < 0.0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
    throw ConfigError("field '" + key + "': expected a non-negative integer, got '" + value + "'");
  }
  return static_cast<std::size_t>(v);
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

template <class Get>
Setter real(Get get) {
  return [get](RunConfig& rc, const std::string& k, const std::string& v) { get(rc) = to_number(k, v); };
}

propagation::ReducedProblem& reduced_of(RunConfig& rc) {
  if (!rc.exp.reduced) {
    rc.exp.reduced = propagation::ReducedProblem{};
    rc.exp.ntau = 1;
  }
  return *rc.exp.reduced;
}

const std::vector<std::pair<std::string, Setter>>& table() {
  static const std::vector<std::pair<std::string, Setter>> t = {
      {"name", [](RunConfig& rc, const std::string&, const std::string& v) { rc.exp.name = v; }},
      {"convention", [](RunConfig& rc, const std::string&, const std::string& v) {
         rc.exp.convention = propagation::parse_convention(v);
         if (rc.exp.reduced) rc.exp.reduced->convention = rc.exp.convention;
       }},
      {"oracle", [](RunConfig& rc, const std::string&, const std::string& v) {
         rc.exp.oracle = experiments::parse_oracle(v);
       }},
      {"grid_nz", [](RunConfig& rc, const std::string& k, const std::string& v) { rc.exp.nz = to_count(k, v); }},
      {"grid_ntau", [](RunConfig& rc, const std::string& k, const std::string& v) { rc.exp.ntau = to_count(k, v); }},
      {"z_max", real([](RunConfig& rc) -> double& { return rc.exp.z_max; })},
      {"tau_min", real([](RunConfig& rc) -> double& { return rc.exp.tau_min; })},
      {"tau_max", real([](RunConfig& rc) -> double& { return rc.exp.tau_max; })},
      {"closed_form_defect", real([](RunConfig& rc) -> double& { return rc.exp.closed_form_defect; })},
      {"tau", real([](RunConfig& rc) -> double& { return rc.tau; })},
      {"q", [](RunConfig& rc, const std::string& k, const std::string& v) { rc.exp.q_override = to_number(k, v); }},
      // pulses, in T1 and Omega10m units
      {"omega10m_t1", real([](RunConfig& rc) -> double& { return rc.exp.pulses.omega10m_t1; })},
      {"t1_seconds", real([](RunConfig& rc) -> double& { return rc.exp.pulses.t1_seconds; })},
      {"idler_ratio", real([](RunConfig& rc) -> double& { return rc.exp.pulses.idler_ratio; })},
      {"idler_center", real([](RunConfig& rc) -> double& { return rc.exp.pulses.idler_center; })},
      {"idler_width", real([](RunConfig& rc) -> double& { return rc.exp.pulses.idler_width; })},
      {"stark_peak", real([](RunConfig& rc) -> double& { return rc.exp.pulses.stark_peak; })},
      {"stark_center", real([](RunConfig& rc) -> double& { return rc.exp.pulses.stark_center; })},
      {"stark_width", real([](RunConfig& rc) -> double& { return rc.exp.pulses.stark_width; })},
      {"delta20", real([](RunConfig& rc) -> double& { return rc.exp.pulses.delta20; })},
      // atoms, absolute units
      {"mu1", real([](RunConfig& rc) -> double& { return rc.exp.atomic.mu1; })},
      {"mu2", real([](RunConfig& rc) -> double& { return rc.exp.atomic.mu2; })},
      {"mu3", real([](RunConfig& rc) -> double& { return rc.exp.atomic.mu3; })},
      {"beta21", real([](RunConfig& rc) -> double& { return rc.exp.atomic.beta21; })},
      {"beta22", real([](RunConfig& rc) -> double& { return rc.exp.atomic.beta22; })},
      {"beta23", real([](RunConfig& rc) -> double& { return rc.exp.atomic.beta23; })},
      {"beta31", real([](RunConfig& rc) -> double& { return rc.exp.atomic.beta31; })},
      {"beta32", real([](RunConfig& rc) -> double& { return rc.exp.atomic.beta32; })},
      {"beta33", real([](RunConfig& rc) -> double& { return rc.exp.atomic.beta33; })},
      {"delta30", real([](RunConfig& rc) -> double& { return rc.exp.atomic.delta30; })},
      {"density", real([](RunConfig& rc) -> double& { return rc.exp.atomic.density; })},
      {"dk_over_n", real([](RunConfig& rc) -> double& { return rc.exp.atomic.dk_over_n; })},
      {"lambda1_nm", real([](RunConfig& rc) -> double& { return rc.exp.atomic.lambda1_nm; })},
      {"lambda2_nm", real([](RunConfig& rc) -> double& { return rc.exp.atomic.lambda2_nm; })},
      {"lambda3_nm", real([](RunConfig& rc) -> double& { return rc.exp.atomic.lambda3_nm; })},
      // reduced problem (switches propagate to the dimensionless form)
      {"b1", real([](RunConfig& rc) -> double& { return reduced_of(rc).b1; })},
      {"b2", real([](RunConfig& rc) -> double& { return reduced_of(rc).b2; })},
      {"ratio", real([](RunConfig& rc) -> double& { return reduced_of(rc).ratio; })},
      {"alpha", real([](RunConfig& rc) -> double& { return reduced_of(rc).alpha; })},
      {"s", [](RunConfig& rc, const std::string& k, const std::string& v) { reduced_of(rc).s_override = to_number(k, v); }},
  };
  return t;
}

}  // namespace

void apply_key(RunConfig& rc, const std::string& key, const std::string& value) {
  if (key == "preset") {
    rc.exp = experiments::figure_preset(value);
    return;
  }
  for (const auto& [name, set] : table()) {
    if (name == key) {
      set(rc, key, value);
      return;
    }
  }
  throw ConfigError("unknown field '" + key + "'");
}

RunConfig parse_config(std::istream& in, const std::string& source, RunConfig base,
                       const std::string& preset_override) {
  struct Entry {
    int line;
    std::string key;
    std::string value;
  };
  std::vector<Entry> entries;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(source + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError(source + ":" + std::to_string(line_no) + ": empty key or value");
    }
    entries.push_back({line_no, key, value});
  }
  RunConfig rc = std::move(base);
  std::stable_partition(entries.begin(), entries.end(), [](const Entry& e) { return e.key == "preset"; });
  if (!preset_override.empty()) {
    std::erase_if(entries, [](const Entry& e) { return e.key == "preset"; });
    apply_key(rc, "preset", preset_override);
  }
  for (const auto& e : entries) {
    try {
      apply_key(rc, e.key, e.value);
    } catch (const ConfigError& err) {
      throw ConfigError(source + ":" + std::to_string(e.line) + ": " + err.what());
    }
  }
  try {
    rc.exp.validate();
  } catch (const ConfigError& err) {
    throw ConfigError(source + ": " + err.what());
  }
  return rc;
}

RunConfig load_config(const std::string& path, RunConfig base, const std::string& preset_override) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in, path, std::move(base), preset_override);
}

std::string describe_keys() {
  std::ostringstream os;
  os << "preset\n";
  for (const auto& [name, set] : table()) os << name << "\n";
  return os.str();
}

}  // namespace maxcoh::config
