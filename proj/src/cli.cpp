#include "casimir/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "casimir/lifshitz.hpp"
#include "casimir/observables.hpp"
#include "casimir/selfcheck.hpp"

namespace casimir::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Leading number and the trimmed remainder.
std::pair<double, std::string> split_number(const std::string& text) {
  const std::string s = trim(text);
  double v = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr == begin) throw std::invalid_argument("expected a number in '" + s + "'");
  return {v, trim(std::string(ptr, end))};
}

// Units per metre. Dividing by it keeps "100nm" at the double nearest 1e-7.
double per_metre(const std::string& suffix) {
  if (suffix.empty() || suffix == "m") return 1.0;
  if (suffix == "mm") return 1e3;
  if (suffix == "um" || suffix == "µm") return 1e6;
  if (suffix == "nm") return 1e9;
  throw std::invalid_argument("bad length unit '" + suffix + "' (expected nm, um, mm or m)");
}

}  // namespace

double parse_length(const std::string& value) {
  const auto [v, suffix] = split_number(value);
  return v / per_metre(suffix);
}

double parse_area(const std::string& value) {
  const auto [v, suffix] = split_number(value);
  if (suffix.empty() || suffix == "m2") return v;
  if (suffix == "mm2") return v / 1e6;
  if (suffix == "um2" || suffix == "µm2") return v / 1e12;
  if (suffix == "nm2") return v / 1e18;
  throw std::invalid_argument("bad area unit '" + suffix + "' (expected nm2, um2, mm2 or m2)");
}

double parse_angle(const std::string& value) {
  const auto [v, suffix] = split_number(value);
  if (suffix == "rad") return v;
  if (suffix == "deg") return v * kPi / 180.0;
  if (suffix.empty()) throw std::invalid_argument("angle needs a unit suffix (deg or rad)");
  throw std::invalid_argument("bad angle unit '" + suffix + "' (expected deg or rad)");
}

double parse_wavenumber(const std::string& value) {
  const auto [v, suffix] = split_number(value);
  if (suffix.empty()) return v;
  if (suffix.front() != '/') throw std::invalid_argument("bad wavenumber unit '" + suffix + "' (expected /um, /nm or /m)");
  return v * per_metre(trim(suffix.substr(1)));
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {"L",      "Lx",     "Ly",      "a1",     "a2",
                                                "a1a2",   "lambda_C", "b",     "theta",  "material",
                                                "lambda_P", "method", "rel_tol", "output", "output_path"};
  return keys;
}

namespace {

struct Entry {
  std::string value;
  int line = 0;
};

using Entries = std::map<std::string, Entry>;

bool known_key(const std::string& key) {
  const auto& keys = config_keys();
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

Entries read_flat(const std::string& text) {
  Entries entries;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string content = trim(raw);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line) + ": expected 'key = value'", {}, line);
    }
    const std::string key = trim(content.substr(0, eq));
    const std::string value = trim(content.substr(eq + 1));
    if (!known_key(key)) throw ConfigError("line " + std::to_string(line) + ": unknown key '" + key + "'", key, line);
    if (entries.count(key)) {
      throw ConfigError("line " + std::to_string(line) + ": duplicate key '" + key + "'", key, line);
    }
    if (value.empty()) throw ConfigError("line " + std::to_string(line) + ": empty value for '" + key + "'", key, line);
    entries[key] = {value, line};
  }
  return entries;
}

Entries read_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed JSON config: ") + e.what());
  }
  const nlohmann::json& obj = doc.contains("config") ? doc.at("config") : doc;
  if (!obj.is_object()) throw ConfigError("JSON config must be an object");
  Entries entries;
  for (const auto& [key, value] : obj.items()) {
    if (!known_key(key)) throw ConfigError("unknown key '" + key + "'", key);
    if (value.is_number()) {
      // Numbers are SI; angles need their suffix to pass the angle parser.
      std::string s = format_number(value.get<double>());
      if (key == "theta") s += "rad";
      entries[key] = {s, 0};
    } else if (value.is_string()) {
      entries[key] = {value.get<std::string>(), 0};
    } else {
      throw ConfigError("key '" + key + "' must be a number or a string", key);
    }
  }
  return entries;
}

template <typename Parse>
double parse_entry(const Entries& entries, const std::string& key, Parse parse) {
  const Entry& e = entries.at(key);
  try {
    return parse(e.value);
  } catch (const std::invalid_argument& ex) {
    const std::string where = e.line > 0 ? "line " + std::to_string(e.line) + ": " : "";
    throw ConfigError(where + "key '" + key + "': " + ex.what(), key, e.line);
  }
}

RunConfig build(const Entries& entries) {
  std::vector<std::string> missing;
  for (const char* key : {"L", "Ly", "lambda_C", "material"}) {
    if (!entries.count(key)) missing.emplace_back(key);
  }
  const bool has_product = entries.count("a1a2") > 0;
  const bool has_a1 = entries.count("a1") > 0;
  const bool has_a2 = entries.count("a2") > 0;
  if (!has_product && !has_a1 && !has_a2) missing.emplace_back("a1a2 (or a1 and a2)");
  if (!has_product && has_a1 != has_a2) missing.emplace_back(has_a1 ? "a2" : "a1");
  const bool plasma = entries.count("material") && entries.at("material").value == "plasma";
  if (plasma && !entries.count("lambda_P")) missing.emplace_back("lambda_P");
  if (!missing.empty()) {
    std::string msg = "missing required keys:";
    for (std::size_t i = 0; i < missing.size(); ++i) msg += (i ? ", " : " ") + missing[i];
    throw ConfigError(msg, missing.front());
  }
  if (has_product && (has_a1 || has_a2)) {
    const std::string key = has_a1 ? "a1" : "a2";
    throw ConfigError("give either a1a2 or a1 and a2, not both", key, entries.at(key).line);
  }

  RunConfig cfg;
  Geometry& g = cfg.geometry;
  g.L = parse_entry(entries, "L", parse_length);
  g.Ly = parse_entry(entries, "Ly", parse_length);
  g.Lx = entries.count("Lx") ? parse_entry(entries, "Lx", parse_length) : g.Ly;
  g.lambdaC = parse_entry(entries, "lambda_C", parse_length);
  if (has_product) {
    const double product = parse_entry(entries, "a1a2", parse_area);
    if (product < 0.0) throw ConfigError("a1a2 must be non-negative", "a1a2", entries.at("a1a2").line);
    g.a1 = g.a2 = std::sqrt(product);
  } else {
    g.a1 = parse_entry(entries, "a1", parse_length);
    g.a2 = parse_entry(entries, "a2", parse_length);
  }
  if (entries.count("b")) g.b = parse_entry(entries, "b", parse_length);
  if (entries.count("theta")) g.theta = parse_entry(entries, "theta", parse_angle);

  const Entry& mat = entries.at("material");
  if (mat.value == "perfect") {
    if (entries.count("lambda_P")) {
      throw ConfigError("line " + std::to_string(entries.at("lambda_P").line) +
                            ": lambda_P meaningless for perfect mirrors",
                        "lambda_P", entries.at("lambda_P").line);
    }
    cfg.material = Material::perfect();
  } else if (mat.value == "plasma") {
    cfg.material = Material::plasma(parse_entry(entries, "lambda_P", parse_length));
  } else {
    throw ConfigError("key 'material': expected perfect or plasma, got '" + mat.value + "'", "material", mat.line);
  }

  if (entries.count("method")) {
    const Entry& e = entries.at("method");
    try {
      cfg.method = response::method_from_string(e.value);
    } catch (const std::invalid_argument& ex) {
      throw ConfigError(std::string("key 'method': ") + ex.what(), "method", e.line);
    }
  }
  if (entries.count("rel_tol")) {
    cfg.quadrature.rel_tol = parse_entry(entries, "rel_tol", [](const std::string& v) {
      const auto [x, suffix] = split_number(v);
      if (!suffix.empty()) throw std::invalid_argument("rel_tol takes no unit");
      if (!(x > 0.0)) throw std::invalid_argument("rel_tol must be positive");
      return x;
    });
  }
  if (entries.count("output")) {
    const Entry& e = entries.at("output");
    if (e.value == "csv") {
      cfg.output = OutputFormat::Csv;
    } else if (e.value == "json") {
      cfg.output = OutputFormat::Json;
    } else {
      throw ConfigError("key 'output': expected csv or json", "output", e.line);
    }
  }
  if (entries.count("output_path")) cfg.output_path = entries.at("output_path").value;

  const ValidationReport report = validate(g, cfg.material);
  if (!report.ok()) {
    std::string msg = "invalid configuration:";
    for (const auto& e : report.errors) msg += " " + e + ";";
    throw ConfigError(msg);
  }
  return cfg;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  const std::string body = trim(text);
  const Entries entries = !body.empty() && body.front() == '{' ? read_json(body) : read_flat(text);
  return build(entries);
}

void write_csv(std::ostream& os, const Table& table) {
  auto emit = [&os](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os << ',';
      const std::string& c = cells[i];
      if (c.find_first_of(",\"\n") != std::string::npos) {
        os << '"';
        for (char ch : c) os << (ch == '"' ? "\"\"" : std::string(1, ch));
        os << '"';
      } else {
        os << c;
      }
    }
    os << '\n';
  };
  emit(table.header);
  for (const auto& row : table.rows) emit(row);
}

namespace {

nlohmann::json cell_json(const std::string& cell) {
  double v = 0.0;
  const char* end = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(cell.data(), end, v);
  if (ec == std::errc() && ptr == end && std::isfinite(v)) return v;
  if (cell == "nan" || cell == "inf" || cell == "-inf") return nullptr;
  return cell;
}

nlohmann::json config_json(const RunConfig& c) {
  nlohmann::json j;
  const Geometry& g = c.geometry;
  j["L"] = g.L;
  j["Lx"] = g.Lx;
  j["Ly"] = g.Ly;
  j["a1"] = g.a1;
  j["a2"] = g.a2;
  j["lambda_C"] = g.lambdaC;
  j["b"] = g.b;
  j["theta"] = g.theta;
  j["material"] = c.material.is_perfect() ? "perfect" : "plasma";
  if (!c.material.is_perfect()) j["lambda_P"] = c.material.lambdaP;
  j["method"] = response::to_string(c.method);
  j["rel_tol"] = c.quadrature.rel_tol;
  j["output"] = c.output == OutputFormat::Csv ? "csv" : "json";
  j["output_path"] = c.output_path;
  return j;
}

}  // namespace

void write_json(std::ostream& os, const RunConfig& config, const Table& table) {
  nlohmann::json doc;
  doc["config"] = config_json(config);
  doc["rows"] = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json r = nlohmann::json::object();
    for (std::size_t i = 0; i < table.header.size() && i < row.size(); ++i) r[table.header[i]] = cell_json(row[i]);
    doc["rows"].push_back(std::move(r));
  }
  os << doc.dump(2) << '\n';
}

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = {"energy",    "epp",      "gk",       "torque",  "torque-max",
                                                 "landscape", "sweep-k",  "optimize", "compare", "check"};
  return names;
}

namespace {

using observables::Method;
using F = std::string;

F num(double v) { return format_number(v); }

double wavenumber(const RunConfig& c) { return corrugation_wavenumber(c.geometry.lambdaC); }

Table cmd_energy(const RunConfig& c) {
  const double G = response::evaluate(c.method, wavenumber(c), c.geometry.L, c.material, c.quadrature).value;
  return {{"b_m", "theta_rad", "delta_e_J_per_m2", "G_J_per_m4", "method"},
          {{num(c.geometry.b), num(c.geometry.theta), num(observables::energy_correction(c.geometry, G)), num(G),
            response::to_string(c.method)}}};
}

Table cmd_epp(const RunConfig& c) {
  const lifshitz::PlaneEnergyResult r = lifshitz::plane_energy(c.geometry.L, c.material);
  return {{"L_m", "e_pp_J_per_m2", "d1_J_per_m3", "d2_J_per_m4"}, {{num(r.L), num(r.e_pp), num(r.d1), num(r.d2)}}};
}

Table cmd_gk(const RunConfig& c) {
  const double k = wavenumber(c);
  const response::ResponseSample s = response::evaluate(c.method, k, c.geometry.L, c.material, c.quadrature);
  const double g0 = response::evaluate(c.method, 0.0, c.geometry.L, c.material, c.quadrature).value;
  return {{"k_rad_per_m", "L_m", "method", "G_J_per_m4", "error_J_per_m4", "G_over_G0"},
          {{num(k), num(c.geometry.L), response::to_string(c.method), num(s.value), num(s.error_estimate),
            num(s.value / g0)}}};
}

Table cmd_torque(const RunConfig& c) {
  const double G = response::evaluate(c.method, wavenumber(c), c.geometry.L, c.material, c.quadrature).value;
  const Geometry& g = c.geometry;
  return {{"theta_rad", "b_m", "torque_N_per_m", "torque_signed_N_per_m", "lateral_force_N_per_m2", "stability"},
          {{num(g.theta), num(g.b), num(observables::torque(g, G)), num(observables::torque_signed(g, G)),
            num(observables::lateral_force(g, G)), observables::to_string(observables::stability_classify(g))}}};
}

Table cmd_torque_max(const RunConfig& c) {
  const observables::TorqueResult t = observables::torque_max(c.geometry, c.material, c.method, c.quadrature);
  return {{"method", "tau_max_N_per_m", "theta_star_rad", "theta_star_Ly_over_lambdaC", "G_J_per_m4"},
          {{response::to_string(t.method), num(t.torque_per_area), num(t.theta_at),
            num(t.theta_at * c.geometry.Ly / c.geometry.lambdaC), num(t.response_value)}}};
}

Table cmd_landscape(const RunConfig& c, const RunOptions& o) {
  const observables::Landscape land =
      observables::landscape_grid(c.geometry, c.material, c.method, o.b_steps, o.theta_steps, c.quadrature);
  Table t{{"b_m", "theta_rad", "delta_e_J_per_m2"}, {}};
  t.rows.reserve(land.points.size());
  for (const auto& p : land.points) t.rows.push_back({num(p.b), num(p.theta), num(p.delta_e_per_area)});
  return t;
}

Table cmd_sweep(const RunConfig& c, const RunOptions& o, std::ostream& err, bool& failed) {
  const double L = c.geometry.L;
  const double k_min = o.k_min > 0.0 ? o.k_min : 0.1 / L;
  const double k_max = o.k_max > 0.0 ? o.k_max : 10.0 / L;
  if (o.k_count < 2 || !(k_max > k_min)) throw std::invalid_argument("sweep-k: need k_count >= 2 and k_max > k_min");
  std::vector<double> grid(o.k_count);
  for (int i = 0; i < o.k_count; ++i) {
    grid[i] = std::exp(std::log(k_min) + (std::log(k_max) - std::log(k_min)) * i / (o.k_count - 1));
  }
  const auto rows = observables::sweep_k(L, c.material, grid, c.geometry.amplitude_product(), c.geometry.Ly,
                                         c.quadrature, o.workers);
  Table t{{"k_rad_per_m", "tau_scattering", "tau_pfa", "tau_perfect", "theta_star"}, {}};
  for (const auto& r : rows) {
    if (r.error) {
      failed = true;
      err << "sweep-k: row k = " << num(r.k) << " failed: " << *r.error << '\n';
      const F nan = num(std::nan(""));
      t.rows.push_back({num(r.k), nan, nan, nan, nan});
    } else {
      t.rows.push_back({num(r.k), num(r.tau_scattering), num(r.tau_pfa), num(r.tau_perfect), num(r.theta_star)});
    }
  }
  return t;
}

Table cmd_optimize(const RunConfig& c) {
  const double L = c.geometry.L;
  const observables::OptimalWavenumber o = observables::optimal_wavenumber(L, c.material, c.method, c.quadrature);
  return {{"L_m", "method", "k_star_rad_per_m", "k_star_L", "lambda_C_star_m", "k_abs_G_J_per_m3"},
          {{num(L), response::to_string(c.method), num(o.k), num(o.k * L), num(2.0 * kPi / o.k), num(o.k_times_g)}}};
}

Table cmd_compare(const RunConfig& c) {
  using observables::torque_max;
  const Geometry& g = c.geometry;
  const auto s = torque_max(g, c.material, Method::Scattering, c.quadrature);
  const auto p = torque_max(g, c.material, Method::PFA, c.quadrature);
  const auto f = torque_max(g, c.material, Method::PerfectScattering, c.quadrature);
  return {{"k_rad_per_m", "G_scattering", "G_pfa", "G_perfect", "tau_scattering", "tau_pfa", "tau_perfect",
           "pfa_over_scattering", "perfect_over_scattering", "theta_star_rad"},
          {{num(wavenumber(c)), num(s.response_value), num(p.response_value), num(f.response_value),
            num(s.torque_per_area), num(p.torque_per_area), num(f.torque_per_area),
            num(p.torque_per_area / s.torque_per_area), num(f.torque_per_area / s.torque_per_area), num(s.theta_at)}}};
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

}  // namespace

int run(const std::string& subcommand, const RunConfig& config, const RunOptions& options, std::ostream& out,
        std::ostream& err) {
  if (subcommand == "check") return run_check(out);
  for (const auto& w : validate(config.geometry, config.material).warnings) err << "warning: " << w << '\n';

  Table table;
  bool row_failed = false;
  try {
    if (subcommand == "energy") {
      table = cmd_energy(config);
    } else if (subcommand == "epp") {
      table = cmd_epp(config);
    } else if (subcommand == "gk") {
      table = cmd_gk(config);
    } else if (subcommand == "torque") {
      table = cmd_torque(config);
    } else if (subcommand == "torque-max") {
      table = cmd_torque_max(config);
    } else if (subcommand == "landscape") {
      table = cmd_landscape(config, options);
    } else if (subcommand == "sweep-k") {
      table = cmd_sweep(config, options, err, row_failed);
    } else if (subcommand == "optimize") {
      table = cmd_optimize(config);
    } else if (subcommand == "compare") {
      table = cmd_compare(config);
    } else {
      err << "unknown subcommand '" << subcommand << "'\n";
      return 2;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (config.output_path != "-") {
    file.open(config.output_path, std::ios::binary);
    if (!file) {
      err << "error: cannot open output file '" << config.output_path << "'\n";
      return 1;
    }
    sink = &file;
  }
  if (config.output == OutputFormat::Csv) {
    if (options.stamp) *sink << "# generated " << timestamp() << '\n';
    write_csv(*sink, table);
  } else {
    write_json(*sink, config, table);
  }
  sink->flush();
  return row_failed ? 1 : 0;
}

int run_check(std::ostream& out) {
  const auto outcomes = selfcheck::run_all([&out](const selfcheck::Outcome& o) {
    out << selfcheck::format(o) << '\n';
    out.flush();
  });
  const bool ok = std::all_of(outcomes.begin(), outcomes.end(), [](const auto& o) { return o.passed; });
  out << (ok ? "all checks passed" : "CHECKS FAILED") << '\n';
  return ok ? 0 : 1;
}

}  // namespace casimir::cli
