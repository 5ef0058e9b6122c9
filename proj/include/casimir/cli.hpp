#pragma once

#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "casimir/model.hpp"
#include "casimir/quadrature.hpp"
#include "casimir/response.hpp"

namespace casimir::cli {

enum class OutputFormat { Csv, Json };

struct RunConfig {
  Geometry geometry;
  Material material;
  response::Method method = response::Method::Scattering;
  QuadratureSpec quadrature = response::default_spec();
  OutputFormat output = OutputFormat::Csv;
  std::string output_path = "-";  // "-" is standard output
};

/// Bad configuration text. line is 0 when the problem is not tied to a line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, std::string key = {}, int line = 0)
      : std::runtime_error(what), key_(std::move(key)), line_(line) {}
  const std::string& key() const { return key_; }
  int line() const { return line_; }

 private:
  std::string key_;
  int line_;
};

/// Parses the flat `key = value` format (with `#` comments), or the JSON
/// document written by this tool (its "config" object). Values carry unit
/// suffixes: lengths nm/um/mm/m (bare numbers are metres), areas nm2/um2/m2,
/// angles deg/rad (mandatory).
RunConfig parse_config(const std::string& text);

/// The known configuration keys.
const std::vector<std::string>& config_keys();

/// Physical value with unit suffix, as accepted in configs.
double parse_length(const std::string& value);
double parse_area(const std::string& value);
double parse_angle(const std::string& value);
/// Wavenumber such as "2.6/um" or "2.6e6/m" (rad/m).
double parse_wavenumber(const std::string& value);

/// Shortest decimal representation that round-trips.
std::string format_number(double v);

/// A rectangular result: header plus rows of cells (numbers preformatted).
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void write_csv(std::ostream& os, const Table& table);
/// {"config": {...}, "rows": [{column: value, ...}, ...]}; numeric cells are
/// emitted as JSON numbers.
void write_json(std::ostream& os, const RunConfig& config, const Table& table);

struct RunOptions {
  double k_min = 0.0;  // rad/m; 0 selects 0.1/L
  double k_max = 0.0;  // rad/m; 0 selects 10/L
  int k_count = 40;
  int b_steps = 81;
  int theta_steps = 121;
  int workers = 1;
  bool stamp = false;  // prepend a "# generated ..." comment line
};

const std::vector<std::string>& subcommands();

/// Executes one subcommand. Returns 0 on success, 1 on a computation error,
/// 2 on a usage or configuration error. Data goes to `out` unless the config
/// names an output file; diagnostics go to `err`.
int run(const std::string& subcommand, const RunConfig& config, const RunOptions& options, std::ostream& out,
        std::ostream& err);

/// Runs the built-in verification suite; returns 0 iff all checks pass.
int run_check(std::ostream& out);

}  // namespace casimir::cli
