#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "cmdir/bigfloat.hpp"
#include "cmdir/quadfield.hpp"

namespace cmdir {

inline constexpr int kSchemaVersion = 1;

// Bad arguments, detected before any computation.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string command;
  i64 p = 0;
  std::optional<i64> order;
  std::size_t terms = 1000;
  prec_t prec = 256;
  std::string format = "json";
  std::string output_path;
};

void validate(const RunConfig& cfg);  // throws UsageError
// {schema_version, command, config, results, residuals, choices}
nlohmann::ordered_json run_command(const RunConfig& cfg);
// n, re, im, exact; defined for qexp documents only
std::string to_csv(const nlohmann::ordered_json& doc);

nlohmann::ordered_json complex_json(const Complex& z);

}  // namespace cmdir
