#pragma once

#include <map>
#include <string>

#include "teloinv/model.hpp"

namespace teloinv {

/// A parsed key=value configuration: the model plus the precision contract.
struct ParsedConfig {
    ModelConfig model;
    unsigned precision_digits = 200;
};

/// Parse a plain-text key=value file. Recognized keys:
///   b, N, law.kind (uniform|tabulated|degenerate), law.delta,
///   n0.kind (gamma|weibull|nakagami|mixture), n0.params (comma-separated),
///   precision_digits.
/// '#' starts a comment; unknown keys raise ConfigError.
ParsedConfig parse_config_file(const std::string& path);

/// Same, from an in-memory key -> value map.
ParsedConfig parse_config(const std::map<std::string, std::string>& kv);

}  // namespace teloinv
