#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "corona/pointwise.hpp"

namespace corona {

// Malformed instance text; the message names the line/column or the field.
class InstanceParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kInstanceSchemaVersion = 1;

// JSON text: schema_version, name, nvars, rows, cols, degree, delta_sq, p
// (number or "inf"), and F, g as lists of {index, coeff} with coeff a row
// list of [re, im] pairs. Terms are written in multi-index order, so
// write -> read -> write is byte-identical.
std::string instance_to_json(const CoronaInstance& inst);
CoronaInstance instance_from_json(const std::string& text);

void write_instance(const std::filesystem::path& path, const CoronaInstance& inst);
CoronaInstance read_instance(const std::filesystem::path& path);

}  // namespace corona
