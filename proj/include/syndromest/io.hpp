#pragma once

#include <optional>
#include <string>

#include "syndromest/codes.hpp"
#include "syndromest/estimate.hpp"
#include "syndromest/noise.hpp"

namespace syndromest {

// Code definition file:
//   {"n": 5, "generators": ["XZZXI", ...], "logicals": [["XXXXX", "ZZZZZ"]]}
// Pauli strings as letter strings, leftmost = qubit 1.
StabilizerCode code_from_json(const std::string& json_text);
std::string code_to_json(const StabilizerCode& code);

// Accepts five_qubit | steane | repetition:<n> | path to a JSON file.
StabilizerCode code_from_name(const std::string& name);

// Noise model file: {"depolarizing": p}, {"phenomenological": {"p": ...,
// "p_m": ...}}, or explicit sets
//   {"n": .., "l": .., "sets": [{"elements": [{"data": "XII", "flips":
//   "00"}, ...], "rates": [...]}, ...]}.
struct NoiseSpec {
  double p = 0.0;
  std::optional<double> p_m;
  std::optional<DecomposableModel> explicit_model;
};
NoiseSpec noise_from_json(const std::string& json_text);

// Dataset file produced by `simulate`: syndromes as bit strings plus the
// sampling seed and the truth rates used.
struct DatasetFile {
  std::string code;
  int levels = 1;
  double p = 0.0;
  std::optional<double> p_m;
  std::uint64_t seed = 0;
  std::vector<Syndrome> syndromes;
};
std::string dataset_to_json(const DatasetFile& ds);
DatasetFile dataset_from_json(const std::string& json_text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace syndromest
