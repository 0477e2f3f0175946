#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "uqc/dataset.hpp"
#include "uqc/evaluate.hpp"
#include "uqc/noise.hpp"
#include "uqc/preprocess.hpp"
#include "uqc/train.hpp"
#include "uqc/vqc.hpp"

namespace uqc {

using json = nlohmann::json;

// FNV-1a 64-bit, used for config hashes and model checksums.
std::uint64_t fnv1a64(const std::string& data);
std::string hex64(std::uint64_t v);

json to_json(const NoiseSpec& spec);
NoiseSpec noise_spec_from_json(const json& j);

json to_json(const CircuitSpec& spec);
CircuitSpec circuit_spec_from_json(const json& j);

json to_json(const AnsatzWeights& w);
AnsatzWeights weights_from_json(const json& j);

json to_json(const PreprocessPlan& plan);
PreprocessPlan plan_from_json(const json& j);

// Transformed dataset rows (features + label) with provenance.
json to_json(const Dataset& ds);
Dataset dataset_from_json(const json& j);

json to_json(const MetricsReport& report);

// Model file with an integrity checksum over the weight payload.
json model_to_json(const AnsatzWeights& w, const CircuitSpec& spec, const std::string& variant,
                   std::uint64_t seed);
struct ModelFile {
  AnsatzWeights weights;
  CircuitSpec spec;
  std::string variant;
  std::uint64_t seed = 0;
};
ModelFile model_from_json(const json& j);  // throws on checksum mismatch

// Serialized text with stable formatting; rejects NaN/Inf anywhere in the
// document so no non-finite value escapes into reports.
std::string dump_checked(const json& j);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);
json read_json_file(const std::string& path);

// Deterministic float formatting for CSV cells (shortest round-trip).
std::string csv_double(double v);

}  // namespace uqc
