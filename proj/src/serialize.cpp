#include "uqc/serialize.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace uqc {

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = digits[v & 0xF];
    v >>= 4;
  }
  return s;
}

json to_json(const NoiseSpec& spec) {
  json arr = json::array();
  for (const Channel& ch : spec.channels)
    arr.push_back({{"kind", channel_name(ch.kind)}, {"parameter", ch.parameter}});
  return arr;
}

NoiseSpec noise_spec_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("noise spec: expected array");
  NoiseSpec spec;
  for (const auto& e : j)
    spec.channels.push_back(
        {channel_kind_from_name(e.at("kind").get<std::string>()), e.at("parameter").get<double>()});
  return spec;
}

json to_json(const CircuitSpec& spec) {
  return {{"qubits", spec.qubits},
          {"feature_map_layers", spec.feature_map_layers},
          {"ansatz_layers", spec.ansatz_layers}};
}

CircuitSpec circuit_spec_from_json(const json& j) {
  CircuitSpec s;
  s.qubits = j.at("qubits").get<int>();
  s.feature_map_layers = j.at("feature_map_layers").get<int>();
  s.ansatz_layers = j.at("ansatz_layers").get<int>();
  s.validate();
  return s;
}

json to_json(const AnsatzWeights& w) {
  json rows = json::array();
  for (int l = 0; l <= w.layers; ++l) {
    json row = json::array();
    for (int q = 0; q < w.qubits; ++q) row.push_back(w.at(l, q));
    rows.push_back(row);
  }
  return {{"qubits", w.qubits}, {"layers", w.layers}, {"theta", rows}};
}

AnsatzWeights weights_from_json(const json& j) {
  AnsatzWeights w = AnsatzWeights::zeros(j.at("qubits").get<int>(), j.at("layers").get<int>());
  const json& rows = j.at("theta");
  if (rows.size() != static_cast<std::size_t>(w.layers + 1))
    throw std::invalid_argument("weights: wrong row count");
  for (int l = 0; l <= w.layers; ++l) {
    if (rows[l].size() != static_cast<std::size_t>(w.qubits))
      throw std::invalid_argument("weights: wrong column count");
    for (int q = 0; q < w.qubits; ++q) w.at(l, q) = rows[l][q].get<double>();
  }
  w.validate();
  return w;
}

json to_json(const PreprocessPlan& plan) {
  return {{"mean", plan.mean},
          {"stddev", plan.stddev},
          {"components", plan.components},
          {"explained_variance", plan.explained_variance},
          {"pc_min", plan.pc_min},
          {"pc_max", plan.pc_max}};
}

PreprocessPlan plan_from_json(const json& j) {
  PreprocessPlan p;
  p.mean = j.at("mean").get<std::vector<double>>();
  p.stddev = j.at("stddev").get<std::vector<double>>();
  p.components = j.at("components").get<std::vector<std::vector<double>>>();
  p.explained_variance = j.at("explained_variance").get<std::vector<double>>();
  p.pc_min = j.at("pc_min").get<std::vector<double>>();
  p.pc_max = j.at("pc_max").get<std::vector<double>>();
  return p;
}

json to_json(const Dataset& ds) {
  json rows = json::array();
  for (std::size_t i = 0; i < ds.size(); ++i)
    rows.push_back({{"features", ds.features[i]}, {"label", ds.labels[i]}});
  return {{"feature_names", ds.feature_names}, {"provenance", ds.provenance}, {"rows", rows}};
}

Dataset dataset_from_json(const json& j) {
  Dataset ds;
  ds.feature_names = j.at("feature_names").get<std::vector<std::string>>();
  ds.provenance = j.value("provenance", "");
  for (const auto& row : j.at("rows")) {
    ds.features.push_back(row.at("features").get<std::vector<double>>());
    ds.labels.push_back(row.at("label").get<int>());
    if (ds.labels.back() != 0 && ds.labels.back() != 1)
      throw std::invalid_argument("dataset: non-binary label");
  }
  return ds;
}

json to_json(const MetricsReport& report) {
  json runs = json::array();
  for (const RunRecord& r : report.per_run)
    runs.push_back({{"run", r.run},
                    {"accuracy", r.scores.accuracy},
                    {"precision", r.scores.precision},
                    {"recall", r.scores.recall},
                    {"f1", r.scores.f1},
                    {"roc_auc", r.roc_auc},
                    {"executions", r.executions}});
  return {{"model", report.model},
          {"noise", report.noisy},
          {"backend", report.backend},
          {"runs", report.runs},
          {"test_rows", report.test_rows},
          {"avg_executions", report.avg_executions},
          {"total_draws", report.total_draws},
          {"metrics_mean",
           {{"accuracy", report.mean_scores.accuracy},
            {"precision", report.mean_scores.precision},
            {"recall", report.mean_scores.recall},
            {"f1", report.mean_scores.f1},
            {"roc_auc", report.mean_roc_auc}}},
          {"per_run", runs}};
}

json model_to_json(const AnsatzWeights& w, const CircuitSpec& spec, const std::string& variant,
                   std::uint64_t seed) {
  json payload = to_json(w);
  const std::string canon = payload.dump();
  return {{"spec", to_json(spec)},
          {"weights", payload},
          {"variant", variant},
          {"seed", seed},
          {"checksum", hex64(fnv1a64(canon))}};
}

ModelFile model_from_json(const json& j) {
  ModelFile m;
  m.weights = weights_from_json(j.at("weights"));
  const std::string canon = json(j.at("weights")).dump();
  if (j.at("checksum").get<std::string>() != hex64(fnv1a64(canon)))
    throw std::runtime_error("model file: checksum mismatch (corrupt model)");
  m.spec = circuit_spec_from_json(j.at("spec"));
  m.variant = j.at("variant").get<std::string>();
  m.seed = j.at("seed").get<std::uint64_t>();
  return m;
}

namespace {
void check_finite(const json& j, const std::string& where) {
  if (j.is_number_float()) {
    if (!std::isfinite(j.get<double>()))
      throw std::runtime_error("non-finite value at " + where);
  } else if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) check_finite(it.value(), where + "." + it.key());
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i)
      check_finite(j[i], where + "[" + std::to_string(i) + "]");
  }
}
}  // namespace

std::string dump_checked(const json& j) {
  check_finite(j, "$");
  return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
  if (!out) throw std::runtime_error("short write to '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json_file(const std::string& path) {
  return json::parse(read_text_file(path));
}

std::string csv_double(double v) {
  if (!std::isfinite(v)) throw std::runtime_error("csv: non-finite value");
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace uqc
