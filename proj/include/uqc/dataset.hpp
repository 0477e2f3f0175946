#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace uqc {

// In-memory tabular dataset with binary labels.
struct Dataset {
  std::vector<std::string> feature_names;
  std::vector<std::vector<double>> features;
  std::vector<int> labels;  // 0/1
  std::string provenance;

  std::size_t size() const { return features.size(); }
  std::size_t feature_count() const { return feature_names.size(); }
};

// Loads an RFC-4180-style CSV with a header row. The label column must hold
// "0"/"1", or exactly two distinct values when positive_label names the one
// mapped to 1. Non-numeric feature cells, ragged rows, a missing label
// column, or a third label value are errors naming the offending row.
Dataset load_csv(const std::string& path, const std::string& label_column,
                 const std::string& positive_label = "");

// Deterministic shuffled split; test size is ceil((1 - ratio) * n), matching
// the conventional 569 -> 455/114 at ratio 0.8.
std::pair<Dataset, Dataset> split(const Dataset& dataset, double ratio, std::uint64_t seed);

}  // namespace uqc
