#include "uqc/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "uqc/rng.hpp"

namespace uqc {

namespace {

// RFC-4180-style field splitting: quoted fields, doubled quotes, '.' decimal
std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

double parse_number(const std::string& cell, std::size_t row, const std::string& column) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(cell, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("row " + std::to_string(row) + ", column '" + column +
                                "': non-numeric cell '" + cell + "'");
  }
  while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
  if (used != cell.size() || !std::isfinite(v))
    throw std::invalid_argument("row " + std::to_string(row) + ", column '" + column +
                                "': non-numeric cell '" + cell + "'");
  return v;
}

}  // namespace

Dataset load_csv(const std::string& path, const std::string& label_column,
                 const std::string& positive_label) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("load_csv: cannot open '" + path + "'");

  std::string line;
  if (!std::getline(in, line) || line.empty())
    throw std::invalid_argument("load_csv: empty file '" + path + "'");

  const std::vector<std::string> header = split_csv_line(line);
  const auto label_it = std::find(header.begin(), header.end(), label_column);
  if (label_it == header.end())
    throw std::invalid_argument("load_csv: missing label column '" + label_column + "'");
  const std::size_t label_idx = static_cast<std::size_t>(label_it - header.begin());

  Dataset ds;
  ds.provenance = path;
  for (std::size_t i = 0; i < header.size(); ++i)
    if (i != label_idx) ds.feature_names.push_back(header[i]);

  // when a positive label is configured, exactly two distinct values may appear
  std::string negative_seen;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw std::invalid_argument("load_csv: row " + std::to_string(row) + " has " +
                                  std::to_string(cells.size()) + " cells, expected " +
                                  std::to_string(header.size()));

    const std::string& raw_label = cells[label_idx];
    int label = 0;
    if (!positive_label.empty()) {
      if (raw_label == positive_label) {
        label = 1;
      } else {
        if (negative_seen.empty()) negative_seen = raw_label;
        if (raw_label != negative_seen)
          throw std::invalid_argument("load_csv: row " + std::to_string(row) +
                                      ": non-binary label '" + raw_label + "'");
        label = 0;
      }
    } else if (raw_label == "0") {
      label = 0;
    } else if (raw_label == "1") {
      label = 1;
    } else {
      throw std::invalid_argument("load_csv: row " + std::to_string(row) +
                                  ": non-binary label '" + raw_label + "'");
    }

    std::vector<double> feats;
    feats.reserve(ds.feature_names.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i == label_idx) continue;
      feats.push_back(parse_number(cells[i], row, header[i]));
    }
    ds.features.push_back(std::move(feats));
    ds.labels.push_back(label);
  }

  if (ds.features.empty())
    throw std::invalid_argument("load_csv: no data rows in '" + path + "'");
  return ds;
}

std::pair<Dataset, Dataset> split(const Dataset& dataset, double ratio, std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0))
    throw std::invalid_argument("split: ratio must lie strictly in (0,1)");
  const std::size_t n = dataset.size();
  if (n < 2) throw std::invalid_argument("split: need at least 2 rows");

  const std::size_t test_n =
      static_cast<std::size_t>(std::ceil((1.0 - ratio) * static_cast<double>(n)));
  if (test_n == 0 || test_n >= n)
    throw std::invalid_argument("split: degenerate split sizes");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  for (std::size_t i = n - 1; i > 0; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.next_u64() % (i + 1));
    std::swap(order[i], order[j]);
  }

  auto take = [&](std::size_t begin, std::size_t end, const char* tag) {
    Dataset part;
    part.feature_names = dataset.feature_names;
    part.provenance = dataset.provenance + " [" + tag + "]";
    for (std::size_t i = begin; i < end; ++i) {
      part.features.push_back(dataset.features[order[i]]);
      part.labels.push_back(dataset.labels[order[i]]);
    }
    return part;
  };
  return {take(0, n - test_n, "train"), take(n - test_n, n, "test")};
}

}  // namespace uqc
