#pragma once

#include <string>
#include <vector>

#include "irw/dataset.hpp"

namespace irw {

// Round-trip-safe text for a double (17 significant digits).
std::string format_double(double x);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

// Strict numeric CSV with a header row; parse errors carry the line number.
CsvTable read_csv(const std::string& path);

// First column is the response, the rest are features.
struct LabeledDataset {
  Dataset data;
  std::vector<std::string> feature_names;
  std::string response_name;
};
LabeledDataset read_dataset_csv(const std::string& path);

void write_dataset_csv(const std::string& path, const Dataset& data);

}  // namespace irw
