#include "irw/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace irw {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  CsvTable table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_line(line);
    if (lineno == 1) {
      table.header = fields;
      continue;
    }
    if (fields.size() != table.header.size())
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected " +
                               std::to_string(table.header.size()) + " fields, got " +
                               std::to_string(fields.size()));
    std::vector<double> row(fields.size());
    for (std::size_t k = 0; k < fields.size(); ++k) {
      try {
        std::size_t used = 0;
        row[k] = std::stod(fields[k], &used);
        if (used != fields[k].size()) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad numeric field '" +
                                 fields[k] + "'");
      }
    }
    table.rows.push_back(std::move(row));
  }
  if (table.header.empty()) throw std::runtime_error(path + ": missing header row");
  return table;
}

LabeledDataset read_dataset_csv(const std::string& path) {
  const CsvTable table = read_csv(path);
  if (table.header.size() < 2)
    throw std::runtime_error(path + ": need a response column and at least one feature column");
  if (table.rows.empty()) throw std::runtime_error(path + ": no data rows");
  LabeledDataset out;
  out.response_name = table.header.front();
  out.feature_names.assign(table.header.begin() + 1, table.header.end());
  const Eigen::Index n = Eigen::Index(table.rows.size());
  const Eigen::Index d = Eigen::Index(out.feature_names.size());
  out.data.y.resize(n);
  out.data.X.resize(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = table.rows[std::size_t(i)];
    out.data.y[i] = row[0];
    for (Eigen::Index j = 0; j < d; ++j) out.data.X(i, j) = row[std::size_t(j) + 1];
  }
  out.data.validate();
  return out;
}

void write_dataset_csv(const std::string& path, const Dataset& data) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "y";
  for (Eigen::Index j = 0; j < data.d(); ++j) out << ",x" << (j + 1);
  out << "\n";
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    out << format_double(data.y[i]);
    for (Eigen::Index j = 0; j < data.d(); ++j) out << "," << format_double(data.X(i, j));
    out << "\n";
  }
}

}  // namespace irw
