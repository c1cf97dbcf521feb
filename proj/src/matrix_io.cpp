/*
 * Copyright (c) Contributors to the semiop project.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "semiop/matrix_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace semiop {

ComplexMatrix parse_matrix_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw MatrixIoError(std::string("matrix file: invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("entries"))
    throw MatrixIoError("matrix file: expected an object with \"n\" and \"entries\"");
  if (!doc["n"].is_number_integer() || doc["n"].get<long long>() < 1)
    throw MatrixIoError("matrix file: \"n\" must be a positive integer");
  const std::size_t n = doc["n"].get<std::size_t>();
  const auto& entries = doc["entries"];
  if (!entries.is_array() || entries.size() != n)
    throw MatrixIoError("matrix file: \"entries\" must be an n x n array");
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = entries[i];
    if (!row.is_array() || row.size() != n)
      throw MatrixIoError("matrix file: row has wrong length");
    for (std::size_t j = 0; j < n; ++j) {
      const auto& cell = row[j];
      if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() || !cell[1].is_number())
        throw MatrixIoError("matrix file: entry must be a [re, im] pair");
      const double re = cell[0].get<double>();
      const double im = cell[1].get<double>();
      if (!std::isfinite(re) || !std::isfinite(im))
        throw MatrixIoError("matrix file: non-finite entry");
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

std::string matrix_to_json(const ComplexMatrix& m) {
  if (!m.is_square()) throw MatrixIoError("matrix_to_json: matrix not square");
  nlohmann::json entries = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    entries.push_back(std::move(row));
  }
  nlohmann::json doc;
  doc["n"] = m.dim();
  doc["entries"] = std::move(entries);
  return doc.dump(2) + "\n";
}

ComplexMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MatrixIoError("cannot open matrix file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix_json(buf.str());
}

void write_matrix_file(const std::string& path, const ComplexMatrix& m) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw MatrixIoError("cannot open matrix file for writing: " + path);
  out << matrix_to_json(m);
  if (!out) throw MatrixIoError("failed writing matrix file: " + path);
}

}  // namespace semiop
