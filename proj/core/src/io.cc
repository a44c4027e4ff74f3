// Copyright 2026 The dpdesign Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "dpdesign/io.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace dpdesign {
namespace {

std::string Trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> SplitWhitespace(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> tokens;
  std::string token;
  while (is >> token) tokens.push_back(token);
  return tokens;
}

std::vector<std::string> SplitChar(const std::string& s, char sep) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream is(s);
  while (std::getline(is, field, sep)) fields.push_back(field);
  if (!s.empty() && s.back() == sep) fields.push_back("");
  return fields;
}

double ParseDoubleOrThrow(const std::string& s, const std::string& context) {
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ValidationError(context + ": cannot parse number '" + s + "'");
  }
}

long ParseLongOrThrow(const std::string& s, const std::string& context) {
  try {
    size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ValidationError(context + ": cannot parse integer '" + s + "'");
  }
}

std::string ReadFileOrThrow(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

std::string FormatDouble(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void AtomicWriteFile(const std::string& path, const std::string& contents) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write file: " + tmp);
    out << contents;
    if (!out) throw ValidationError("short write to: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

Matrix ReadMatrixCsv(const std::string& path) {
  std::istringstream in(ReadFileOrThrow(path));
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = Trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    for (const std::string& field : SplitChar(line, ','))
      row.push_back(ParseDoubleOrThrow(
          Trim(field), path + " line " + std::to_string(lineno)));
    if (!rows.empty() && row.size() != rows.front().size())
      throw ValidationError(path + " line " + std::to_string(lineno) +
                            ": ragged row");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ValidationError(path + ": empty matrix");
  Matrix m(rows.size(), rows.front().size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

void WriteMatrixCsv(const std::string& path, const Matrix& matrix) {
  std::ostringstream os;
  for (int i = 0; i < matrix.rows(); ++i) {
    for (int j = 0; j < matrix.cols(); ++j) {
      if (j) os << ',';
      os << FormatDouble(matrix(i, j));
    }
    os << '\n';
  }
  AtomicWriteFile(path, os.str());
}

Vector ReadVectorCsv(const std::string& path) {
  Matrix m = ReadMatrixCsv(path);
  if (m.cols() != 1)
    throw ValidationError(path + ": expected a single-column vector");
  return m.col(0);
}

void WriteVectorCsv(const std::string& path, const Vector& vector) {
  WriteMatrixCsv(path, vector);
}

void WriteStrategyCsv(const std::string& path, const Strategy& strategy) {
  std::ostringstream os;
  os << "# p=" << strategy.matrix.rows() << " n=" << strategy.matrix.cols()
     << " provenance=" << ToString(strategy.kind) << '\n';
  for (int i = 0; i < strategy.matrix.rows(); ++i) {
    for (int j = 0; j < strategy.matrix.cols(); ++j) {
      if (j) os << ',';
      os << FormatDouble(strategy.matrix(i, j));
    }
    os << '\n';
  }
  AtomicWriteFile(path, os.str());
}

Strategy ReadStrategyCsv(const std::string& path) {
  std::istringstream in(ReadFileOrThrow(path));
  std::string first;
  StrategyKind kind = StrategyKind::kEigen;
  if (std::getline(in, first)) {
    first = Trim(first);
    if (!first.empty() && first[0] == '#') {
      for (const std::string& token : SplitWhitespace(first.substr(1))) {
        if (token.rfind("provenance=", 0) == 0)
          kind = StrategyKindFromString(token.substr(11));
      }
    }
  }
  Matrix m = ReadMatrixCsv(path);  // comment line is skipped on re-read
  return Strategy::FromMatrix(std::move(m), kind);
}

DomainShape DomainSpec::shape() const {
  std::vector<int> dims;
  for (const Attribute& a : attributes)
    dims.push_back(static_cast<int>(a.buckets.size()));
  return DomainShape(dims);
}

namespace {

Attribute ParseAttribute(const std::string& name, const std::string& rhs,
                         const std::string& context) {
  std::vector<std::string> tokens = SplitWhitespace(rhs);
  if (tokens.size() < 2)
    throw ValidationError(context + ": expected 'edges ...' or "
                          "'categories ...'");
  Attribute attr;
  attr.name = name;
  if (tokens[0] == "edges") {
    if (tokens.size() < 3)
      throw ValidationError(context + ": edges need at least two values");
    std::vector<double> edges;
    for (size_t i = 1; i < tokens.size(); ++i)
      edges.push_back(ParseDoubleOrThrow(tokens[i], context));
    if (!std::is_sorted(edges.begin(), edges.end()))
      throw ValidationError(context + ": edges must be increasing");
    for (size_t i = 0; i + 1 < edges.size(); ++i)
      attr.buckets.push_back(Bucket::Range(edges[i], edges[i + 1]));
  } else if (tokens[0] == "categories") {
    for (size_t i = 1; i < tokens.size(); ++i)
      attr.buckets.push_back(Bucket::Categories({tokens[i]}));
  } else {
    throw ValidationError(context + ": unknown attribute kind '" + tokens[0] +
                          "'");
  }
  return attr;
}

// Subsets like "{1,2} {3} {}" with 1-based attribute indices.
std::vector<std::vector<int>> ParseSubsets(const std::string& rhs,
                                           const std::string& context) {
  std::vector<std::vector<int>> subsets;
  size_t pos = 0;
  while ((pos = rhs.find('{', pos)) != std::string::npos) {
    size_t end = rhs.find('}', pos);
    if (end == std::string::npos)
      throw ValidationError(context + ": unbalanced '{' in subsets");
    std::string body = Trim(rhs.substr(pos + 1, end - pos - 1));
    std::vector<int> subset;
    if (!body.empty())
      for (const std::string& f : SplitChar(body, ','))
        subset.push_back(
            static_cast<int>(ParseLongOrThrow(Trim(f), context)));
    subsets.push_back(std::move(subset));
    pos = end + 1;
  }
  if (subsets.empty())
    throw ValidationError(context + ": no subsets given");
  return subsets;
}

}  // namespace

DomainSpec ParseDomainSpec(const std::string& text) {
  DomainSpec spec;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_family = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string context = "spec line " + std::to_string(lineno);
    line = Trim(line);
    if (line.empty() || line[0] == '#') continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError(context + ": expected 'key = value'");
    std::string key = Trim(line.substr(0, eq));
    std::string value = Trim(line.substr(eq + 1));
    if (key.rfind("attribute ", 0) == 0) {
      spec.attributes.push_back(
          ParseAttribute(Trim(key.substr(10)), value, context));
    } else if (key == "dims") {
      // Anonymous categorical attributes, one bucket per level.
      for (const std::string& token : SplitWhitespace(value)) {
        long d = ParseLongOrThrow(token, context);
        if (d < 1) throw ValidationError(context + ": dims must be >= 1");
        Attribute attr;
        attr.name = "x" + std::to_string(spec.attributes.size() + 1);
        for (long v = 0; v < d; ++v)
          attr.buckets.push_back(Bucket::Categories({std::to_string(v)}));
        spec.attributes.push_back(std::move(attr));
      }
    } else if (key == "family") {
      spec.family.family = value;
      have_family = true;
    } else if (key == "count") {
      spec.family.count = static_cast<int>(ParseLongOrThrow(value, context));
    } else if (key == "seed") {
      spec.family.seed =
          static_cast<std::uint64_t>(ParseLongOrThrow(value, context));
    } else if (key == "subsets") {
      spec.family.subsets = ParseSubsets(value, context);
    } else if (key == "range-marginal") {
      spec.family.range_marginal = (value == "true" || value == "1");
    } else {
      throw ValidationError(context + ": unknown key '" + key + "'");
    }
  }
  if (spec.attributes.empty())
    throw ValidationError("spec defines no attributes or dims");
  if (!have_family) throw ValidationError("spec has no 'family' line");
  return spec;
}

DomainSpec ReadDomainSpec(const std::string& path) {
  return ParseDomainSpec(ReadFileOrThrow(path));
}

Workload BuildWorkloadFromSpec(const DomainSpec& spec) {
  DomainShape shape = spec.shape();
  const FamilySpec& family = spec.family;
  if (family.family == "all-range") return AllRangeWorkload(shape);
  if (family.family == "random-range") {
    if (family.count < 1)
      throw ValidationError("random-range requires 'count'");
    return RandomRangeWorkload(shape, family.count, family.seed);
  }
  if (family.family == "marginal")
    return MarginalWorkload(shape, family.subsets, family.range_marginal);
  if (family.family == "cdf") return CdfWorkload(shape);
  throw ValidationError("unknown workload family '" + family.family + "'");
}

std::vector<std::vector<std::string>> ReadRecordsCsv(
    const std::string& path, const std::vector<Attribute>& attributes) {
  std::istringstream in(ReadFileOrThrow(path));
  std::string line;
  if (!std::getline(in, line))
    return {};
  std::vector<std::string> header;
  for (const std::string& f : SplitChar(Trim(line), ','))
    header.push_back(Trim(f));
  // Map spec attribute order onto CSV columns.
  std::vector<int> column(attributes.size(), -1);
  for (size_t a = 0; a < attributes.size(); ++a) {
    for (size_t h = 0; h < header.size(); ++h)
      if (header[h] == attributes[a].name) column[a] = static_cast<int>(h);
    if (column[a] < 0)
      throw ValidationError("records file lacks column '" +
                            attributes[a].name + "'");
  }
  std::vector<std::vector<std::string>> records;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    line = Trim(line);
    if (line.empty()) continue;
    std::vector<std::string> fields = SplitChar(line, ',');
    if (fields.size() != header.size())
      throw ValidationError(path + " line " + std::to_string(lineno) +
                            ": malformed row");
    std::vector<std::string> record(attributes.size());
    for (size_t a = 0; a < attributes.size(); ++a)
      record[a] = Trim(fields[column[a]]);
    records.push_back(std::move(record));
  }
  return records;
}

std::string SerializeErrorReport(const ErrorReport& report) {
  std::ostringstream os;
  os << "workload_error=" << FormatDouble(report.workload_error) << '\n'
     << "unitP_squared=" << FormatDouble(report.unitP_squared) << '\n'
     << "rms=" << FormatDouble(report.Rms()) << '\n'
     << "svdb=" << FormatDouble(report.svdb_bound) << '\n'
     << "lower_bound=" << FormatDouble(report.lower_bound) << '\n'
     << "ratio_to_bound=" << FormatDouble(report.ratio_to_bound) << '\n'
     << "thm3_cap=" << FormatDouble(report.thm3_cap) << '\n'
     << "num_queries=" << report.num_queries << '\n';
  os << "per_query=";
  for (int i = 0; i < report.per_query.size(); ++i)
    os << (i ? "," : "") << FormatDouble(report.per_query[i]);
  os << '\n';
  return os.str();
}

std::string ErrorReportCsvHeader() {
  return "unitP_squared,workload_error,svdb,lower_bound,ratio_to_bound,"
         "thm3_cap,num_queries";
}

std::string ErrorReportCsvRow(const ErrorReport& report) {
  std::ostringstream os;
  os << FormatDouble(report.unitP_squared) << ','
     << FormatDouble(report.workload_error) << ','
     << FormatDouble(report.svdb_bound) << ','
     << FormatDouble(report.lower_bound) << ','
     << FormatDouble(report.ratio_to_bound) << ','
     << FormatDouble(report.thm3_cap) << ',' << report.num_queries;
  return os.str();
}

void Manifest::Set(const std::string& key, const std::string& value) {
  entries_.emplace_back(key, value);
}

void Manifest::Set(const std::string& key, double value) {
  entries_.emplace_back(key, FormatDouble(value));
}

void Manifest::Set(const std::string& key, std::int64_t value) {
  entries_.emplace_back(key, std::to_string(value));
}

std::string Manifest::Serialize() const {
  std::ostringstream os;
  for (const auto& [key, value] : entries_) os << key << '=' << value << '\n';
  return os.str();
}

void Manifest::WriteTo(const std::string& path) const {
  AtomicWriteFile(path, Serialize());
}

}  // namespace dpdesign
