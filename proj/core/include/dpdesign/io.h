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
#ifndef DPDESIGN_IO_H_
#define DPDESIGN_IO_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dpdesign/analysis.h"
#include "dpdesign/domain.h"
#include "dpdesign/eigendesign.h"
#include "dpdesign/types.h"

namespace dpdesign {

// 17 significant digits: lossless decimal round trip for doubles.
std::string FormatDouble(double value);

// Dense CSV, one matrix row per line, no header. Lines starting with '#' are
// skipped on read.
Matrix ReadMatrixCsv(const std::string& path);
void WriteMatrixCsv(const std::string& path, const Matrix& matrix);

// Column vector as one value per line (a single-column CSV).
Vector ReadVectorCsv(const std::string& path);
void WriteVectorCsv(const std::string& path, const Vector& vector);

// Strategy CSV carries a one-line comment header "# p=<rows> n=<cols>
// provenance=<kind>" ahead of the dense rows.
void WriteStrategyCsv(const std::string& path, const Strategy& strategy);
Strategy ReadStrategyCsv(const std::string& path);

// Workload-family parameters from a domain spec file.
struct FamilySpec {
  std::string family;  // all-range | random-range | marginal | cdf
  int count = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<int>> subsets;  // 1-based attribute indices
  bool range_marginal = false;
};

struct DomainSpec {
  std::vector<Attribute> attributes;
  FamilySpec family;

  DomainShape shape() const;
  CellConditions conditions() const { return CellConditions(attributes); }
};

// Flat text format: "attribute <name> = edges e0 e1 ..." or
// "attribute <name> = categories a b ...", "dims = d1 d2 ..." as an anonymous
// shorthand, plus "family = ..." and its parameters. Parse errors carry line
// numbers.
DomainSpec ParseDomainSpec(const std::string& text);
DomainSpec ReadDomainSpec(const std::string& path);

Workload BuildWorkloadFromSpec(const DomainSpec& spec);

// Simple CSV records with a header row naming the attributes.
std::vector<std::vector<std::string>> ReadRecordsCsv(
    const std::string& path, const std::vector<Attribute>& attributes);

// Flat key=value text record.
std::string SerializeErrorReport(const ErrorReport& report);
std::string ErrorReportCsvHeader();
std::string ErrorReportCsvRow(const ErrorReport& report);

// Run manifest: ordered key=value lines, written alongside every output.
class Manifest {
 public:
  void Set(const std::string& key, const std::string& value);
  void Set(const std::string& key, double value);
  void Set(const std::string& key, std::int64_t value);
  std::string Serialize() const;
  void WriteTo(const std::string& path) const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

// Write-temp-then-rename so partially written outputs are never observed.
void AtomicWriteFile(const std::string& path, const std::string& contents);

}  // namespace dpdesign

#endif  // DPDESIGN_IO_H_
