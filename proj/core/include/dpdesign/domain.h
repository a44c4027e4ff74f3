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
#ifndef DPDESIGN_DOMAIN_H_
#define DPDESIGN_DOMAIN_H_

#include <cstdint>
#include <string>
#include <vector>

#include "dpdesign/types.h"

namespace dpdesign {

// Bucketed multi-attribute domain. Cells are linearized row-major over the
// attribute order: the last attribute varies fastest.
class DomainShape {
 public:
  explicit DomainShape(std::vector<int> dims);

  const std::vector<int>& dims() const { return dims_; }
  int num_attributes() const { return static_cast<int>(dims_.size()); }
  int cell_count() const { return n_; }

  int CellIndex(const std::vector<int>& multi_index) const;
  std::vector<int> MultiIndex(int cell) const;

 private:
  std::vector<int> dims_;
  int n_;
};

// One bucket of an attribute: either a category set or a half-open numeric
// range [lo, hi).
struct Bucket {
  enum class Kind { kCategories, kRange };
  Kind kind = Kind::kCategories;
  std::vector<std::string> categories;
  double lo = 0.0;
  double hi = 0.0;

  static Bucket Categories(std::vector<std::string> values);
  static Bucket Range(double lo, double hi);
  // Matches a raw field value; numeric buckets parse the field as a double.
  bool Matches(const std::string& value) const;
  std::string Describe() const;
};

struct Attribute {
  std::string name;
  std::vector<Bucket> buckets;
};

// Per-attribute disjoint buckets. The cross product of buckets defines the
// cell conditions of the data vector.
class CellConditions {
 public:
  explicit CellConditions(std::vector<Attribute> attributes);

  const std::vector<Attribute>& attributes() const { return attributes_; }
  DomainShape shape() const;

  // Returns the unique cell index for the record (one field per attribute).
  // Throws ValidationError when no bucket matches or the buckets are not
  // disjoint for this record.
  int MatchCell(const std::vector<std::string>& record) const;

 private:
  std::vector<Attribute> attributes_;
};

enum class WorkloadFamily {
  kRange,
  kMarginal,
  kRangeMarginal,
  kCdf,
  kPredicate,
  kAdhoc,
};

std::string ToString(WorkloadFamily family);

// A set of linear counting queries over the cells of a domain, one query per
// row.
struct Workload {
  Matrix matrix;
  DomainShape shape;
  WorkloadFamily family = WorkloadFamily::kAdhoc;
  std::vector<std::string> row_descriptions;

  int num_queries() const { return static_cast<int>(matrix.rows()); }
  int num_cells() const { return static_cast<int>(matrix.cols()); }
};

// Counts records per cell. Throws ValidationError naming the offending record
// when a record matches zero cells or the conditions are not disjoint.
Vector BuildDataVector(const std::vector<std::vector<std::string>>& records,
                       const CellConditions& conditions);

// One 0/1 row per axis-aligned hyper-rectangle of cells;
// prod_i d_i(d_i+1)/2 rows.
Workload AllRangeWorkload(const DomainShape& shape);

// `count` random hyper-rectangle rows. Each attribute is kept with
// probability 1/2 (redrawing an empty selection); interval endpoints are
// uniform over valid (lo <= hi) pairs; unselected attributes span their full
// range. Deterministic given the seed.
Workload RandomRangeWorkload(const DomainShape& shape, int count,
                             std::uint64_t seed);

// Marginals for each attribute subset. Point marginals (range_flag=false)
// emit one row per value assignment; range marginals emit one row per
// per-attribute interval assignment. The empty subset yields the total row.
Workload MarginalWorkload(const DomainShape& shape,
                          const std::vector<std::vector<int>>& subsets,
                          bool range_flag);

// Prefix sums over a one-dimensional domain (lower-triangular ones).
Workload CdfWorkload(const DomainShape& shape);

// Reorders columns: column j of the output is column perm[j] of the input.
Workload PermuteCells(const Workload& workload, const std::vector<int>& perm);

// Scales every row to unit L2 norm. Throws ValidationError on zero rows.
Workload NormalizeRows(const Workload& workload);

}  // namespace dpdesign

#endif  // DPDESIGN_DOMAIN_H_
