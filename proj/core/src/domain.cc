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
#include "dpdesign/domain.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <set>
#include <sstream>

namespace dpdesign {
namespace {

// Number of nonempty intervals over d cells.
long IntervalCount(int d) { return static_cast<long>(d) * (d + 1) / 2; }

bool ParseDoubleField(const std::string& s, double* out) {
  char* end = nullptr;
  const char* begin = s.c_str();
  double v = std::strtod(begin, &end);
  if (end == begin) return false;
  while (*end == ' ' || *end == '\t') ++end;
  if (*end != '\0') return false;
  *out = v;
  return true;
}

}  // namespace

DomainShape::DomainShape(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw ValidationError("domain must have at least one attribute");
  long n = 1;
  for (int d : dims_) {
    if (d < 1) throw ValidationError("every attribute must have at least one bucket");
    n *= d;
    if (n > (1L << 30)) throw ValidationError("domain too large");
  }
  n_ = static_cast<int>(n);
}

int DomainShape::CellIndex(const std::vector<int>& multi_index) const {
  if (multi_index.size() != dims_.size())
    throw ValidationError("multi-index arity mismatch");
  int cell = 0;
  for (size_t i = 0; i < dims_.size(); ++i) {
    if (multi_index[i] < 0 || multi_index[i] >= dims_[i])
      throw ValidationError("multi-index out of range");
    cell = cell * dims_[i] + multi_index[i];
  }
  return cell;
}

std::vector<int> DomainShape::MultiIndex(int cell) const {
  if (cell < 0 || cell >= n_) throw ValidationError("cell index out of range");
  std::vector<int> idx(dims_.size());
  for (size_t i = dims_.size(); i-- > 0;) {
    idx[i] = cell % dims_[i];
    cell /= dims_[i];
  }
  return idx;
}

Bucket Bucket::Categories(std::vector<std::string> values) {
  Bucket b;
  b.kind = Kind::kCategories;
  b.categories = std::move(values);
  return b;
}

Bucket Bucket::Range(double lo, double hi) {
  if (!(lo < hi)) throw ValidationError("range bucket requires lo < hi");
  Bucket b;
  b.kind = Kind::kRange;
  b.lo = lo;
  b.hi = hi;
  return b;
}

bool Bucket::Matches(const std::string& value) const {
  if (kind == Kind::kCategories) {
    return std::find(categories.begin(), categories.end(), value) !=
           categories.end();
  }
  double v = 0.0;
  if (!ParseDoubleField(value, &v))
    throw ValidationError("non-numeric value '" + value +
                          "' for numeric attribute");
  return v >= lo && v < hi;
}

std::string Bucket::Describe() const {
  std::ostringstream os;
  if (kind == Kind::kCategories) {
    os << "{";
    for (size_t i = 0; i < categories.size(); ++i)
      os << (i ? "," : "") << categories[i];
    os << "}";
  } else {
    os << "[" << lo << "," << hi << ")";
  }
  return os.str();
}

CellConditions::CellConditions(std::vector<Attribute> attributes)
    : attributes_(std::move(attributes)) {
  if (attributes_.empty())
    throw ValidationError("cell conditions need at least one attribute");
  for (const Attribute& attr : attributes_) {
    if (attr.buckets.empty())
      throw ValidationError("attribute '" + attr.name + "' has no buckets");
    std::set<std::string> seen;
    for (const Bucket& b : attr.buckets) {
      if (b.kind == Bucket::Kind::kCategories) {
        for (const std::string& c : b.categories) {
          if (!seen.insert(c).second)
            throw ValidationError("attribute '" + attr.name +
                                  "': category '" + c +
                                  "' appears in two buckets");
        }
      }
    }
    // Numeric buckets: reject overlapping ranges.
    for (size_t i = 0; i < attr.buckets.size(); ++i) {
      const Bucket& a = attr.buckets[i];
      if (a.kind != Bucket::Kind::kRange) continue;
      for (size_t j = i + 1; j < attr.buckets.size(); ++j) {
        const Bucket& b = attr.buckets[j];
        if (b.kind != Bucket::Kind::kRange) continue;
        if (a.lo < b.hi && b.lo < a.hi)
          throw ValidationError("attribute '" + attr.name +
                                "': overlapping range buckets");
      }
    }
  }
}

DomainShape CellConditions::shape() const {
  std::vector<int> dims;
  dims.reserve(attributes_.size());
  for (const Attribute& a : attributes_)
    dims.push_back(static_cast<int>(a.buckets.size()));
  return DomainShape(dims);
}

int CellConditions::MatchCell(const std::vector<std::string>& record) const {
  if (record.size() != attributes_.size())
    throw ValidationError("record arity does not match attribute count");
  std::vector<int> multi(attributes_.size());
  for (size_t i = 0; i < attributes_.size(); ++i) {
    int match = -1;
    for (size_t b = 0; b < attributes_[i].buckets.size(); ++b) {
      if (attributes_[i].buckets[b].Matches(record[i])) {
        if (match >= 0)
          throw ValidationError("value '" + record[i] +
                                "' matches two buckets of attribute '" +
                                attributes_[i].name + "'");
        match = static_cast<int>(b);
      }
    }
    if (match < 0)
      throw ValidationError("value '" + record[i] +
                            "' matches no bucket of attribute '" +
                            attributes_[i].name + "'");
    multi[i] = match;
  }
  return shape().CellIndex(multi);
}

std::string ToString(WorkloadFamily family) {
  switch (family) {
    case WorkloadFamily::kRange: return "range";
    case WorkloadFamily::kMarginal: return "marginal";
    case WorkloadFamily::kRangeMarginal: return "range-marginal";
    case WorkloadFamily::kCdf: return "cdf";
    case WorkloadFamily::kPredicate: return "predicate";
    case WorkloadFamily::kAdhoc: return "adhoc";
  }
  return "adhoc";
}

Vector BuildDataVector(const std::vector<std::vector<std::string>>& records,
                       const CellConditions& conditions) {
  Vector x = Vector::Zero(conditions.shape().cell_count());
  for (size_t r = 0; r < records.size(); ++r) {
    try {
      x[conditions.MatchCell(records[r])] += 1.0;
    } catch (const ValidationError& e) {
      throw ValidationError("record " + std::to_string(r + 1) + ": " +
                            e.what());
    }
  }
  return x;
}

namespace {

// Adds one row per interval assignment: interval (lo, hi) per listed
// attribute, full span elsewhere.
void AppendRectangleRow(const DomainShape& shape,
                        const std::vector<std::pair<int, int>>& spans,
                        Matrix* matrix, int row) {
  const std::vector<int>& dims = shape.dims();
  std::vector<int> idx(dims.size());
  for (size_t i = 0; i < dims.size(); ++i) idx[i] = spans[i].first;
  while (true) {
    matrix->operator()(row, shape.CellIndex(idx)) = 1.0;
    size_t k = dims.size();
    while (k-- > 0) {
      if (idx[k] < spans[k].second) {
        ++idx[k];
        for (size_t j = k + 1; j < dims.size(); ++j) idx[j] = spans[j].first;
        break;
      }
      if (k == 0) return;
    }
  }
}

std::string SpanDescription(const std::vector<std::pair<int, int>>& spans) {
  std::ostringstream os;
  for (size_t i = 0; i < spans.size(); ++i) {
    if (i) os << " x ";
    os << "[" << spans[i].first << "," << spans[i].second << "]";
  }
  return os.str();
}

}  // namespace

Workload AllRangeWorkload(const DomainShape& shape) {
  const std::vector<int>& dims = shape.dims();
  long m = 1;
  for (int d : dims) m *= IntervalCount(d);
  if (m > 2'000'000) throw ValidationError("all-range workload too large");

  Matrix matrix = Matrix::Zero(m, shape.cell_count());
  std::vector<std::string> descriptions;
  descriptions.reserve(m);

  // Odometer over per-dimension intervals.
  std::vector<std::pair<int, int>> spans(dims.size(), {0, 0});
  int row = 0;
  while (true) {
    AppendRectangleRow(shape, spans, &matrix, row);
    descriptions.push_back(SpanDescription(spans));
    ++row;
    size_t k = dims.size();
    while (k-- > 0) {
      if (spans[k].second + 1 < dims[k]) {
        ++spans[k].second;
        break;
      }
      if (spans[k].first + 1 < dims[k]) {
        ++spans[k].first;
        spans[k].second = spans[k].first;
        break;
      }
      spans[k] = {0, 0};
      if (k == 0) {
        return Workload{std::move(matrix), shape, WorkloadFamily::kRange,
                        std::move(descriptions)};
      }
    }
  }
}

Workload RandomRangeWorkload(const DomainShape& shape, int count,
                             std::uint64_t seed) {
  if (count < 1) throw ValidationError("count must be >= 1");
  const std::vector<int>& dims = shape.dims();
  std::mt19937_64 rng(seed);

  Matrix matrix = Matrix::Zero(count, shape.cell_count());
  std::vector<std::string> descriptions;
  descriptions.reserve(count);
  for (int row = 0; row < count; ++row) {
    std::vector<bool> selected(dims.size());
    do {
      for (size_t i = 0; i < dims.size(); ++i)
        selected[i] = (rng() >> 63) != 0;
    } while (std::none_of(selected.begin(), selected.end(),
                          [](bool b) { return b; }));
    std::vector<std::pair<int, int>> spans(dims.size());
    for (size_t i = 0; i < dims.size(); ++i) {
      if (!selected[i]) {
        spans[i] = {0, dims[i] - 1};
        continue;
      }
      // Uniform over the d(d+1)/2 valid (lo <= hi) pairs.
      std::uniform_int_distribution<long> pick(0, IntervalCount(dims[i]) - 1);
      long k = pick(rng);
      int lo = 0;
      while (k >= dims[i] - lo) {
        k -= dims[i] - lo;
        ++lo;
      }
      spans[i] = {lo, lo + static_cast<int>(k)};
    }
    AppendRectangleRow(shape, spans, &matrix, row);
    descriptions.push_back(SpanDescription(spans));
  }
  return Workload{std::move(matrix), shape, WorkloadFamily::kRange,
                  std::move(descriptions)};
}

Workload MarginalWorkload(const DomainShape& shape,
                          const std::vector<std::vector<int>>& subsets,
                          bool range_flag) {
  const std::vector<int>& dims = shape.dims();
  std::set<std::vector<int>> seen;
  for (std::vector<int> subset : subsets) {
    std::sort(subset.begin(), subset.end());
    for (int a : subset)
      if (a < 1 || a > shape.num_attributes())
        throw ValidationError("marginal subset names attribute " +
                              std::to_string(a) + " outside 1.." +
                              std::to_string(shape.num_attributes()));
    if (std::adjacent_find(subset.begin(), subset.end()) != subset.end())
      throw ValidationError("marginal subset repeats an attribute");
    if (!seen.insert(subset).second)
      throw ValidationError("duplicate marginal subsets");
  }

  std::vector<Eigen::RowVectorXd> rows;
  std::vector<std::string> descriptions;
  for (const std::vector<int>& subset : subsets) {
    // Per attribute: point assignments or intervals for subset members, the
    // full span for the rest.
    std::vector<std::vector<std::pair<int, int>>> choices(dims.size());
    for (size_t i = 0; i < dims.size(); ++i) {
      bool in_subset =
          std::find(subset.begin(), subset.end(), static_cast<int>(i) + 1) !=
          subset.end();
      if (!in_subset) {
        choices[i] = {{0, dims[i] - 1}};
      } else if (range_flag) {
        for (int lo = 0; lo < dims[i]; ++lo)
          for (int hi = lo; hi < dims[i]; ++hi) choices[i].push_back({lo, hi});
      } else {
        for (int v = 0; v < dims[i]; ++v) choices[i].push_back({v, v});
      }
    }
    std::vector<size_t> pick(dims.size(), 0);
    while (true) {
      std::vector<std::pair<int, int>> spans(dims.size());
      for (size_t i = 0; i < dims.size(); ++i) spans[i] = choices[i][pick[i]];
      Matrix one_row = Matrix::Zero(1, shape.cell_count());
      AppendRectangleRow(shape, spans, &one_row, 0);
      rows.push_back(one_row.row(0));
      descriptions.push_back(SpanDescription(spans));
      size_t k = dims.size();
      bool done = true;
      while (k-- > 0) {
        if (pick[k] + 1 < choices[k].size()) {
          ++pick[k];
          std::fill(pick.begin() + k + 1, pick.end(), 0);
          done = false;
          break;
        }
      }
      if (done) break;
    }
  }
  Matrix matrix(rows.size(), shape.cell_count());
  for (size_t r = 0; r < rows.size(); ++r) matrix.row(r) = rows[r];
  return Workload{std::move(matrix), shape,
                  range_flag ? WorkloadFamily::kRangeMarginal
                             : WorkloadFamily::kMarginal,
                  std::move(descriptions)};
}

Workload CdfWorkload(const DomainShape& shape) {
  if (shape.num_attributes() != 1)
    throw ValidationError("cdf workload requires a one-dimensional domain");
  int n = shape.cell_count();
  Matrix matrix = Matrix::Zero(n, n);
  std::vector<std::string> descriptions;
  for (int i = 0; i < n; ++i) {
    matrix.row(i).head(i + 1).setOnes();
    descriptions.push_back("[0," + std::to_string(i) + "]");
  }
  return Workload{std::move(matrix), shape, WorkloadFamily::kCdf,
                  std::move(descriptions)};
}

Workload PermuteCells(const Workload& workload, const std::vector<int>& perm) {
  int n = workload.num_cells();
  if (static_cast<int>(perm.size()) != n)
    throw ValidationError("permutation length mismatch");
  std::vector<bool> hit(n, false);
  for (int p : perm) {
    if (p < 0 || p >= n || hit[p])
      throw ValidationError("permutation is not a bijection on the cells");
    hit[p] = true;
  }
  Matrix matrix(workload.matrix.rows(), n);
  for (int j = 0; j < n; ++j) matrix.col(j) = workload.matrix.col(perm[j]);
  return Workload{std::move(matrix), workload.shape, WorkloadFamily::kAdhoc,
                  workload.row_descriptions};
}

Workload NormalizeRows(const Workload& workload) {
  Matrix matrix = workload.matrix;
  for (int r = 0; r < matrix.rows(); ++r) {
    double norm = matrix.row(r).norm();
    if (norm == 0.0)
      throw ValidationError("row " + std::to_string(r + 1) + " is all zero");
    matrix.row(r) /= norm;
  }
  return Workload{std::move(matrix), workload.shape, workload.family,
                  workload.row_descriptions};
}

}  // namespace dpdesign
