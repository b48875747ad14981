// Copyright 2026 The dtrprof Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DTRPROF_TERM_MATRIX_HPP_
#define DTRPROF_TERM_MATRIX_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dtrprof {

enum class RepKind { kDor, kTcor, kSsr, kEmbedding };

std::string_view to_string(RepKind kind);
RepKind parse_rep_kind(std::string_view name);

// One term vector per vocabulary term, stored row-compressed. Rows follow
// the vocabulary order; columns are the distributional features (training
// documents for DOR, terms for TCOR, subprofiles for SSR, latent dimensions
// for embeddings). Exact zeros are not stored.
class TermMatrix {
 public:
  struct Entry {
    std::uint32_t column;
    double value;
    friend bool operator==(const Entry&, const Entry&) = default;
  };
  using SparseRow = std::vector<Entry>;

  TermMatrix() = default;

  // rows[i] must have strictly increasing columns below dims.
  TermMatrix(RepKind kind, std::size_t dims, std::vector<std::string> terms,
             std::vector<std::string> feature_names, std::vector<SparseRow> rows);

  // values is row-major with terms.size() * dims entries.
  static TermMatrix from_dense(RepKind kind, std::size_t dims, std::vector<std::string> terms,
                               std::vector<std::string> feature_names,
                               std::span<const double> values);

  RepKind kind() const { return kind_; }
  std::size_t dims() const { return dims_; }
  std::size_t rows() const { return terms_.size(); }
  const std::vector<std::string>& terms() const { return terms_; }
  const std::vector<std::string>& feature_names() const { return feature_names_; }

  std::span<const Entry> row(std::size_t i) const;
  double at(std::size_t i, std::size_t j) const;
  std::vector<double> dense_row(std::size_t i) const;
  std::size_t nonzeros() const { return entries_.size(); }

  // out += scale * row(i); out must have dims() elements.
  void add_row(std::size_t i, double scale, std::span<double> out) const;

  friend bool operator==(const TermMatrix&, const TermMatrix&) = default;

 private:
  RepKind kind_ = RepKind::kDor;
  std::size_t dims_ = 0;
  std::vector<std::string> terms_;
  std::vector<std::string> feature_names_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Entry> entries_;
};

// Textual container: header (kind, dims, row count), feature names, terms,
// then one sparse row per line with values at 17 significant digits.
// Round trip is exact.
void write_term_matrix(const TermMatrix& matrix, std::ostream& out);
TermMatrix read_term_matrix(std::istream& in, const std::string& source = "<stream>");

}  // namespace dtrprof

#endif  // DTRPROF_TERM_MATRIX_HPP_
