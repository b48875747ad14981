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

#include "dtrprof/term_matrix.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "dtrprof/error.hpp"

namespace dtrprof {

std::string_view to_string(RepKind kind) {
  switch (kind) {
    case RepKind::kDor: return "DOR";
    case RepKind::kTcor: return "TCOR";
    case RepKind::kSsr: return "SSR";
    case RepKind::kEmbedding: return "EMBEDDING";
  }
  return "?";
}

RepKind parse_rep_kind(std::string_view name) {
  if (name == "DOR") return RepKind::kDor;
  if (name == "TCOR") return RepKind::kTcor;
  if (name == "SSR") return RepKind::kSsr;
  if (name == "EMBEDDING") return RepKind::kEmbedding;
  throw InvalidArgument("unknown term matrix kind '" + std::string(name) + "'");
}

TermMatrix::TermMatrix(RepKind kind, std::size_t dims, std::vector<std::string> terms,
                       std::vector<std::string> feature_names, std::vector<SparseRow> rows)
    : kind_(kind), dims_(dims), terms_(std::move(terms)), feature_names_(std::move(feature_names)) {
  if (rows.size() != terms_.size()) throw InvalidArgument("term matrix needs one row per term");
  if (!feature_names_.empty() && feature_names_.size() != dims_) {
    throw InvalidArgument("feature name count does not match matrix dims");
  }
  std::size_t total = 0;
  for (const auto& r : rows) total += r.size();
  entries_.reserve(total);
  offsets_.reserve(rows.size() + 1);
  for (const auto& r : rows) {
    std::int64_t last = -1;
    for (const auto& e : r) {
      if (e.column >= dims_ || static_cast<std::int64_t>(e.column) <= last) {
        throw InvalidArgument("term matrix row columns must be increasing and below dims");
      }
      last = e.column;
      if (e.value != 0.0) entries_.push_back(e);
    }
    offsets_.push_back(entries_.size());
  }
}

TermMatrix TermMatrix::from_dense(RepKind kind, std::size_t dims, std::vector<std::string> terms,
                                  std::vector<std::string> feature_names,
                                  std::span<const double> values) {
  if (values.size() != terms.size() * dims) throw InvalidArgument("dense matrix has the wrong size");
  std::vector<SparseRow> rows(terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = 0; j < dims; ++j) {
      double v = values[i * dims + j];
      if (v != 0.0) rows[i].push_back({static_cast<std::uint32_t>(j), v});
    }
  }
  return TermMatrix(kind, dims, std::move(terms), std::move(feature_names), std::move(rows));
}

std::span<const TermMatrix::Entry> TermMatrix::row(std::size_t i) const {
  if (i >= rows()) throw InvalidArgument("term matrix row out of range");
  return std::span<const Entry>(entries_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]);
}

double TermMatrix::at(std::size_t i, std::size_t j) const {
  for (const auto& e : row(i)) {
    if (e.column == j) return e.value;
    if (e.column > j) break;
  }
  return 0.0;
}

std::vector<double> TermMatrix::dense_row(std::size_t i) const {
  std::vector<double> out(dims_, 0.0);
  for (const auto& e : row(i)) out[e.column] = e.value;
  return out;
}

void TermMatrix::add_row(std::size_t i, double scale, std::span<double> out) const {
  if (out.size() != dims_) throw InvalidArgument("output span does not match matrix dims");
  for (const auto& e : row(i)) out[e.column] += scale * e.value;
}

namespace {

constexpr std::string_view kMagic = "dtrprof-term-matrix 1";

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void check_line_safe(const std::string& s, const char* what) {
  if (s.find('\n') != std::string::npos || s.find('\r') != std::string::npos) {
    throw InvalidArgument(std::string(what) + " contains a line break: cannot serialize");
  }
}

double parse_double(std::string_view s, const std::string& source, std::size_t line) {
  // strtod accepts the %.17g output including inf/nan spellings.
  std::string tmp(s);
  char* end = nullptr;
  double v = std::strtod(tmp.c_str(), &end);
  if (tmp.empty() || end != tmp.c_str() + tmp.size()) {
    throw ParseError(source, line, "invalid number '" + tmp + "'");
  }
  return v;
}

std::size_t parse_size(std::string_view s, const std::string& source, std::size_t line) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(source, line, "invalid count '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

void write_term_matrix(const TermMatrix& m, std::ostream& out) {
  out << kMagic << '\n';
  out << "kind " << to_string(m.kind()) << '\n';
  out << "dims " << m.dims() << '\n';
  out << "terms " << m.rows() << '\n';
  out << "features " << m.feature_names().size() << '\n';
  for (const auto& f : m.feature_names()) {
    check_line_safe(f, "feature name");
    out << f << '\n';
  }
  for (const auto& t : m.terms()) {
    check_line_safe(t, "term");
    out << t << '\n';
  }
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = m.row(i);
    out << r.size();
    for (const auto& e : r) out << ' ' << e.column << ':' << format_double(e.value);
    out << '\n';
  }
}

TermMatrix read_term_matrix(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> std::string& {
    if (!std::getline(in, line)) throw ParseError(source, line_no + 1, "unexpected end of input");
    ++line_no;
    return line;
  };
  auto header = [&](std::string_view key) -> std::string {
    const std::string& l = next_line();
    if (l.size() <= key.size() + 1 || l.compare(0, key.size(), key) != 0 || l[key.size()] != ' ') {
      throw ParseError(source, line_no, "expected '" + std::string(key) + " <value>'");
    }
    return l.substr(key.size() + 1);
  };

  if (next_line() != kMagic) throw ParseError(source, line_no, "not a term matrix file");
  RepKind kind;
  try {
    kind = parse_rep_kind(header("kind"));
  } catch (const InvalidArgument& e) {
    throw ParseError(source, line_no, e.what());
  }
  auto size_header = [&](std::string_view key) {
    const std::string value = header(key);
    return parse_size(value, source, line_no);
  };
  const std::size_t dims = size_header("dims");
  const std::size_t n_terms = size_header("terms");
  const std::size_t n_features = size_header("features");

  std::vector<std::string> features;
  features.reserve(n_features);
  for (std::size_t i = 0; i < n_features; ++i) features.push_back(next_line());
  std::vector<std::string> terms;
  terms.reserve(n_terms);
  for (std::size_t i = 0; i < n_terms; ++i) terms.push_back(next_line());

  std::vector<TermMatrix::SparseRow> rows(n_terms);
  for (std::size_t i = 0; i < n_terms; ++i) {
    std::istringstream fields(next_line());
    std::string field;
    if (!(fields >> field)) throw ParseError(source, line_no, "missing entry count");
    const std::size_t nnz = parse_size(field, source, line_no);
    rows[i].reserve(nnz);
    while (fields >> field) {
      auto colon = field.find(':');
      if (colon == std::string::npos) throw ParseError(source, line_no, "expected column:value");
      auto col = parse_size(std::string_view(field).substr(0, colon), source, line_no);
      if (col >= dims) throw ParseError(source, line_no, "column out of range");
      rows[i].push_back({static_cast<std::uint32_t>(col),
                         parse_double(std::string_view(field).substr(colon + 1), source, line_no)});
    }
    if (rows[i].size() != nnz) throw ParseError(source, line_no, "entry count mismatch");
  }
  try {
    return TermMatrix(kind, dims, std::move(terms), std::move(features), std::move(rows));
  } catch (const InvalidArgument& e) {
    throw ParseError(source, line_no, e.what());
  }
}

}  // namespace dtrprof
