// Copyright 2026 The cfwgan Authors
// SPDX-License-Identifier: Apache-2.0

#include "cfwgan/sample_matrix.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cfwgan/errors.hpp"

namespace cfwgan {

std::vector<double> SampleMatrix::column(std::size_t j) const {
  if (j >= cols()) throw_invalid("column index out of range");
  std::vector<double> out(rows());
  for (std::size_t i = 0; i < rows(); ++i) out[i] = data(i, j);
  return out;
}

namespace {

double parse_number(std::string_view tok, const std::string& what) {
  while (!tok.empty() && (tok.front() == ' ' || tok.front() == '\t')) tok.remove_prefix(1);
  while (!tok.empty() && (tok.back() == ' ' || tok.back() == '\t' || tok.back() == '\r')) {
    tok.remove_suffix(1);
  }
  if (tok.size() >= 2 && tok.front() == '"' && tok.back() == '"') {
    tok = tok.substr(1, tok.size() - 2);
  }
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size() || tok.empty()) {
    throw_invalid(what + ": bad number '" + std::string(tok) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == sep && !quoted) {
      out.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  out.push_back(line.substr(start));
  return out;
}

}  // namespace

SyntheticSpec SyntheticSpec::parse(std::string_view text) {
  SyntheticSpec spec;
  if (text.rfind("iid:", 0) == 0) {
    spec.iid = ContinuousDistribution1D::parse(text.substr(4));
    return spec;
  }
  if (text.rfind("ar:", 0) == 0) {
    const auto parts = split(text.substr(3), ':');
    if (parts.empty() || parts.size() > 3) throw_invalid("synthetic spec: expected ar:<phi>:<noise>");
    spec.ar.coefficient = parse_number(parts[0], "synthetic spec");
    if (!(std::abs(spec.ar.coefficient) < 1.0)) {
      throw_invalid("synthetic spec: AR coefficient must satisfy |phi| < 1");
    }
    const std::string noise = parts.size() > 1 ? std::string(parts[1]) : "student";
    if (noise == "gaussian" || noise == "normal") {
      if (parts.size() > 2) throw_invalid("synthetic spec: gaussian noise takes no parameter");
      spec.ar.noise = ArNoise::Gaussian;
    } else if (noise == "student" || noise == "t") {
      spec.ar.noise = ArNoise::StudentT;
      if (parts.size() > 2) spec.ar.dof = parse_number(parts[2], "synthetic spec");
      if (!(spec.ar.dof > 2.0)) throw_invalid("synthetic spec: Student-t dof must exceed 2");
    } else {
      throw_invalid("synthetic spec: unknown AR noise '" + noise + "'");
    }
    return spec;
  }
  throw_invalid("synthetic spec: expected 'iid:<law>' or 'ar:<phi>:<noise>'");
}

std::string SyntheticSpec::describe() const {
  if (iid) return "iid:" + iid->describe();
  std::string s = "ar:" + format_double(ar.coefficient);
  if (ar.noise == ArNoise::Gaussian) return s + ":gaussian";
  return s + ":student:" + format_double(ar.dof);
}

SampleMatrix sample_matrix(const SyntheticSpec& spec, std::size_t d, std::size_t m,
                           std::uint64_t seed) {
  if (d == 0 || m == 0) throw_precondition("sample_matrix: need d >= 1 and M >= 1");
  SampleMatrix out{Matrix(m, d), spec.describe() + ";d=" + std::to_string(d) +
                                     ";M=" + std::to_string(m) + ";seed=" + std::to_string(seed)};
  if (spec.iid) {
    for (std::size_t i = 0; i < m; ++i) {
      RngStream rng(seed, kStreamData + i);
      double* row = out.data.row(i);
      for (std::size_t j = 0; j < d; ++j) row[j] = spec.iid->sample(rng);
    }
    return out;
  }
  const Ar1Spec& ar = spec.ar;
  if (!(std::abs(ar.coefficient) < 1.0)) throw_precondition("sample_matrix: AR needs |phi| < 1");
  if (ar.noise == ArNoise::StudentT && !(ar.dof > 2.0)) {
    throw_precondition("sample_matrix: Student-t noise needs dof > 2");
  }
  const double t_scale = ar.noise == ArNoise::StudentT ? std::sqrt((ar.dof - 2.0) / ar.dof) : 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    RngStream rng(seed, kStreamData + i);
    auto noise = [&] { return ar.noise == ArNoise::Gaussian ? rng.normal() : t_scale * rng.student_t(ar.dof); };
    double x = noise() / std::sqrt(1.0 - ar.coefficient * ar.coefficient);
    for (std::size_t b = 0; b < ar.burn_in; ++b) x = ar.coefficient * x + noise();
    double* row = out.data.row(i);
    for (std::size_t j = 0; j < d; ++j) {
      x = ar.coefficient * x + noise();
      row[j] = x;
    }
  }
  return out;
}

void center_columns(SampleMatrix& samples) {
  const std::size_t m = samples.rows(), d = samples.cols();
  if (m == 0) return;
  std::vector<double> mean(d, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double* row = samples.data.row(i);
    for (std::size_t j = 0; j < d; ++j) mean[j] += row[j];
  }
  for (double& v : mean) v /= static_cast<double>(m);
  for (std::size_t i = 0; i < m; ++i) {
    double* row = samples.data.row(i);
    for (std::size_t j = 0; j < d; ++j) row[j] -= mean[j];
  }
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv(const SampleMatrix& samples, const std::string& path, bool header) {
  std::ofstream out(path);
  if (!out) throw IoError("write_csv: cannot open '" + path + "'");
  if (header) {
    for (std::size_t j = 0; j < samples.cols(); ++j) out << (j ? "," : "") << "x" << j + 1;
    out << "\r\n";
  }
  for (std::size_t i = 0; i < samples.rows(); ++i) {
    const double* row = samples.data.row(i);
    for (std::size_t j = 0; j < samples.cols(); ++j) out << (j ? "," : "") << format_double(row[j]);
    out << "\r\n";
  }
  if (!out) throw IoError("write_csv: write failed for '" + path + "'");
}

SampleMatrix read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("read_csv: cannot open '" + path + "'");
  std::vector<double> values;
  std::size_t cols = 0, rows = 0;
  bool first = true;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split(line, ',');
    std::vector<double> row;
    row.reserve(fields.size());
    try {
      for (auto f : fields) row.push_back(parse_number(f, "read_csv"));
    } catch (const InvalidArgument&) {
      if (first) {
        first = false;
        cols = fields.size();
        continue;
      }
      throw IoError("read_csv: non-numeric field on line " + std::to_string(lineno) + " of '" +
                    path + "'");
    }
    if (cols == 0) cols = row.size();
    if (row.size() != cols) {
      throw IoError("read_csv: line " + std::to_string(lineno) + " has " +
                    std::to_string(row.size()) + " fields, expected " + std::to_string(cols));
    }
    for (double v : row) {
      if (!std::isfinite(v)) throw IoError("read_csv: non-finite value on line " + std::to_string(lineno));
    }
    first = false;
    values.insert(values.end(), row.begin(), row.end());
    ++rows;
  }
  if (rows == 0) throw IoError("read_csv: no data rows in '" + path + "'");
  SampleMatrix s{Matrix(rows, cols), "file:" + path};
  std::copy(values.begin(), values.end(), s.data.data());
  return s;
}

}  // namespace cfwgan
