/*******************************************************************************
* Copyright 2026 The divrisk Authors
*
* Licensed under the Apache License, Version 2.0 (the "License");
* you may not use this file except in compliance with the License.
* You may obtain a copy of the License at
*
*     http://www.apache.org/licenses/LICENSE-2.0
*
* Unless required by applicable law or agreed to in writing, software
* distributed under the License is distributed on an "AS IS" BASIS,
* WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
* See the License for the specific language governing permissions and
* limitations under the License.
*******************************************************************************/

#include "divrisk/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "csv.hpp"
#include "divrisk/error.hpp"

namespace divrisk {

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> atoms,
                                             std::vector<double> probs)
    : atoms_(std::move(atoms)), probs_(std::move(probs)), order_(atoms_.size()) {
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  std::stable_sort(order_.begin(), order_.end(), [this](std::size_t a, std::size_t b) {
    return atoms_[a] < atoms_[b];
  });
}

EmpiricalDistribution EmpiricalDistribution::from_samples(
    std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::empty_data, "no samples");
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::invalid_value, "non-finite sample");
  }
  const double w = 1.0 / static_cast<double>(values.size());
  return EmpiricalDistribution({values.begin(), values.end()},
                               std::vector<double>(values.size(), w));
}

EmpiricalDistribution EmpiricalDistribution::from_weighted(
    std::span<const double> values, std::span<const double> weights) {
  if (values.empty()) throw Error(ErrorCode::empty_data, "no samples");
  if (values.size() != weights.size()) {
    throw Error(ErrorCode::dimension, "values and weights differ in length");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw Error(ErrorCode::invalid_value, "non-finite sample");
    }
    if (!std::isfinite(weights[i]) || !(weights[i] > 0.0)) {
      throw Error(ErrorCode::invalid_value, "weights must be finite and positive");
    }
    total += weights[i];
  }
  std::vector<double> probs(weights.begin(), weights.end());
  for (double& p : probs) p /= total;
  return EmpiricalDistribution({values.begin(), values.end()}, std::move(probs));
}

double EmpiricalDistribution::mean() const {
  double m = 0.0;
  for (std::size_t i = 0; i < size(); ++i) m += probs_[i] * atoms_[i];
  return m;
}

double EmpiricalDistribution::variance() const {
  const double m = mean();
  double v = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    v += probs_[i] * (atoms_[i] - m) * (atoms_[i] - m);
  }
  return v;
}

double EmpiricalDistribution::prob_at_esssup() const {
  const double top = esssup();
  double mass = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    if (atoms_[i] == top) mass += probs_[i];
  }
  return mass;
}

double EmpiricalDistribution::expect(const std::function<double(double)>& f) const {
  double total = 0.0;
  for (std::size_t i = 0; i < size(); ++i) total += probs_[i] * f(atoms_[i]);
  return total;
}

double EmpiricalDistribution::cdf(double x) const {
  double mass = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    if (atoms_[i] <= x) mass += probs_[i];
  }
  return mass;
}

double EmpiricalDistribution::quantile(double u) const {
  if (!(u >= 0.0 && u < 1.0)) {
    throw Error(ErrorCode::domain, "quantile level must lie in [0, 1)");
  }
  double cum = 0.0;
  for (std::size_t k : order_) {
    cum += probs_[k];
    if (cum > u) return atoms_[k];
  }
  return esssup();
}

EmpiricalDistribution EmpiricalDistribution::transformed(
    const std::function<double(double)>& f) const {
  std::vector<double> mapped(atoms_.size());
  std::transform(atoms_.begin(), atoms_.end(), mapped.begin(), f);
  for (double v : mapped) {
    if (!std::isfinite(v)) throw Error(ErrorCode::invalid_value, "non-finite atom");
  }
  return EmpiricalDistribution(std::move(mapped), probs_);
}

EmpiricalDistribution EmpiricalDistribution::abs() const {
  return transformed([](double x) { return std::abs(x); });
}

double avar(const EmpiricalDistribution& dist, double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::domain, "AVaR level must lie in [0, 1)");
  }
  const auto order = dist.sorted_index();
  const auto atoms = dist.atoms();
  const auto probs = dist.probs();
  double lower = 0.0;
  double total = 0.0;
  for (std::size_t r = 0; r < order.size(); ++r) {
    const std::size_t k = order[r];
    const double upper = r + 1 == order.size() ? 1.0 : lower + probs[k];
    const double overlap = std::min(upper, 1.0) - std::max(lower, alpha);
    if (overlap > 0.0) total += atoms[k] * overlap;
    lower = upper;
  }
  return total / (1.0 - alpha);
}

void StepSpectrum::validate() const {
  if (breaks.size() < 2 || breaks.size() != values.size() + 1) {
    throw Error(ErrorCode::invalid_spectrum,
                "spectrum needs m+1 breakpoints for m values");
  }
  if (breaks.front() != 0.0 || breaks.back() != 1.0) {
    throw Error(ErrorCode::invalid_spectrum, "spectrum must cover [0, 1]");
  }
  double integral = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (!(breaks[j + 1] > breaks[j])) {
      throw Error(ErrorCode::invalid_spectrum, "breakpoints must increase");
    }
    if (!(values[j] >= 0.0) || !std::isfinite(values[j])) {
      throw Error(ErrorCode::invalid_spectrum, "spectrum must be non-negative");
    }
    if (j > 0 && values[j] < values[j - 1]) {
      throw Error(ErrorCode::invalid_spectrum, "spectrum must be non-decreasing");
    }
    integral += values[j] * (breaks[j + 1] - breaks[j]);
  }
  if (std::abs(integral - 1.0) > 1e-10) {
    throw Error(ErrorCode::invalid_spectrum, "spectrum must integrate to 1");
  }
}

StepSpectrum StepSpectrum::constant() { return {{0.0, 1.0}, {1.0}}; }

StepSpectrum StepSpectrum::avar(double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::domain, "AVaR level must lie in [0, 1)");
  }
  if (alpha == 0.0) return constant();
  return {{0.0, alpha, 1.0}, {0.0, 1.0 / (1.0 - alpha)}};
}

double spectral_risk(const EmpiricalDistribution& dist, const StepSpectrum& sigma) {
  sigma.validate();
  const auto order = dist.sorted_index();
  const auto atoms = dist.atoms();
  const auto probs = dist.probs();
  const std::size_t n = order.size();
  const std::size_t m = sigma.values.size();

  std::size_t i = 0;
  std::size_t j = 0;
  double at = 0.0;
  double atom_end = n == 1 ? 1.0 : probs[order[0]];
  double total = 0.0;
  while (i < n && j < m) {
    const double end = std::min(atom_end, sigma.breaks[j + 1]);
    if (end > at) total += atoms[order[i]] * sigma.values[j] * (end - at);
    at = std::max(at, end);
    if (end >= atom_end) {
      ++i;
      if (i < n) atom_end = i + 1 == n ? 1.0 : atom_end + probs[order[i]];
    }
    if (end >= sigma.breaks[j + 1]) ++j;
  }
  return total;
}

EmpiricalDistribution parse_samples_csv(const std::string& text) {
  const auto rows = detail::split_csv(text);
  if (rows.empty()) throw Error(ErrorCode::empty_data, "no samples in input");
  const std::size_t width = rows.front().fields.size();
  std::vector<double> values;
  std::vector<double> weights;
  for (const auto& row : rows) {
    if (row.fields.size() != width || width > 2) {
      std::ostringstream msg;
      msg << "line " << row.line << ", column 1: expected "
          << (width > 2 ? "1 or 2" : std::to_string(width)) << " field(s), got "
          << row.fields.size();
      throw ParseError(msg.str(), row.line, 1);
    }
    values.push_back(detail::parse_number(row.fields[0], row.line));
    if (width == 2) {
      const double w = detail::parse_number(row.fields[1], row.line);
      if (!(w > 0.0)) {
        std::ostringstream msg;
        msg << "line " << row.line << ", column " << row.fields[1].column
            << ": weight must be positive";
        throw ParseError(msg.str(), row.line, row.fields[1].column);
      }
      weights.push_back(w);
    }
  }
  if (width == 2) return EmpiricalDistribution::from_weighted(values, weights);
  return EmpiricalDistribution::from_samples(values);
}

EmpiricalDistribution load_samples_csv(const std::string& path) {
  return parse_samples_csv(detail::read_file(path));
}

}  // namespace divrisk
