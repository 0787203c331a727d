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

#ifndef DIVRISK_EMPIRICAL_HPP
#define DIVRISK_EMPIRICAL_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace divrisk {

/// Finitely supported random variable. Duplicate atoms are kept as separate
/// entries; every formula weights by the atom probability.
class EmpiricalDistribution {
 public:
  /// Uniform weights 1/n. Throws empty_data / invalid_value.
  static EmpiricalDistribution from_samples(std::span<const double> values);

  /// Weights must be finite and strictly positive; they are renormalised to
  /// sum to one.
  static EmpiricalDistribution from_weighted(std::span<const double> values,
                                             std::span<const double> weights);

  std::size_t size() const noexcept { return atoms_.size(); }
  std::span<const double> atoms() const noexcept { return atoms_; }
  std::span<const double> probs() const noexcept { return probs_; }
  /// Permutation ordering the atoms non-decreasingly.
  std::span<const std::size_t> sorted_index() const noexcept { return order_; }

  double mean() const;
  double variance() const;
  double esssup() const noexcept { return atoms_[order_.back()]; }
  double essinf() const noexcept { return atoms_[order_.front()]; }
  /// P(X = esssup X).
  double prob_at_esssup() const;
  double expect(const std::function<double(double)>& f) const;

  /// Step CDF P(X <= x).
  double cdf(double x) const;
  /// inf{x : F(x) > u} for u in [0, 1). Throws domain otherwise.
  double quantile(double u) const;

  /// Same probabilities, atoms transformed pointwise.
  EmpiricalDistribution transformed(const std::function<double(double)>& f) const;
  EmpiricalDistribution abs() const;

 private:
  EmpiricalDistribution(std::vector<double> atoms, std::vector<double> probs);

  std::vector<double> atoms_;
  std::vector<double> probs_;
  std::vector<std::size_t> order_;
};

/// Average value-at-risk (1/(1-alpha)) * int_alpha^1 F^{-1}(u) du, summed
/// exactly over the quantile steps.
double avar(const EmpiricalDistribution& dist, double alpha);

/// Non-decreasing, non-negative step function on [0, 1] with unit integral.
/// sigma(u) = values[j] on [breaks[j], breaks[j+1]).
struct StepSpectrum {
  std::vector<double> breaks;
  std::vector<double> values;

  /// Throws invalid_spectrum unless breaks run 0 = b_0 < ... < b_m = 1,
  /// values are non-negative and non-decreasing, and the integral is 1
  /// within 1e-10.
  void validate() const;

  static StepSpectrum constant();
  /// (1/(1-alpha)) on [alpha, 1].
  static StepSpectrum avar(double alpha);
};

/// int_0^1 sigma(u) F^{-1}(u) du by exact piecewise-constant integration.
double spectral_risk(const EmpiricalDistribution& dist, const StepSpectrum& sigma);

/// Reads one column of samples, or two columns (sample, weight). Lines
/// starting with '#' and blank lines are skipped.
EmpiricalDistribution load_samples_csv(const std::string& path);
EmpiricalDistribution parse_samples_csv(const std::string& text);

}  // namespace divrisk

#endif  // DIVRISK_EMPIRICAL_HPP
