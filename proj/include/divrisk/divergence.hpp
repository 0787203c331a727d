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

#ifndef DIVRISK_DIVERGENCE_HPP
#define DIVRISK_DIVERGENCE_HPP

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace divrisk {

/// Declared constants of the growth bound phi(2x) <= factor * phi(x) for
/// x >= threshold.
struct Delta2Constants {
  double threshold;
  double factor;
};

/// A divergence function phi on [0, inf) together with its convex conjugate
/// psi and right subderivatives. Immutable once built.
///
/// phi(x) is +inf for x < 0. phi_prime(0) is the right subderivative at the
/// origin and may be -inf. psi_prime selects the right subderivative, which
/// equals the largest maximiser of x*y - phi(x).
class DivergenceSpec {
 public:
  using Fn = std::function<double(double)>;

  /// Spec whose conjugate is obtained numerically from phi and phi_prime.
  /// Throws invalid_parameter when phi(1) != 0 or phi(0) is not finite.
  static DivergenceSpec from_phi(std::string name, Fn phi, Fn phi_prime,
                                 std::optional<Delta2Constants> delta2);

  /// Spec with an analytic conjugate pair.
  static DivergenceSpec with_conjugate(std::string name, Fn phi, Fn phi_prime,
                                       Fn psi, Fn psi_prime,
                                       std::optional<Delta2Constants> delta2);

  const std::string& name() const noexcept { return name_; }
  double phi(double x) const { return phi_(x); }
  double phi_prime(double x) const { return phi_prime_(x); }
  double psi(double y) const { return psi_(y); }
  double psi_prime(double y) const { return psi_prime_(y); }
  double phi_at_zero() const noexcept { return phi_at_zero_; }
  /// phi'(1), the slope at which the conjugate maximiser is the unit density.
  double unit_slope() const noexcept { return unit_slope_; }
  bool delta2() const noexcept { return delta2_.has_value(); }
  const std::optional<Delta2Constants>& delta2_constants() const noexcept {
    return delta2_;
  }
  bool has_closed_conjugate() const noexcept { return closed_conjugate_; }

 private:
  DivergenceSpec() = default;

  std::string name_;
  Fn phi_;
  Fn phi_prime_;
  Fn psi_;
  Fn psi_prime_;
  double phi_at_zero_ = 0.0;
  double unit_slope_ = 0.0;
  std::optional<Delta2Constants> delta2_;
  bool closed_conjugate_ = false;
};

DivergenceSpec make_kl();
DivergenceSpec make_chi2();
/// Throws invalid_parameter unless p > 1.
DivergenceSpec make_power(double p);

/// Parses "kl" | "chi2" | "power:<p>".
DivergenceSpec make_builtin_divergence(std::string_view config);

/// Value and maximiser of sup_{x >= 0} x*y - f(x).
struct ConjugatePoint {
  double value;
  double argmax;
};

/// Conjugate of an arbitrary divergence-like f by bisection on the monotone
/// map x -> y - f'(x). The maximiser returned is the right end of the
/// maximising set.
ConjugatePoint conjugate_point(const DivergenceSpec::Fn& f,
                               const DivergenceSpec::Fn& f_prime, double y);

double numeric_conjugate(const DivergenceSpec& spec, double y);

/// The Young function built from phi: zero on [0, 1], max{0, phi} beyond,
/// its conjugate Psi, and the uniform gap d = sup |phi - Phi|.
class YoungPair {
 public:
  double Phi(double x) const { return young_.phi(x); }
  double Psi(double y) const { return young_.psi(y); }
  double gap() const noexcept { return gap_; }
  /// Phi viewed as a divergence function in its own right.
  const DivergenceSpec& as_divergence() const noexcept { return young_; }

 private:
  friend YoungPair young_pair(const DivergenceSpec& spec);
  YoungPair(DivergenceSpec young, double gap)
      : young_(std::move(young)), gap_(gap) {}

  DivergenceSpec young_;
  double gap_;
};

YoungPair young_pair(const DivergenceSpec& spec);

/// sum_i p_i phi(q_i / p_i). Throws dimension on length mismatch, support
/// when some p_i is not strictly positive, invalid_value when either vector
/// does not sum to one within 1e-12.
double discrete_divergence(std::span<const double> q, std::span<const double> p,
                           const DivergenceSpec& spec);

}  // namespace divrisk

#endif  // DIVRISK_DIVERGENCE_HPP
