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

#include "divrisk/divergence.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "divrisk/error.hpp"
#include "search.hpp"

namespace divrisk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate_phi(const std::string& name, const DivergenceSpec::Fn& phi) {
  const double at_one = phi(1.0);
  if (at_one != 0.0) {
    throw Error(ErrorCode::invalid_parameter,
                "divergence '" + name + "': phi(1) must be 0");
  }
  const double at_zero = phi(0.0);
  if (!std::isfinite(at_zero)) {
    throw Error(ErrorCode::invalid_parameter,
                "divergence '" + name + "': phi(0) must be finite");
  }
}

// Smallest x on a log grid of [1, 1e6] beyond which phi(2x) <= factor*phi(x)
// holds at every grid point, doubled for margin.
double delta2_threshold(const DivergenceSpec::Fn& phi, double factor) {
  constexpr int kPoints = 2000;
  const double log_hi = std::log(1e6);
  double last_violation = 1.0;
  for (int i = 0; i <= kPoints; ++i) {
    const double x = std::exp(log_hi * i / kPoints);
    if (!(phi(2.0 * x) <= factor * phi(x))) last_violation = x;
  }
  return 2.0 * last_violation;
}

}  // namespace

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::unsupported_divergence: return "unsupported-divergence";
    case ErrorCode::invalid_parameter: return "invalid-parameter";
    case ErrorCode::dimension: return "dimension";
    case ErrorCode::support: return "support";
    case ErrorCode::empty_data: return "empty-data";
    case ErrorCode::invalid_value: return "invalid-value";
    case ErrorCode::domain: return "domain";
    case ErrorCode::invalid_spectrum: return "invalid-spectrum";
    case ErrorCode::stale_multiplier: return "stale-multiplier";
    case ErrorCode::oracle_size: return "oracle-size";
    case ErrorCode::panel: return "panel";
    case ErrorCode::numeric: return "numeric";
    case ErrorCode::parse: return "parse";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

ConjugatePoint conjugate_point(const DivergenceSpec::Fn& f,
                               const DivergenceSpec::Fn& f_prime, double y) {
  if (f_prime(0.0) > y) return {-f(0.0), 0.0};

  double lo = 0.0;
  double hi = 1.0;
  while (!(f_prime(hi) > y)) {
    lo = hi;
    hi *= 4.0;
    if (hi > 1e300) {
      std::ostringstream trace;
      trace << "conjugate bracket: y=" << y << " last x=" << lo;
      throw NumericError("conjugate maximiser bracket exhausted", trace.str());
    }
  }
  const auto b = detail::bisect([&](double x) { return f_prime(x) > y; }, lo, hi);
  const double at_hi = b.hi * y - f(b.hi);
  const double at_lo = b.lo * y - f(b.lo);
  return {std::max(at_hi, at_lo), b.hi};
}

double numeric_conjugate(const DivergenceSpec& spec, double y) {
  return conjugate_point([&](double x) { return spec.phi(x); },
                         [&](double x) { return spec.phi_prime(x); }, y)
      .value;
}

DivergenceSpec DivergenceSpec::from_phi(std::string name, Fn phi, Fn phi_prime,
                                        std::optional<Delta2Constants> delta2) {
  validate_phi(name, phi);
  DivergenceSpec spec;
  spec.name_ = std::move(name);
  spec.psi_ = [phi, phi_prime](double y) {
    return conjugate_point(phi, phi_prime, y).value;
  };
  spec.psi_prime_ = [phi, phi_prime](double y) {
    return conjugate_point(phi, phi_prime, y).argmax;
  };
  spec.phi_at_zero_ = phi(0.0);
  spec.unit_slope_ = phi_prime(1.0);
  spec.phi_ = std::move(phi);
  spec.phi_prime_ = std::move(phi_prime);
  spec.delta2_ = delta2;
  spec.closed_conjugate_ = false;
  return spec;
}

DivergenceSpec DivergenceSpec::with_conjugate(
    std::string name, Fn phi, Fn phi_prime, Fn psi, Fn psi_prime,
    std::optional<Delta2Constants> delta2) {
  validate_phi(name, phi);
  DivergenceSpec spec;
  spec.name_ = std::move(name);
  spec.phi_at_zero_ = phi(0.0);
  spec.unit_slope_ = phi_prime(1.0);
  spec.phi_ = std::move(phi);
  spec.phi_prime_ = std::move(phi_prime);
  spec.psi_ = std::move(psi);
  spec.psi_prime_ = std::move(psi_prime);
  spec.delta2_ = delta2;
  spec.closed_conjugate_ = true;
  return spec;
}

DivergenceSpec make_kl() {
  // 2x log 2x <= 3 x log x  iff  x >= 4.
  return DivergenceSpec::with_conjugate(
      "kl",
      [](double x) {
        if (x < 0.0) return kInf;
        if (x == 0.0) return 0.0;
        return x * std::log(x);
      },
      [](double x) {
        if (x < 0.0) return kInf;
        if (x == 0.0) return -kInf;
        return std::log(x) + 1.0;
      },
      [](double y) { return std::exp(y - 1.0); },
      [](double y) { return std::exp(y - 1.0); }, Delta2Constants{8.0, 3.0});
}

DivergenceSpec make_chi2() {
  // (2x-1)^2 / (x-1)^2 decreases towards 4; it is 4.84 at x = 6.
  return DivergenceSpec::with_conjugate(
      "chi2",
      [](double x) {
        if (x < 0.0) return kInf;
        return (x - 1.0) * (x - 1.0);
      },
      [](double x) {
        if (x < 0.0) return kInf;
        return 2.0 * (x - 1.0);
      },
      [](double y) { return y >= -2.0 ? y + 0.25 * y * y : -1.0; },
      [](double y) { return y >= -2.0 ? 1.0 + 0.5 * y : 0.0; },
      Delta2Constants{6.0, 5.0});
}

DivergenceSpec make_power(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw Error(ErrorCode::invalid_parameter,
                "power divergence requires p > 1");
  }
  const double norm = p * (p - 1.0);
  auto phi = [p, norm](double x) {
    if (x < 0.0) return kInf;
    return (std::pow(x, p) - p * x + p - 1.0) / norm;
  };
  auto phi_prime = [p](double x) {
    if (x < 0.0) return kInf;
    return (std::pow(x, p - 1.0) - 1.0) / (p - 1.0);
  };
  // Maximiser x = u^{1/(p-1)} with u = 1 + (p-1) y; clamps to 0 when u <= 0.
  auto psi = [p](double y) {
    const double u = 1.0 + (p - 1.0) * y;
    if (u <= 0.0) return -1.0 / p;
    return (std::pow(u, p / (p - 1.0)) - 1.0) / p;
  };
  auto psi_prime = [p](double y) {
    const double u = 1.0 + (p - 1.0) * y;
    if (u <= 0.0) return 0.0;
    return std::pow(u, 1.0 / (p - 1.0));
  };
  const double factor = std::pow(2.0, p) + 1.0;
  const Delta2Constants d2{delta2_threshold(phi, factor), factor};

  std::ostringstream name;
  name << "power:" << p;
  return DivergenceSpec::with_conjugate(name.str(), phi, phi_prime, psi,
                                        psi_prime, d2);
}

DivergenceSpec make_builtin_divergence(std::string_view config) {
  if (config == "kl") return make_kl();
  if (config == "chi2") return make_chi2();
  constexpr std::string_view power_prefix = "power:";
  if (config.substr(0, power_prefix.size()) == power_prefix) {
    const std::string_view arg = config.substr(power_prefix.size());
    double p = 0.0;
    const auto [end, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), p);
    if (arg.empty() || ec != std::errc() || end != arg.data() + arg.size()) {
      throw Error(ErrorCode::invalid_parameter,
                  "power divergence: cannot parse exponent '" +
                      std::string(arg) + "'");
    }
    return make_power(p);
  }
  throw Error(ErrorCode::unsupported_divergence,
              "unsupported divergence '" + std::string(config) + "'");
}

YoungPair young_pair(const DivergenceSpec& spec) {
  auto young_phi = [spec](double x) {
    if (x < 0.0) return kInf;
    if (x <= 1.0) return 0.0;
    return std::max(0.0, spec.phi(x));
  };
  auto young_phi_prime = [spec](double x) {
    if (x < 0.0) return kInf;
    if (x < 1.0) return 0.0;
    return spec.phi(x) >= 0.0 ? std::max(0.0, spec.phi_prime(x)) : 0.0;
  };

  // phi - Phi is supported on [0, 1] and on the set where phi < 0.
  auto gap_at = [&](double x) {
    return std::abs(spec.phi(x) - young_phi(x));
  };
  double gap = gap_at(0.0);
  double best_x = 0.0;
  constexpr int kGrid = 10000;
  const double log_lo = std::log(1e-8);
  const double log_hi = std::log(1e3);
  for (int i = 0; i < kGrid; ++i) {
    const double x = std::exp(log_lo + (log_hi - log_lo) * i / (kGrid - 1));
    const double g = gap_at(x);
    if (g > gap) {
      gap = g;
      best_x = x;
    }
  }
  if (best_x > 0.0) {
    // Refine the grid maximum locally; the gap is concave where phi < 0.
    const double step = std::exp((log_hi - log_lo) / (kGrid - 1));
    const auto refined = detail::golden_section(
        [&](double x) { return -gap_at(x); }, best_x / step, best_x * step,
        1e-15 * best_x);
    gap = std::max(gap, -refined.value);
  }

  std::ostringstream name;
  name << "young(" << spec.name() << ")";
  auto young = DivergenceSpec::from_phi(name.str(), young_phi, young_phi_prime,
                                        spec.delta2_constants());
  return YoungPair(std::move(young), gap);
}

double discrete_divergence(std::span<const double> q, std::span<const double> p,
                           const DivergenceSpec& spec) {
  if (q.size() != p.size()) {
    throw Error(ErrorCode::dimension, "q and p must have the same length");
  }
  double q_sum = 0.0;
  double p_sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] > 0.0)) {
      throw Error(ErrorCode::support, "reference measure must be strictly positive");
    }
    q_sum += q[i];
    p_sum += p[i];
  }
  if (std::abs(q_sum - 1.0) > 1e-12 || std::abs(p_sum - 1.0) > 1e-12) {
    throw Error(ErrorCode::invalid_value, "probability vectors must sum to 1");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double v = spec.phi(q[i] / p[i]);
    if (v == kInf) return kInf;
    total += p[i] * v;
  }
  return total;
}

}  // namespace divrisk
