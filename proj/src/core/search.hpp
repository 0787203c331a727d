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

// One-dimensional search kernels shared by the numeric modules.

#ifndef DIVRISK_SRC_CORE_SEARCH_HPP
#define DIVRISK_SRC_CORE_SEARCH_HPP

#include <cmath>
#include <utility>

namespace divrisk::detail {

struct Bracket {
  double lo;
  double hi;
};

/// Shrinks [lo, hi] while keeping pred(lo) == false and pred(hi) == true.
/// Stops when the midpoint is no longer representable between the ends.
template <class Pred>
Bracket bisect(Pred&& pred, double lo, double hi, int max_iter = 400) {
  for (int i = 0; i < max_iter; ++i) {
    const double mid = lo + 0.5 * (hi - lo);
    if (!(mid > lo && mid < hi)) break;
    if (pred(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return {lo, hi};
}

struct Minimum {
  double x;
  double value;
};

/// Golden-section search for a unimodal f on [a, b]. Returns the best
/// point evaluated.
template <class F>
Minimum golden_section(F&& f, double a, double b, double x_tol,
                       int max_iter = 300) {
  constexpr double inv_phi = 0.6180339887498949;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  Minimum best = fc <= fd ? Minimum{c, fc} : Minimum{d, fd};
  for (int i = 0; i < max_iter && (b - a) > x_tol; ++i) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
      if (fc < best.value) best = {c, fc};
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
      if (fd < best.value) best = {d, fd};
    }
  }
  return best;
}

}  // namespace divrisk::detail

#endif  // DIVRISK_SRC_CORE_SEARCH_HPP
