#pragma once
//------------------------------------------------------------------------------
//
//   Copyright 2026 The auctionmkt Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

namespace auctionmkt {
namespace numeric {

/// Row-major 2×2 real matrix.
using Matrix2 = std::array<std::array<double, 2>, 2>;

inline double spectral_radius(Matrix2 const &m) noexcept
{
  double const tr   = m[0][0] + m[1][1];
  double const det  = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  double const disc = tr * tr / 4.0 - det;
  if (disc >= 0.0)
  {
    double const root = std::sqrt(disc);
    return std::max(std::abs(tr / 2.0 + root), std::abs(tr / 2.0 - root));
  }
  // complex pair: |λ|² = det
  return std::sqrt(det);
}

/// Sign-change bisection. `f(lo)` and `f(hi)` must have opposite signs (or one
/// is zero). Stops once |f(mid)| < tolerance or the bracket cannot shrink.
template <typename F>
double bisect(F &&f, double lo, double hi, double tolerance, std::size_t max_iterations = 400)
{
  double flo = f(lo);
  if (flo == 0.0)
  {
    return lo;
  }
  double best   = lo;
  double best_f = std::abs(flo);
  for (std::size_t i = 0; i < max_iterations; ++i)
  {
    double const mid = lo + (hi - lo) / 2.0;
    if (mid <= lo || mid >= hi)
    {
      break;
    }
    double const fm = f(mid);
    if (std::abs(fm) < best_f)
    {
      best   = mid;
      best_f = std::abs(fm);
    }
    if (std::abs(fm) < tolerance)
    {
      return mid;
    }
    if ((fm < 0.0) == (flo < 0.0))
    {
      lo  = mid;
      flo = fm;
    }
    else
    {
      hi = mid;
    }
  }
  return best;
}

}  // namespace numeric
}  // namespace auctionmkt
