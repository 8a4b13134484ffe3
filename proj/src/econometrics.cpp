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

#include "auctionmkt/econometrics.hpp"
#include "auctionmkt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <stdexcept>

namespace auctionmkt {
namespace econometrics {
namespace {

using Square = std::vector<std::vector<double>>;

double one_norm(Square const &m)
{
  double best = 0.0;
  for (std::size_t c = 0; c < m.size(); ++c)
  {
    double col = 0.0;
    for (std::size_t r = 0; r < m.size(); ++r)
    {
      col += std::abs(m[r][c]);
    }
    best = std::max(best, col);
  }
  return best;
}

// Gauss-Jordan inversion with partial pivoting. Columns are eliminated in
// order, so a vanishing pivot at column j means column j is (numerically) a
// combination of the earlier ones.
// `scale[j]` is the uncentred sum of squares of column j; a pivot below
// 1e-12 of it means the column is explained by the others to 12 digits.
Square invert(Square a, std::vector<double> const &scale, std::vector<std::string> const &labels,
              std::size_t label_offset)
{
  std::size_t const p = a.size();

  Square inv(p, std::vector<double>(p, 0.0));
  for (std::size_t i = 0; i < p; ++i)
  {
    inv[i][i] = 1.0;
  }
  for (std::size_t col = 0; col < p; ++col)
  {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < p; ++r)
    {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col]))
      {
        pivot = r;
      }
    }
    if (!(std::abs(a[pivot][col]) > 1e-12 * scale[col]) || scale[col] == 0.0)
    {
      auto const &name = labels[col + label_offset];
      throw SolverError(fmt::format("singular design: column '{}' is collinear with {}", name,
                                    col + label_offset == 0 ? std::string("zero")
                                                            : std::string("the preceding columns")));
    }
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    double const d = a[col][col];
    for (std::size_t c = 0; c < p; ++c)
    {
      a[col][c] /= d;
      inv[col][c] /= d;
    }
    for (std::size_t r = 0; r < p; ++r)
    {
      if (r == col)
      {
        continue;
      }
      double const f = a[r][col];
      if (f == 0.0)
      {
        continue;
      }
      for (std::size_t c = 0; c < p; ++c)
      {
        a[r][c] -= f * a[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return inv;
}

std::vector<double> multiply(Square const &m, std::vector<double> const &v)
{
  std::vector<double> out(m.size(), 0.0);
  for (std::size_t r = 0; r < m.size(); ++r)
  {
    for (std::size_t c = 0; c < v.size(); ++c)
    {
      out[r] += m[r][c] * v[c];
    }
  }
  return out;
}

std::size_t label_index(OlsFit const &fit, std::string const &label)
{
  auto const it = std::find(fit.design_labels.begin(), fit.design_labels.end(), label);
  if (it == fit.design_labels.end())
  {
    throw std::out_of_range("no term '" + label + "' in fit");
  }
  return static_cast<std::size_t>(it - fit.design_labels.begin());
}

struct SiteRow
{
  double listings;
  double usage;
};

}  // namespace

double OlsFit::coefficient(std::string const &label) const
{
  return coefficients[label_index(*this, label)];
}

double OlsFit::standard_error(std::string const &label) const
{
  return standard_errors[label_index(*this, label)];
}

OlsFit ols(Matrix const &design, std::span<double const> response, bool include_intercept,
           std::vector<std::string> labels)
{
  std::size_t const n = design.rows();
  std::size_t const p = design.cols();
  std::size_t const k = p + (include_intercept ? 1 : 0);
  if (response.size() != n)
  {
    throw ValidationError(fmt::format("design has {} rows but response has {} values", n,
                                      response.size()));
  }
  if (k == 0)
  {
    throw ValidationError("regression needs at least one regressor");
  }
  if (n <= k)
  {
    throw ValidationError(
        fmt::format("insufficient data: {} observations for {} coefficients", n, k));
  }
  if (labels.empty())
  {
    for (std::size_t j = 0; j < p; ++j)
    {
      labels.push_back(fmt::format("x{}", j + 1));
    }
  }
  if (labels.size() != p)
  {
    throw ValidationError("one label per design column is required");
  }

  std::vector<double> x_mean(p, 0.0);
  double              y_mean = 0.0;
  if (include_intercept)
  {
    for (std::size_t i = 0; i < n; ++i)
    {
      for (std::size_t j = 0; j < p; ++j)
      {
        x_mean[j] += design(i, j);
      }
      y_mean += response[i];
    }
    for (auto &m : x_mean)
    {
      m /= static_cast<double>(n);
    }
    y_mean /= static_cast<double>(n);
  }

  Square              xtx(p, std::vector<double>(p, 0.0));
  std::vector<double> xty(p, 0.0);
  std::vector<double> scale(p, 0.0);
  for (std::size_t i = 0; i < n; ++i)
  {
    for (std::size_t a = 0; a < p; ++a)
    {
      scale[a] += design(i, a) * design(i, a);
      double const xa = design(i, a) - x_mean[a];
      xty[a] += xa * (response[i] - y_mean);
      for (std::size_t b = 0; b < p; ++b)
      {
        xtx[a][b] += xa * (design(i, b) - x_mean[b]);
      }
    }
  }

  std::vector<std::string> all_labels;
  if (include_intercept)
  {
    all_labels.emplace_back(kConstant);
  }
  all_labels.insert(all_labels.end(), labels.begin(), labels.end());

  Square              inv;
  std::vector<double> slopes;
  double              condition = 1.0;
  if (p > 0)
  {
    inv    = invert(xtx, scale, all_labels, include_intercept ? 1 : 0);
    slopes = multiply(inv, xty);
    // one step of iterative refinement
    auto const          applied = multiply(xtx, slopes);
    std::vector<double> correction(p);
    for (std::size_t j = 0; j < p; ++j)
    {
      correction[j] = xty[j] - applied[j];
    }
    auto const delta = multiply(inv, correction);
    for (std::size_t j = 0; j < p; ++j)
    {
      slopes[j] += delta[j];
    }
    condition = one_norm(xtx) * one_norm(inv);
  }

  OlsFit fit;
  fit.design_labels    = all_labels;
  fit.n_observations   = n;
  fit.condition_number = condition;

  double intercept = 0.0;
  if (include_intercept)
  {
    intercept = y_mean;
    for (std::size_t j = 0; j < p; ++j)
    {
      intercept -= slopes[j] * x_mean[j];
    }
    fit.coefficients.push_back(intercept);
  }
  fit.coefficients.insert(fit.coefficients.end(), slopes.begin(), slopes.end());

  fit.residuals.resize(n);
  double tss = 0.0;
  for (std::size_t i = 0; i < n; ++i)
  {
    double fitted = intercept;
    for (std::size_t j = 0; j < p; ++j)
    {
      fitted += slopes[j] * design(i, j);
    }
    fit.residuals[i] = response[i] - fitted;
    fit.rss += fit.residuals[i] * fit.residuals[i];
    tss += (response[i] - y_mean) * (response[i] - y_mean);
  }
  fit.sigma2 = fit.rss / static_cast<double>(n - k);

  if (include_intercept)
  {
    // Var(intercept) = σ²(1/n + x̄ᵀ (X̃ᵀX̃)⁻¹ x̄)
    double quad = 0.0;
    if (p > 0)
    {
      auto const t = multiply(inv, x_mean);
      for (std::size_t j = 0; j < p; ++j)
      {
        quad += x_mean[j] * t[j];
      }
    }
    fit.standard_errors.push_back(std::sqrt(fit.sigma2 * (1.0 / static_cast<double>(n) + quad)));
    if (tss > 0.0)
    {
      fit.r_squared = 1.0 - fit.rss / tss;
    }
  }
  for (std::size_t j = 0; j < p; ++j)
  {
    fit.standard_errors.push_back(std::sqrt(fit.sigma2 * inv[j][j]));
  }
  return fit;
}

std::vector<double> revenue_regressor(Panel const &panel, UsageMetric metric)
{
  std::vector<double> x;
  for (int week : panel.complete_weeks(metric))
  {
    auto const *e = panel.find(week, PlatformId::E);
    auto const *y = panel.find(week, PlatformId::Y);
    double const re = *e->usage(metric) / e->listings;
    double const ry = *y->usage(metric) / y->listings;
    if (!(re > 0.0) || !(ry > 0.0))
    {
      throw ValidationError(fmt::format("week {}: usage per listing must be positive", week));
    }
    x.push_back(std::log(re) - std::log(ry));
  }
  return x;
}

OlsFit estimate_revenue_elasticity(Panel const &panel, double alpha_bar, UsageMetric metric)
{
  if (!(alpha_bar > 0.0 && alpha_bar < 1.0))
  {
    throw ValidationError(fmt::format("alpha bar must lie in (0, 1), got {}", alpha_bar));
  }
  auto const x = revenue_regressor(panel, metric);
  if (x.size() < 2)
  {
    throw ValidationError(fmt::format("revenue elasticity needs at least 2 complete weeks of {}, found {}",
                                      metric_name(metric), x.size()));
  }
  Matrix design(x.size(), 1);
  for (std::size_t t = 0; t < x.size(); ++t)
  {
    design(t, 0) = x[t];
  }
  std::vector<double> const y(x.size(), -std::log1p(-alpha_bar));
  return ols(design, y, false, {"b"});
}

OlsFit estimate_usage_equation(Panel const &panel, UsageMetric metric)
{
  auto const weeks = panel.complete_weeks(metric);
  if (weeks.size() * 2 < 4)
  {
    throw ValidationError(fmt::format("usage equation needs at least 4 pooled observations, found {}",
                                      weeks.size() * 2));
  }
  Matrix              design(weeks.size() * 2, 2);
  std::vector<double> y;
  std::size_t         row = 0;
  for (int week : weeks)
  {
    for (auto p : kPlatforms)
    {
      auto const *own   = panel.find(week, p);
      auto const *other = panel.find(week, rival(p));
      design(row, 0)    = std::log(own->listings);
      design(row, 1)    = std::log(other->listings);
      y.push_back(std::log(*own->usage(metric)));
      ++row;
    }
  }
  return ols(design, y, true, {kOwn, kRival});
}

UsageParams usage_params_from_fit(OlsFit const &fit)
{
  UsageParams p;
  p.c     = fit.coefficient(kConstant);
  p.beta1 = fit.coefficient(kOwn);
  p.beta2 = fit.coefficient(kRival);
  return p;
}

std::string fit_csv(OlsFit const &fit)
{
  std::string out = "term,estimate,std_error\n";
  for (std::size_t j = 0; j < fit.coefficients.size(); ++j)
  {
    out += fmt::format("{},{:.6g},{:.6g}\n", fit.design_labels[j], fit.coefficients[j],
                       fit.standard_errors[j]);
  }
  return out;
}

}  // namespace econometrics
}  // namespace auctionmkt
