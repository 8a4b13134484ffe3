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

#include "auctionmkt/canonical_panel.hpp"
#include "auctionmkt/dataset.hpp"
#include "auctionmkt/econometrics.hpp"
#include "auctionmkt/errors.hpp"

#include <cmath>
#include <gtest/gtest.h>
#include <random>

using namespace auctionmkt;
using namespace auctionmkt::econometrics;

namespace {

constexpr auto E = PlatformId::E;
constexpr auto Y = PlatformId::Y;

UsageParams truth()
{
  UsageParams u;
  u.beta1 = 1.989;
  u.beta2 = -1.876;
  u.c     = 6.564;
  return u;
}

Panel synthetic(UsageParams const &use, double noise, std::uint64_t seed,
                PerPlatform<std::vector<double>> listings = canonical_listing_paths())
{
  SynthesisSpec spec;
  spec.use      = use;
  spec.listings = std::move(listings);
  spec.noise_sd = noise;
  spec.seed     = seed;
  return synthesize_panel(spec);
}

PerPlatform<std::vector<double>> random_listings(std::size_t weeks, std::mt19937_64 &rng)
{
  std::normal_distribution<double> z(0.0, 0.3);
  PerPlatform<std::vector<double>> l;
  for (std::size_t w = 0; w < weeks; ++w)
  {
    l[E].push_back(5800.0 * std::exp(z(rng)));
    l[Y].push_back(3300.0 * std::exp(z(rng)));
  }
  return l;
}

// (AᵀA)⁻¹ for three columns via the adjugate.
std::array<std::array<double, 3>, 3> inverse3(std::array<std::array<double, 3>, 3> const &m)
{
  auto const c = [&](int r0, int r1, int c0, int c1) {
    return m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
  };
  std::array<std::array<double, 3>, 3> adj{};
  adj[0][0] = c(1, 2, 1, 2);
  adj[0][1] = -c(0, 2, 1, 2);
  adj[0][2] = c(0, 1, 1, 2);
  adj[1][0] = -c(1, 2, 0, 2);
  adj[1][1] = c(0, 2, 0, 2);
  adj[1][2] = -c(0, 1, 0, 2);
  adj[2][0] = c(1, 2, 0, 1);
  adj[2][1] = -c(0, 2, 0, 1);
  adj[2][2] = c(0, 1, 0, 1);
  double const det = m[0][0] * adj[0][0] + m[0][1] * adj[1][0] + m[0][2] * adj[2][0];
  for (auto &row : adj)
  {
    for (auto &v : row)
    {
      v /= det;
    }
  }
  return adj;
}

}  // namespace

TEST(Ols, MatchesAdjugateOracle)
{
  std::mt19937_64                  rng(5);
  std::normal_distribution<double> z;
  std::size_t const                n = 40;
  Matrix                           x(n, 2);
  std::vector<double>              y(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    x(i, 0) = z(rng);
    x(i, 1) = 0.5 * x(i, 0) + z(rng);
    y[i]    = 1.0 + 2.0 * x(i, 0) - 0.7 * x(i, 1) + 0.3 * z(rng);
  }
  auto const fit = ols(x, y, true, {"a", "b"});

  std::array<std::array<double, 3>, 3> xtx{};
  std::array<double, 3>                xty{};
  for (std::size_t i = 0; i < n; ++i)
  {
    double const row[3] = {1.0, x(i, 0), x(i, 1)};
    for (int a = 0; a < 3; ++a)
    {
      xty[a] += row[a] * y[i];
      for (int b = 0; b < 3; ++b)
      {
        xtx[a][b] += row[a] * row[b];
      }
    }
  }
  auto const inv = inverse3(xtx);
  std::array<double, 3> beta{};
  for (int a = 0; a < 3; ++a)
  {
    for (int b = 0; b < 3; ++b)
    {
      beta[a] += inv[a][b] * xty[b];
    }
  }
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i)
  {
    double const r = y[i] - beta[0] - beta[1] * x(i, 0) - beta[2] * x(i, 1);
    rss += r * r;
  }
  double const sigma2 = rss / static_cast<double>(n - 3);
  for (int a = 0; a < 3; ++a)
  {
    EXPECT_NEAR(fit.coefficients[a], beta[a], 1e-10 * std::max(1.0, std::abs(beta[a])));
    EXPECT_NEAR(fit.standard_errors[a], std::sqrt(sigma2 * inv[a][a]), 1e-10);
  }
  EXPECT_NEAR(fit.rss, rss, 1e-10);
  EXPECT_EQ(fit.design_labels, (std::vector<std::string>{"constant", "a", "b"}));
  EXPECT_DOUBLE_EQ(fit.coefficient("b"), fit.coefficients[2]);
  EXPECT_THROW(fit.coefficient("zzz"), std::out_of_range);
}

TEST(Ols, ResidualsOrthogonalToRegressors)
{
  auto const panel = synthetic(truth(), 0.05, 17);
  auto const fit   = estimate_usage_equation(panel, UsageMetric::UniqueVisitors);
  double s0 = 0.0, s1 = 0.0, s2 = 0.0;
  std::size_t row = 0;
  for (int w : panel.complete_weeks(UsageMetric::UniqueVisitors))
  {
    for (auto p : kPlatforms)
    {
      double const r = fit.residuals[row++];
      s0 += r;
      s1 += r * std::log(panel.find(w, p)->listings);
      s2 += r * std::log(panel.find(w, rival(p))->listings);
    }
  }
  EXPECT_LT(std::abs(s0), 1e-8);
  EXPECT_LT(std::abs(s1), 1e-8);
  EXPECT_LT(std::abs(s2), 1e-8);
}

TEST(Ols, NoiseFreeRoundTrip)
{
  auto const panel = synthetic(truth(), 0.0, 1);
  auto const fit   = estimate_usage_equation(panel, UsageMetric::UniqueVisitors);
  auto const u     = usage_params_from_fit(fit);
  EXPECT_NEAR(u.beta1 / 1.989, 1.0, 1e-10);
  EXPECT_NEAR(u.beta2 / -1.876, 1.0, 1e-10);
  EXPECT_NEAR(u.c / 6.564, 1.0, 1e-10);

  // Same design assembled by hand.
  auto const listings = canonical_listing_paths();
  Matrix     x(34, 2);
  std::vector<double> y;
  for (std::size_t w = 0; w < 17; ++w)
  {
    for (auto p : kPlatforms)
    {
      double const lo = std::log(listings[p][w]), lr = std::log(listings[rival(p)][w]);
      x(y.size(), 0) = lo;
      x(y.size(), 1) = lr;
      y.push_back(6.564 + 1.989 * lo - 1.876 * lr);
    }
  }
  auto const exact = ols(x, y, true, {kOwn, kRival});
  EXPECT_NEAR(exact.coefficients[0] / 6.564, 1.0, 1e-10);
  EXPECT_NEAR(exact.coefficients[1] / 1.989, 1.0, 1e-10);
  EXPECT_NEAR(exact.coefficients[2] / -1.876, 1.0, 1e-10);
}

TEST(Ols, CollinearDesignsNameTheColumn)
{
  PerPlatform<std::vector<double>> same;
  same[E] = canonical_listing_paths()[E];
  same[Y] = same[E];
  auto const panel = synthetic(truth(), 0.05, 2, same);
  try
  {
    estimate_usage_equation(panel, UsageMetric::UniqueVisitors);
    FAIL();
  }
  catch (SolverError const &e)
  {
    EXPECT_NE(std::string(e.what()).find(kRival), std::string::npos) << e.what();
  }

  PerPlatform<std::vector<double>> flat;
  flat[E].assign(17, 5000.0);
  flat[Y].assign(17, 3000.0);
  // own + rival is constant across the pooled rows
  EXPECT_THROW(estimate_usage_equation(synthetic(truth(), 0.05, 2, flat), UsageMetric::UniqueVisitors),
               SolverError);

  flat[Y] = flat[E];
  EXPECT_THROW(estimate_usage_equation(synthetic(truth(), 0.05, 2, flat), UsageMetric::UniqueVisitors),
               SolverError);
}

TEST(Ols, TooFewObservations)
{
  Matrix x(2, 1);
  x(0, 0) = 1.0;
  x(1, 0) = 2.0;
  std::vector<double> y{1.0, 2.0};
  EXPECT_THROW(ols(x, y, true), ValidationError);
  EXPECT_NO_THROW(ols(x, y, false));
}

TEST(Ols, UnitsInvariance)
{
  auto const base = synthetic(truth(), 0.05, 9);
  std::vector<WeeklyObservation> scaled;
  for (auto o : base.observations())
  {
    o.listings *= 1000.0;
    if (o.unique_visitors)
    {
      *o.unique_visitors *= 1000.0;
    }
    scaled.push_back(o);
  }
  auto const f1 = estimate_usage_equation(base, UsageMetric::UniqueVisitors);
  auto const f2 = estimate_usage_equation(Panel(scaled), UsageMetric::UniqueVisitors);
  EXPECT_NEAR(f2.coefficients[1], f1.coefficients[1], 1e-9);
  EXPECT_NEAR(f2.coefficients[2], f1.coefficients[2], 1e-9);
  double const shift = std::log(1000.0) * (1.0 - f1.coefficients[1] - f1.coefficients[2]);
  EXPECT_NEAR(f2.coefficients[0], f1.coefficients[0] + shift, 1e-8);
  EXPECT_NEAR(f2.standard_errors[1], f1.standard_errors[1], 1e-9);

  auto const r1 = estimate_revenue_elasticity(base, 0.04, UsageMetric::UniqueVisitors);
  auto const r2 = estimate_revenue_elasticity(Panel(scaled), 0.04, UsageMetric::UniqueVisitors);
  EXPECT_NEAR(r2.coefficients[0], r1.coefficients[0], 1e-12);
}

TEST(RevenueElasticity, ClosedForm)
{
  auto const &panel = canonical_panel().panel;
  auto const  x     = revenue_regressor(panel, UsageMetric::UniqueVisitors);
  double sx = 0.0, sxx = 0.0;
  for (double v : x)
  {
    sx += v;
    sxx += v * v;
  }
  double const y   = -std::log(1.0 - 0.04);
  auto const   fit = estimate_revenue_elasticity(panel, 0.04, UsageMetric::UniqueVisitors);
  EXPECT_NEAR(fit.coefficients[0], y * sx / sxx, 1e-14);
  EXPECT_FALSE(fit.r_squared.has_value());
  EXPECT_EQ(fit.n_observations, 15u);
  EXPECT_THROW(estimate_revenue_elasticity(panel, 0.0, UsageMetric::UniqueVisitors), ValidationError);
}

TEST(Ols, StandardErrorsShrinkAsRootN)
{
  std::mt19937_64     rng(77);
  std::vector<double> log_n, log_se;
  for (std::size_t weeks : {25, 50, 100, 200, 400, 800})
  {
    double se = 0.0;
    int const reps = 20;
    for (int r = 0; r < reps; ++r)
    {
      auto const panel = synthetic(truth(), 0.05, rng(), random_listings(weeks, rng));
      se += estimate_usage_equation(panel, UsageMetric::UniqueVisitors).standard_errors[1];
    }
    log_n.push_back(std::log(static_cast<double>(weeks)));
    log_se.push_back(std::log(se / reps));
  }
  Matrix x(log_n.size(), 1);
  for (std::size_t i = 0; i < log_n.size(); ++i)
  {
    x(i, 0) = log_n[i];
  }
  double const slope = ols(x, log_se, true).coefficients[1];
  EXPECT_NEAR(slope, -0.5, 0.05);
}

TEST(Ols, IllConditionedFlag)
{
  Matrix x(10, 2);
  std::vector<double> y;
  for (std::size_t i = 0; i < 10; ++i)
  {
    x(i, 0) = static_cast<double>(i);
    x(i, 1) = static_cast<double>(i) + 1e-4 * static_cast<double>((i * 7) % 3);
    y.push_back(static_cast<double>(i % 4));
  }
  auto const fit = ols(x, y, true);
  EXPECT_TRUE(fit.ill_conditioned());
}

TEST(Ols, FitCsv)
{
  auto const fit = estimate_usage_equation(canonical_panel().panel, UsageMetric::UniqueVisitors);
  auto const csv = fit_csv(fit);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "term,estimate,std_error");
  EXPECT_NE(csv.find("own listings"), std::string::npos);
}
