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
#include "auctionmkt/econometrics.hpp"
#include "auctionmkt/errors.hpp"
#include "auctionmkt/numeric.hpp"

#include <cmath>
#include <numbers>

namespace auctionmkt {
namespace published {

std::set<std::pair<int, PlatformId>> const &missing_usage()
{
  static std::set<std::pair<int, PlatformId>> const gaps{{1, PlatformId::Y}, {10, PlatformId::E}};
  return gaps;
}

MarketState average_state(UsageMetric metric)
{
  MarketState s;
  s.listings[PlatformId::E] = kListingsE;
  s.listings[PlatformId::Y] = kListingsY;
  if (metric == UsageMetric::UniqueVisitors)
  {
    s.usage[PlatformId::E] = kUniqueVisitorsE;
    s.usage[PlatformId::Y] = kUniqueVisitorsY;
  }
  else
  {
    s.usage[PlatformId::E] = kPageViewsE;
    s.usage[PlatformId::Y] = kPageViewsY;
  }
  return s;
}

}  // namespace published

namespace {

constexpr double kTwoPi        = 2.0 * std::numbers::pi;
constexpr double kTrendE       = 0.05;
constexpr double kTrendY       = -0.30;
constexpr double kWiggle       = 0.02;

void rescale_to_mean(std::vector<double> &path, double target)
{
  double sum = 0.0;
  for (double v : path)
  {
    sum += v;
  }
  double const factor = target * static_cast<double>(path.size()) / sum;
  for (double &v : path)
  {
    v *= factor;
  }
}

struct MetricTargets
{
  UsageMetric metric;
  double      ratio_e;
  double      ratio_y;
};

// Usage paths (index 0 = week 1) for one metric plus the site-preference scale.
struct UsagePaths
{
  PerPlatform<std::vector<double>> usage;
  double                           site_scale = 0.0;
};

UsagePaths build_usage(PerPlatform<std::vector<double>> const &listings, MetricTargets const &target)
{
  auto const   params = published_usage_params(target.metric);
  auto const  &gaps   = published::missing_usage();
  int const    weeks  = published::kWeeks;

  // Complete-week rows in the pooled layout used by the usage regression.
  std::vector<int> complete;
  for (int w = 1; w <= weeks; ++w)
  {
    if (!gaps.contains({w, PlatformId::E}) && !gaps.contains({w, PlatformId::Y}))
    {
      complete.push_back(w);
    }
  }

  econometrics::Matrix design(complete.size() * 2, 2);
  std::vector<double>  site_sign;
  std::size_t          row = 0;
  for (int w : complete)
  {
    for (auto p : kPlatforms)
    {
      design(row, 0) = std::log(listings[p][w - 1]);
      design(row, 1) = std::log(listings[rival(p)][w - 1]);
      site_sign.push_back(p == PlatformId::E ? 1.0 : -1.0);
      ++row;
    }
  }
  // Site preference with its in-sample projection on the regressors removed.
  auto const purged = econometrics::ols(design, site_sign, true).residuals;

  PerPlatform<std::vector<double>> site_term;
  for (auto p : kPlatforms)
  {
    site_term[p].assign(weeks, p == PlatformId::E ? 1.0 : -1.0);
  }
  row = 0;
  for (int w : complete)
  {
    for (auto p : kPlatforms)
    {
      site_term[p][w - 1] = purged[row++];
    }
  }

  auto log_usage = [&](double scale, PlatformId p, int w) {
    double const t      = static_cast<double>(w);
    double const wiggle = p == PlatformId::E ? kWiggle * std::sin(kTwoPi * t / 4.3)
                                             : kWiggle * std::cos(kTwoPi * t / 3.7);
    return params.c + params.beta1 * std::log(listings[p][w - 1]) +
           params.beta2 * std::log(listings[rival(p)][w - 1]) + scale * site_term[p][w - 1] +
           wiggle;
  };
  auto mean_ratio = [&](double scale, PlatformId p) {
    double sum = 0.0;
    for (int w : complete)
    {
      sum += std::exp(log_usage(scale, p, w)) / listings[p][w - 1];
    }
    return sum / static_cast<double>(complete.size());
  };
  auto gap = [&](double scale) {
    return std::log(mean_ratio(scale, PlatformId::E) / mean_ratio(scale, PlatformId::Y)) -
           std::log(target.ratio_e / target.ratio_y);
  };

  double const scale = numeric::bisect(gap, -5.0, 5.0, 1e-14);
  double const level = target.ratio_e / mean_ratio(scale, PlatformId::E);

  UsagePaths out;
  out.site_scale = scale;
  for (auto p : kPlatforms)
  {
    out.usage[p].resize(weeks);
    for (int w = 1; w <= weeks; ++w)
    {
      out.usage[p][w - 1] = level * std::exp(log_usage(scale, p, w));
    }
  }
  return out;
}

CanonicalPanel build()
{
  CanonicalPanel result;
  result.listings = canonical_listing_paths();

  auto const uv = build_usage(result.listings, {UsageMetric::UniqueVisitors, published::kUvPerListingE,
                                                published::kUvPerListingY});
  auto const pv = build_usage(result.listings, {UsageMetric::PageViews, published::kPvPerListingE,
                                                published::kPvPerListingY});
  result.uv_site_scale = uv.site_scale;
  result.pv_site_scale = pv.site_scale;

  std::vector<WeeklyObservation> rows;
  for (int w = 1; w <= published::kWeeks; ++w)
  {
    for (auto p : kPlatforms)
    {
      WeeklyObservation o;
      o.week     = w;
      o.site     = p;
      o.listings = round_significant(result.listings[p][w - 1]);
      if (!published::missing_usage().contains({w, p}))
      {
        o.unique_visitors = round_significant(uv.usage[p][w - 1]);
        o.page_views      = round_significant(pv.usage[p][w - 1]);
      }
      rows.push_back(o);
    }
  }
  result.panel = Panel(std::move(rows));
  return result;
}

}  // namespace

PerPlatform<std::vector<double>> canonical_listing_paths()
{
  PerPlatform<std::vector<double>> paths;
  for (int w = 1; w <= published::kWeeks; ++w)
  {
    double const t = static_cast<double>(w);
    double const z = (t - 9.0) / 8.0;
    paths[PlatformId::E].push_back(std::exp(kTrendE * z + kWiggle * std::sin(kTwoPi * t / 6.0)));
    paths[PlatformId::Y].push_back(std::exp(kTrendY * z - kWiggle * std::cos(kTwoPi * t / 5.0)));
  }
  rescale_to_mean(paths[PlatformId::E], published::kListingsE);
  rescale_to_mean(paths[PlatformId::Y], published::kListingsY);
  return paths;
}

CanonicalPanel const &canonical_panel()
{
  static CanonicalPanel const panel = build();
  return panel;
}

}  // namespace auctionmkt
