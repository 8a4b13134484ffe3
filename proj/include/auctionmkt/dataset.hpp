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

#include "auctionmkt/market_model.hpp"
#include "auctionmkt/platform.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace auctionmkt {

/// One Wednesday count for one site. Listings are always present; each usage
/// metric may be missing independently. All values in thousands.
struct WeeklyObservation
{
  int                   week = 0;
  PlatformId            site = PlatformId::E;
  double                listings = 0.0;
  std::optional<double> unique_visitors;
  std::optional<double> page_views;

  std::optional<double> usage(UsageMetric metric) const
  {
    return metric == UsageMetric::UniqueVisitors ? unique_visitors : page_views;
  }

  bool operator==(WeeklyObservation const &) const = default;
};

/// Validated weekly two-site panel, ordered by (week, site).
class Panel
{
public:
  Panel() = default;

  /// Throws ValidationError on non-positive values, week < 1 or a duplicate
  /// (week, site).
  explicit Panel(std::vector<WeeklyObservation> observations);

  std::vector<WeeklyObservation> const &observations() const noexcept
  {
    return observations_;
  }

  bool empty() const noexcept
  {
    return observations_.empty();
  }

  WeeklyObservation const *find(int week, PlatformId site) const;

  /// Distinct weeks present, ascending.
  std::vector<int> weeks() const;

  /// Weeks where both sites report `metric`.
  std::vector<int> complete_weeks(UsageMetric metric) const;

  bool operator==(Panel const &) const = default;

private:
  std::vector<WeeklyObservation> observations_;
};

inline constexpr std::string_view kPanelHeader =
    "week,site,listings_thousands,unique_visitors_thousands,page_views_thousands";

/// CSV with the header above; empty field = missing. Errors carry line numbers.
Panel       parse_panel(std::string_view text);
std::string serialize_panel(Panel const &panel);  // 6 significant digits

/// Listwise deletion: keeps only weeks where both sites report `metric`.
Panel complete_weeks(Panel const &panel, UsageMetric metric);

struct SiteSummary
{
  double      mean_listings = 0.0;
  double      mean_unique_visitors = 0.0;  // NaN when never observed
  double      mean_page_views = 0.0;
  double      mean_uv_per_listing = 0.0;
  double      mean_pv_per_listing = 0.0;
  std::size_t weeks = 0;
  std::size_t uv_weeks = 0;
  std::size_t pv_weeks = 0;
};

struct SummaryStats
{
  PerPlatform<SiteSummary> sites;
  std::size_t              complete_uv_weeks = 0;
  std::size_t              complete_pv_weeks = 0;
};

/// Means over the weeks where each quantity is present. Throws on an empty panel.
SummaryStats summary_stats(Panel const &panel);

/// Generates usage for `metric` from the usage equation with i.i.d.
/// normal(0, noise_sd²) log-noise; the other metric is left missing. Noise is
/// drawn for every (week, site) in order, so the stream does not depend on
/// `missing`.
struct SynthesisSpec
{
  UsageParams                           use;
  PerPlatform<std::vector<double>>      listings;  // index 0 is week 1
  double                                noise_sd = 0.0;
  std::uint64_t                         seed     = 0;
  std::set<std::pair<int, PlatformId>>  missing;
  UsageMetric                           metric   = UsageMetric::UniqueVisitors;
};

Panel synthesize_panel(SynthesisSpec const &spec);

/// Rounds to 6 significant digits, the CSV precision.
double round_significant(double value);

}  // namespace auctionmkt
