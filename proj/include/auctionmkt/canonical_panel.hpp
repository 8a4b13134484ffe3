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

#include "auctionmkt/dataset.hpp"
#include "auctionmkt/market_model.hpp"

#include <set>
#include <utility>
#include <vector>

namespace auctionmkt {

/// Weekly averages for the first 17 weeks of 2001, in thousands.
namespace published {

inline constexpr int    kWeeks               = 17;
inline constexpr double kListingsE           = 5822.0;
inline constexpr double kListingsY           = 3349.0;
inline constexpr double kUniqueVisitorsE     = 6250.0;
inline constexpr double kUniqueVisitorsY     = 527.0;
/// The printed eBay page-view average is garbled; 763,638 thousand is the
/// reading consistent with 131.2 page views per listing.
inline constexpr double kPageViewsE          = 763638.0;
inline constexpr double kPageViewsY          = 1726.0;
inline constexpr double kUvPerListingE       = 1.07;
inline constexpr double kUvPerListingY       = 0.16;
inline constexpr double kPvPerListingE       = 131.2;
inline constexpr double kPvPerListingY       = 0.52;
/// Fall 2000, before Yahoo!Auctions introduced insertion fees.
inline constexpr double kFall2000ListingsE   = 5671.0;
inline constexpr double kFall2000ListingsY   = 4045.0;

/// Usage gaps: Yahoo in the first week of January, eBay in the first week
/// of March (the tenth Wednesday of 2001).
std::set<std::pair<int, PlatformId>> const &missing_usage();

/// Average state of 2001 for one usage metric.
MarketState average_state(UsageMetric metric);

}  // namespace published

/// Deterministic 17-week panel reproducing the published averages.
///
/// Listings: eBay drifts up slightly, Yahoo!Auctions declines through the
/// period (log trend ±0.30 around its mean), both with a ±2% seasonal
/// wiggle; each path is rescaled to its published mean.
///
/// Usage, per metric: the usage equation at the published point estimates,
/// plus a site-preference term (+ for eBay, − for Yahoo) purged of any
/// in-sample correlation with the listing regressors, plus a ±2% wiggle.
/// The site-preference scale is set by bisection so the ratio of mean
/// usage-per-listing across sites equals the published ratio; the level is
/// then scaled so eBay's mean usage-per-listing is exact. Values are rounded
/// to the CSV precision, so the panel survives a write/read cycle unchanged.
struct CanonicalPanel
{
  Panel                            panel;
  PerPlatform<std::vector<double>> listings;  // unrounded paths, week 1 first
  double                           uv_site_scale = 0.0;
  double                           pv_site_scale = 0.0;
};

CanonicalPanel const &canonical_panel();

/// Listing paths used by the canonical panel.
PerPlatform<std::vector<double>> canonical_listing_paths();

}  // namespace auctionmkt
