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

#include "auctionmkt/config.hpp"
#include "auctionmkt/fee_engine.hpp"
#include "auctionmkt/numeric.hpp"
#include "auctionmkt/platform.hpp"

#include <string>
#include <string_view>
#include <utility>

namespace auctionmkt {

enum class UsageMetric
{
  UniqueVisitors,
  PageViews
};

/// "uv" / "pv" (also the long names).
UsageMetric      parse_metric(std::string_view text);
std::string_view metric_tag(UsageMetric metric) noexcept;   // "uv" / "pv"
std::string_view metric_name(UsageMetric metric) noexcept;  // "unique visitors" / "page views"

/// Expected auction revenue R_j = a · N_j^b · exp(ξ_j) with N_j = γ U_j / L_j.
/// `a` absorbs the (common) auction mechanism; ξ_E is normalised to zero.
struct RevenueParams
{
  double               a     = 1.0;
  double               b     = 0.0;
  double               gamma = 1.0;
  PerPlatform<double>  xi{};

  void validate() const;
  bool operator==(RevenueParams const &) const = default;
};

/// Site usage U_j = L_j^β1 · L_{-j}^β2 · exp(c + η_j).
struct UsageParams
{
  double              beta1 = 0.0;
  double              beta2 = 0.0;
  double              c     = 0.0;
  PerPlatform<double> eta{};

  void validate() const;
  bool operator==(UsageParams const &) const = default;
};

/// Listings and usage per platform, both in thousands and strictly positive.
struct MarketState
{
  PerPlatform<double> listings{};
  PerPlatform<double> usage{};

  void validate() const;
  bool operator==(MarketState const &) const = default;
};

/// Seller fees as they enter net listing revenue (1 − α)R − F.
struct FeePair
{
  double alpha     = 0.0;
  double insertion = 0.0;  // dollars

  bool operator==(FeePair const &) const = default;
};

using PlatformFees = PerPlatform<FeePair>;

double potential_bidders(RevenueParams const &params, double usage, double listings);
double expected_revenue(RevenueParams const &params, double n_bidders, PlatformId site);
double usage_level(UsageParams const &params, double own_listings, double rival_listings,
                   PlatformId site);

/// (1 − α)R − F. May be negative.
double net_listing_revenue(double expected_revenue, double alpha, double insertion_fee);

/// Usage on both sites induced by the given listings.
PerPlatform<double> induced_usage(UsageParams const &params, PerPlatform<double> const &listings);

/// Listings plus the usage they induce.
MarketState induced_state(UsageParams const &params, PerPlatform<double> const &listings);

/// Expected revenue on `site` at `state`, via N = γU/L.
double revenue_at(MarketState const &state, RevenueParams const &rev, PlatformId site);

/// Net listing revenue on `site` at `state`.
double net_revenue_at(MarketState const &state, RevenueParams const &rev, PlatformFees const &fees,
                      PlatformId site);

/// net(E) − net(Y) at `state`, with usage taken from the state as given.
double indifference_residual(MarketState const &state, RevenueParams const &rev,
                             UsageParams const &use, PlatformFees const &fees);

/// ∂ln R_j / ∂ln L_k once usage responds to listings:
/// diagonal b(β1 − 1), off-diagonal b·β2. Rows/columns ordered (E, Y).
numeric::Matrix2 reduced_form_exponents(RevenueParams const &rev, UsageParams const &use);

/// Backs out η_j so usage_level reproduces the observed usage exactly, and
/// ξ_Y so that net listing revenue is equal across sites at the observed
/// state (ξ_E stays 0). Idempotent.
std::pair<RevenueParams, UsageParams> calibrate_residuals(MarketState const &observed,
                                                          RevenueParams const &rev,
                                                          UsageParams const &use,
                                                          PlatformFees const &fees);

/// Fees of the single-premium form: eBay pays α = alpha_bar, nothing else.
PlatformFees premium_fees(double alpha_bar);

/// Fees for a representative sale: α_j = final-value fee / closing value and
/// F_j = insertion fee, both from the given schedules.
PlatformFees scenario_fees(fees::FeeSchedule const &ebay, fees::FeeSchedule const &yahoo,
                           Money opening_value, Money closing_value);

/// Keys: rev.a rev.b rev.gamma rev.xi.Y use.beta1 use.beta2 use.c use.eta.E use.eta.Y
bool is_param_key(std::string const &key);
void apply_param_entries(FlatConfig const &entries, RevenueParams &rev, UsageParams &use);
FlatConfig param_entries(RevenueParams const &rev, UsageParams const &use);

/// Table 3 usage-equation point estimates for each metric (η left at 0).
UsageParams published_usage_params(UsageMetric metric);

/// Table 2 revenue elasticity at ᾱ = 0.04 for each metric.
double published_revenue_elasticity(UsageMetric metric);

}  // namespace auctionmkt
