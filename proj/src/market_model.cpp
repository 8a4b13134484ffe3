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
#include "auctionmkt/errors.hpp"

#include <cmath>
#include <fmt/format.h>

namespace auctionmkt {
namespace {

void require_finite(double v, char const *name)
{
  if (!std::isfinite(v))
  {
    throw ValidationError(fmt::format("{} must be finite", name));
  }
}

void require_positive(double v, char const *name)
{
  if (!(v > 0.0) || !std::isfinite(v))
  {
    throw ValidationError(fmt::format("{} must be positive and finite, got {}", name, v));
  }
}

}  // namespace

UsageMetric parse_metric(std::string_view text)
{
  auto const t = trim(text);
  if (t == "uv" || t == "unique_visitors" || t == "UniqueVisitors")
  {
    return UsageMetric::UniqueVisitors;
  }
  if (t == "pv" || t == "page_views" || t == "PageViews")
  {
    return UsageMetric::PageViews;
  }
  throw ValidationError("unknown usage metric '" + std::string(text) + "' (expected uv or pv)");
}

std::string_view metric_tag(UsageMetric metric) noexcept
{
  return metric == UsageMetric::UniqueVisitors ? "uv" : "pv";
}

std::string_view metric_name(UsageMetric metric) noexcept
{
  return metric == UsageMetric::UniqueVisitors ? "unique visitors" : "page views";
}

void RevenueParams::validate() const
{
  require_positive(a, "rev.a");
  require_positive(gamma, "rev.gamma");
  require_finite(b, "rev.b");
  require_finite(xi[PlatformId::Y], "rev.xi.Y");
  if (xi[PlatformId::E] != 0.0)
  {
    throw ValidationError("rev.xi.E is normalised to 0");
  }
}

void UsageParams::validate() const
{
  require_finite(beta1, "use.beta1");
  require_finite(beta2, "use.beta2");
  require_finite(c, "use.c");
  require_finite(eta[PlatformId::E], "use.eta.E");
  require_finite(eta[PlatformId::Y], "use.eta.Y");
}

void MarketState::validate() const
{
  for (auto p : kPlatforms)
  {
    require_positive(listings[p], "listings");
    require_positive(usage[p], "usage");
  }
}

double potential_bidders(RevenueParams const &params, double usage, double listings)
{
  require_positive(usage, "usage");
  require_positive(listings, "listings");
  return params.gamma * usage / listings;
}

double expected_revenue(RevenueParams const &params, double n_bidders, PlatformId site)
{
  require_positive(n_bidders, "potential bidders");
  return params.a * std::pow(n_bidders, params.b) * std::exp(params.xi[site]);
}

double usage_level(UsageParams const &params, double own_listings, double rival_listings,
                   PlatformId site)
{
  require_positive(own_listings, "own listings");
  require_positive(rival_listings, "rival listings");
  return std::exp(params.beta1 * std::log(own_listings) + params.beta2 * std::log(rival_listings) +
                  params.c + params.eta[site]);
}

double net_listing_revenue(double expected_revenue, double alpha, double insertion_fee)
{
  if (!(alpha >= 0.0 && alpha < 1.0))
  {
    throw ValidationError(fmt::format("final-value fraction must lie in [0, 1), got {}", alpha));
  }
  return (1.0 - alpha) * expected_revenue - insertion_fee;
}

PerPlatform<double> induced_usage(UsageParams const &params, PerPlatform<double> const &listings)
{
  PerPlatform<double> usage;
  for (auto p : kPlatforms)
  {
    usage[p] = usage_level(params, listings[p], listings[rival(p)], p);
  }
  return usage;
}

MarketState induced_state(UsageParams const &params, PerPlatform<double> const &listings)
{
  return MarketState{listings, induced_usage(params, listings)};
}

double revenue_at(MarketState const &state, RevenueParams const &rev, PlatformId site)
{
  return expected_revenue(rev, potential_bidders(rev, state.usage[site], state.listings[site]),
                          site);
}

double net_revenue_at(MarketState const &state, RevenueParams const &rev, PlatformFees const &fees,
                      PlatformId site)
{
  return net_listing_revenue(revenue_at(state, rev, site), fees[site].alpha, fees[site].insertion);
}

double indifference_residual(MarketState const &state, RevenueParams const &rev,
                             UsageParams const &, PlatformFees const &fees)
{
  return net_revenue_at(state, rev, fees, PlatformId::E) -
         net_revenue_at(state, rev, fees, PlatformId::Y);
}

numeric::Matrix2 reduced_form_exponents(RevenueParams const &rev, UsageParams const &use)
{
  double const own   = rev.b * (use.beta1 - 1.0);
  double const cross = rev.b * use.beta2;
  return {{{own, cross}, {cross, own}}};
}

std::pair<RevenueParams, UsageParams> calibrate_residuals(MarketState const &observed,
                                                          RevenueParams const &rev,
                                                          UsageParams const &use,
                                                          PlatformFees const &fees)
{
  observed.validate();
  rev.validate();
  use.validate();

  UsageParams calibrated_use = use;
  for (auto p : kPlatforms)
  {
    auto const &L        = observed.listings;
    calibrated_use.eta[p] = std::log(observed.usage[p]) - use.beta1 * std::log(L[p]) -
                            use.beta2 * std::log(L[rival(p)]) - use.c;
  }

  RevenueParams calibrated_rev = rev;
  calibrated_rev.xi[PlatformId::E] = 0.0;
  auto const &fe      = fees[PlatformId::E];
  auto const &fy      = fees[PlatformId::Y];
  double const rev_e  = revenue_at(observed, calibrated_rev, PlatformId::E);
  double const net_e  = net_listing_revenue(rev_e, fe.alpha, fe.insertion);
  double const rev_y  = (net_e + fy.insertion) / (1.0 - fy.alpha);
  if (!(rev_y > 0.0))
  {
    throw SolverError("no Yahoo site factor equalises net listing revenue: eBay net revenue " +
                      fmt::format("{:.6g}", net_e) + " is below Yahoo's insertion fee");
  }
  double const n_y                 = potential_bidders(rev, observed.usage[PlatformId::Y],
                                                       observed.listings[PlatformId::Y]);
  calibrated_rev.xi[PlatformId::Y] = std::log(rev_y) - std::log(rev.a) - rev.b * std::log(n_y);
  return {calibrated_rev, calibrated_use};
}

PlatformFees premium_fees(double alpha_bar)
{
  PlatformFees f;
  f[PlatformId::E] = FeePair{alpha_bar, 0.0};
  f[PlatformId::Y] = FeePair{0.0, 0.0};
  return f;
}

PlatformFees scenario_fees(fees::FeeSchedule const &ebay, fees::FeeSchedule const &yahoo,
                           Money opening_value, Money closing_value)
{
  if (closing_value.cents() == 0)
  {
    throw ValidationError("closing value must be positive");
  }
  PlatformFees out;
  for (auto const *s : {&ebay, &yahoo})
  {
    auto const fv   = fees::final_value_fee(*s, closing_value);
    auto const ins  = fees::insertion_fee(*s, opening_value);
    auto const site = s == &ebay ? PlatformId::E : PlatformId::Y;
    out[site]       = FeePair{static_cast<double>(fv.units()) /
                            static_cast<double>(ExactAmount::from_money(closing_value).units()),
                        ins.dollars()};
  }
  return out;
}

bool is_param_key(std::string const &key)
{
  static constexpr std::string_view keys[] = {"rev.a",     "rev.b",     "rev.gamma",
                                              "rev.xi.Y",  "use.beta1", "use.beta2",
                                              "use.c",     "use.eta.E", "use.eta.Y"};
  for (auto k : keys)
  {
    if (key == k)
    {
      return true;
    }
  }
  return false;
}

void apply_param_entries(FlatConfig const &entries, RevenueParams &rev, UsageParams &use)
{
  for (auto const &[key, value] : entries)
  {
    if (!is_param_key(key))
    {
      continue;
    }
    double const v = parse_real(value, key);
    if (key == "rev.a")
      rev.a = v;
    else if (key == "rev.b")
      rev.b = v;
    else if (key == "rev.gamma")
      rev.gamma = v;
    else if (key == "rev.xi.Y")
      rev.xi[PlatformId::Y] = v;
    else if (key == "use.beta1")
      use.beta1 = v;
    else if (key == "use.beta2")
      use.beta2 = v;
    else if (key == "use.c")
      use.c = v;
    else if (key == "use.eta.E")
      use.eta[PlatformId::E] = v;
    else if (key == "use.eta.Y")
      use.eta[PlatformId::Y] = v;
  }
  rev.validate();
  use.validate();
}

FlatConfig param_entries(RevenueParams const &rev, UsageParams const &use)
{
  auto fmt_real = [](double v) { return fmt::format("{}", v); };
  return {
      {"rev.a", fmt_real(rev.a)},
      {"rev.b", fmt_real(rev.b)},
      {"rev.gamma", fmt_real(rev.gamma)},
      {"rev.xi.Y", fmt_real(rev.xi[PlatformId::Y])},
      {"use.beta1", fmt_real(use.beta1)},
      {"use.beta2", fmt_real(use.beta2)},
      {"use.c", fmt_real(use.c)},
      {"use.eta.E", fmt_real(use.eta[PlatformId::E])},
      {"use.eta.Y", fmt_real(use.eta[PlatformId::Y])},
  };
}

UsageParams published_usage_params(UsageMetric metric)
{
  UsageParams p;
  if (metric == UsageMetric::UniqueVisitors)
  {
    p.beta1 = 1.989;
    p.beta2 = -1.876;
    p.c     = 6.564;
  }
  else
  {
    p.beta1 = 4.743;
    p.beta2 = -4.718;
    p.c     = 10.289;
  }
  return p;
}

double published_revenue_elasticity(UsageMetric metric)
{
  return metric == UsageMetric::UniqueVisitors ? 0.0216 : 0.0074;
}

}  // namespace auctionmkt
