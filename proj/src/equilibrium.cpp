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

#include "auctionmkt/equilibrium.hpp"
#include "auctionmkt/canonical_panel.hpp"
#include "auctionmkt/fee_engine.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>

namespace auctionmkt {
namespace equilibrium {
namespace {

constexpr double kShareLow  = 0.001;
constexpr double kShareHigh = 0.999;

template <class... Ts>
struct Overloaded : Ts...
{
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_positive(double v, char const *what)
{
  if (!(v > 0.0) || !std::isfinite(v))
  {
    throw ValidationError(fmt::format("{} must be positive and finite, got {}", what, v));
  }
}

FixedTotal const &fixed_total_of(EquilibriumProblem const &problem)
{
  auto const *closure = std::get_if<FixedTotal>(&problem.closure);
  if (closure == nullptr)
  {
    throw ValidationError("problem does not use the fixed-total closure");
  }
  return *closure;
}

ElasticEntry const &elastic_entry_of(EquilibriumProblem const &problem)
{
  auto const *closure = std::get_if<ElasticEntry>(&problem.closure);
  if (closure == nullptr)
  {
    throw ValidationError("problem does not use the elastic-entry closure");
  }
  return *closure;
}

// eBay listings rounded to a multiple of ulp(total), so that both sites'
// listings are exact and sum to the total without rounding.
PerPlatform<double> split_total(double total, double share)
{
  double const ulp = std::nextafter(total, std::numeric_limits<double>::infinity()) - total;
  double const e   = std::round(share * total / ulp) * ulp;
  PerPlatform<double> listings;
  listings[PlatformId::E] = e;
  listings[PlatformId::Y] = total - e;
  return listings;
}

double residual_at_share(EquilibriumProblem const &problem, double total, double share)
{
  auto const state = induced_state(problem.use, split_total(total, share));
  return indifference_residual(state, problem.rev, problem.use, problem.fees);
}

double log_distance(MarketState const &a, MarketState const &b)
{
  double d = 0.0;
  for (auto p : kPlatforms)
  {
    d = std::max(d, std::abs(std::log(a.listings[p]) - std::log(b.listings[p])));
    d = std::max(d, std::abs(std::log(a.usage[p]) - std::log(b.usage[p])));
  }
  return d;
}

bool escaped(MarketState const &state, MarketState const &initial)
{
  for (auto p : kPlatforms)
  {
    if (!(state.listings[p] > 0.0) || !std::isfinite(state.listings[p]) ||
        !(state.usage[p] > 0.0) || !std::isfinite(state.usage[p]))
    {
      return true;
    }
  }
  return !(log_distance(state, initial) <= kDivergenceLogBound);
}

double max_abs(PerPlatform<double> const &v)
{
  return std::max(std::abs(v[PlatformId::E]), std::abs(v[PlatformId::Y]));
}

}  // namespace

std::string_view closure_label(Closure const &closure) noexcept
{
  return std::holds_alternative<FixedTotal>(closure) ? "fixed-total" : "elastic-entry";
}

std::string_view to_string(Classification c) noexcept
{
  switch (c)
  {
  case Classification::Stable:
    return "stable";
  case Classification::Unstable:
    return "unstable";
  case Classification::Neutral:
    break;
  }
  return "neutral";
}

std::string_view to_string(FeedbackSign s) noexcept
{
  switch (s)
  {
  case FeedbackSign::Positive:
    return "positive";
  case FeedbackSign::Negative:
    return "negative";
  case FeedbackSign::None:
    break;
  }
  return "none";
}

void EquilibriumProblem::validate() const
{
  rev.validate();
  use.validate();
  for (auto p : kPlatforms)
  {
    auto const &f = fees[p];
    if (!(f.alpha >= 0.0 && f.alpha < 1.0))
    {
      throw ValidationError(
          fmt::format("final-value fraction for {} must lie in [0, 1), got {}", to_char(p), f.alpha));
    }
    if (!(f.insertion >= 0.0) || !std::isfinite(f.insertion))
    {
      throw ValidationError(
          fmt::format("insertion fee for {} must be non-negative, got {}", to_char(p), f.insertion));
    }
  }
  std::visit(Overloaded{[](FixedTotal const &c) { require_positive(c.total_listings, "total listings"); },
                        [](ElasticEntry const &c) {
                          require_positive(c.outside_option, "outside option");
                          for (auto p : kPlatforms)
                          {
                            require_positive(c.reference_listings[p], "reference listings");
                          }
                        }},
             closure);
  if (initial_share && !(*initial_share > 0.0 && *initial_share < 1.0))
  {
    throw ValidationError(fmt::format("initial share must lie in (0, 1), got {}", *initial_share));
  }
}

PerPlatform<double> supply_gaps(EquilibriumProblem const &problem, ElasticEntry const &closure,
                                PerPlatform<double> const &listings)
{
  auto const          state = induced_state(problem.use, listings);
  PerPlatform<double> gaps;
  for (auto p : kPlatforms)
  {
    double const net = net_revenue_at(state, problem.rev, problem.fees, p);
    if (!(net > 0.0))
    {
      throw NoEquilibriumError(fmt::format(
          "net listing revenue on {} is {:.6g} at listings {:.6g}/{:.6g}; no positive listing level "
          "matches outside option {:.6g}",
          platform_name(p), net, listings[PlatformId::E], listings[PlatformId::Y],
          closure.outside_option));
    }
    gaps[p] = std::log(closure.reference_listings[p]) + std::log(net / closure.outside_option) -
              std::log(listings[p]);
  }
  return gaps;
}

EquilibriumSolution solve_fixed_total(EquilibriumProblem const &problem, double tolerance,
                                      std::size_t grid_points)
{
  problem.validate();
  double const total = fixed_total_of(problem).total_listings;
  if (grid_points < 16)
  {
    throw ValidationError(fmt::format("grid needs at least 16 points, got {}", grid_points));
  }
  require_positive(tolerance, "tolerance");

  std::vector<double> shares(grid_points);
  std::vector<double> values(grid_points);
  for (std::size_t i = 0; i < grid_points; ++i)
  {
    shares[i] = kShareLow + (kShareHigh - kShareLow) * static_cast<double>(i) /
                                static_cast<double>(grid_points - 1);
    values[i] = residual_at_share(problem, total, shares[i]);
  }

  auto const f = [&](double s) { return residual_at_share(problem, total, s); };

  std::vector<double> found;
  for (std::size_t i = 0; i < grid_points; ++i)
  {
    if (values[i] == 0.0)
    {
      found.push_back(shares[i]);
      continue;
    }
    if (i + 1 < grid_points && values[i + 1] != 0.0 && (values[i] < 0.0) != (values[i + 1] < 0.0))
    {
      double const s = numeric::bisect(f, shares[i], shares[i + 1], tolerance);
      double const r = f(s);
      if (!(std::abs(r) < tolerance))
      {
        throw SolverError(fmt::format(
            "bisection on eBay share [{:.6g}, {:.6g}] stalled at residual {:.3g} above tolerance {:.3g}",
            shares[i], shares[i + 1], r, tolerance));
      }
      found.push_back(s);
    }
  }

  if (found.empty())
  {
    throw NoEquilibriumError(fmt::format(
        "no interior equilibrium: net_E - net_Y is {:.6g} at eBay share {} and {:.6g} at {} "
        "(corner solution)",
        values.front(), kShareLow, values.back(), kShareHigh));
  }

  std::sort(found.begin(), found.end());
  std::vector<double> merged;
  for (double s : found)
  {
    if (merged.empty() || s - merged.back() > tolerance)
    {
      merged.push_back(s);
    }
  }

  EquilibriumSolution solution;
  solution.closure = std::string(closure_label(problem.closure));
  for (double s : merged)
  {
    auto const listings = split_total(total, s);
    solution.roots.push_back(induced_state(problem.use, listings));
    solution.root_shares.push_back(listings[PlatformId::E] / total);
    solution.root_residuals.push_back(indifference_residual(solution.roots.back(), problem.rev,
                                                            problem.use, problem.fees));
  }

  double const target = problem.initial_share.value_or(0.5);
  std::size_t  chosen = 0;
  for (std::size_t i = 1; i < merged.size(); ++i)
  {
    if (std::abs(solution.root_shares[i] - target) < std::abs(solution.root_shares[chosen] - target))
    {
      chosen = i;
    }
  }
  solution.selected_root = chosen;
  solution.state         = solution.roots[chosen];
  solution.residual = indifference_residual(solution.state, problem.rev, problem.use, problem.fees);
  solution.stability = stability_analysis(problem, solution);
  return solution;
}

Trajectory iterate_dynamics(EquilibriumProblem const &problem, MarketState const &initial,
                            double damping, std::size_t max_periods, double tolerance)
{
  problem.validate();
  auto const &closure = elastic_entry_of(problem);
  if (!(damping > 0.0 && damping <= 1.0))
  {
    throw ValidationError(fmt::format("damping must lie in (0, 1], got {}", damping));
  }
  require_positive(tolerance, "tolerance");
  for (auto p : kPlatforms)
  {
    require_positive(initial.listings[p], "initial listings");
  }

  Trajectory path;
  auto       state = induced_state(problem.use, initial.listings);
  auto const start = state;
  path.states.push_back(state);

  while (true)
  {
    PerPlatform<double> gaps;
    try
    {
      gaps = supply_gaps(problem, closure, state.listings);
    }
    catch (NoEquilibriumError const &e)
    {
      path.diverged    = true;
      path.stop_reason = e.what();
      return path;
    }
    if (max_abs(gaps) < tolerance)
    {
      path.converged   = true;
      path.stop_reason = "converged";
      return path;
    }
    if (path.periods >= max_periods)
    {
      path.stop_reason = fmt::format("no convergence within {} periods", max_periods);
      return path;
    }
    PerPlatform<double> next;
    for (auto p : kPlatforms)
    {
      next[p] = std::exp(std::log(state.listings[p]) + damping * gaps[p]);
    }
    MarketState candidate;
    candidate.listings = next;
    bool const finite  = std::isfinite(next[PlatformId::E]) && std::isfinite(next[PlatformId::Y]) &&
                        next[PlatformId::E] > 0.0 && next[PlatformId::Y] > 0.0;
    if (finite)
    {
      candidate = induced_state(problem.use, next);
    }
    if (!finite || escaped(candidate, start))
    {
      path.diverged    = true;
      path.stop_reason = fmt::format("diverged after {} periods: state left 1e12 of its initial scale",
                                     path.periods + 1);
      return path;
    }
    state = candidate;
    path.states.push_back(state);
    ++path.periods;
  }
}

EquilibriumSolution solve_elastic_entry(EquilibriumProblem const &problem, double tolerance,
                                        MarketState const &initial, double damping,
                                        std::size_t max_periods)
{
  auto path = iterate_dynamics(problem, initial, damping, max_periods, tolerance);
  if (path.diverged)
  {
    if (path.stop_reason.rfind("diverged", 0) != 0)
    {
      throw NoEquilibriumError(path.stop_reason);
    }
    auto const reason = path.stop_reason;
    throw InstabilityError("unstable listing dynamics: " + reason, std::move(path));
  }
  if (!path.converged)
  {
    throw SolverError("elastic-entry iteration: " + path.stop_reason);
  }

  EquilibriumSolution solution;
  solution.closure    = std::string(closure_label(problem.closure));
  solution.state      = path.states.back();
  solution.residual   = max_abs(supply_gaps(problem, elastic_entry_of(problem), solution.state.listings));
  solution.iterations = path.periods;
  solution.roots.push_back(solution.state);
  double const total = solution.state.listings[PlatformId::E] + solution.state.listings[PlatformId::Y];
  solution.root_shares.push_back(solution.state.listings[PlatformId::E] / total);
  solution.root_residuals.push_back(solution.residual);
  solution.stability = stability_analysis(problem, solution, damping);
  return solution;
}

EquilibriumSolution solve(EquilibriumProblem const &problem, SolverSettings const &settings,
                          std::optional<MarketState> const &initial)
{
  if (std::holds_alternative<FixedTotal>(problem.closure))
  {
    auto solution      = solve_fixed_total(problem, settings.tolerance, settings.grid_points);
    solution.stability = stability_analysis(problem, solution, settings.damping);
    return solution;
  }
  MarketState start;
  if (initial)
  {
    start = *initial;
  }
  else
  {
    start.listings = elastic_entry_of(problem).reference_listings;
  }
  return solve_elastic_entry(problem, settings.tolerance, start, settings.damping,
                             settings.max_periods);
}

StabilityReport stability_analysis(EquilibriumProblem const &problem,
                                   EquilibriumSolution const &solution, double damping)
{
  StabilityReport report;
  report.damping          = damping;
  auto const exponents    = reduced_form_exponents(problem.rev, problem.use);
  report.own_exponent     = exponents[0][0];
  report.feedback         = report.own_exponent > 0.0   ? FeedbackSign::Positive
                            : report.own_exponent < 0.0 ? FeedbackSign::Negative
                                                        : FeedbackSign::None;

  auto const &state = solution.state;
  PerPlatform<double> gross;
  PerPlatform<double> net;
  bool                net_positive = true;
  for (auto p : kPlatforms)
  {
    gross[p] = (1.0 - problem.fees[p].alpha) * revenue_at(state, problem.rev, p);
    net[p]   = gross[p] - problem.fees[p].insertion;
    net_positive = net_positive && net[p] > 0.0;
  }

  bool const zero_map = exponents[0][0] == 0.0 && exponents[0][1] == 0.0;
  if (zero_map)
  {
    report.update_map          = {};
    report.map_spectral_radius = 0.0;
    report.classification      = Classification::Neutral;
  }
  else if (!net_positive)
  {
    report.map_spectral_radius = std::numeric_limits<double>::infinity();
    report.classification      = Classification::Unstable;
  }
  else
  {
    for (std::size_t i = 0; i < 2; ++i)
    {
      double const scale = gross.values[i] / net.values[i];
      for (std::size_t j = 0; j < 2; ++j)
      {
        report.update_map[i][j] = scale * exponents[i][j];
      }
    }
    report.map_spectral_radius = numeric::spectral_radius(report.update_map);
    report.classification =
        report.map_spectral_radius < 1.0 ? Classification::Stable : Classification::Unstable;
  }

  if (std::isfinite(report.map_spectral_radius))
  {
    numeric::Matrix2 damped{};
    for (std::size_t i = 0; i < 2; ++i)
    {
      for (std::size_t j = 0; j < 2; ++j)
      {
        damped[i][j] = damping * report.update_map[i][j] + (i == j ? 1.0 - damping : 0.0);
      }
    }
    report.contraction_rate = numeric::spectral_radius(damped);
  }
  else
  {
    report.contraction_rate = std::numeric_limits<double>::infinity();
  }

  if (std::holds_alternative<FixedTotal>(problem.closure))
  {
    double const total = state.listings[PlatformId::E] + state.listings[PlatformId::Y];
    double const s     = state.listings[PlatformId::E] / total;
    auto const   slope = [&](std::size_t i) {
      return gross.values[i] * (exponents[i][0] / s - exponents[i][1] / (1.0 - s));
    };
    report.reallocation_slope = slope(0) - slope(1);
  }
  return report;
}

Counterfactual counterfactual_compare(EquilibriumProblem const &base,
                                      PlatformFees const &modified_fees,
                                      SolverSettings const &settings,
                                      std::optional<MarketState> const &initial)
{
  Counterfactual out;
  try
  {
    out.before = solve(base, settings, initial);
  }
  catch (InstabilityError const &e)
  {
    throw InstabilityError(std::string("before: ") + e.what(), e.partial());
  }
  catch (NoEquilibriumError const &e)
  {
    throw NoEquilibriumError(std::string("before: ") + e.what());
  }
  catch (SolverError const &e)
  {
    throw SolverError(std::string("before: ") + e.what());
  }

  auto modified = base;
  modified.fees = modified_fees;
  if (std::holds_alternative<FixedTotal>(modified.closure))
  {
    auto const &l          = out.before.state.listings;
    modified.initial_share = l[PlatformId::E] / (l[PlatformId::E] + l[PlatformId::Y]);
  }
  try
  {
    out.after = solve(modified, settings, initial ? initial : std::optional{out.before.state});
  }
  catch (InstabilityError const &e)
  {
    throw InstabilityError(std::string("after: ") + e.what(), e.partial());
  }
  catch (NoEquilibriumError const &e)
  {
    throw NoEquilibriumError(std::string("after: ") + e.what());
  }
  catch (SolverError const &e)
  {
    throw SolverError(std::string("after: ") + e.what());
  }

  for (auto p : kPlatforms)
  {
    out.listing_delta[p] = out.after.state.listings[p] - out.before.state.listings[p];
    out.usage_delta[p]   = out.after.state.usage[p] - out.before.state.usage[p];
  }
  return out;
}

PlatformFees fees_2001()
{
  return scenario_fees(fees::ebay_schedule(), fees::yahoo_schedule(), Money::from_cents(1500),
                       Money::from_cents(5000));
}

PlatformFees fees_fall2000()
{
  return scenario_fees(fees::ebay_schedule(), fees::yahoo_fall2000_schedule(),
                       Money::from_cents(1500), Money::from_cents(5000));
}

EquilibriumProblem CalibratedMarket::fixed_total_problem() const
{
  EquilibriumProblem p;
  p.rev    = rev;
  p.use    = use;
  p.fees   = fees;
  p.metric = metric;
  double const total = observed.listings[PlatformId::E] + observed.listings[PlatformId::Y];
  p.closure          = FixedTotal{total};
  p.initial_share    = observed.listings[PlatformId::E] / total;
  return p;
}

EquilibriumProblem CalibratedMarket::elastic_entry_problem() const
{
  EquilibriumProblem p;
  p.rev     = rev;
  p.use     = use;
  p.fees    = fees;
  p.metric  = metric;
  p.closure = ElasticEntry{common_net_revenue, observed.listings};
  return p;
}

CalibratedMarket calibrated_market(UsageMetric metric)
{
  RevenueParams rev;
  rev.b = published_revenue_elasticity(metric);
  return calibrated_market(metric, rev, published_usage_params(metric), fees_2001(), 50.0);
}

CalibratedMarket calibrated_market(UsageMetric metric, RevenueParams const &rev,
                                   UsageParams const &use, PlatformFees const &fees,
                                   double expected_revenue_E)
{
  require_positive(expected_revenue_E, "expected revenue");

  CalibratedMarket m;
  m.metric   = metric;
  m.observed = published::average_state(metric);
  m.fees     = fees;

  RevenueParams base = rev;
  base.a             = 1.0;
  base.xi            = {};
  double const n_e   = potential_bidders(base, m.observed.usage[PlatformId::E],
                                         m.observed.listings[PlatformId::E]);
  base.a             = expected_revenue_E / std::pow(n_e, base.b);

  auto const [crev, cuse] = calibrate_residuals(m.observed, base, use, m.fees);
  m.rev                   = crev;
  m.use                   = cuse;
  m.common_net_revenue    = net_revenue_at(m.observed, m.rev, m.fees, PlatformId::E);
  return m;
}

}  // namespace equilibrium
}  // namespace auctionmkt
