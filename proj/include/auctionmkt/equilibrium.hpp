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

#include "auctionmkt/errors.hpp"
#include "auctionmkt/market_model.hpp"
#include "auctionmkt/numeric.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace auctionmkt {
namespace equilibrium {

/// Sellers only reallocate a fixed stock of listings between the two sites.
struct FixedTotal
{
  double total_listings = 0.0;
};

/// Listing supply on each site is unit-elastic in net listing revenue
/// relative to the outside option: L_j = reference_j · net_j / outside_option.
/// At an equilibrium with net_j = outside_option, L_j = reference_j.
struct ElasticEntry
{
  double              outside_option = 0.0;
  PerPlatform<double> reference_listings{};
};

using Closure = std::variant<FixedTotal, ElasticEntry>;

std::string_view closure_label(Closure const &closure) noexcept;  // "fixed-total" / "elastic-entry"

struct EquilibriumProblem
{
  RevenueParams         rev;
  UsageParams           use;
  PlatformFees          fees;
  Closure               closure;
  UsageMetric           metric = UsageMetric::UniqueVisitors;
  /// FixedTotal: the root closest to this eBay share becomes the solution.
  std::optional<double> initial_share;

  void validate() const;
};

enum class Classification
{
  Stable,
  Unstable,
  Neutral
};

enum class FeedbackSign
{
  Positive,
  Negative,
  None
};

std::string_view to_string(Classification c) noexcept;
std::string_view to_string(FeedbackSign s) noexcept;

struct StabilityReport
{
  /// b(β1 − 1): response of ln R_j to ln L_j once usage adjusts.
  double           own_exponent = 0.0;
  FeedbackSign     feedback     = FeedbackSign::None;
  /// Log-linearised listings → usage → revenue → listings map under
  /// unit-elastic supply: diag(gross/net) · reduced_form_exponents.
  numeric::Matrix2 update_map{};
  double           map_spectral_radius = 0.0;
  Classification   classification      = Classification::Neutral;
  /// Spectral radius of (1 − damping)·I + damping·update_map: the per-period
  /// decay of deviations under damped adjustment.
  double           contraction_rate = 0.0;
  double           damping          = 0.0;
  /// FixedTotal only: d(net_E − net_Y)/d(eBay share) at the root. Positive
  /// means reallocation tips away from the root.
  std::optional<double> reallocation_slope;
};

struct EquilibriumSolution
{
  MarketState              state;
  /// FixedTotal: net_E − net_Y. ElasticEntry: largest |log supply gap|.
  double                   residual = 0.0;
  std::vector<MarketState> roots;
  std::vector<double>      root_shares;
  std::vector<double>      root_residuals;
  std::size_t              selected_root = 0;  // index of `state` in roots
  StabilityReport          stability;
  std::string              closure;
  std::size_t              iterations = 0;
};

struct Trajectory
{
  std::vector<MarketState> states;  // initial state first
  bool                     converged = false;
  bool                     diverged  = false;
  std::size_t              periods   = 0;
  std::string              stop_reason;
};

/// Divergent ElasticEntry iteration; carries the partial path.
class InstabilityError : public SolverError
{
public:
  InstabilityError(std::string const &what, Trajectory partial)
    : SolverError(what)
    , partial_(std::move(partial))
  {}

  Trajectory const &partial() const noexcept
  {
    return partial_;
  }

private:
  Trajectory partial_;
};

class NoEquilibriumError : public SolverError
{
public:
  using SolverError::SolverError;
};

struct SolverSettings
{
  double      tolerance   = 1e-10;
  std::size_t grid_points = 512;
  double      damping     = 0.2;
  std::size_t max_periods = 100'000;
};

/// Log-distance at which an ElasticEntry path is declared divergent (1e12).
inline constexpr double kDivergenceLogBound = 27.631021115928547;

/// Grid scan of the eBay share on (0.001, 0.999), bisection refinement of
/// every sign change of net_E − net_Y.
EquilibriumSolution solve_fixed_total(EquilibriumProblem const &problem, double tolerance = 1e-10,
                                      std::size_t grid_points = 512);

/// Damped log-listing iteration toward the supply schedule.
EquilibriumSolution solve_elastic_entry(EquilibriumProblem const &problem, double tolerance,
                                        MarketState const &initial, double damping = 0.2,
                                        std::size_t max_periods = 100'000);

/// Dispatches on the closure. `initial` is required for ElasticEntry.
EquilibriumSolution solve(EquilibriumProblem const &problem, SolverSettings const &settings,
                          std::optional<MarketState> const &initial = std::nullopt);

StabilityReport stability_analysis(EquilibriumProblem const &problem,
                                   EquilibriumSolution const &solution, double damping = 0.2);

/// Every intermediate state of the ElasticEntry adjustment. Never throws on
/// divergence: the path is truncated and flagged instead.
Trajectory iterate_dynamics(EquilibriumProblem const &problem, MarketState const &initial,
                            double damping, std::size_t max_periods, double tolerance = 1e-10);

struct Counterfactual
{
  EquilibriumSolution before;
  EquilibriumSolution after;
  PerPlatform<double> listing_delta{};
  PerPlatform<double> usage_delta{};
};

/// Solves `base` and `base` with `modified_fees`; deltas are after − before.
/// Solver failures are rethrown labelled "before"/"after".
Counterfactual counterfactual_compare(EquilibriumProblem const &base,
                                      PlatformFees const &modified_fees,
                                      SolverSettings const &settings = {},
                                      std::optional<MarketState> const &initial = std::nullopt);

/// Per-site log supply gaps ln L_ref + ln(net/outside) − ln L at `listings`.
/// Throws NoEquilibriumError when a net revenue is not positive.
PerPlatform<double> supply_gaps(EquilibriumProblem const &problem, ElasticEntry const &closure,
                                PerPlatform<double> const &listings);

/// The average 2001 market for one usage metric, with published revenue
/// and usage estimates, fees of a $50 sale opened at $15, `a` set so eBay's
/// expected revenue is $50, and ξ, η calibrated so the observed state is an
/// equilibrium.
struct CalibratedMarket
{
  RevenueParams rev;
  UsageParams   use;
  PlatformFees  fees;
  MarketState   observed;
  double        common_net_revenue = 0.0;

  EquilibriumProblem fixed_total_problem() const;
  EquilibriumProblem elastic_entry_problem() const;

  UsageMetric metric = UsageMetric::UniqueVisitors;
};

CalibratedMarket calibrated_market(UsageMetric metric);

/// Same calibration from given estimates and fees: `rev.b`, `rev.gamma`,
/// β1, β2 and c are kept; `a` is set so eBay's expected revenue equals
/// `expected_revenue_E`, then ξ and η are recalibrated.
CalibratedMarket calibrated_market(UsageMetric metric, RevenueParams const &rev,
                                   UsageParams const &use, PlatformFees const &fees,
                                   double expected_revenue_E);

/// Fees of a $50 sale opened at $15 under the 2001 schedules, and under
/// the fall 2000 schedules (Yahoo!Auctions free).
PlatformFees fees_2001();
PlatformFees fees_fall2000();

}  // namespace equilibrium
}  // namespace auctionmkt
