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
#include "auctionmkt/cli.hpp"
#include "auctionmkt/dataset.hpp"
#include "auctionmkt/econometrics.hpp"
#include "auctionmkt/equilibrium.hpp"
#include "auctionmkt/fee_engine.hpp"
#include "auctionmkt/market_model.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fmt/format.h>
#include <functional>
#include <sstream>
#include <string>

using namespace auctionmkt;

namespace {

constexpr auto E = PlatformId::E;
constexpr auto Y = PlatformId::Y;

// Pinned tolerances.
constexpr double kTable2Relative      = 0.05;
constexpr double kTable3Relative      = 0.15;
constexpr double kTable3MinR2         = 0.9;
constexpr double kRoundTripRelative   = 1e-10;
constexpr double kCoverageFloor       = 0.99;
constexpr double kCoverageHalfWidth   = 3.0;
constexpr int    kMonteCarloReps      = 200;
constexpr double kMonteCarloNoise     = 0.05;
constexpr double kOrthogonality       = 1e-8;
constexpr double kOwnExponent         = 0.0214;
constexpr double kOwnExponentAbs      = 1e-4;
constexpr double kFiniteDiffRelative  = 1e-6;
constexpr double kResidualTolerance   = 1e-10;
constexpr double kShareTolerance      = 1e-9;

struct Outcome
{
  bool        pass = true;
  std::string detail;

  void require(bool ok, std::string const &what)
  {
    if (!ok)
    {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string g_cli_path;

Money usd(std::int64_t cents)
{
  return Money::from_cents(cents);
}

Outcome fee_exactness()
{
  Outcome    o;
  auto const &e = fees::ebay_schedule();
  auto const &y = fees::yahoo_schedule();
  // 1e-8 dollar units
  o.require(fees::total_fee(e, usd(1500), usd(5000)).units() == 242'500'000, "total $15/$50 != 2.425");
  o.require(fees::total_fee(e, usd(1500), usd(10000)).units() == 367'500'000, "total $15/$100 != 3.675");
  o.require(fees::fee_differential(e, y, usd(1500), usd(5000)).units() == 207'500'000,
            "differential $50 != 2.075");
  o.require(fees::fee_differential(e, y, usd(1500), usd(10000)).units() == 332'500'000,
            "differential $100 != 3.325");
  double const a50  = fees::effective_alpha_bar(usd(1500), usd(5000));
  double const a100 = fees::effective_alpha_bar(usd(1500), usd(10000));
  o.require(a50 == 0.0415, fmt::format("alpha $50 = {}", a50));
  o.require(a100 == 0.03325, fmt::format("alpha $100 = {}", a100));
  if (o.pass)
  {
    o.detail = fmt::format("totals {} / {}, differentials {} / {}, alpha {} / {}",
                           fees::total_fee(e, usd(1500), usd(5000)).to_string(),
                           fees::total_fee(e, usd(1500), usd(10000)).to_string(),
                           fees::fee_differential(e, y, usd(1500), usd(5000)).to_string(),
                           fees::fee_differential(e, y, usd(1500), usd(10000)).to_string(), a50, a100);
  }
  return o;
}

Outcome fee_table_round_trip()
{
  Outcome o;
  struct Row
  {
    std::int64_t from, to, ebay, yahoo;
  };
  Row const rows[] = {{1, 999, 30, 20},
                      {1000, 2499, 55, 35},
                      {2500, 4999, 110, 75},
                      {5000, 19999, 220, 150},
                      {20000, 100'000'000, 330, 150}};
  int checked = 0;
  for (auto const &r : rows)
  {
    for (auto cents : {r.from, r.to})
    {
      auto const fe = fees::insertion_fee(fees::ebay_schedule(), usd(cents)).cents();
      auto const fy = fees::insertion_fee(fees::yahoo_schedule(), usd(cents)).cents();
      o.require(fe == r.ebay, fmt::format("eBay ${} -> {}", usd(cents).to_string(), fe));
      o.require(fy == r.yahoo, fmt::format("Yahoo ${} -> {}", usd(cents).to_string(), fy));
      checked += 2;
    }
  }
  if (o.pass)
  {
    o.detail = fmt::format("{} bracket values at {} opening values, boundaries 9.99/10.00 24.99/25.00 "
                           "49.99/50.00 199.99/200.00",
                           10, checked);
  }
  return o;
}

Outcome table2()
{
  Outcome o;
  struct Case
  {
    double      alpha;
    UsageMetric metric;
    double      expected;
  };
  Case const cases[] = {{0.04, UsageMetric::UniqueVisitors, 0.0216},  {0.04, UsageMetric::PageViews, 0.0074},
                        {0.033, UsageMetric::UniqueVisitors, 0.0178}, {0.033, UsageMetric::PageViews, 0.0061},
                        {0.025, UsageMetric::UniqueVisitors, 0.0134}, {0.025, UsageMetric::PageViews, 0.0046}};
  std::string values;
  for (auto const &c : cases)
  {
    auto const fit = econometrics::estimate_revenue_elasticity(canonical_panel().panel, c.alpha, c.metric);
    double const b   = fit.coefficients[0];
    double const rel = std::abs(b / c.expected - 1.0);
    o.require(rel <= kTable2Relative,
              fmt::format("{} alpha {}: {:.5f} vs {} ({:.1f}%)", metric_tag(c.metric), c.alpha, b, c.expected, 100 * rel));
    values += fmt::format("{}{}@{}={:.5f}({:+.1f}%)", values.empty() ? "" : " ", metric_tag(c.metric), c.alpha, b,
                          100 * (b / c.expected - 1.0));
  }
  if (o.pass)
  {
    o.detail = values;
  }
  return o;
}

Outcome estimator_validity()
{
  Outcome    o;
  UsageParams truth;
  truth.beta1 = 1.989;
  truth.beta2 = -1.876;
  truth.c     = 6.564;

  SynthesisSpec spec;
  spec.use      = truth;
  spec.listings = canonical_listing_paths();
  spec.missing  = published::missing_usage();

  auto const exact = econometrics::usage_params_from_fit(
      econometrics::estimate_usage_equation(synthesize_panel(spec), UsageMetric::UniqueVisitors));
  double worst = 0.0;
  for (auto [est, tru] : {std::pair{exact.beta1, truth.beta1}, std::pair{exact.beta2, truth.beta2},
                          std::pair{exact.c, truth.c}})
  {
    worst = std::max(worst, std::abs(est / tru - 1.0));
  }
  o.require(worst < kRoundTripRelative, fmt::format("noise-free relative error {:.2e}", worst));

  spec.noise_sd   = kMonteCarloNoise;
  int    covered  = 0;
  int    cases    = 0;
  double max_orth = 0.0;
  for (int rep = 0; rep < kMonteCarloReps; ++rep)
  {
    spec.seed         = 1000 + static_cast<std::uint64_t>(rep);
    auto const panel  = synthesize_panel(spec);
    auto const fit    = econometrics::estimate_usage_equation(panel, UsageMetric::UniqueVisitors);
    std::array const t{truth.c, truth.beta1, truth.beta2};
    for (std::size_t k = 0; k < 3; ++k)
    {
      ++cases;
      covered += std::abs(fit.coefficients[k] - t[k]) <= kCoverageHalfWidth * fit.standard_errors[k];
    }
    std::array<double, 3> dot{};
    std::size_t           row = 0;
    for (int w : panel.complete_weeks(UsageMetric::UniqueVisitors))
    {
      for (auto p : kPlatforms)
      {
        double const r = fit.residuals[row++];
        dot[0] += r;
        dot[1] += r * std::log(panel.find(w, p)->listings);
        dot[2] += r * std::log(panel.find(w, rival(p))->listings);
      }
    }
    for (double d : dot)
    {
      max_orth = std::max(max_orth, std::abs(d));
    }
  }
  double const coverage = static_cast<double>(covered) / cases;
  o.require(coverage >= kCoverageFloor, fmt::format("coverage {:.4f}", coverage));
  o.require(max_orth < kOrthogonality, fmt::format("residual orthogonality {:.2e}", max_orth));
  if (o.pass)
  {
    o.detail = fmt::format("noise-free rel err {:.1e}, coverage {}/{} = {:.3f}, max |X'e| {:.1e}", worst,
                           covered, cases, coverage, max_orth);
  }
  return o;
}

Outcome table3()
{
  Outcome     o;
  std::string values;
  for (auto metric : {UsageMetric::UniqueVisitors, UsageMetric::PageViews})
  {
    auto const fit  = econometrics::estimate_usage_equation(canonical_panel().panel, metric);
    auto const pub  = published_usage_params(metric);
    double const b1 = fit.coefficient(econometrics::kOwn);
    double const b2 = fit.coefficient(econometrics::kRival);
    double const r2 = fit.r_squared.value_or(0.0);
    o.require(b1 > 0.0 && b2 < 0.0, fmt::format("{} signs", metric_tag(metric)));
    o.require(std::abs(b1 / pub.beta1 - 1.0) <= kTable3Relative, fmt::format("{} own {:.3f}", metric_tag(metric), b1));
    o.require(std::abs(b2 / pub.beta2 - 1.0) <= kTable3Relative, fmt::format("{} rival {:.3f}", metric_tag(metric), b2));
    o.require(r2 >= kTable3MinR2, fmt::format("{} R2 {:.3f}", metric_tag(metric), r2));
    values += fmt::format("{}{}: own {:.3f} rival {:.3f} R2 {:.3f}", values.empty() ? "" : "; ",
                          metric_tag(metric), b1, b2, r2);
  }
  if (o.pass)
  {
    o.detail = values;
  }
  return o;
}

double log_revenue(RevenueParams const &rev, UsageParams const &use, double le, double ly, PlatformId site)
{
  PerPlatform<double> l;
  l[E] = std::exp(le);
  l[Y] = std::exp(ly);
  return std::log(revenue_at(induced_state(use, l), rev, site));
}

Outcome feedback()
{
  Outcome    o;
  auto const market  = equilibrium::calibrated_market(UsageMetric::UniqueVisitors);
  auto const problem = market.elastic_entry_problem();
  equilibrium::EquilibriumSolution at;
  at.state        = market.observed;
  auto const stab = equilibrium::stability_analysis(problem, at);
  o.require(std::abs(stab.own_exponent - kOwnExponent) <= kOwnExponentAbs,
            fmt::format("own exponent {:.6f}", stab.own_exponent));
  o.require(stab.feedback == equilibrium::FeedbackSign::Positive, "feedback not positive");
  o.require(stab.classification == equilibrium::Classification::Stable && stab.map_spectral_radius < 1.0,
            fmt::format("classification {} radius {}", equilibrium::to_string(stab.classification),
                        stab.map_spectral_radius));

  auto const m  = reduced_form_exponents(market.rev, market.use);
  double const h = 1e-5;
  double const le = std::log(market.observed.listings[E]), ly = std::log(market.observed.listings[Y]);
  double worst = 0.0;
  for (auto site : kPlatforms)
  {
    std::size_t const i = index(site);
    double const d_e = (log_revenue(market.rev, market.use, le + h, ly, site) -
                        log_revenue(market.rev, market.use, le - h, ly, site)) / (2 * h);
    double const d_y = (log_revenue(market.rev, market.use, le, ly + h, site) -
                        log_revenue(market.rev, market.use, le, ly - h, site)) / (2 * h);
    worst = std::max(worst, std::abs(d_e / m[i][0] - 1.0));
    worst = std::max(worst, std::abs(d_y / m[i][1] - 1.0));
  }
  o.require(worst < kFiniteDiffRelative, fmt::format("finite-difference rel err {:.2e}", worst));
  if (o.pass)
  {
    o.detail = fmt::format("own exponent {:.5f}, positive feedback, stable (radius {:.4f}), FD rel err {:.1e}",
                           stab.own_exponent, stab.map_spectral_radius, worst);
  }
  return o;
}

Outcome solver_contracts()
{
  Outcome o;

  equilibrium::EquilibriumProblem sym;
  sym.rev.a     = 20.0;
  sym.rev.b     = 0.0216;
  sym.use.beta1 = 1.989;
  sym.use.beta2 = -1.876;
  sym.fees[E]   = FeePair{0.03, 0.3};
  sym.fees[Y]   = FeePair{0.03, 0.3};
  sym.closure   = equilibrium::FixedTotal{9171.0};
  auto const s  = equilibrium::solve_fixed_total(sym);
  o.require(std::abs(s.root_shares[s.selected_root] - 0.5) < kShareTolerance,
            fmt::format("symmetric share {}", s.root_shares[s.selected_root]));

  std::size_t roots = s.roots.size();
  double      worst = 0.0;
  bool        conserved = true;
  auto check = [&](equilibrium::EquilibriumProblem const &p, equilibrium::EquilibriumSolution const &sol) {
    double const total = std::get<equilibrium::FixedTotal>(p.closure).total_listings;
    for (auto const &r : sol.roots)
    {
      worst     = std::max(worst, std::abs(indifference_residual(r, p.rev, p.use, p.fees)));
      conserved = conserved && (r.listings[E] + r.listings[Y] == total);
    }
  };
  check(sym, s);

  std::string shares;
  for (auto metric : {UsageMetric::UniqueVisitors, UsageMetric::PageViews})
  {
    auto const market = equilibrium::calibrated_market(metric);
    auto const p      = market.fixed_total_problem();
    auto const sol    = equilibrium::solve_fixed_total(p);
    check(p, sol);
    roots += sol.roots.size();
    double const observed = published::kListingsE / (published::kListingsE + published::kListingsY);
    bool found = false;
    for (double sh : sol.root_shares)
    {
      found = found || std::abs(sh - observed) < kShareTolerance;
    }
    o.require(found, fmt::format("{}: observed share not a root", metric_tag(metric)));
    shares += fmt::format(" {}={:.6f}", metric_tag(metric), sol.root_shares[sol.selected_root]);
  }
  o.require(worst < kResidualTolerance, fmt::format("max residual {:.2e}", worst));
  o.require(conserved, "total listings not conserved exactly");
  if (o.pass)
  {
    o.detail = fmt::format("symmetric s=0.5, {} roots with max |residual| {:.1e}, totals exact, calibrated roots{}",
                           roots, worst, shares);
  }
  return o;
}

Outcome counterfactual_direction()
{
  Outcome     o;
  std::string values;
  for (auto metric : {UsageMetric::UniqueVisitors, UsageMetric::PageViews})
  {
    auto const market = equilibrium::calibrated_market(metric);
    auto base         = market.elastic_entry_problem();
    base.fees         = equilibrium::fees_fall2000();
    auto const cf = equilibrium::counterfactual_compare(base, equilibrium::fees_2001(), {}, market.observed);
    o.require(cf.listing_delta[Y] < 0.0, fmt::format("{}: Yahoo delta {}", metric_tag(metric), cf.listing_delta[Y]));
    o.require(cf.listing_delta[E] >= 0.0, fmt::format("{}: eBay delta {}", metric_tag(metric), cf.listing_delta[E]));
    values += fmt::format("{}{} elastic-entry: E {:+.1f} Y {:+.1f}", values.empty() ? "" : "; ",
                          metric_tag(metric), cf.listing_delta[E], cf.listing_delta[Y]);

    auto fixed = market.fixed_total_problem();
    fixed.fees = equilibrium::fees_fall2000();
    try
    {
      auto const ft = equilibrium::counterfactual_compare(fixed, equilibrium::fees_2001(), {}, market.observed);
      values += fmt::format(" (fixed-total: E {:+.1f} Y {:+.1f})", ft.listing_delta[E], ft.listing_delta[Y]);
    }
    catch (SolverError const &e)
    {
      values += fmt::format(" (fixed-total: {})", e.what());
    }
  }
  o.detail = o.pass ? values : o.detail + " | " + values;
  return o;
}

std::string capture(std::string const &command)
{
  std::string out;
  FILE *pipe = popen(command.c_str(), "r");
  if (pipe == nullptr)
  {
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t            n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
  {
    out.append(buf.data(), n);
  }
  pclose(pipe);
  return out;
}

Outcome determinism()
{
  Outcome o;
  std::string a, b, c;
  if (!g_cli_path.empty())
  {
    std::string const cmd = "'" + g_cli_path + "' replicate --seed 2001 --format csv";
    a = capture(cmd);
    b = capture(cmd);
    c = capture("'" + g_cli_path + "' replicate --seed 2002 --format csv");
  }
  else
  {
    std::ostringstream oa, ob, oc, err;
    cli::run({"replicate", "--seed", "2001", "--format", "csv"}, oa, err);
    cli::run({"replicate", "--seed", "2001", "--format", "csv"}, ob, err);
    cli::run({"replicate", "--seed", "2002", "--format", "csv"}, oc, err);
    a = oa.str();
    b = ob.str();
    c = oc.str();
  }
  o.require(!a.empty(), "replicate produced no output");
  o.require(a == b, "outputs differ");
  o.require(a != c, "seed has no effect");
  if (o.pass)
  {
    o.detail = fmt::format("{} identical bytes across two {} runs", a.size(),
                           g_cli_path.empty() ? "in-process" : "process");
  }
  return o;
}

}  // namespace

int main(int argc, char **argv)
{
  if (argc > 1)
  {
    g_cli_path = argv[1];
  }
  struct Criterion
  {
    int                       id;
    char const               *name;
    std::function<Outcome()> run;
  };
  Criterion const criteria[] = {{1, "fee engine exactness", fee_exactness},
                                {2, "fee table round trip", fee_table_round_trip},
                                {3, "revenue elasticity on the canonical panel", table2},
                                {4, "usage estimator validity", estimator_validity},
                                {5, "usage equation sign and magnitude", table3},
                                {6, "feedback classification", feedback},
                                {7, "equilibrium solver contracts", solver_contracts},
                                {8, "counterfactual direction", counterfactual_direction},
                                {9, "replicate determinism", determinism}};
  int failures = 0;
  for (auto const &c : criteria)
  {
    auto const start = std::chrono::steady_clock::now();
    Outcome    out;
    try
    {
      out = c.run();
    }
    catch (std::exception const &e)
    {
      out.pass   = false;
      out.detail = std::string("exception: ") + e.what();
    }
    auto const ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    failures += out.pass ? 0 : 1;
    fmt::print("{} criterion {}: {} [{:.0f} ms] {}\n", out.pass ? "PASS" : "FAIL", c.id, c.name, ms, out.detail);
  }
  fmt::print("{} of 9 criteria passed\n", 9 - failures);
  return failures == 0 ? 0 : 1;
}
