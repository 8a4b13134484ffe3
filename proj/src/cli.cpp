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

#include "auctionmkt/cli.hpp"
#include "auctionmkt/canonical_panel.hpp"
#include "auctionmkt/config.hpp"
#include "auctionmkt/dataset.hpp"
#include "auctionmkt/econometrics.hpp"
#include "auctionmkt/equilibrium.hpp"
#include "auctionmkt/errors.hpp"
#include "auctionmkt/fee_engine.hpp"
#include "auctionmkt/market_model.hpp"
#include "auctionmkt/report.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <functional>
#include <map>
#include <memory>
#include <ostream>

namespace auctionmkt {
namespace cli {
namespace {

namespace eq = equilibrium;
namespace ec = econometrics;

constexpr char const *kBuiltinPanel = "builtin:canonical";

struct Context
{
  FlatConfig   settings;  // config file < --set < global flags, defaults filled in
  FlatConfig   header;
  OutputFormat format = OutputFormat::Text;
};

struct Command
{
  std::string                          path;
  CLI::App                            *app = nullptr;
  std::map<std::string, std::string>   values;
  std::map<std::string, bool>          flags;
  std::function<Report(Command &, Context &)> handler;

  std::string const &value(std::string const &name) const
  {
    return values.at(name);
  }
};

FlatConfig default_settings()
{
  return {{"format", "text"},
          {"seed", "1"},
          {"solver.damping", "0.2"},
          {"solver.grid_points", "512"},
          {"solver.max_periods", "100000"},
          {"solver.tolerance", "1e-10"}};
}

bool is_known_key(std::string const &key)
{
  return is_param_key(key) || fees::is_schedule_key(key) || default_settings().count(key) > 0;
}

FlatConfig filter(FlatConfig const &cfg, bool (*pred)(std::string const &))
{
  FlatConfig out;
  for (auto const &[k, v] : cfg)
  {
    if (pred(k))
    {
      out.emplace(k, v);
    }
  }
  return out;
}

PerPlatform<fees::FeeSchedule> schedules(Context const &ctx)
{
  return fees::schedules_from_entries(filter(ctx.settings, fees::is_schedule_key));
}

eq::SolverSettings solver_settings(Context const &ctx)
{
  eq::SolverSettings s;
  s.tolerance   = parse_real(ctx.settings.at("solver.tolerance"), "solver.tolerance");
  s.damping     = parse_real(ctx.settings.at("solver.damping"), "solver.damping");
  auto const gp = parse_integer(ctx.settings.at("solver.grid_points"), "solver.grid_points");
  auto const mp = parse_integer(ctx.settings.at("solver.max_periods"), "solver.max_periods");
  if (gp < 16)
  {
    throw ValidationError("solver.grid_points must be at least 16");
  }
  if (mp < 1)
  {
    throw ValidationError("solver.max_periods must be positive");
  }
  s.grid_points = static_cast<std::size_t>(gp);
  s.max_periods = static_cast<std::size_t>(mp);
  return s;
}

std::uint64_t seed_of(Context const &ctx)
{
  auto const seed = parse_integer(ctx.settings.at("seed"), "seed");
  if (seed < 0)
  {
    throw ValidationError("seed must be non-negative");
  }
  return static_cast<std::uint64_t>(seed);
}

Panel load_panel(std::string const &path)
{
  if (path == kBuiltinPanel)
  {
    return canonical_panel().panel;
  }
  return parse_panel(read_text_file(path));
}

std::string optional_number(std::optional<double> v)
{
  return v ? format_number(*v) : std::string{};
}

Table panel_table(Panel const &panel)
{
  Table t{"panel",
          {"week", "site", "listings_thousands", "unique_visitors_thousands",
           "page_views_thousands"},
          {}};
  for (auto const &o : panel.observations())
  {
    t.rows.push_back({std::to_string(o.week), std::string(1, to_char(o.site)),
                      format_number(o.listings), optional_number(o.unique_visitors),
                      optional_number(o.page_views)});
  }
  return t;
}

// --- fees -------------------------------------------------------------------

Report fees_quote(Command &cmd, Context &ctx)
{
  auto const site     = parse_platform(cmd.value("platform"));
  auto const sched    = schedules(ctx);
  auto const opening  = Money::parse(cmd.value("opening"));
  auto const &s       = sched[site];
  auto const ins      = fees::insertion_fee(s, opening);

  Table t{"fee quote", {"platform", "opening", "closing", "insertion_fee", "final_value_fee", "total_fee"}, {}};
  if (cmd.value("closing").empty())
  {
    t.rows.push_back({std::string(1, to_char(site)), opening.to_string(), "", ins.to_string(), "", ""});
  }
  else
  {
    auto const closing = Money::parse(cmd.value("closing"));
    auto const total   = fees::total_fee(s, opening, closing);
    t.rows.push_back({std::string(1, to_char(site)), opening.to_string(), closing.to_string(),
                      ins.to_string(), fees::final_value_fee(s, closing).to_string(),
                      total.to_string()});
  }
  return Report{ctx.header, {t}};
}

Report fees_alpha(Command &cmd, Context &ctx)
{
  auto const sched   = schedules(ctx);
  auto const opening = Money::parse(cmd.value("opening"));
  auto const closing = Money::parse(cmd.value("closing"));
  auto const &e      = sched[PlatformId::E];
  auto const &y      = sched[PlatformId::Y];

  Table t{"fee differential",
          {"opening", "closing", "total_fee_E", "total_fee_Y", "differential", "alpha_bar"},
          {}};
  t.rows.push_back({opening.to_string(), closing.to_string(),
                    fees::total_fee(e, opening, closing).to_string(),
                    fees::total_fee(y, opening, closing).to_string(),
                    fees::fee_differential(e, y, opening, closing).to_string(),
                    format_number(fees::effective_alpha_bar(e, y, opening, closing))});
  return Report{ctx.header, {t}};
}

Report fees_invert(Command &cmd, Context &ctx)
{
  auto const sched   = schedules(ctx);
  auto const opening = Money::parse(cmd.value("opening"));
  double const alpha = parse_real(cmd.value("alpha"), "alpha");
  auto const &e      = sched[PlatformId::E];
  auto const &y      = sched[PlatformId::Y];
  auto const range   = fees::achievable_alpha_range(e, y, opening);
  auto const closing = fees::implied_closing_value(e, y, alpha, opening);

  Table t{"implied closing value",
          {"alpha_target", "opening", "closing", "alpha_bar_at_closing", "alpha_floor", "alpha_ceiling"},
          {}};
  t.rows.push_back({format_number(alpha), opening.to_string(), closing.to_string(),
                    format_number(fees::effective_alpha_bar(e, y, opening, closing)),
                    format_number(range.floor), format_number(range.ceiling)});
  return Report{ctx.header, {t}};
}

// --- data -------------------------------------------------------------------

Report data_parse(Command &cmd, Context &ctx)
{
  return Report{ctx.header, {panel_table(load_panel(cmd.value("panel")))}};
}

Report data_stats(Command &cmd, Context &ctx)
{
  auto const panel = load_panel(cmd.value("panel"));
  auto const stats = summary_stats(panel);
  Table t{"summary",
          {"site", "weeks", "mean_listings", "mean_unique_visitors", "mean_page_views",
           "mean_uv_per_listing", "mean_pv_per_listing", "uv_weeks", "pv_weeks"},
          {}};
  for (auto p : kPlatforms)
  {
    auto const &s = stats.sites[p];
    t.rows.push_back({std::string(1, to_char(p)), std::to_string(s.weeks),
                      format_number(s.mean_listings), format_number(s.mean_unique_visitors),
                      format_number(s.mean_page_views), format_number(s.mean_uv_per_listing),
                      format_number(s.mean_pv_per_listing), std::to_string(s.uv_weeks),
                      std::to_string(s.pv_weeks)});
  }
  Table c{"complete weeks", {"metric", "weeks"}, {}};
  c.rows.push_back({"uv", std::to_string(stats.complete_uv_weeks)});
  c.rows.push_back({"pv", std::to_string(stats.complete_pv_weeks)});
  return Report{ctx.header, {t, c}};
}

Report data_synth(Command &cmd, Context &ctx)
{
  Panel panel;
  if (cmd.flags.at("canonical"))
  {
    panel = canonical_panel().panel;
  }
  else
  {
    auto const metric = parse_metric(cmd.value("metric"));
    SynthesisSpec spec;
    spec.metric   = metric;
    spec.use      = published_usage_params(metric);
    RevenueParams unused;
    apply_param_entries(filter(ctx.settings, is_param_key), unused, spec.use);
    spec.listings = canonical_listing_paths();
    spec.noise_sd = parse_real(cmd.value("noise"), "noise");
    spec.seed     = seed_of(ctx);
    spec.missing  = published::missing_usage();
    panel         = synthesize_panel(spec);
    for (auto const &[k, v] : param_entries(unused, spec.use))
    {
      if (k.rfind("use.", 0) == 0)
      {
        ctx.header[k] = v;
      }
    }
  }

  auto const &out_path = cmd.value("out");
  if (!out_path.empty())
  {
    write_text_file(out_path, serialize_panel(panel));
    Table t{"written", {"path", "rows"}, {}};
    t.rows.push_back({out_path, std::to_string(panel.observations().size())});
    return Report{ctx.header, {t}};
  }
  return Report{ctx.header, {panel_table(panel)}};
}

// --- estimate ---------------------------------------------------------------

Report estimate_revenue(Command &cmd, Context &ctx)
{
  auto const panel  = load_panel(cmd.value("panel"));
  auto const metric = parse_metric(cmd.value("metric"));
  double const a    = parse_real(cmd.value("alpha"), "alpha");
  auto const fit    = ec::estimate_revenue_elasticity(panel, a, metric);
  return Report{ctx.header,
                {fit_table("revenue elasticity", fit), fit_statistics_table("fit", fit)}};
}

Report estimate_usage(Command &cmd, Context &ctx)
{
  auto const panel  = load_panel(cmd.value("panel"));
  auto const metric = parse_metric(cmd.value("metric"));
  auto const fit    = ec::estimate_usage_equation(panel, metric);
  return Report{ctx.header, {fit_table("usage equation", fit), fit_statistics_table("fit", fit)}};
}

// --- equilibrium ------------------------------------------------------------

bool is_estimate_key(std::string const &key)
{
  return key == "rev.b" || key == "rev.gamma" || key == "use.beta1" || key == "use.beta2" ||
         key == "use.c";
}

bool is_calibrated_key(std::string const &key)
{
  return is_param_key(key) && !is_estimate_key(key);
}

PlatformFees scenario(std::string const &name, PerPlatform<fees::FeeSchedule> const &sched,
                      Money opening, Money closing)
{
  if (name == "2001")
  {
    return scenario_fees(sched[PlatformId::E], sched[PlatformId::Y], opening, closing);
  }
  if (name == "fall2000")
  {
    return scenario_fees(sched[PlatformId::E], fees::yahoo_fall2000_schedule(), opening, closing);
  }
  throw ValidationError("unknown fee scenario '" + name + "' (expected 2001 or fall2000)");
}

struct Market
{
  eq::CalibratedMarket           calibrated;
  PerPlatform<fees::FeeSchedule> sched;
  Money                          opening;
  Money                          closing;
};

// Published estimates, overridden by rev.b/rev.gamma/use.beta*/use.c, are
// calibrated to the observed averages at the 2001 fees; rev.a, rev.xi.Y and
// use.eta.* then override the calibrated values.
Market build_market(Command &cmd, Context &ctx)
{
  auto const metric  = parse_metric(cmd.value("metric"));
  auto const sched   = schedules(ctx);
  auto const opening = Money::parse(cmd.value("opening"));
  auto const closing = Money::parse(cmd.value("closing"));

  RevenueParams rev;
  rev.b    = published_revenue_elasticity(metric);
  auto use = published_usage_params(metric);
  apply_param_entries(filter(ctx.settings, is_estimate_key), rev, use);

  auto market = eq::calibrated_market(metric, rev, use, scenario("2001", sched, opening, closing),
                                      closing.dollars());
  apply_param_entries(filter(ctx.settings, is_calibrated_key), market.rev, market.use);
  market.rev.validate();
  market.use.validate();
  for (auto const &[k, v] : param_entries(market.rev, market.use))
  {
    ctx.header[k] = v;
  }
  ctx.header["outside_option"] = format_number(market.common_net_revenue);
  return Market{market, sched, opening, closing};
}

eq::EquilibriumProblem problem_for(Market const &m, std::string const &closure)
{
  if (closure == "fixed-total")
  {
    return m.calibrated.fixed_total_problem();
  }
  if (closure == "elastic-entry")
  {
    return m.calibrated.elastic_entry_problem();
  }
  throw ValidationError("unknown closure '" + closure + "' (expected fixed-total or elastic-entry)");
}

Table fee_table(std::string title, PlatformFees const &f)
{
  Table t{std::move(title), {"site", "alpha", "insertion_fee"}, {}};
  for (auto p : kPlatforms)
  {
    t.rows.push_back({std::string(1, to_char(p)), format_number(f[p].alpha), format_number(f[p].insertion)});
  }
  return t;
}

Report equilibrium_solve(Command &cmd, Context &ctx)
{
  auto const market = build_market(cmd, ctx);
  auto problem      = problem_for(market, cmd.value("closure"));
  problem.fees      = scenario(cmd.value("scenario"), market.sched, market.opening, market.closing);
  auto const sol    = eq::solve(problem, solver_settings(ctx));
  return Report{ctx.header,
                {fee_table("fees", problem.fees), solution_table(sol), stability_table(sol.stability)}};
}

Report equilibrium_dynamics(Command &cmd, Context &ctx)
{
  auto const market = build_market(cmd, ctx);
  auto problem      = problem_for(market, "elastic-entry");
  problem.fees      = scenario(cmd.value("scenario"), market.sched, market.opening, market.closing);
  double const d    = parse_real(cmd.value("perturb"), "perturb");
  if (!(d > -1.0 && d < 1.0))
  {
    throw ValidationError("perturb must lie in (-1, 1)");
  }
  auto const settings = solver_settings(ctx);
  MarketState start   = market.calibrated.observed;
  start.listings[PlatformId::E] *= 1.0 + d;
  start.listings[PlatformId::Y] *= 1.0 - d;
  auto const path = eq::iterate_dynamics(problem, start, settings.damping, settings.max_periods,
                                         settings.tolerance);
  Table status{"status", {"converged", "diverged", "periods", "stop_reason"}, {}};
  status.rows.push_back({path.converged ? "true" : "false", path.diverged ? "true" : "false",
                         std::to_string(path.periods), path.stop_reason});
  return Report{ctx.header, {status, trajectory_table(path)}};
}

Report equilibrium_counterfactual(Command &cmd, Context &ctx)
{
  auto const market = build_market(cmd, ctx);
  auto base         = problem_for(market, cmd.value("closure"));
  base.fees         = scenario(cmd.value("from"), market.sched, market.opening, market.closing);
  auto const to     = scenario(cmd.value("to"), market.sched, market.opening, market.closing);
  auto const cf     = eq::counterfactual_compare(base, to, solver_settings(ctx),
                                                 market.calibrated.observed);
  std::vector<Table> tables{fee_table("fees before", base.fees), fee_table("fees after", to)};
  auto blocks = counterfactual_tables(cf);
  tables.insert(tables.end(), blocks.begin(), blocks.end());
  return Report{ctx.header, tables};
}

// --- replicate --------------------------------------------------------------

Report replicate(Command &, Context &ctx)
{
  std::vector<Table> tables;
  auto const sched = schedules(ctx);

  Table brackets{"insertion fees", {"site", "opening_from", "opening_to", "fee"}, {}};
  for (auto p : kPlatforms)
  {
    for (auto const &b : sched[p].insertion())
    {
      brackets.rows.push_back({std::string(1, to_char(p)), b.lower.to_string(),
                               b.upper ? b.upper->to_string() : "", b.fee.to_string()});
    }
  }
  tables.push_back(std::move(brackets));

  Table quotes{"fee examples",
               {"opening", "closing", "total_fee_E", "differential", "alpha_bar"},
               {}};
  for (auto cents : {5000, 10000})
  {
    auto const opening = Money::from_cents(1500);
    auto const closing = Money::from_cents(cents);
    auto const &e      = sched[PlatformId::E];
    auto const &y      = sched[PlatformId::Y];
    quotes.rows.push_back({opening.to_string(), closing.to_string(),
                           fees::total_fee(e, opening, closing).to_string(),
                           fees::fee_differential(e, y, opening, closing).to_string(),
                           format_number(fees::effective_alpha_bar(e, y, opening, closing))});
  }
  tables.push_back(std::move(quotes));

  auto const &panel = canonical_panel().panel;
  Table revenue{"revenue elasticity", {"metric", "alpha_bar", "estimate", "std_error", "observations"}, {}};
  for (auto metric : {UsageMetric::UniqueVisitors, UsageMetric::PageViews})
  {
    for (double a : {0.04, 0.033, 0.025})
    {
      auto const fit = ec::estimate_revenue_elasticity(panel, a, metric);
      revenue.rows.push_back({std::string(metric_tag(metric)), format_number(a),
                              format_number(fit.coefficients[0]),
                              format_number(fit.standard_errors[0]),
                              std::to_string(fit.n_observations)});
    }
  }
  tables.push_back(std::move(revenue));

  for (auto metric : {UsageMetric::UniqueVisitors, UsageMetric::PageViews})
  {
    auto const fit = ec::estimate_usage_equation(panel, metric);
    auto const tag = std::string(metric_tag(metric));
    tables.push_back(fit_table("usage equation (" + tag + ")", fit));
    tables.push_back(fit_statistics_table("usage fit (" + tag + ")", fit));
  }

  auto const settings = solver_settings(ctx);
  for (auto metric : {UsageMetric::UniqueVisitors, UsageMetric::PageViews})
  {
    auto const tag    = std::string(metric_tag(metric));
    auto const market = eq::calibrated_market(metric);
    auto const fixed  = eq::solve(market.fixed_total_problem(), settings);
    auto sol          = solution_table(fixed);
    sol.title += " " + tag;
    tables.push_back(std::move(sol));
    auto stab  = stability_table(fixed.stability);
    stab.title = "stability (fixed-total) " + tag;
    tables.push_back(std::move(stab));

    for (auto const *closure : {"elastic-entry", "fixed-total"})
    {
      auto base = std::string(closure) == "fixed-total" ? market.fixed_total_problem()
                                                        : market.elastic_entry_problem();
      base.fees = eq::fees_fall2000();
      auto const cf = eq::counterfactual_compare(base, eq::fees_2001(), settings, market.observed);
      for (auto t : counterfactual_tables(cf))
      {
        t.title = "Yahoo fees introduced " + tag + ", " + t.title;
        tables.push_back(std::move(t));
      }
    }
  }

  SynthesisSpec spec;
  spec.metric   = UsageMetric::UniqueVisitors;
  spec.use      = published_usage_params(spec.metric);
  spec.listings = canonical_listing_paths();
  spec.noise_sd = 0.05;
  spec.seed     = seed_of(ctx);
  spec.missing  = published::missing_usage();
  auto const mc = ec::estimate_usage_equation(synthesize_panel(spec), spec.metric);
  tables.push_back(fit_table("usage equation on a noisy synthetic panel (uv, noise 0.05)", mc));

  return Report{ctx.header, tables};
}

// --- wiring -----------------------------------------------------------------

struct Globals
{
  std::string              config_path;
  std::vector<std::string> sets;
  std::string              format;
  std::string              seed;
  std::string              damping;
  std::string              tolerance;
  std::string              grid_points;
  std::string              max_periods;
};

FlatConfig resolve_settings(Globals const &g)
{
  FlatConfig merged;
  if (!g.config_path.empty())
  {
    merged = read_flat_config(g.config_path);
  }
  for (auto const &item : g.sets)
  {
    auto const eq = item.find('=');
    if (eq == std::string::npos)
    {
      throw ValidationError("--set expects key=value, got '" + item + "'");
    }
    merged[std::string(trim(std::string_view(item).substr(0, eq)))] =
        std::string(trim(std::string_view(item).substr(eq + 1)));
  }
  std::pair<char const *, std::string const *> const flags[] = {
      {"format", &g.format},
      {"seed", &g.seed},
      {"solver.damping", &g.damping},
      {"solver.tolerance", &g.tolerance},
      {"solver.grid_points", &g.grid_points},
      {"solver.max_periods", &g.max_periods}};
  for (auto const &[key, value] : flags)
  {
    if (!value->empty())
    {
      merged[key] = *value;
    }
  }
  for (auto const &[k, v] : merged)
  {
    if (!is_known_key(k))
    {
      throw ValidationError("unknown configuration key '" + k + "'");
    }
  }
  for (auto const &[k, v] : default_settings())
  {
    merged.emplace(k, v);
  }
  return merged;
}

class Cli
{
public:
  Cli()
  {
    app_.name("auctionmkt");
    app_.description("Two-site auction market: fees, estimation and equilibrium");
    app_.require_subcommand(1);
    app_.fallthrough();
    app_.add_option("--config", globals_.config_path, "key = value file merged beneath flags");
    app_.add_option("--set", globals_.sets, "override one configuration key (key=value)");
    app_.add_option("--format", globals_.format, "text, csv or markdown");
    app_.add_option("--seed", globals_.seed, "random seed");
    app_.add_option("--damping", globals_.damping, "adjustment damping in (0, 1]");
    app_.add_option("--tolerance", globals_.tolerance, "solver tolerance");
    app_.add_option("--grid-points", globals_.grid_points, "share grid size");
    app_.add_option("--max-periods", globals_.max_periods, "iteration cap");

    auto *fees_group = group("fees", "fee schedules");
    auto &quote      = command(fees_group, "quote", "fees for one listing", fees_quote);
    option(quote, "platform", "E or Y", "E");
    option(quote, "opening", "opening value in dollars", "", true);
    option(quote, "closing", "closing value in dollars", "");
    auto &alpha = command(fees_group, "alpha", "fee differential as a fraction of the sale", fees_alpha);
    option(alpha, "opening", "opening value in dollars", "", true);
    option(alpha, "closing", "closing value in dollars", "", true);
    auto &invert = command(fees_group, "invert", "closing value giving a target differential", fees_invert);
    option(invert, "alpha", "target differential fraction", "", true);
    option(invert, "opening", "opening value in dollars", "", true);

    auto *data_group = group("data", "weekly panels");
    auto &parse      = command(data_group, "parse", "validate and echo a panel", data_parse);
    option(parse, "panel", "panel CSV or builtin:canonical", "", true);
    auto &stats = command(data_group, "stats", "panel averages", data_stats);
    option(stats, "panel", "panel CSV or builtin:canonical", "", true);
    auto &synth = command(data_group, "synth", "generate a panel", data_synth);
    option(synth, "metric", "uv or pv", "uv");
    option(synth, "noise", "log-noise standard deviation", "0.05");
    option(synth, "out", "write the panel CSV here", "");
    flag(synth, "canonical", "emit the canonical panel");

    auto *est_group = group("estimate", "regressions");
    auto &revenue   = command(est_group, "revenue", "revenue elasticity", estimate_revenue);
    option(revenue, "panel", "panel CSV or builtin:canonical", "", true);
    option(revenue, "alpha", "fee differential fraction", "0.04");
    option(revenue, "metric", "uv or pv", "uv");
    auto &usage = command(est_group, "usage", "usage equation", estimate_usage);
    option(usage, "panel", "panel CSV or builtin:canonical", "", true);
    option(usage, "metric", "uv or pv", "uv");

    auto *eq_group = group("equilibrium", "equilibrium analysis of the calibrated market");
    auto &solve    = command(eq_group, "solve", "equilibrium and stability", equilibrium_solve);
    market_options(solve);
    option(solve, "closure", "fixed-total or elastic-entry", "fixed-total");
    option(solve, "scenario", "fee scenario: 2001 or fall2000", "2001");
    auto &dyn = command(eq_group, "dynamics", "adjustment path from a perturbed start", equilibrium_dynamics);
    market_options(dyn);
    option(dyn, "scenario", "fee scenario: 2001 or fall2000", "2001");
    option(dyn, "perturb", "relative shift of listings toward eBay", "0.05");
    auto &cf = command(eq_group, "counterfactual", "compare two fee scenarios", equilibrium_counterfactual);
    market_options(cf);
    option(cf, "closure", "fixed-total or elastic-entry", "elastic-entry");
    option(cf, "from", "base fee scenario", "fall2000");
    option(cf, "to", "modified fee scenario", "2001");

    command(&app_, "replicate", "fee tables, estimates and equilibrium analysis end to end", replicate);
  }

  int run(std::vector<std::string> const &args, std::ostream &out, std::ostream &err)
  {
    try
    {
      std::vector<std::string> reversed(args.rbegin(), args.rend());
      app_.parse(reversed);
    }
    catch (CLI::CallForHelp const &)
    {
      out << app_.help();
      return kOk;
    }
    catch (CLI::CallForAllHelp const &)
    {
      out << app_.help("", CLI::AppFormatMode::All);
      return kOk;
    }
    catch (CLI::ParseError const &e)
    {
      err << "error: " << e.what() << '\n';
      return kValidationError;
    }

    try
    {
      Command *selected = nullptr;
      for (auto &c : commands_)
      {
        if (c->app->parsed())
        {
          selected = c.get();
        }
      }
      if (selected == nullptr)
      {
        throw ValidationError("no subcommand given");
      }
      Context ctx;
      ctx.settings = resolve_settings(globals_);
      ctx.format   = parse_format(ctx.settings.at("format"));
      ctx.header   = ctx.settings;
      ctx.header["command"] = selected->path;
      for (auto const &[k, v] : selected->values)
      {
        ctx.header["arg." + k] = v;
      }
      for (auto const &[k, v] : selected->flags)
      {
        ctx.header["arg." + k] = v ? "true" : "false";
      }
      auto const report = selected->handler(*selected, ctx);
      out << render_report(report, ctx.format);
      return kOk;
    }
    catch (IoError const &e)
    {
      err << "error: " << e.what() << '\n';
      return kIoError;
    }
    catch (ValidationError const &e)
    {
      err << "error: " << e.what() << '\n';
      return kValidationError;
    }
    catch (SolverError const &e)
    {
      err << "error: " << e.what() << '\n';
      return kSolverError;
    }
    catch (std::exception const &e)
    {
      err << "error: " << e.what() << '\n';
      return kValidationError;
    }
  }

private:
  using Handler = Report (*)(Command &, Context &);

  CLI::App *group(std::string const &name, std::string const &description)
  {
    auto *g = app_.add_subcommand(name, description);
    g->require_subcommand(1);
    g->fallthrough();
    return g;
  }

  Command &command(CLI::App *parent, std::string const &name, std::string const &description,
                   Handler handler)
  {
    auto c     = std::make_unique<Command>();
    c->app     = parent->add_subcommand(name, description);
    c->path    = parent == &app_ ? name : parent->get_name() + " " + name;
    c->handler = handler;
    c->app->fallthrough();
    commands_.push_back(std::move(c));
    return *commands_.back();
  }

  static void option(Command &c, std::string const &name, std::string const &description,
                     std::string const &fallback, bool required = false)
  {
    c.values[name] = fallback;
    auto *o        = c.app->add_option("--" + name, c.values[name], description);
    if (required)
    {
      o->required();
    }
    else if (!fallback.empty())
    {
      o->default_str(fallback);
    }
  }

  static void flag(Command &c, std::string const &name, std::string const &description)
  {
    c.flags[name] = false;
    c.app->add_flag("--" + name, c.flags[name], description);
  }

  static void market_options(Command &c)
  {
    option(c, "metric", "uv or pv", "uv");
    option(c, "opening", "opening value of the representative sale", "15.00");
    option(c, "closing", "closing value of the representative sale", "50.00");
  }

  CLI::App                              app_;
  Globals                               globals_;
  std::vector<std::unique_ptr<Command>> commands_;
};

}  // namespace

int run(std::vector<std::string> const &args, std::ostream &out, std::ostream &err)
{
  Cli cli;
  return cli.run(args, out, err);
}

}  // namespace cli
}  // namespace auctionmkt
