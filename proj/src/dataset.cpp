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
#include "auctionmkt/config.hpp"
#include "auctionmkt/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <random>

namespace auctionmkt {
namespace {

void check_value(double v, char const *what, int week, PlatformId site)
{
  if (!(v > 0.0) || !std::isfinite(v))
  {
    throw ValidationError(
        fmt::format("week {} site {}: {} must be positive, got {}", week, to_char(site), what, v));
  }
}

std::vector<std::string_view> split_fields(std::string_view line)
{
  std::vector<std::string_view> fields;
  std::size_t                   pos = 0;
  while (true)
  {
    auto const comma = line.find(',', pos);
    fields.push_back(trim(line.substr(pos, comma == std::string_view::npos ? comma : comma - pos)));
    if (comma == std::string_view::npos)
    {
      return fields;
    }
    pos = comma + 1;
  }
}

std::optional<double> optional_field(std::string_view field, std::size_t line, char const *name)
{
  if (field.empty())
  {
    return std::nullopt;
  }
  double v = 0.0;
  try
  {
    v = parse_real(field, name);
  }
  catch (ValidationError const &e)
  {
    throw ParseError(line, e.what());
  }
  if (!(v > 0.0))
  {
    throw ParseError(line, fmt::format("{} must be positive, got {}", name, v));
  }
  return v;
}

std::string format_value(std::optional<double> v)
{
  return v ? fmt::format("{:.6g}", *v) : std::string{};
}

double mean(std::vector<double> const &xs)
{
  if (xs.empty())
  {
    return std::numeric_limits<double>::quiet_NaN();
  }
  double sum = 0.0;
  for (double x : xs)
  {
    sum += x;
  }
  return sum / static_cast<double>(xs.size());
}

}  // namespace

Panel::Panel(std::vector<WeeklyObservation> observations)
  : observations_(std::move(observations))
{
  for (auto const &o : observations_)
  {
    if (o.week < 1)
    {
      throw ValidationError(fmt::format("week index must be positive, got {}", o.week));
    }
    check_value(o.listings, "listings", o.week, o.site);
    if (o.unique_visitors)
    {
      check_value(*o.unique_visitors, "unique visitors", o.week, o.site);
    }
    if (o.page_views)
    {
      check_value(*o.page_views, "page views", o.week, o.site);
    }
  }
  auto key = [](WeeklyObservation const &o) { return std::pair{o.week, index(o.site)}; };
  std::stable_sort(observations_.begin(), observations_.end(),
                   [&](auto const &a, auto const &b) { return key(a) < key(b); });
  auto const dup = std::adjacent_find(observations_.begin(), observations_.end(),
                                      [&](auto const &a, auto const &b) { return key(a) == key(b); });
  if (dup != observations_.end())
  {
    throw ValidationError(
        fmt::format("duplicate observation for week {} site {}", dup->week, to_char(dup->site)));
  }
}

WeeklyObservation const *Panel::find(int week, PlatformId site) const
{
  for (auto const &o : observations_)
  {
    if (o.week == week && o.site == site)
    {
      return &o;
    }
  }
  return nullptr;
}

std::vector<int> Panel::weeks() const
{
  std::vector<int> out;
  for (auto const &o : observations_)
  {
    if (out.empty() || out.back() != o.week)
    {
      out.push_back(o.week);
    }
  }
  return out;
}

std::vector<int> Panel::complete_weeks(UsageMetric metric) const
{
  std::vector<int> out;
  for (int week : weeks())
  {
    auto const *e = find(week, PlatformId::E);
    auto const *y = find(week, PlatformId::Y);
    if (e && y && e->usage(metric) && y->usage(metric))
    {
      out.push_back(week);
    }
  }
  return out;
}

Panel parse_panel(std::string_view text)
{
  std::vector<WeeklyObservation> rows;
  std::size_t                    line_no = 0;
  std::size_t                    pos     = 0;
  bool                           header  = false;
  while (pos < text.size())
  {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos)
    {
      end = text.size();
    }
    ++line_no;
    auto const line = trim(text.substr(pos, end - pos));
    pos             = end + 1;
    if (!header)
    {
      if (line != kPanelHeader)
      {
        throw ParseError(line_no, "expected header '" + std::string(kPanelHeader) + "'");
      }
      header = true;
      continue;
    }
    if (line.empty())
    {
      continue;
    }
    auto const f = split_fields(line);
    if (f.size() != 5)
    {
      throw ParseError(line_no, fmt::format("expected 5 fields, found {}", f.size()));
    }
    WeeklyObservation o;
    int               week{};
    auto const [ptr, ec] = std::from_chars(f[0].data(), f[0].data() + f[0].size(), week);
    if (f[0].empty() || ec != std::errc{} || ptr != f[0].data() + f[0].size() || week < 1)
    {
      throw ParseError(line_no, "week must be a positive integer, got '" + std::string(f[0]) + "'");
    }
    o.week = week;
    try
    {
      o.site = parse_platform(f[1]);
    }
    catch (ValidationError const &e)
    {
      throw ParseError(line_no, e.what());
    }
    auto listings = optional_field(f[2], line_no, "listings");
    if (!listings)
    {
      throw ParseError(line_no, "listings are required");
    }
    o.listings        = *listings;
    o.unique_visitors = optional_field(f[3], line_no, "unique visitors");
    o.page_views      = optional_field(f[4], line_no, "page views");
    rows.push_back(o);
  }
  return Panel(std::move(rows));
}

std::string serialize_panel(Panel const &panel)
{
  std::string out(kPanelHeader);
  out += '\n';
  for (auto const &o : panel.observations())
  {
    out += fmt::format("{},{},{:.6g},{},{}\n", o.week, to_char(o.site), o.listings,
                       format_value(o.unique_visitors), format_value(o.page_views));
  }
  return out;
}

Panel complete_weeks(Panel const &panel, UsageMetric metric)
{
  auto const                     keep = panel.complete_weeks(metric);
  std::vector<WeeklyObservation> rows;
  for (auto const &o : panel.observations())
  {
    if (std::binary_search(keep.begin(), keep.end(), o.week))
    {
      rows.push_back(o);
    }
  }
  return Panel(std::move(rows));
}

SummaryStats summary_stats(Panel const &panel)
{
  if (panel.empty())
  {
    throw ValidationError("summary statistics need a non-empty panel");
  }
  SummaryStats stats;
  for (auto p : kPlatforms)
  {
    std::vector<double> listings, uv, pv, uv_ratio, pv_ratio;
    for (auto const &o : panel.observations())
    {
      if (o.site != p)
      {
        continue;
      }
      listings.push_back(o.listings);
      if (o.unique_visitors)
      {
        uv.push_back(*o.unique_visitors);
        uv_ratio.push_back(*o.unique_visitors / o.listings);
      }
      if (o.page_views)
      {
        pv.push_back(*o.page_views);
        pv_ratio.push_back(*o.page_views / o.listings);
      }
    }
    auto &s                = stats.sites[p];
    s.mean_listings        = mean(listings);
    s.mean_unique_visitors = mean(uv);
    s.mean_page_views      = mean(pv);
    s.mean_uv_per_listing  = mean(uv_ratio);
    s.mean_pv_per_listing  = mean(pv_ratio);
    s.weeks                = listings.size();
    s.uv_weeks             = uv.size();
    s.pv_weeks             = pv.size();
  }
  stats.complete_uv_weeks = panel.complete_weeks(UsageMetric::UniqueVisitors).size();
  stats.complete_pv_weeks = panel.complete_weeks(UsageMetric::PageViews).size();
  return stats;
}

Panel synthesize_panel(SynthesisSpec const &spec)
{
  spec.use.validate();
  if (!(spec.noise_sd >= 0.0) || !std::isfinite(spec.noise_sd))
  {
    throw ValidationError("noise standard deviation must be non-negative");
  }
  auto const &lE = spec.listings[PlatformId::E];
  auto const &lY = spec.listings[PlatformId::Y];
  if (lE.size() != lY.size())
  {
    throw ValidationError("listing paths must have the same length on both sites");
  }

  std::mt19937_64                  rng(spec.seed);
  std::normal_distribution<double> noise(0.0, 1.0);

  std::vector<WeeklyObservation> rows;
  for (std::size_t t = 0; t < lE.size(); ++t)
  {
    int const week = static_cast<int>(t) + 1;
    for (auto p : kPlatforms)
    {
      double const own   = spec.listings[p][t];
      double const other = spec.listings[rival(p)][t];
      double const shock = noise(rng) * spec.noise_sd;
      double const u     = usage_level(spec.use, own, other, p) * std::exp(shock);

      WeeklyObservation o;
      o.week     = week;
      o.site     = p;
      o.listings = own;
      if (!spec.missing.contains({week, p}))
      {
        (spec.metric == UsageMetric::UniqueVisitors ? o.unique_visitors : o.page_views) = u;
      }
      rows.push_back(o);
    }
  }
  return Panel(std::move(rows));
}

double round_significant(double value)
{
  auto const text = fmt::format("{:.6g}", value);
  double     out{};
  std::from_chars(text.data(), text.data() + text.size(), out);
  return out;
}

}  // namespace auctionmkt
