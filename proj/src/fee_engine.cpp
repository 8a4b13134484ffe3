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

#include "auctionmkt/fee_engine.hpp"
#include "auctionmkt/config.hpp"
#include "auctionmkt/errors.hpp"

#include <algorithm>
#include <fmt/format.h>

namespace auctionmkt {
namespace fees {
namespace {

Money usd(std::int64_t cents)
{
  return Money::from_cents(cents);
}

std::vector<BracketFee> brackets(std::int64_t f1, std::int64_t f2, std::int64_t f3, std::int64_t f4,
                                 std::int64_t f5)
{
  return {
      {usd(1), usd(999), usd(f1)},
      {usd(1000), usd(2499), usd(f2)},
      {usd(2500), usd(4999), usd(f3)},
      {usd(5000), usd(19999), usd(f4)},
      {usd(20000), std::nullopt, usd(f5)},
  };
}

void check_ordered(Money lower, std::optional<Money> const &upper, std::size_t k, char const *table)
{
  if (upper && *upper < lower)
  {
    throw ValidationError(fmt::format("{} entry {}: upper bound below lower bound", table, k + 1));
  }
}

ExactAmount difference(FeeSchedule const &first, FeeSchedule const &second, Money opening,
                       Money closing)
{
  return total_fee(first, opening, closing) - total_fee(second, opening, closing);
}

double ratio(ExactAmount amount, Money closing)
{
  return static_cast<double>(amount.units()) /
         static_cast<double>(ExactAmount::from_money(closing).units());
}

Rate last_rate(FeeSchedule const &s)
{
  return s.final_value().empty() ? Rate{} : s.final_value().back().rate;
}

std::optional<Money> parse_upper(std::string_view text)
{
  auto const t = trim(text);
  if (t.empty() || t == "inf" || t == "*")
  {
    return std::nullopt;
  }
  return Money::parse(t);
}

std::vector<std::string> split_commas(std::string const &value)
{
  std::vector<std::string> parts;
  std::size_t              pos = 0;
  while (true)
  {
    auto const comma = value.find(',', pos);
    parts.emplace_back(trim(std::string_view(value).substr(pos, comma - pos)));
    if (comma == std::string::npos)
    {
      break;
    }
    pos = comma + 1;
  }
  return parts;
}

}  // namespace

FeeSchedule::FeeSchedule(PlatformId platform, std::vector<BracketFee> insertion,
                         std::vector<MarginalTier> final_value)
  : platform_(platform)
  , insertion_(std::move(insertion))
  , final_value_(std::move(final_value))
{
  if (insertion_.empty())
  {
    throw ValidationError("fee schedule needs at least one insertion bracket");
  }
  if (insertion_.front().lower != usd(1))
  {
    throw ValidationError("insertion brackets must start at $0.01");
  }
  for (std::size_t k = 0; k < insertion_.size(); ++k)
  {
    auto const &b = insertion_[k];
    check_ordered(b.lower, b.upper, k, "insertion");
    bool const last = k + 1 == insertion_.size();
    if (!last)
    {
      if (!b.upper)
      {
        throw ValidationError("only the last insertion bracket may be unbounded");
      }
      if (insertion_[k + 1].lower.cents() != b.upper->cents() + 1)
      {
        throw ValidationError(
            fmt::format("insertion brackets {} and {} are not contiguous", k + 1, k + 2));
      }
    }
  }
  if (insertion_.back().upper)
  {
    throw ValidationError("the last insertion bracket must be unbounded");
  }

  if (!final_value_.empty())
  {
    if (final_value_.front().lower != Money{})
    {
      throw ValidationError("final-value tiers must start at $0");
    }
    for (std::size_t k = 0; k < final_value_.size(); ++k)
    {
      auto const &t = final_value_[k];
      check_ordered(t.lower, t.upper, k, "finalvalue");
      if (k + 1 < final_value_.size())
      {
        if (!t.upper || final_value_[k + 1].lower != *t.upper)
        {
          throw ValidationError(
              fmt::format("final-value tiers {} and {} are not contiguous", k + 1, k + 2));
        }
      }
    }
    if (final_value_.back().upper)
    {
      throw ValidationError("the last final-value tier must be unbounded");
    }
  }
}

bool FeeSchedule::operator==(FeeSchedule const &o) const
{
  auto same_bracket = [](BracketFee const &a, BracketFee const &b) {
    return a.lower == b.lower && a.upper == b.upper && a.fee == b.fee;
  };
  auto same_tier = [](MarginalTier const &a, MarginalTier const &b) {
    return a.lower == b.lower && a.upper == b.upper && a.rate == b.rate;
  };
  return platform_ == o.platform_ &&
         std::equal(insertion_.begin(), insertion_.end(), o.insertion_.begin(),
                    o.insertion_.end(), same_bracket) &&
         std::equal(final_value_.begin(), final_value_.end(), o.final_value_.begin(),
                    o.final_value_.end(), same_tier);
}

FeeSchedule const &ebay_schedule()
{
  static FeeSchedule const schedule(PlatformId::E, brackets(30, 55, 110, 220, 330),
                                    {
                                        {usd(0), usd(2500), Rate::from_ppm(50'000)},
                                        {usd(2500), usd(100000), Rate::from_ppm(25'000)},
                                        {usd(100000), std::nullopt, Rate::from_ppm(12'500)},
                                    });
  return schedule;
}

FeeSchedule const &yahoo_schedule()
{
  static FeeSchedule const schedule(PlatformId::Y, brackets(20, 35, 75, 150, 150), {});
  return schedule;
}

FeeSchedule const &yahoo_fall2000_schedule()
{
  static FeeSchedule const schedule(PlatformId::Y, {{usd(1), std::nullopt, usd(0)}}, {});
  return schedule;
}

FeeSchedule const &builtin_schedule(PlatformId platform)
{
  return platform == PlatformId::E ? ebay_schedule() : yahoo_schedule();
}

Money insertion_fee(FeeSchedule const &schedule, Money opening_value)
{
  if (opening_value.cents() < 1)
  {
    throw ValidationError("opening value must be at least $0.01, got $" + opening_value.to_string());
  }
  for (auto const &b : schedule.insertion())
  {
    if (opening_value >= b.lower && (!b.upper || opening_value <= *b.upper))
    {
      return b.fee;
    }
  }
  // Unreachable for a validated schedule.
  throw ValidationError("no insertion bracket contains $" + opening_value.to_string());
}

ExactAmount final_value_fee(FeeSchedule const &schedule, Money closing_value)
{
  ExactAmount fee;
  for (auto const &tier : schedule.final_value())
  {
    if (closing_value <= tier.lower)
    {
      break;
    }
    auto const top   = tier.upper ? std::min(closing_value, *tier.upper) : closing_value;
    auto const slice = Money::from_cents(top.cents() - tier.lower.cents());
    fee += ExactAmount::product(slice, tier.rate);
  }
  return fee;
}

ExactAmount total_fee(FeeSchedule const &schedule, Money opening_value, Money closing_value)
{
  if (closing_value < opening_value)
  {
    throw ValidationError("closing value $" + closing_value.to_string() +
                          " is below the opening value $" + opening_value.to_string() +
                          "; the item would not have sold");
  }
  return ExactAmount::from_money(insertion_fee(schedule, opening_value)) +
         final_value_fee(schedule, closing_value);
}

ExactAmount fee_differential(FeeSchedule const &first, FeeSchedule const &second,
                             Money opening_value, Money closing_value)
{
  return difference(first, second, opening_value, closing_value);
}

double effective_alpha_bar(FeeSchedule const &first, FeeSchedule const &second,
                           Money opening_value, Money closing_value)
{
  if (closing_value.cents() == 0)
  {
    throw ValidationError("closing value must be positive to express fees as a fraction");
  }
  return ratio(difference(first, second, opening_value, closing_value), closing_value);
}

double effective_alpha_bar(Money opening_value, Money closing_value)
{
  return effective_alpha_bar(ebay_schedule(), yahoo_schedule(), opening_value, closing_value);
}

AlphaRange achievable_alpha_range(FeeSchedule const &first, FeeSchedule const &second,
                                  Money opening_value)
{
  return {last_rate(first).value() - last_rate(second).value(),
          effective_alpha_bar(first, second, opening_value, opening_value)};
}

Money implied_closing_value(FeeSchedule const &first, FeeSchedule const &second,
                            double alpha_target, Money opening_value)
{
  auto const range = achievable_alpha_range(first, second, opening_value);
  if (alpha_target >= range.ceiling)
  {
    return opening_value;
  }
  auto const no_solution = [&] {
    return SolverError(fmt::format(
        "no closing value reaches effective alpha {:g}; achievable range is ({:g}, {:g}]",
        alpha_target, range.floor, range.ceiling));
  };
  if (alpha_target <= range.floor)
  {
    throw no_solution();
  }

  auto const alpha_at = [&](std::int64_t cents) {
    return effective_alpha_bar(first, second, opening_value, Money::from_cents(cents));
  };

  // Expand until the target is bracketed: alpha(lo) > target >= alpha(hi).
  std::int64_t lo = opening_value.cents();
  std::int64_t hi = std::max<std::int64_t>(lo * 2, lo + 1);
  constexpr std::int64_t kCeilingCents = std::int64_t{100} * 1'000'000'000'000;
  while (alpha_at(hi) > alpha_target)
  {
    lo = hi;
    if (hi >= kCeilingCents)
    {
      throw no_solution();
    }
    hi = std::min(hi * 2, kCeilingCents);
  }
  while (hi - lo > 1)
  {
    auto const mid = lo + (hi - lo) / 2;
    if (alpha_at(mid) > alpha_target)
    {
      lo = mid;
    }
    else
    {
      hi = mid;
    }
  }
  return Money::from_cents(hi);
}

Money implied_closing_value(double alpha_target, Money opening_value)
{
  return implied_closing_value(ebay_schedule(), yahoo_schedule(), alpha_target, opening_value);
}

bool is_schedule_key(std::string const &key)
{
  return key.starts_with("insertion.") || key.starts_with("finalvalue.");
}

PerPlatform<FeeSchedule> schedules_from_entries(std::map<std::string, std::string> const &entries)
{
  struct Collected
  {
    std::map<long long, BracketFee>   insertion;
    std::map<long long, MarginalTier> final_value;
  };
  PerPlatform<Collected> collected;

  for (auto const &[key, value] : entries)
  {
    if (!is_schedule_key(key))
    {
      continue;
    }
    auto const first_dot  = key.find('.');
    auto const second_dot = key.find('.', first_dot + 1);
    if (second_dot == std::string::npos)
    {
      throw ValidationError("malformed fee key '" + key + "' (expected <table>.<platform>.<k>)");
    }
    auto const table    = key.substr(0, first_dot);
    auto const platform = parse_platform(key.substr(first_dot + 1, second_dot - first_dot - 1));
    auto const k        = parse_integer(key.substr(second_dot + 1), key);
    auto const parts    = split_commas(value);
    if (parts.size() != 3)
    {
      throw ValidationError("fee entry '" + key + "' needs three comma-separated fields");
    }
    if (table == "insertion")
    {
      collected[platform].insertion[k] =
          BracketFee{Money::parse(parts[0]), parse_upper(parts[1]), Money::parse(parts[2])};
    }
    else
    {
      collected[platform].final_value[k] =
          MarginalTier{Money::parse(parts[0]), parse_upper(parts[1]), Rate::parse(parts[2])};
    }
  }

  auto build = [&](PlatformId p) {
    auto const &c = collected[p];
    if (c.insertion.empty())
    {
      if (!c.final_value.empty())
      {
        throw ValidationError(fmt::format("platform {} has finalvalue entries but no insertion entries",
                                          to_char(p)));
      }
      return builtin_schedule(p);
    }
    std::vector<BracketFee>   ins;
    std::vector<MarginalTier> fv;
    for (auto const &[k, b] : c.insertion)
    {
      ins.push_back(b);
    }
    for (auto const &[k, t] : c.final_value)
    {
      fv.push_back(t);
    }
    return FeeSchedule(p, std::move(ins), std::move(fv));
  };
  return PerPlatform<FeeSchedule>{{build(PlatformId::E), build(PlatformId::Y)}};
}

std::map<std::string, std::string> schedule_entries(FeeSchedule const &schedule)
{
  std::map<std::string, std::string> out;
  auto const p     = to_char(schedule.platform());
  auto const upper = [](std::optional<Money> const &u) { return u ? u->to_string() : std::string{}; };
  for (std::size_t k = 0; k < schedule.insertion().size(); ++k)
  {
    auto const &b = schedule.insertion()[k];
    out[fmt::format("insertion.{}.{}", p, k + 1)] =
        fmt::format("{},{},{}", b.lower.to_string(), upper(b.upper), b.fee.to_string());
  }
  for (std::size_t k = 0; k < schedule.final_value().size(); ++k)
  {
    auto const &t = schedule.final_value()[k];
    out[fmt::format("finalvalue.{}.{}", p, k + 1)] =
        fmt::format("{},{},{}", t.lower.to_string(), upper(t.upper), t.rate.to_string());
  }
  return out;
}

}  // namespace fees
}  // namespace auctionmkt
