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

#include "auctionmkt/money.hpp"
#include "auctionmkt/platform.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace auctionmkt {
namespace fees {

/// Flat insertion fee charged for opening values in [lower, upper] (both
/// inclusive, cent granularity). An absent upper bound means "and up".
struct BracketFee
{
  Money                lower;
  std::optional<Money> upper;
  Money                fee;
};

/// Final-value rate applied to the slice of the closing value in
/// (lower, upper]; the first tier starts at $0.
struct MarginalTier
{
  Money                lower;
  std::optional<Money> upper;
  Rate                 rate;
};

/// One platform's basic seller fees. An empty final-value table means the
/// platform charges no final-value fee.
class FeeSchedule
{
public:
  /// Validates contiguity: brackets start at $0.01 and follow each other cent
  /// by cent, tiers start at $0 and share endpoints. Only the last entry of
  /// each table may be unbounded.
  FeeSchedule(PlatformId platform, std::vector<BracketFee> insertion,
              std::vector<MarginalTier> final_value);

  PlatformId platform() const noexcept
  {
    return platform_;
  }
  std::vector<BracketFee> const &insertion() const noexcept
  {
    return insertion_;
  }
  std::vector<MarginalTier> const &final_value() const noexcept
  {
    return final_value_;
  }

  bool operator==(FeeSchedule const &) const;

private:
  PlatformId                platform_;
  std::vector<BracketFee>   insertion_;
  std::vector<MarginalTier> final_value_;
};

/// 2001 schedules.
FeeSchedule const &ebay_schedule();
FeeSchedule const &yahoo_schedule();
/// Fall-2000 Yahoo!Auctions: no fees at all.
FeeSchedule const &yahoo_fall2000_schedule();
FeeSchedule const &builtin_schedule(PlatformId platform);

Money       insertion_fee(FeeSchedule const &schedule, Money opening_value);
ExactAmount final_value_fee(FeeSchedule const &schedule, Money closing_value);

/// Insertion fee plus the unrounded final-value fee for an item that sold.
ExactAmount total_fee(FeeSchedule const &schedule, Money opening_value, Money closing_value);

/// (total_fee(first) − total_fee(second)) / closing value.
double effective_alpha_bar(FeeSchedule const &first, FeeSchedule const &second,
                           Money opening_value, Money closing_value);

/// eBay versus Yahoo!Auctions with the built-in 2001 schedules.
double effective_alpha_bar(Money opening_value, Money closing_value);

/// Exact fee differential in dollars, for reporting next to the ratio.
ExactAmount fee_differential(FeeSchedule const &first, FeeSchedule const &second,
                             Money opening_value, Money closing_value);

struct AlphaRange
{
  double floor;    // infimum as the closing value grows; never attained
  double ceiling;  // value at closing == opening
};

AlphaRange achievable_alpha_range(FeeSchedule const &first, FeeSchedule const &second,
                                  Money opening_value);

/// Smallest closing value (to the cent, ≥ opening) whose effective ᾱ does not
/// exceed alpha_target. Throws SolverError with the achievable range when the
/// target is at or below the asymptotic floor.
Money implied_closing_value(FeeSchedule const &first, FeeSchedule const &second,
                            double alpha_target, Money opening_value);
Money implied_closing_value(double alpha_target, Money opening_value);

/// Reads schedules from flat key=value entries:
///   insertion.<platform>.<k>  = lower,upper,fee
///   finalvalue.<platform>.<k> = lower,upper,rate
/// An empty upper (or "inf") is unbounded. Platforms without any entry fall
/// back to the built-in 2001 schedule. A platform with insertion entries and
/// no finalvalue entries charges no final-value fee.
PerPlatform<FeeSchedule> schedules_from_entries(std::map<std::string, std::string> const &entries);

/// Inverse of schedules_from_entries for one schedule.
std::map<std::string, std::string> schedule_entries(FeeSchedule const &schedule);

/// Is `key` a schedule key (insertion.* / finalvalue.*)?
bool is_schedule_key(std::string const &key);

}  // namespace fees
}  // namespace auctionmkt
