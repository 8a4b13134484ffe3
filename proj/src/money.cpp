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
#include "auctionmkt/errors.hpp"
#include "auctionmkt/config.hpp"

#include <cctype>
#include <cstdlib>
#include <limits>

namespace auctionmkt {
namespace {

constexpr std::int64_t kMaxWholeDollars = 1'000'000'000'000;  // keeps cents × ppm in int64

// Parses "<digits>[.<up to max_decimals digits>]" into an integer scaled by
// 10^max_decimals. Returns false on any syntax problem.
bool parse_fixed(std::string_view text, int max_decimals, std::int64_t &out)
{
  if (text.empty())
  {
    return false;
  }
  std::int64_t whole = 0;
  std::size_t  i     = 0;
  bool         any   = false;
  for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i)
  {
    whole = whole * 10 + (text[i] - '0');
    any   = true;
    if (whole > kMaxWholeDollars)
    {
      return false;
    }
  }
  std::int64_t frac   = 0;
  int          digits = 0;
  if (i < text.size() && text[i] == '.')
  {
    ++i;
    for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i)
    {
      if (++digits > max_decimals)
      {
        return false;
      }
      frac = frac * 10 + (text[i] - '0');
      any  = true;
    }
  }
  if (!any || i != text.size())
  {
    return false;
  }
  std::int64_t scale = 1;
  for (int d = 0; d < max_decimals; ++d)
  {
    scale *= 10;
  }
  for (int d = digits; d < max_decimals; ++d)
  {
    frac *= 10;
  }
  out = whole * scale + frac;
  return true;
}

}  // namespace

Money Money::from_cents(std::int64_t cents)
{
  if (cents < 0)
  {
    throw ValidationError("money amounts must be non-negative");
  }
  return Money(cents);
}

Money Money::parse(std::string_view text)
{
  auto t = trim(text);
  if (!t.empty() && t.front() == '$')
  {
    t.remove_prefix(1);
  }
  std::int64_t cents = 0;
  if (!parse_fixed(t, 2, cents))
  {
    throw ValidationError("not a dollar amount with at most two decimals: '" + std::string(text) + "'");
  }
  return Money(cents);
}

std::string Money::to_string() const
{
  auto frac = std::to_string(cents_ % 100);
  if (frac.size() < 2)
  {
    frac.insert(0, 1, '0');
  }
  return std::to_string(cents_ / 100) + "." + frac;
}

Rate Rate::from_ppm(std::int64_t ppm)
{
  if (ppm < 0 || ppm > 1'000'000)
  {
    throw ValidationError("rate must lie in [0, 1]");
  }
  return Rate(ppm);
}

Rate Rate::parse(std::string_view text)
{
  std::int64_t ppm = 0;
  if (!parse_fixed(trim(text), 6, ppm))
  {
    throw ValidationError("not a decimal rate with at most six decimals: '" + std::string(text) + "'");
  }
  return from_ppm(ppm);
}

std::string Rate::to_string() const
{
  auto frac = std::to_string(ppm_ % 1'000'000);
  frac.insert(0, 6 - frac.size(), '0');
  while (frac.size() > 1 && frac.back() == '0')
  {
    frac.pop_back();
  }
  return std::to_string(ppm_ / 1'000'000) + "." + frac;
}

Money ExactAmount::round_to_cents() const
{
  if (units_ < 0)
  {
    throw ValidationError("cannot present a negative amount as Money");
  }
  return Money::from_cents((units_ + kUnitsPerCent / 2) / kUnitsPerCent);
}

std::string ExactAmount::to_string() const
{
  std::int64_t const magnitude = units_ < 0 ? -units_ : units_;
  auto               frac      = std::to_string(magnitude % kUnitsPerDollar);
  frac.insert(0, 8 - frac.size(), '0');
  while (frac.size() > 2 && frac.back() == '0')
  {
    frac.pop_back();
  }
  return (units_ < 0 ? "-" : "") + std::to_string(magnitude / kUnitsPerDollar) + "." + frac;
}

}  // namespace auctionmkt
