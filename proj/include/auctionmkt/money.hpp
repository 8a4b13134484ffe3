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

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace auctionmkt {

/// Whole US cents. Non-negative by construction.
class Money
{
public:
  constexpr Money() = default;

  static Money from_cents(std::int64_t cents);

  /// Parses "15", "15.0", "15.00" or "$15.00". At most two decimals.
  static Money parse(std::string_view text);

  constexpr std::int64_t cents() const noexcept
  {
    return cents_;
  }

  double dollars() const noexcept
  {
    return static_cast<double>(cents_) / 100.0;
  }

  std::string to_string() const;  // always two decimals

  auto operator<=>(Money const &) const = default;

private:
  constexpr explicit Money(std::int64_t cents)
    : cents_(cents)
  {}

  std::int64_t cents_ = 0;
};

/// Fractional rate held as integer parts per million (0.025 == 25000 ppm).
class Rate
{
public:
  constexpr Rate() = default;

  static Rate from_ppm(std::int64_t ppm);

  /// Parses a decimal fraction such as "0.0125"; at most six decimals, in [0, 1].
  static Rate parse(std::string_view text);

  constexpr std::int64_t ppm() const noexcept
  {
    return ppm_;
  }

  double value() const noexcept
  {
    return static_cast<double>(ppm_) / 1e6;
  }

  std::string to_string() const;

  auto operator<=>(Rate const &) const = default;

private:
  constexpr explicit Rate(std::int64_t ppm)
    : ppm_(ppm)
  {}

  std::int64_t ppm_ = 0;
};

/// Exact dollar amount with 1e-8 dollar resolution. A cent times a ppm rate
/// lands exactly on this grid, so marginal fee slices never round.
class ExactAmount
{
public:
  static constexpr std::int64_t kUnitsPerCent   = 1'000'000;
  static constexpr std::int64_t kUnitsPerDollar = 100 * kUnitsPerCent;

  constexpr ExactAmount() = default;

  static constexpr ExactAmount from_units(std::int64_t units) noexcept
  {
    return ExactAmount(units);
  }

  static constexpr ExactAmount from_money(Money m) noexcept
  {
    return ExactAmount(m.cents() * kUnitsPerCent);
  }

  /// cents × ppm is exact in 1e-8 dollar units.
  static constexpr ExactAmount product(Money m, Rate r) noexcept
  {
    return ExactAmount(m.cents() * r.ppm());
  }

  constexpr std::int64_t units() const noexcept
  {
    return units_;
  }

  double dollars() const noexcept
  {
    return static_cast<double>(units_) / static_cast<double>(kUnitsPerDollar);
  }

  /// Nearest cent, ties away from zero (half-up for non-negative amounts).
  Money round_to_cents() const;

  /// Shortest exact decimal with at least two decimals: "2.425", "0.35", "38.125".
  std::string to_string() const;

  constexpr ExactAmount operator+(ExactAmount o) const noexcept
  {
    return ExactAmount(units_ + o.units_);
  }
  constexpr ExactAmount operator-(ExactAmount o) const noexcept
  {
    return ExactAmount(units_ - o.units_);
  }
  constexpr ExactAmount &operator+=(ExactAmount o) noexcept
  {
    units_ += o.units_;
    return *this;
  }

  auto operator<=>(ExactAmount const &) const = default;

private:
  constexpr explicit ExactAmount(std::int64_t units)
    : units_(units)
  {}

  std::int64_t units_ = 0;
};

}  // namespace auctionmkt
