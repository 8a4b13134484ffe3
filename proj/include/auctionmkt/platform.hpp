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

#include <array>
#include <string>
#include <string_view>

namespace auctionmkt {

/// The two auction sites of the model: eBay and Yahoo!Auctions.
enum class PlatformId
{
  E,
  Y
};

inline constexpr std::array<PlatformId, 2> kPlatforms{PlatformId::E, PlatformId::Y};

constexpr PlatformId rival(PlatformId p) noexcept
{
  return p == PlatformId::E ? PlatformId::Y : PlatformId::E;
}

constexpr std::size_t index(PlatformId p) noexcept
{
  return p == PlatformId::E ? 0 : 1;
}

constexpr char to_char(PlatformId p) noexcept
{
  return p == PlatformId::E ? 'E' : 'Y';
}

std::string_view platform_name(PlatformId p) noexcept;

/// Accepts "E"/"Y" (case-insensitive); throws ValidationError otherwise.
PlatformId parse_platform(std::string_view text);

/// Fixed-size per-platform container indexed by PlatformId.
template <typename T>
struct PerPlatform
{
  std::array<T, 2> values{};

  T &operator[](PlatformId p) noexcept
  {
    return values[index(p)];
  }
  T const &operator[](PlatformId p) const noexcept
  {
    return values[index(p)];
  }

  bool operator==(PerPlatform const &) const = default;
};

}  // namespace auctionmkt
