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

#include "auctionmkt/platform.hpp"
#include "auctionmkt/errors.hpp"
#include "auctionmkt/config.hpp"

namespace auctionmkt {

std::string_view platform_name(PlatformId p) noexcept
{
  return p == PlatformId::E ? "eBay" : "Yahoo!Auctions";
}

PlatformId parse_platform(std::string_view text)
{
  auto const t = trim(text);
  if (t == "E" || t == "e")
  {
    return PlatformId::E;
  }
  if (t == "Y" || t == "y")
  {
    return PlatformId::Y;
  }
  throw ValidationError("unknown platform '" + std::string(text) + "' (expected E or Y)");
}

}  // namespace auctionmkt
