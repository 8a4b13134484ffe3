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

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

namespace auctionmkt {

/// Flat `key = value` configuration. Blank lines and lines starting with '#'
/// are ignored; whitespace around keys and values is trimmed. Duplicate keys
/// are a ParseError.
using FlatConfig = std::map<std::string, std::string>;

FlatConfig parse_flat_config(std::string_view text);
FlatConfig read_flat_config(std::filesystem::path const &path);
std::string format_flat_config(FlatConfig const &config);

/// Parses a finite double, rejecting trailing garbage.
double parse_real(std::string_view text, std::string_view what);
long long parse_integer(std::string_view text, std::string_view what);

std::string read_text_file(std::filesystem::path const &path);
void write_text_file(std::filesystem::path const &path, std::string_view text);

std::string_view trim(std::string_view text) noexcept;

}  // namespace auctionmkt
