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

#include "auctionmkt/config.hpp"
#include "auctionmkt/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace auctionmkt {

std::string_view trim(std::string_view text) noexcept
{
  auto const first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos)
  {
    return {};
  }
  auto const last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

FlatConfig parse_flat_config(std::string_view text)
{
  FlatConfig  config;
  std::size_t line_no = 0;
  std::size_t pos     = 0;
  while (pos <= text.size())
  {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos)
    {
      end = text.size();
    }
    ++line_no;
    auto const line = trim(text.substr(pos, end - pos));
    pos             = end + 1;

    if (line.empty() || line.front() == '#')
    {
      continue;
    }
    auto const eq = line.find('=');
    if (eq == std::string_view::npos)
    {
      throw ParseError(line_no, "expected 'key = value'");
    }
    std::string key{trim(line.substr(0, eq))};
    std::string value{trim(line.substr(eq + 1))};
    if (key.empty())
    {
      throw ParseError(line_no, "empty key");
    }
    if (!config.emplace(key, value).second)
    {
      throw ParseError(line_no, "duplicate key '" + key + "'");
    }
  }
  return config;
}

FlatConfig read_flat_config(std::filesystem::path const &path)
{
  return parse_flat_config(read_text_file(path));
}

std::string format_flat_config(FlatConfig const &config)
{
  std::string out;
  for (auto const &[key, value] : config)
  {
    out += key;
    out += " = ";
    out += value;
    out += '\n';
  }
  return out;
}

double parse_real(std::string_view text, std::string_view what)
{
  auto const t = trim(text);
  double     value{};
  auto const [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(value))
  {
    throw ValidationError(std::string(what) + ": not a finite number: '" + std::string(text) + "'");
  }
  return value;
}

long long parse_integer(std::string_view text, std::string_view what)
{
  auto const t = trim(text);
  long long  value{};
  auto const [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size())
  {
    throw ValidationError(std::string(what) + ": not an integer: '" + std::string(text) + "'");
  }
  return value;
}

std::string read_text_file(std::filesystem::path const &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    throw IoError("cannot open '" + path.string() + "' for reading");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad())
  {
    throw IoError("error reading '" + path.string() + "'");
  }
  return buffer.str();
}

void write_text_file(std::filesystem::path const &path, std::string_view text)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
  {
    throw IoError("cannot open '" + path.string() + "' for writing");
  }
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out)
  {
    throw IoError("error writing '" + path.string() + "'");
  }
}

}  // namespace auctionmkt
