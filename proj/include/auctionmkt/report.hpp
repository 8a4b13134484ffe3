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

#include "auctionmkt/config.hpp"
#include "auctionmkt/econometrics.hpp"
#include "auctionmkt/equilibrium.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace auctionmkt {

enum class OutputFormat
{
  Text,
  Csv,
  Markdown
};

OutputFormat     parse_format(std::string_view text);
std::string_view format_tag(OutputFormat format) noexcept;

/// Pre-formatted cells; rendering only lays them out.
struct Table
{
  std::string                           title;
  std::vector<std::string>              columns;
  std::vector<std::vector<std::string>> rows;
};

struct Report
{
  FlatConfig         config;  // echoed as the header
  std::vector<Table> tables;
};

std::string render_report(Report const &report, OutputFormat format);

/// Shortest round-trip representation (`{}` formatting).
std::string format_number(double value);

Table fit_table(std::string title, econometrics::OlsFit const &fit);
Table fit_statistics_table(std::string title, econometrics::OlsFit const &fit);

Table solution_table(equilibrium::EquilibriumSolution const &solution);  // one row per root
Table stability_table(equilibrium::StabilityReport const &stability);
Table trajectory_table(equilibrium::Trajectory const &trajectory);      // one row per period

/// Before, after and delta blocks.
std::vector<Table> counterfactual_tables(equilibrium::Counterfactual const &cf);

}  // namespace auctionmkt
