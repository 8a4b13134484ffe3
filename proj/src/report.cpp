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

#include "auctionmkt/report.hpp"
#include "auctionmkt/errors.hpp"

#include <algorithm>
#include <fmt/format.h>

namespace auctionmkt {
namespace {

std::string csv_cell(std::string const &cell)
{
  if (cell.find_first_of(",\"\n") == std::string::npos)
  {
    return cell;
  }
  std::string out = "\"";
  for (char c : cell)
  {
    if (c == '"')
    {
      out += '"';
    }
    out += c;
  }
  return out + "\"";
}

std::string md_cell(std::string const &cell)
{
  std::string out;
  for (char c : cell)
  {
    if (c == '|')
    {
      out += '\\';
    }
    out += c;
  }
  return out;
}

void render_text(Report const &report, std::string &out)
{
  for (auto const &[k, v] : report.config)
  {
    out += fmt::format("# {} = {}\n", k, v);
  }
  for (auto const &table : report.tables)
  {
    out += '\n';
    if (!table.title.empty())
    {
      out += table.title + '\n';
    }
    std::vector<std::size_t> width(table.columns.size(), 0);
    for (std::size_t c = 0; c < table.columns.size(); ++c)
    {
      width[c] = table.columns[c].size();
      for (auto const &row : table.rows)
      {
        if (c < row.size())
        {
          width[c] = std::max(width[c], row[c].size());
        }
      }
    }
    auto const line = [&](std::vector<std::string> const &cells) {
      std::string l;
      for (std::size_t c = 0; c < width.size(); ++c)
      {
        std::string const cell = c < cells.size() ? cells[c] : std::string{};
        if (c + 1 == width.size())
        {
          l += cell;
        }
        else
        {
          l += cell + std::string(width[c] - cell.size() + 2, ' ');
        }
      }
      return l + '\n';
    };
    out += line(table.columns);
    for (auto const &row : table.rows)
    {
      out += line(row);
    }
  }
}

void render_csv(Report const &report, std::string &out)
{
  for (auto const &[k, v] : report.config)
  {
    out += fmt::format("# {} = {}\n", k, v);
  }
  bool first = true;
  for (auto const &table : report.tables)
  {
    if (!first)
    {
      out += '\n';
    }
    first = false;
    if (!table.title.empty())
    {
      out += "# " + table.title + '\n';
    }
    auto const line = [&](std::vector<std::string> const &cells) {
      std::string l;
      for (std::size_t c = 0; c < cells.size(); ++c)
      {
        l += (c ? "," : "") + csv_cell(cells[c]);
      }
      return l + '\n';
    };
    out += line(table.columns);
    for (auto const &row : table.rows)
    {
      out += line(row);
    }
  }
}

void render_markdown(Report const &report, std::string &out)
{
  out += "# Run configuration\n\n";
  if (report.config.empty())
  {
    out += "(defaults)\n";
  }
  for (auto const &[k, v] : report.config)
  {
    out += fmt::format("- `{}` = `{}`\n", k, v);
  }
  for (auto const &table : report.tables)
  {
    out += '\n';
    if (!table.title.empty())
    {
      out += "## " + table.title + "\n\n";
    }
    auto const line = [&](std::vector<std::string> const &cells) {
      std::string l = "|";
      for (auto const &cell : cells)
      {
        l += " " + md_cell(cell) + " |";
      }
      return l + '\n';
    };
    out += line(table.columns);
    out += "|";
    for (std::size_t c = 0; c < table.columns.size(); ++c)
    {
      out += " --- |";
    }
    out += '\n';
    for (auto const &row : table.rows)
    {
      out += line(row);
    }
  }
}

std::vector<std::string> state_cells(MarketState const &s)
{
  return {format_number(s.listings[PlatformId::E]), format_number(s.listings[PlatformId::Y]),
          format_number(s.usage[PlatformId::E]), format_number(s.usage[PlatformId::Y])};
}

}  // namespace

OutputFormat parse_format(std::string_view text)
{
  if (text == "text")
  {
    return OutputFormat::Text;
  }
  if (text == "csv")
  {
    return OutputFormat::Csv;
  }
  if (text == "markdown" || text == "md")
  {
    return OutputFormat::Markdown;
  }
  throw ValidationError("unknown output format '" + std::string(text) +
                        "' (expected text, csv or markdown)");
}

std::string_view format_tag(OutputFormat format) noexcept
{
  switch (format)
  {
  case OutputFormat::Text:
    return "text";
  case OutputFormat::Csv:
    return "csv";
  case OutputFormat::Markdown:
    break;
  }
  return "markdown";
}

std::string render_report(Report const &report, OutputFormat format)
{
  std::string out;
  switch (format)
  {
  case OutputFormat::Text:
    render_text(report, out);
    break;
  case OutputFormat::Csv:
    render_csv(report, out);
    break;
  case OutputFormat::Markdown:
    render_markdown(report, out);
    break;
  }
  return out;
}

std::string format_number(double value)
{
  return fmt::format("{}", value);
}

Table fit_table(std::string title, econometrics::OlsFit const &fit)
{
  Table t{std::move(title), {"term", "estimate", "std_error"}, {}};
  for (std::size_t i = 0; i < fit.coefficients.size(); ++i)
  {
    t.rows.push_back({fit.design_labels[i], format_number(fit.coefficients[i]),
                      format_number(fit.standard_errors[i])});
  }
  return t;
}

Table fit_statistics_table(std::string title, econometrics::OlsFit const &fit)
{
  Table t{std::move(title), {"statistic", "value"}, {}};
  t.rows.push_back({"observations", std::to_string(fit.n_observations)});
  if (fit.r_squared)
  {
    t.rows.push_back({"r_squared", format_number(*fit.r_squared)});
  }
  t.rows.push_back({"sigma2", format_number(fit.sigma2)});
  t.rows.push_back({"condition_number", format_number(fit.condition_number)});
  if (fit.ill_conditioned())
  {
    t.rows.push_back({"warning", "ill-conditioned design"});
  }
  return t;
}

Table solution_table(equilibrium::EquilibriumSolution const &solution)
{
  Table t{"equilibrium (" + solution.closure + ")",
          {"root", "selected", "share_E", "listings_E", "listings_Y", "usage_E", "usage_Y",
           "residual"},
          {}};
  for (std::size_t i = 0; i < solution.roots.size(); ++i)
  {
    std::vector<std::string> row{std::to_string(i + 1), i == solution.selected_root ? "yes" : "no",
                                 format_number(solution.root_shares[i])};
    auto cells = state_cells(solution.roots[i]);
    row.insert(row.end(), cells.begin(), cells.end());
    row.push_back(format_number(solution.root_residuals[i]));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table stability_table(equilibrium::StabilityReport const &s)
{
  Table t{"stability", {"quantity", "value"}, {}};
  t.rows.push_back({"own_exponent", format_number(s.own_exponent)});
  t.rows.push_back({"feedback", std::string(equilibrium::to_string(s.feedback))});
  t.rows.push_back({"map_EE", format_number(s.update_map[0][0])});
  t.rows.push_back({"map_EY", format_number(s.update_map[0][1])});
  t.rows.push_back({"map_YE", format_number(s.update_map[1][0])});
  t.rows.push_back({"map_YY", format_number(s.update_map[1][1])});
  t.rows.push_back({"map_spectral_radius", format_number(s.map_spectral_radius)});
  t.rows.push_back({"classification", std::string(equilibrium::to_string(s.classification))});
  t.rows.push_back({"damping", format_number(s.damping)});
  t.rows.push_back({"contraction_rate", format_number(s.contraction_rate)});
  if (s.reallocation_slope)
  {
    t.rows.push_back({"reallocation_slope", format_number(*s.reallocation_slope)});
  }
  return t;
}

Table trajectory_table(equilibrium::Trajectory const &trajectory)
{
  Table t{"trajectory", {"period", "listings_E", "listings_Y", "usage_E", "usage_Y"}, {}};
  for (std::size_t i = 0; i < trajectory.states.size(); ++i)
  {
    std::vector<std::string> row{std::to_string(i)};
    auto cells = state_cells(trajectory.states[i]);
    row.insert(row.end(), cells.begin(), cells.end());
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::vector<Table> counterfactual_tables(equilibrium::Counterfactual const &cf)
{
  auto before  = solution_table(cf.before);
  before.title = "before: " + before.title;
  auto after   = solution_table(cf.after);
  after.title  = "after: " + after.title;
  Table delta{"delta (after - before)", {"site", "listings", "usage"}, {}};
  for (auto p : kPlatforms)
  {
    delta.rows.push_back({std::string(1, to_char(p)), format_number(cf.listing_delta[p]),
                          format_number(cf.usage_delta[p])});
  }
  return {before, after, delta};
}

}  // namespace auctionmkt
