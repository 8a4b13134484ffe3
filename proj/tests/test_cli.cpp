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

#include "auctionmkt/canonical_panel.hpp"
#include "auctionmkt/cli.hpp"
#include "auctionmkt/config.hpp"
#include "auctionmkt/dataset.hpp"

#include <filesystem>
#include <gtest/gtest.h>
#include <sstream>

using namespace auctionmkt;

namespace {

struct Result
{
  int         status;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> const &args)
{
  std::ostringstream out, err;
  int const          status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::filesystem::path temp_file(std::string const &name)
{
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST(Cli, FeeQuote)
{
  auto const r = run({"fees", "quote", "--platform", "E", "--opening", "15.00", "--closing", "50.00"});
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("2.425"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("# command = fees quote"), std::string::npos);
  EXPECT_NE(r.out.find("# arg.opening = 15.00"), std::string::npos);
}

TEST(Cli, FeeQuoteBelowMinimum)
{
  auto const r = run({"fees", "quote", "--opening", "0.00", "--closing", "50.00"});
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("$0.01"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, FeeAlphaAndInvert)
{
  auto const a = run({"fees", "alpha", "--opening", "15.00", "--closing", "100.00", "--format", "csv"});
  EXPECT_EQ(a.status, 0) << a.err;
  EXPECT_NE(a.out.find("3.325,0.03325"), std::string::npos) << a.out;
  auto const i = run({"fees", "invert", "--alpha", "0.0415", "--opening", "15.00", "--format", "csv"});
  EXPECT_EQ(i.status, 0) << i.err;
  EXPECT_NE(i.out.find("0.0415,15.00,50.00"), std::string::npos) << i.out;
  EXPECT_EQ(run({"fees", "invert", "--alpha", "0.01", "--opening", "15.00"}).status, 2);
}

TEST(Cli, ScheduleOverrideThroughSet)
{
  auto const r = run({"fees", "quote", "--platform", "Y", "--opening", "15.00", "--set",
                      "insertion.Y.1=0.01,,0.10"});
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("0.10"), std::string::npos);
}

TEST(Cli, UnknownKeyRejected)
{
  auto const r = run({"fees", "quote", "--opening", "1.00", "--set", "bogus=1"});
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("bogus"), std::string::npos);
}

TEST(Cli, ConfigFileMergedBeneathFlags)
{
  auto const path = temp_file("auctionmkt_cli_test.cfg");
  write_text_file(path, "format = csv\nseed = 4\n");
  auto const r = run({"--config", path.string(), "--seed", "9", "fees", "quote", "--opening", "15.00"});
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("# seed = 9"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("# format = csv"), std::string::npos);
  EXPECT_NE(r.out.find("platform,opening"), std::string::npos);
  std::filesystem::remove(path);
}

TEST(Cli, MissingFilesAreIoErrors)
{
  EXPECT_EQ(run({"data", "stats", "--panel", "/nonexistent/panel.csv"}).status, 3);
  EXPECT_EQ(run({"--config", "/nonexistent/x.cfg", "replicate"}).status, 3);
}

TEST(Cli, BadArgumentsAreValidationErrors)
{
  EXPECT_EQ(run({}).status, 1);
  EXPECT_EQ(run({"fees"}).status, 1);
  EXPECT_EQ(run({"fees", "quote"}).status, 1);
  EXPECT_EQ(run({"fees", "quote", "--opening", "abc"}).status, 1);
  EXPECT_EQ(run({"estimate", "usage", "--panel", "builtin:canonical", "--metric", "clicks"}).status, 1);
  EXPECT_EQ(run({"--format", "xml", "replicate"}).status, 1);
  EXPECT_EQ(run({"--help"}).status, 0);
}

TEST(Cli, PanelRoundTripThroughFiles)
{
  auto const path = temp_file("auctionmkt_cli_panel.csv");
  auto const w    = run({"data", "synth", "--canonical", "--out", path.string()});
  ASSERT_EQ(w.status, 0) << w.err;
  EXPECT_EQ(parse_panel(read_text_file(path)), canonical_panel().panel);
  auto const s = run({"data", "stats", "--panel", path.string(), "--format", "csv"});
  EXPECT_EQ(s.status, 0) << s.err;
  auto const p = run({"data", "parse", "--panel", path.string()});
  EXPECT_EQ(p.status, 0) << p.err;
  std::filesystem::remove(path);
}

TEST(Cli, MalformedPanelCitesLine)
{
  auto const path = temp_file("auctionmkt_cli_bad.csv");
  write_text_file(path, std::string(kPanelHeader) + "\n1,E,1,1,1\n1,Q,1,1,1\n");
  auto const r = run({"data", "parse", "--panel", path.string()});
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
  std::filesystem::remove(path);
}

TEST(Cli, SynthesisUsesSeed)
{
  auto const a = run({"--seed", "5", "data", "synth", "--noise", "0.05", "--format", "csv"});
  auto const b = run({"--seed", "5", "data", "synth", "--noise", "0.05", "--format", "csv"});
  auto const c = run({"--seed", "6", "data", "synth", "--noise", "0.05", "--format", "csv"});
  EXPECT_EQ(a.status, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
}

TEST(Cli, EstimateRevenue)
{
  auto const r = run({"estimate", "revenue", "--panel", "builtin:canonical", "--alpha", "0.04",
                      "--metric", "uv", "--format", "csv"});
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("term,estimate,std_error\nb,0.021"), std::string::npos) << r.out;
}

TEST(Cli, EstimateUsageMarkdown)
{
  auto const r = run({"estimate", "usage", "--panel", "builtin:canonical", "--format", "markdown"});
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("| term | estimate | std_error |"), std::string::npos);
}

TEST(Cli, EquilibriumCommands)
{
  auto const s = run({"equilibrium", "solve", "--format", "csv"});
  EXPECT_EQ(s.status, 0) << s.err;
  EXPECT_NE(s.out.find("equilibrium (fixed-total)"), std::string::npos);
  EXPECT_NE(s.out.find("# rev.b = 0.0216"), std::string::npos) << s.out;
  auto const e = run({"equilibrium", "solve", "--closure", "elastic-entry", "--metric", "pv"});
  EXPECT_EQ(e.status, 0) << e.err;
  EXPECT_NE(e.out.find(" stable\n"), std::string::npos) << e.out;
  auto const d = run({"equilibrium", "dynamics", "--format", "csv", "--max-periods", "500"});
  EXPECT_EQ(d.status, 0) << d.err;
  EXPECT_NE(d.out.find("true,false"), std::string::npos) << d.out;
  auto const c = run({"equilibrium", "counterfactual"});
  EXPECT_EQ(c.status, 0) << c.err;
  EXPECT_NE(c.out.find("delta (after - before)"), std::string::npos);
  EXPECT_EQ(run({"equilibrium", "solve", "--closure", "sideways"}).status, 1);
}

TEST(Cli, SolverFailureExitsTwo)
{
  auto const r = run({"equilibrium", "dynamics", "--set", "use.beta1=60", "--set", "rev.b=0.5",
                      "--format", "csv"});
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("diverged"), std::string::npos);
  auto const s = run({"equilibrium", "solve", "--set", "insertion.E.1=0.01,,1000.00"});
  EXPECT_EQ(s.status, 2) << s.out;
  EXPECT_FALSE(s.err.empty());
}

TEST(Cli, ReplicateIsDeterministic)
{
  auto const a = run({"replicate", "--format", "csv", "--seed", "3"});
  auto const b = run({"replicate", "--format", "csv", "--seed", "3"});
  ASSERT_EQ(a.status, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("insertion fees"), std::string::npos);
}
