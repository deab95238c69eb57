#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "fibcomp/cli.hpp"

using namespace fibcomp;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "fibcomp");
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

bool has_trailing_whitespace(const std::string& text) {
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && (line.back() == ' ' || line.back() == '\t')) return true;
  }
  return false;
}

}  // namespace

TEST(Cli, MapForwardAndTrace) {
  auto r = run_cli({"map", "--odd-to-gt1", "1+1+1+9+1+1+5+3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "5+2+2+2+5+2+3+2\n");

  r = run_cli({"map", "--odd-to-gt1", "1+1+1+9+1+1+5+3", "--trace"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "a=1+1+1+9+1+1+5+3\na'=4+1+1+1+1+1+1+1+4+1+1+1+2+1+1\nb=5+2+2+2+5+2+3+1\nc=5+2+2+2+5+2+3+2\n");

  r = run_cli({"map", "--gt1-to-odd", "5+2+2+2+5+2+3+2"});
  EXPECT_EQ(r.out, "1+1+1+9+1+1+5+3\n");
}

TEST(Cli, MapCodecs) {
  EXPECT_EQ(run_cli({"map", "--to-bits", "2+4+1+1+5"}).out, "010001110000\n");
  EXPECT_EQ(run_cli({"map", "--from-bits", "010001110000"}).out, "2+4+1+1+5\n");
  EXPECT_EQ(run_cli({"map", "--conjugate", "2+4+1+1+5"}).out, "1+2+1+1+4+1+1+1+1\n");
  EXPECT_EQ(run_cli({"map", "--graph", "1+1"}).out, "−·−\n");
}

TEST(Cli, MapJson) {
  auto r = run_cli({"map", "--odd-to-gt1", "3", "--trace", "--json"});
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["output"], "2+2");
  EXPECT_EQ(j["trace"]["a_conj"], "1+1+1");
  EXPECT_EQ(j["trace"]["b"], "2+1");
}

TEST(Cli, Count) {
  auto r = run_cli({"count", "--class", "partitions:odd-parts", "8"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "6\n");
  EXPECT_EQ(run_cli({"count", "--class", "partitions:odd-parts", "8", "--method", "enumerate"}).out, "6\n");
  EXPECT_EQ(run_cli({"count", "--class", "compositions:all", "13"}).out, "4096\n");
  EXPECT_EQ(run_cli({"count", "--class", "compositions:min-part-2", "26"}).out, "75025\n");
  EXPECT_EQ(run_cli({"count", "--class", "compositions:distinct-parts", "6"}).out, "11\n");
  EXPECT_EQ(run_cli({"count", "--class", "partitions:distinct-with-exactly-2-parts", "8"}).out, "3\n");
  EXPECT_EQ(run_cli({"count", "--class", "partitions:all", "100"}).out, "190569292\n");

  auto j = nlohmann::json::parse(run_cli({"count", "--class", "partitions:all", "4", "--json"}).out);
  EXPECT_EQ(j["count"], "5");
  EXPECT_EQ(j["n"], 4);
}

TEST(Cli, ExitCodesForBadInput) {
  auto r = run_cli({"map", "--odd-to-gt1", "1+3+4+1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("part 3"), std::string::npos) << r.err;
  EXPECT_EQ(run_cli({"map", "--odd-to-gt1", "1++3"}).code, 1);
  EXPECT_EQ(run_cli({"count", "--class", "compositions:bogus", "3"}).code, 1);
  EXPECT_EQ(run_cli({"count", "--class", "compositions:all", "0"}).code, 1);
  EXPECT_EQ(run_cli({"count", "--class", "compositions:all", "-3"}).code, 1);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 1);
  EXPECT_EQ(run_cli({"map"}).code, 1);
  EXPECT_EQ(run_cli({"analytic", "p", "0"}).code, 1);
  EXPECT_EQ(run_cli({"series", "nonsense", "--order", "4"}).code, 1);
}

TEST(Cli, UncertifiedAnalyticExitsTwo) {
  // One term at 64 bits with no escalation cannot certify p(200).
  auto r = run_cli({"analytic", "p", "200", "--kmax", "1", "--bits", "64", "--max-escalations", "0", "--json"});
  EXPECT_EQ(r.code, 2);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["certified"], false);
  EXPECT_EQ(j["escalations"], 0);
  EXPECT_NE(r.err.find("could not be certified"), std::string::npos);

  // The same start recovers once escalation is allowed.
  r = run_cli({"analytic", "p", "200", "--kmax", "1", "--bits", "64", "--json"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["rounded"], "3972999029388");
}

TEST(Cli, Verify) {
  auto r = run_cli({"verify", "--suite", "bijection", "--max-n", "14"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("verify: all checks passed"), std::string::npos);
  EXPECT_FALSE(has_trailing_whitespace(r.out));
  EXPECT_EQ(run_cli({"verify", "--suite", "nope"}).code, 1);
}

TEST(Cli, EnumerateCapLimitAndCount) {
  auto r = run_cli({"enumerate", "--class", "compositions:all", "4"});
  EXPECT_EQ(r.out, "1+1+1+1\n1+1+2\n1+2+1\n1+3\n2+1+1\n2+2\n3+1\n4\n");
  EXPECT_EQ(run_cli({"enumerate", "--class", "compositions:all", "31"}).code, 1);
  r = run_cli({"enumerate", "--class", "compositions:all", "40", "--limit", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 2);
  EXPECT_EQ(run_cli({"enumerate", "--class", "partitions:odd-parts", "8", "--count"}).out, "6\n");
  EXPECT_EQ(run_cli({"enumerate", "--class", "partitions:all", "0"}).out, "\n");
  auto j = nlohmann::json::parse(run_cli({"enumerate", "--class", "partitions:distinct-parts", "5", "--json"}).out);
  EXPECT_EQ(j["items"], (std::vector<std::string>{"5", "4+1", "3+2"}));
}

TEST(Cli, Series) {
  auto r = run_cli({"series", "partitions", "--order", "4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "0\t1\n1\t1\n2\t2\n3\t3\n4\t5\n");
  EXPECT_EQ(run_cli({"series", "distinct-partitions-ell", "--order", "8", "--ell", "2"}).out.substr(0, 8), "0\t0\n1\t0\n");
  EXPECT_EQ(run_cli({"series", "distinct-partitions-ell", "--order", "8"}).code, 1);
}

TEST(Cli, CacheDirectory) {
  auto dir = std::filesystem::temp_directory_path() / "fibcomp_cli_cache_test";
  std::filesystem::remove_all(dir);
  auto r = run_cli({"--cache-dir", dir.string(), "count", "--class", "partitions:distinct-parts", "50"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "3658\n");
  EXPECT_TRUE(std::filesystem::exists(dir / "q.table"));
  // Second run reads the file.
  EXPECT_EQ(run_cli({"--cache-dir", dir.string(), "count", "--class", "partitions:odd-parts", "20"}).out, "64\n");
  // A tampered cache is rejected rather than trusted.
  {
    std::ofstream out(dir / "q.table", std::ios::trunc);
    out << "fibcomp-table v1 kind=q max=3\n1\n1\n1\n7\n";
  }
  EXPECT_EQ(run_cli({"--cache-dir", dir.string(), "count", "--class", "partitions:odd-parts", "2"}).code, 1);
  std::filesystem::remove_all(dir);
}

TEST(CliProperties, RandomRoundTrips) {
  std::mt19937_64 rng(20261018);
  for (int trial = 0; trial < 1000; ++trial) {
    std::uniform_int_distribution<int> size(1, 60);
    int n = size(rng), left = n;
    std::string text;
    while (left > 0) {
      int maxodd = left % 2 == 1 ? left : left - 1;
      std::uniform_int_distribution<int> pick(0, (maxodd - 1) / 2);
      int part = 2 * pick(rng) + 1;
      text += (text.empty() ? "" : "+") + std::to_string(part);
      left -= part;
    }
    auto fwd = run_cli({"map", "--odd-to-gt1", text});
    ASSERT_EQ(fwd.code, 0) << text;
    auto image = fwd.out.substr(0, fwd.out.size() - 1);
    auto back = run_cli({"map", "--gt1-to-odd", image});
    ASSERT_EQ(back.code, 0) << image;
    ASSERT_EQ(back.out, text + "\n");
  }
}

TEST(Cli, AnalyticOutput) {
  auto r = run_cli({"analytic", "p", "100", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["rounded"], "190569292");
  EXPECT_EQ(j["certified"], true);
  for (const char* key : {"k_terms_used", "precision_bits", "raw_value", "residual", "stability", "escalations"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  auto plain = run_cli({"analytic", "q", "8"});
  EXPECT_EQ(plain.code, 0);
  EXPECT_NE(plain.out.find("rounded 6\n"), std::string::npos);
  EXPECT_FALSE(has_trailing_whitespace(plain.out));
  EXPECT_EQ(run_cli({"--threads", "3", "analytic", "q", "8"}).out, plain.out);
}
