#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "rrlab/fpd.hpp"

namespace fs = std::filesystem;

namespace {

struct CliOutcome {
  int exit_code = -1;
  std::string out;
};

CliOutcome run_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + RRLAB_CLI_PATH " " + args +
                          " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  EXPECT_NE(pipe, nullptr);
  CliOutcome outcome;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) outcome.out.append(buf.data(), got);
  const int status = pclose(pipe);
  outcome.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return outcome;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t stop = text.find('\n', start);
    if (stop == std::string::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, stop - start));
    start = stop + 1;
  }
  return lines;
}

fs::path temp_file(const char* tag) {
  return fs::temp_directory_path() /
         (std::string("rrlab_cli_") + tag + "_" + std::to_string(::getpid()));
}

}  // namespace

TEST(Cli, BernoulliTable) {
  const CliOutcome r = run_cli("bernoulli --max-k 5");
  EXPECT_EQ(r.exit_code, 0);
  const auto rows = lines_of(r.out);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_NE(rows[0].find("1/6"), std::string::npos);
  EXPECT_NE(rows[1].find("-1/30"), std::string::npos);
  EXPECT_NE(rows[2].find("1/42"), std::string::npos);
  EXPECT_NE(rows[3].find("-1/30"), std::string::npos);
  EXPECT_NE(rows[4].find("5/66"), std::string::npos);
}

TEST(Cli, EnumerateEmptyExitsZero) {
  const CliOutcome r = run_cli("fpd enumerate --genus 2 --order 7");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, VerifyMainSingleDatum) {
  const CliOutcome r = run_cli("verify main --data \"2,5;1/5,1/5,3/5\" --k 1");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("holds"), std::string::npos);
  EXPECT_NE(r.out.find("lhs=4"), std::string::npos);
  EXPECT_NE(r.out.find("rhs=4"), std::string::npos);
}

TEST(Cli, ExitOneOnBadInput) {
  EXPECT_EQ(run_cli("verify main --data \"2,4;1/2,1/4\" --k 1").exit_code, 1);  // inadmissible
  EXPECT_EQ(run_cli("verify main --data \"2,5\" --k 1").exit_code, 1);          // grammar
  EXPECT_EQ(run_cli("verify main --data \"2,5;1/5,1/5,3/5\"").exit_code, 1);    // --k missing
  EXPECT_EQ(run_cli("verify main").exit_code, 1);
  EXPECT_EQ(run_cli("fpd enumerate --genus 2").exit_code, 1);
  EXPECT_EQ(run_cli("no-such-command").exit_code, 1);
  EXPECT_EQ(run_cli("bernoulli --max-k 5 --wat").exit_code, 1);
  EXPECT_EQ(run_cli("fpd enumerate --genus 2 --order 4096").exit_code, 1);  // above bound
}

TEST(Cli, ExitTwoOnFailingVerification) {
  const CliOutcome r = run_cli("verify porubsky --n-max 4 --c-max 3 --k-max 1 --eq por2");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.out.find("N=4 c=3 k=1"), std::string::npos);  // witness printed
}

TEST(Cli, HelpExitsZero) {
  EXPECT_EQ(run_cli("--help").exit_code, 0);
  EXPECT_EQ(run_cli("verify --help").exit_code, 0);
}

TEST(Cli, JsonEnumerateRoundTrips) {
  const CliOutcome r = run_cli("--json fpd enumerate --genus 2 --order 5");
  EXPECT_EQ(r.exit_code, 0);
  const auto rows = lines_of(r.out);
  ASSERT_EQ(rows.size(), 4u);
  for (const std::string& row : rows) {
    const nlohmann::json obj = nlohmann::json::parse(row);
    const rrlab::FixedPointData parsed = rrlab::parse_fpd(obj["data"].get<std::string>());
    EXPECT_EQ(parsed.to_string(), obj["data"].get<std::string>());
    EXPECT_EQ(parsed.genus, obj["genus"].get<std::int64_t>());
    EXPECT_EQ(parsed.order, obj["order"].get<std::int64_t>());
    EXPECT_EQ(parsed.orbit_genus, obj["orbit_genus"].get<std::int64_t>());
    EXPECT_EQ(parsed.q(), obj["q"].get<std::size_t>());
  }
}

TEST(Cli, JsonVerifySchema) {
  const CliOutcome r = run_cli("--json verify main --data \"2,5;1/5,1/5,3/5\" --k 1");
  EXPECT_EQ(r.exit_code, 0);
  const auto rows = lines_of(r.out);
  ASSERT_EQ(rows.size(), 1u);
  const nlohmann::json obj = nlohmann::json::parse(rows[0]);
  EXPECT_EQ(obj.size(), 6u);
  EXPECT_EQ(obj["check"], "main");
  EXPECT_EQ(obj["holds"], true);
  EXPECT_EQ(obj["lhs"], "4");
  EXPECT_EQ(obj["rhs"], "4");
  EXPECT_EQ(obj["modulus"], "5");
  EXPECT_EQ(obj["witness"], "data=2,5;1/5,1/5,3/5 k=1");
}

TEST(Cli, JsonSweepEndsWithSummary) {
  const CliOutcome r = run_cli("--json verify voronoi --p-max 3 --ab-max 1 --c-max 3 --k-max 1");
  EXPECT_EQ(r.exit_code, 0);
  const auto rows = lines_of(r.out);
  ASSERT_GT(rows.size(), 1u);
  const nlohmann::json summary = nlohmann::json::parse(rows.back());
  ASSERT_TRUE(summary.contains("summary"));
  EXPECT_EQ(summary["summary"]["cases"].get<std::size_t>(), rows.size() - 1);
  EXPECT_EQ(summary["summary"]["failures"], 0);
}

TEST(Cli, TsvOutputsHeaderedRows) {
  const CliOutcome r = run_cli("--tsv verify main --data \"2,5;1/5,1/5,3/5\" --k 1");
  EXPECT_EQ(r.exit_code, 0);
  const auto rows = lines_of(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], "check\twitness\tmodulus\tlhs\trhs\tholds");
  EXPECT_EQ(rows[1], "main\tdata=2,5;1/5,1/5,3/5 k=1\t5\t4\t4\ttrue");
  EXPECT_EQ(run_cli("--tsv --json bernoulli --max-k 1").exit_code, 1);  // mutually exclusive
}

TEST(Cli, ReportsAreByteIdenticalAcrossJobs) {
  const std::string sweep = "--json verify main --genus-max 3 --order-max 9 --k-max 2";
  const CliOutcome serial = run_cli(sweep + " --jobs 1");
  const CliOutcome parallel = run_cli(sweep + " --jobs 4");
  EXPECT_EQ(serial.exit_code, 0);
  EXPECT_EQ(parallel.exit_code, 0);
  EXPECT_EQ(serial.out, parallel.out);
  const CliOutcome again = run_cli(sweep + " --jobs 4");
  EXPECT_EQ(parallel.out, again.out);
}

TEST(Cli, CacheRoundTripAndCorruption) {
  const fs::path path = temp_file("cache.tsv");
  fs::remove(path);
  const CliOutcome first = run_cli("bernoulli --max-k 8 --cache " + path.string());
  EXPECT_EQ(first.exit_code, 0);
  ASSERT_TRUE(fs::exists(path));
  EXPECT_EQ(lines_of([&] {
              std::ifstream in(path);
              return std::string(std::istreambuf_iterator<char>(in), {});
            }())
                .size(),
            8u);

  const CliOutcome second = run_cli("bernoulli --max-k 8 --cache " + path.string());
  EXPECT_EQ(second.exit_code, 0);
  EXPECT_EQ(second.out, first.out);

  // Corrupt one denominator; the loader must reject the file.
  {
    std::ofstream out(path, std::ios::app);
    out << "18\t43867\t799\n";
  }
  EXPECT_EQ(run_cli("bernoulli --max-k 8 --cache " + path.string()).exit_code, 1);
  fs::remove(path);
}

TEST(Cli, CacheEnvironmentPrecedence) {
  const fs::path env_path = temp_file("cache_env.tsv");
  const fs::path flag_path = temp_file("cache_flag.tsv");
  fs::remove(env_path);
  fs::remove(flag_path);

  EXPECT_EQ(run_cli("bernoulli --max-k 3", "RRLAB_CACHE=" + env_path.string()).exit_code, 0);
  EXPECT_TRUE(fs::exists(env_path));

  EXPECT_EQ(run_cli("bernoulli --max-k 3 --cache " + flag_path.string(),
                    "RRLAB_CACHE=" + env_path.string())
                .exit_code,
            0);
  EXPECT_TRUE(fs::exists(flag_path));
  const auto env_size = fs::file_size(env_path);
  EXPECT_EQ(run_cli("bernoulli --max-k 12 --cache " + flag_path.string(),
                    "RRLAB_CACHE=" + env_path.string())
                .exit_code,
            0);
  EXPECT_EQ(fs::file_size(env_path), env_size);  // env path untouched when flag wins
  EXPECT_GT(fs::file_size(flag_path), 0u);
  fs::remove(env_path);
  fs::remove(flag_path);
}

TEST(Cli, ClassesOutput) {
  const CliOutcome r = run_cli("fpd classes --data \"2,5;1/5,1/5,3/5\" --max-k 3");
  EXPECT_EQ(r.exit_code, 0);
  const auto rows = lines_of(r.out);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], "k=1 e=4 s=2 (mod 5)");
  EXPECT_EQ(rows[2], "k=3 e=0 s=1 (mod 5)");
}
