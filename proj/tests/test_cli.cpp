#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "uhsn/cli.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "uhsn");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = uhsn::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string scenario(const char* name) { return std::string(UHSN_SCENARIO_DIR) + "/" + name; }

std::filesystem::path temp_file(const std::string& name, const std::string& body) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST(Cli, HandshakeReport) {
  auto r = run({"handshake", "--field", "2", "--dims", "2,3,4", "--seed", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_TRUE(j.at("agreement").get<bool>());
  EXPECT_EQ(j.at("transmitted_bits").get<int>(), 36);
  EXPECT_EQ(j.at("formula_bits").get<int>(), 36);
}

TEST(Cli, ConfigErrorsExitTwo) {
  EXPECT_EQ(run({"handshake", "--field", "4"}).code, 2);
  auto r = run({"handshake", "--dims", "1,0,1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("n"), std::string::npos);
  EXPECT_EQ(run({"handshake", "--dims", "1,2"}).code, 2);
  EXPECT_EQ(run({"costs", "--accounting", "both"}).code, 2);
  EXPECT_EQ(run({"e2e", "--scenario", "/nonexistent.json"}).code, 2);
  EXPECT_EQ(run({"attack", "--field", "251", "--dims", "4,4,4"}).code, 2);
  EXPECT_NE(run({"bogus"}).code, 0);
  auto bad = temp_file("uhsn_bad_scenario.json", R"({"nodes": [{"id": 1, "role": "SBS"}],
    "script": [{"op": "send", "from": 1, "to": 2}]})");
  auto rb = run({"e2e", "--scenario", bad.string()});
  EXPECT_EQ(rb.code, 2);
  EXPECT_NE(rb.err.find("script[0]"), std::string::npos) << rb.err;
}

TEST(Cli, E2eWardScenario) {
  auto r = run({"e2e", "--scenario", scenario("ward.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  std::size_t delivered = 0, failed = 0;
  for (const auto& f : j.at("flows")) (f.at("outcome") == "delivered" ? delivered : failed)++;
  EXPECT_EQ(failed, 1u);
  EXPECT_EQ(delivered, 12u);
}

TEST(Cli, E2eUnexpectedOutcomeExitsOne) {
  auto doc = R"({"nodes": [{"id": 1, "role": "SBS"}, {"id": 10, "role": "PT"}, {"id": 20, "role": "PT"}],
    "script": [{"op": "handshake", "node": 10}, {"op": "send", "from": 10, "to": 20, "message": "x"}]})";
  auto p = temp_file("uhsn_unexpected.json", doc);
  EXPECT_EQ(run({"e2e", "--scenario", p.string()}).code, 1);
}

TEST(Cli, E2eNoAuthTagStillDelivers) {
  auto r = run({"e2e", "--scenario", scenario("two_node.json"), "--no-auth-tag"});
  EXPECT_EQ(r.code, 0) << r.err;
}

TEST(Cli, CostsJsonAndCsvAgree) {
  auto j = json::parse(run({"costs", "--accounting", "scheme_total"}).out);
  auto csv = run({"costs", "--accounting", "scheme_total", "--format", "csv"}).out;
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "scheme,sender_mj,receiver_mj");
  std::size_t i = 0;
  const auto& rows = j.at("comparison");
  while (std::getline(lines, line)) {
    ASSERT_LT(i, rows.size());
    const auto& row = rows[i++];
    const auto c1 = line.find(','), c2 = line.rfind(',');
    EXPECT_EQ(line.substr(0, c1), row.at("scheme").get<std::string>());
    EXPECT_EQ(std::stod(line.substr(c1 + 1, c2 - c1 - 1)), row.at("sender_mj").get<double>());
    EXPECT_EQ(std::stod(line.substr(c2 + 1)), row.at("receiver_mj").get<double>());
  }
  EXPECT_EQ(i, 3u);
  EXPECT_NE(csv.find("Our Scheme,10.1,5.7"), std::string::npos);
  EXPECT_NE(run({"costs", "--accounting", "per_message", "--format", "csv"}).out.find("Our Scheme,2.9,5.7"),
            std::string::npos);
}

TEST(Cli, AttackReportsSoundness) {
  auto r = run({"attack", "--field", "2", "--dims", "2,2,2", "--trials", "4", "--seed", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_TRUE(j.at("true_key_found").get<bool>());
  EXPECT_EQ(j.at("runs").size(), 4u);
}

TEST(Cli, VectorsVerify) {
  auto r = run({"vectors"});
  EXPECT_EQ(r.code, 0) << r.err;
  auto bad = temp_file("uhsn_bad_vectors.txt", "kdf q=5 rows=1 cols=1 epoch=1 matrix=03 key=" + std::string(64, '0') + "\n");
  EXPECT_EQ(run({"vectors", "--vectors", bad.string()}).code, 1);
}

TEST(Cli, OutputsAreByteIdenticalAcrossRuns) {
  const std::vector<std::vector<std::string>> commands = {
      {"handshake", "--dims", "3,4,2", "--seed", "9"},
      {"e2e", "--scenario", scenario("ward.json")},
      {"costs", "--format", "csv"},
      {"costs"},
      {"attack", "--trials", "3"},
      {"vectors"},
  };
  for (const auto& c : commands) {
    auto a = run(c), b = run(c);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out) << c[0];
    EXPECT_FALSE(a.out.empty()) << c[0];
  }
}

TEST(Cli, OutputFlagWritesFile) {
  auto p = std::filesystem::temp_directory_path() / "uhsn_costs.csv";
  std::filesystem::remove(p);
  EXPECT_EQ(run({"costs", "--format", "csv", "--output", p.string()}).code, 0);
  std::ifstream in(p);
  std::string first;
  std::getline(in, first);
  EXPECT_EQ(first, "scheme,sender_mj,receiver_mj");
}
