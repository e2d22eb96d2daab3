#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "ktgraph/errors.hpp"
#include "ktgraph/kato_temple.hpp"
#include "ktgraph/version.hpp"
#include "ktgraph_cli/commands.hpp"

using namespace ktg;

namespace {

const std::string kTwoBlock =
    R"({"kind":"sbm","B":[[0.6,0.3],[0.3,0.6]],"block_sizes":[100,100]})";

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "ktgraph");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, BoundMatchesLibrary) {
  const Result r = run_cli({"bound", "--spec", kTwoBlock, "--t", "2.55"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["version"], std::string(kVersion));
  EXPECT_EQ(doc["command"], "bound");
  EXPECT_TRUE(doc.contains("config"));
  ASSERT_EQ(doc["bounds"].size(), 2u);

  const double delta = 100 * 0.9;
  const NoiseNormEstimate plug = NoiseNormEstimate::plug_in(delta);
  const LocalSpectrum local({30.0, 90.0}, SpectralWindow(plug.value));
  const DeviationBound b2 = deviation_bound(2, local, 2.55, plug);
  EXPECT_NEAR(doc["bounds"][1]["upper"].get<double>(), b2.upper, 1e-6);
  EXPECT_NEAR(doc["bounds"][1]["lower"].get<double>(), b2.lower, 1e-6);
  EXPECT_NEAR(doc["bounds"][1]["prob_joint"].get<double>(), b2.prob_joint, 1e-9);
}

TEST(Cli, MalformedJsonIsAConfigError) {
  const Result r = run_cli({"bound", "--spec", "{\"kind\": \"sbm\", "});
  EXPECT_EQ(r.code, cli::kExitConfigError);
  EXPECT_NE(r.err.find("JSON"), std::string::npos);
  EXPECT_EQ(run_cli({"bound", "--spec", "/nonexistent/spec.json"}).code, cli::kExitConfigError);
  EXPECT_EQ(run_cli({"bound", "--spec", R"({"kind":"sbm","B":[[0.6,0.3],[0.3,0.6]],"block_sizes":[0,4]})"}).code,
            cli::kExitConfigError);
  EXPECT_EQ(run_cli({"bound"}).code, cli::kExitConfigError);
  EXPECT_EQ(run_cli({"nonsense"}).code, cli::kExitConfigError);
  EXPECT_EQ(run_cli({"table1", "--format", "xml"}).code, cli::kExitConfigError);
}

TEST(Cli, InadmissibleTSuggestsAValue) {
  const Result r = run_cli({"bound", "--spec", kTwoBlock, "--t", "50"});
  EXPECT_EQ(r.code, cli::kExitDomainError);
  EXPECT_NE(r.err.find("t must be below"), std::string::npos);
  EXPECT_NE(r.err.find("--t"), std::string::npos);
}

TEST(Cli, WindowParsing) {
  const SpectralWindow w = cli::parse_window("10,inf");
  EXPECT_EQ(w.alpha(), 10.0);
  EXPECT_TRUE(w.unbounded());
  EXPECT_EQ(cli::parse_window("1.5, 7").beta(), 7.0);
  EXPECT_THROW(cli::parse_window("7"), InvalidInput);
  EXPECT_THROW(cli::parse_window("7,3"), InvalidInput);
  EXPECT_THROW(cli::parse_window("a,b"), InvalidInput);
  EXPECT_EQ(run_cli({"bound", "--spec", kTwoBlock, "--window", "100,inf"}).code, cli::kExitConfigError);
}

TEST(Cli, Table1JsonAndCsv) {
  const Result j = run_cli({"table1"});
  ASSERT_EQ(j.code, 0) << j.err;
  const nlohmann::json doc = nlohmann::json::parse(j.out);
  ASSERT_EQ(doc["rows"].size(), 4u);
  EXPECT_NEAR(doc["rows"][0]["epsilon_n"]["kato_temple"].get<double>(), 0.0407, 0.004);
  const Result c = run_cli({"table1", "--format", "csv"});
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(c.out.rfind("# ktgraph", 0), 0u);
  EXPECT_NE(c.out.find("n,eps_weyl_lu_peng,eps_kato_temple\n6000,"), std::string::npos);
}

TEST(Cli, ValidateSingleReplicate) {
  const Result r = run_cli({"validate", "--spec", kTwoBlock, "--replicates", "1", "--seed", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const nlohmann::json cov = nlohmann::json::parse(r.out)["coverage"];
  const double rate = cov["joint_coverage"].get<double>();
  EXPECT_TRUE(rate == 0.0 || rate == 1.0);
  EXPECT_EQ(run_cli({"validate", "--spec", kTwoBlock, "--replicates", "0"}).code, cli::kExitConfigError);
}

TEST(Cli, DeterministicAcrossRunsAndThreads) {
  const std::vector<std::string> base{"validate", "--spec", kTwoBlock, "--replicates", "12", "--seed", "99"};
  auto with_threads = [&](const char* t) {
    std::vector<std::string> a = base;
    a.push_back("--threads");
    a.push_back(t);
    return run_cli(a).out;
  };
  const std::string one = with_threads("1");
  EXPECT_EQ(one, with_threads("1"));
  EXPECT_EQ(one, with_threads("3"));

  const std::string cp = R"({"n":80,"m":10,"p":0.2,"eps":0.3})";
  const std::string a = run_cli({"changepoint", "--spec", cp, "--replicates", "20", "--threads", "1"}).out;
  const std::string b = run_cli({"changepoint", "--spec", cp, "--replicates", "20", "--threads", "4"}).out;
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("alt_rejection"), std::string::npos);
}

TEST(Cli, OutputFile) {
  const std::string path = ::testing::TempDir() + "/ktgraph_table1.csv";
  ASSERT_EQ(run_cli({"table1", "--format", "csv", "--out", path}).code, 0);
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_NE(buf.str().find("15000,"), std::string::npos);
}

TEST(Cli, BinaryExitCodes) {
  const std::string exe = KTGRAPH_CLI_PATH;
  auto status = [&](const std::string& args) {
    const int raw = std::system((exe + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  EXPECT_EQ(status("table1"), 0);
  EXPECT_EQ(status("bound --spec '{not json'"), 2);
  EXPECT_EQ(status("bound --spec '" + kTwoBlock + "' --t 50"), 3);
}
