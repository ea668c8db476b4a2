#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string output;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " \"" + THREATSTREAM_CLI + "\" " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) r.output += buf.data();
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("threatstream_cli_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

const fs::path kData = TEST_DATA_DIR;

}  // namespace

TEST(Cli, DetectWritesReportAndPlot) {
  const auto out = scratch("detect");
  const auto r = run("detect --input " + (kData / "corpus_301.jsonl").string() + " --out-dir " + out.string());
  ASSERT_EQ(r.code, 0) << r.output;
  ASSERT_TRUE(fs::exists(out / "report.json"));
  ASSERT_TRUE(fs::exists(out / "plot.csv"));
  const auto csv = slurp(out / "plot.csv");
  EXPECT_EQ(csv.rfind("interval,event_index,tweet_count,total_score\n", 0), 0u);
  EXPECT_NE(csv.find("\n0,0,45,"), std::string::npos) << csv;

  const auto plot = run("plot-data --report " + (out / "report.json").string());
  ASSERT_EQ(plot.code, 0) << plot.output;
  EXPECT_EQ(plot.output, csv);
  fs::remove_all(out);
}

TEST(Cli, FlagsOverrideConfigFile) {
  const auto out = scratch("flags");
  const auto conf = out / "run.conf";
  std::ofstream(conf) << "intervals = 4\nevents.tweet_thresh = 30\n";
  const auto r = run("detect --input " + (kData / "corpus_301.jsonl").string() + " --config " + conf.string() +
                     " --intervals 2 --out-dir " + out.string());
  ASSERT_EQ(r.code, 0) << r.output;
  const auto report = slurp(out / "report.json");
  EXPECT_NE(report.find("\"intervals\": 2"), std::string::npos);
  EXPECT_NE(report.find("\"events.tweet_thresh\": 30"), std::string::npos);
  fs::remove_all(out);
}

TEST(Cli, ConfigFromEnvironment) {
  const auto out = scratch("env");
  const auto conf = out / "env.conf";
  std::ofstream(conf) << "intervals = 3\n";
  const auto r = run("detect --input " + (kData / "corpus_301.jsonl").string() + " --out-dir " + out.string(),
                     "THREATSTREAM_CONFIG=" + conf.string());
  ASSERT_EQ(r.code, 0) << r.output;
  EXPECT_NE(slurp(out / "report.json").find("\"intervals\": 3"), std::string::npos);
  fs::remove_all(out);
}

TEST(Cli, InvalidConfigExitsWithConfigError) {
  const auto out = scratch("badconf");
  auto r = run("detect --input " + (kData / "corpus_301.jsonl").string() + " --set dbscan.eps=0 --out-dir " +
               out.string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.output.find("dbscan.eps must be positive"), std::string::npos) << r.output;
  r = run("detect --input " + (kData / "corpus_301.jsonl").string() + " --set nonsense=1");
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(fs::exists(out / "report.json"));
  fs::remove_all(out);
}

TEST(Cli, MalformedInputNamesStage) {
  const auto out = scratch("badinput");
  std::ofstream(out / "bad.jsonl") << R"({"id_str":"1","created_at":"2018-08-30T23:00:08Z","text":"ok"})" << "\n"
                                   << "{not json\n";
  const auto r = run("detect --input " + (out / "bad.jsonl").string() + " --out-dir " + out.string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.output.find("stage 'ingest'"), std::string::npos) << r.output;
  fs::remove_all(out);
}

TEST(Cli, EvalReproducesReportedFigures) {
  const auto out = scratch("eval");
  const auto dir = kData / "eval_reference";
  const auto r = run("eval --report " + (dir / "report.json").string() + " --annotations " +
                     (dir / "annotations.jsonl").string() + " --alignment " + (dir / "alignment.jsonl").string() +
                     " --out " + (out / "eval.json").string());
  ASSERT_EQ(r.code, 0) << r.output;
  EXPECT_NE(r.output.find("93.75"), std::string::npos) << r.output;
  EXPECT_NE(r.output.find("86"), std::string::npos) << r.output;
  const auto json = slurp(out / "eval.json");
  EXPECT_NE(json.find("\"ranking_sse\": 86"), std::string::npos) << json;
  fs::remove_all(out);
}

TEST(Cli, EvalMissingAlignmentFails) {
  const auto dir = kData / "eval_reference";
  const auto r = run("eval --report " + (dir / "report.json").string() + " --annotations " +
                     (dir / "annotations.jsonl").string() + " --alignment /nonexistent/alignment.jsonl");
  EXPECT_NE(r.code, 0);
}

TEST(Cli, HelpAndUnknownSubcommand) {
  EXPECT_EQ(run("--help").code, 0);
  EXPECT_NE(run("frobnicate").code, 0);
}
