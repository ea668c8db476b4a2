// Command-line front end: detect, eval, plot-data.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "threatstream/threatstream.hpp"

namespace fs = std::filesystem;
using namespace threatstream;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
}

int cmd_detect(const std::string& input, const std::string& config_path, const std::vector<std::string>& sets,
               const std::vector<std::pair<std::string, std::string>>& flag_overrides, const std::string& out_dir) {
  RunConfig config;
  try {
    if (!config_path.empty()) apply_config_file(config, config_path);
    for (const auto& kv : sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
      apply_setting(config, kv.substr(0, eq), kv.substr(eq + 1));
    }
    for (const auto& [k, v] : flag_overrides) apply_setting(config, k, v);
    validate(config);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    std::vector<Tweet> tweets;
    try {
      tweets = read_tweets(fs::path(input));
    } catch (const Error& e) {
      throw StageError("ingest", std::nullopt, e.what());
    }
    std::shared_ptr<const Resources> resources;
    try {
      resources = std::make_shared<const Resources>(Resources::load(config));
    } catch (const Error& e) {
      throw StageError("resources", std::nullopt, e.what());
    }
    Detector detector(config, resources);
    const auto report = detector.run(std::move(tweets));

    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "report.json", dump_report(report));
    write_file(fs::path(out_dir) / "plot.csv", plot_csv(report));
    for (const auto& line : report.log) std::cerr << "note: " << line << "\n";

    std::size_t events = 0;
    for (const auto& iv : report.intervals) events += iv.events.size();
    std::cout << "processed " << report.tweet_count << " tweets in " << report.intervals.size()
              << " interval(s); " << events << " event(s); report written to "
              << (fs::path(out_dir) / "report.json").string() << "\n";
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

int cmd_eval(const std::string& report_path, const std::string& annotations_path, const std::string& alignment_path,
             const std::string& out_path) {
  try {
    const auto report = load_report(report_path);
    const auto annotations = load_annotations(annotations_path);
    const auto alignment = load_alignment(alignment_path);
    const auto result = evaluate_report(report, annotations, alignment);
    const auto& c = result.confusion;

    std::cout << std::fixed;
    std::cout.precision(2);
    std::cout << "TP " << c.tp << " (" << c.tp_rate << "%)  FP " << c.fp << " (" << c.fp_rate << "%)  FN " << c.fn
              << " (" << c.fn_rate << "%)  TN " << c.tn << " (" << c.tn_rate << "%)\n";
    std::cout << "precision " << c.precision << "%" << (c.precision_defined ? "" : " (undefined: no detections)")
              << "\n";
    std::cout << "ranking SSE " << result.ranking_sse << " over " << result.system_ranks.size()
              << " matched event(s)\n";

    const auto out = out_path.empty() ? fs::path(report_path).parent_path() / "eval.json" : fs::path(out_path);
    write_file(out, to_json(result).dump(2) + "\n");
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

int cmd_plot_data(const std::string& report_path, const std::string& out_path) {
  try {
    const auto csv = plot_csv(load_report(report_path));
    if (out_path.empty()) {
      std::cout << csv;
    } else {
      write_file(out_path, csv);
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cyber-threat event detection over time-chunked tweet streams"};
  app.require_subcommand(1);

  auto* detect = app.add_subcommand("detect", "detect, classify and rank events");
  std::string input, config_path, out_dir = "out", ner_mode;
  std::vector<std::string> sets;
  int intervals = 0;
  long long tweet_thresh = 0;
  double cosine_thresh = 0.0;
  bool stemming = false;
  detect->add_option("--input", input, "tweet JSON-lines file")->required()->check(CLI::ExistingFile);
  detect->add_option("--config", config_path, "key=value config file")->envname("THREATSTREAM_CONFIG");
  auto* o_intervals = detect->add_option("--intervals", intervals, "number of equal time intervals");
  auto* o_thresh = detect->add_option("--tweet-thresh", tweet_thresh, "minimum tweets for a trendy event");
  auto* o_cos = detect->add_option("--cosine-thresh", cosine_thresh, "novelty similarity threshold");
  auto* o_stem = detect->add_flag("--stemming", stemming, "apply Porter stemming");
  auto* o_ner = detect->add_option("--ner-mode", ner_mode, "gazetteer or remote");
  detect->add_option("--set", sets, "override any config key (key=value), repeatable");
  detect->add_option("--out-dir", out_dir, "directory for report.json and plot.csv");

  auto* eval = app.add_subcommand("eval", "compare a report with annotations");
  std::string report_path, annotations_path, alignment_path, eval_out;
  eval->add_option("--report", report_path, "report.json from detect")->required();
  eval->add_option("--annotations", annotations_path, "annotation JSON-lines")->required();
  eval->add_option("--alignment", alignment_path, "cluster to event_key JSON-lines")->required();
  eval->add_option("--out", eval_out, "evaluation JSON (default: eval.json beside the report)");

  auto* plot = app.add_subcommand("plot-data", "export per-event plot series as CSV");
  std::string plot_report, plot_out;
  plot->add_option("--report", plot_report, "report.json from detect")->required();
  plot->add_option("--out", plot_out, "CSV path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (*detect) {
    std::vector<std::pair<std::string, std::string>> overrides;
    if (*o_intervals) overrides.emplace_back("intervals", std::to_string(intervals));
    if (*o_thresh) overrides.emplace_back("events.tweet_thresh", std::to_string(tweet_thresh));
    if (*o_cos) overrides.emplace_back("events.cosine_thresh", format_number(cosine_thresh));
    if (*o_stem) overrides.emplace_back("preprocess.stemming", stemming ? "true" : "false");
    if (*o_ner) overrides.emplace_back("ner.mode", ner_mode);
    return cmd_detect(input, config_path, sets, overrides, out_dir);
  }
  if (*eval) return cmd_eval(report_path, annotations_path, alignment_path, eval_out);
  return cmd_plot_data(plot_report, plot_out);
}
