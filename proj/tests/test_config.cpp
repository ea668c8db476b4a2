#include <sstream>

#include <gtest/gtest.h>

#include "threatstream/config.hpp"
#include "threatstream/report.hpp"

using namespace threatstream;

TEST(Config, DefaultsMatchReportedParameters) {
  const RunConfig c;
  EXPECT_DOUBLE_EQ(c.tfidf.max_df, 0.90);
  EXPECT_DOUBLE_EQ(c.tfidf.min_df, 0.01);
  EXPECT_EQ(c.tfidf.max_features, 200000u);
  EXPECT_DOUBLE_EQ(c.dbscan.eps, 1.0);
  EXPECT_EQ(c.dbscan.min_pts, 3u);
  EXPECT_DOUBLE_EQ(c.detection.cosine_thresh, 0.5);
  EXPECT_EQ(c.detection.min_event_tweets, 3u);
  EXPECT_DOUBLE_EQ(c.detection.common_to_entity_ratio, 0.20);
  EXPECT_FALSE(c.stemming);
  EXPECT_EQ(c.ner_mode, NerMode::gazetteer);
  EXPECT_NO_THROW(validate(c));
}

TEST(Config, FileWithCommentsAndAliases) {
  std::istringstream in(R"(# detection run
intervals = 5
tweet_thresh=12
cosine_thresh = 0.4
stemming = true
dbscan.min_pts = 4
ner.mode = remote
ner.endpoint = http://localhost:9000/ner
)");
  RunConfig c;
  apply_config(c, in);
  EXPECT_EQ(c.intervals, 5);
  EXPECT_EQ(c.detection.tweet_thresh, 12u);
  EXPECT_DOUBLE_EQ(c.detection.cosine_thresh, 0.4);
  EXPECT_TRUE(c.stemming);
  EXPECT_EQ(c.dbscan.min_pts, 4u);
  EXPECT_EQ(c.ner_mode, NerMode::remote);
  EXPECT_NO_THROW(validate(c));
}

TEST(Config, BadInputsNamed) {
  RunConfig c;
  EXPECT_THROW(apply_setting(c, "dbscan.epsilon", "1"), ConfigError);
  EXPECT_THROW(apply_setting(c, "dbscan.eps", "one"), ConfigError);
  EXPECT_THROW(apply_setting(c, "intervals", "2.5"), ConfigError);
  EXPECT_THROW(apply_setting(c, "stemming", "maybe"), ConfigError);
  EXPECT_THROW(apply_setting(c, "ner.mode", "cloud"), ConfigError);
  std::istringstream in("intervals = 2\nnot a pair\n");
  try {
    apply_config(c, in);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_THROW(apply_config_file(c, "/nonexistent/run.conf"), ConfigError);
}

TEST(Config, ValidationRejectsPreconditionViolations) {
  const std::vector<std::pair<std::string, std::string>> bad{
      {"dbscan.eps", "0"},         {"intervals", "0"},          {"tfidf.max_df", "1.5"},
      {"tfidf.min_df", "0.95"},    {"textrank.window", "1"},    {"textrank.damping", "1"},
      {"events.cosine_thresh", "0"}, {"events.tweet_thresh", "0"}, {"ner.max_in_flight", "0"},
      {"ner.mode", "remote"},
  };
  for (const auto& [k, v] : bad) {
    RunConfig c;
    apply_setting(c, k, v);
    EXPECT_THROW(validate(c), ConfigError) << k << "=" << v;
  }
  RunConfig c;
  apply_setting(c, "dbscan.eps", "0");
  try {
    validate(c);
  } catch (const ConfigError& e) {
    EXPECT_EQ(std::string(e.what()), "dbscan.eps must be positive");
  }
}

TEST(Config, EchoRoundTripsThroughSettings) {
  RunConfig c;
  apply_setting(c, "events.tweet_thresh", "17");
  apply_setting(c, "preprocess.stemming", "true");
  const auto j = to_json(c);
  RunConfig back;
  for (const auto& [k, v] : j.items()) {
    if (k == "tfidf.ngram_range" || k == "dbscan.metric") continue;
    const std::string text = v.is_string() ? v.get<std::string>() : v.is_boolean() ? (v.get<bool>() ? "true" : "false")
                                                                                    : v.dump();
    if (k == "ner.endpoint" && text.empty()) continue;
    apply_setting(back, k, text);
  }
  EXPECT_EQ(to_json(back), j);
}

TEST(Report, JsonRoundTripAndPlotCsv) {
  DetectionReport r;
  IntervalReport iv;
  iv.interval = 0;
  iv.start = "2018-08-30T23:00:08.000Z";
  iv.end = "2018-09-02T10:50:19.200Z";
  for (auto [id, tweets, score, rank] : std::vector<std::tuple<int, std::size_t, double, int>>{
           {12, 51, 391.3391, 1}, {9, 5, 389.7082, 2}}) {
    EventRecord e;
    e.cluster_id = id;
    e.tweet_count = tweets;
    e.total_score = score;
    e.rank = rank;
    e.event_type = id == 12 ? EventType::novel_and_trendy : EventType::first_story;
    iv.events.push_back(e);
  }
  r.intervals.push_back(iv);
  const auto text = dump_report(r);
  const auto back = parse_report(text);
  EXPECT_EQ(dump_report(back), text);
  EXPECT_EQ(plot_csv(back), "interval,event_index,tweet_count,total_score\n0,0,51,391.3391\n0,1,5,389.7082\n");
}

TEST(Report, SingleEventAndEmptyPlot) {
  const auto one = parse_report(
      R"({"intervals":[{"interval":0,"events":[{"cluster_id":12,"type":"novel_and_trendy","tweet_count":51,"total_score":391.3391,"rank":1}]}]})");
  EXPECT_EQ(plot_csv(one), "interval,event_index,tweet_count,total_score\n0,0,51,391.3391\n");
  EXPECT_EQ(plot_csv(parse_report(R"({"intervals":[]})")), "interval,event_index,tweet_count,total_score\n");
}

TEST(Report, MalformedRejected) {
  EXPECT_THROW(parse_report("{"), ParseError);
  EXPECT_THROW(parse_report(R"({"intervals":{}})"), ParseError);
  EXPECT_THROW(parse_report(R"({"intervals":[{"interval":0,"events":[{"cluster_id":1}]}]})"), ParseError);
  EXPECT_THROW(parse_report(R"({"intervals":[{"interval":0,"events":[{"cluster_id":1,"type":"odd","tweet_count":3,"total_score":1,"rank":1}]}]})"),
               ParseError);
  EXPECT_THROW(load_report("/nonexistent/report.json"), ParseError);
}
