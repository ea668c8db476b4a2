#pragma once

#include <future>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "threatstream/cluster.hpp"
#include "threatstream/config.hpp"
#include "threatstream/error.hpp"
#include "threatstream/events.hpp"
#include "threatstream/extract.hpp"
#include "threatstream/influence.hpp"
#include "threatstream/ingest.hpp"
#include "threatstream/preprocess.hpp"
#include "threatstream/report.hpp"
#include "threatstream/vectorize.hpp"

namespace threatstream {

/// Failure inside the detection pipeline, tagged with stage and interval.
class StageError : public Error {
 public:
  StageError(std::string stage, std::optional<std::size_t> interval, const std::string& what)
      : Error("stage '" + stage + "'" + (interval ? " interval " + std::to_string(*interval) : std::string{}) + ": " +
              what),
        stage_(std::move(stage)),
        interval_(interval) {}

  const std::string& stage() const { return stage_; }
  std::optional<std::size_t> interval() const { return interval_; }

 private:
  std::string stage_;
  std::optional<std::size_t> interval_;
};

/// Immutable lexical resources shared by every interval.
struct Resources {
  StopwordSet stopwords;
  FrequencyDictionary dictionary;
  PosLexicon lexicon;
  Gazetteer gazetteer;

  static Resources load(const RunConfig& config) {
    Resources r{load_stopwords(config.stopwords),
                config.spell_correction ? FrequencyDictionary::load(config.dictionary, config.max_edit_distance)
                                        : FrequencyDictionary(config.max_edit_distance),
                PosLexicon::load(config.lexicon), Gazetteer::load(config.gazetteer)};
    return r;
  }
};

/// Runs ingest → preprocess → influence → vectorize → cluster → extract →
/// events over each interval in order. The novelty memory persists across
/// intervals, so one Detector processes one stream.
class Detector {
 public:
  Detector(RunConfig config, std::shared_ptr<const Resources> resources)
      : config_(std::move(config)), resources_(std::move(resources)) {
    validate(config_);
    if (config_.ner_mode == NerMode::remote) {
      remote_ = std::make_unique<RemoteNerClient>(RemoteNerOptions{
          config_.ner_endpoint, config_.ner_timeout_ms, config_.ner_retries, config_.ner_max_in_flight});
    }
  }

  const RunConfig& config() const { return config_; }
  const NoveltyMemory& memory() const { return memory_; }

  DetectionReport run(std::vector<Tweet> tweets) {
    DetectionReport report;
    report.config = to_json(config_);
    if (config_.relevant_only) {
      std::erase_if(tweets, [](const Tweet& t) { return t.relevance_label != RelevanceLabel::relevant; });
    }
    report.tweet_count = tweets.size();
    if (tweets.empty()) {
      report.log.push_back("no tweets to process");
      return report;
    }
    std::vector<Interval> intervals;
    try {
      intervals = chunk_intervals(std::move(tweets), config_.intervals);
    } catch (const Error& e) {
      throw StageError("ingest", std::nullopt, e.what());
    }
    for (const auto& interval : intervals) report.intervals.push_back(process(interval, report.log));
    return report;
  }

 private:
  struct ClusterEvidence {
    TermSets sets;
    bool fell_back = false;
    std::string diagnostic;
  };

  IntervalReport process(const Interval& interval, std::vector<std::string>& log) {
    IntervalReport out;
    out.interval = interval.index;
    out.start = format_timestamp(interval.start);
    out.end = format_timestamp(interval.end);
    out.tweet_count = interval.tweets.size();
    if (interval.tweets.empty()) {
      out.note = "no tweets";
      return out;
    }
    const auto stage = [&](const char* name, auto&& fn) {
      try {
        return fn();
      } catch (const StageError&) {
        throw;
      } catch (const std::exception& e) {
        throw StageError(name, interval.index, e.what());
      }
    };

    // preprocess
    std::vector<TokenDoc> docs;
    std::map<std::string, std::vector<std::string>> phrases;
    stage("preprocess", [&] {
      const CleanOptions opts{config_.stemming, config_.spell_correction};
      for (const auto& t : interval.tweets) {
        auto doc = clean_text(t.text, resources_->stopwords, &resources_->dictionary, opts);
        doc.tweet_id = t.id;
        docs.push_back(std::move(doc));
        phrases[t.id] = extract_noun_phrases(t.text, resources_->lexicon);
      }
      return 0;
    });

    const auto weights = stage("influence", [&] { return build_phrase_weights(interval, phrases); });

    TfidfMatrix matrix;
    const bool has_vocabulary = stage("vectorize", [&] {
      try {
        const auto vocab = build_vocabulary(docs, config_.tfidf);
        matrix = tfidf_transform(docs, vocab);
        return true;
      } catch (const EmptyVocabularyError&) {
        return false;
      }
    });
    if (!has_vocabulary) {
      out.note = "empty vocabulary after document-frequency pruning";
      return out;
    }

    const auto clusters = stage("cluster", [&] {
      const auto labels = dbscan(matrix, config_.dbscan);
      return build_clusters(labels, interval.tweets);
    });
    out.cluster_count = clusters.size();

    const auto evidence = stage("extract", [&] { return extract_all(clusters); });

    std::vector<EventRecord> events;
    stage("events", [&] {
      for (std::size_t i = 0; i < clusters.size(); ++i) {
        const auto& cluster = clusters[i];
        const auto& ev = evidence[i];
        if (ev.fell_back) {
          log.push_back("interval " + std::to_string(interval.index) + " cluster " +
                        std::to_string(cluster.cluster_id) + ": remote recognizer fallback: " + ev.diagnostic);
        }
        const auto tokens = novelty_tokens(ev.sets);
        const double sim = novelty_similarity(tokens, memory_);
        const auto type =
            classify_event(cluster.tweet_ids.size(), sim, ev.sets, config_.detection, !seen_first_cluster_);
        seen_first_cluster_ = true;
        memory_.absorb(tokens);
        if (type == EventType::not_event) {
          out.not_event_cluster_ids.push_back(cluster.cluster_id);
          continue;
        }
        std::set<std::string> event_phrases;
        for (auto row : cluster.member_rows) {
          const auto& p = phrases.at(interval.tweets[row].id);
          event_phrases.insert(p.begin(), p.end());
        }
        const auto scores =
            score_event(type, ev.sets, cluster.tweet_ids.size(), weights, event_phrases, config_.detection);
        EventRecord rec;
        rec.interval_index = interval.index;
        rec.cluster_id = cluster.cluster_id;
        rec.event_type = type;
        rec.tweet_count = cluster.tweet_ids.size();
        rec.entity_score = scores.entity;
        rec.influence_score = scores.influence;
        rec.total_score = scores.total;
        rec.keywords.assign(ev.sets.union_all.begin(), ev.sets.union_all.end());
        rec.tweet_ids = cluster.tweet_ids;
        events.push_back(std::move(rec));
      }
      out.events = rank_events(std::move(events));
      return 0;
    });
    return out;
  }

  ClusterEvidence extract_one(const Cluster& cluster) const {
    ClusterEvidence ev;
    const CleanOptions opts{config_.stemming, config_.spell_correction};
    const auto doc = clean_text(cluster.aggregated_text, resources_->stopwords, &resources_->dictionary, opts);
    const auto keywords = select_keywords(textrank_rank(doc.tokens, config_.textrank), config_.textrank.keyword_fraction);
    std::vector<ScoredTerm> entities;
    if (remote_) {
      auto result = recognize_entities_remote(cluster.aggregated_text, *remote_, resources_->gazetteer);
      entities = std::move(result.entities);
      ev.fell_back = result.fell_back;
      ev.diagnostic = std::move(result.diagnostic);
    } else {
      entities = resources_->gazetteer.recognize(cluster.aggregated_text);
    }
    ev.sets = build_term_sets(keywords, entities, config_.promote_fraction);
    return ev;
  }

  // Remote lookups for all clusters run concurrently (the client caps the
  // number in flight); results keep cluster order.
  std::vector<ClusterEvidence> extract_all(const std::vector<Cluster>& clusters) const {
    std::vector<ClusterEvidence> out;
    out.reserve(clusters.size());
    if (!remote_) {
      for (const auto& c : clusters) out.push_back(extract_one(c));
      return out;
    }
    std::vector<std::future<ClusterEvidence>> pending;
    pending.reserve(clusters.size());
    for (const auto& c : clusters) {
      pending.push_back(std::async(std::launch::async, [this, &c] { return extract_one(c); }));
    }
    for (auto& f : pending) out.push_back(f.get());
    return out;
  }

  RunConfig config_;
  std::shared_ptr<const Resources> resources_;
  std::unique_ptr<RemoteNerClient> remote_;
  NoveltyMemory memory_;
  bool seen_first_cluster_ = false;
};

}  // namespace threatstream
