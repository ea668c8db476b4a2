#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace threatstream {

/// Porter (1980) suffix stripper, original rule set without later
/// extensions. Input is expected lowercase.
class PorterStemmer {
 public:
  std::string operator()(std::string_view token) const {
    std::string w(token);
    w = step1a(w);
    w = step1b(w);
    w = step1c(w);
    w = step2(w);
    w = step3(w);
    w = step4(w);
    w = step5a(w);
    w = step5b(w);
    return w;
  }

 private:
  using Condition = std::function<bool(const std::string&)>;
  struct Rule {
    std::string_view suffix;
    std::string_view replacement;
    Condition condition;
  };

  static bool is_vowel_letter(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

  // 'y' is a consonant at the start of a word or after a vowel.
  static std::vector<bool> consonant_flags(const std::string& w) {
    std::vector<bool> flags(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (is_vowel_letter(w[i])) {
        flags[i] = false;
      } else if (w[i] == 'y') {
        flags[i] = i == 0 ? true : !flags[i - 1];
      } else {
        flags[i] = true;
      }
    }
    return flags;
  }

  static bool is_consonant(const std::string& w, std::size_t i) { return consonant_flags(w)[i]; }

  // m in [C](VC){m}[V]
  static int measure(const std::string& stem) {
    const auto flags = consonant_flags(stem);
    int m = 0;
    for (std::size_t i = 1; i < flags.size(); ++i) {
      if (!flags[i - 1] && flags[i]) ++m;
    }
    return m;
  }

  static bool contains_vowel(const std::string& stem) {
    for (bool c : consonant_flags(stem)) {
      if (!c) return true;
    }
    return false;
  }

  static bool ends_double_consonant(const std::string& w) {
    return w.size() >= 2 && w[w.size() - 1] == w[w.size() - 2] && is_consonant(w, w.size() - 1);
  }

  // *o: ends consonant-vowel-consonant, last not w, x or y
  static bool ends_cvc(const std::string& w) {
    if (w.size() < 3) return false;
    const auto f = consonant_flags(w);
    const std::size_t n = w.size();
    const char last = w[n - 1];
    return f[n - 3] && !f[n - 2] && f[n - 1] && last != 'w' && last != 'x' && last != 'y';
  }

  static bool ends_with(const std::string& w, std::string_view suffix) {
    return w.size() >= suffix.size() && std::string_view(w).substr(w.size() - suffix.size()) == suffix;
  }

  static bool positive_measure(const std::string& stem) { return measure(stem) > 0; }
  static bool measure_above_one(const std::string& stem) { return measure(stem) > 1; }

  // The first rule whose suffix matches decides; a failed condition stops the step.
  static std::string apply_rules(const std::string& w, const std::vector<Rule>& rules) {
    for (const auto& rule : rules) {
      if (ends_with(w, rule.suffix)) {
        std::string stem = w.substr(0, w.size() - rule.suffix.size());
        if (!rule.condition || rule.condition(stem)) return stem + std::string(rule.replacement);
        return w;
      }
    }
    return w;
  }

  static std::string step1a(const std::string& w) {
    static const std::vector<Rule> rules{{"sses", "ss", {}}, {"ies", "i", {}}, {"ss", "ss", {}}, {"s", "", {}}};
    return apply_rules(w, rules);
  }

  static std::string step1b(const std::string& w) {
    if (ends_with(w, "eed")) {
      std::string stem = w.substr(0, w.size() - 3);
      return measure(stem) > 0 ? stem + "ee" : w;
    }
    std::string stem;
    bool stripped = false;
    for (std::string_view suffix : {std::string_view("ed"), std::string_view("ing")}) {
      if (ends_with(w, suffix)) {
        stem = w.substr(0, w.size() - suffix.size());
        if (contains_vowel(stem)) {
          stripped = true;
          break;
        }
      }
    }
    if (!stripped) return w;

    if (ends_with(stem, "at") || ends_with(stem, "bl") || ends_with(stem, "iz")) return stem + "e";
    if (ends_double_consonant(stem)) {
      const char last = stem.back();
      if (last != 'l' && last != 's' && last != 'z') stem.pop_back();
      return stem;
    }
    if (measure(stem) == 1 && ends_cvc(stem)) return stem + "e";
    return stem;
  }

  static std::string step1c(const std::string& w) {
    static const std::vector<Rule> rules{{"y", "i", contains_vowel}};
    return apply_rules(w, rules);
  }

  static std::string step2(const std::string& w) {
    static const std::vector<Rule> rules{
        {"ational", "ate", positive_measure}, {"tional", "tion", positive_measure},
        {"enci", "ence", positive_measure},   {"anci", "ance", positive_measure},
        {"izer", "ize", positive_measure},    {"abli", "able", positive_measure},
        {"alli", "al", positive_measure},     {"entli", "ent", positive_measure},
        {"eli", "e", positive_measure},       {"ousli", "ous", positive_measure},
        {"ization", "ize", positive_measure}, {"ation", "ate", positive_measure},
        {"ator", "ate", positive_measure},    {"alism", "al", positive_measure},
        {"iveness", "ive", positive_measure}, {"fulness", "ful", positive_measure},
        {"ousness", "ous", positive_measure}, {"aliti", "al", positive_measure},
        {"iviti", "ive", positive_measure},   {"biliti", "ble", positive_measure},
    };
    return apply_rules(w, rules);
  }

  static std::string step3(const std::string& w) {
    static const std::vector<Rule> rules{
        {"icate", "ic", positive_measure}, {"ative", "", positive_measure}, {"alize", "al", positive_measure},
        {"iciti", "ic", positive_measure}, {"ical", "ic", positive_measure}, {"ful", "", positive_measure},
        {"ness", "", positive_measure},
    };
    return apply_rules(w, rules);
  }

  static std::string step4(const std::string& w) {
    static const std::vector<Rule> rules{
        {"al", "", measure_above_one},
        {"ance", "", measure_above_one},
        {"ence", "", measure_above_one},
        {"er", "", measure_above_one},
        {"ic", "", measure_above_one},
        {"able", "", measure_above_one},
        {"ible", "", measure_above_one},
        {"ant", "", measure_above_one},
        {"ement", "", measure_above_one},
        {"ment", "", measure_above_one},
        {"ent", "", measure_above_one},
        {"ion", "", [](const std::string& s) { return measure(s) > 1 && (s.back() == 's' || s.back() == 't'); }},
        {"ou", "", measure_above_one},
        {"ism", "", measure_above_one},
        {"ate", "", measure_above_one},
        {"iti", "", measure_above_one},
        {"ous", "", measure_above_one},
        {"ive", "", measure_above_one},
        {"ize", "", measure_above_one},
    };
    return apply_rules(w, rules);
  }

  static std::string step5a(const std::string& w) {
    if (!ends_with(w, "e")) return w;
    std::string stem = w.substr(0, w.size() - 1);
    const int m = measure(stem);
    if (m > 1 || (m == 1 && !ends_cvc(stem))) return stem;
    return w;
  }

  static std::string step5b(const std::string& w) {
    if (ends_with(w, "ll") && measure(w.substr(0, w.size() - 1)) > 1) return w.substr(0, w.size() - 1);
    return w;
  }
};

inline std::string stem(std::string_view token) { return PorterStemmer{}(token); }

}  // namespace threatstream
