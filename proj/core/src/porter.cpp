// Porter stemmer, following the rules of the original 1980 description
// (steps 1a through 5b, one pass, no later revisions).

#include <span>
#include <string>
#include <string_view>

#include "scholarmap/textproc.hpp"

namespace scholarmap {
namespace {

struct Rule {
  std::string_view suffix;
  std::string_view replacement;
};

constexpr Rule kStep2[] = {
    {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},  {"anci", "ance"},
    {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},    {"entli", "ent"},
    {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
    {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
    {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},  {"biliti", "ble"},
};

constexpr Rule kStep3[] = {
    {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
    {"ical", "ic"},  {"ful", ""},   {"ness", ""},
};

constexpr std::string_view kStep4[] = {
    "al",  "ance", "ence", "er",  "ic",  "able", "ible", "ant", "ement", "ment",
    "ent", "ion",  "ou",   "ism", "ate", "iti",  "ous",  "ive", "ize",
};

class Stemmer {
 public:
  explicit Stemmer(std::string_view word) : b_(word) {}

  std::string run() && {
    step1a();
    step1b();
    step1c();
    step2();
    step3();
    step4();
    step5a();
    step5b();
    return std::move(b_);
  }

 private:
  bool is_consonant(std::size_t i) const {
    switch (b_[i]) {
      case 'a':
      case 'e':
      case 'i':
      case 'o':
      case 'u':
        return false;
      case 'y':
        return i == 0 || !is_consonant(i - 1);
      default:
        return true;
    }
  }

  // m in [C](VC)^m[V] for the prefix b_[0, len).
  int measure(std::size_t len) const {
    int m = 0;
    std::size_t i = 0;
    while (i < len && is_consonant(i)) ++i;
    while (i < len) {
      while (i < len && !is_consonant(i)) ++i;
      if (i >= len) break;
      while (i < len && is_consonant(i)) ++i;
      ++m;
    }
    return m;
  }

  bool has_vowel(std::size_t len) const {
    for (std::size_t i = 0; i < len; ++i) {
      if (!is_consonant(i)) return true;
    }
    return false;
  }

  bool ends_double_consonant(std::size_t len) const {
    return len >= 2 && b_[len - 1] == b_[len - 2] && is_consonant(len - 1);
  }

  // *o: stem ends consonant-vowel-consonant, final consonant not w, x or y.
  bool ends_cvc(std::size_t len) const {
    if (len < 3) return false;
    if (!is_consonant(len - 3) || is_consonant(len - 2) || !is_consonant(len - 1)) return false;
    char last = b_[len - 1];
    return last != 'w' && last != 'x' && last != 'y';
  }

  bool ends_with(std::string_view suffix) const { return std::string_view(b_).ends_with(suffix); }

  void replace_suffix(std::size_t suffix_len, std::string_view replacement) {
    b_.resize(b_.size() - suffix_len);
    b_.append(replacement);
  }

  // Only the longest matching suffix is considered; it fires when m(stem) > min_measure.
  void apply_longest(std::span<const Rule> rules, int min_measure) {
    const Rule* best = nullptr;
    for (const auto& rule : rules) {
      if (ends_with(rule.suffix) && (!best || rule.suffix.size() > best->suffix.size())) best = &rule;
    }
    if (best && measure(b_.size() - best->suffix.size()) > min_measure) {
      replace_suffix(best->suffix.size(), best->replacement);
    }
  }

  void step1a() {
    if (ends_with("sses")) {
      replace_suffix(4, "ss");
    } else if (ends_with("ies")) {
      replace_suffix(3, "i");
    } else if (ends_with("ss")) {
      // unchanged
    } else if (ends_with("s")) {
      replace_suffix(1, "");
    }
  }

  void step1b() {
    if (ends_with("eed")) {
      if (measure(b_.size() - 3) > 0) replace_suffix(1, "");
      return;
    }
    bool removed = false;
    if (ends_with("ed") && has_vowel(b_.size() - 2)) {
      replace_suffix(2, "");
      removed = true;
    } else if (ends_with("ing") && has_vowel(b_.size() - 3)) {
      replace_suffix(3, "");
      removed = true;
    }
    if (!removed) return;

    if (ends_with("at") || ends_with("bl") || ends_with("iz")) {
      b_.push_back('e');
    } else if (ends_double_consonant(b_.size())) {
      char last = b_.back();
      if (last != 'l' && last != 's' && last != 'z') b_.pop_back();
    } else if (measure(b_.size()) == 1 && ends_cvc(b_.size())) {
      b_.push_back('e');
    }
  }

  void step1c() {
    if (ends_with("y") && has_vowel(b_.size() - 1)) b_.back() = 'i';
  }

  void step2() { apply_longest(kStep2, 0); }
  void step3() { apply_longest(kStep3, 0); }

  void step4() {
    std::string_view best;
    for (auto suffix : kStep4) {
      if (ends_with(suffix) && suffix.size() > best.size()) best = suffix;
    }
    if (best.empty()) return;
    const std::size_t stem_len = b_.size() - best.size();
    if (measure(stem_len) <= 1) return;
    if (best == "ion" && !(stem_len > 0 && (b_[stem_len - 1] == 's' || b_[stem_len - 1] == 't'))) {
      return;
    }
    b_.resize(stem_len);
  }

  void step5a() {
    if (!ends_with("e")) return;
    const std::size_t stem_len = b_.size() - 1;
    const int m = measure(stem_len);
    if (m > 1 || (m == 1 && !ends_cvc(stem_len))) b_.pop_back();
  }

  void step5b() {
    if (measure(b_.size()) > 1 && ends_double_consonant(b_.size()) && b_.back() == 'l') b_.pop_back();
  }

  std::string b_;
};

}  // namespace

std::string stem(std::string_view token) {
  if (token.empty()) return {};
  return Stemmer(token).run();
}

}  // namespace scholarmap
