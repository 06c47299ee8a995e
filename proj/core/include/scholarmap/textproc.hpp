#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "scholarmap/ingest.hpp"

namespace scholarmap {

inline constexpr int kMaxEmphasis = 10;
inline constexpr std::size_t kMinTokenLength = 2;

/// One researcher's combined, normalized text.
struct Document {
  std::string researcher_id;
  std::vector<std::string> tokens;                   // pipeline output order
  std::map<std::string, std::size_t> token_counts;   // multiset of `tokens`

  bool empty() const noexcept { return tokens.empty(); }
};

/// Removes `<...>` tags (each replaced by one space) and decodes
/// &amp; &lt; &gt; &quot; and numeric &#NN; / &#xNN; entities.
/// A `<` that does not open a tag is kept literally.
std::string strip_html(std::string_view text);

/// Splits on every character that is not an ASCII letter.
std::vector<std::string> tokenize(std::string_view text);

/// Porter (1980) stemmer, single pass. Input must be lowercase ASCII letters.
std::string stem(std::string_view token);

/// strip_html -> lowercase -> tokenize -> drop short -> drop stopwords -> stem.
/// Tokens that the stemmer shortens below two characters are dropped too.
std::vector<std::string> normalize(std::string_view text);

/// Titles and abstracts of the selected publication set followed by every
/// keyword repeated `emphasis` times, normalized. `emphasis` must be in
/// [0, kMaxEmphasis]; throws InvalidParamError otherwise.
Document build_document(const Researcher& researcher, PublicationSet set, int emphasis);

/// The bundled English stopword list.
class StopwordList {
 public:
  /// Returns the process-wide list. Verifies the embedded checksum on first
  /// use and throws Error if it does not match.
  static const StopwordList& instance();

  bool contains(std::string_view word) const noexcept;
  std::size_t size() const noexcept { return words_.size(); }
  const std::vector<std::string>& words() const noexcept { return words_; }
  /// SHA-256 of the stopword file as shipped.
  static std::string_view expected_checksum() noexcept;

 private:
  StopwordList();
  std::vector<std::string> words_;  // sorted
};

inline bool is_stopword(std::string_view word) { return StopwordList::instance().contains(word); }

}  // namespace scholarmap
