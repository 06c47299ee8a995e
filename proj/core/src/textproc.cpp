#include "scholarmap/textproc.hpp"

#include <charconv>

#include "scholarmap/errors.hpp"
#include "text_util.hpp"

namespace scholarmap {
namespace {

// A '<' opens a tag only when followed by a letter, '/', '!' or '?'.
bool opens_tag(std::string_view text, std::size_t i) {
  if (i + 1 >= text.size()) return false;
  char next = text[i + 1];
  return detail::is_ascii_alpha(next) || next == '/' || next == '!' || next == '?';
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Decodes the entity starting at text[i] == '&'. Returns the number of
// bytes consumed, or 0 if it is not a recognized entity.
std::size_t decode_entity(std::string_view text, std::size_t i, std::string& out) {
  std::size_t semi = text.find(';', i);
  if (semi == std::string_view::npos || semi - i > 10) return 0;
  std::string_view name = text.substr(i + 1, semi - i - 1);
  const std::size_t consumed = semi - i + 1;

  if (name == "amp") { out.push_back('&'); return consumed; }
  if (name == "lt") { out.push_back('<'); return consumed; }
  if (name == "gt") { out.push_back('>'); return consumed; }
  if (name == "quot") { out.push_back('"'); return consumed; }

  if (name.size() >= 2 && name[0] == '#') {
    int base = 10;
    std::string_view digits = name.substr(1);
    if (digits.front() == 'x' || digits.front() == 'X') {
      base = 16;
      digits.remove_prefix(1);
    }
    if (digits.empty()) return 0;
    std::uint32_t cp = 0;
    auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), cp, base);
    if (ec != std::errc{} || end != digits.data() + digits.size()) return 0;
    if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return 0;
    append_utf8(out, static_cast<char32_t>(cp));
    return consumed;
  }
  return 0;
}

}  // namespace

std::string strip_html(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size();) {
    char c = text[i];
    if (c == '<' && opens_tag(text, i)) {
      std::size_t close = text.find('>', i + 1);
      if (close != std::string_view::npos) {
        out.push_back(' ');
        i = close + 1;
        continue;
      }
    } else if (c == '&') {
      if (std::size_t n = decode_entity(text, i, out)) {
        i += n;
        continue;
      }
    }
    out.push_back(c);
    ++i;
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && !detail::is_ascii_alpha(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && detail::is_ascii_alpha(text[i])) ++i;
    if (i > start) tokens.emplace_back(text.substr(start, i - start));
  }
  return tokens;
}

std::vector<std::string> normalize(std::string_view text) {
  std::string cleaned = strip_html(text);
  for (char& c : cleaned) c = detail::ascii_lower(c);

  const auto& stopwords = StopwordList::instance();
  std::vector<std::string> out;
  for (auto& token : tokenize(cleaned)) {
    if (token.size() < kMinTokenLength || stopwords.contains(token)) continue;
    std::string stemmed = stem(token);
    if (stemmed.size() < kMinTokenLength) continue;
    out.push_back(std::move(stemmed));
  }
  return out;
}

Document build_document(const Researcher& researcher, PublicationSet set, int emphasis) {
  if (emphasis < 0 || emphasis > kMaxEmphasis) {
    throw InvalidParamError("invalid_emphasis",
                            "emphasis must be in [0, 10], got " + std::to_string(emphasis));
  }
  std::string source;
  for (const auto& pub : select_publication_set(researcher, set)) {
    source += pub.title;
    source.push_back(' ');
    source += pub.abstract;
    source.push_back(' ');
  }
  for (const auto& keyword : researcher.keywords) {
    for (int i = 0; i < emphasis; ++i) {
      source += keyword;
      source.push_back(' ');
    }
  }

  Document doc;
  doc.researcher_id = researcher.id;
  doc.tokens = normalize(source);
  for (const auto& token : doc.tokens) ++doc.token_counts[token];
  return doc;
}

}  // namespace scholarmap
