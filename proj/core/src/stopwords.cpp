#include <algorithm>

#include "scholarmap/errors.hpp"
#include "scholarmap/textproc.hpp"
#include "text_util.hpp"

namespace scholarmap {
namespace detail {
extern const std::string_view kStopwordFileText;
}  // namespace detail

namespace {
constexpr std::string_view kStopwordSha256 =
    "4e22be0ad71ae1c41dd7a8f944e851ead671d114edf4faad1ee8c698d2ba5084";
}  // namespace

std::string_view StopwordList::expected_checksum() noexcept { return kStopwordSha256; }

StopwordList::StopwordList() {
  const std::string_view text = detail::kStopwordFileText;
  if (sha256_hex(text) != kStopwordSha256) {
    throw Error("bundled stopword list is corrupt: checksum mismatch");
  }
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto word = detail::trim(text.substr(start, end - start));
    if (!word.empty()) words_.emplace_back(word);
    start = end + 1;
  }
  std::sort(words_.begin(), words_.end());
  words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
}

const StopwordList& StopwordList::instance() {
  static const StopwordList list;
  return list;
}

bool StopwordList::contains(std::string_view word) const noexcept {
  return std::binary_search(words_.begin(), words_.end(), word, std::less<>{});
}

}  // namespace scholarmap
