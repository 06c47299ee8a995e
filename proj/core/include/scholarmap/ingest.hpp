#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scholarmap {

inline constexpr std::size_t kMaxPublicationsPerSet = 50;
inline constexpr int kMinPublicationYear = 1800;
inline constexpr int kMaxPublicationYear = 2200;

/// Column names of the researcher CSV, in canonical order.
inline constexpr std::string_view kRequiredColumns[] = {
    "name",     "scholar_url",    "most_cited_publications", "most_recent_publications",
    "keywords", "citation_count", "affiliation",             "photo_url",
};

struct Publication {
  std::string title;
  std::string abstract;
  std::optional<int> year;

  bool operator==(const Publication&) const = default;
};

struct Researcher {
  std::string id;
  std::string name;
  std::string scholar_url;
  std::vector<Publication> most_cited;
  std::vector<Publication> most_recent;
  std::vector<std::string> keywords;
  std::uint64_t citation_count = 0;
  std::string affiliation;
  std::string photo_url;

  bool operator==(const Researcher&) const = default;
};

enum class PublicationSet { MostCited, MostRecent };

std::string_view to_string(PublicationSet set) noexcept;
/// Accepts "most_cited" / "most_recent".
std::optional<PublicationSet> parse_publication_set(std::string_view text) noexcept;

struct Dataset {
  std::vector<Researcher> researchers;  // input file order
  std::string source_digest;            // SHA-256 hex of the raw bytes
  std::vector<std::string> warnings;    // e.g. truncated publication lists

  std::size_t size() const noexcept { return researchers.size(); }
  const Researcher* find(std::string_view id) const noexcept;
};

/// Parses the researcher CSV. Publication columns hold JSON arrays of
/// {"title","abstract","year"} objects; keywords are semicolon separated.
///
/// Throws SchemaError, RowError or DuplicateIdError.
Dataset parse_dataset(std::string_view csv_bytes);

/// Reads `path` and parses it. Throws IoError if the file cannot be read.
Dataset load_dataset(const std::filesystem::path& path);

/// Serializes back to the CSV schema; parse_dataset(write_dataset_csv(d))
/// reproduces the researchers of `d`.
std::string write_dataset_csv(const Dataset& dataset);

const std::vector<Publication>& select_publication_set(const Researcher& researcher,
                                                       PublicationSet set) noexcept;

/// Lowercases ASCII, collapses every run of other characters into one '-'
/// and trims leading/trailing hyphens. May return an empty string.
std::string slugify(std::string_view name);

std::string sha256_hex(std::string_view bytes);

}  // namespace scholarmap
