#include "scholarmap/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>
#include <unordered_map>

#include "csv.hpp"
#include "json.hpp"
#include "scholarmap/errors.hpp"
#include "text_util.hpp"

namespace scholarmap {
namespace {

using nlohmann::json;

struct RowContext {
  std::size_t row;
  std::size_t line;
};

std::vector<Publication> parse_publications(const std::string& cell, std::string_view column,
                                            const RowContext& ctx, std::vector<std::string>& warnings) {
  std::vector<Publication> pubs;
  if (detail::trim(cell).empty()) return pubs;

  const std::string field{column};
  json doc = json::parse(cell, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) throw RowError(ctx.row, ctx.line, field, "malformed JSON");
  if (!doc.is_array()) throw RowError(ctx.row, ctx.line, field, "expected a JSON array");

  for (std::size_t i = 0; i < doc.size(); ++i) {
    const json& item = doc[i];
    const std::string where = "publication " + std::to_string(i + 1) + ": ";
    if (!item.is_object()) throw RowError(ctx.row, ctx.line, field, where + "expected an object");

    Publication pub;
    auto title = item.find("title");
    if (title == item.end() || !title->is_string()) {
      throw RowError(ctx.row, ctx.line, field, where + "missing string \"title\"");
    }
    pub.title = std::string(detail::trim(title->get_ref<const std::string&>()));
    if (pub.title.empty()) throw RowError(ctx.row, ctx.line, field, where + "empty title");

    if (auto abstract = item.find("abstract"); abstract != item.end() && !abstract->is_null()) {
      if (!abstract->is_string()) {
        throw RowError(ctx.row, ctx.line, field, where + "\"abstract\" must be a string");
      }
      pub.abstract = abstract->get<std::string>();
    }

    if (auto year = item.find("year"); year != item.end() && !year->is_null()) {
      if (!year->is_number_integer()) {
        throw RowError(ctx.row, ctx.line, field, where + "\"year\" must be an integer");
      }
      auto value = year->get<std::int64_t>();
      if (value < kMinPublicationYear || value > kMaxPublicationYear) {
        throw RowError(ctx.row, ctx.line, field,
                       where + "year " + std::to_string(value) + " outside [1800, 2200]");
      }
      pub.year = static_cast<int>(value);
    }
    pubs.push_back(std::move(pub));
  }

  if (pubs.size() > kMaxPublicationsPerSet) {
    warnings.push_back("row " + std::to_string(ctx.row) + ": " + field + " has " +
                       std::to_string(pubs.size()) + " entries; kept the first " +
                       std::to_string(kMaxPublicationsPerSet));
    pubs.resize(kMaxPublicationsPerSet);
  }
  return pubs;
}

std::uint64_t parse_count(const std::string& cell, const RowContext& ctx) {
  std::string_view text = detail::trim(cell);
  if (text.empty()) return 0;
  std::uint64_t value = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    throw RowError(ctx.row, ctx.line, "citation_count",
                   "not a non-negative integer: '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string> parse_keywords(const std::string& cell) {
  std::vector<std::string> keywords;
  std::size_t start = 0;
  while (start <= cell.size()) {
    std::size_t end = cell.find(';', start);
    if (end == std::string::npos) end = cell.size();
    auto keyword = detail::trim(std::string_view(cell).substr(start, end - start));
    if (!keyword.empty()) keywords.emplace_back(keyword);
    start = end + 1;
  }
  return keywords;
}

json publications_to_json(const std::vector<Publication>& pubs) {
  json out = json::array();
  for (const auto& pub : pubs) {
    json item = json::object();
    item["title"] = pub.title;
    item["abstract"] = pub.abstract;
    if (pub.year) item["year"] = *pub.year;
    out.push_back(std::move(item));
  }
  return out;
}

}  // namespace

std::string_view to_string(PublicationSet set) noexcept {
  return set == PublicationSet::MostCited ? "most_cited" : "most_recent";
}

std::optional<PublicationSet> parse_publication_set(std::string_view text) noexcept {
  if (text == "most_cited") return PublicationSet::MostCited;
  if (text == "most_recent") return PublicationSet::MostRecent;
  return std::nullopt;
}

const Researcher* Dataset::find(std::string_view id) const noexcept {
  auto it = std::find_if(researchers.begin(), researchers.end(),
                         [&](const Researcher& r) { return r.id == id; });
  return it == researchers.end() ? nullptr : &*it;
}

std::string slugify(std::string_view name) {
  std::string slug;
  bool pending_hyphen = false;
  for (char c : name) {
    auto u = static_cast<unsigned char>(c);
    bool alnum = (u >= 'a' && u <= 'z') || (u >= 'A' && u <= 'Z') || (u >= '0' && u <= '9');
    if (!alnum) {
      pending_hyphen = true;
      continue;
    }
    if (pending_hyphen && !slug.empty()) slug.push_back('-');
    pending_hyphen = false;
    slug.push_back(detail::ascii_lower(c));
  }
  return slug;
}

const std::vector<Publication>& select_publication_set(const Researcher& researcher,
                                                       PublicationSet set) noexcept {
  return set == PublicationSet::MostCited ? researcher.most_cited : researcher.most_recent;
}

Dataset parse_dataset(std::string_view csv_bytes) {
  std::vector<detail::CsvRecord> records;
  try {
    records = detail::read_csv(csv_bytes);
  } catch (const detail::CsvSyntaxError& e) {
    if (e.record_index == 0) {
      throw SchemaError("header row: " + e.message,
                        std::vector<std::string>(std::begin(kRequiredColumns), std::end(kRequiredColumns)));
    }
    throw RowError(e.record_index, e.line, "(record)", e.message);
  }

  if (records.empty()) {
    std::vector<std::string> all(std::begin(kRequiredColumns), std::end(kRequiredColumns));
    throw SchemaError("input is empty: no header row", std::move(all));
  }

  const auto& header = records.front().fields;
  std::unordered_map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < header.size(); ++i) {
    position.try_emplace(std::string(detail::trim(header[i])), i);
  }
  std::vector<std::string> missing;
  for (auto column : kRequiredColumns) {
    if (!position.contains(std::string(column))) missing.emplace_back(column);
  }
  if (!missing.empty()) {
    std::string message = "missing required column(s):";
    for (const auto& m : missing) message += " " + m;
    throw SchemaError(message, std::move(missing));
  }
  auto col = [&](std::string_view name) { return position.at(std::string(name)); };

  Dataset dataset;
  dataset.source_digest = sha256_hex(csv_bytes);
  dataset.researchers.reserve(records.size() - 1);

  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& fields = records[r].fields;
    const RowContext ctx{r, records[r].line};
    if (fields.size() < header.size()) {
      // Name the first required column that has no cell.
      for (auto column : kRequiredColumns) {
        if (col(column) >= fields.size()) {
          throw RowError(ctx.row, ctx.line, std::string(column),
                         "row has " + std::to_string(fields.size()) + " fields, header has " +
                             std::to_string(header.size()));
        }
      }
    }
    if (fields.size() > header.size()) {
      throw RowError(ctx.row, ctx.line, "(record)",
                     "row has " + std::to_string(fields.size()) + " fields, header has " +
                         std::to_string(header.size()));
    }
    auto cell = [&](std::string_view name) -> const std::string& { return fields[col(name)]; };

    Researcher researcher;
    researcher.name = std::string(detail::trim(cell("name")));
    if (researcher.name.empty()) throw RowError(ctx.row, ctx.line, "name", "empty name");
    researcher.id = slugify(researcher.name);
    if (researcher.id.empty()) {
      throw RowError(ctx.row, ctx.line, "name",
                     "name '" + researcher.name + "' has no ASCII letters or digits for an id");
    }
    researcher.scholar_url = std::string(detail::trim(cell("scholar_url")));
    researcher.most_cited = parse_publications(cell("most_cited_publications"),
                                               "most_cited_publications", ctx, dataset.warnings);
    researcher.most_recent = parse_publications(cell("most_recent_publications"),
                                                "most_recent_publications", ctx, dataset.warnings);
    researcher.keywords = parse_keywords(cell("keywords"));
    researcher.citation_count = parse_count(cell("citation_count"), ctx);
    researcher.affiliation = std::string(detail::trim(cell("affiliation")));
    researcher.photo_url = std::string(detail::trim(cell("photo_url")));
    dataset.researchers.push_back(std::move(researcher));
  }

  // Ids: natural slug first; repeated slugs get "-2", "-3", ... in file order.
  std::unordered_map<std::string, std::size_t> natural_owner;  // slug -> row
  for (std::size_t i = 0; i < dataset.researchers.size(); ++i) {
    natural_owner.try_emplace(dataset.researchers[i].id, i + 1);
  }
  std::unordered_map<std::string, std::size_t> occurrences;
  std::unordered_map<std::string, std::size_t> assigned;  // id -> row
  for (std::size_t i = 0; i < dataset.researchers.size(); ++i) {
    auto& researcher = dataset.researchers[i];
    const std::size_t row = i + 1;
    const std::size_t seen = ++occurrences[researcher.id];
    if (seen > 1) {
      std::string candidate = researcher.id + "-" + std::to_string(seen);
      if (auto owner = natural_owner.find(candidate); owner != natural_owner.end()) {
        throw DuplicateIdError(candidate, owner->second, row);
      }
      researcher.id = std::move(candidate);
    }
    auto [it, inserted] = assigned.try_emplace(researcher.id, row);
    if (!inserted) throw DuplicateIdError(researcher.id, it->second, row);
  }
  return dataset;
}

Dataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open dataset file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError(path, "read failed");
  return parse_dataset(buffer.str());
}

std::string write_dataset_csv(const Dataset& dataset) {
  std::string out;
  for (std::size_t i = 0; i < std::size(kRequiredColumns); ++i) {
    if (i) out.push_back(',');
    out.append(kRequiredColumns[i]);
  }
  out.push_back('\n');
  for (const auto& r : dataset.researchers) {
    std::string keywords;
    for (std::size_t i = 0; i < r.keywords.size(); ++i) {
      if (i) keywords.push_back(';');
      keywords += r.keywords[i];
    }
    const std::string cells[] = {
        r.name,
        r.scholar_url,
        publications_to_json(r.most_cited).dump(),
        publications_to_json(r.most_recent).dump(),
        keywords,
        std::to_string(r.citation_count),
        r.affiliation,
        r.photo_url,
    };
    for (std::size_t i = 0; i < std::size(cells); ++i) {
      if (i) out.push_back(',');
      detail::append_csv_field(out, cells[i]);
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace scholarmap
