#include "test_support.hpp"

#include <atomic>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

namespace scholarmap::testing {
namespace fs = std::filesystem;
using nlohmann::json;

fs::path data_dir() { return SCHOLARMAP_TEST_DATA_DIR; }
fs::path schema_dir() { return SCHOLARMAP_SCHEMA_DIR; }
fs::path cli_path() { return SCHOLARMAP_CLI_PATH; }
fs::path fixture_csv() { return data_dir() / "researchers.csv"; }

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path make_temp_dir(const std::string& tag) {
  static std::atomic<int> counter{0};
  auto dir = fs::temp_directory_path() /
             ("scholarmap-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

namespace {

std::string make_word(std::size_t index) {
  static constexpr char kConsonants[] = "bdfgklmnprtvz";
  static constexpr char kVowels[] = "aeiou";
  std::string word;
  std::size_t x = index;
  do {
    word += kConsonants[x % 13];
    x /= 13;
    word += kVowels[x % 5];
    x /= 5;
  } while (x > 0);
  word += 'q';
  return word;
}

}  // namespace

std::string synthetic_csv(std::size_t n, std::size_t vocab, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> words(vocab);
  for (std::size_t i = 0; i < vocab; ++i) words[i] = make_word(i);

  // Each researcher draws mostly from a private topic slice, plus a shared
  // head so columns overlap. Term t is guaranteed to appear for researcher t % n.
  std::uniform_int_distribution<std::size_t> any(0, vocab - 1);
  std::uniform_int_distribution<std::size_t> head(0, std::min<std::size_t>(vocab, 200) - 1);
  std::string csv = "name,scholar_url,most_cited_publications,most_recent_publications,keywords,citation_count,"
                    "affiliation,photo_url\n";
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<std::size_t> owned;
    for (std::size_t t = r; t < vocab; t += n) owned.push_back(t);
    std::uniform_int_distribution<std::size_t> mine(0, owned.size() - 1);

    json pubs = json::array();
    std::size_t next_owned = 0;
    for (int p = 0; p < 50; ++p) {
      std::string title;
      std::string abstract;
      for (int w = 0; w < 8; ++w) title += words[owned[mine(rng)]] + ' ';
      for (int w = 0; w < 150; ++w) {
        std::size_t t;
        if (next_owned < owned.size()) {
          t = owned[next_owned++];
        } else {
          const auto roll = rng() % 10;
          t = roll < 6 ? owned[mine(rng)] : roll < 9 ? head(rng) : any(rng);
        }
        abstract += words[t] + ' ';
      }
      pubs.push_back(json{{"title", title}, {"abstract", abstract}, {"year", 2000 + p % 24}});
    }
    json recent = json::array();
    recent.push_back(json{{"title", words[owned[0]]}, {"abstract", ""}});

    const std::string name = "Researcher " + std::to_string(r);
    auto quote = [](const std::string& s) {
      std::string out = "\"";
      for (char c : s) {
        if (c == '"') out += '"';
        out += c;
      }
      return out + '"';
    };
    csv += name + ",https://scholar.example/" + std::to_string(r) + "," + quote(pubs.dump()) + "," +
           quote(recent.dump()) + "," + words[owned[0]] + ";" + words[owned[1 % owned.size()]] + "," +
           std::to_string(100 * r) + ",Synthetic Institute,\n";
  }
  return csv;
}

std::vector<Point2D> random_points(std::size_t n, std::uint64_t seed, double scale) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<Point2D> pts(n);
  for (auto& p : pts) {
    p.x = u(rng);
    p.y = u(rng);
  }
  return pts;
}

std::vector<Point2D> two_blobs(std::size_t per_blob, Point2D a, Point2D b, double sigma, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, sigma);
  std::vector<Point2D> pts;
  for (const auto& c : {a, b}) {
    for (std::size_t i = 0; i < per_blob; ++i) pts.push_back({c.x + g(rng), c.y + g(rng)});
  }
  return pts;
}

namespace {

const json& load_schema(const std::string& file) {
  static std::map<std::string, json> cache;
  auto it = cache.find(file);
  if (it == cache.end()) it = cache.emplace(file, json::parse(read_file(schema_dir() / file))).first;
  return it->second;
}

bool type_matches(const json& v, const std::string& type) {
  if (type == "object") return v.is_object();
  if (type == "array") return v.is_array();
  if (type == "string") return v.is_string();
  if (type == "integer") return v.is_number_integer();
  if (type == "number") return v.is_number();
  if (type == "boolean") return v.is_boolean();
  if (type == "null") return v.is_null();
  return false;
}

void check(const json& v, const json& schema, const std::string& where, std::vector<std::string>& errors) {
  if (schema.contains("$ref")) {
    check(v, load_schema(schema["$ref"].get<std::string>()), where, errors);
    return;
  }
  auto fail = [&](const std::string& what) { errors.push_back(where + ": " + what); };
  if (schema.contains("type") && !type_matches(v, schema["type"].get<std::string>())) {
    fail("expected " + schema["type"].get<std::string>());
    return;
  }
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& e : schema["enum"]) found = found || e == v;
    if (!found) fail("value not in enum: " + v.dump());
  }
  if (v.is_number()) {
    const double x = v.get<double>();
    if (schema.contains("minimum") && x < schema["minimum"].get<double>()) fail("below minimum");
    if (schema.contains("maximum") && x > schema["maximum"].get<double>()) fail("above maximum");
  }
  if (v.is_string() && schema.contains("minLength") &&
      v.get<std::string>().size() < schema["minLength"].get<std::size_t>()) {
    fail("string too short");
  }
  if (v.is_array()) {
    if (schema.contains("minItems") && v.size() < schema["minItems"].get<std::size_t>()) fail("too few items");
    if (schema.contains("maxItems") && v.size() > schema["maxItems"].get<std::size_t>()) fail("too many items");
    if (schema.contains("items")) {
      for (std::size_t i = 0; i < v.size(); ++i) check(v[i], schema["items"], where + "[" + std::to_string(i) + "]", errors);
    }
  }
  if (v.is_object()) {
    if (schema.contains("required")) {
      for (const auto& r : schema["required"]) {
        if (!v.contains(r.get<std::string>())) fail("missing " + r.get<std::string>());
      }
    }
    const json* props = schema.contains("properties") ? &schema["properties"] : nullptr;
    for (const auto& [key, value] : v.items()) {
      if (props && props->contains(key)) {
        check(value, (*props)[key], where + "." + key, errors);
      } else if (schema.contains("additionalProperties")) {
        const auto& extra = schema["additionalProperties"];
        if (extra.is_boolean()) {
          if (!extra.get<bool>()) fail("unexpected property " + key);
        } else {
          check(value, extra, where + "." + key, errors);
        }
      }
    }
  }
}

}  // namespace

std::vector<std::string> validate_against(const json& instance, const std::string& schema_file) {
  std::vector<std::string> errors;
  check(instance, load_schema(schema_file), "$", errors);
  return errors;
}

std::string points_block(const std::string& map_body) {
  const auto begin = map_body.find("\"points\":");
  const auto end = map_body.find(",\"assignments\":");
  if (begin == std::string::npos || end == std::string::npos || end < begin) return {};
  return map_body.substr(begin, end - begin);
}

double pair_agreement(const std::vector<int>& a, const std::vector<int>& b) {
  std::size_t agree = 0;
  std::size_t total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      agree += (a[i] == a[j]) == (b[i] == b[j]);
      ++total;
    }
  }
  return total == 0 ? 1.0 : static_cast<double>(agree) / static_cast<double>(total);
}

}  // namespace scholarmap::testing
