// scholarmap: build, query, serve and export a researcher map from a CSV.
//
// Exit codes: 0 success, 1 input or validation error, 2 query error.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "scholarmap/errors.hpp"
#include "scholarmap/mapstate.hpp"
#include "scholarmap/service.hpp"

namespace {

using namespace scholarmap;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitQuery = 2;

struct Options {
  std::vector<std::string> args;
  std::string dataset;
  std::optional<std::string> pubset;
  std::optional<int> emphasis;
  std::optional<int> k;
  std::optional<std::uint64_t> seed;
  int top = static_cast<int>(kDefaultTopK);
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string out;
  std::string static_dir;
};

std::string resolve_dataset(const Options& opt, std::size_t positional_index) {
  if (opt.args.size() > positional_index) return opt.args[positional_index];
  if (!opt.dataset.empty()) return opt.dataset;
  if (const char* env = std::getenv("SCHOLAR_MAP_DATASET"); env && *env) return env;
  throw InvalidParamError("missing_dataset", "no dataset given (argument, --dataset, or SCHOLAR_MAP_DATASET)");
}

MapParams resolve_params(const Options& opt, const Dataset& dataset) {
  MapParams params = default_params(dataset.size());
  if (opt.pubset) {
    auto set = parse_publication_set(*opt.pubset);
    if (!set) throw InvalidParamError("invalid_pubset", "--pubset must be most_cited or most_recent");
    params.pub_set = *set;
  }
  if (opt.emphasis) params.emphasis = *opt.emphasis;
  if (opt.k) params.k = *opt.k;
  if (opt.seed) params.seed = *opt.seed;
  validate_params(params, dataset.size());
  return params;
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

int run_build(const Options& opt) {
  const Dataset dataset = load_dataset(resolve_dataset(opt, 0));
  const MapParams params = resolve_params(opt, dataset);
  auto stage = build_embedding_stage(dataset, params.pub_set, params.emphasis);
  std::cout << dataset.size() << " researchers, vocabulary " << stage->tfidf.rows() << " terms\n";
  print_warnings(dataset.warnings);
  print_warnings(stage->warnings);
  return kExitOk;
}

int run_query(const Options& opt) {
  std::string text;
  std::string path;
  if (opt.args.size() >= 2) {
    path = opt.args[0];
    text = opt.args[1];
  } else if (opt.args.size() == 1) {
    text = opt.args[0];
    path = resolve_dataset(opt, 1);
  } else {
    throw InvalidParamError("empty_query", "no query text given");
  }
  if (opt.top < 1) throw InvalidParamError("invalid_top", "--top must be at least 1");

  const Dataset dataset = load_dataset(path);
  const MapParams params = resolve_params(opt, dataset);
  auto stage = build_embedding_stage(dataset, params.pub_set, params.emphasis);
  const QueryResult result = query_embedding(*stage, text, static_cast<std::size_t>(opt.top));

  if (!result.dropped_terms.empty()) {
    std::cerr << "ignored terms:";
    for (const auto& t : result.dropped_terms) std::cerr << ' ' << t;
    std::cerr << '\n';
  }
  std::size_t rank = 0;
  for (const auto& entry : result.top) {
    if (entry.score <= 0.0) break;
    const Researcher* r = dataset.find(entry.id);
    std::printf("%zu\t%s\t%s\t%.4f\n", ++rank, entry.id.c_str(), r ? r->name.c_str() : "", entry.score);
  }
  return kExitOk;
}

int run_serve(const Options& opt) {
  ApiConfig config;
  config.host = opt.host;
  config.port = opt.port;
  validate_config(config);
  config.dataset_path = resolve_dataset(opt, 0);
  if (!opt.static_dir.empty()) config.static_dir = opt.static_dir;

  auto engine = std::make_shared<MapEngine>(load_dataset(config.dataset_path));
  config.defaults = resolve_params(opt, engine->dataset());
  engine->map(config.defaults);  // fail fast on a degenerate dataset
  print_warnings(engine->dataset().warnings);

  HttpServer server(engine, config);
  const int port = server.bind();
  std::cout << "serving " << engine->dataset().size() << " researchers on http://" << config.host << ':' << port
            << std::endl;
  server.serve();
  return kExitOk;
}

int run_export(const Options& opt) {
  if (opt.out.empty()) throw InvalidParamError("missing_out", "--out is required");
  MapEngine engine(load_dataset(resolve_dataset(opt, 0)));
  const MapParams params = resolve_params(opt, engine.dataset());
  const ExportResult result = export_static(engine, params, opt.out);
  print_warnings(engine.dataset().warnings);
  std::cout << "wrote " << result.files.size() << " files to " << opt.out << '\n';
  return kExitOk;
}

void add_map_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--dataset,-d", opt.dataset, "Dataset CSV (default: $SCHOLAR_MAP_DATASET)");
  cmd->add_option("--pubset", opt.pubset, "most_cited or most_recent");
  cmd->add_option("--emphasis", opt.emphasis, "Keyword repetitions, 0-10");
  cmd->add_option("--k", opt.k, "Number of clusters, 1-min(10, n)");
  cmd->add_option("--seed", opt.seed, "Clustering seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Researcher map: TFIDF, PCA and Gaussian-mixture clustering over publication text"};
  app.require_subcommand(1, 1);
  Options opt;

  auto* build = app.add_subcommand("build", "Parse and validate a dataset, print a summary");
  build->add_option("csv", opt.args, "Dataset CSV")->expected(0, 1);
  add_map_flags(build, opt);

  auto* query = app.add_subcommand("query", "Rank researchers against a topic query");
  query->add_option("args", opt.args, "[dataset] text")->expected(1, 2);
  query->add_option("--top", opt.top, "Rows to print");
  add_map_flags(query, opt);

  auto* serve = app.add_subcommand("serve", "Serve the HTTP API");
  serve->add_option("csv", opt.args, "Dataset CSV")->expected(0, 1);
  serve->add_option("--host", opt.host, "Bind address");
  serve->add_option("--port", opt.port, "Port, 1-65535");
  serve->add_option("--static", opt.static_dir, "Directory to serve at /");
  add_map_flags(serve, opt);

  auto* exp = app.add_subcommand("export", "Write static JSON files");
  exp->add_option("csv", opt.args, "Dataset CSV")->expected(0, 1);
  exp->add_option("--out,-o", opt.out, "Output directory")->required();
  add_map_flags(exp, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*build) return run_build(opt);
    if (*query) return run_query(opt);
    if (*serve) return run_serve(opt);
    return run_export(opt);
  } catch (const EmptyQueryError& e) {
    std::cerr << "error: empty_query: " << e.what() << '\n';
    return kExitQuery;
  } catch (const InvalidParamError& e) {
    std::cerr << "error: " << e.code() << ": " << e.what() << '\n';
    return e.code() == "empty_query" ? kExitQuery : kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
}
