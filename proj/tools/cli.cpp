#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fmt/format.h>
#include <fstream>
#include <map>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "kwnet/centrality.hpp"
#include "kwnet/corpus.hpp"
#include "kwnet/embedding.hpp"
#include "kwnet/error.hpp"
#include "kwnet/evaluation.hpp"
#include "kwnet/graph.hpp"
#include "kwnet/text.hpp"

namespace kwnet::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Bump when cached cell contents would change for identical inputs.
constexpr std::string_view kCacheVersion = "kwnet-sweep-cache-1";

struct Inputs {
  std::string corpus;
  std::string stopwords;
  std::string stemmer = "porter";
  std::vector<std::string> embeddings;
  std::string mode = "static";
  unsigned jobs = 1;
};

struct GraphOptions {
  int window = 1;
  double fraction = 0.0;
  std::string measures = "all";
  std::string doc;
  std::string out;
};

struct SweepArgs {
  std::string windows = "1,2,3";
  std::string fractions;
  std::string measures = "all";
  std::string out;
};

void add_corpus_options(CLI::App* sub, Inputs& in) {
  sub->add_option("--corpus", in.corpus, "Corpus file (JSON lines: id, text, keywords)")->required();
  sub->add_option("--stopwords", in.stopwords, "Stopword file, one word per line (default: built-in English list)");
  sub->add_option("--stemmer", in.stemmer, "porter, porter-fixpoint or none")->capture_default_str();
  sub->add_option("--jobs", in.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
}

void add_embedding_options(CLI::App* sub, Inputs& in) {
  sub->add_option("--embeddings", in.embeddings, "Vector file; repeat for several columns in a sweep");
  sub->add_option("--embedding-mode", in.mode, "static, bert-sim1 or bert-sim2")->capture_default_str();
}

void require_files(std::initializer_list<const std::string*> singles, const std::vector<std::string>& many = {}) {
  auto check = [](const std::string& p) {
    if (!p.empty() && !fs::is_regular_file(p)) throw DataError("input file not found: " + p);
  };
  for (const auto* p : singles) check(*p);
  for (const auto& p : many) check(p);
}

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t hash_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::uint64_t h = fnv1a({});
  std::string buffer(1 << 16, '\0');
  while (in.read(buffer.data(), static_cast<std::streamsize>(buffer.size())) || in.gcount() > 0) {
    h = fnv1a(std::string_view(buffer.data(), static_cast<std::size_t>(in.gcount())), h);
  }
  return h;
}

struct Corpus {
  std::vector<RawDocument> raw;
  std::vector<ProcessedDocument> docs;
  std::optional<StopwordSet> stopwords;
  PreprocessOptions options;
};

Corpus load(const Inputs& in, std::ostream& err) {
  Corpus c;
  if (!in.stopwords.empty()) c.stopwords = load_stopwords(in.stopwords);
  c.options.stemmer = parse_stemmer(in.stemmer);
  c.options.stopwords = c.stopwords ? &*c.stopwords : nullptr;
  c.raw = load_corpus(in.corpus);
  c.docs = preprocess_corpus(c.raw, c.options, in.jobs);
  for (const auto& d : c.docs) {
    if (!d.usable) err << fmt::format("warning: document '{}' skipped: {}\n", d.id, d.issue);
  }
  return c;
}

EmbeddingConfig load_embedding(const std::string& path, SimilarityMode mode) {
  EmbeddingConfig e;
  e.descriptor = fmt::format("{}:{}", to_string(mode), fs::path(path).stem().string());
  e.similarity.mode = mode;
  if (mode == SimilarityMode::static_cosine) {
    e.table = std::make_shared<const StaticEmbeddingTable>(load_static_embeddings(path));
  } else {
    e.contextual = std::make_shared<const ContextualEmbeddingCorpus>(load_contextual_embeddings(path));
  }
  return e;
}

std::vector<EmbeddingConfig> load_embeddings(const Inputs& in) {
  const SimilarityMode mode = parse_similarity_mode(in.mode);
  std::vector<EmbeddingConfig> out;
  for (const auto& p : in.embeddings) out.push_back(load_embedding(p, mode));
  return out;
}

std::optional<EmbeddingConfig> single_embedding(const Inputs& in) {
  if (in.embeddings.size() > 1) throw ConfigError("this command takes at most one --embeddings file");
  auto all = load_embeddings(in);
  if (all.empty()) return std::nullopt;
  return std::move(all.front());
}

double parse_number(std::string_view text, std::string_view what) {
  try {
    std::size_t used = 0;
    const std::string s(text);
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(fmt::format("invalid {} '{}'", what, text));
  }
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    const auto pos = text.find(sep);
    out.push_back(text.substr(0, pos));
    if (pos == std::string_view::npos) break;
    text.remove_prefix(pos + 1);
  }
  return out;
}

// "0,0.05,0.1" or "first:last:step", or a comma list mixing both.
std::vector<double> parse_fractions(std::string_view text) {
  std::vector<double> out;
  for (auto item : split(text, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() == 1) {
      out.push_back(parse_number(parts[0], "P value"));
    } else if (parts.size() == 3) {
      auto range = fraction_range(parse_number(parts[0], "P value"), parse_number(parts[1], "P value"),
                                  parse_number(parts[2], "P step"));
      out.insert(out.end(), range.begin(), range.end());
    } else {
      throw ConfigError(fmt::format("invalid P list '{}'", text));
    }
  }
  std::vector<double> unique;
  for (double p : out) {
    if (std::find(unique.begin(), unique.end(), p) == unique.end()) unique.push_back(p);
  }
  return unique;
}

// "1,2,3" or "1:3".
std::vector<int> parse_windows(std::string_view text) {
  std::vector<int> out;
  auto as_int = [&](std::string_view s) {
    const double v = parse_number(s, "window length");
    if (v != static_cast<int>(v)) throw ConfigError(fmt::format("invalid window length '{}'", s));
    return static_cast<int>(v);
  };
  for (auto item : split(text, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() == 1) {
      out.push_back(as_int(parts[0]));
    } else if (parts.size() == 2) {
      for (int w = as_int(parts[0]); w <= as_int(parts[1]); ++w) out.push_back(w);
    } else {
      throw ConfigError(fmt::format("invalid window list '{}'", text));
    }
  }
  return out;
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  return out;
}

// Writes through a temporary file so an interrupted run never leaves a torn file.
void write_atomically(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    auto out = open_output(tmp);
    out << content;
    if (!out.flush()) throw DataError("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string safe_name(std::string_view id) {
  std::string out;
  for (char c : id) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.') ? c : '_';
  return out;
}

std::vector<const ProcessedDocument*> select_documents(const Corpus& c, const std::string& id) {
  std::vector<const ProcessedDocument*> out;
  for (const auto& d : c.docs) {
    if (!d.usable || (!id.empty() && d.id != id)) continue;
    out.push_back(&d);
  }
  if (!id.empty() && out.empty()) throw DataError("no usable document with id '" + id + "'");
  return out;
}

WordGraph network_for(const ProcessedDocument& doc, const GraphOptions& g, const std::optional<EmbeddingConfig>& e,
                      std::ostream& err) {
  WordGraph base = build_cooccurrence(doc, g.window);
  if (g.fraction == 0.0) return base;
  if (!e) throw ConfigError("P > 0 requires --embeddings");
  const EnrichResult r = enrich(base, GraphConfig{g.window, g.fraction}, e->source_for(doc.id), e->similarity);
  if (r.shortfall > 0) {
    err << fmt::format("warning: document '{}': {} of {} virtual edges added (not enough eligible pairs)\n", doc.id,
                       r.added, r.requested);
  }
  if (r.skipped > 0) err << fmt::format("warning: document '{}': {} pairs lack vectors\n", doc.id, r.skipped);
  return r.graph;
}

// Per-document output: a file in `dir` when given, otherwise a "# id" section on `out`.
template <typename Body>
void emit_per_document(const std::vector<const ProcessedDocument*>& docs, const std::string& dir,
                       std::string_view suffix, std::ostream& out, Body&& body) {
  std::set<std::string> names;
  for (const auto* d : docs) {
    if (dir.empty()) {
      out << "# " << d->id << '\n';
      body(*d, out);
      continue;
    }
    const std::string name = safe_name(d->id) + std::string(suffix);
    if (!names.insert(name).second) throw DataError("document ids collide as file name '" + name + "'");
    std::ostringstream buffer;
    body(*d, buffer);
    write_atomically(fs::path(dir) / name, buffer.str());
  }
}

int cmd_preprocess(const Inputs& in, const std::string& out_dir, std::ostream& out, std::ostream& err) {
  require_files({&in.corpus, &in.stopwords});
  const Corpus c = load(in, err);
  if (!out_dir.empty()) {
    std::ostringstream buffer;
    write_processed(buffer, c.docs);
    fs::create_directories(out_dir);
    write_atomically(fs::path(out_dir) / "processed.jsonl", buffer.str());
  }
  const CorpusStats s = corpus_stats(c.docs);
  out << fmt::format("|D|\t{}\n<W>\t{:.2f}\n<U>\t{:.2f}\n<S>\t{:.2f}\n<K>\t{:.2f}\nunusable\t{}\n", s.documents,
                     s.mean_tokens, s.mean_vocabulary, s.mean_sentences, s.mean_references, s.unusable);
  return kSuccess;
}

int cmd_export(const Inputs& in, const std::string& out_dir, std::ostream& out, std::ostream& err) {
  require_files({&in.corpus, &in.stopwords});
  const bool contextual = parse_similarity_mode(in.mode) != SimilarityMode::static_cosine;
  const Corpus c = load(in, err);
  if (c.raw.empty()) err << "warning: corpus is empty; writing empty files\n";

  std::set<std::string> vocabulary;
  std::string stems;
  for (const auto& d : c.docs) {
    for (const auto& sentence : d.sentences) {
      vocabulary.insert(sentence.begin(), sentence.end());
      stems += fmt::format("{}\n", fmt::join(sentence, " "));
    }
  }
  std::string vocab;
  for (const auto& v : vocabulary) vocab += v + '\n';
  fs::create_directories(out_dir);
  write_atomically(fs::path(out_dir) / "vocabulary.txt", vocab);
  write_atomically(fs::path(out_dir) / "stems.txt", stems);

  std::size_t occurrences = 0;
  if (contextual) {
    std::string occ;
    std::string sentences;
    for (const auto& raw : c.raw) {
      const AnnotatedDocument a = annotate(raw, c.options);
      for (std::size_t i = 0; i < a.sentence_texts.size(); ++i) {
        sentences += json{{"doc_id", a.id}, {"sentence_index", i}, {"text", a.sentence_texts[i]}}.dump(
                         -1, ' ', false, json::error_handler_t::replace) +
                     '\n';
      }
      for (const auto& o : a.occurrences) {
        occ += json{{"doc_id", a.id},       {"sentence_index", o.sentence_index}, {"token_index", o.token_index},
                    {"stem", o.stem},       {"surface", o.surface},               {"begin", o.begin},
                    {"end", o.end}}
                   .dump(-1, ' ', false, json::error_handler_t::replace) +
               '\n';
        ++occurrences;
      }
    }
    write_atomically(fs::path(out_dir) / "occurrences.jsonl", occ);
    write_atomically(fs::path(out_dir) / "sentences.jsonl", sentences);
  }
  out << fmt::format("{} stems", vocabulary.size());
  if (contextual) out << fmt::format(", {} occurrences", occurrences);
  out << fmt::format(" written to {}\n", out_dir);
  return kSuccess;
}

int cmd_build(const Inputs& in, const GraphOptions& g, std::ostream& out, std::ostream& err) {
  require_files({&in.corpus, &in.stopwords}, in.embeddings);
  GraphConfig{g.window, g.fraction}.validate();
  const Corpus c = load(in, err);
  const auto e = single_embedding(in);
  emit_per_document(select_documents(c, g.doc), g.out, ".graph.tsv", out,
                    [&](const ProcessedDocument& d, std::ostream& sink) { write_graph(sink, network_for(d, g, e, err)); });
  return kSuccess;
}

int cmd_rank(const Inputs& in, const GraphOptions& g, std::ostream& out, std::ostream& err) {
  require_files({&in.corpus, &in.stopwords}, in.embeddings);
  GraphConfig{g.window, g.fraction}.validate();
  const auto measures = parse_measures(g.measures);
  const Corpus c = load(in, err);
  const auto e = single_embedding(in);
  CentralityParams params;
  params.echo = {g.window, g.fraction, e ? e->descriptor : std::string()};
  emit_per_document(select_documents(c, g.doc), g.out, ".scores.tsv", out,
                    [&](const ProcessedDocument& d, std::ostream& sink) {
                      const WordGraph graph = network_for(d, g, e, err);
                      std::vector<std::string> lines;
                      for (const auto& v : compute_all(graph, measures, params)) {
                        for (std::size_t i = 0; i < v.nodes.size(); ++i) {
                          lines.push_back(fmt::format("{}\t{}\t{:.12f}", to_string(v.measure), v.nodes[i], v.scores[i]));
                        }
                      }
                      std::sort(lines.begin(), lines.end());
                      for (const auto& l : lines) sink << l << '\n';
                    });
  return kSuccess;
}

void report_diagnostics(const GroupDiagnostics& d, std::ostream& err) {
  if (d.skipped_documents > 0) err << fmt::format("warning: {} document evaluations skipped (no co-occurrence edge or unusable)\n", d.skipped_documents);
  if (d.short_documents > 0) err << fmt::format("warning: {} document graphs smaller than their gold set\n", d.short_documents);
  if (d.virtual_shortfall > 0) err << fmt::format("warning: {} (document, P) cells received fewer virtual edges than requested\n", d.virtual_shortfall);
  if (d.missing_embeddings > 0) err << fmt::format("warning: {} candidate pairs skipped for missing vectors\n", d.missing_embeddings);
}

int cmd_evaluate(const Inputs& in, const GraphOptions& g, std::ostream& out, std::ostream& err) {
  require_files({&in.corpus, &in.stopwords}, in.embeddings);
  GraphConfig{g.window, g.fraction}.validate();
  SweepGrid grid;
  grid.windows = g.window == 1 ? std::vector<int>{1} : std::vector<int>{1, g.window};
  grid.fractions = g.fraction == 0.0 ? std::vector<double>{0.0} : std::vector<double>{0.0, g.fraction};
  grid.measures = parse_measures(g.measures);
  if (in.embeddings.size() > 1) throw ConfigError("evaluate takes at most one --embeddings file");
  const Corpus c = load(in, err);
  grid.embeddings = load_embeddings(in);
  SweepOptions options;
  options.jobs = in.jobs;
  const SweepResult r = run_sweep(c.docs, grid, options);
  std::vector<EvalRecord> cell;
  std::copy_if(r.records.begin(), r.records.end(), std::back_inserter(cell),
               [&](const EvalRecord& rec) { return rec.window == g.window && rec.virtual_fraction == g.fraction; });
  std::ostringstream buffer;
  write_records(buffer, cell);
  if (g.out.empty()) {
    out << buffer.str();
  } else {
    write_atomically(g.out, buffer.str());
  }
  report_diagnostics(r.diagnostics, err);
  return kSuccess;
}

json cells_to_json(const GroupResult& g) {
  json cells = json::array();
  for (const auto& c : g.cells) {
    cells.push_back({{"measure", to_string(c.measure)}, {"P", c.virtual_fraction}, {"acc", c.accuracy}, {"documents", c.documents}});
  }
  const auto& d = g.diagnostics;
  return {{"cells", cells},
          {"diagnostics",
           {{"skipped_documents", d.skipped_documents},
            {"short_documents", d.short_documents},
            {"virtual_shortfall", d.virtual_shortfall},
            {"missing_embeddings", d.missing_embeddings}}}};
}

std::optional<GroupResult> read_cache(const fs::path& path, const std::string& embedding, int window) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    const json j = json::parse(in);
    GroupResult g;
    for (const auto& c : j.at("cells")) {
      g.cells.push_back({embedding, window, c.at("P").get<double>(), parse_measure(c.at("measure").get<std::string>()),
                         c.at("acc").get<double>(), c.at("documents").get<std::size_t>()});
    }
    const auto& d = j.at("diagnostics");
    g.diagnostics = {d.at("skipped_documents").get<std::size_t>(), d.at("short_documents").get<std::size_t>(),
                     d.at("virtual_shortfall").get<std::size_t>(), d.at("missing_embeddings").get<std::size_t>()};
    return g;
  } catch (const std::exception&) {
    return std::nullopt;  // unreadable entries are recomputed
  }
}

int cmd_sweep(const Inputs& in, const SweepArgs& s, std::ostream& out, std::ostream& err) {
  require_files({&in.corpus, &in.stopwords}, in.embeddings);
  SweepGrid grid;
  grid.windows = parse_windows(s.windows);
  grid.fractions = parse_fractions(!s.fractions.empty() ? s.fractions : in.embeddings.empty() ? "0" : "0:1:0.01");
  grid.measures = parse_measures(s.measures);
  parse_similarity_mode(in.mode);
  if (grid.fractions.size() > 1 && in.embeddings.empty()) throw ConfigError("P > 0 requires --embeddings");

  const Corpus c = load(in, err);
  grid.embeddings = load_embeddings(in);
  grid.validate();

  SweepOptions options;
  options.jobs = in.jobs;
  const fs::path out_dir(s.out);
  const fs::path cache_dir = out_dir / "cache";
  fs::create_directories(cache_dir);

  std::string base = fmt::format("{}\ncorpus={:016x}\nstopwords={}\nstemmer={}\ngamma={}\ntol={}\nmax={}\nev_tol={}\nev_max={}\n",
                                 kCacheVersion, hash_file(in.corpus),
                                 in.stopwords.empty() ? std::string("builtin") : fmt::format("{:016x}", hash_file(in.stopwords)),
                                 to_string(c.options.stemmer), options.centrality.pagerank.gamma,
                                 options.centrality.pagerank.tolerance, options.centrality.pagerank.max_iterations,
                                 options.centrality.eigenvector.tolerance, options.centrality.eigenvector.max_iterations);
  base += fmt::format("P={}\nmeasures=", fmt::join(grid.fractions, ","));
  for (MeasureId m : grid.measures) base += fmt::format("{},", to_string(m));

  std::vector<std::pair<EmbeddingConfig, std::string>> columns;  // config, file hash
  for (std::size_t i = 0; i < grid.embeddings.size(); ++i) {
    columns.emplace_back(grid.embeddings[i], fmt::format("{:016x}", hash_file(in.embeddings[i])));
  }
  if (columns.empty()) columns.emplace_back(EmbeddingConfig{"none", {}, nullptr, nullptr}, "none");

  std::vector<CellAccuracy> cells;
  GroupDiagnostics total;
  std::vector<std::string> failures;
  std::size_t hits = 0;
  std::size_t groups = 0;
  for (const auto& [embedding, file_hash] : columns) {
    for (int w : grid.windows) {
      ++groups;
      const std::string key = base + fmt::format("\nembedding={}\nmode={}\nfile={}\nw={}\n", embedding.descriptor,
                                                 to_string(embedding.similarity.mode), file_hash, w);
      const fs::path entry = cache_dir / fmt::format("{:016x}.json", fnv1a(key));
      std::optional<GroupResult> group = read_cache(entry, embedding.descriptor, w);
      if (group) {
        ++hits;
      } else {
        try {
          group = evaluate_group(c.docs, embedding, w, grid.fractions, grid.measures, options);
          write_atomically(entry, cells_to_json(*group).dump() + '\n');
        } catch (const Error& e) {
          failures.push_back(fmt::format("{} w={}: {}", embedding.descriptor, w, e.what()));
          continue;
        }
      }
      cells.insert(cells.end(), group->cells.begin(), group->cells.end());
      total.skipped_documents += group->diagnostics.skipped_documents;
      total.short_documents += group->diagnostics.short_documents;
      total.virtual_shortfall += group->diagnostics.virtual_shortfall;
      total.missing_embeddings += group->diagnostics.missing_embeddings;
    }
  }

  const auto records = assemble_records(cells, grid, !failures.empty());
  std::ostringstream buffer;
  write_records(buffer, records);
  write_atomically(out_dir / "results.jsonl", buffer.str());
  const std::string table = render_table(records);
  write_atomically(out_dir / "table.txt", table);
  out << table;
  err << fmt::format("sweep: {} records, {} of {} groups from cache\n", records.size(), hits, groups);
  report_diagnostics(total, err);
  if (!failures.empty()) {
    err << fmt::format("sweep: {} of {} groups failed\n", failures.size(), groups);
    for (const auto& f : failures) err << "  " << f << '\n';
    return kPartialSweep;
  }
  return kSuccess;
}

int cmd_report(const std::string& results, std::ostream& out) {
  std::ifstream in(results);
  if (!in) throw DataError("cannot open " + results);
  const auto records = read_records(in, results);
  out << render_table(records);
  return kSuccess;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Keyword extraction on word co-occurrence networks"};
  app.name("kwnet");
  app.require_subcommand(1);
  app.set_config("--manifest", "", "TOML run manifest; command-line flags take precedence");

  Inputs in;
  GraphOptions graph;
  SweepArgs sweep;
  std::string out_dir;
  std::string results;

  auto* pre = app.add_subcommand("preprocess", "Preprocess a corpus and print its statistics");
  add_corpus_options(pre, in);
  pre->add_option("--out", out_dir, "Directory for processed.jsonl");

  auto* exp = app.add_subcommand("export-candidates", "Write the stems (and occurrences) an embedding exporter needs");
  add_corpus_options(exp, in);
  exp->add_option("--embedding-mode", in.mode, "static, bert-sim1 or bert-sim2 (bert modes add occurrence files)")
      ->capture_default_str();
  exp->add_option("--out", out_dir, "Output directory")->required();

  auto add_graph_options = [&](CLI::App* sub, bool with_measures) {
    add_corpus_options(sub, in);
    add_embedding_options(sub, in);
    sub->add_option("--w", graph.window, "Window length")->capture_default_str();
    sub->add_option("--p", graph.fraction, "Virtual edge fraction P")->capture_default_str();
    if (with_measures) sub->add_option("--measures", graph.measures, "Comma list or 'all'")->capture_default_str();
  };
  auto* build = app.add_subcommand("build-network", "Dump document networks");
  add_graph_options(build, false);
  build->add_option("--doc", graph.doc, "Only this document id");
  build->add_option("--out", graph.out, "Directory for one <id>.graph.tsv per document (default: stdout)");

  auto* rank = app.add_subcommand("rank", "Dump centrality scores");
  add_graph_options(rank, true);
  rank->add_option("--doc", graph.doc, "Only this document id");
  rank->add_option("--out", graph.out, "Directory for one <id>.scores.tsv per document (default: stdout)");

  auto* eval = app.add_subcommand("evaluate", "Mean accuracy and gains for one (w, P) configuration");
  add_graph_options(eval, true);
  eval->add_option("--out", graph.out, "Results file (default: stdout)");

  auto* sw = app.add_subcommand("sweep", "Evaluate a (w, P, embedding, measure) grid");
  add_corpus_options(sw, in);
  add_embedding_options(sw, in);
  sw->add_option("--w", sweep.windows, "Window lengths, e.g. 1,2,3 or 1:3")->capture_default_str();
  sw->add_option("--p", sweep.fractions, "P values, e.g. 0,0.1 or 0:1:0.01 (default 0:1:0.01 with embeddings, else 0)");
  sw->add_option("--measures", sweep.measures, "Comma list or 'all'")->capture_default_str();
  sw->add_option("--out", sweep.out, "Output directory (results.jsonl, table.txt, cache/)")->required();

  auto* rep = app.add_subcommand("report", "Render a results file as a table");
  rep->add_option("--results", results, "Results file written by sweep or evaluate")->required();

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (pre->parsed()) return cmd_preprocess(in, out_dir, out, err);
    if (exp->parsed()) return cmd_export(in, out_dir, out, err);
    if (build->parsed()) return cmd_build(in, graph, out, err);
    if (rank->parsed()) return cmd_rank(in, graph, out, err);
    if (eval->parsed()) return cmd_evaluate(in, graph, out, err);
    if (sw->parsed()) return cmd_sweep(in, sweep, out, err);
    if (rep->parsed()) return cmd_report(results, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kUsage;
}

}  // namespace kwnet::cli
