#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <random>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "kwnet/embedding.hpp"
#include "generators.hpp"

namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run kwnet_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = kwnet::cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           fmt_name(::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  static std::string fmt_name(const char* n) { return std::string("kwnet_cli_") + n; }

  fs::path write(const std::string& name, const std::string& content) {
    const fs::path p = dir_ / name;
    std::ofstream(p, std::ios::binary) << content;
    return p;
  }

  // Planted corpus plus a random static table covering its words.
  fs::path planted(std::size_t docs, fs::path* vectors = nullptr) {
    const auto c = kwnet::testing::planted_corpus(21, docs);
    std::string text;
    for (const auto& d : c.documents) {
      text += nlohmann::json{{"id", d.id}, {"text", d.text}, {"keywords", d.gold_keyphrases}}.dump() + '\n';
    }
    if (vectors) {
      std::mt19937_64 rng(3);
      std::string v = std::to_string(c.vocabulary.size()) + " 4\n";
      for (const auto& w : c.vocabulary) {
        v += w;
        for (double x : kwnet::testing::random_vector(rng, 4)) v += " " + std::to_string(x);
        v += '\n';
      }
      *vectors = write("vec.txt", v);
    }
    return write("corpus.jsonl", text);
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

constexpr const char* kSmall =
    R"({"id":"a","text":"Complex networks model language. Networks of words reveal keywords.","keywords":["complex networks"]}
{"id":"b","text":"Word embeddings add virtual edges. Virtual edges link similar words.","keywords":["virtual edges"]}
{"id":"c","text":"Centrality measures rank words in networks.","keywords":["centrality"]}
)";

TEST_F(CliTest, PreprocessPrintsStatistics) {
  const auto corpus = write("c.jsonl", kSmall);
  const auto r = kwnet_run({"preprocess", "--corpus", corpus.string(), "--out", path("pre")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("|D|\t3\n"), std::string::npos);
  EXPECT_NE(r.out.find("<K>\t"), std::string::npos);
  EXPECT_EQ(lines(slurp(dir_ / "pre" / "processed.jsonl")), 3u);
}

TEST_F(CliTest, MissingStopwordFileFails) {
  const auto corpus = write("c.jsonl", kSmall);
  const auto r = kwnet_run({"preprocess", "--corpus", corpus.string(), "--stopwords", path("nope.txt")});
  EXPECT_EQ(r.code, kwnet::cli::kDataError);
  EXPECT_NE(r.err.find("nope.txt"), std::string::npos);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(kwnet_run({"frobnicate"}).code, kwnet::cli::kUsage);
  EXPECT_EQ(kwnet_run({"sweep", "--corpus", "x"}).code, kwnet::cli::kUsage);  // --out missing
  EXPECT_EQ(kwnet_run({"--help"}).code, kwnet::cli::kSuccess);
  const auto corpus = write("c.jsonl", kSmall);
  EXPECT_EQ(kwnet_run({"build-network", "--corpus", corpus.string(), "--w", "0"}).code, kwnet::cli::kUsage);
  EXPECT_EQ(kwnet_run({"build-network", "--corpus", corpus.string(), "--p", "0.1"}).code, kwnet::cli::kUsage);
  EXPECT_EQ(kwnet_run({"sweep", "--corpus", corpus.string(), "--p", "0,0.1", "--out", path("s")}).code,
            kwnet::cli::kUsage);
}

TEST_F(CliTest, MalformedCorpusIsDataError) {
  const auto corpus = write("c.jsonl", "{\"id\":\"a\"}\n");
  const auto r = kwnet_run({"preprocess", "--corpus", corpus.string()});
  EXPECT_EQ(r.code, kwnet::cli::kDataError);
  EXPECT_NE(r.err.find(":1"), std::string::npos) << r.err;
}

TEST_F(CliTest, ExportStaticWritesOneLinePerStem) {
  const auto corpus = write("c.jsonl", kSmall);
  const auto r = kwnet_run({"export-candidates", "--corpus", corpus.string(), "--out", path("exp")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto pre = kwnet_run({"preprocess", "--corpus", corpus.string(), "--out", path("pre")});
  ASSERT_EQ(pre.code, 0) << pre.err;
  std::set<std::string> stems;
  std::ifstream in(dir_ / "pre" / "processed.jsonl");
  for (std::string line; std::getline(in, line);) {
    const auto doc = nlohmann::json::parse(line);
    for (const auto& s : doc.at("sentences")) {
      for (const auto& t : s) stems.insert(t.get<std::string>());
    }
  }
  EXPECT_EQ(lines(slurp(dir_ / "exp" / "vocabulary.txt")), stems.size());
  EXPECT_FALSE(fs::exists(dir_ / "exp" / "occurrences.jsonl"));
}

TEST_F(CliTest, ExportContextualWritesOneRecordPerToken) {
  const auto corpus = write("c.jsonl", kSmall);
  const auto r = kwnet_run(
      {"export-candidates", "--corpus", corpus.string(), "--embedding-mode", "bert-sim2", "--out", path("exp")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::size_t tokens = 0;
  std::istringstream stems(slurp(dir_ / "exp" / "stems.txt"));
  for (std::string line; std::getline(stems, line);) {
    std::istringstream words(line);
    for (std::string w; words >> w;) ++tokens;
  }
  const std::string occ = slurp(dir_ / "exp" / "occurrences.jsonl");
  EXPECT_EQ(lines(occ), tokens);
  const auto first = nlohmann::json::parse(occ.substr(0, occ.find('\n')));
  for (const char* key : {"doc_id", "sentence_index", "token_index", "stem", "surface", "begin", "end"}) {
    EXPECT_TRUE(first.contains(key)) << key;
  }
}

TEST_F(CliTest, ExportEmptyCorpusWarns) {
  const auto corpus = write("c.jsonl", "");
  const auto r = kwnet_run(
      {"export-candidates", "--corpus", corpus.string(), "--embedding-mode", "bert-sim1", "--out", path("exp")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("empty"), std::string::npos);
  EXPECT_EQ(slurp(dir_ / "exp" / "vocabulary.txt"), "");
  EXPECT_EQ(slurp(dir_ / "exp" / "occurrences.jsonl"), "");
}

TEST_F(CliTest, BuildAndRankPerDocument) {
  const auto corpus = write("c.jsonl", kSmall);
  ASSERT_EQ(kwnet_run({"build-network", "--corpus", corpus.string(), "--w", "2", "--out", path("g")}).code, 0);
  EXPECT_TRUE(fs::exists(dir_ / "g" / "a.graph.tsv"));
  EXPECT_EQ(slurp(dir_ / "g" / "a.graph.tsv").rfind("E_t=", 0), 0u);
  const auto r = kwnet_run({"rank", "--corpus", corpus.string(), "--doc", "c", "--measures", "k,A2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("# c\n", 0), 0u);
  EXPECT_NE(r.out.find("A2\tcentral\t"), std::string::npos) << r.out;
  EXPECT_EQ(kwnet_run({"rank", "--corpus", corpus.string(), "--doc", "zzz"}).code, kwnet::cli::kDataError);
}

TEST_F(CliTest, SweepWithoutEmbeddingsIsOneRowPerMeasure) {
  const auto corpus = write("c.jsonl", kSmall);
  const auto r = kwnet_run({"sweep", "--corpus", corpus.string(), "--w", "1", "--measures", "k,pi", "--out", path("s")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(slurp(dir_ / "s" / "results.jsonl")), 2u);
  EXPECT_EQ(slurp(dir_ / "s" / "table.txt"), r.out);
  const auto rep = kwnet_run({"report", "--results", (dir_ / "s" / "results.jsonl").string()});
  EXPECT_EQ(rep.out, r.out);
}

TEST_F(CliTest, SweepRerunIsByteIdenticalAndCached) {
  fs::path vectors;
  const auto corpus = planted(12, &vectors);
  const std::vector<std::string> args{"sweep", "--corpus", corpus.string(), "--embeddings", vectors.string(),
                                      "--w", "1:2", "--p", "0:0.2:0.1", "--measures", "k,s,B", "--jobs", "2",
                                      "--out", path("s")};
  const auto first = kwnet_run(args);
  ASSERT_EQ(first.code, 0) << first.err;
  const std::string results = slurp(dir_ / "s" / "results.jsonl");
  EXPECT_EQ(lines(results), 2u * 3u * 3u);
  EXPECT_NE(first.err.find("0 of 2 groups from cache"), std::string::npos) << first.err;

  const auto second = kwnet_run(args);
  EXPECT_NE(second.err.find("2 of 2 groups from cache"), std::string::npos) << second.err;
  EXPECT_EQ(slurp(dir_ / "s" / "results.jsonl"), results);

  // An interrupted run: one cache entry and the results are gone.
  fs::remove(dir_ / "s" / "results.jsonl");
  fs::remove(fs::directory_iterator(dir_ / "s" / "cache")->path());
  const auto resumed = kwnet_run(args);
  EXPECT_NE(resumed.err.find("1 of 2 groups from cache"), std::string::npos) << resumed.err;
  EXPECT_EQ(slurp(dir_ / "s" / "results.jsonl"), results);

  // A clean run in a fresh directory agrees too.
  auto clean = args;
  clean.back() = path("clean");
  ASSERT_EQ(kwnet_run(clean).code, 0);
  EXPECT_EQ(slurp(dir_ / "clean" / "results.jsonl"), results);
}

TEST_F(CliTest, EvaluateMatchesSweepCell) {
  fs::path vectors;
  const auto corpus = planted(8, &vectors);
  ASSERT_EQ(kwnet_run({"sweep", "--corpus", corpus.string(), "--embeddings", vectors.string(), "--w", "1,2", "--p",
                       "0,0.1", "--measures", "pi,C", "--out", path("s")})
                .code,
            0);
  const auto r = kwnet_run({"evaluate", "--corpus", corpus.string(), "--embeddings", vectors.string(), "--w", "2",
                            "--p", "0.1", "--measures", "pi,C"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::string expected;
  std::istringstream all(slurp(dir_ / "s" / "results.jsonl"));
  for (std::string line; std::getline(all, line);) {
    const auto j = nlohmann::json::parse(line);
    if (j.at("w") == 2 && j.at("P") == 0.1) expected += line + '\n';
  }
  EXPECT_EQ(lines(expected), 2u);
  EXPECT_EQ(r.out, expected);
}

TEST_F(CliTest, ManifestSuppliesOptions) {
  const auto corpus = write("c.jsonl", kSmall);
  const auto manifest = write("run.toml", "[preprocess]\ncorpus = \"" + corpus.string() + "\"\n");
  const auto r = kwnet_run({"--manifest", manifest.string(), "preprocess"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("|D|\t3"), std::string::npos);
}

// Stand-in for an external exporter: vectors for exactly the exported stems
// and occurrences must load with every occurrence counted.
TEST_F(CliTest, ExportedCandidatesRoundTripThroughLoaders) {
  const auto corpus = planted(10);
  ASSERT_EQ(kwnet_run({"export-candidates", "--corpus", corpus.string(), "--embedding-mode", "bert-sim2", "--out",
                       path("exp")})
                .code,
            0);
  std::mt19937_64 rng(8);
  std::map<std::pair<std::string, std::string>, std::size_t> counts;
  std::string contextual;
  std::istringstream occ(slurp(dir_ / "exp" / "occurrences.jsonl"));
  for (std::string line; std::getline(occ, line);) {
    auto j = nlohmann::json::parse(line);
    ++counts[{j.at("doc_id").get<std::string>(), j.at("stem").get<std::string>()}];
    contextual += nlohmann::json{{"doc_id", j.at("doc_id")},
                                 {"sentence_index", j.at("sentence_index")},
                                 {"token_index", j.at("token_index")},
                                 {"stem", j.at("stem")},
                                 {"vector", kwnet::testing::random_vector(rng, 3)}}
                      .dump() +
                  '\n';
  }
  const auto loaded = kwnet::load_contextual_embeddings(write("ctx.jsonl", contextual));
  std::size_t pairs = 0;
  for (const auto& [doc, set] : loaded.documents) {
    for (const auto& [stem, vectors] : set.entries()) {
      EXPECT_EQ(set.frequency(stem), (counts[{doc, stem}])) << doc << " " << stem;
      ++pairs;
    }
  }
  EXPECT_EQ(pairs, counts.size());

  std::string vocabulary = slurp(dir_ / "exp" / "vocabulary.txt");
  std::string table = std::to_string(lines(vocabulary)) + " 3\n";
  std::istringstream words(vocabulary);
  for (std::string w; std::getline(words, w);) {
    table += w;
    for (double x : kwnet::testing::random_vector(rng, 3)) table += " " + std::to_string(x);
    table += '\n';
  }
  EXPECT_EQ(kwnet::load_static_embeddings(write("static.txt", table)).size(), lines(vocabulary));
}

}  // namespace
