#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "kwnet/centrality.hpp"
#include "kwnet/corpus.hpp"
#include "kwnet/embedding.hpp"
#include "kwnet/error.hpp"
#include "kwnet/evaluation.hpp"
#include "kwnet/graph.hpp"
#include "kwnet/text.hpp"

namespace py = pybind11;
using namespace kwnet;

namespace {

PreprocessOptions options_for(const std::string& stemmer, const std::optional<std::vector<std::string>>& stopwords,
                              StopwordSet& storage) {
  PreprocessOptions o;
  o.stemmer = parse_stemmer(stemmer);
  if (stopwords) {
    storage = StopwordSet(stopwords->begin(), stopwords->end());
    o.stopwords = &storage;
  }
  return o;
}

py::dict to_dict(const ProcessedDocument& d) {
  py::dict out;
  out["id"] = d.id;
  out["sentences"] = d.sentences;
  out["gold_stems"] = d.gold_stems;
  out["usable"] = d.usable;
  out["issue"] = d.issue;
  return out;
}

py::dict to_dict(const EvalRecord& r) {
  py::dict out;
  out["measure"] = std::string(to_string(r.measure));
  out["w"] = r.window;
  out["P"] = r.virtual_fraction;
  out["embedding"] = r.embedding;
  out["acc"] = r.accuracy;
  out["gamma1"] = r.gamma1;
  out["gamma2"] = r.gamma2;
  out["documents"] = r.documents;
  return out;
}

EvalRecord from_dict(const py::dict& d) {
  auto gain = [&](const char* key) -> std::optional<double> {
    if (!d.contains(key) || d[key].is_none()) return std::nullopt;
    return d[key].cast<double>();
  };
  return {parse_measure(d["measure"].cast<std::string>()), d["w"].cast<int>(), d["P"].cast<double>(),
          d["embedding"].cast<std::string>(), d["acc"].cast<double>(), gain("gamma1"), gain("gamma2"),
          d.contains("documents") ? d["documents"].cast<std::size_t>() : 0};
}

std::map<std::string, double> scores_by_label(const CentralityVector& v) {
  std::map<std::string, double> out;
  for (std::size_t i = 0; i < v.nodes.size(); ++i) out.emplace(v.nodes[i], v.scores[i]);
  return out;
}

}  // namespace

PYBIND11_MODULE(_kwnet, m) {
  m.doc() = "Keyword extraction on word co-occurrence networks";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<DataError>(m, "DataError", error.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", error.ptr());
  py::register_exception<UndefinedSimilarity>(m, "UndefinedSimilarity", error.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", error.ptr());

  m.attr("MEASURES") = [] {
    std::vector<std::string> names;
    for (MeasureId id : kAllMeasures) names.emplace_back(to_string(id));
    return names;
  }();

  m.def("porter_stem", &porter_stem, py::arg("word"));
  m.def(
      "stem", [](const std::string& word, const std::string& stemmer) { return stem(word, parse_stemmer(stemmer)); },
      py::arg("word"), py::arg("stemmer") = "porter");
  m.def("segment_sentences", &segment_sentences, py::arg("text"));
  m.def(
      "default_stopwords", [] { return std::vector<std::string>(default_stopwords().begin(), default_stopwords().end()); });

  m.def(
      "preprocess",
      [](const std::string& id, const std::string& text, const std::vector<std::string>& keywords,
         const std::string& stemmer, const std::optional<std::vector<std::string>>& stopwords) {
        StopwordSet storage;
        return to_dict(preprocess({id, text, keywords}, options_for(stemmer, stopwords, storage)));
      },
      py::arg("id"), py::arg("text"), py::arg("keywords"), py::arg("stemmer") = "porter",
      py::arg("stopwords") = py::none());

  py::class_<StaticEmbeddingTable, std::shared_ptr<StaticEmbeddingTable>>(m, "StaticEmbeddingTable")
      .def(py::init<std::size_t>(), py::arg("dimension"))
      .def_static(
          "load", [](const std::filesystem::path& p) { return std::make_shared<StaticEmbeddingTable>(load_static_embeddings(p)); },
          py::arg("path"))
      .def("add", &StaticEmbeddingTable::add, py::arg("word"), py::arg("vector"))
      .def_property_readonly("dimension", &StaticEmbeddingTable::dimension)
      .def("__len__", &StaticEmbeddingTable::size)
      .def("__contains__", [](const StaticEmbeddingTable& t, const std::string& w) { return t.find(w) != nullptr; });

  m.def(
      "similarity",
      [](const StaticEmbeddingTable& t, const std::string& a, const std::string& b) {
        return similarity(a, b, t, SimilarityConfig{});
      },
      py::arg("table"), py::arg("a"), py::arg("b"));
  m.def(
      "bert_similarity",
      [](const std::map<std::string, std::vector<std::vector<double>>>& occurrences, const std::string& a,
         const std::string& b, const std::string& mode) {
        if (occurrences.empty()) throw ConfigError("no occurrences given");
        ContextualEmbeddingSet set(occurrences.begin()->second.at(0).size());
        for (const auto& [stem_name, vectors] : occurrences) {
          for (const auto& v : vectors) set.add(stem_name, v);
        }
        return similarity(a, b, set, SimilarityConfig{parse_similarity_mode(mode)});
      },
      py::arg("occurrences"), py::arg("a"), py::arg("b"), py::arg("mode") = "bert-sim2");

  py::class_<WordGraph>(m, "WordGraph")
      .def_static(
          "cooccurrence",
          [](const std::vector<std::vector<std::string>>& sentences, int window) {
            return build_cooccurrence(sentences, window);
          },
          py::arg("sentences"), py::arg("window") = 1)
      .def_property_readonly("labels", &WordGraph::labels)
      .def_property_readonly("node_count", &WordGraph::node_count)
      .def_property_readonly("edge_count", &WordGraph::edge_count)
      .def_property_readonly("cooccurrence_edges", &WordGraph::cooccurrence_edges)
      .def_property_readonly("virtual_edges", &WordGraph::virtual_edges)
      .def("edges",
           [](const WordGraph& g) {
             std::vector<std::tuple<std::string, std::string, std::string, double>> out;
             for (const auto& e : g.edges()) {
               out.emplace_back(g.label(e.u), g.label(e.v), std::string(to_string(e.kind)), e.weight);
             }
             return out;
           })
      .def("enrich",
           [](const WordGraph& g, double p, const StaticEmbeddingTable& table) {
             // The window only matters for validation here.
             return enrich(g, GraphConfig{1, p}, table, {}).graph;
           },
           py::arg("P"), py::arg("table"))
      .def("strip_virtual", &strip_virtual)
      .def("scores",
           [](const WordGraph& g, const std::string& measure) { return scores_by_label(compute(g, parse_measure(measure))); },
           py::arg("measure"))
      .def("keywords",
           [](const WordGraph& g, const std::string& measure, std::size_t count) {
             return extract_keywords(compute(g, parse_measure(measure)), count).stems;
           },
           py::arg("measure"), py::arg("count"))
      .def("__str__", [](const WordGraph& g) {
        std::ostringstream out;
        write_graph(out, g);
        return out.str();
      });

  m.def(
      "accuracy",
      [](const std::vector<std::string>& extracted, const std::vector<std::string>& gold) {
        return accuracy({{}, MeasureId::k, extracted}, gold);
      },
      py::arg("extracted"), py::arg("gold"));
  m.def("format_gain", &format_gain, py::arg("gain"));

  m.def(
      "sweep",
      [](const std::vector<py::dict>& corpus, const std::vector<int>& windows, const std::vector<double>& fractions,
         const std::vector<std::string>& measures, const std::shared_ptr<StaticEmbeddingTable>& table,
         const std::string& stemmer, const std::optional<std::vector<std::string>>& stopwords, unsigned jobs) {
        std::vector<RawDocument> raw;
        for (const auto& d : corpus) {
          raw.push_back({d["id"].cast<std::string>(), d["text"].cast<std::string>(),
                         d["keywords"].cast<std::vector<std::string>>()});
        }
        SweepGrid grid{windows, fractions, {}, {}};
        for (const auto& name : measures) grid.measures.push_back(parse_measure(name));
        if (table) grid.embeddings.push_back({"static", {}, table, nullptr});
        std::vector<py::dict> out;
        {
          py::gil_scoped_release release;
          StopwordSet storage;
          const auto docs = preprocess_corpus(raw, options_for(stemmer, stopwords, storage), jobs);
          const auto result = run_sweep(docs, grid, {jobs, {}});
          py::gil_scoped_acquire acquire;
          for (const auto& r : result.records) out.push_back(to_dict(r));
        }
        return out;
      },
      py::arg("corpus"), py::arg("windows") = std::vector<int>{1}, py::arg("fractions") = std::vector<double>{0.0},
      py::arg("measures") = std::vector<std::string>{"k"}, py::arg("table") = nullptr, py::arg("stemmer") = "porter",
      py::arg("stopwords") = py::none(), py::arg("jobs") = 1u);

  m.def(
      "render_table",
      [](const std::vector<py::dict>& records) {
        std::vector<EvalRecord> recs;
        for (const auto& d : records) recs.push_back(from_dict(d));
        return render_table(recs);
      },
      py::arg("records"));
}
