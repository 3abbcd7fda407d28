#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <istream>
#include <map>
#include <nlohmann/json.hpp>
#include <ostream>
#include <set>

#include "kwnet/error.hpp"
#include "kwnet/evaluation.hpp"

namespace kwnet {

KeywordSet extract_keywords(const CentralityVector& scores, std::size_t count, std::string document) {
  if (count == 0) throw ConfigError("keyword count must be positive");
  KeywordSet out{std::move(document), scores.measure, {}};
  const auto order = ranking(scores);
  const auto keep = std::min(count, order.size());
  out.stems.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) out.stems.push_back(scores.nodes[order[i]]);
  return out;
}

double accuracy(const KeywordSet& extracted, std::span<const std::string> gold) {
  const std::set<std::string_view> reference(gold.begin(), gold.end());
  if (reference.empty()) throw DataError("accuracy needs a non-empty gold set");
  const std::set<std::string_view> found(extracted.stems.begin(), extracted.stems.end());
  std::size_t hits = 0;
  for (auto s : found) hits += reference.contains(s) ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(reference.size());
}

Gains gains(double acc, double acc_tr, double acc_w) {
  Gains g;
  if (acc_tr > 0.0) g.gamma1 = (acc - acc_tr) / acc_tr;
  if (acc_w > 0.0) g.gamma2 = (acc - acc_w) / acc_w;
  return g;
}

std::string format_gain(std::optional<double> gain) {
  if (!gain) return "--";
  const std::string text = fmt::format("{:.2f}", *gain);
  if (text == "0.00" || text == "-0.00") return "--";
  return text;
}

std::vector<EvalRecord> best_per_measure(std::span<const EvalRecord> records) {
  auto better = [](const EvalRecord& a, const EvalRecord& b) {
    if (a.accuracy != b.accuracy) return a.accuracy > b.accuracy;
    if (a.virtual_fraction != b.virtual_fraction) return a.virtual_fraction < b.virtual_fraction;
    if (a.window != b.window) return a.window < b.window;
    return a.embedding < b.embedding;
  };
  std::vector<EvalRecord> out;
  for (MeasureId m : kAllMeasures) {
    const EvalRecord* best = nullptr;
    for (const auto& r : records) {
      if (r.measure == m && (best == nullptr || better(r, *best))) best = &r;
    }
    if (best != nullptr) out.push_back(*best);
  }
  return out;
}

void write_records(std::ostream& out, std::span<const EvalRecord> records) {
  using nlohmann::json;
  auto gain = [](std::optional<double> g) { return g ? json(*g) : json(nullptr); };
  for (const auto& r : records) {
    json j = {
        {"measure", to_string(r.measure)}, {"w", r.window},       {"P", r.virtual_fraction},
        {"embedding", r.embedding},        {"acc", r.accuracy},   {"gamma1", gain(r.gamma1)},
        {"gamma2", gain(r.gamma2)},        {"documents", r.documents},
    };
    out << j.dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
  }
}

std::vector<EvalRecord> read_records(std::istream& in, const std::string& source_name) {
  using nlohmann::json;
  std::vector<EvalRecord> out;
  std::string line;
  std::size_t line_no = 0;
  auto gain = [](const json& j) -> std::optional<double> {
    if (j.is_null()) return std::nullopt;
    return j.get<double>();
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      out.push_back({parse_measure(j.at("measure").get<std::string>()), j.at("w").get<int>(), j.at("P").get<double>(),
                     j.at("embedding").get<std::string>(), j.at("acc").get<double>(), gain(j.at("gamma1")),
                     gain(j.at("gamma2")), j.at("documents").get<std::size_t>()});
    } catch (const json::exception& e) {
      throw ParseError(source_name, line_no, e.what());
    } catch (const ConfigError& e) {
      throw ParseError(source_name, line_no, e.what());
    }
  }
  return out;
}

std::string render_table(std::span<const EvalRecord> records) {
  std::vector<std::string> columns;
  for (const auto& r : records) {
    if (std::find(columns.begin(), columns.end(), r.embedding) == columns.end()) columns.push_back(r.embedding);
  }
  std::map<std::string, std::vector<EvalRecord>> best;
  for (const auto& column : columns) {
    std::vector<EvalRecord> subset;
    std::copy_if(records.begin(), records.end(), std::back_inserter(subset),
                 [&](const EvalRecord& r) { return r.embedding == column; });
    best[column] = best_per_measure(subset);
  }
  constexpr int kGroupWidth = 36;
  std::string out = fmt::format("{:<6}", "Meas.");
  for (const auto& column : columns) out += fmt::format("| {:<{}}", column, kGroupWidth - 2);
  out += "\n" + fmt::format("{:<6}", "");
  for (std::size_t c = 0; c < columns.size(); ++c) {
    out += fmt::format("| {:>4} {:>2} {:>6} {:>6} {:>8}    ", "P", "w", "G1", "G2", "Acc.");
  }
  out += "\n";
  for (MeasureId m : kAllMeasures) {
    bool any = false;
    std::string row = fmt::format("{:<6}", to_string(m));
    for (const auto& column : columns) {
      const auto& rows = best[column];
      auto it = std::find_if(rows.begin(), rows.end(), [&](const EvalRecord& r) { return r.measure == m; });
      if (it == rows.end()) {
        row += fmt::format("| {:<{}}", "", kGroupWidth - 2);
        continue;
      }
      any = true;
      row += fmt::format("| {:>4} {:>2} {:>6} {:>6} {:>8.4f}    ", fmt::format("{:g}", std::round(it->virtual_fraction * 1000.0) / 10.0),
                         it->window, format_gain(it->gamma1), format_gain(it->gamma2), it->accuracy);
    }
    if (any) out += row + "\n";
  }
  return out;
}

}  // namespace kwnet
