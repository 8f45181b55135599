#include "magma/io.hpp"

#include <algorithm>
#include <fstream>
#include <vector>

#include "magma/error.hpp"

namespace magma {

nlohmann::json mean_to_json(const TermStore& store, const Mean& mean) {
  std::vector<std::pair<Term, Rational>> records(mean.weights().begin(), mean.weights().end());
  std::ranges::sort(records, [&](const auto& a, const auto& b) {
    return store.structural_less(a.first, b.first);
  });
  auto doc = nlohmann::json::array();
  for (const auto& [t, w] : records) {
    doc.push_back({{"term", format_term(store, t)}, {"weight", to_string(w)}});
  }
  return doc;
}

Mean mean_from_json(TermStore& store, const nlohmann::json& doc) {
  if (!doc.is_array()) throw InvalidMean("mean document must be a list of records");
  std::vector<std::pair<Term, Rational>> entries;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& rec = doc[i];
    const std::string where = "record " + std::to_string(i);
    if (!rec.is_object() || !rec.contains("term") || !rec.contains("weight") ||
        !rec["term"].is_string() || !rec["weight"].is_string()) {
      throw InvalidMean(where + ": expected {\"term\": string, \"weight\": \"num/den\"}");
    }
    const std::string text = rec["term"].get<std::string>();
    const std::string weight_text = rec["weight"].get<std::string>();
    Term t;
    Rational w;
    try {
      t = parse_term(store, text);
      if (weight_text.find('/') == std::string::npos) throw SyntaxError("weight must be num/den");
      w = parse_rational(weight_text);
    } catch (const SyntaxError& e) {
      throw InvalidMean(where + " (" + text + "): " + e.what());
    }
    if (sgn(w) < 0) {
      throw InvalidMean(where + " (" + text + "): negative weight " + weight_text);
    }
    entries.emplace_back(t, w);
  }
  Rational total;
  for (const auto& e : entries) total += e.second;
  if (total != 1) {
    throw InvalidMean("weights sum to " + to_string(total) + ", expected 1 (" +
                      std::to_string(entries.size()) + " records)");
  }
  return Mean::from_entries(entries);
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SyntaxError(path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

Mean load_mean(TermStore& store, const std::filesystem::path& path) {
  try {
    return mean_from_json(store, read_json(path));
  } catch (const InvalidMean& e) {
    throw InvalidMean(path.string() + ": " + e.what());
  }
}

}  // namespace magma
