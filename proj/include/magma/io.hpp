#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "magma/mean.hpp"
#include "magma/term.hpp"

namespace magma {

/// Mean document: [{"term": "<term>", "weight": "<num>/<den>"}, ...], records
/// in canonical structural term order.
nlohmann::json mean_to_json(const TermStore& store, const Mean& mean);

/// Throws InvalidMean naming the offending record (index and term) for bad
/// fields, negative weights, or a total mass other than 1.
Mean mean_from_json(TermStore& store, const nlohmann::json& doc);

nlohmann::json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

Mean load_mean(TermStore& store, const std::filesystem::path& path);

}  // namespace magma
