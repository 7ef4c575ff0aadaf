#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "swaploc/instance.hpp"

namespace swaploc {

inline constexpr std::string_view kInstanceFormat = "swaploc-instance";
inline constexpr int kInstanceFormatVersion = 1;

/// Instance document as a JSON value (see FORMATS.md). The distance matrix
/// is never stored; it is recomputed on load.
nlohmann::json instance_to_json(const Instance& instance);
Instance instance_from_json(const nlohmann::json& doc);

/// Text form with one node or edge per line. Numbers use the shortest
/// representation that round-trips, so load(save(x)) is bit-exact.
std::string serialize_instance(const Instance& instance);
Instance parse_instance(std::string_view text);

void save_instance(const Instance& instance, const std::filesystem::path& path);
Instance load_instance(const std::filesystem::path& path);

/// Every *.json instance in `dir`, in file name order. Throws InvalidArgument
/// when the directory is missing or holds no instances.
std::vector<std::shared_ptr<const Instance>> load_corpus(const std::filesystem::path& dir);

/// Shortest round-trip decimal for a double.
std::string format_double(double value);

}  // namespace swaploc
