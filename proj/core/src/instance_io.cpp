#include "swaploc/instance_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

namespace swaploc {

std::string format_double(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

namespace {

NodeId node_id(const nlohmann::json& value) {
  if (!value.is_number_integer() || value.get<std::int64_t>() < 0 ||
      value.get<std::int64_t>() > std::numeric_limits<NodeId>::max()) {
    throw InvalidArgument("node ids must be non-negative integers, got " + value.dump());
  }
  return static_cast<NodeId>(value.get<std::int64_t>());
}

}  // namespace

nlohmann::json instance_to_json(const Instance& instance) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [key, value] : instance.meta().params) params[key] = value;
  nlohmann::json nodes = nlohmann::json::array();
  for (const Node& node : instance.graph().nodes()) {
    nodes.push_back({node.id, node.x, node.y, instance.demand(node.id)});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : instance.graph().edges()) edges.push_back({e.u, e.v, e.length});
  return {{"format", kInstanceFormat},
          {"version", kInstanceFormatVersion},
          {"n", instance.size()},
          {"meta",
           {{"generator", instance.meta().generator},
            {"seed", instance.meta().seed},
            {"params", std::move(params)}}},
          {"nodes", std::move(nodes)},
          {"edges", std::move(edges)}};
}

Instance instance_from_json(const nlohmann::json& doc) {
  try {
    if (!doc.is_object() || doc.value("format", std::string{}) != kInstanceFormat) {
      throw InvalidArgument("not a swaploc-instance document");
    }
    const int version = doc.at("version").get<int>();
    if (version != kInstanceFormatVersion) {
      throw InvalidArgument("unsupported instance format version " + std::to_string(version));
    }
    const NodeId n = node_id(doc.at("n"));
    const auto& node_rows = doc.at("nodes");
    if (!node_rows.is_array() || static_cast<int>(node_rows.size()) != n) {
      throw InvalidArgument("instance declares n = " + std::to_string(n) +
                            " but lists a different number of nodes");
    }
    std::vector<Node> nodes;
    std::vector<double> demand;
    nodes.reserve(n);
    demand.reserve(n);
    for (const auto& row : node_rows) {
      if (!row.is_array() || row.size() != 4) throw InvalidArgument("node rows need 4 fields");
      nodes.push_back({node_id(row[0]), row[1].get<double>(), row[2].get<double>()});
      demand.push_back(row[3].get<double>());
    }
    std::vector<Edge> edges;
    for (const auto& row : doc.at("edges")) {
      if (!row.is_array() || row.size() != 3) throw InvalidArgument("edge rows need 3 fields");
      edges.push_back({node_id(row[0]), node_id(row[1]), row[2].get<double>()});
    }
    InstanceMeta meta;
    if (doc.contains("meta")) {
      const auto& m = doc["meta"];
      meta.generator = m.value("generator", std::string{"manual"});
      if (m.contains("seed")) {
        if (!m["seed"].is_number_unsigned()) throw InvalidArgument("meta.seed must be a non-negative integer");
        meta.seed = m["seed"].get<std::uint64_t>();
      }
      if (m.contains("params")) {
        for (const auto& [key, value] : m["params"].items()) {
          meta.params[key] = value.is_string() ? value.get<std::string>() : value.dump();
        }
      }
    }
    return Instance(Graph(std::move(nodes), std::move(edges)), std::move(demand),
                    std::move(meta));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed instance document: ") + e.what());
  }
}

std::string serialize_instance(const Instance& instance) {
  std::ostringstream out;
  const InstanceMeta& meta = instance.meta();
  out << "{\n";
  out << "  \"format\": \"" << kInstanceFormat << "\",\n";
  out << "  \"version\": " << kInstanceFormatVersion << ",\n";
  out << "  \"n\": " << instance.size() << ",\n";
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [key, value] : meta.params) params[key] = value;
  out << "  \"meta\": {\"generator\": " << nlohmann::json(meta.generator).dump()
      << ", \"seed\": " << meta.seed << ", \"params\": " << params.dump() << "},\n";
  out << "  \"nodes\": [";
  for (const Node& node : instance.graph().nodes()) {
    out << (node.id == 0 ? "\n" : ",\n") << "    [" << node.id << ", " << format_double(node.x)
        << ", " << format_double(node.y) << ", " << format_double(instance.demand(node.id))
        << "]";
  }
  out << "\n  ],\n";
  out << "  \"edges\": [";
  bool first = true;
  for (const Edge& e : instance.graph().edges()) {
    out << (first ? "\n" : ",\n") << "    [" << e.u << ", " << e.v << ", "
        << format_double(e.length) << "]";
    first = false;
  }
  out << (first ? "]\n" : "\n  ]\n");
  out << "}\n";
  return out.str();
}

Instance parse_instance(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(std::string("instance file is not valid JSON: ") + e.what());
  }
  return instance_from_json(doc);
}

void save_instance(const Instance& instance, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << serialize_instance(instance);
  if (!out.flush()) throw Error("failed writing " + path.string());
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open instance file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

std::vector<std::shared_ptr<const Instance>> load_corpus(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw InvalidArgument("corpus directory " + dir.string() + " does not exist");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw InvalidArgument("corpus directory " + dir.string() + " holds no .json instances");
  std::vector<std::shared_ptr<const Instance>> corpus;
  for (const auto& file : files) corpus.push_back(std::make_shared<const Instance>(load_instance(file)));
  return corpus;
}

}  // namespace swaploc
