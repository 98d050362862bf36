#pragma once

#include <filesystem>
#include <iosfwd>

#include "json.hpp"

#include "glvnet/graphs.hpp"

namespace glvnet {

/// Edge-list file: a first line `# {json header}` followed by one "u v"
/// pair per line, 0-indexed. The header always carries "n"; generators add
/// their seed and parameters.
struct GraphFile {
    UndirectedGraph graph;
    nlohmann::json header = nlohmann::json::object();
};

void write_graph(std::ostream& os, const UndirectedGraph& g,
                 nlohmann::json header = nlohmann::json::object());
GraphFile read_graph(std::istream& is);

void save_graph(const std::filesystem::path& path, const UndirectedGraph& g,
                nlohmann::json header = nlohmann::json::object());
GraphFile load_graph(const std::filesystem::path& path);

}  // namespace glvnet
