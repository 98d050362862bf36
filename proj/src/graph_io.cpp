#include "glvnet/graph_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace glvnet {

void write_graph(std::ostream& os, const UndirectedGraph& g, nlohmann::json header) {
    header["n"] = g.order();
    os << "# " << header.dump() << '\n';
    for (const auto& [u, v] : g.edges()) os << u << ' ' << v << '\n';
}

GraphFile read_graph(std::istream& is) {
    GraphFile out;
    std::vector<Edge> edges;
    bool have_header = false;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') {
            if (have_header) continue;  // later comments are ignored
            try {
                out.header = nlohmann::json::parse(line.substr(first + 1));
            } catch (const nlohmann::json::exception& e) {
                throw std::runtime_error("graph file line " + std::to_string(lineno) +
                                         ": bad JSON header: " + e.what());
            }
            have_header = true;
            continue;
        }
        std::istringstream fields(line);
        long long u = -1, v = -1;
        std::string rest;
        if (!(fields >> u >> v) || (fields >> rest) || u < 0 || v < 0)
            throw std::runtime_error("graph file line " + std::to_string(lineno) +
                                     ": expected 'u v' with non-negative integers");
        edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    if (!have_header || !out.header.contains("n") || !out.header["n"].is_number_unsigned())
        throw std::runtime_error("graph file: missing header with vertex count \"n\"");
    out.graph = UndirectedGraph(out.header["n"].get<std::size_t>(), std::move(edges));
    return out;
}

void save_graph(const std::filesystem::path& path, const UndirectedGraph& g,
                nlohmann::json header) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_graph(os, g, std::move(header));
    if (!os) throw std::runtime_error("write failed: " + path.string());
}

GraphFile load_graph(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path.string());
    return read_graph(is);
}

}  // namespace glvnet
