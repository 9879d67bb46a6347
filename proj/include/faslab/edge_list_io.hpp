#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "faslab/digraph.hpp"
#include "faslab/errors.hpp"

namespace faslab {

// Canonical edge-list text format:
//   line 1:      "n m"
//   lines 2..m+1: "u v"   (one edge u -> v, 0-indexed, single space, LF)
// The writer emits edges in sorted order so output is byte-stable.

namespace detail {

inline bool parse_two_ints(const std::string& line, long long& a, long long& b) {
    std::istringstream ss(line);
    std::string extra;
    if (!(ss >> a >> b)) return false;
    if (ss >> extra) return false;
    return true;
}

inline bool blank_line(const std::string& line) {
    for (char c : line)
        if (c != ' ' && c != '\t' && c != '\r') return false;
    return true;
}

}  // namespace detail

inline Digraph read_digraph(std::istream& in) {
    std::string line;
    int lineno = 0;
    long long n = 0, m = 0;
    if (!std::getline(in, line)) throw InputError("line 1: missing header \"n m\"");
    ++lineno;
    if (!detail::parse_two_ints(line, n, m) || n < 0 || m < 0)
        throw InputError("line 1: malformed header, expected \"n m\"");
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    std::unordered_set<std::int64_t> seen;
    for (long long i = 0; i < m; ++i) {
        if (!std::getline(in, line))
            throw InputError("line " + std::to_string(lineno + 1) + ": expected " + std::to_string(m) +
                             " edges, file ends after " + std::to_string(i));
        ++lineno;
        long long u = 0, v = 0;
        if (!detail::parse_two_ints(line, u, v))
            throw InputError("line " + std::to_string(lineno) + ": malformed edge, expected \"u v\"");
        const std::string where = "line " + std::to_string(lineno) + ": ";
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw InputError(where + "vertex out of range in edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
        if (u == v) throw InputError(where + "loop edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
        const std::int64_t key = u * n + v;
        const std::int64_t rkey = v * n + u;
        if (seen.count(key)) throw InputError(where + "duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
        if (seen.count(rkey)) throw InputError(where + "antiparallel pair at edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
        seen.insert(key);
        edges.push_back(Edge{static_cast<VertexId>(u), static_cast<VertexId>(v)});
    }
    while (std::getline(in, line)) {
        ++lineno;
        if (!detail::blank_line(line))
            throw InputError("line " + std::to_string(lineno) + ": trailing content after " + std::to_string(m) + " edges");
    }
    return Digraph::from_edge_list(static_cast<int>(n), std::move(edges));
}

inline Digraph read_digraph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    try {
        return read_digraph(in);
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

inline void write_digraph(std::ostream& out, const Digraph& g) {
    out << g.vertex_count() << " " << g.edge_count() << "\n";
    for (const Edge& e : g.edges()) out << e.from << " " << e.to << "\n";
}

inline void write_digraph_file(const std::string& path, const Digraph& g) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open file for writing: " + path);
    write_digraph(out, g);
}

/// Same text format read as an undirected graph: direction is ignored, each
/// pair may appear once in either orientation.
inline UndirectedGraph read_undirected(std::istream& in) {
    const Digraph g = read_digraph(in);
    return underlying_undirected(g);
}

inline UndirectedGraph read_undirected_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    try {
        return read_undirected(in);
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

}  // namespace faslab
