#include "meshdiff/pyramid.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

#include "meshdiff/geodesic.hpp"

namespace meshdiff {

namespace {

using HeapEntry = std::pair<double, int>;
using MinHeap = std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>>;

// Truncated Dijkstra from `start` collecting the `want` nearest vertices
// accepted by `accept` (self excluded), ordered by (distance, index).
template <typename Accept>
std::vector<int> nearest_accepted(const Mesh& mesh, int start, int want, Accept&& accept) {
    std::vector<double> dist(mesh.vertex_count(), std::numeric_limits<double>::infinity());
    std::vector<std::uint8_t> done(mesh.vertex_count(), 0);
    MinHeap heap;
    dist[start] = 0;
    heap.emplace(0.0, start);
    std::vector<int> found;
    while (!heap.empty() && static_cast<int>(found.size()) < want) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (done[u]) continue;
        done[u] = 1;
        if (u != start && accept(u)) found.push_back(u);
        for (int v : mesh.one_ring[u]) {
            const double nd = d + (mesh.vertices[u] - mesh.vertices[v]).norm();
            if (nd < dist[v]) {
                dist[v] = nd;
                heap.emplace(nd, v);
            }
        }
    }
    return found;
}

std::vector<std::vector<int>> level_graph(const Mesh& mesh,
                                          const std::vector<std::uint8_t>& included,
                                          const std::vector<int>& level_vertices) {
    std::vector<std::set<int>> adj(mesh.vertex_count());
    for (int v : level_vertices) {
        if (mesh.is_boundary_vertex(v)) {
            // two boundary-adjacent included vertices
            for (int u : mesh.boundary_neighbors(v))
                if (included[u]) adj[v].insert(u);
            // plus the nearest included interior vertex
            const auto interior = nearest_accepted(mesh, v, 1, [&](int u) {
                return included[u] && !mesh.is_boundary_vertex(u);
            });
            if (!interior.empty()) adj[v].insert(interior[0]);
        } else {
            const auto nearest =
                nearest_accepted(mesh, v, 6, [&](int u) { return included[u] != 0; });
            adj[v].insert(nearest.begin(), nearest.end());
        }
    }
    // symmetrize
    std::vector<std::vector<int>> graph(mesh.vertex_count());
    for (int v : level_vertices)
        for (int u : adj[v]) {
            adj[u].insert(v);
        }
    for (int v : level_vertices) graph[v].assign(adj[v].begin(), adj[v].end());
    return graph;
}

} // namespace

ResolutionPyramid build_pyramid(const Mesh& mesh, const VertexClassification& classification,
                                int k) {
    if (k < 1) throw std::invalid_argument("build_pyramid: k must be at least 1");
    const std::vector<int> all_free = classification.free_vertices();
    const std::vector<int> all_fixed = classification.fixed_vertices();
    const long n_free = static_cast<long>(all_free.size());

    long pow4 = 1;
    for (int j = 0; j < k - 1; ++j) pow4 *= 4;
    if (n_free < pow4)
        throw std::invalid_argument("build_pyramid: k too large for " + std::to_string(n_free) +
                                    " free vertices");

    // cumulative included-free targets per coarse level (last one = all)
    std::vector<long> cumulative(k);
    long divisor = pow4;
    for (int j = 0; j < k; ++j) {
        cumulative[j] = n_free / divisor;
        divisor /= 4;
    }
    cumulative[k - 1] = n_free;

    std::vector<std::uint8_t> eligible(mesh.vertex_count(), 0);
    for (int v : all_free) eligible[v] = 1;
    const long fps_count = k >= 2 ? cumulative[k - 2] : 0;
    const std::vector<int> fps_order =
        farthest_point_sample(mesh, all_fixed, static_cast<int>(fps_count), eligible);

    ResolutionPyramid pyramid;
    pyramid.k = k;

    std::vector<std::uint8_t> included(mesh.vertex_count(), 0);
    for (int v : all_fixed) included[v] = 1;
    std::vector<int> unlocked; // free vertices included so far, in FPS order
    for (int j = 0; j < k; ++j) {
        PyramidLevel level;
        level.fixed_vertices = all_fixed;
        level.fixed_vertices.insert(level.fixed_vertices.end(), unlocked.begin(), unlocked.end());

        if (j < k - 1) {
            for (long i = static_cast<long>(unlocked.size()); i < cumulative[j]; ++i)
                level.free_vertices.push_back(fps_order[i]);
        } else {
            std::vector<std::uint8_t> seen(mesh.vertex_count(), 0);
            for (int v : unlocked) seen[v] = 1;
            for (int v : all_free)
                if (!seen[v]) level.free_vertices.push_back(v);
        }
        for (int v : level.free_vertices) included[v] = 1;
        unlocked.insert(unlocked.end(), level.free_vertices.begin(), level.free_vertices.end());

        std::vector<int> level_vertices = level.fixed_vertices;
        level_vertices.insert(level_vertices.end(), level.free_vertices.begin(),
                              level.free_vertices.end());
        level.neighbor_graph = level_graph(mesh, included, level_vertices);
        pyramid.levels.push_back(std::move(level));
    }

    // full resolution: native 1-ring over interested vertices
    PyramidLevel full;
    full.free_vertices = all_free;
    full.fixed_vertices = all_fixed;
    full.neighbor_graph.assign(mesh.vertex_count(), {});
    for (int v = 0; v < mesh.vertex_count(); ++v) {
        if (!classification.is_interested(v)) continue;
        for (int u : mesh.one_ring[v])
            if (classification.is_interested(u)) full.neighbor_graph[v].push_back(u);
    }
    pyramid.levels.push_back(std::move(full));
    return pyramid;
}

void save_pyramid(const std::string& path, const ResolutionPyramid& pyramid,
                  std::uint64_t template_hash) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write pyramid file: " + path);
    out << "meshdiff-pyramid 1\n";
    out << "template " << template_hash << '\n';
    out << "levels " << pyramid.levels.size() << '\n';
    for (const auto& level : pyramid.levels) {
        out << "free " << level.free_vertices.size();
        for (int v : level.free_vertices) out << ' ' << v;
        out << "\nfixed " << level.fixed_vertices.size();
        for (int v : level.fixed_vertices) out << ' ' << v;
        out << "\ngraph " << level.neighbor_graph.size() << '\n';
        for (std::size_t v = 0; v < level.neighbor_graph.size(); ++v) {
            if (level.neighbor_graph[v].empty()) continue;
            out << v << ':';
            for (int u : level.neighbor_graph[v]) out << ' ' << u;
            out << '\n';
        }
        out << "end\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

ResolutionPyramid load_pyramid(const std::string& path, std::uint64_t expected_template_hash) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open pyramid file: " + path);
    std::string tag;
    int version = 0;
    in >> tag >> version;
    if (tag != "meshdiff-pyramid" || version != 1)
        throw std::runtime_error(path + ": not a pyramid sidecar");
    std::uint64_t hash = 0;
    in >> tag >> hash;
    if (tag != "template") throw std::runtime_error(path + ": malformed header");
    if (hash != expected_template_hash)
        throw std::runtime_error(path + ": pyramid was built for a different template");
    std::size_t level_count = 0;
    in >> tag >> level_count;
    if (tag != "levels") throw std::runtime_error(path + ": malformed header");

    ResolutionPyramid pyramid;
    pyramid.k = static_cast<int>(level_count) - 1;
    for (std::size_t l = 0; l < level_count; ++l) {
        PyramidLevel level;
        std::size_t count = 0;
        in >> tag >> count;
        if (tag != "free") throw std::runtime_error(path + ": expected free list");
        level.free_vertices.resize(count);
        for (auto& v : level.free_vertices) in >> v;
        in >> tag >> count;
        if (tag != "fixed") throw std::runtime_error(path + ": expected fixed list");
        level.fixed_vertices.resize(count);
        for (auto& v : level.fixed_vertices) in >> v;
        in >> tag >> count;
        if (tag != "graph") throw std::runtime_error(path + ": expected graph");
        level.neighbor_graph.assign(count, {});
        std::string line;
        std::getline(in, line); // consume rest of the graph header line
        while (std::getline(in, line)) {
            if (line == "end") break;
            if (line.empty()) continue;
            std::istringstream ss(line);
            std::string head;
            ss >> head;
            if (head.back() != ':') throw std::runtime_error(path + ": malformed graph row");
            const int v = std::stoi(head.substr(0, head.size() - 1));
            int u;
            while (ss >> u) level.neighbor_graph[v].push_back(u);
        }
        pyramid.levels.push_back(std::move(level));
    }
    if (!in) throw std::runtime_error(path + ": truncated pyramid file");
    return pyramid;
}

} // namespace meshdiff
