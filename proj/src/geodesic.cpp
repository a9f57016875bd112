#include "meshdiff/geodesic.hpp"

#include <limits>
#include <queue>
#include <stdexcept>

namespace meshdiff {

namespace {

using HeapEntry = std::pair<double, int>;
using MinHeap = std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>>;

void relax_from(const Mesh& mesh, std::vector<double>& dist, MinHeap& heap) {
    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u]) continue;
        for (int v : mesh.one_ring[u]) {
            const double nd = d + (mesh.vertices[u] - mesh.vertices[v]).norm();
            if (nd < dist[v]) {
                dist[v] = nd;
                heap.emplace(nd, v);
            }
        }
    }
}

} // namespace

std::vector<double> geodesic_field(const Mesh& mesh, const std::vector<int>& sources) {
    if (sources.empty()) throw std::invalid_argument("geodesic_field: no sources");
    std::vector<double> dist(mesh.vertex_count(), std::numeric_limits<double>::infinity());
    MinHeap heap;
    for (int s : sources) {
        if (s < 0 || s >= mesh.vertex_count())
            throw std::invalid_argument("geodesic_field: source index out of range");
        dist[s] = 0;
        heap.emplace(0.0, s);
    }
    relax_from(mesh, dist, heap);
    return dist;
}

std::vector<int> farthest_point_sample(const Mesh& mesh, const std::vector<int>& seed, int count,
                                       const std::vector<std::uint8_t>& eligible) {
    const int n = mesh.vertex_count();
    if (!eligible.empty() && static_cast<int>(eligible.size()) != n)
        throw std::invalid_argument("farthest_point_sample: eligibility mask size mismatch");

    std::vector<std::uint8_t> included(n, 0);
    for (int s : seed) included[s] = 1;
    int candidates = 0;
    for (int v = 0; v < n; ++v)
        if (!included[v] && (eligible.empty() || eligible[v])) ++candidates;
    if (count > candidates)
        throw std::invalid_argument("farthest_point_sample: count exceeds available vertices");

    std::vector<double> dist(n, std::numeric_limits<double>::infinity());
    if (!seed.empty()) dist = geodesic_field(mesh, seed);

    std::vector<int> picked;
    picked.reserve(count);
    for (int step = 0; step < count; ++step) {
        int best = -1;
        double best_dist = -1;
        for (int v = 0; v < n; ++v) {
            if (included[v] || (!eligible.empty() && !eligible[v])) continue;
            if (dist[v] > best_dist) {
                best_dist = dist[v];
                best = v;
            }
        }
        picked.push_back(best);
        included[best] = 1;
        dist[best] = 0;
        MinHeap heap;
        heap.emplace(0.0, best);
        relax_from(mesh, dist, heap);
    }
    return picked;
}

} // namespace meshdiff
