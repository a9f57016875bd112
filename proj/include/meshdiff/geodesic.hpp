#pragma once

#include <vector>

#include "meshdiff/mesh.hpp"

namespace meshdiff {

/// Per-vertex geodesic distance to the nearest source, measured as
/// shortest-path distance on the edge graph with Euclidean edge weights.
/// Unreachable vertices carry +infinity.
std::vector<double> geodesic_field(const Mesh& mesh, const std::vector<int>& sources);

/// Greedy farthest point sampling: appends `count` vertices, each
/// maximizing its geodesic distance to the already included set, with the
/// distance field updated incrementally after each insertion. When
/// `eligible` is non-empty only those vertices are candidates for
/// selection (distances still propagate through the whole mesh).
std::vector<int> farthest_point_sample(const Mesh& mesh, const std::vector<int>& seed, int count,
                                       const std::vector<std::uint8_t>& eligible = {});

} // namespace meshdiff
