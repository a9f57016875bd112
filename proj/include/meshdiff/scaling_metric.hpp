#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "meshdiff/mesh.hpp"

namespace meshdiff {

/// Per-edge log length-ratio of a mesh relative to a reference template.
/// The reference itself embeds at the origin.
struct ScaleEmbedding {
    std::vector<double> values;
    std::uint64_t reference = 0; // hash of the reference mesh
};

/// Normalized per-edge weights |e_i|^2 / sum |e_j|^2 of a template.
struct EdgeWeights {
    std::vector<double> weights;
};

/// Per-edge length ratios target / template.
std::vector<double> similarity_scores(const Mesh& template_mesh, const Mesh& target);

ScaleEmbedding scale_embedding(const Mesh& mesh, const Mesh& reference);

EdgeWeights edge_weights(const Mesh& reference);

/// Entrywise |log(e_i^1 / e_i^2)|; independent of any reference.
std::vector<double> local_distance(const Mesh& t1, const Mesh& t2);

/// Weighted mean of the local distance vector, (1/m) * sum_i w_i * d_i.
double global_distance(const Mesh& t1, const Mesh& t2, const EdgeWeights& weights);

/// Writes <prefix>_edges.csv (edge index, |log ratio|) and
/// <prefix>_vertices.csv (vertex index, signed mean incident log ratio,
/// positive for stretching of t2 relative to t1). No header rows.
void heatmap_export(const Mesh& t1, const Mesh& t2, const std::string& path_prefix);

} // namespace meshdiff
