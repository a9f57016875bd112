#pragma once

#include <string>
#include <vector>

#include "meshdiff/mesh.hpp"

namespace meshdiff {

struct PyramidLevel {
    std::vector<int> free_vertices;  // newly unlocked at this level
    std::vector<int> fixed_vertices; // original fixed plus all previous levels
    std::vector<std::vector<int>> neighbor_graph; // over global ids, symmetric
};

/// Nested coarse-to-fine vertex subsets MR(0..k). Levels 0..k-1 carry
/// custom neighbor graphs over the included vertices; level k is the full
/// resolution with the native 1-ring graph (restricted to interested
/// vertices). Computed once per template and shared across targets.
struct ResolutionPyramid {
    int k = 0;
    std::vector<PyramidLevel> levels; // size k + 1
};

/// Farthest-point-sampling pyramid with free-vertex counts decimated by 4
/// per level. Neighbor rules for the coarse levels: a mesh-boundary vertex
/// connects to its two boundary-adjacent included vertices plus the
/// nearest included interior vertex; an interior vertex to its six
/// geodesically nearest included vertices; the graph is then symmetrized.
ResolutionPyramid build_pyramid(const Mesh& mesh, const VertexClassification& classification,
                                int k);

/// Text sidecar keyed by the template hash so batch runs can reuse one
/// construction.
void save_pyramid(const std::string& path, const ResolutionPyramid& pyramid,
                  std::uint64_t template_hash);
ResolutionPyramid load_pyramid(const std::string& path, std::uint64_t expected_template_hash);

} // namespace meshdiff
