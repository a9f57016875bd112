#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace meshdiff {

using Vec3 = Eigen::Vector3d;

/// Indexed triangle mesh. Edges and 1-ring adjacency are derived from the
/// faces at construction; edges are canonicalized as (min,max) index pairs
/// and stored in ascending lexicographic order so that meshes sharing a
/// topology index their edges identically.
struct Mesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> faces;
    std::vector<std::array<int, 2>> edges;
    std::vector<std::vector<int>> one_ring;   // sorted neighbor indices
    std::vector<std::uint8_t> edge_face_count; // 1 = boundary edge, 2 = interior

    Mesh() = default;
    Mesh(std::vector<Vec3> vertices, std::vector<std::array<int, 3>> faces);

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    int face_count() const { return static_cast<int>(faces.size()); }
    int edge_count() const { return static_cast<int>(edges.size()); }

    bool is_boundary_vertex(int v) const { return boundary_mask_[v] != 0; }
    int boundary_edge_count() const { return boundary_edge_count_; }

    /// Indices of vertices incident to at least one boundary edge.
    std::vector<int> boundary_vertices() const;

    /// Boundary neighbors of v (vertices joined to v by a boundary edge).
    const std::vector<int>& boundary_neighbors(int v) const { return boundary_adj_[v]; }

  private:
    std::vector<std::uint8_t> boundary_mask_;
    std::vector<std::vector<int>> boundary_adj_;
    int boundary_edge_count_ = 0;
};

enum class VertexClass : std::uint8_t { Free, Fixed, NonInterested };

/// Per-vertex category plus the diffusion weight lambda used by the solver.
struct VertexClassification {
    std::vector<VertexClass> klass;
    std::vector<double> lambda;
    int fixed_count = 0;

    bool is_free(int v) const { return klass[v] == VertexClass::Free; }
    bool is_fixed(int v) const { return klass[v] == VertexClass::Fixed; }
    bool is_interested(int v) const { return klass[v] != VertexClass::NonInterested; }

    std::vector<int> free_vertices() const;
    std::vector<int> fixed_vertices() const;
    std::vector<int> interested_vertices() const;
};

/// Template and target meshes sharing one topology, plus the raw scan
/// surface that refined vertices are re-projected onto.
struct CorrespondedPair {
    Mesh template_mesh;
    Mesh target_mesh;
    Mesh raw_target_surface;
};

/// Fixed = landmarks, mesh-boundary vertices, and interested vertices
/// adjacent to a non-interested one; Free = the remaining interested
/// vertices. Lambda starts at 1 everywhere (see assign_lambda).
VertexClassification classify_vertices(const Mesh& mesh,
                                       const std::vector<int>& landmarks,
                                       const std::vector<int>& non_interested);

double mean_edge_length(const Mesh& mesh);

std::vector<double> edge_lengths(const Mesh& mesh);

/// Area-weighted vertex normals (not unit length for degenerate stars).
std::vector<Vec3> area_weighted_vertex_normals(const Mesh& mesh);

/// FNV-1a over vertex coordinates and face indices; keys pyramid sidecars.
std::uint64_t mesh_hash(const Mesh& mesh);

/// True when the two meshes have identical face lists (and hence identical
/// derived edges and adjacency).
bool same_topology(const Mesh& a, const Mesh& b);

} // namespace meshdiff
