#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "meshdiff/mesh.hpp"

namespace meshdiff {

struct RigidTransform {
    Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
    Vec3 translation = Vec3::Zero();

    Vec3 apply(const Vec3& p) const { return rotation * p + translation; }
};

struct RigidFit {
    RigidTransform transform;
    bool degenerate = false; // collinear input; rotation about the line is convention-fixed
};

/// Per-vertex dividing output. Entries are valid for the vertices the step
/// was run on; offsets of fixed vertices feed the solver rows but their
/// positions are never updated.
struct PreliminaryOffsets {
    std::vector<Vec3> offsets;          // o_i = p_i - v_i^t
    std::vector<Vec3> predicted;        // p_i = R_i v_i^s + T_i
    std::vector<std::uint8_t> flagged;  // under-determined ring, offset forced to 0
};

/// Least-squares rigid alignment of source onto dest (SVD of the 3x3
/// cross-covariance with determinant-sign correction). Sign convention:
/// each left singular vector is flipped so its largest-magnitude component
/// is positive, making the result deterministic for degenerate spectra.
RigidFit fit_rigid(std::span<const Vec3> source_points, std::span<const Vec3> dest_points);

/// Dividing step: for each active vertex, rigidly fits its template
/// neighbor cell onto the corresponding target cell and records the
/// preliminary offset of the vertex itself. Data-parallel over vertices.
PreliminaryOffsets dividing_step(const std::vector<Vec3>& template_positions,
                                 const std::vector<Vec3>& target_positions,
                                 const std::vector<int>& active_vertices,
                                 const std::vector<std::vector<int>>& neighbor_graph,
                                 int threads = 0);

PreliminaryOffsets dividing_step(const CorrespondedPair& pair,
                                 const std::vector<int>& active_vertices,
                                 const std::vector<std::vector<int>>& neighbor_graph,
                                 int threads = 0);

} // namespace meshdiff
