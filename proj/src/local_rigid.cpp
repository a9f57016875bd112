#include "meshdiff/local_rigid.hpp"

#include <stdexcept>

#include <Eigen/SVD>

#include "meshdiff/parallel.hpp"

namespace meshdiff {

RigidFit fit_rigid(std::span<const Vec3> source_points, std::span<const Vec3> dest_points) {
    if (source_points.size() != dest_points.size())
        throw std::invalid_argument("fit_rigid: point lists differ in length");
    if (source_points.size() < 3)
        throw std::invalid_argument("fit_rigid: need at least 3 point pairs");

    const double inv = 1.0 / static_cast<double>(source_points.size());
    Vec3 src_centroid = Vec3::Zero(), dst_centroid = Vec3::Zero();
    for (std::size_t i = 0; i < source_points.size(); ++i) {
        src_centroid += source_points[i];
        dst_centroid += dest_points[i];
    }
    src_centroid *= inv;
    dst_centroid *= inv;

    Eigen::Matrix3d cross = Eigen::Matrix3d::Zero();
    for (std::size_t i = 0; i < source_points.size(); ++i)
        cross += (source_points[i] - src_centroid) * (dest_points[i] - dst_centroid).transpose();

    Eigen::JacobiSVD<Eigen::Matrix3d> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::Matrix3d u = svd.matrixU();
    Eigen::Matrix3d v = svd.matrixV();
    for (int k = 0; k < 3; ++k) {
        int arg = 0;
        u.col(k).cwiseAbs().maxCoeff(&arg);
        if (u(arg, k) < 0) {
            u.col(k) = -u.col(k);
            v.col(k) = -v.col(k);
        }
    }
    Eigen::Matrix3d rotation = v * u.transpose();
    if (rotation.determinant() < 0) {
        v.col(2) = -v.col(2);
        rotation = v * u.transpose();
    }

    RigidFit fit;
    fit.transform.rotation = rotation;
    fit.transform.translation = dst_centroid - rotation * src_centroid;
    const auto& sigma = svd.singularValues();
    fit.degenerate = sigma(1) <= 1e-12 * sigma(0) || sigma(0) == 0;
    return fit;
}

PreliminaryOffsets dividing_step(const std::vector<Vec3>& template_positions,
                                 const std::vector<Vec3>& target_positions,
                                 const std::vector<int>& active_vertices,
                                 const std::vector<std::vector<int>>& neighbor_graph,
                                 int threads) {
    const std::size_t n = template_positions.size();
    if (target_positions.size() != n)
        throw std::invalid_argument("dividing_step: template/target size mismatch");

    PreliminaryOffsets out;
    out.offsets.assign(n, Vec3::Zero());
    out.predicted = target_positions;
    out.flagged.assign(n, 0);

    const int count = static_cast<int>(active_vertices.size());
    parallel_for(0, count, threads, [&](int idx) {
        const int v = active_vertices[idx];
        const auto& ring = neighbor_graph[v];
        if (ring.size() < 3) {
            out.flagged[v] = 1;
            return;
        }
        std::vector<Vec3> src, dst;
        src.reserve(ring.size());
        dst.reserve(ring.size());
        for (int j : ring) {
            src.push_back(template_positions[j]);
            dst.push_back(target_positions[j]);
        }
        const RigidFit fit = fit_rigid(src, dst);
        out.predicted[v] = fit.transform.apply(template_positions[v]);
        out.offsets[v] = out.predicted[v] - target_positions[v];
    });
    return out;
}

PreliminaryOffsets dividing_step(const CorrespondedPair& pair,
                                 const std::vector<int>& active_vertices,
                                 const std::vector<std::vector<int>>& neighbor_graph,
                                 int threads) {
    return dividing_step(pair.template_mesh.vertices, pair.target_mesh.vertices, active_vertices,
                         neighbor_graph, threads);
}

} // namespace meshdiff
