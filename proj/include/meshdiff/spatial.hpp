#pragma once

#include <vector>

#include "meshdiff/mesh.hpp"

namespace meshdiff {

struct ClosestPointResult {
    Vec3 point = Vec3::Zero();
    int triangle = -1;
    double distance = 0;
};

/// Exact closest point on a single triangle (interior / edge / vertex
/// region classification).
Vec3 closest_point_on_triangle(const Vec3& query, const Vec3& a, const Vec3& b, const Vec3& c);

/// Binary AABB hierarchy over the triangles of a surface, built once per
/// target (median split on the longest box axis, at most 4 triangles per
/// leaf). Queries are exact; the tree only prunes the traversal. Immutable
/// after construction and safe for concurrent queries.
class AabbTree {
  public:
    explicit AabbTree(const Mesh& surface);

    /// Exact minimizer of point-to-triangle distance over all triangles;
    /// equidistant candidates resolve to the lowest triangle index.
    ClosestPointResult closest_point(const Vec3& query) const;

    /// Triangle indices stored at the leaves, for structural checks.
    std::vector<int> leaf_triangles() const { return triangles_; }

  private:
    struct Node {
        Vec3 box_min, box_max;
        int left = -1, right = -1; // children, or leaf range when left < 0
        int begin = 0, count = 0;
    };

    int build(int begin, int end, std::vector<Vec3>& centroids);
    void search(int node, const Vec3& query, ClosestPointResult& best) const;

    const Mesh* surface_;
    std::vector<Node> nodes_;
    std::vector<int> triangles_; // leaf ranges index into this permutation
    int root_ = -1;
};

} // namespace meshdiff
