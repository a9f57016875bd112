#include "meshdiff/spatial.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace meshdiff {

namespace {

constexpr int kLeafCapacity = 4;

double box_distance_squared(const Vec3& q, const Vec3& lo, const Vec3& hi) {
    double d2 = 0;
    for (int k = 0; k < 3; ++k) {
        const double d = std::max({lo[k] - q[k], 0.0, q[k] - hi[k]});
        d2 += d * d;
    }
    return d2;
}

} // namespace

Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
    // Ericson, Real-Time Collision Detection, section 5.1.5
    const Vec3 ab = b - a, ac = c - a, ap = p - a;
    const double d1 = ab.dot(ap), d2 = ac.dot(ap);
    if (d1 <= 0 && d2 <= 0) return a;

    const Vec3 bp = p - b;
    const double d3 = ab.dot(bp), d4 = ac.dot(bp);
    if (d3 >= 0 && d4 <= d3) return b;

    const double vc = d1 * d4 - d3 * d2;
    if (vc <= 0 && d1 >= 0 && d3 <= 0) return a + ab * (d1 / (d1 - d3));

    const Vec3 cp = p - c;
    const double d5 = ab.dot(cp), d6 = ac.dot(cp);
    if (d6 >= 0 && d5 <= d6) return c;

    const double vb = d5 * d2 - d1 * d6;
    if (vb <= 0 && d2 >= 0 && d6 <= 0) return a + ac * (d2 / (d2 - d6));

    const double va = d3 * d6 - d5 * d4;
    if (va <= 0 && d4 - d3 >= 0 && d5 - d6 >= 0)
        return b + (c - b) * ((d4 - d3) / ((d4 - d3) + (d5 - d6)));

    const double denom = 1.0 / (va + vb + vc);
    return a + ab * (vb * denom) + ac * (vc * denom);
}

AabbTree::AabbTree(const Mesh& surface) : surface_(&surface) {
    if (surface.face_count() == 0) throw std::invalid_argument("AabbTree: surface has no triangles");
    triangles_.resize(surface.face_count());
    std::iota(triangles_.begin(), triangles_.end(), 0);
    std::vector<Vec3> centroids(surface.face_count());
    for (int t = 0; t < surface.face_count(); ++t) {
        const auto& f = surface.faces[t];
        centroids[t] =
            (surface.vertices[f[0]] + surface.vertices[f[1]] + surface.vertices[f[2]]) / 3.0;
    }
    nodes_.reserve(2 * surface.face_count());
    root_ = build(0, surface.face_count(), centroids);
}

int AabbTree::build(int begin, int end, std::vector<Vec3>& centroids) {
    Node node;
    node.box_min = Vec3::Constant(std::numeric_limits<double>::infinity());
    node.box_max = -node.box_min;
    for (int i = begin; i < end; ++i) {
        const auto& f = surface_->faces[triangles_[i]];
        for (int v : f) {
            node.box_min = node.box_min.cwiseMin(surface_->vertices[v]);
            node.box_max = node.box_max.cwiseMax(surface_->vertices[v]);
        }
    }

    const int index = static_cast<int>(nodes_.size());
    nodes_.push_back(node);
    if (end - begin <= kLeafCapacity) {
        nodes_[index].begin = begin;
        nodes_[index].count = end - begin;
        return index;
    }

    int axis = 0;
    (node.box_max - node.box_min).maxCoeff(&axis);
    const int mid = begin + (end - begin) / 2;
    std::nth_element(triangles_.begin() + begin, triangles_.begin() + mid,
                     triangles_.begin() + end, [&](int lhs, int rhs) {
                         const double cl = centroids[lhs][axis], cr = centroids[rhs][axis];
                         return cl < cr || (cl == cr && lhs < rhs);
                     });

    const int left = build(begin, mid, centroids);
    const int right = build(mid, end, centroids);
    nodes_[index].left = left;
    nodes_[index].right = right;
    return index;
}

void AabbTree::search(int node_index, const Vec3& query, ClosestPointResult& best) const {
    const Node& node = nodes_[node_index];
    if (node.left < 0) {
        for (int i = node.begin; i < node.begin + node.count; ++i) {
            const int t = triangles_[i];
            const auto& f = surface_->faces[t];
            const Vec3 cp = closest_point_on_triangle(query, surface_->vertices[f[0]],
                                                      surface_->vertices[f[1]],
                                                      surface_->vertices[f[2]]);
            const double d = (cp - query).norm();
            if (d < best.distance || (d == best.distance && t < best.triangle)) {
                best = {cp, t, d};
            }
        }
        return;
    }
    const double dl = box_distance_squared(query, nodes_[node.left].box_min,
                                           nodes_[node.left].box_max);
    const double dr = box_distance_squared(query, nodes_[node.right].box_min,
                                           nodes_[node.right].box_max);
    const int first = dl <= dr ? node.left : node.right;
    const int second = dl <= dr ? node.right : node.left;
    const double dfirst = std::min(dl, dr), dsecond = std::max(dl, dr);
    if (dfirst <= best.distance * best.distance) search(first, query, best);
    if (dsecond <= best.distance * best.distance) search(second, query, best);
}

ClosestPointResult AabbTree::closest_point(const Vec3& query) const {
    ClosestPointResult best;
    best.distance = std::numeric_limits<double>::infinity();
    best.triangle = std::numeric_limits<int>::max();
    search(root_, query, best);
    return best;
}

} // namespace meshdiff
