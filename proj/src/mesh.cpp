#include "meshdiff/mesh.hpp"

#include <algorithm>
#include <stdexcept>

namespace meshdiff {

Mesh::Mesh(std::vector<Vec3> verts, std::vector<std::array<int, 3>> fcs)
    : vertices(std::move(verts)), faces(std::move(fcs)) {
    const int n = vertex_count();
    for (const auto& f : faces) {
        for (int v : f) {
            if (v < 0 || v >= n)
                throw std::runtime_error("face references vertex " + std::to_string(v) +
                                         " outside mesh of " + std::to_string(n) + " vertices");
        }
        if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2])
            throw std::runtime_error("degenerate face with repeated vertex index");
    }

    // Canonical (min,max) edges, deduplicated with face-incidence counts.
    std::vector<std::array<int, 2>> all;
    all.reserve(faces.size() * 3);
    for (const auto& f : faces) {
        for (int k = 0; k < 3; ++k) {
            int a = f[k], b = f[(k + 1) % 3];
            all.push_back({std::min(a, b), std::max(a, b)});
        }
    }
    std::sort(all.begin(), all.end());
    for (std::size_t i = 0; i < all.size();) {
        std::size_t j = i;
        while (j < all.size() && all[j] == all[i]) ++j;
        const auto count = j - i;
        if (count > 2)
            throw std::runtime_error("non-manifold edge (" + std::to_string(all[i][0]) + "," +
                                     std::to_string(all[i][1]) + ") with " +
                                     std::to_string(count) + " incident faces");
        edges.push_back(all[i]);
        edge_face_count.push_back(static_cast<std::uint8_t>(count));
        i = j;
    }

    one_ring.assign(n, {});
    boundary_mask_.assign(n, 0);
    boundary_adj_.assign(n, {});
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const int a = edges[e][0], b = edges[e][1];
        one_ring[a].push_back(b);
        one_ring[b].push_back(a);
        if (edge_face_count[e] == 1) {
            ++boundary_edge_count_;
            boundary_mask_[a] = boundary_mask_[b] = 1;
            boundary_adj_[a].push_back(b);
            boundary_adj_[b].push_back(a);
        }
    }
    for (auto& ring : one_ring) std::sort(ring.begin(), ring.end());
    for (auto& adj : boundary_adj_) std::sort(adj.begin(), adj.end());
}

std::vector<int> Mesh::boundary_vertices() const {
    std::vector<int> out;
    for (int v = 0; v < vertex_count(); ++v)
        if (boundary_mask_[v]) out.push_back(v);
    return out;
}

std::vector<int> VertexClassification::free_vertices() const {
    std::vector<int> out;
    for (int v = 0; v < static_cast<int>(klass.size()); ++v)
        if (klass[v] == VertexClass::Free) out.push_back(v);
    return out;
}

std::vector<int> VertexClassification::fixed_vertices() const {
    std::vector<int> out;
    for (int v = 0; v < static_cast<int>(klass.size()); ++v)
        if (klass[v] == VertexClass::Fixed) out.push_back(v);
    return out;
}

std::vector<int> VertexClassification::interested_vertices() const {
    std::vector<int> out;
    for (int v = 0; v < static_cast<int>(klass.size()); ++v)
        if (klass[v] != VertexClass::NonInterested) out.push_back(v);
    return out;
}

VertexClassification classify_vertices(const Mesh& mesh, const std::vector<int>& landmarks,
                                       const std::vector<int>& non_interested) {
    const int n = mesh.vertex_count();
    auto check = [n](int v, const char* what) {
        if (v < 0 || v >= n)
            throw std::invalid_argument(std::string(what) + " index " + std::to_string(v) +
                                        " out of range");
    };

    VertexClassification c;
    c.klass.assign(n, VertexClass::Free);
    c.lambda.assign(n, 1.0);

    for (int v : non_interested) {
        check(v, "non-interested");
        c.klass[v] = VertexClass::NonInterested;
    }
    for (int v : landmarks) {
        check(v, "landmark");
        if (c.klass[v] == VertexClass::NonInterested)
            throw std::invalid_argument("vertex " + std::to_string(v) +
                                        " listed as both landmark and non-interested");
        c.klass[v] = VertexClass::Fixed;
    }
    for (int v = 0; v < n; ++v) {
        if (c.klass[v] == VertexClass::NonInterested) continue;
        if (mesh.is_boundary_vertex(v)) {
            c.klass[v] = VertexClass::Fixed;
            continue;
        }
        for (int u : mesh.one_ring[v]) {
            if (c.klass[u] == VertexClass::NonInterested) {
                c.klass[v] = VertexClass::Fixed; // interface with a non-interested region
                break;
            }
        }
    }
    for (int v = 0; v < n; ++v)
        if (c.klass[v] == VertexClass::Fixed) ++c.fixed_count;
    return c;
}

double mean_edge_length(const Mesh& mesh) {
    if (mesh.edge_count() == 0) throw std::invalid_argument("mesh has no edges");
    double sum = 0;
    for (const auto& e : mesh.edges) sum += (mesh.vertices[e[0]] - mesh.vertices[e[1]]).norm();
    return sum / mesh.edge_count();
}

std::vector<double> edge_lengths(const Mesh& mesh) {
    std::vector<double> out(mesh.edges.size());
    for (std::size_t i = 0; i < mesh.edges.size(); ++i)
        out[i] = (mesh.vertices[mesh.edges[i][0]] - mesh.vertices[mesh.edges[i][1]]).norm();
    return out;
}

std::vector<Vec3> area_weighted_vertex_normals(const Mesh& mesh) {
    std::vector<Vec3> normals(mesh.vertices.size(), Vec3::Zero());
    for (const auto& f : mesh.faces) {
        const Vec3 cross = (mesh.vertices[f[1]] - mesh.vertices[f[0]])
                               .cross(mesh.vertices[f[2]] - mesh.vertices[f[0]]);
        for (int v : f) normals[v] += cross; // |cross| = 2*area
    }
    for (auto& nrm : normals) {
        const double len = nrm.norm();
        if (len > 0) nrm /= len;
    }
    return normals;
}

std::uint64_t mesh_hash(const Mesh& mesh) {
    std::uint64_t h = 14695981039346656037ull;
    auto mix = [&h](const void* data, std::size_t size) {
        const auto* bytes = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < size; ++i) {
            h ^= bytes[i];
            h *= 1099511628211ull;
        }
    };
    for (const auto& v : mesh.vertices) {
        const double coords[3] = {v.x(), v.y(), v.z()};
        mix(coords, sizeof(coords));
    }
    for (const auto& f : mesh.faces) mix(f.data(), sizeof(int) * 3);
    return h;
}

bool same_topology(const Mesh& a, const Mesh& b) {
    return a.vertices.size() == b.vertices.size() && a.faces == b.faces;
}

} // namespace meshdiff
