#include "meshdiff/obj_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace meshdiff {

namespace {

[[noreturn]] void parse_error(const std::string& path, int line, const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

// Face tokens may be "i", "i/t", "i//n", or "i/t/n"; only the vertex index matters.
int face_vertex_index(const std::string& token, const std::string& path, int line) {
    const auto slash = token.find('/');
    const std::string head = slash == std::string::npos ? token : token.substr(0, slash);
    int idx = 0;
    const auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), idx);
    if (ec != std::errc() || ptr != head.data() + head.size())
        parse_error(path, line, "bad face index '" + token + "'");
    return idx;
}

} // namespace

Mesh load_mesh(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open mesh file: " + path);

    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> faces;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        std::string tag;
        if (!(ss >> tag) || tag[0] == '#') continue;
        if (tag == "v") {
            Vec3 p;
            if (!(ss >> p.x() >> p.y() >> p.z()))
                parse_error(path, lineno, "vertex record needs three coordinates");
            vertices.push_back(p);
        } else if (tag == "f") {
            std::vector<int> idx;
            std::string token;
            while (ss >> token) idx.push_back(face_vertex_index(token, path, lineno));
            if (idx.size() != 3)
                parse_error(path, lineno,
                            "unsupported face with " + std::to_string(idx.size()) +
                                " vertices (triangles only)");
            std::array<int, 3> f{};
            for (int k = 0; k < 3; ++k) {
                int v = idx[k];
                if (v < 0) v = static_cast<int>(vertices.size()) + v + 1;
                if (v < 1 || v > static_cast<int>(vertices.size()))
                    parse_error(path, lineno, "face index " + std::to_string(idx[k]) +
                                                  " out of range");
                f[k] = v - 1;
            }
            faces.push_back(f);
        }
        // all other records (vn, vt, usemtl, ...) are ignored
    }
    try {
        return Mesh(std::move(vertices), std::move(faces));
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

void save_mesh(const std::string& path, const Mesh& mesh) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write mesh file: " + path);
    char buf[128];
    for (const auto& v : mesh.vertices) {
        std::snprintf(buf, sizeof(buf), "v %.17g %.17g %.17g\n", v.x(), v.y(), v.z());
        out << buf;
    }
    for (const auto& f : mesh.faces)
        out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<int> load_index_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open index file: " + path);
    std::vector<int> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ss(line);
        int v;
        if (ss >> v) {
            out.push_back(v);
            std::string rest;
            if (ss >> rest) parse_error(path, lineno, "trailing content '" + rest + "'");
        } else {
            std::string rest;
            if (ss.clear(), ss >> rest) parse_error(path, lineno, "expected integer, got '" + rest + "'");
        }
    }
    return out;
}

} // namespace meshdiff
