#pragma once

#include <string>
#include <vector>

#include "meshdiff/mesh.hpp"

namespace meshdiff {

/// ASCII OBJ reader restricted to `v`/`f` records with triangular faces.
/// Texture/normal indices in face tokens are ignored; quads are rejected.
Mesh load_mesh(const std::string& path);

/// Writes `v`/`f` records at full decimal precision so that a load of the
/// written file reproduces the coordinates bit-identically.
void save_mesh(const std::string& path, const Mesh& mesh);

/// One 0-based vertex index per line; `#` starts a comment.
std::vector<int> load_index_list(const std::string& path);

} // namespace meshdiff
