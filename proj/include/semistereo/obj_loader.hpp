// Copyright (c) 2026 the semistereo authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string_view>

#include "semistereo/scene.hpp"

namespace semistereo {

// Parse the text-OBJ subset: `v x y z`, `vt u v`, and `f` with 3 or more
// corners of the form v/vt or v/vt/vn (normals ignored). Faces triangulate
// as a fan from the first corner. Negative indices count from the end, per
// the OBJ convention. Comments, blank lines, and the non-geometric keywords
// vn/g/o/s/mtllib/usemtl are skipped; anything else is a ParseError. Faces
// without texture coordinates raise MissingUvError, out-of-range indices
// BadIndexError. Errors name the offending line.
MeshAsset parse_obj(std::string_view text, const std::string& name);

MeshAsset load_obj(const std::filesystem::path& path);

}  // namespace semistereo
