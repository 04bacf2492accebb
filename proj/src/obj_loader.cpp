// Copyright (c) 2026 the semistereo authors
// SPDX-License-Identifier: Apache-2.0
#include "semistereo/obj_loader.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace semistereo {
namespace {

std::string at_line(const std::string& name, int line, const std::string& what) {
  return name + ":" + std::to_string(line) + ": " + what;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

double parse_double(std::string_view tok, const std::string& name, int line) {
  // std::from_chars<double> handles the full token or it is an error.
  double v = 0.0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
    throw ParseError(at_line(name, line, "bad number '" + std::string(tok) + "'"));
  return v;
}

long parse_long(std::string_view tok, const std::string& name, int line) {
  long v = 0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
    throw ParseError(at_line(name, line, "bad index '" + std::string(tok) + "'"));
  return v;
}

// Resolve a 1-based or negative OBJ index against the current element count.
int resolve_index(long raw, long count, const std::string& name, int line) {
  long idx = raw > 0 ? raw - 1 : count + raw;
  if (raw == 0 || idx < 0 || idx >= count)
    throw BadIndexError(at_line(name, line, "index " + std::to_string(raw) +
                                                " out of range (have " +
                                                std::to_string(count) + ")"));
  return static_cast<int>(idx);
}

}  // namespace

MeshAsset parse_obj(std::string_view text, const std::string& name) {
  MeshAsset mesh;
  mesh.name = name;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                           : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    const auto toks = split_ws(line);
    if (toks.empty() || toks[0].front() == '#') continue;
    const std::string_view key = toks[0];

    if (key == "v") {
      if (toks.size() < 4) throw ParseError(at_line(name, line_no, "vertex needs 3 coordinates"));
      mesh.positions.push_back({parse_double(toks[1], name, line_no),
                                parse_double(toks[2], name, line_no),
                                parse_double(toks[3], name, line_no)});
    } else if (key == "vt") {
      if (toks.size() < 3) throw ParseError(at_line(name, line_no, "vt needs 2 coordinates"));
      mesh.uvs.push_back({parse_double(toks[1], name, line_no),
                          parse_double(toks[2], name, line_no)});
    } else if (key == "f") {
      if (toks.size() < 4) throw ParseError(at_line(name, line_no, "face needs 3 or more corners"));
      std::vector<int> vi, ti;
      for (std::size_t k = 1; k < toks.size(); ++k) {
        const std::string_view corner = toks[k];
        const std::size_t s1 = corner.find('/');
        if (s1 == std::string_view::npos || s1 + 1 >= corner.size() || corner[s1 + 1] == '/')
          throw MissingUvError(at_line(name, line_no, "face corner '" + std::string(corner) +
                                                          "' has no texture coordinate"));
        const std::size_t s2 = corner.find('/', s1 + 1);
        const std::string_view v_tok = corner.substr(0, s1);
        const std::string_view t_tok =
            corner.substr(s1 + 1, s2 == std::string_view::npos ? std::string_view::npos
                                                               : s2 - s1 - 1);
        vi.push_back(resolve_index(parse_long(v_tok, name, line_no),
                                   static_cast<long>(mesh.positions.size()), name, line_no));
        ti.push_back(resolve_index(parse_long(t_tok, name, line_no),
                                   static_cast<long>(mesh.uvs.size()), name, line_no));
        // A trailing normal index is allowed and ignored.
        if (s2 != std::string_view::npos)
          parse_long(corner.substr(s2 + 1), name, line_no);
      }
      for (std::size_t k = 1; k + 1 < vi.size(); ++k)
        mesh.triangles.push_back({{vi[0], vi[k], vi[k + 1]}, {ti[0], ti[k], ti[k + 1]}});
    } else if (key == "vn" || key == "g" || key == "o" || key == "s" || key == "mtllib" ||
               key == "usemtl") {
      // Non-geometric data this renderer has no use for.
    } else {
      throw ParseError(at_line(name, line_no, "unknown keyword '" + std::string(key) + "'"));
    }
  }
  mesh.validate();
  return mesh;
}

MeshAsset load_obj(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_obj(buf.str(), path.filename().string());
}

}  // namespace semistereo
