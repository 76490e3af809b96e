#include "hamflow/mesh/io.hpp"

#include <fstream>
#include <iomanip>
#include <map>
#include <queue>
#include <sstream>

#include "hamflow/error.hpp"

namespace hamflow {

namespace {

/// Next whitespace-separated token, skipping '#' comments.
class TokenReader {
 public:
  explicit TokenReader(std::istream& in) : in_(in) {}

  bool next(std::string& tok) {
    while (true) {
      if (line_ >> tok) {
        if (tok[0] == '#') {
          line_.clear();
          line_.str("");
          continue;
        }
        return true;
      }
      std::string raw;
      if (!std::getline(in_, raw)) return false;
      line_.clear();
      line_.str(raw);
    }
  }

  template <typename T>
  T read(const char* what) {
    std::string tok;
    if (!next(tok)) throw InputError(std::string("OFF parse error: unexpected end of file reading ") + what);
    std::istringstream is(tok);
    T value{};
    if (!(is >> value) || !is.eof())
      throw InputError(std::string("OFF parse error: bad ") + what + " '" + tok + "'");
    return value;
  }

 private:
  std::istream& in_;
  std::istringstream line_;
};

/// Flips triangles so every interior edge is traversed once in each direction.
void orient_consistently(std::vector<Triangle>& tris, int nv) {
  std::map<std::pair<int, int>, std::vector<int>> by_edge;
  for (int t = 0; t < static_cast<int>(tris.size()); ++t)
    for (int k = 0; k < 3; ++k) {
      const int a = tris[t][k], b = tris[t][(k + 1) % 3];
      by_edge[{std::min(a, b), std::max(a, b)}].push_back(t);
    }
  for (const auto& [e, list] : by_edge) {
    if (list.size() == 1) throw InputError("open boundary");
    if (list.size() > 2) throw InputError("non-manifold edge");
  }
  auto has_side = [&](int t, int a, int b) {
    for (int k = 0; k < 3; ++k)
      if (tris[t][k] == a && tris[t][(k + 1) % 3] == b) return true;
    return false;
  };
  std::vector<int> state(tris.size(), 0);  // 0 unvisited, 1 fixed
  for (int seed = 0; seed < static_cast<int>(tris.size()); ++seed) {
    if (state[seed] != 0) continue;
    state[seed] = 1;
    std::queue<int> q;
    q.push(seed);
    while (!q.empty()) {
      const int t = q.front();
      q.pop();
      for (int k = 0; k < 3; ++k) {
        const int a = tris[t][k], b = tris[t][(k + 1) % 3];
        const auto& list = by_edge[{std::min(a, b), std::max(a, b)}];
        const int u = list[0] == t ? list[1] : list[0];
        if (state[u] == 0) {
          if (has_side(u, a, b)) std::swap(tris[u][1], tris[u][2]);
          state[u] = 1;
          q.push(u);
        } else if (has_side(u, a, b)) {
          throw InputError("inconsistent orientation unfixable by triangle flips (non-orientable surface)");
        }
      }
    }
  }
  (void)nv;
}

std::vector<std::pair<std::array<int, 2>, double>> read_lengths(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open edge-length file " + path.string());
  std::vector<std::pair<std::array<int, 2>, double>> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    for (auto& c : line)
      if (c == ',') c = ' ';
    std::istringstream is(line);
    int a = 0, b = 0;
    double l = 0.0;
    if (!(is >> a >> b >> l))
      throw InputError("edge-length parse error at line " + std::to_string(lineno));
    out.push_back({{a, b}, l});
  }
  return out;
}

}  // namespace

Surface load_off(const std::filesystem::path& path, const std::filesystem::path& lengths_path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open OFF file " + path.string());
  TokenReader reader(in);
  std::string header;
  if (!reader.next(header) || header != "OFF") throw InputError("OFF parse error: missing 'OFF' header");
  const int nv = reader.read<int>("vertex count");
  const int nf = reader.read<int>("face count");
  reader.read<int>("edge count");
  if (nv <= 0 || nf <= 0) throw InputError("OFF parse error: counts must be positive");
  std::vector<Vec3> pts(nv);
  for (auto& p : pts)
    for (int c = 0; c < 3; ++c) p[c] = reader.read<double>("vertex coordinate");
  std::vector<Triangle> tris;
  for (int f = 0; f < nf; ++f) {
    const int k = reader.read<int>("face size");
    if (k < 3) throw InputError("OFF parse error: face with fewer than 3 vertices");
    std::vector<int> idx(k);
    for (auto& i : idx) {
      i = reader.read<int>("face index");
      if (i < 0 || i >= nv) throw InputError("OFF parse error: face index out of range");
    }
    for (int j = 1; j + 1 < k; ++j) tris.push_back({idx[0], idx[j], idx[j + 1]});
  }
  orient_consistently(tris, nv);
  const std::string name = path.stem().string();
  if (!lengths_path.empty()) return Surface::intrinsic(nv, std::move(tris), read_lengths(lengths_path), name);
  return Surface::embedded(std::move(pts), std::move(tris), name);
}

void write_off(const Surface& s, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << "OFF\n" << s.num_vertices() << ' ' << s.num_triangles() << ' ' << s.num_edges() << '\n';
  out << std::setprecision(17);
  for (int v = 0; v < s.num_vertices(); ++v) {
    const Vec3 p = s.points().empty() ? Vec3::Zero() : s.points()[v];
    out << p.x() << ' ' << p.y() << ' ' << p.z() << '\n';
  }
  for (const auto& t : s.triangles()) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

void write_edge_lengths(const Surface& s, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << "# v0,v1,length\n" << std::setprecision(17);
  for (int e = 0; e < s.num_edges(); ++e)
    out << s.edges()[e][0] << ',' << s.edges()[e][1] << ',' << s.edge_length(e) << '\n';
}

void write_vtk(const Surface& s, const std::filesystem::path& path, const VtkFields& fields) {
  if (!s.has_ambient_frame()) throw InputError("VTK export needs vertex positions");
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << "# vtk DataFile Version 3.0\nhamflow " << s.name() << "\nASCII\nDATASET POLYDATA\n";
  out << std::setprecision(17);
  out << "POINTS " << s.num_vertices() << " double\n";
  for (const auto& p : s.points()) out << p.x() << ' ' << p.y() << ' ' << p.z() << '\n';
  out << "POLYGONS " << s.num_triangles() << ' ' << 4 * s.num_triangles() << '\n';
  for (const auto& t : s.triangles()) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  if (!fields.point_scalars.empty() || !fields.point_vectors.empty()) {
    out << "POINT_DATA " << s.num_vertices() << '\n';
    for (const auto& [name, values] : fields.point_scalars) {
      if (static_cast<int>(values.size()) != s.num_vertices()) throw InputError("point field size mismatch: " + name);
      out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
      for (double v : values) out << v << '\n';
    }
    for (const auto& [name, values] : fields.point_vectors) {
      if (static_cast<int>(values.size()) != s.num_vertices()) throw InputError("point field size mismatch: " + name);
      out << "VECTORS " << name << " double\n";
      for (const auto& v : values) out << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
    }
  }
  if (!fields.cell_scalars.empty()) {
    out << "CELL_DATA " << s.num_triangles() << '\n';
    for (const auto& [name, values] : fields.cell_scalars) {
      if (static_cast<int>(values.size()) != s.num_triangles()) throw InputError("cell field size mismatch: " + name);
      out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
      for (double v : values) out << v << '\n';
    }
  }
}

}  // namespace hamflow
