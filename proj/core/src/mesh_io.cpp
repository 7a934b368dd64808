#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fspectra/error.hpp"
#include "fspectra/mesh.hpp"

namespace fspectra {
namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParse, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Splits into non-empty, comment-stripped lines, remembering line numbers.
std::vector<std::pair<int, std::string>> content_lines(const std::string& text) {
  std::vector<std::pair<int, std::string>> out;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.emplace_back(number, line);
  }
  return out;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path.string());
  out << text;
}

}  // namespace

SurfaceMesh parse_off(const std::string& text) {
  const auto lines = content_lines(text);
  auto fail = [](int line, const std::string& what) -> Error {
    return Error(ErrorCode::kParse, "OFF line " + std::to_string(line) + ": " + what);
  };
  if (lines.empty()) throw Error(ErrorCode::kParse, "OFF: empty input");

  std::size_t cursor = 0;
  std::istringstream head(lines[0].second);
  std::string magic;
  head >> magic;
  if (magic.rfind("OFF", 0) != 0) throw fail(lines[0].first, "missing OFF header");
  long nv = -1, nf = -1, ne = 0;
  if (!(head >> nv)) {
    cursor = 1;
    if (cursor >= lines.size()) throw fail(lines[0].first, "missing element counts");
    std::istringstream counts(lines[cursor].second);
    if (!(counts >> nv >> nf)) throw fail(lines[cursor].first, "expected vertex and face counts");
    counts >> ne;
  } else if (!(head >> nf)) {
    throw fail(lines[0].first, "expected face count");
  }
  if (nv < 3 || nf < 1) throw fail(lines[cursor].first, "invalid element counts");
  ++cursor;

  SurfaceMesh mesh;
  mesh.domain = ParamDomain::kNone;
  for (long i = 0; i < nv; ++i, ++cursor) {
    if (cursor >= lines.size()) throw Error(ErrorCode::kParse, "OFF: unexpected end of file in vertex list");
    std::istringstream row(lines[cursor].second);
    Vec3 p;
    if (!(row >> p[0] >> p[1] >> p[2])) throw fail(lines[cursor].first, "expected three coordinates");
    mesh.params.emplace_back(p);
    mesh.positions.emplace_back(p);
  }
  for (long i = 0; i < nf; ++i, ++cursor) {
    if (cursor >= lines.size()) throw Error(ErrorCode::kParse, "OFF: unexpected end of file in face list");
    std::istringstream row(lines[cursor].second);
    int n = 0;
    if (!(row >> n) || n < 3) throw fail(lines[cursor].first, "face needs at least three vertices");
    std::vector<int> idx(static_cast<std::size_t>(n));
    for (int& v : idx) {
      if (!(row >> v)) throw fail(lines[cursor].first, "missing vertex index");
      if (v < 0 || v >= nv) throw fail(lines[cursor].first, "vertex index out of range");
    }
    for (int k = 1; k + 1 < n; ++k) mesh.triangles.push_back({idx[0], idx[k], idx[k + 1]});
  }
  build_connectivity(mesh);
  validate_mesh(mesh);
  return mesh;
}

SurfaceMesh load_off(const std::filesystem::path& path) { return parse_off(read_file(path)); }

void save_off(const SurfaceMesh& mesh, const std::filesystem::path& path) {
  std::ostringstream out;
  out << "OFF\n" << mesh.num_vertices() << ' ' << mesh.num_faces() << ' ' << mesh.num_edges() << '\n';
  for (const Vec& p : mesh.positions) {
    for (int c = 0; c < 3; ++c) out << (c ? " " : "") << fmt17(c < p.size() ? p[c] : 0.0);
    out << '\n';
  }
  for (const auto& t : mesh.triangles) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  write_text(path, out.str());
}

void save_csv(const Vec& values, const std::filesystem::path& path) {
  std::string text;
  for (Eigen::Index i = 0; i < values.size(); ++i) text += fmt17(values[i]) + "\n";
  write_text(path, text);
}

void save_csv(const Mat& values, const std::filesystem::path& path) {
  std::string text;
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      if (j) text += ',';
      text += fmt17(values(i, j));
    }
    text += '\n';
  }
  write_text(path, text);
}

Mat load_csv(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (start <= line.size()) {
      std::size_t end = line.find(',', start);
      if (end == std::string::npos) end = line.size();
      double v = 0.0;
      const char* first = line.data() + start;
      const char* last = line.data() + end;
      while (first < last && *first == ' ') ++first;
      auto [ptr, ec] = std::from_chars(first, last, v);
      if (ec != std::errc() || ptr != last) {
        throw Error(ErrorCode::kParse, "CSV line " + std::to_string(number) + ": bad number");
      }
      row.push_back(v);
      start = end + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(ErrorCode::kParse, "CSV line " + std::to_string(number) + ": ragged row");
    }
    rows.push_back(std::move(row));
  }
  Mat m(static_cast<Eigen::Index>(rows.size()), rows.empty() ? 0 : static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  }
  return m;
}

void save_coordinate(const Eigen::SparseMatrix<double>& m, const std::filesystem::path& path) {
  std::ostringstream out;
  out << "% " << m.rows() << ' ' << m.cols() << ' ' << m.nonZeros() << '\n';
  for (int k = 0; k < m.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(m, k); it; ++it) {
      out << it.row() << ' ' << it.col() << ' ' << fmt17(it.value()) << '\n';
    }
  }
  write_text(path, out.str());
}

}  // namespace fspectra
