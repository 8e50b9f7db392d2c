#include "xfer/csv.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace xfer {

namespace {

std::string trim(std::string s) {
  while (!s.empty() && (std::isspace(static_cast<unsigned char>(s.back())) != 0))
    s.pop_back();
  std::size_t b = 0;
  while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b])) != 0) ++b;
  return s.substr(b);
}

[[noreturn]] void fail(const std::filesystem::path& path, std::size_t line,
                       const std::string& what) {
  throw std::runtime_error(path.string() + ":" + std::to_string(line) + ": " + what);
}

/// Parses `expected` comma-separated finite doubles from a line.
std::vector<double> parse_row(const std::string& line, std::size_t expected,
                              const std::filesystem::path& path, std::size_t lineno) {
  std::vector<double> out;
  out.reserve(expected);
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = line.find(',', pos);
    const std::string cell =
        trim(line.substr(pos, comma == std::string::npos ? comma : comma - pos));
    if (cell.empty()) fail(path, lineno, "empty field");
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end != cell.c_str() + cell.size())
      fail(path, lineno, "malformed number '" + cell + "'");
    if (!std::isfinite(v))
      fail(path, lineno, "non-finite value '" + cell + "'");
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.size() != expected)
    fail(path, lineno, "expected " + std::to_string(expected) + " fields, got " +
                           std::to_string(out.size()));
  return out;
}

std::vector<std::vector<double>> load_table(const std::filesystem::path& path,
                                            const std::string& header,
                                            std::size_t columns) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());

  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) fail(path, 1, "empty file, expected header '" + header + "'");
  ++lineno;
  if (line.size() >= 3 && line[0] == '\xEF' && line[1] == '\xBB' && line[2] == '\xBF')
    line.erase(0, 3); // UTF-8 BOM
  if (trim(line) != header)
    fail(path, lineno, "expected header '" + header + "', got '" + trim(line) + "'");

  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    rows.push_back(parse_row(line, columns, path, lineno));
  }
  return rows;
}

class Writer {
public:
  explicit Writer(const std::filesystem::path& path) : out_(path) {
    if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  void line(const std::string& s) { out_ << s << '\n'; }
  void row(std::span<const double> vals) {
    char buf[32];
    for (std::size_t i = 0; i < vals.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", vals[i]);
      out_ << buf;
      if (i + 1 < vals.size()) out_ << ',';
    }
    out_ << '\n';
  }
private:
  std::ofstream out_;
};

} // namespace

std::vector<Point3> load_points_csv(const std::filesystem::path& path) {
  const auto rows = load_table(path, "x,y,z", 3);
  std::vector<Point3> pts;
  pts.reserve(rows.size());
  for (const auto& r : rows) pts.push_back(Point3{r[0], r[1], r[2]});
  return pts;
}

void save_points_csv(const std::filesystem::path& path, std::span<const Point3> points) {
  Writer w(path);
  w.line("x,y,z");
  for (const Point3& p : points) {
    const double row[3] = {p.x, p.y, p.z};
    w.row(row);
  }
}

std::vector<double> load_scalar_csv(const std::filesystem::path& path) {
  const auto rows = load_table(path, "value", 1);
  std::vector<double> vals;
  vals.reserve(rows.size());
  for (const auto& r : rows) vals.push_back(r[0]);
  return vals;
}

void save_scalar_csv(const std::filesystem::path& path, std::span<const double> values) {
  Writer w(path);
  w.line("value");
  for (double v : values) w.row({&v, 1});
}

std::vector<Vec3> load_displacement_csv(const std::filesystem::path& path) {
  const auto rows = load_table(path, "dx,dy,dz", 3);
  std::vector<Vec3> vals;
  vals.reserve(rows.size());
  for (const auto& r : rows) vals.emplace_back(r[0], r[1], r[2]);
  return vals;
}

void save_displacement_csv(const std::filesystem::path& path, std::span<const Vec3> values) {
  Writer w(path);
  w.line("dx,dy,dz");
  for (const Vec3& v : values) {
    const double row[3] = {v.x(), v.y(), v.z()};
    w.row(row);
  }
}

std::vector<Tensor3> load_tensor_csv(const std::filesystem::path& path) {
  const auto rows = load_table(path, "F11,F12,F13,F21,F22,F23,F31,F32,F33", 9);
  std::vector<Tensor3> vals;
  vals.reserve(rows.size());
  for (const auto& r : rows) {
    Tensor3 f;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) f(i, j) = r[static_cast<std::size_t>(3 * i + j)];
    vals.push_back(f);
  }
  return vals;
}

void save_tensor_csv(const std::filesystem::path& path, std::span<const Tensor3> values) {
  Writer w(path);
  w.line("F11,F12,F13,F21,F22,F23,F31,F32,F33");
  for (const Tensor3& f : values) {
    double row[9];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) row[3 * i + j] = f(i, j);
    w.row(row);
  }
}

} // namespace xfer
