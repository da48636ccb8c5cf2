#include "gsp/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace gsp {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  const char* begin = s.data();
  if (*begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_row(const std::vector<std::string>& cells, std::vector<double>& out) {
  out.clear();
  for (const auto& c : cells) {
    double v = 0.0;
    if (!parse_double(c, v)) return false;
    out.push_back(v);
  }
  return true;
}

int parse_index(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw FormatError(where + ": vertex index must be an integer");
  return j.get<int>();
}

std::array<double, 3> palette(double t) {
  // Dark blue, teal, green, yellow-green, yellow.
  static const std::array<std::array<double, 3>, 5> stops = {{{68, 1, 84},
                                                             {59, 82, 139},
                                                             {33, 145, 140},
                                                             {94, 201, 98},
                                                             {253, 231, 37}}};
  t = std::clamp(t, 0.0, 1.0) * 4.0;
  const int i = std::min(static_cast<int>(t), 3);
  const double f = t - i;
  std::array<double, 3> c{};
  for (int k = 0; k < 3; ++k) c[k] = stops[i][k] + f * (stops[i + 1][k] - stops[i][k]);
  return c;
}

}  // namespace

std::string format_double(double v) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", v);
  return buf.data();
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CsvTable read_csv(const std::string& path) {
  std::istringstream in(read_text(path));
  CsvTable table;
  std::vector<std::vector<double>> rows;
  std::string line;
  std::vector<double> parsed;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto cells = split_cells(line);
    if (!parse_row(cells, parsed)) {
      if (rows.empty() && table.header.empty()) {
        table.header = cells;
        continue;
      }
      throw FormatError(path + ":" + std::to_string(line_no) + ": non-numeric cell");
    }
    if (!rows.empty() && parsed.size() != rows.front().size()) {
      throw FormatError(path + ":" + std::to_string(line_no) + ": expected " +
                        std::to_string(rows.front().size()) + " columns, found " +
                        std::to_string(parsed.size()));
    }
    rows.push_back(parsed);
  }
  if (rows.empty()) throw FormatError(path + ": no numeric rows");
  if (!table.header.empty() && table.header.size() != rows.front().size()) {
    throw FormatError(path + ": header has " + std::to_string(table.header.size()) +
                      " columns but rows have " + std::to_string(rows.front().size()));
  }
  table.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) table.values(i, j) = rows[i][j];
  }
  return table;
}

Mat read_matrix(const std::string& path) { return read_csv(path).values; }

Vec read_vector(const std::string& path) {
  Mat m = read_matrix(path);
  if (m.cols() == 1) return m.col(0);
  if (m.rows() == 1) return m.row(0).transpose();
  throw FormatError(path + ": expected a single column of values");
}

std::string csv_text(const Mat& values, const std::vector<std::string>& header) {
  std::string out;
  if (!header.empty()) {
    for (std::size_t j = 0; j < header.size(); ++j) out += (j ? "," : "") + header[j];
    out += '\n';
  }
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      if (j) out += ',';
      out += format_double(values(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string json_table_text(const Mat& values, const std::vector<std::string>& header) {
  // Numbers are spliced in as 17-digit text so the JSON matches the CSV.
  std::string out = "{\"header\":" + Json(header).dump() + ",\"rows\":[";
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    out += i ? ",[" : "[";
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      if (j) out += ',';
      out += std::isfinite(values(i, j)) ? format_double(values(i, j)) : "null";
    }
    out += ']';
  }
  return out + "]}\n";
}

void write_text_atomic(const std::string& path, const std::string& text) {
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write file: " + tmp);
    out << text;
    out.flush();
    if (!out) throw ValidationError("write failed: " + tmp);
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw ValidationError("cannot move " + tmp + " into place: " + ec.message());
  }
}

void write_csv(const std::string& path, const Mat& values, const std::vector<std::string>& header) {
  write_text_atomic(path, csv_text(values, header));
}

void write_vector(const std::string& path, const Vec& values) { write_csv(path, values); }

Graph read_graph(const std::string& path) {
  const fs::path p(path);
  if (p.extension() != ".json") {
    Mat w = read_matrix(path);
    if (w.rows() != w.cols()) throw FormatError(path + ": dense weight matrix must be square");
    const bool symmetric = (w - w.transpose()).cwiseAbs().maxCoeff() == 0.0;
    return from_dense(w, !symmetric);
  }
  Json j;
  try {
    j = Json::parse(read_text(path));
  } catch (const Json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer()) {
    throw FormatError(path + ": manifest needs an integer \"n\"");
  }
  const int n = j["n"].get<int>();
  const bool directed = j.value("directed", false);
  std::vector<Edge> edges;
  if (!j.contains("edges")) throw FormatError(path + ": manifest needs \"edges\"");
  const Json& e = j["edges"];
  if (e.is_string()) {
    const fs::path edge_path = p.parent_path() / e.get<std::string>();
    CsvTable t = read_csv(edge_path.string());
    if (t.values.cols() != 3 && t.values.cols() != 2) {
      throw FormatError(edge_path.string() + ": edge rows need src,dst[,weight]");
    }
    for (Eigen::Index r = 0; r < t.values.rows(); ++r) {
      const double s = t.values(r, 0), d = t.values(r, 1);
      if (s != std::floor(s) || d != std::floor(d)) {
        throw FormatError(edge_path.string() + ": vertex index must be an integer");
      }
      edges.push_back({static_cast<int>(s), static_cast<int>(d), t.values.cols() == 3 ? t.values(r, 2) : 1.0});
    }
  } else if (e.is_array()) {
    for (const auto& row : e) {
      if (!row.is_array() || row.size() < 2 || row.size() > 3) {
        throw FormatError(path + ": inline edges must be [src, dst] or [src, dst, weight]");
      }
      const double w = row.size() == 3 ? row[2].get<double>() : 1.0;
      edges.push_back({parse_index(row[0], path), parse_index(row[1], path), w});
    }
  } else {
    throw FormatError(path + ": \"edges\" must be a CSV path or an array");
  }
  return from_edge_list(edges, n, directed);
}

void write_graph(const std::string& manifest_path, const Graph& g) {
  const fs::path p(manifest_path);
  const std::string edge_name = p.stem().string() + "-edges.csv";
  Mat rows(static_cast<Eigen::Index>(g.edges().size()), 3);
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    rows(i, 0) = g.edges()[i].src;
    rows(i, 1) = g.edges()[i].dst;
    rows(i, 2) = g.edges()[i].weight;
  }
  write_csv((p.parent_path() / edge_name).string(), rows, {"src", "dst", "weight"});
  Json j = {{"n", g.size()}, {"directed", g.directed()}, {"edges", edge_name}};
  write_text_atomic(manifest_path, j.dump(2) + "\n");
}

MeasurementSet read_samples(const std::string& path) {
  Mat m = read_matrix(path);
  if (m.cols() != 2) throw FormatError(path + ": samples need two columns vertex,value");
  MeasurementSet out;
  out.values.resize(m.rows());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    if (m(r, 0) != std::floor(m(r, 0)) || m(r, 0) < 0) {
      throw FormatError(path + ": vertex index must be a nonnegative integer");
    }
    out.vertices.push_back(static_cast<int>(m(r, 0)));
    out.values(r) = m(r, 1);
  }
  return out;
}

std::string heatmap_svg(const Mat& values, int cell_size) {
  const Eigen::Index rows = values.rows(), cols = values.cols();
  const double peak = rows && cols ? values.cwiseAbs().maxCoeff() : 0.0;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << cols * cell_size << "\" height=\""
      << rows * cell_size << "\" shape-rendering=\"crispEdges\">\n";
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double t = peak > 0.0 ? std::abs(values(i, j)) / peak : 0.0;
      const auto c = palette(t);
      svg << "<rect x=\"" << j * cell_size << "\" y=\"" << i * cell_size << "\" width=\"" << cell_size
          << "\" height=\"" << cell_size << "\" fill=\"rgb(" << std::lround(c[0]) << ","
          << std::lround(c[1]) << "," << std::lround(c[2]) << ")\"/>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace gsp
