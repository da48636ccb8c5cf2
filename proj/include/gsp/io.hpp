#pragma once

#include "gsp/graph.hpp"
#include "gsp/sampling.hpp"

#include <string>
#include <vector>

namespace gsp {

// 17 significant digits; reading the text back gives the same double.
std::string format_double(double v);

struct CsvTable {
  std::vector<std::string> header;  // empty when the file has no header row
  Mat values;
};

// Numeric CSV. A first row that does not parse as numbers is kept as the
// header. Ragged rows, empty files and non-numeric cells raise FormatError.
CsvTable read_csv(const std::string& path);
Mat read_matrix(const std::string& path);
// One value per line (a single column or a single row).
Vec read_vector(const std::string& path);

std::string csv_text(const Mat& values, const std::vector<std::string>& header = {});
std::string json_table_text(const Mat& values, const std::vector<std::string>& header = {});

// Writes to `path.tmp` and renames over `path`.
void write_text_atomic(const std::string& path, const std::string& text);
void write_csv(const std::string& path, const Mat& values, const std::vector<std::string>& header = {});
void write_vector(const std::string& path, const Vec& values);

std::string read_text(const std::string& path);

// Graph files: a JSON manifest {"n", "directed", "edges"} where "edges" is a
// CSV path (relative to the manifest, header src,dst,weight) or an inline
// array of [src, dst, weight]; or a dense weight-matrix CSV.
Graph read_graph(const std::string& path);
// Manifest plus `<stem>-edges.csv` next to it.
void write_graph(const std::string& manifest_path, const Graph& g);

// CSV with header vertex,value.
MeasurementSet read_samples(const std::string& path);

// Row-major heatmap of |values| with a fixed five-stop palette.
std::string heatmap_svg(const Mat& values, int cell_size = 6);

}  // namespace gsp
