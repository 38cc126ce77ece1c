#pragma once

// Text formats.
//
//   color matrix   "n r", then n rows of n colors in [0, r)
//   generators     one permutation per line, as its image list
//   group table    g lines of g element indices, table[a][b] = a·b
//   graph          "n m", then m lines "u v"
//
// Blank lines and lines starting with '#' are ignored everywhere.
// Every parse failure throws Error(ParseError) with a line number.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ccdec/coherent_configuration.hpp"
#include "ccdec/constructors.hpp"
#include "ccdec/decomposition.hpp"

namespace ccdec::io {

ColorMatrix read_color_matrix(std::istream &in);
void write_color_matrix(std::ostream &out, const ColorMatrix &m);

ColorMatrix load_color_matrix(const std::filesystem::path &path);
void save_color_matrix(const std::filesystem::path &path, const ColorMatrix &m);

PermutationGroupGens read_generators(std::istream &in, std::size_t degree);
GroupTable read_group_table(std::istream &in);

struct Graph {
  std::size_t n = 0;
  std::vector<std::pair<Point, Point>> edges;
};
Graph read_graph(std::istream &in);

/// Opens `path` for reading; throws Error(ParseError) if it cannot.
std::ifstream open_input(const std::filesystem::path &path);

nlohmann::json to_json(const Fingerprint &f);

/// Field names are listed in docs/report-schema.md.
nlohmann::json decomposition_report(const CC &source,
                                    const TensorDecomposition &d);

/// Rebuilds the factors of a report, forms their tensor product and checks
/// the report's point_map against `source`.
bool verify_report(const CC &source, const nlohmann::json &report);

} // namespace ccdec::io
