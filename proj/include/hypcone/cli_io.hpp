#pragma once

// File formats and the seeded ergodicity experiment behind the command line.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hypcone/covering_group.hpp"
#include "hypcone/plane_geometry.hpp"
#include "hypcone/surface_glue.hpp"

namespace hypcone {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kCsvSchema = 1;

/// Shortest decimal that reads back to the same double.
std::string format_double(double x);

/// Geometric tolerance: an explicit override, else $HF_TOLERANCE, else kGeomEps.
/// Throws MalformedInput for an unparsable or non-positive value.
double geometric_tolerance(std::optional<double> override_value = std::nullopt);

// --- RepDocument -------------------------------------------------------------

struct RepDocument {
  int genus = 0;
  int boundary = 0;
  /// Presentation order. Matrices are kept with their signs, det 1.
  std::vector<std::string> names;
  std::vector<Mat2> matrices;
  std::string description;
  std::optional<std::uint64_t> seed;
  /// Generator names numbered from 0 (G0, H0, ..., C0) instead of from 1.
  bool zero_based = false;
  /// Determinant normalizations performed while loading.
  std::vector<std::string> warnings;

  SurfaceRep surface() const;
};

/// Names for (genus, boundary) numbered from 0 or from 1.
std::vector<std::string> presentation_names(int genus, int boundary, bool zero_based);

/// Throws MalformedInput (syntax errors carry line and column) or
/// PreconditionFailed (a matrix with det <= 0).
RepDocument parse_rep_document(const std::string& text);
std::string serialize_rep_document(const RepDocument& doc);
RepDocument make_rep_document(const SurfaceRep& rep, const std::string& description = "");

/// Pieces: {"kind": "pants"|"punctured_torus", "words": [...], "transport": "..."};
/// edges: {"a": i, "b": j, "curve": "..."}. Throws MalformedInput.
Decomposition parse_decomposition(const std::string& text);
std::string serialize_decomposition(const Decomposition& dec);

std::string read_text_file(const std::string& path);

// --- Ergodicity experiment -------------------------------------------------------

struct ExperimentOptions {
  double t = 3.0;
  int samples = 200;
  int depth = 12;
  int stations = 64;
  std::uint64_t seed = 0;
  double box = 5.0;
  int threads = 1;
  /// Record wall time per trial; otherwise the ms column is 0.
  bool timing = false;
};

struct ExperimentRecord {
  double t = 0.0;
  int index = 0;
  Character character;
  ReductionType type = ReductionType::PANTS;
  bool good = false;
  /// Certificate depth, the search budget on failure, 0 when not searched.
  int depth = 0;
  int stations = 0;
  double ms = 0.0;
};

struct ExperimentSummary {
  int elliptic_count = 0;
  int pants_count = 0;
  int good_count = 0;
  /// good_count / elliptic_count; empty when there are no elliptic samples.
  std::optional<double> rate;
  std::vector<ExperimentRecord> records;
};

/// Trial i draws from mt19937_64 seeded by seed_seq{seed low, seed high, i}.
/// `on_record` sees the records in index order as they complete. Throws
/// PreconditionFailed for t <= 2 or samples < 1.
ExperimentSummary ergodic_experiment(const ExperimentOptions& options,
                                     const std::function<void(const ExperimentRecord&)>& on_record = {});

std::string csv_header(const ExperimentOptions& options);
std::string csv_row(const ExperimentRecord& r);
std::string csv_footer(const ExperimentSummary& s);
std::string rate_string(const std::optional<double>& rate);

// --- SVG -------------------------------------------------------------------------------

enum class SvgModel { DISK, HALFPLANE };

struct SvgDomain {
  GeodesicPolygon polygon;
  /// Side pairings; arrows mark sides one of them maps onto another side.
  std::vector<Isometry> pairings;
  std::string fill = "#cfe3f7";
  std::string stroke = "#1f4e79";
  /// Per-side stroke colours; empty uses `stroke` for every side.
  std::vector<std::string> side_colours;
  /// Filled sub-polygons drawn under the sides (e.g. pentagon halves).
  std::vector<std::pair<GeodesicPolygon, std::string>> regions;
  bool right_angle_markers = false;
};

struct SvgOptions {
  SvgModel model = SvgModel::DISK;
  bool arrows = false;
  int size = 800;
};

/// SVG 1.1 document. Each side of each domain is one <path class="side">.
std::string render_svg(const std::vector<SvgDomain>& domains, const SvgOptions& options = {});

SvgDomain svg_domain(const GluedDomain& d);
SvgDomain svg_domain(const PantsDomain& d);
SvgDomain svg_domain(const Pentagon& p);
std::vector<SvgDomain> svg_domains(const Assembly& a, bool include_tiling = false);

}  // namespace hypcone
