#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "sarbox/geometry.hpp"
#include "sarbox/grid.hpp"

namespace sarbox {

/// On-disk box record: one JSON object per line with fields image_id, cx, cy,
/// w, h, theta_deg and (for predictions) score. Angles are degrees at every
/// file surface; they become canonical radians on parse.
struct DetectionRecord {
    std::string image_id;
    double cx = 0.0;
    double cy = 0.0;
    double w = 0.0;  // raw side paired with the perpendicular of theta
    double h = 0.0;  // raw side paired with theta's direction
    double theta_deg = 0.0;
    std::optional<double> score;
};

enum class RecordKind { ground_truth, prediction };

/// A parsed box plus the 1-based line it came from.
struct ParsedBox {
    ObbBox box;
    int line = 0;
};

/// Boxes grouped by image id (lexical order).
using DetectionSet = std::map<std::string, std::vector<ParsedBox>>;

/// Canonicalizes a record (degrees -> radians, long-edge convention).
ObbBox record_to_box(const DetectionRecord& rec);

/// Renders a canonical box back to a record; the angle is re-wrapped into
/// [-90, 90) degrees.
DetectionRecord box_to_record(const std::string& image_id, const ObbBox& box);

DetectionRecord parse_detection_line(const std::string& line, RecordKind kind);
std::string format_detection_line(const DetectionRecord& rec);

/// Parses a line-delimited record file. Blank lines are skipped. Malformed
/// lines and predictions without a score raise std::runtime_error naming the
/// line number. Ground-truth parsing drops any score field.
DetectionSet parse_detections(const std::filesystem::path& path, RecordKind kind);
DetectionSet parse_detections(std::istream& in, RecordKind kind, const std::string& source);

void write_detections(std::ostream& out, const std::string& image_id,
                      const std::vector<ObbBox>& boxes);

/// F32GRID: ASCII header "F32GRID <width> <height>\n" followed by
/// width*height little-endian 32-bit floats, row-major, top row first.
/// Reading a written grid reproduces it bit for bit (values pass through
/// 32-bit floats). read_grid also accepts binary 8-bit PGM (P5), mapped to
/// [0, 1] by dividing by maxval.
Grid read_grid(const std::filesystem::path& path);
void write_grid(const std::filesystem::path& path, const Grid& g);

}  // namespace sarbox
