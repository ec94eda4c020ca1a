#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stidelab/completeness.hpp"
#include "stidelab/detector.hpp"
#include "stidelab/sequence.hpp"

namespace stidelab {

inline constexpr std::string_view tool_version = "0.1.0";

/// Hex FNV-1a of a config echo; stamped into every CSV preamble.
std::string config_hash(std::string_view config_text);

/// "# stidelab <version> config=<hash>"
std::string csv_preamble(std::string_view hash);

/// Quotes a field when it holds a comma, quote or line break.
std::string csv_field(std::string_view text);

/// Shortest decimal form: 8 -> "8", 2.5 -> "2.5".
std::string format_number(double v);

// CSV writers. None writes the preamble; callers emit it first.
void write_sequence_csv(std::ostream& out, const SequenceSet& sequences);
void write_scan_csv(std::ostream& out, const ScanResult& scan);
void write_lfc_csv(std::ostream& out, const LfcResult& lfc);
void write_mmac_csv(std::ostream& out, const MMACCurve& curve);
void write_mmm_csv(std::ostream& out, const MMMatrix& matrix);

struct MfsReportRow {
  std::string intrusion;
  std::string run;
  SequenceSet mfs;
};

void write_mfs_report_csv(std::ostream& out, std::span<const MfsReportRow> rows);
void write_histogram_csv(std::ostream& out, const std::vector<std::size_t>& exact,
                         const std::vector<std::size_t>& cumulative);

std::string render_mmac_svg(const MMACCurve& curve);
std::string render_mmm_svg(const MMMatrix& matrix);

/// Minimal SVG document builder.
class Svg {
 public:
  Svg(double width, double height);

  void rect(double x, double y, double w, double h, std::string_view fill,
            std::string_view stroke = "none");
  void line(double x1, double y1, double x2, double y2, std::string_view stroke,
            double width = 1.0, std::string_view dash = {});
  void polyline(std::span<const std::pair<double, double>> points, std::string_view stroke,
                double width = 1.0);
  void text(double x, double y, std::string_view content, double size = 11,
            std::string_view anchor = "start");

  std::string str() const;

 private:
  double width_;
  double height_;
  std::string body_;
};

}  // namespace stidelab
