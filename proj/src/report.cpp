#include "stidelab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>

#include "stidelab/error.hpp"

namespace stidelab {

std::string config_hash(std::string_view config_text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : config_text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string csv_preamble(std::string_view hash) {
  return "# stidelab " + std::string(tool_version) + " config=" + std::string(hash);
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_number(double v) {
  if (std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 1e15) {
    return std::to_string(static_cast<long long>(v));
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

namespace {

void check(std::ostream& out, std::string_view what) {
  if (!out) throw IoError("failed writing " + std::string(what));
}

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

void write_sequence_csv(std::ostream& out, const SequenceSet& sequences) {
  // Ordered by length, then lexicographically.
  std::vector<const Sequence*> rows;
  for (const auto& s : sequences) rows.push_back(&s);
  std::stable_sort(rows.begin(), rows.end(),
                   [](const Sequence* a, const Sequence* b) { return a->size() < b->size(); });
  out << "length,sequence\n";
  for (const auto* s : rows) out << s->size() << ',' << s->to_string() << '\n';
  check(out, "sequence CSV");
}

void write_scan_csv(std::ostream& out, const ScanResult& scan) {
  out << "trace_idx,event_idx,window,flag\n";
  for (std::size_t t = 0; t < scan.traces.size(); ++t) {
    const auto& flags = scan.traces[t].flags;
    for (std::size_t e = 0; e < flags.size(); ++e) {
      if (e + 1 < scan.window) continue;
      out << t << ',' << e << ',' << scan.window << ',' << static_cast<int>(flags[e]) << '\n';
    }
  }
  check(out, "scan CSV");
}

void write_lfc_csv(std::ostream& out, const LfcResult& lfc) {
  out << "trace_idx,frame_idx,mismatches,alarm\n";
  for (const auto& f : lfc.frames) {
    out << f.trace_idx << ',' << f.frame_idx << ',' << f.mismatches << ',' << (f.alarm ? 1 : 0)
        << '\n';
  }
  check(out, "LFC CSV");
}

void write_mmac_csv(std::ostream& out, const MMACCurve& curve) {
  out << "size_pct,mss_avg";
  for (const auto& name : curve.intrusive_names) out << ',' << csv_field("mfs_avg_" + name);
  out << '\n';
  for (const auto& p : curve.points) {
    out << format_number(p.size_pct) << ',' << fixed4(p.mss_avg);
    for (double v : p.mfs_avg) out << ',' << fixed4(v);
    out << '\n';
  }
  check(out, "MMAC CSV");
}

void write_mmm_csv(std::ostream& out, const MMMatrix& matrix) {
  out << "pos_pct,size_pct,mss_min,capped,efficient\n";
  for (std::size_t i = 0; i < matrix.cells.size(); ++i) {
    for (std::size_t j = 0; j < matrix.cells[i].size(); ++j) {
      const auto& c = matrix.cells[i][j];
      out << format_number(matrix.spec.positions[i]) << ',' << format_number(matrix.spec.sizes[j])
          << ',' << (c.mss_min.is_unbounded() ? std::string("inf") : std::to_string(c.mss_min.value()))
          << ',' << (c.mss_min.capped() ? 1 : 0) << ',' << (c.efficient ? 1 : 0) << '\n';
    }
  }
  check(out, "MMM CSV");
}

void write_mfs_report_csv(std::ostream& out, std::span<const MfsReportRow> rows) {
  out << "intrusion,run,mfs,length\n";
  for (const auto& r : rows) {
    for (const auto& s : r.mfs) {
      out << csv_field(r.intrusion) << ',' << csv_field(r.run) << ',' << s.to_string() << ','
          << s.size() << '\n';
    }
  }
  check(out, "MFS report CSV");
}

void write_histogram_csv(std::ostream& out, const std::vector<std::size_t>& exact,
                         const std::vector<std::size_t>& cumulative) {
  if (exact.size() != cumulative.size()) throw ValidationError("histogram columns differ in size");
  out << "window,exact_count,cumulative_count\n";
  for (std::size_t w = 1; w < exact.size(); ++w) {
    out << w << ',' << exact[w] << ',' << cumulative[w] << '\n';
  }
  check(out, "histogram CSV");
}

Svg::Svg(double width, double height) : width_(width), height_(height) {}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape_xml(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void Svg::rect(double x, double y, double w, double h, std::string_view fill,
               std::string_view stroke) {
  body_ += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) + "\" height=\"" +
           num(h) + "\" fill=\"" + std::string(fill) + "\" stroke=\"" + std::string(stroke) +
           "\"/>\n";
}

void Svg::line(double x1, double y1, double x2, double y2, std::string_view stroke, double width,
               std::string_view dash) {
  body_ += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" +
           num(y2) + "\" stroke=\"" + std::string(stroke) + "\" stroke-width=\"" + num(width) + "\"";
  if (!dash.empty()) body_ += " stroke-dasharray=\"" + std::string(dash) + "\"";
  body_ += "/>\n";
}

void Svg::polyline(std::span<const std::pair<double, double>> points, std::string_view stroke,
                   double width) {
  body_ += "<polyline fill=\"none\" stroke=\"" + std::string(stroke) + "\" stroke-width=\"" +
           num(width) + "\" points=\"";
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i) body_ += ' ';
    body_ += num(points[i].first) + "," + num(points[i].second);
  }
  body_ += "\"/>\n";
}

void Svg::text(double x, double y, std::string_view content, double size, std::string_view anchor) {
  body_ += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-size=\"" + num(size) +
           "\" font-family=\"sans-serif\" text-anchor=\"" + std::string(anchor) + "\">" +
           escape_xml(content) + "</text>\n";
}

std::string Svg::str() const {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width_) + "\" height=\"" +
         num(height_) + "\" viewBox=\"0 0 " + num(width_) + " " + num(height_) + "\">\n" + body_ +
         "</svg>\n";
}

std::string render_mmac_svg(const MMACCurve& curve) {
  const double width = 640, height = 400, left = 50, right = 150, top = 20, bottom = 40;
  const double pw = width - left - right, ph = height - top - bottom;
  const double ymax = static_cast<double>(std::max<std::size_t>(curve.cap, 1));
  auto x_of = [&](double pct) { return left + pw * pct / 100.0; };
  auto y_of = [&](double v) { return top + ph * (1.0 - v / ymax); };

  Svg svg(width, height);
  svg.rect(0, 0, width, height, "white");
  svg.line(left, top + ph, left + pw, top + ph, "black");
  svg.line(left, top, left, top + ph, "black");
  for (int p = 0; p <= 100; p += 20) {
    svg.text(x_of(p), top + ph + 14, std::to_string(p) + "%", 10, "middle");
  }
  for (std::size_t v = 0; v <= curve.cap; v += std::max<std::size_t>(1, curve.cap / 5)) {
    svg.text(left - 4, y_of(static_cast<double>(v)) + 4, std::to_string(v), 10, "end");
  }
  static constexpr std::string_view palette[] = {"#c0392b", "#27ae60", "#8e44ad", "#d35400",
                                                 "#16a085", "#2c3e50", "#7f8c8d"};
  auto draw = [&](auto value_of, std::string_view color, std::string_view label, std::size_t slot) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : curve.points) pts.push_back({x_of(p.size_pct), y_of(value_of(p))});
    svg.polyline(pts, color, 1.5);
    const double ly = top + 14.0 * static_cast<double>(slot + 1);
    svg.line(left + pw + 10, ly - 4, left + pw + 30, ly - 4, color, 2);
    svg.text(left + pw + 34, ly, label, 10);
  };
  draw([](const MmacPoint& p) { return p.mss_avg; }, "#1f3a93", "|MSS|min avg", 0);
  for (std::size_t k = 0; k < curve.intrusive_names.size(); ++k) {
    draw([k](const MmacPoint& p) { return p.mfs_avg[k]; }, palette[k % std::size(palette)],
         "|MFS|min " + curve.intrusive_names[k], k + 1);
  }
  svg.text(left + pw / 2, height - 8, "training size", 11, "middle");
  return svg.str();
}

std::string render_mmm_svg(const MMMatrix& matrix) {
  const std::size_t rows = matrix.cells.size();
  const std::size_t cols = rows ? matrix.cells[0].size() : 0;
  const double cell = 24, left = 50, top = 20;
  const double width = left + cell * static_cast<double>(cols) + 20;
  const double height = top + cell * static_cast<double>(rows) + 40;
  const double lambda = static_cast<double>(matrix.lambda);
  const double span = std::max(1.0, static_cast<double>(matrix.cap));

  Svg svg(width, height);
  svg.rect(0, 0, width, height, "white");
  for (std::size_t i = 0; i < rows; ++i) {
    svg.text(left - 4, top + cell * (static_cast<double>(i) + 0.7),
             format_number(matrix.spec.positions[i]), 9, "end");
    for (std::size_t j = 0; j < cols; ++j) {
      const auto& c = matrix.cells[i][j];
      const double v = c.mss_min.is_unbounded() ? static_cast<double>(matrix.cap)
                                                : static_cast<double>(c.mss_min.value());
      // Darkness grows with value - lambda; lambda itself sits at mid gray.
      const double d = v - lambda;
      const double t = std::clamp(d < 0 ? 0.5 * v / lambda : 0.5 + 0.5 * d / std::max(1.0, span - lambda),
                                  0.0, 1.0);
      const int g = static_cast<int>(std::lround(235.0 - 215.0 * t));
      char fill[8];
      std::snprintf(fill, sizeof fill, "#%02x%02x%02x", g, g, g);
      const double x = left + cell * static_cast<double>(j), y = top + cell * static_cast<double>(i);
      svg.rect(x, y, cell, cell, fill, c.efficient ? "#c0392b" : "#ffffff");
      if (!c.mss_min.is_finite()) svg.text(x + cell / 2, y + cell * 0.65, "+", 10, "middle");
    }
  }
  for (std::size_t j = 0; j < cols; ++j) {
    svg.text(left + cell * (static_cast<double>(j) + 0.5), top + cell * static_cast<double>(rows) + 14,
             format_number(matrix.spec.sizes[j]), 9, "middle");
  }
  svg.text(left, height - 6, "rows: position %, columns: size %, red outline: |MSS|min >= " +
                                 std::to_string(matrix.lambda), 10);
  return svg.str();
}

}  // namespace stidelab
