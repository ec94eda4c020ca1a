#include "stidelab/context.hpp"

#include <algorithm>
#include <ostream>

#include "stidelab/error.hpp"
#include "stidelab/parallel.hpp"
#include "stidelab/report.hpp"

namespace stidelab {

std::vector<std::uint32_t> fsl_series(const SequenceModel& normal, SymbolView trace) {
  const std::size_t cap = normal.cap();
  const std::size_t none = static_cast<std::size_t>(-1);
  const std::size_t n = trace.size();

  // foreign_end[p]: last event of the shortest foreign window starting at p.
  std::vector<std::size_t> foreign_end(n, none);
  for (std::size_t p = 0; p < n; ++p) {
    auto node = SequenceModel::root;
    for (std::size_t q = p; q < n && q - p < cap; ++q) {
      node = normal.child(node, trace[q]);
      if (node == SequenceModel::npos) {
        foreign_end[p] = q;
        break;
      }
    }
  }

  std::vector<std::uint32_t> out(n, static_cast<std::uint32_t>(cap + 1));
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i + 1 >= cap ? i + 1 - cap : 0;
    for (std::size_t p = i + 1; p-- > lo;) {
      if (foreign_end[p] <= i) {
        out[i] = static_cast<std::uint32_t>(i - p + 1);
        break;
      }
    }
  }
  return out;
}

FslSeries fsl_series(const SequenceModel& normal, const Dataset& dataset, std::size_t threads) {
  FslSeries out;
  out.cap = normal.cap();
  out.traces.resize(dataset.traces.size());
  parallel_for(dataset.traces.size(), threads, [&](std::size_t t) {
    out.traces[t] = fsl_series(normal, dataset.traces[t].events);
  });
  return out;
}

SequenceSet harvest_mfs(std::span<const std::uint32_t> fsl, SymbolView trace, std::size_t cap) {
  if (fsl.size() != trace.size()) throw ValidationError("FSL series does not match its trace");
  SequenceSet out;
  for (std::size_t i = 0; i < fsl.size(); ++i) {
    const std::size_t f = fsl[i];
    if (f == 0 || f > cap) continue;
    if (i > 0 && f == static_cast<std::size_t>(fsl[i - 1]) + 1) continue;
    if (f > i + 1) throw ValidationError("FSL value reaches before the trace start");
    out.emplace(trace.subspan(i + 1 - f, f));
  }
  return out;
}

SequenceSet harvest_mfs(const FslSeries& series, const Dataset& dataset) {
  if (series.traces.size() != dataset.traces.size()) {
    throw ValidationError("FSL series does not match the dataset");
  }
  SequenceSet out;
  for (std::size_t t = 0; t < dataset.traces.size(); ++t) {
    auto part = harvest_mfs(series.traces[t], dataset.traces[t].events, series.cap);
    out.merge(part);
  }
  return out;
}

SharedMfs shared_mfs(std::span<const SequenceSet> runs) {
  if (runs.size() < 2) throw ValidationError("shared MFS analysis needs at least two runs");
  SharedMfs out;
  out.shared = runs.front();
  for (const auto& run : runs) {
    out.run_counts.push_back(run.size());
    std::erase_if(out.shared, [&](const Sequence& s) { return !run.contains(s); });
  }
  return out;
}

MfsHistogram mfs_count_by_window(std::span<const SequenceSet> sets, std::size_t max_window) {
  SequenceSet distinct;
  for (const auto& s : sets) distinct.insert(s.begin(), s.end());
  MfsHistogram out;
  out.exact.assign(max_window + 1, 0);
  out.cumulative.assign(max_window + 1, 0);
  for (const auto& s : distinct) {
    if (s.size() <= max_window) ++out.exact[s.size()];
  }
  std::size_t running = 0;
  for (std::size_t w = 0; w <= max_window; ++w) {
    running += out.exact[w];
    out.cumulative[w] = running;
  }
  return out;
}

ForeignSequenceGraph build_fsg(std::span<const FsgInput> inputs) {
  ForeignSequenceGraph g;
  std::size_t idx = 0;
  for (std::size_t d = 0; d < inputs.size(); ++d) {
    const Dataset& ds = *inputs[d].dataset;
    const FslSeries& series = *inputs[d].series;
    if (series.traces.size() != ds.traces.size()) {
      throw ValidationError("FSL series does not match dataset '" + ds.name + "'");
    }
    if (d == 0) {
      g.cap = series.cap;
    } else {
      if (series.cap != g.cap) throw ValidationError("FSG inputs use different caps");
      g.points.push_back({idx++, ds.name, {}, -1, dataset_separator});
    }
    for (std::size_t t = 0; t < ds.traces.size(); ++t) {
      if (t > 0) g.points.push_back({idx++, ds.name, {}, -1, process_separator});
      const auto& values = series.traces[t];
      for (std::size_t e = 0; e < values.size(); ++e) {
        g.points.push_back({idx++, ds.name, ds.traces[t].process_id,
                            static_cast<std::int64_t>(e), static_cast<std::int32_t>(values[e])});
      }
    }
  }
  return g;
}

void write_fsg_csv(std::ostream& out, const ForeignSequenceGraph& graph) {
  out << "global_idx,dataset,process,event_idx,fsl\n";
  for (const auto& p : graph.points) {
    out << p.global_idx << ',' << csv_field(p.dataset) << ',' << csv_field(p.process) << ','
        << p.event_idx << ',' << p.fsl << '\n';
  }
  if (!out) throw IoError("failed writing FSG CSV");
}

std::string render_fsg_svg(const ForeignSequenceGraph& graph) {
  const double width = 1200, height = 360;
  const double left = 50, right = 20, top = 20, bottom = 40;
  const double plot_w = width - left - right, plot_h = height - top - bottom;
  const double ymax = static_cast<double>(graph.cap + 1);
  const double count = static_cast<double>(std::max<std::size_t>(graph.points.size(), 1));

  auto x_of = [&](std::size_t i) { return left + plot_w * (static_cast<double>(i) + 0.5) / count; };
  auto y_of = [&](double v) { return top + plot_h * (1.0 - v / ymax); };

  Svg svg(width, height);
  svg.rect(0, 0, width, height, "white");
  svg.line(left, top + plot_h, left + plot_w, top + plot_h, "black");
  svg.line(left, top, left, top + plot_h, "black");
  // N+1 means no foreign suffix: drawn as a band, not as data.
  svg.rect(left, y_of(ymax), plot_w, y_of(ymax - 0.5) - y_of(ymax), "#e8f0e8");
  svg.text(left - 4, y_of(ymax) + 10, "N+1", 10, "end");
  for (std::size_t v = 1; v <= graph.cap; v += std::max<std::size_t>(1, graph.cap / 5)) {
    svg.text(left - 4, y_of(static_cast<double>(v)) + 4, std::to_string(v), 10, "end");
  }

  std::vector<std::pair<double, double>> run;
  auto flush = [&] {
    if (run.size() == 1) run.push_back({run[0].first + 0.5, run[0].second});
    if (!run.empty()) svg.polyline(run, "#1f3a93");
    run.clear();
  };
  for (std::size_t i = 0; i < graph.points.size(); ++i) {
    const auto& p = graph.points[i];
    if (p.separator()) {
      flush();
      const bool between_datasets = p.fsl == dataset_separator;
      svg.line(x_of(i), top, x_of(i), top + plot_h, between_datasets ? "#c0392b" : "#bbbbbb",
               between_datasets ? 1.5 : 0.5, between_datasets ? "" : "3,3");
      continue;
    }
    const double v = std::min<double>(p.fsl, ymax);
    run.push_back({x_of(i), y_of(v)});
  }
  flush();
  svg.text(left + plot_w / 2, height - 10, "event", 11, "middle");
  return svg.str();
}

}  // namespace stidelab
