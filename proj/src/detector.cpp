#include "stidelab/detector.hpp"

#include <unordered_map>

#include "stidelab/error.hpp"
#include "stidelab/parallel.hpp"
#include "stidelab/sequence_model.hpp"

namespace stidelab {

namespace {

void require_window(std::size_t window) {
  if (window == 0) throw ValidationError("detector window must be >= 1");
}

}  // namespace

StideModel::StideModel(std::size_t window) : window_(window) { require_window(window); }

void StideModel::insert(SymbolView seq) {
  if (seq.size() != window_) throw ValidationError("sequence length differs from model window");
  if (!contains(seq)) normal_.emplace(seq);
}

SequenceSet StideModel::sequences() const { return SequenceSet(normal_.begin(), normal_.end()); }

StideModel train(const Dataset& training, std::size_t window) {
  StideModel model(window);
  for_each_window(training, window, [&](std::size_t, std::size_t, SymbolView w) { model.insert(w); });
  return model;
}

StideModel train_tstide(const Dataset& training, std::size_t window, std::size_t threshold) {
  require_window(window);
  std::unordered_map<Sequence, std::size_t, SequenceHash, SequenceEqual> counts;
  for_each_window(training, window, [&](std::size_t, std::size_t, SymbolView w) {
    auto it = counts.find(w);
    if (it == counts.end()) {
      counts.emplace(Sequence{w}, 1);
    } else {
      ++it->second;
    }
  });
  StideModel model(window);
  for (const auto& [seq, n] : counts) {
    if (n >= threshold) model.insert(seq.view());
  }
  return model;
}

ScanResult scan(const StideModel& model, const Dataset& dataset, std::size_t threads) {
  const auto w = model.window();
  ScanResult out;
  out.window = w;
  out.traces.resize(dataset.traces.size());
  parallel_for(dataset.traces.size(), threads, [&](std::size_t t) {
    const auto& events = dataset.traces[t].events;
    auto& ts = out.traces[t];
    ts.flags.assign(events.size(), 0);
    if (events.size() < w) {
      ts.too_short = true;
      return;
    }
    for (std::size_t end = w - 1; end < events.size(); ++end) {
      ++ts.windows;
      if (!model.contains(SymbolView(events).subspan(end + 1 - w, w))) {
        ts.flags[end] = 1;
        ++ts.mismatches;
      }
    }
  });
  for (std::size_t t = 0; t < out.traces.size(); ++t) {
    const auto& ts = out.traces[t];
    out.windows += ts.windows;
    out.mismatches += ts.mismatches;
    if (ts.too_short) ++out.short_traces;
    const auto& events = dataset.traces[t].events;
    for (std::size_t end = 0; end < ts.flags.size(); ++end) {
      if (ts.flags[end]) out.foreign.emplace(SymbolView(events).subspan(end + 1 - w, w));
    }
  }
  return out;
}

DetectionPartition classify(const Dataset& training, const Dataset& test, const Dataset& intrusive,
                            std::size_t window) {
  const auto model = train(training, window);
  DetectionPartition p;
  p.window = window;
  for (const auto& s : sequence_set(intrusive, window)) (model.contains(s) ? p.fnss : p.tpss).insert(s);
  for (const auto& s : sequence_set(test, window)) (model.contains(s) ? p.tnss : p.fpss).insert(s);
  return p;
}

bool is_effective(const Dataset& training, const Dataset& intrusive, std::size_t window) {
  const auto model = train(training, window);
  bool flagged = false;
  for_each_window(intrusive, window, [&](std::size_t, std::size_t, SymbolView w) {
    if (!flagged && !model.contains(w)) flagged = true;
  });
  return flagged;
}

bool is_complete(const Dataset& training, const Dataset& test, std::size_t window) {
  const auto model = train(training, window);
  bool flagged = false;
  for_each_window(test, window, [&](std::size_t, std::size_t, SymbolView w) {
    if (!flagged && !model.contains(w)) flagged = true;
  });
  return !flagged;
}

std::string_view to_string(WindowCase c) {
  switch (c) {
    case WindowCase::efficient: return "efficient";
    case WindowCase::effective_only: return "effective-only";
    case WindowCase::complete_only: return "complete-only";
    case WindowCase::neither: return "neither";
  }
  return "neither";
}

std::optional<WindowCase> EfficiencyWindow::classify(std::size_t window) const {
  const auto effective = lo.at_most(window);
  const auto complete = hi.at_least(window);
  if (!effective || !complete) return std::nullopt;
  if (*effective && *complete) return WindowCase::efficient;
  if (*effective) return WindowCase::effective_only;
  if (*complete) return WindowCase::complete_only;
  return WindowCase::neither;
}

EfficiencyWindow efficiency_window(const Dataset& training, const Dataset& test,
                                   const Dataset& intrusive, std::size_t cap) {
  const SequenceModel trn(training, cap);
  EfficiencyWindow w;
  w.lo = mfs_min_len(SequenceModel(intrusive, cap), trn);
  w.hi = mss_min_len(SequenceModel(test, cap), trn);
  w.nonempty = less_equal(w.lo, w.hi);
  return w;
}

void LocalityFrameConfig::validate() const {
  if (frame_length == 0) throw ValidationError("locality frame length must be >= 1");
  if (threshold == 0) throw ValidationError("locality frame count threshold must be >= 1");
}

LfcResult lfc_frames(const ScanResult& scan, const LocalityFrameConfig& config) {
  config.validate();
  LfcResult out;
  for (std::size_t t = 0; t < scan.traces.size(); ++t) {
    const auto& ts = scan.traces[t];
    if (ts.too_short) ++out.short_traces;
    for (std::size_t begin = 0, frame = 0; begin < ts.flags.size();
         begin += config.frame_length, ++frame) {
      const auto end = std::min(ts.flags.size(), begin + config.frame_length);
      FrameCount fc{t, frame, 0, false};
      for (auto i = begin; i < end; ++i) fc.mismatches += ts.flags[i];
      fc.alarm = fc.mismatches >= config.threshold;
      if (fc.alarm) ++out.alarms;
      out.frames.push_back(fc);
    }
  }
  return out;
}

LfcResult lfc_scan(const StideModel& model, const Dataset& dataset,
                   const LocalityFrameConfig& config) {
  config.validate();
  return lfc_frames(scan(model, dataset), config);
}

}  // namespace stidelab
