// stidelab: command-line front end for the sequence analysis library.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "stidelab/completeness.hpp"
#include "stidelab/context.hpp"
#include "stidelab/detector.hpp"
#include "stidelab/error.hpp"
#include "stidelab/oracle.hpp"
#include "stidelab/parallel.hpp"
#include "stidelab/report.hpp"
#include "stidelab/sequence_core.hpp"
#include "stidelab/sequence_model.hpp"
#include "stidelab/trace_model.hpp"

namespace fs = std::filesystem;
using namespace stidelab;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_io = 1;
constexpr int exit_validation = 2;
constexpr int exit_check_failed = 3;

struct Options {
  std::size_t cap = SequenceModel::default_cap;
  std::string out = "stidelab-out";
  bool svg = false;

  std::string data, tgt, ref, trn, tst, intrusive, normal, with;
  std::vector<std::string> intrusives, datasets, runs, probe_new, probe_int;
  std::size_t length = 1;
  std::string op;
  std::size_t window = 6;
  std::size_t lf = 20;
  std::size_t lfc = 1;
  std::size_t threshold = 1;
  std::size_t lambda = default_lambda;
  std::size_t grid_steps = 15;
  double grid_stride = 7.0;
  double grid_start = 1.0;
  std::string granularity = "trace";
  std::uint64_t seed = 7;
  std::size_t cases = 1000;
  std::size_t max_window = 25;
  std::string unm_dir;
};

// Output directory with a config echo and stamped CSVs.
class Output {
 public:
  Output(const Options& o, std::string config_text) : o_(o), config_(std::move(config_text)) {
    std::string hashed;
    std::istringstream in(config_);
    for (std::string line; std::getline(in, line);) {
      if (line.rfind("out=", 0) == 0) continue;  // the destination does not change results
      hashed += line + "\n";
    }
    hash_ = config_hash(hashed);
  }

  void open() {
    std::error_code ec;
    fs::create_directories(o_.out, ec);
    if (ec) throw IoError("cannot create output directory " + o_.out + ": " + ec.message());
    write_text("config.ini", config_);
  }

  std::ofstream csv(const std::string& name) {
    auto f = file(name);
    f << csv_preamble(hash_) << '\n';
    return f;
  }

  void write_text(const std::string& name, const std::string& text) {
    auto f = file(name);
    f << text;
    if (!f) throw IoError("failed writing " + path(name).string());
  }

  void svg(const std::string& name, const std::string& text) {
    if (o_.svg) write_text(name, text);
  }

  fs::path path(const std::string& name) const { return fs::path(o_.out) / name; }

 private:
  std::ofstream file(const std::string& name) {
    std::ofstream f(path(name), std::ios::binary);
    if (!f) throw IoError("cannot open " + path(name).string() + " for writing");
    return f;
  }

  const Options& o_;
  std::string config_;
  std::string hash_;
};

Dataset load(const std::string& path, const char* what) {
  if (path.empty()) throw ValidationError(std::string("missing required manifest --") + what);
  return load_dataset(fs::path(path));
}

std::vector<Dataset> load_all(const std::vector<std::string>& paths, const char* what) {
  if (paths.empty()) throw ValidationError(std::string("missing required manifest --") + what);
  std::vector<Dataset> out;
  for (const auto& p : paths) out.push_back(load_dataset(fs::path(p)));
  return out;
}

std::string tri(std::optional<bool> v) {
  if (!v) return "unknown";
  return *v ? "true" : "false";
}

SplitSpec grid_of(const Options& o) {
  if (o.grid_steps == 0) throw ValidationError("--grid-steps must be at least 1");
  return SplitSpec::grid(o.grid_steps, o.grid_stride, o.grid_start);
}

GridOptions grid_options(const Options& o) {
  return {o.cap, parse_granularity(o.granularity), default_thread_count()};
}

// ---- subcommands ----

int run_stats(const Options& o, Output& out) {
  const auto d = load(o.data, "data");
  const auto s = stats(d);
  std::cout << "traces=" << s.trace_count << " events=" << s.event_count << "\n";
  std::cout << "alphabet=" << s.alphabet_size << " longest_trace=" << d.longest_trace() << "\n";
  auto f = out.csv("stats.csv");
  f << "dataset,traces,events,alphabet,longest_trace\n"
    << csv_field(d.name) << ',' << s.trace_count << ',' << s.event_count << ','
    << s.alphabet_size << ',' << d.longest_trace() << '\n';
  return exit_ok;
}

int run_seqset(const Options& o, Output& out) {
  const auto d = load(o.data, "data");
  auto set = sequence_set(d, o.length);
  if (!o.op.empty()) {
    const auto other = sequence_set(load(o.with, "with"), o.length);
    SetOp op;
    if (o.op == "unite") op = SetOp::unite;
    else if (o.op == "intersect") op = SetOp::intersect;
    else if (o.op == "subtract") op = SetOp::subtract;
    else throw ValidationError("unknown set operation '" + o.op + "'");
    set = set_op(set, other, op);
  }
  std::cout << "length=" << o.length << " count=" << set.size() << "\n";
  auto f = out.csv("seqset.csv");
  write_sequence_csv(f, set);
  return exit_ok;
}

int run_mfs(const Options& o, Output& out) {
  const SequenceModel tgt(load(o.tgt, "tgt"), o.cap);
  const SequenceModel ref(load(o.ref, "ref"), o.cap);
  const auto set = mfs_set(tgt, ref);
  std::cout << "mfs_min=" << mfs_min_len(tgt, ref).to_string() << " count=" << set.size() << "\n";
  auto f = out.csv("mfs.csv");
  write_sequence_csv(f, set);
  return exit_ok;
}

int run_mss(const Options& o, Output& out) {
  const SequenceModel tgt(load(o.tgt, "tgt"), o.cap);
  const SequenceModel ref(load(o.ref, "ref"), o.cap);
  const auto set = mss_set(tgt, ref);
  std::cout << "mss_min=" << mss_min_len(tgt, ref).to_string() << " count=" << set.size() << "\n";
  auto f = out.csv("mss.csv");
  write_sequence_csv(f, set);
  return exit_ok;
}

int run_cfps(const Options& o, Output& out) {
  const SequenceModel in(load(o.intrusive, "int"), o.cap);
  const SequenceModel tst(load(o.tst, "tst"), o.cap);
  const SequenceModel trn(load(o.trn, "trn"), o.cap);
  const auto c = cfps(in, tst, trn);
  const auto dec = mfs_min_decomposition(in, tst, trn);
  std::cout << "cfps_min=" << dec.cfps_min.to_string()
            << " concat_mfs_min=" << dec.concat_mfs_min.to_string()
            << " mfs_min=" << dec.combined.to_string() << "\n";
  auto f = out.csv("cfps.csv");
  write_sequence_csv(f, c.all());
  return exit_ok;
}

int run_window(const Options& o, Output& out) {
  const auto w = efficiency_window(load(o.trn, "trn"), load(o.tst, "tst"), load(o.intrusive, "int"),
                                   o.cap);
  std::cout << "lo=" << w.lo.to_string() << " hi=" << w.hi.to_string()
            << " nonempty=" << tri(w.nonempty) << "\n";
  auto f = out.csv("window.csv");
  f << "lo,hi,nonempty\n" << w.lo.to_string() << ',' << w.hi.to_string() << ',' << tri(w.nonempty)
    << '\n';
  return exit_ok;
}

void print_scan(const ScanResult& r) {
  std::cout << "window=" << r.window << " windows=" << r.windows << " mismatches=" << r.mismatches
            << " foreign=" << r.foreign.size() << " short_traces=" << r.short_traces << "\n";
}

int run_detect(const Options& o, Output& out) {
  const auto model = train(load(o.trn, "trn"), o.window);
  const auto r = scan(model, load(o.data, "data"), default_thread_count());
  print_scan(r);
  auto f = out.csv("detect.csv");
  write_scan_csv(f, r);
  auto g = out.csv("foreign.csv");
  write_sequence_csv(g, r.foreign);
  return exit_ok;
}

int run_tstide(const Options& o, Output& out) {
  const auto model = train_tstide(load(o.trn, "trn"), o.window, o.threshold);
  const auto r = scan(model, load(o.data, "data"), default_thread_count());
  print_scan(r);
  auto f = out.csv("tstide.csv");
  write_scan_csv(f, r);
  return exit_ok;
}

int run_lfc(const Options& o, Output& out) {
  const LocalityFrameConfig cfg{o.lf, o.lfc};
  cfg.validate();
  const auto model = train(load(o.trn, "trn"), o.window);
  const auto r = lfc_frames(scan(model, load(o.data, "data"), default_thread_count()), cfg);
  std::cout << "frames=" << r.frames.size() << " alarms=" << r.alarms
            << " short_traces=" << r.short_traces << "\n";
  auto f = out.csv("lfc.csv");
  write_lfc_csv(f, r);
  return exit_ok;
}

int run_mmac(const Options& o, Output& out) {
  const auto normal = load(o.normal, "normal");
  const auto ints = load_all(o.intrusives, "int");
  const auto curve = mmac(normal, ints, grid_of(o), grid_options(o));
  auto f = out.csv("mmac.csv");
  write_mmac_csv(f, curve);
  out.svg("mmac.svg", render_mmac_svg(curve));
  std::cout << "sizes=" << curve.points.size() << " intrusives=" << ints.size() << "\n";
  return exit_ok;
}

void write_sections(Output& out, const MMMatrix& m) {
  auto f = out.csv("critical_sections.csv");
  f << "pos_pct,size_pct,arc,arc_events,training_events,lambda\n";
  for (const auto& cs : m.critical_sections) {
    f << format_number(cs.position_pct) << ',' << format_number(cs.size_pct) << ','
      << cs.arc.describe() << ',' << cs.arc.length << ',' << cs.event_count << ',' << cs.lambda
      << '\n';
  }
}

void print_mccs(const std::optional<CriticalSection>& best) {
  if (!best) {
    std::cout << "mccs=none (no efficient region)\n";
    return;
  }
  std::cout << "mccs=" << best->arc.describe() << " pos=" << format_number(best->position_pct)
            << " size=" << format_number(best->size_pct) << " arc_events=" << best->arc.length
            << " training_events=" << best->event_count << "\n";
}

int run_mmm(const Options& o, Output& out) {
  const auto normal = load(o.normal, "normal");
  const auto m = mmm(normal, o.lambda, grid_of(o), grid_options(o));
  auto f = out.csv("mmm.csv");
  write_mmm_csv(f, m);
  write_sections(out, m);
  out.svg("mmm.svg", render_mmm_svg(m));
  print_mccs(mccs(m));
  return exit_ok;
}

int run_trim(const Options& o, Output& out) {
  const auto normal = load(o.normal, "normal");
  if (o.probe_new.size() != o.probe_int.size()) {
    throw ValidationError("--probe-new and --probe-int must be given in pairs");
  }
  const auto opts = grid_options(o);
  const auto m = mmm(normal, o.lambda, grid_of(o), opts);
  const auto best = mccs(m);
  print_mccs(best);
  if (!best) return exit_ok;

  std::vector<TrimProbe> probes;
  for (std::size_t k = 0; k < o.probe_new.size(); ++k) {
    probes.push_back({load_dataset(fs::path(o.probe_new[k])), load_dataset(fs::path(o.probe_int[k]))});
  }
  const auto report = validate_trim(normal, *best, probes, o.cap, opts.granularity);
  std::cout << "section_mss=" << report.section_mss.to_string()
            << " section_efficient=" << (report.section_efficient ? "true" : "false")
            << " checks=" << report.checks.size()
            << " counterexamples=" << report.count(TrimStatus::counterexample)
            << " out_of_contract=" << report.count(TrimStatus::out_of_contract) << "\n";

  auto f = out.csv("trim.csv");
  f << "probe,bound,new_mss,trimmed_mss,status\n";
  for (std::size_t k = 0; k < report.checks.size(); ++k) {
    const auto& c = report.checks[k];
    f << k << ',' << c.bound.to_string() << ',' << c.new_mss.to_string() << ','
      << c.trimmed_mss.to_string() << ',' << to_string(c.status) << '\n';
  }

  // The trimmed training data itself, loadable as a generic-format manifest.
  const auto split = split_ring(normal, best->position_pct, best->size_pct, opts.granularity);
  out.write_text("trimmed_training.txt", serialize_traces(split.training.traces, TraceFormat::generic));
  out.write_text("trimmed_training.mf", "role=training\nname=" + normal.name +
                                            "-trimmed\nformat=generic\nfile=trimmed_training.txt\n");
  return report.count(TrimStatus::counterexample) ? exit_check_failed : exit_ok;
}

int run_fsg(const Options& o, Output& out) {
  const SequenceModel model(load(o.trn, "trn"), o.cap);
  const auto ds = load_all(o.datasets, "data");
  std::vector<FslSeries> series;
  for (const auto& d : ds) series.push_back(fsl_series(model, d, default_thread_count()));
  std::vector<FsgInput> inputs;
  for (std::size_t k = 0; k < ds.size(); ++k) inputs.push_back({&ds[k], &series[k]});
  const auto g = build_fsg(inputs);
  auto f = out.csv("fsg.csv");
  write_fsg_csv(f, g);
  out.svg("fsg.svg", render_fsg_svg(g));
  std::cout << "points=" << g.points.size() << "\n";
  return exit_ok;
}

int run_mfsreport(const Options& o, Output& out) {
  const SequenceModel model(load(o.trn, "trn"), o.cap);
  if (o.runs.empty()) throw ValidationError("missing required manifest --run");

  std::vector<MfsReportRow> rows;
  std::vector<std::string> order;  // intrusion names in first-seen order
  std::map<std::string, std::vector<SequenceSet>> by_intrusion;
  for (const auto& path : o.runs) {
    const auto d = load_dataset(fs::path(path));
    auto set = harvest_mfs(fsl_series(model, d, default_thread_count()), d);
    if (!by_intrusion.count(d.name)) order.push_back(d.name);
    by_intrusion[d.name].push_back(set);
    rows.push_back({d.name, fs::path(path).stem().string(), std::move(set)});
  }

  auto f = out.csv("mfs_report.csv");
  write_mfs_report_csv(f, rows);

  auto s = out.csv("shared_mfs.csv");
  s << "intrusion,runs,run_counts,shared\n";
  for (const auto& name : order) {
    const auto& sets = by_intrusion[name];
    std::string counts;
    for (const auto& x : sets) counts += (counts.empty() ? "" : ";") + std::to_string(x.size());
    std::string shared = "";
    if (sets.size() >= 2) shared = std::to_string(shared_mfs(sets).shared.size());
    s << csv_field(name) << ',' << sets.size() << ',' << counts << ',' << shared << '\n';
    std::cout << name << " runs=" << sets.size() << " counts={" << counts << "}"
              << (shared.empty() ? "" : " shared=" + shared) << "\n";
  }

  std::vector<SequenceSet> all;
  for (const auto& r : rows) all.push_back(r.mfs);
  const auto h = mfs_count_by_window(all, std::min(o.max_window, o.cap));
  auto hf = out.csv("mfs_histogram.csv");
  write_histogram_csv(hf, h.exact, h.cumulative);
  return exit_ok;
}

int run_oracle_check(const Options& o, Output& out) {
  const auto r = oracle_check(o.seed, o.cases, o.cap);
  std::cout << "cases=" << r.cases << " comparisons=" << r.comparisons
            << " mismatches=" << r.mismatches << "\n";
  for (const auto& d : r.details) std::cout << "  " << d << "\n";
  auto f = out.csv("oracle_check.csv");
  f << "seed,cases,comparisons,mismatches\n"
    << o.seed << ',' << r.cases << ',' << r.comparisons << ',' << r.mismatches << '\n';
  return r.mismatches ? exit_check_failed : exit_ok;
}

// UNM layout: one directory per program holding normal.mf plus intrusive
// manifests (role=intrusive). Runs of one intrusion share a manifest name.
int run_repro(const Options& o, Output& out) {
  if (o.unm_dir.empty()) throw ValidationError("missing required --unm-dir");
  if (!fs::is_directory(o.unm_dir)) throw IoError("not a directory: " + o.unm_dir);
  std::vector<fs::path> programs;
  for (const auto& e : fs::directory_iterator(o.unm_dir)) {
    if (e.is_directory() && fs::exists(e.path() / "normal.mf")) programs.push_back(e.path());
  }
  std::sort(programs.begin(), programs.end());
  auto summary = out.csv("repro.csv");
  summary << "program,traces,events,mccs,arc_events,training_events\n";
  for (const auto& dir : programs) {
    const auto program = dir.filename().string();
    const auto normal = load_dataset(dir / "normal.mf");
    const auto st = stats(normal);
    const auto m = mmm(normal, o.lambda, grid_of(o), grid_options(o));
    const auto best = mccs(m);

    Options sub = o;
    sub.out = (fs::path(o.out) / program).string();
    Output sub_out(sub, "");
    sub_out.open();
    {
      auto f = sub_out.csv("mmm.csv");
      write_mmm_csv(f, m);
    }
    write_sections(sub_out, m);
    sub_out.svg("mmm.svg", render_mmm_svg(m));

    std::vector<std::string> runs;
    for (const auto& e : fs::directory_iterator(dir)) {
      if (e.path().extension() != ".mf" || e.path().filename() == "normal.mf") continue;
      if (read_manifest(e.path()).role == Role::intrusive) runs.push_back(e.path().string());
    }
    std::sort(runs.begin(), runs.end());
    if (!runs.empty()) {
      sub.trn = (dir / "normal.mf").string();
      sub.runs = runs;
      std::cout << "[" << program << "]\n";
      run_mfsreport(sub, sub_out);
    }

    summary << csv_field(program) << ',' << st.trace_count << ',' << st.event_count << ','
            << (best ? best->arc.describe() : "none") << ',' << (best ? best->arc.length : 0)
            << ',' << (best ? best->event_count : 0) << '\n';
    std::cout << program << " traces=" << st.trace_count << " events=" << st.event_count << " ";
    print_mccs(best);
  }
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"stidelab: foreign/self sequence analysis for stide-like detectors"};
  app.set_config("--config", "", "Read options from an echoed config.ini");
  app.require_subcommand(1, 1);
  app.fallthrough();  // root options may follow the subcommand
  app.add_option("--cap", o.cap, "Length cap N for all scans")->capture_default_str()
      ->check(CLI::Range(std::size_t{1}, std::size_t{65535}));
  app.add_option("--out", o.out, "Output directory")->capture_default_str();
  app.add_flag("--svg", o.svg, "Also write SVG renderings");

  auto sub = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->configurable();
    return s;
  };
  auto window_opt = [&](CLI::App* s) {
    s->add_option("--window", o.window, "Detector window")->capture_default_str()
        ->check(CLI::PositiveNumber);
  };
  auto grid_opts = [&](CLI::App* s) {
    s->add_option("--grid-steps", o.grid_steps, "Positions and sizes per grid axis")
        ->capture_default_str();
    s->add_option("--grid-stride", o.grid_stride, "Grid step in percent")->capture_default_str();
    s->add_option("--grid-start", o.grid_start, "First grid value in percent")
        ->capture_default_str();
    s->add_option("--split-granularity", o.granularity, "trace or event")
        ->capture_default_str()->check(CLI::IsMember({"trace", "event"}));
  };

  auto* stats_cmd = sub("stats", "Trace and event counts of a dataset");
  stats_cmd->add_option("--data", o.data, "Dataset manifest")->required();

  auto* seqset_cmd = sub("seqset", "SS(data, length), optionally combined with another set");
  seqset_cmd->add_option("--data", o.data, "Dataset manifest")->required();
  seqset_cmd->add_option("--length", o.length, "Window length")->capture_default_str();
  // Checked in run_seqset so the empty default survives a config round trip.
  seqset_cmd->add_option("--op", o.op, "unite, intersect or subtract");
  seqset_cmd->add_option("--with", o.with, "Second dataset manifest for --op");

  auto* mfs_cmd = sub("mfs", "Minimum foreign sequences of tgt against ref");
  auto* mss_cmd = sub("mss", "Maximum self sequences of tgt against ref");
  for (auto* s : {mfs_cmd, mss_cmd}) {
    s->add_option("--tgt", o.tgt, "Target manifest")->required();
    s->add_option("--ref", o.ref, "Reference manifest")->required();
  }

  auto* cfps_cmd = sub("cfps", "Common false positive sequences and the MFS decomposition");
  auto* window_cmd = sub("window", "Efficiency window [lo, hi]");
  for (auto* s : {cfps_cmd, window_cmd}) {
    s->add_option("--trn", o.trn, "Training manifest")->required();
    s->add_option("--tst", o.tst, "Test manifest")->required();
    s->add_option("--int", o.intrusive, "Intrusive manifest")->required();
  }

  auto* detect_cmd = sub("detect", "stide scan of a dataset");
  auto* tstide_cmd = sub("tstide", "t-stide scan (rare training windows dropped)");
  auto* lfc_cmd = sub("lfc", "stide with locality frame counting");
  for (auto* s : {detect_cmd, tstide_cmd, lfc_cmd}) {
    s->add_option("--trn", o.trn, "Training manifest")->required();
    s->add_option("--data", o.data, "Dataset to scan")->required();
    window_opt(s);
  }
  tstide_cmd->add_option("--threshold", o.threshold, "Minimum training occurrences")
      ->capture_default_str();
  lfc_cmd->add_option("--lf", o.lf, "Locality frame length in events")->capture_default_str();
  lfc_cmd->add_option("--lfc", o.lfc, "Mismatches per frame to alarm")->capture_default_str();

  auto* mmac_cmd = sub("mmac", "MFS-MSS average curves over ring splits");
  mmac_cmd->add_option("--normal", o.normal, "Normal manifest")->required();
  mmac_cmd->add_option("--int", o.intrusives, "Intrusive manifests")->required();
  grid_opts(mmac_cmd);

  auto* mmm_cmd = sub("mmm", "|MSS|min matrix, critical sections and MCCS");
  auto* trim_cmd = sub("trim", "Trim training data to the MCCS and validate the trim");
  for (auto* s : {mmm_cmd, trim_cmd}) {
    s->add_option("--normal", o.normal, "Normal manifest")->required();
    s->add_option("--lambda", o.lambda, "Performance target")->capture_default_str()
        ->check(CLI::PositiveNumber);
    grid_opts(s);
  }
  trim_cmd->add_option("--probe-new", o.probe_new, "New normal data manifests");
  trim_cmd->add_option("--probe-int", o.probe_int, "Intrusive manifests paired with --probe-new");

  auto* fsg_cmd = sub("fsg", "Foreign sequence graph");
  fsg_cmd->add_option("--trn", o.trn, "Training manifest")->required();
  fsg_cmd->add_option("--data", o.datasets, "Datasets, in plot order")->required();

  auto* report_cmd = sub("mfsreport", "Harvested MFSs per run, shared MFSs, counts by window");
  report_cmd->add_option("--trn", o.trn, "Training manifest")->required();
  report_cmd->add_option("--run", o.runs, "One manifest per run; runs group by manifest name")
      ->required();
  report_cmd->add_option("--max-window", o.max_window, "Histogram range")->capture_default_str();

  auto* oracle_cmd = sub("oracle-check", "Compare the trie paths with the brute-force oracle");
  oracle_cmd->add_option("--seed", o.seed, "Generator seed")->capture_default_str();
  oracle_cmd->add_option("--cases", o.cases, "Generated cases")->capture_default_str();

  auto* repro_cmd = sub("repro", "Run the UNM pipeline over a dataset directory");
  repro_cmd->add_option("--unm-dir", o.unm_dir, "Directory of per-program subdirectories")
      ->required();
  repro_cmd->add_option("--lambda", o.lambda, "Performance target")->capture_default_str();
  repro_cmd->add_option("--max-window", o.max_window, "Histogram range")->capture_default_str();
  grid_opts(repro_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_validation;
  }

  const std::map<CLI::App*, int (*)(const Options&, Output&)> handlers = {
      {stats_cmd, run_stats},   {seqset_cmd, run_seqset}, {mfs_cmd, run_mfs},
      {mss_cmd, run_mss},       {cfps_cmd, run_cfps},     {window_cmd, run_window},
      {detect_cmd, run_detect}, {tstide_cmd, run_tstide}, {lfc_cmd, run_lfc},
      {mmac_cmd, run_mmac},     {mmm_cmd, run_mmm},       {trim_cmd, run_trim},
      {fsg_cmd, run_fsg},       {report_cmd, run_mfsreport}, {oracle_cmd, run_oracle_check},
      {repro_cmd, run_repro},
  };

  try {
    Output out(o, app.config_to_str(true, false));
    out.open();
    return handlers.at(app.get_subcommands().front())(o, out);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_io;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_validation;
  } catch (const GuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_validation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_io;
  }
}
