#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "stidelab/error.hpp"
#include "stidelab/sequence_core.hpp"
#include "stidelab/trace_model.hpp"
#include "support.hpp"

using namespace stidelab;
using namespace stidelab::testing;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("stidelab_trace_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

}  // namespace

TEST_CASE("unm parsing splits on pid changes") {
  const auto traces = parse_trace_text("1 5\n1 3\n2 5\n", TraceFormat::unm);
  REQUIRE(traces.size() == 2);
  CHECK(traces[0] == Trace{"1", {5, 3}});
  CHECK(traces[1] == Trace{"2", {5}});
}

TEST_CASE("empty input gives no traces") {
  CHECK(parse_trace_text("", TraceFormat::unm).empty());
  CHECK(parse_trace_text("", TraceFormat::generic).empty());
  CHECK(parse_trace_text("\n\n", TraceFormat::generic).empty());
}

TEST_CASE("non-adjacent runs of one pid are distinct traces") {
  const auto traces = parse_trace_text("7 1\n8 2\n7 3\n", TraceFormat::unm);
  REQUIRE(traces.size() == 3);
  CHECK(traces[0].process_id == "7");
  CHECK(traces[2].process_id == "7");
  CHECK(traces[2].events == std::vector<Symbol>{3});
}

TEST_CASE("CRLF, tabs and blank lines") {
  const auto traces = parse_trace_text("1\t5\r\n\r\n1  3\r\n", TraceFormat::unm);
  REQUIRE(traces.size() == 1);
  CHECK(traces[0].events == std::vector<Symbol>{5, 3});
}

TEST_CASE("malformed lines report their line number") {
  try {
    parse_trace_text("1 5\n1 x\n", TraceFormat::unm);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_trace_text("1 5 6\n", TraceFormat::unm), ParseError);
  CHECK_THROWS_AS(parse_trace_text("p 5\n", TraceFormat::unm), ParseError);
  CHECK_THROWS_AS(parse_trace_text("1 -5\n", TraceFormat::unm), ParseError);
  CHECK_THROWS_AS(parse_trace_text("1 4294967296\n", TraceFormat::unm), ParseError);
  try {
    parse_trace_text("4\n\n5\nz\n", TraceFormat::generic);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
}

TEST_CASE("generic format separates traces by blank lines") {
  const auto traces = parse_trace_text("1\n2\n\n\n3\n", TraceFormat::generic);
  REQUIRE(traces.size() == 2);
  CHECK(traces[0].events == std::vector<Symbol>{1, 2});
  CHECK(traces[1].events == std::vector<Symbol>{3});
}

TEST_CASE("parse and serialize round-trip") {
  std::mt19937_64 rng(11);
  for (int c = 0; c < 200; ++c) {
    auto d = long_traces(rng, 4, 1, 30);
    for (auto& t : d.traces) {
      if (t.events.empty()) t.events.push_back(1);
    }
    for (auto fmt : {TraceFormat::unm, TraceFormat::generic}) {
      // Adjacent UNM traces need distinct pids to survive the round trip.
      for (std::size_t k = 0; k < d.traces.size(); ++k) d.traces[k].process_id = std::to_string(100 + k);
      const auto text = serialize_traces(d.traces, fmt);
      const auto back = parse_trace_text(text, fmt);
      CHECK(serialize_traces(back, fmt) == text);
      REQUIRE(back.size() == d.traces.size());
      for (std::size_t k = 0; k < back.size(); ++k) CHECK(back[k].events == d.traces[k].events);
    }
  }
  // Whitespace normalization only.
  CHECK(serialize_traces(parse_trace_text("1   5\r\n1\t3\n", TraceFormat::unm), TraceFormat::unm) ==
        "1 5\n1 3\n");
}

TEST_CASE("stats") {
  CHECK(stats(Dataset{}) == DatasetStats{0, 0, 0});
  const Dataset d{"x", Role::normal, {{"1", {5, 3}}, {"2", {5}}}};
  CHECK(stats(d) == DatasetStats{2, 3, 2});
  CHECK(d.longest_trace() == 2);
}

TEST_CASE("manifest parsing") {
  const auto m = parse_manifest("# comment\nrole=training\nname=lpr\nfile=a.txt\nfile=/abs/b.txt\n",
                                "/data");
  CHECK(m.role == Role::training);
  CHECK(m.name == "lpr");
  CHECK(m.format == TraceFormat::unm);
  REQUIRE(m.files.size() == 2);
  CHECK(m.files[0] == fs::path("/data/a.txt"));
  CHECK(m.files[1] == fs::path("/abs/b.txt"));
  CHECK(parse_manifest("role=test\nname=x\nformat=generic\n").format == TraceFormat::generic);
  CHECK_THROWS_AS(parse_manifest("role=bogus\nname=x\n"), ValidationError);
  CHECK_THROWS_AS(parse_manifest("name=x\n"), ValidationError);
  CHECK_THROWS_AS(parse_manifest("role=normal\n"), ValidationError);
  CHECK_THROWS_AS(parse_manifest("role=normal\nname=x\ncolour=red\n"), ParseError);
  CHECK_THROWS_AS(parse_manifest("role=normal\nname=x\njunk\n"), ParseError);
}

TEST_CASE("load_dataset keeps manifest order") {
  const auto dir = scratch_dir("load");
  write(dir / "a.txt", "1 1\n1 2\n2 3\n3 4\n");
  write(dir / "b.txt", "9 5\n8 6\n");
  write(dir / "m.mf", "role=normal\nname=demo\nfile=a.txt\nfile=b.txt\n");
  const auto d = load_dataset(dir / "m.mf");
  CHECK(d.name == "demo");
  CHECK(d.role == Role::normal);
  REQUIRE(d.traces.size() == 5);
  CHECK(d.traces[0].events == std::vector<Symbol>{1, 2});
  CHECK(d.traces[4].events == std::vector<Symbol>{6});

  write(dir / "missing.mf", "role=normal\nname=demo\nfile=nope.txt\n");
  try {
    load_dataset(dir / "missing.mf");
    FAIL("expected an I/O error");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("nope.txt") != std::string::npos);
  }
  CHECK_THROWS_AS(load_dataset(dir / "absent.mf"), IoError);
  write(dir / "bad.txt", "1 1\nbad\n");
  write(dir / "bad.mf", "role=normal\nname=demo\nfile=bad.txt\n");
  CHECK_THROWS_AS(load_dataset(dir / "bad.mf"), ParseError);
}

TEST_CASE("concat keeps trace boundaries") {
  const auto a = letters_dataset({"abc"});
  const auto b = letters_dataset({"ab"});
  const auto ab = concat(a, b);
  CHECK(ab.traces.size() == 2);
  CHECK(sequence_set(ab, 2) == seqs({"ab", "bc"}));
  const auto empty = Dataset{};
  for (std::size_t l = 0; l <= 4; ++l) CHECK(sequence_set(concat(a, empty), l) == sequence_set(a, l));
}

TEST_CASE("concat window sets are unions") {
  std::mt19937_64 rng(5);
  for (int c = 0; c < 300; ++c) {
    const auto a = long_traces(rng, 4, 1, 20);
    const auto b = long_traces(rng, 4, 1, 20);
    const auto ab = concat(a, b);
    for (std::size_t l = 1; l <= 5; ++l) {
      CHECK(sequence_set(ab, l) == set_op(sequence_set(a, l), sequence_set(b, l), SetOp::unite));
    }
  }
}

TEST_CASE("no window crosses a trace boundary") {
  std::mt19937_64 rng(9);
  for (int c = 0; c < 200; ++c) {
    const auto d = long_traces(rng, 3, 1, 30);
    for (std::size_t l = 1; l <= 8; ++l) {
      for_each_window(d, l, [&](std::size_t t, std::size_t end, SymbolView w) {
        const auto& ev = d.traces[t].events;
        REQUIRE(end < ev.size());
        REQUIRE(end + 1 >= l);
        CHECK(std::equal(w.begin(), w.end(), ev.begin() + static_cast<std::ptrdiff_t>(end + 1 - l)));
      });
    }
  }
}

TEST_CASE("symbol tables") {
  const auto t = parse_symbol_table("5 open\n3 exit\r\n\n");
  CHECK(t.at(5) == "open");
  CHECK(t.at(3) == "exit");
  CHECK_THROWS_AS(parse_symbol_table("5\n"), ParseError);
}
