// End-to-end checks of the msc binary: golden outputs, parser round trips
// through the executable, determinism, and exit codes. Run from the
// repository root; argv[1] is the path to msc.
#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "msym/dsl.hpp"
#include "msym/random_objects.hpp"

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
  if (!ok) {
    ++failures;
    std::cerr << "FAIL: " << what << "\n";
  }
}

struct RunResult {
  std::string out;
  int code;
};

RunResult run(const std::string& cmd) {
  std::string full = cmd + " 2>/dev/null";
  FILE* pipe = popen(full.c_str(), "r");
  if (!pipe) return {"", -1};
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe))
    out.append(buf.data(), got);
  int status = pclose(pipe);
  return {out, WIFEXITED(status) ? WEXITSTATUS(status) : -1};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

std::string msc;

void check_golden(const std::string& args, const std::string& golden) {
  RunResult r = run(msc + " " + args);
  expect(r.code == 0, args + " exits 0");
  std::string want = read_file("tests/golden/" + golden);
  expect(!want.empty(), "golden file " + golden + " present");
  expect(r.out == want, args + " matches " + golden);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: test_cli <path-to-msc>\n";
    return 2;
  }
  msc = argv[1];

  // canonical geometry golden files
  check_golden("eval --file tests/golden/chart_1_1.msc", "geometry_1_1.txt");
  check_golden("eval --file tests/golden/chart_2_1.msc", "geometry_2_1.txt");
  check_golden("eval --file tests/golden/chart_2_2.msc", "geometry_2_2.txt");
  check_golden("eval --file tests/golden/chart_3_1.msc", "geometry_3_1.txt");
  check_golden("kernel --degree 2 --n 2 --N 1", "kernel_2_n2N1.txt");
  check_golden("momentum-map --X \"@x1\" --n 2 --N 1",
               "momentum_map_x1_n2N1.txt");

  // bracket of two functions: canonical zero with the underflow note
  std::filesystem::path tmp =
      std::filesystem::temp_directory_path() / "msc_cli_test";
  std::filesystem::create_directories(tmp);
  std::string doc = (tmp / "functions.msc").string();
  write_file(doc,
             "chart extended n=2 N=1\n"
             "let f = q\n"
             "let g = p\n");
  RunResult br = run(msc + " bracket --file " + doc + " --f f --g g");
  expect(br.code == 0, "bracket of two functions exits 0");
  expect(br.out == "0\nnote: degree underflow\n",
         "bracket of two functions prints canonical zero with note");

  // non-Poisson input is rejected with exit 2
  std::string badDoc = (tmp / "bad.msc").string();
  write_file(badDoc,
             "chart extended n=2 N=1\n"
             "let f = p1_1 * d(p1_2) ^ d(x1)\n"
             "let g = q\n");
  RunResult bad = run(msc + " bracket --file " + badDoc + " --f f --g g");
  expect(bad.code == 2, "non-Poisson bracket input exits 2");

  // parse errors exit 1
  std::string broken = (tmp / "broken.msc").string();
  write_file(broken, "chart extended n=2 N=1\nlet f = d(q ^\n");
  RunResult pe = run(msc + " eval --file " + broken);
  expect(pe.code == 1, "parse error exits 1");

  // determinism: identical argv => byte-identical output
  std::string check_cmd =
      msc + " check --suite poisson --n 2 --N 1 --seed 42 --trials 3 --json";
  RunResult c1 = run(check_cmd);
  RunResult c2 = run(check_cmd);
  expect(c1.code == 0, "poisson suite passes");
  expect(!c1.out.empty() && c1.out == c2.out,
         "identical seeds give byte-identical JSON reports");

  RunResult t1 = run(msc + " check --suite schouten --n 2 --N 1 --seed 7 "
                           "--trials 3");
  RunResult t2 = run(msc + " check --suite schouten --n 2 --N 1 --seed 7 "
                           "--trials 3");
  expect(t1.code == 0 && t1.out == t2.out,
         "identical seeds give byte-identical text reports");

  // parser round-trip corpus of 50 documents through the executable
  msym::Chart chart = msym::Chart::extended(2, 1);
  msym::RandomSource rs(1234);
  for (int t = 0; t < 50; ++t) {
    msym::DslDocument d;
    d.chart = chart;
    int kind = t % 3;
    if (kind == 0)
      d.definitions.emplace_back("a", rs.scalar(chart.vars()));
    else if (kind == 1)
      d.definitions.emplace_back("a", rs.form(chart, rs.uniform(0, 3)));
    else
      d.definitions.emplace_back("a", rs.multivector(chart, rs.uniform(1, 3)));

    std::string path = (tmp / "roundtrip.msc").string();
    write_file(path, d.render());
    RunResult first = run(msc + " eval --file " + path + " --name a");
    expect(first.code == 0, "round-trip document evaluates");
    std::string rendered = first.out;
    if (!rendered.empty() && rendered.back() == '\n') rendered.pop_back();

    write_file(path, "chart extended n=2 N=1\nlet a = " + rendered + "\n");
    RunResult second = run(msc + " eval --file " + path + " --name a");
    expect(second.code == 0 && second.out == first.out,
           "round-trip render is a fixed point (doc " + std::to_string(t) +
               ")");
  }

  if (failures == 0) {
    std::cout << "test_cli: all checks passed\n";
    return 0;
  }
  std::cout << "test_cli: " << failures << " check(s) failed\n";
  return 1;
}
