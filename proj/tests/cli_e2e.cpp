// End-to-end checks of the installed CLI: exit codes, file output, the
// GRASSCONV_THREADS determinism guarantee, and report-diff. Takes the CLI
// path as its only argument.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "grassconv/report.hpp"

namespace {

int failures = 0;

int run(const std::string& command) {
  const int status = std::system(command.c_str());
  return WEXITSTATUS(status);
}

void expect(bool ok, const std::string& what) {
  if (ok) {
    std::printf("[PASS] %s\n", what.c_str());
  } else {
    ++failures;
    std::printf("[FAIL] %s\n", what.c_str());
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: cli_e2e <path-to-cli>\n");
    return 2;
  }
  const std::string cli = argv[1];
  const std::string dir = "cli_e2e_work";
  if (std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str()) != 0) {
    std::fprintf(stderr, "cannot prepare the working directory\n");
    return 2;
  }

  const std::string base = cli + " verify-hessians --n 3 --m 2 --samples 40 --seed 7";
  expect(run(base + " --output " + dir + "/a.json > /dev/null 2>&1") == 0,
         "verify-hessians exits 0 and writes a report");
  expect(run(base + " --output " + dir + "/a2.json > /dev/null 2>&1") == 0,
         "verify-hessians rerun");

  try {
    const grassconv::VerificationReport report =
        grassconv::verification_report_from_json(slurp(dir + "/a.json"));
    expect(report.all_passed() && report.config.samples == 40, "report parses back");
  } catch (const std::exception& err) {
    expect(false, std::string("report parses back (") + err.what() + ")");
  }

  expect(run(cli + " verify-hessians --samples 0 > /dev/null 2>&1") == 2,
         "samples = 0 is a usage error (exit 2)");
  expect(run(cli + " verify-hessians --n 3 --m 1 --estimates h1 --samples 5 > /dev/null 2>&1") == 2,
         "h-estimates with a single angle are rejected (exit 2)");
  expect(run(base + " --output /nonexistent-dir/x.json > /dev/null 2>&1") == 3,
         "unwritable output path is an I/O error (exit 3)");

  const std::string seeded = cli + " verify-hessians --n 3 --m 2 --samples 200 --seed 42";
  expect(run("GRASSCONV_THREADS=1 " + seeded + " --output " + dir + "/t1.json > /dev/null 2>&1") ==
                 0 &&
             run("GRASSCONV_THREADS=8 " + seeded + " --output " + dir +
                 "/t8.json > /dev/null 2>&1") == 0 &&
             slurp(dir + "/t1.json") == slurp(dir + "/t8.json") &&
             !slurp(dir + "/t1.json").empty(),
         "GRASSCONV_THREADS=1 and =8 produce byte-identical reports");

  expect(run(cli + " report-diff " + dir + "/a.json " + dir + "/a2.json > /dev/null 2>&1") == 0,
         "report-diff on identical runs exits 0");
  expect(run(cli + " verify-hessians --n 3 --m 2 --samples 40 --seed 8 --output " + dir +
             "/b.json > /dev/null 2>&1") == 0 &&
             run(cli + " report-diff " + dir + "/a.json " + dir + "/b.json > /dev/null 2>&1") == 1,
         "report-diff on different seeds exits 1");

  expect(run(cli + " convexity-boundary --n 3 --m 2 --samples 100 --output " + dir +
             "/boundary.json > /dev/null 2>&1") == 0,
         "convexity-boundary exits 0");

  expect(run(cli + " graph-check --graph lawson-osserman --points 10 --output " + dir +
             "/cone.json > /dev/null 2>&1") == 0,
         "graph-check on the cone exits 0");

  expect(run(base + " --format csv --output " + dir + "/a.csv > /dev/null 2>&1") == 0 &&
             slurp(dir + "/a.csv").rfind("estimate,", 0) == 0,
         "csv output starts with its header");

  {
    std::ofstream bad(dir + "/bad_jets.txt");
    bad << "2 1 1\n0 0\n0.1 0.2\n0 1 2 0\n";  // asymmetric second derivatives
  }
  expect(run(cli + " graph-check --graph file:" + dir + "/bad_jets.txt > /dev/null 2>&1") == 2,
         "malformed jet file is a parse error (exit 2)");

  {
    std::ofstream good(dir + "/jets.txt");
    good << "2 1 2\n"
            "0 0\n0.1 0.2\n0.01 0.02 0.02 0.03\n"
            "1 0\n0.2 0.1\n0.03 0.01 0.01 0.02\n";
  }
  expect(run(cli + " graph-check --graph file:" + dir + "/jets.txt --output " + dir +
             "/jets_report.json > /dev/null 2>&1") == 0,
         "tabulated jet file produces pointwise records");

  if (failures) std::printf("%d e2e check(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
