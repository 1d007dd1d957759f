#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "wfc/report.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("wfc_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Run run_tool(const std::string& args, const std::string& env = "") {
  const fs::path out = scratch() / "stdout", err = scratch() / "stderr";
  const std::string cmd = env + " \"" WFC_BIN "\" " + args + " >\"" + out.string() + "\" 2>\"" +
                          err.string() + "\"";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

wfc::Table csv(const Run& r) { return wfc::parse_csv(r.out); }

std::size_t column(const wfc::Table& t, const std::string& name) {
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    if (t.columns[i] == name) return i;
  FAIL("no column " << name);
  return 0;
}

double number(const wfc::Table& t, std::size_t row, const std::string& name) {
  const auto& c = t.rows.at(row).at(column(t, name));
  if (const auto* d = std::get_if<double>(&c)) return *d;
  return static_cast<double>(std::get<std::int64_t>(c));
}

}  // namespace

TEST_CASE("sieve writes the table cache and is cache-transparent") {
  const fs::path cache = scratch() / "cache";
  const std::string env = "WFC_CACHE_DIR=\"" + cache.string() + "\"";
  const Run cold = run_tool("sieve --l 2 --t 8 --limit 100000", env);
  REQUIRE(cold.code == 0);
  CHECK(fs::exists(cache / "tables" / "l2_t8_N100000.bin"));
  const Run warm = run_tool("sieve --l 2 --t 8 --limit 100000", env);
  CHECK(warm.code == 0);
  CHECK(warm.out == cold.out);
  const auto t = csv(cold);
  REQUIRE(t.rows.size() == 1);
  CHECK(number(t, 0, "N") == 100000);
  CHECK(number(t, 0, "distinct") > 0);

  // --cache-dir is used when the environment variable is absent
  const fs::path other = scratch() / "flagcache";
  const Run flag = run_tool("sieve --l 2 --t 3 --limit 500 --cache-dir \"" + other.string() + "\"",
                       "env -u WFC_CACHE_DIR");
  CHECK(flag.code == 0);
  CHECK(fs::exists(other / "tables" / "l2_t3_N500.bin"));
}

TEST_CASE("series snm example") {
  const Run r = run_tool("series snm --p 3 --h 1 --k 2 --l 2 --t 8 --s 1 --n 5");
  REQUIRE(r.code == 0);
  const auto t = csv(r);
  REQUIRE(t.rows.size() == 1);
  CHECK(number(t, 0, "residual") <= 1e-8);
}

TEST_CASE("count main-term example") {
  const Run r = run_tool("count main-term --k 2 --l 2 --xi 5 --s 6 --n 100000");
  REQUIRE(r.code == 0);
  const auto t = csv(r);
  REQUIRE(t.rows.size() == 1);
  CHECK(number(t, 0, "count") > 0);
  CHECK(t.rows[0][column(t, "ratio")] != wfc::Cell(std::string()));
}

TEST_CASE("every subcommand runs on small inputs") {
  const char* commands[] = {
      "density --r 2 --l 2 --grid 50,100",
      "expsum --q 12 --a 5 --k 2 --l 2 --t 4",
      "local --p 3 --k 2 --l 2 --t 8 --s 1 --lemma M",
      "series trunc --n 1000 --k 2 --l 2 --t 8 --s 2 --Q 50",
      "series trunc --n 1000 --k 2 --l 2 --t 8 --s 2 --summation prime --kind prime",
      "series positivity --lo 100 --hi 120 --k 2 --l 2 --t 8 --s 2 --Q 30",
      "integral jprime --n 1000 --s 2 --xi 5",
      "integral jn --n 2000 --s 1",
      "integral udecay --n 2000 --t 8 --samples 20",
      "arcs residual --n 65536 --samples 16",
      "arcs weyl --n 65536 --samples 16",
      "arcs classify --alpha 0.25 --n 10000 --preset N",
      "arcs classify --alpha 0.3 --n 10000 --M 20",
      "arcs vmv --s 2 --r 2 --Y 10",
      "count conje --n-max 300 --t 4 --s 2 --from 290",
      "count thm13 --n-max 300 --xi 5 --s 2 --unweighted --from 290",
      "count qm --n 1000000",
      "count k2 --t 2 --X 100",
  };
  for (const char* c : commands) {
    const Run r = run_tool(c);
    INFO(std::string(c) << "\n" << r.err);
    CHECK(r.code == 0);
    CHECK_FALSE(csv(r).rows.empty());
  }
}

TEST_CASE("sampling subcommands are deterministic and record their seed") {
  const Run a = run_tool("arcs weyl --n 65536 --samples 32 --seed 5");
  const Run b = run_tool("arcs weyl --n 65536 --samples 32 --seed 5");
  const Run c = run_tool("arcs weyl --n 65536 --samples 32 --seed 5 --threads 1");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  CHECK(number(csv(a), 0, "seed") == 5);
  const Run d = run_tool("arcs residual --n 65536 --samples 32 --seed 2 --threads 3");
  const Run e = run_tool("arcs residual --n 65536 --samples 32 --seed 2 --threads 1");
  CHECK(d.out == e.out);
}

TEST_CASE("json output and --out") {
  const fs::path file = scratch() / "report.jsonl";
  const Run r = run_tool("expsum --q 3 --a 1 --k 2 --l 1 --t 1 --format json --out \"" + file.string() + "\"");
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  const auto t = wfc::parse_jsonl(slurp(file));
  REQUIRE(t.rows.size() == 1);
  CHECK(number(t, 0, "S_abs") == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("config file values yield to flags") {
  const fs::path cfg = scratch() / "run.cfg";
  std::ofstream(cfg) << "# expsum defaults\nq = 5\na=2\n\nk=3\n";
  const Run from_file = run_tool("expsum --config \"" + cfg.string() + "\" --l 1 --t 1");
  REQUIRE(from_file.code == 0);
  CHECK(number(csv(from_file), 0, "q") == 5);
  CHECK(number(csv(from_file), 0, "k") == 3);
  const Run flagged = run_tool("expsum --config \"" + cfg.string() + "\" --q 7 --l 1 --t 1");
  REQUIRE(flagged.code == 0);
  CHECK(number(csv(flagged), 0, "q") == 7);
}

TEST_CASE("exit codes") {
  const Run missing = run_tool("sieve --l 2 --limit 10");
  CHECK(missing.code == 1);
  CHECK(missing.err.find("--t") != std::string::npos);
  const Run unknown = run_tool("expsum --q 3 --a 1 --bogus 4");
  CHECK(unknown.code == 1);
  CHECK(unknown.err.find("--bogus") != std::string::npos);
  CHECK(run_tool("").code == 1);
  CHECK(run_tool("expsum --q 6 --a 2").code == 2);
  CHECK(run_tool("local --p 2 --k 2 --l 2 --t 8 --s 4 --lemma Mstar").code == 2);
  CHECK(run_tool("count conje --n-max 20000000").code == 3);
  CHECK(run_tool("count conje --n-max 5000 --max-n 1000").code == 3);
  CHECK(run_tool("--help").code == 0);
}
