#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  static fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("nonlocal_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

fs::path write_file(const std::string& name, const std::string& text) {
  auto p = scratch() / name;
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(const std::string& args) {
  std::string cmd = std::string(NONLOCAL_CLI) + " " + args + " 2>" +
                    (scratch() / "stderr.txt").string();
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string first_data_header(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') return line;
  return {};
}

const char* kIbp = R"(command = ibp
[kernel]
family = potential
delta = 0.125
beta = 0.5
theta = -1, 2
[domain]
n_per_delta = 8
[study]
trials = 5
)";

}  // namespace

TEST_CASE("same config and seed give identical bytes") {
  auto conf = write_file("ibp.conf", kIbp);
  auto a = scratch() / "a.csv", b = scratch() / "b.csv", c = scratch() / "c.csv";
  REQUIRE(run("--config " + conf.string() + " --out " + a.string()) == 0);
  REQUIRE(run("--config " + conf.string() + " --out " + b.string()) == 0);
  CHECK(slurp(a) == slurp(b));
  REQUIRE(run("--config " + conf.string() + " --seed 99 --out " + c.string()) == 0);
  CHECK(slurp(a) != slurp(c));
  CHECK(slurp(c).find("# seed = 99") != std::string::npos);
}

TEST_CASE("bad configs exit with 2 and a one-line error") {
  auto conf = write_file("bad.conf", "command = convergence\n[kernel]\nfamily = potential\nbeta = -1.5\n");
  CHECK(run("--config " + conf.string()) == 2);
  auto err = slurp(scratch() / "stderr.txt");
  CHECK(err.rfind("error: ValidationError:", 0) == 0);
  CHECK(std::count(err.begin(), err.end(), '\n') == 1);
  CHECK(run("--config " + (scratch() / "missing.conf").string()) == 2);
  CHECK(run("--config " + conf.string() + " --quad-order 3") == 2);
  CHECK(run("") == 2);
}

TEST_CASE("oscillation sweep reports a bound column") {
  auto conf = write_file("osc.conf", R"(command = oscillation
[kernel]
family = pcs
[sweep]
deltas = 0.1, 0.05, 0.01
)");
  auto out = scratch() / "osc.csv";
  CHECK(run("--config " + conf.string() + " --out " + out.string()) == 0);
  CHECK(first_data_header(slurp(out)) == "delta,value,abs_value,bound");
  CHECK(slurp(out).find("# status = pass") != std::string::npos);
}

TEST_CASE("figure output has four columns") {
  auto conf = write_file("fig.conf", R"(command = figure
[kernel]
family = potential
delta = 0.05
beta = 0.3333333333333333
theta = -1, 1
[study]
which = absval
)");
  auto out = scratch() / "fig.csv";
  CHECK(run("--config " + conf.string() + " --out " + out.string()) == 0);
  CHECK(first_data_header(slurp(out)) == "x,u,du,Du");
}

TEST_CASE("failed check exits with 1") {
  auto conf = write_file("spec.conf", R"(command = spectrum
[kernel]
family = potential
delta = 0.125
beta = 0.5
theta = 1, 1
normalize = false
[domain]
n_per_delta = 8
[study]
expect = imaginary
)");
  CHECK(run("--config " + conf.string() + " --out " + (scratch() / "s.csv").string()) == 1);
}

TEST_CASE("matrix dump") {
  auto conf = write_file("apply.conf", R"(command = apply
[kernel]
family = pcs
delta = 0.1
[domain]
n_per_delta = 4
)");
  auto mat = scratch() / "m.coo";
  CHECK(run("--config " + conf.string() + " --out " + (scratch() / "ap.csv").string() +
            " --dump-matrix " + mat.string()) == 0);
  CHECK(fs::exists(mat));
  CHECK(fs::file_size(mat) > 0);
}

TEST_CASE("version flag") {
  auto out = scratch() / "version.txt";
  std::string cmd = std::string(NONLOCAL_CLI) + " --version > " + out.string();
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(slurp(out).find("0.3.0") != std::string::npos);
}
