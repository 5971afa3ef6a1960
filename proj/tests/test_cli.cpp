// Copyright 2026 The cfwgan Authors
// SPDX-License-Identifier: Apache-2.0

// End-to-end runs of the command-line tool.

#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run cli(const std::string& args) {
  const std::string out = "cli_stdout.txt", err = "cli_stderr.txt";
  const std::string cmd = std::string(CFWGAN_CLI_PATH) + " " + args + " >" + out + " 2>" + err;
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    v.push_back(line);
    pos = end + 1;
  }
  return v;
}

std::string without_header(const std::string& text) { return text.substr(text.find('\n') + 1); }

const char* kSmallCompare = "sliced-compare --d 5 --m 400 --n-projections 40 --seed 3";

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(cli("").code == 2);
  CHECK(cli("frobnicate").code == 2);
  CHECK(cli("fit1d --dist gaussian:0,1 --no-such-flag 1").code == 2);
  CHECK(cli("fit1d").code == 2);
  CHECK(cli("fit1d --dist gaussian:0,1 --data x.csv").code == 2);
  CHECK(cli("fit1d --dist cauchy:0,1").code == 2);
  CHECK(cli("fit1d --dist gaussian:0,1 --activation tanh").code == 2);
  CHECK(cli("sliced-bound --seed -4").code == 2);
  CHECK(cli("sliced-bound --sigma abc").code == 2);
  const Run sgd = cli("sgd-w1");
  CHECK(sgd.code == 2);
  CHECK(sgd.err.find("--synthetic") != std::string::npos);
  CHECK(cli("sgd-w1 --synthetic gaussian:0,1 --data x.csv").code == 2);
  CHECK(cli("fit1d --config does-not-exist.json --dist gaussian:0,1").code == 2);
}

TEST_CASE("precondition and numeric failures") {
  CHECK(cli("sliced-compare --d 5 --m 200 --n-projections 5 --proposed-r 4").code == 3);
  CHECK(cli("convergence --sizes 2000 1000 --trials 1").code == 3);
  CHECK(cli("fit1d --dist relu:0,1").code == 3);
  CHECK(cli("sgd-w1 --synthetic gaussian:0,1 --n 50 --iterations 5").code == 3);
  const Run diverge =
      cli("sgd-w1 --synthetic gaussian:0,1 --n 500 --iterations 50 --learning-rate 1e7 --theta1-init 1e5");
  CHECK(diverge.code == 4);
  CHECK(!diverge.err.empty());
}

TEST_CASE("version flag") {
  const Run r = cli("--version");
  CHECK(r.code == 0);
  CHECK(r.out.find("0.1.0") != std::string::npos);
}

TEST_CASE("fit1d prints the closed form") {
  const Run r = cli("fit1d --dist gaussian:1.5,2");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("theta1=1.5") != std::string::npos);
  CHECK(r.out.find("branch=nonnegative") != std::string::npos);
  const Run relu = cli("fit1d --dist gaussian:0,1 --activation relu --out fit.json");
  REQUIRE(relu.code == 0);
  CHECK(relu.out.find("theta2=1.46694220692426") != std::string::npos);
  const std::string report = slurp("fit.json");
  CHECK(report.find("\"theta2\"") != std::string::npos);
  std::remove("fit.json");
}

TEST_CASE("fit1d on a sample file") {
  write_file("cli_sample.csv", "# comment\nx,y\n1,10\n2,30\n4,20\n8,40\n");
  const Run r = cli("fit1d --data cli_sample.csv --column 1 --bandwidth 1");
  CHECK(r.code == 0);
  CHECK(r.out.find("theta2=") != std::string::npos);
  CHECK(cli("fit1d --data cli_sample.csv --column 5").code != 0);
  std::remove("cli_sample.csv");
}

TEST_CASE("CSV format and header comment") {
  const Run r = cli("sliced-bound --d 1 2 1000");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("\r\n") != std::string::npos);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 5);
  CHECK(ls[0].rfind("# cfwgan 0.1.0 {", 0) == 0);
  CHECK(ls[0].find("\"command\":\"sliced-bound\"") != std::string::npos);
  CHECK(ls[1] == "d,g,ub_value");
  CHECK(ls[2] == "1,0.63661977236758138,0.60281027498908701");
  CHECK(ls[3] == "2,0.78539816339744828,0.46325137517610426");
  CHECK(ls[4].rfind("1000,", 0) == 0);
}

TEST_CASE("fields containing commas are quoted") {
  const Run r = cli("convergence --sizes 500 --trials 2");
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 4);
  CHECK(ls[1] == "dist,M,trial,theta2_hat,abs_err");
  CHECK(ls[2].rfind("\"gaussian:0,1\",500,0,", 0) == 0);
}

TEST_CASE("reruns are bit-identical and independent of the thread count") {
  const Run a = cli(kSmallCompare);
  const Run b = cli(kSmallCompare);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const Run c = cli(std::string(kSmallCompare) + " --threads 3");
  REQUIRE(c.code == 0);
  CHECK(without_header(a.out) == without_header(c.out));
  const Run d = cli("sliced-compare --d 5 --m 400 --n-projections 40 --seed 4");
  CHECK(without_header(a.out) != without_header(d.out));

  const auto ls = lines(a.out);
  REQUIRE(ls.size() == 4);
  CHECK(ls[1] == "d,r,method,q,n_projections,seed,value,stderr,wall_ms,flops_note");
  CHECK(ls[2].rfind("5,5,proposed,2,40,3,", 0) == 0);
  CHECK(ls[3].rfind("5,3,r-pca,2,40,3,", 0) == 0);

  const Run sa = cli("sgd-w1 --synthetic gaussian:1.5,2 --n 2000 --iterations 20 --seed 5");
  const Run sb = cli("sgd-w1 --synthetic gaussian:1.5,2 --n 2000 --iterations 20 --seed 5");
  REQUIRE(sa.code == 0);
  CHECK(sa.out == sb.out);
  const auto sl = lines(sa.out);
  CHECK(sl.size() == 23);
  CHECK(sl[1] == "iteration,theta1,theta2,residual_norm");
}

TEST_CASE("config file values and flag precedence") {
  write_file("cli_config.json", R"({"d": [5], "m": 400, "n_projections": 40, "seed": 3})");
  const Run from_config = cli("sliced-compare --config cli_config.json");
  REQUIRE(from_config.code == 0);
  const Run from_flags = cli(kSmallCompare);
  CHECK(without_header(from_config.out) == without_header(from_flags.out));

  const Run overridden = cli("sliced-compare --config cli_config.json --seed 4");
  REQUIRE(overridden.code == 0);
  CHECK(lines(overridden.out)[2].rfind("5,5,proposed,2,40,4,", 0) == 0);
  CHECK(lines(overridden.out)[0].find("\"seed\":4") != std::string::npos);

  write_file("cli_bad.json", R"({"d": [5], "bogus": 1})");
  CHECK(cli("sliced-compare --config cli_bad.json").code == 2);
  write_file("cli_bad.json", R"({"m": "many"})");
  CHECK(cli("sliced-compare --config cli_bad.json").code == 2);
  write_file("cli_bad.json", "{not json");
  CHECK(cli("sliced-compare --config cli_bad.json").code == 2);
  std::remove("cli_config.json");
  std::remove("cli_bad.json");
}

TEST_CASE("output file") {
  std::remove("cli_bound.csv");
  const Run r = cli("sliced-bound --d 2 --out cli_bound.csv");
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  CHECK(lines(slurp("cli_bound.csv")).size() == 3);
  std::remove("cli_bound.csv");
  CHECK(cli("sliced-bound --d 2 --out /nonexistent/dir/x.csv").code == 2);
}
