#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "decon/corpus.hpp"
#include "decon/errors.hpp"
#include "decon/io.hpp"
#include "decon/symbol.hpp"

using namespace decon;
using nlohmann::json;

namespace {

std::string cli_path() {
  const char* p = std::getenv("DECON_CLI");
  return p ? p : "";
}

int run_cli(const std::string& args, std::string* out = nullptr) {
  std::string cmd = cli_path() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string captured;
  char buf[4096];
  while (size_t n = fread(buf, 1, sizeof(buf), pipe)) captured.append(buf, n);
  int status = pclose(pipe);
  if (out) *out = captured;
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  REQUIRE(is.good());
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

const std::string kDir = "/tmp/decon_cli_test";

struct DirSetup {
  DirSetup() {
    int rc = std::system(("rm -rf " + kDir + " && mkdir -p " + kDir).c_str());
    (void)rc;
  }
};
DirSetup dir_setup;

}  // namespace

TEST_CASE("sequence JSON round trip is exact") {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 10; ++t) {
    WeightedSequence a = corpus::enveloped_2d(rng, 3, 5);
    WeightedSequence b = sequence_from_json(sequence_to_json(a));
    REQUIRE(b.size() == a.size());
    CHECK(b.offset() == a.offset());
    CHECK(b.shape() == a.shape());
    for (size_t i = 0; i < a.size(); ++i) CHECK(a.values()[i] == b.values()[i]);
  }
}

TEST_CASE("sequence JSON validation") {
  json bad{{"dim", 1}, {"offset", {0}}, {"shape", {2}}, {"re", {1.0}}};
  CHECK_THROWS_AS(sequence_from_json(bad), Error);  // value count mismatch
  json bad2{{"dim", 1}, {"offset", {0}}, {"shape", {1}}, {"re", {1.0}},
            {"im", {1.0, 2.0}}};
  CHECK_THROWS_AS(sequence_from_json(bad2), Error);
  CHECK_THROWS_AS(load_sequence("/nonexistent/path.json"), Error);
}

TEST_CASE("generator specs parse for every kind") {
  Generator b = generator_from_json(json{{"kind", "bspline"}, {"order", 3}});
  CHECK(b.kind() == GeneratorKind::bspline);
  Generator e = generator_from_json(
      json{{"kind", "exp"}, {"rate", 2.0}, {"alpha", 2.5}});
  CHECK(e.kind() == GeneratorKind::two_sided_exponential);
  Generator s = generator_from_json(json{
      {"kind", "sampled"}, {"x0", -1.0}, {"dx", 0.5}, {"values", {0.0, 1.0, 0.0}}});
  CHECK(s.kind() == GeneratorKind::user_sampled);
  CHECK_THROWS_AS(generator_from_json(json{{"kind", "wavelet"}}), Error);
}

TEST_CASE("cli: deconvolve writes outputs and is byte-deterministic") {
  REQUIRE_FALSE(cli_path().empty());
  WeightedSequence hat(1, {-1}, {3},
                       {cplx(1.0 / 6, 0), cplx(2.0 / 3, 0), cplx(1.0 / 6, 0)});
  save_sequence(hat, kDir + "/hat_a.json");

  std::string out1 = kDir + "/run1";
  std::string out2 = kDir + "/run2";
  int rc = std::system(("mkdir -p " + out1 + " " + out2).c_str());
  (void)rc;
  CHECK(run_cli("deconvolve --in " + kDir + "/hat_a.json --out-dir " + out1) == 0);
  CHECK(run_cli("deconvolve --in " + kDir + "/hat_a.json --out-dir " + out2) == 0);
  CHECK(slurp(out1 + "/b.json") == slurp(out2 + "/b.json"));
  CHECK(slurp(out1 + "/report.json") == slurp(out2 + "/report.json"));

  // outputs agree with the library path
  WeightedSequence b = load_sequence(out1 + "/b.json");
  DeconvResult dec = deconvolve(hat, 1024, 1e-9);
  CHECK(max_abs_diff(b, dec.b) == 0.0);
}

TEST_CASE("cli: non-invertible input surfaces NotInvertible with exit 2") {
  REQUIRE_FALSE(cli_path().empty());
  WeightedSequence diff(1, {0}, {2}, {cplx(1, 0), cplx(-1, 0)});
  save_sequence(diff, kDir + "/diff.json");
  std::string out;
  int code = run_cli("--json-errors deconvolve --in " + kDir +
                         "/diff.json --out-dir " + kDir,
                     &out);
  CHECK(code == 2);
  json err = json::parse(out);
  CHECK(err.at("error") == "NotInvertible");
}

TEST_CASE("cli: missing file exits with the I/O code") {
  REQUIRE_FALSE(cli_path().empty());
  CHECK(run_cli("deconvolve --in /nonexistent.json --out-dir " + kDir) == 4);
}

TEST_CASE("cli: dual-window on the box generator") {
  REQUIRE_FALSE(cli_path().empty());
  write_text_file(kDir + "/box.json", "{\"kind\": \"bspline\", \"order\": 1}\n");
  CHECK(run_cli("dual-window --gen " + kDir + "/box.json --out-dir " + kDir) == 0);
  json rep = load_json(kDir + "/report.json");
  CHECK(rep.at("A_gram") == 1.0);
  CHECK(rep.at("biorthogonality_defect").get<double>() <= 1e-12);
  WeightedSequence psi = load_sequence(kDir + "/psi_coefficients.json");
  CHECK(psi.size() == 1);
  CHECK(psi.values()[0] == cplx(1.0, 0.0));
}

TEST_CASE("cli: riesz-check on the hat generator") {
  REQUIRE_FALSE(cli_path().empty());
  write_text_file(kDir + "/hat.json", "{\"kind\": \"bspline\", \"order\": 2}\n");
  CHECK(run_cli("riesz-check --gen " + kDir + "/hat.json --trials 40 --out " +
                kDir + "/riesz.json") == 0);
  json rep = load_json(kDir + "/riesz.json");
  CHECK(rep.at("ratios").size() == 3);
  for (const auto& row : rep.at("ratios")) CHECK(row.at("inside") == true);
}

TEST_CASE("cli: sample-recon produces a consistent report") {
  REQUIRE_FALSE(cli_path().empty());
  write_text_file(kDir + "/hat.json", "{\"kind\": \"bspline\", \"order\": 2}\n");
  std::string out = kDir + "/sr";
  int rc = std::system(("mkdir -p " + out).c_str());
  (void)rc;
  CHECK(run_cli("sample-recon --gen " + kDir +
                "/hat.json --window-lo 0 --window-hi 48 --spacing 0.5 "
                "--jitter 0.1 --allow-uncertified --out-dir " + out) == 0);
  json rep = load_json(out + "/report.json");
  CHECK(rep.at("violations") == 0);
  CHECK(rep.at("observed_ratio").get<double>() < 1.0);
  CHECK(rep.at("max_coeff_err").get<double>() <= 1e-8);
  CHECK(rep.at("certified_density") == false);
  // error history CSV exists and has one line per iteration plus header
  std::string hist = slurp(out + "/error_history.csv");
  long lines = std::count(hist.begin(), hist.end(), '\n');
  CHECK(lines == rep.at("iterations").get<long>() + 1);

  // without the override, uncertified density is refused
  CHECK(run_cli("sample-recon --gen " + kDir +
                "/hat.json --window-lo 0 --window-hi 48 --spacing 0.5 "
                "--jitter 0.1 --out-dir " + out) == 2);
}

TEST_CASE("cli: verify quick mode is deterministic and seed-stable") {
  REQUIRE_FALSE(cli_path().empty());
  std::string o1, o2, o3;
  CHECK(run_cli("verify --quick --report " + kDir + "/v1.json", &o1) == 0);
  CHECK(run_cli("verify --quick --report " + kDir + "/v2.json", &o2) == 0);
  CHECK(o1 == o2);
  CHECK(slurp(kDir + "/v1.json") == slurp(kDir + "/v2.json"));

  // a different seed flips no verdicts
  CHECK(run_cli("verify --quick --seed 777", &o3) == 0);

  json rep = load_json(kDir + "/v1.json");
  CHECK(rep.at("all_pass") == true);
  CHECK(rep.at("criteria").size() == 10);
}

TEST_CASE("cli: corrupted verify config is a config error") {
  REQUIRE_FALSE(cli_path().empty());
  write_text_file(kDir + "/bad_cfg.json", "{\"recon_tol\": -1.0}\n");
  CHECK(run_cli("verify --quick --config " + kDir + "/bad_cfg.json") == 2);
  write_text_file(kDir + "/bad_cfg2.json", "{\"unknown_key\": 1}\n");
  CHECK(run_cli("verify --quick --config " + kDir + "/bad_cfg2.json") == 2);
}
