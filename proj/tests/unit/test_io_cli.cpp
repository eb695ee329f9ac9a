#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "epslab/cli.hpp"
#include "epslab/io.hpp"
#include "epslab/report.hpp"

using namespace epslab;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "epslab");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("epslab_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("vector json round trip") {
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    const DirectSumVector u = random_direct_sum(rng, 40, 9, 6, 5);
    CHECK(direct_sum_from_json(Json::parse(to_json(u).dump())) == u);
  }
  const Json bare = Json::parse(R"({"coeffs":[{"i":2,"re":1.5}]})");
  CHECK(direct_sum_from_json(bare) == DirectSumVector{{0, CoeffVector::basis(2, 1.5)}});
  CHECK_THROWS_AS(direct_sum_from_json(Json::parse(R"({"blocks":[{"coeffs":[]}]})")), FormatError);
  CHECK_THROWS_AS(direct_sum_from_json(Json::parse(R"({"blocks":[{"n":-1,"coeffs":[]}]})")), FormatError);
  CHECK(to_json(NormSpec::sup()) == Json::parse(R"({"kind":"sup"})"));
  CHECK(norm_spec_from_json(Json::parse(R"({"kind":"lp","p":2.0})")) == NormSpec::lp(2.0));
}

TEST_CASE("plan json round trip and hash") {
  const BlockPlan plan = plan_blocks(0.3, NormSpec::lp(2.0), 5);
  const BlockPlan back = plan_from_json(Json::parse(to_json(plan).dump()));
  CHECK(plan_hash(back) == plan_hash(plan));
  CHECK(back.max_weight() == plan.max_weight());
  CHECK(plan_hash(plan) != plan_hash(plan_blocks(0.3, NormSpec::lp(2.0), 4)));

  Json bad = to_json(plan);
  bad["blocks"][1]["m"] = 1;
  CHECK_THROWS_AS(plan_from_json(bad), DomainError);
}

TEST_CASE("csv rows") {
  CHECK(rows_to_csv({}) == "check_id,k_or_n,value,bound,slack,pass\n");
  const std::string csv = rows_to_csv({{"b", 2, 1.0, 2.0, 1.0, true}, {"a", 9, 0.5, 0.0, -0.5, false},
                                       {"b", 1, 0.1, 0.2, 0.1, true}});
  CHECK(csv == "check_id,k_or_n,value,bound,slack,pass\n"
               "a,9,0.5,0,-0.5,false\n"
               "b,1,0.10000000000000001,0.20000000000000001,0.10000000000000001,true\n"
               "b,2,1,2,1,true\n");
}

TEST_CASE("cli omega") {
  const Run r = cli({"omega", "--eps", "0.5", "--norm", "lp:2"});
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["results"]["omega"].get<double>() == doctest::Approx(0.5773502692).epsilon(1e-9));
  CHECK(j["tool"] == "epslab");
  CHECK(j["version"] == kToolVersion);
  CHECK(j["pass"] == true);
}

TEST_CASE("cli plan and lower bound on the zero vector") {
  const fs::path dir = scratch("plan");
  CHECK(cli({"plan", "--eps", "0.5", "--norm", "lp:1", "--blocks", "1", "--out", (dir / "plan.json").string()}).code == 0);
  const BlockPlan plan = plan_from_json(read_json_file(dir / "plan.json"));
  CHECK(plan.m(1) == 0);
  CHECK(plan.block(1).r == 2);
  CHECK(plan.m(2) == 4);

  write_text_file(dir / "zero.json", R"({"blocks":[]})");
  const Run r = cli({"verify-lower", "--plan", (dir / "plan.json").string(), "--vector", (dir / "zero.json").string(),
                     "--delta", "0.25", "--horizon", "10"});
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["results"]["min_ratio"].get<double>() == 1.0);
  CHECK(j["plan_hash"] == plan_hash(plan));
}

TEST_CASE("cli exit codes") {
  const fs::path dir = scratch("codes");
  CHECK(cli({"--help"}).code == 0);
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"omega", "--eps", "1.5"}).code == 2);
  CHECK(cli({"omega", "--eps", "0.5", "--norm", "lp:0"}).code == 2);
  CHECK(cli({"verify-lower", "--plan", (dir / "missing.json").string(), "--vector", "x", "--delta", "0.1",
             "--horizon", "3"}).code == 2);

  CHECK(cli({"plan", "--eps", "0.5", "--blocks", "2", "--out", (dir / "plan.json").string()}).code == 0);
  write_text_file(dir / "zero.json", R"({"blocks":[]})");
  const Run bad_delta = cli({"verify-lower", "--plan", (dir / "plan.json").string(), "--vector",
                             (dir / "zero.json").string(), "--delta", "0.7", "--horizon", "5"});
  CHECK(bad_delta.code == 2);

  // A failing check: a residual tolerance below what doubles can resolve.
  const Run strict = cli({"omega", "--eps", "0.37", "--norm", "lp:3", "--tol", "1e-300"});
  CHECK(strict.code == 1);
  CHECK(strict.err.find("residual") != std::string::npos);
}

TEST_CASE("cli witness, intervals and report are deterministic") {
  const fs::path dir = scratch("determinism");
  CHECK(cli({"plan", "--eps", "0.5", "--norm", "lp:1", "--blocks", "3", "--out", (dir / "plan.json").string()}).code == 0);
  const std::string plan = (dir / "plan.json").string();
  write_text_file(dir / "u.json",
                  R"({"blocks":[{"n":0,"coeffs":[{"i":0,"re":1.0}]},{"n":5,"coeffs":[{"i":0,"re":0.7},{"i":1,"re":1.0}]}]})");
  const std::string vec = (dir / "u.json").string();

  for (int pass = 0; pass < 2; ++pass) {
    const std::string tag = std::to_string(pass);
    CHECK(cli({"verify-witness", "--plan", plan, "--random", "3", "--seed", "42", "--out",
               (dir / ("w" + tag + ".json")).string()}).code == 0);
    CHECK(cli({"l1-intervals", "--plan", plan, "--vector", vec, "--horizon", "15", "--probe", "30", "--out",
               (dir / ("l" + tag + ".json")).string()}).code == 0);
    CHECK(cli({"report", "--out-dir", (dir / ("r" + tag)).string(), "--eps-grid", "5", "--plan", plan, "--vector", vec,
               "--deltas", "3"}).code == 0);
  }
  for (const char* f : {"w0.json", "w0.csv", "l0.json", "l0.csv"}) {
    std::string other = f;
    other[1] = '1';
    CHECK(slurp(dir / f) == slurp(dir / other));
    CHECK_FALSE(slurp(dir / f).empty());
  }
  for (const char* f : {"omega_curve.csv", "delta_curve.csv", "report.json", "checks.csv"}) {
    CHECK(slurp(dir / "r0" / f) == slurp(dir / "r1" / f));
  }
  // One witness row pair per target: 3 random targets for each of 3 blocks.
  const std::string csv = slurp(dir / "w0.csv");
  std::size_t approx_rows = 0;
  for (std::size_t at = csv.find("witness.approx."); at != std::string::npos; at = csv.find("witness.approx.", at + 1)) {
    ++approx_rows;
  }
  CHECK(approx_rows == 9);
  CHECK(cli({"verify-witness", "--plan", plan, "--random", "3", "--seed", "43", "--out",
             (dir / "w2.json").string()}).code == 0);
  CHECK(slurp(dir / "w0.json") != slurp(dir / "w2.json"));
}

TEST_CASE("cli orbit") {
  const fs::path dir = scratch("orbit");
  CHECK(cli({"plan", "--eps", "0.5", "--blocks", "2", "--out", (dir / "plan.json").string()}).code == 0);
  write_text_file(dir / "u.json", R"({"blocks":[{"n":3,"coeffs":[{"i":1,"re":1.0}]}]})");
  const Run r = cli({"orbit", "--plan", (dir / "plan.json").string(), "--vector", (dir / "u.json").string(),
                     "--powers", "1,4"});
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["results"]["orbit"].size() == 2);
  CHECK(j["results"]["orbit"][1]["vector"]["blocks"].empty());
}
