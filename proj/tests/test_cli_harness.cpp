#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "doctest.h"
#include "ncg/catalog.hpp"
#include "ncg/distance.hpp"
#include "ncg/error.hpp"
#include "ncg/experiments.hpp"
#include "ncg/random.hpp"
#include "ncg/serialize.hpp"

using namespace ncg;

namespace {

struct Run {
  int status;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string cmd = std::string(NCGP_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("ncg_cli_" + std::to_string(::getpid()) + "_" + name);
}

bool bit_equal(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

}  // namespace

TEST_CASE("random triples satisfy the triple axioms") {
  const std::array<RandomTripleSpec, 4> specs{{
      {{1, 1}, {1, 1}, 0},
      {{2}, {2}, 1},
      {{1, 2}, {2, 1}, 0},
      {{1, 1, 1}, {1, 1, 1}, 2},
  }};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const RandomTripleSpec& spec = specs[seed % specs.size()];
    const SpectralTriple t = random_triple(seed, spec);
    CHECK(t.unital() == (spec.padding == 0));
    REQUIRE(t.grading().has_value());
    const ComplexMatrix& g = *t.grading();
    CHECK(is_grading(g));
    CHECK(max_abs(anticommutator(g, t.dirac().matrix())) <= 1e-12);
    for (const auto& blk : t.rep().images())
      for (const ComplexMatrix& img : blk) CHECK(max_abs(commutator(g, img)) <= 1e-12);
    // same seed, same triple
    CHECK(bit_equal(random_triple(seed, spec).dirac().matrix(), t.dirac().matrix()));
  }
}

TEST_CASE("random states are faithful states") {
  Rng rng(100);
  for (int trial = 0; trial < 100; ++trial) {
    const FiniteAlgebra alg({1 + rng.index(3), 1 + rng.index(2)});
    const State s = random_state(rng, alg);
    Complex total = 0.0;
    for (const ComplexMatrix& d : s.densities()) {
      total += d.trace();
      CHECK(is_hermitian(d));
    }
    CHECK(std::abs(total - 1.0) <= 1e-14);
  }
}

TEST_CASE("reports are reproducible apart from runtime") {
  for (const std::string& id : experiment_ids()) {
    if (id == "theorem1" || id == "lemmas" || id == "two-sheeted-line") continue;
    ExperimentParams p;
    p.seed = 5;
    const ExperimentReport a = run_experiment(id, p);
    const ExperimentReport b = run_experiment(id, p);
    CHECK_MESSAGE(to_json(a, false) == to_json(b, false), id);
    CHECK_MESSAGE(a.pass, id);
    CHECK(to_json(a).contains("runtime"));
    CHECK_FALSE(to_json(a, false).contains("runtime"));
  }
  ExperimentParams p;
  p.seed = 11;
  p.trials = 5;
  CHECK(to_json(run_experiment("theorem1", p), false) == to_json(run_experiment("theorem1", p), false));
  p.trials = 20;
  CHECK(to_json(run_experiment("lemmas", p), false) == to_json(run_experiment("lemmas", p), false));
}

TEST_CASE("experiment registry") {
  const auto& ids = experiment_ids();
  CHECK(std::is_sorted(ids.begin(), ids.end()));
  for (const char* id : {"two-point", "amplified-two-point", "prop-indep", "prop-bound", "pullback-infinite",
                         "wasserstein-rsquare", "theorem1", "lemmas", "khomology", "two-sheeted-line"})
    CHECK(is_experiment(id));
  CHECK_FALSE(is_experiment("nope"));
  try {
    run_experiment("nope", {});
    FAIL("expected a throw");
  } catch (const NcgError& e) {
    CHECK(e.kind() == ErrorKind::kInvalidInput);
  }
  ExperimentParams p;
  p.lambda = 0.5;
  CHECK_THROWS_AS(run_experiment("prop-bound", p), NcgError);
}

TEST_CASE("wasserstein sweep csv") {
  ExperimentParams p;
  p.lambda_steps = 10;
  const SweepOutput s = run_sweep("wasserstein-rsquare", p);
  CHECK(s.report.pass);
  std::istringstream in(s.csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "lambda,W1,W2,W,ratio,k_lambda");
  int rows = 0;
  while (std::getline(in, line)) {
    double lambda, w1v, w2v, w, ratio, k;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf", &lambda, &w1v, &w2v, &w, &ratio, &k) == 6);
    ++rows;
    CHECK(lambda == doctest::Approx(rows / 10.0));
    CHECK(std::abs(ratio - k) <= 1e-9);
    CHECK(std::abs(w - std::sqrt(2.0) * lambda * k) <= 1e-12);
  }
  CHECK(rows == 10);
  CHECK_THROWS_AS(run_sweep("two-point", p), NcgError);
}

TEST_CASE("json round trips are exact") {
  Rng rng(101);
  const ComplexMatrix m = random_matrix(rng, 3, 4);
  CHECK(bit_equal(matrix_from_json(Json::parse(to_json(m).dump())), m));

  const SpectralTriple t = product(random_triple(rng, {{1, 2}, {1, 1}, 1}), two_point(0.37));
  const SpectralTriple back = triple_from_json(Json::parse(to_json(t).dump()));
  CHECK(bit_equal(back.dirac().matrix(), t.dirac().matrix()));
  CHECK(bit_equal(*back.grading(), *t.grading()));
  CHECK(back.algebra() == t.algebra());
  CHECK(back.algebra().has_factorization());
  for (std::size_t b = 0; b < t.rep().images().size(); ++b)
    for (std::size_t u = 0; u < t.rep().images()[b].size(); ++u)
      CHECK(bit_equal(back.rep().images()[b][u], t.rep().images()[b][u]));

  const State s = random_state(rng, t.algebra());
  const State s2 = state_from_json(Json::parse(to_json(s).dump()));
  for (std::size_t b = 0; b < s.densities().size(); ++b) CHECK(bit_equal(s.densities()[b], s2.densities()[b]));

  const SpectralTriple ungraded = amplified_two_point(1.0);
  const SpectralTriple u2 = triple_from_json(to_json(SpectralTriple::make(ungraded.rep(), ungraded.dirac().matrix(), std::nullopt)));
  CHECK_FALSE(u2.is_graded());

  CHECK(extended_real(kInfinity) == "inf");
  CHECK(std::isinf(extended_real_from_json("inf")));
  CHECK(extended_real_from_json(extended_real(0.25)) == 0.25);
  const Json inf = to_json(spectral_distance(as_triple(pullback_module(Character::coordinate(FiniteAlgebra::commutative(2), 0))),
                                             State::coordinate(FiniteAlgebra::commutative(2), 0),
                                             State::coordinate(FiniteAlgebra::commutative(2), 1)));
  CHECK(inf.at("lower") == "inf");
  CHECK(inf.at("status") == "infinite");
}

TEST_CASE("malformed json is rejected as invalid input") {
  for (const char* doc : {R"({"rows": 2})", R"({"rows": 1, "cols": 1, "entries": [[1]]})",
                          R"({"rows": 1, "cols": 2, "entries": [[1, 0]]})", R"([1, 2])"}) {
    try {
      matrix_from_json(Json::parse(doc));
      FAIL(doc);
    } catch (const NcgError& e) {
      CHECK(e.kind() == ErrorKind::kInvalidInput);
    }
  }
  // non-Hermitian Dirac operator survives parsing but fails validation
  Json t = to_json(two_point(1.0));
  t["dirac"]["entries"][1] = Json::array({5.0, 0.0});
  CHECK_THROWS_AS(triple_from_json(t), NcgError);
}

TEST_CASE("cli check, distance, w1 and sweep") {
  Run r = run_cli("check two-point --lambda 3");
  CHECK(r.status == 0);
  Json j = Json::parse(r.out);
  CHECK(j.at("pass") == true);
  CHECK(std::abs(j.at("computed").at("lower").get<double>() - 3.0) <= 1e-5);

  CHECK(run_cli("check no-such-experiment").status == 2);
  CHECK(run_cli("check two-point --lambda").status == 2);
  CHECK(run_cli("frobnicate").status == 2);
  CHECK(run_cli("check prop-bound --lambda 0.5").status == 2);

  for (const char* name : {"pullback_plus", "pullback_minus", "pullback --character 1"}) {
    r = run_cli(std::string("distance --triple ") + name);
    CHECK(r.status == 0);
    CHECK(Json::parse(r.out).at("upper") == "inf");
  }
  CHECK(run_cli("distance --triple pullback --character 2").status == 2);
  CHECK(run_cli("distance --triple nonesuch").status == 2);
  r = run_cli("distance --triple product --lambda 2 --states 0,2");
  CHECK(std::abs(Json::parse(r.out).at("lower").get<double>() - (std::sqrt(17.0) - 1.0) / 4.0) <= 1e-6);

  const auto input = scratch("distance.json");
  {
    std::ofstream f(input);
    f << Json{{"triple", to_json(two_point(2.5))},
              {"states", {to_json(State::coordinate(FiniteAlgebra::commutative(2), 0)),
                          to_json(State::coordinate(FiniteAlgebra::commutative(2), 1))}}}
             .dump();
  }
  r = run_cli("distance --input " + input.string());
  CHECK(r.status == 0);
  CHECK(std::abs(Json::parse(r.out).at("lower").get<double>() - 2.5) <= 1e-5);

  {
    std::ofstream f(input);
    f << R"({"space": {"coords": [[0], [2], [5]]}, "mu": [1, 0, 0], "nu": [0, 0.5, 0.5]})";
  }
  r = run_cli("w1 --input " + input.string());
  CHECK(r.status == 0);
  CHECK(std::abs(Json::parse(r.out).at("value").get<double>() - 3.5) <= 1e-12);

  {
    std::ofstream f(input);
    f << R"({"space": {"coords": [[0], [2]]}, "mu": [0.7, 0.7], "nu": [0, 1]})";
  }
  CHECK(run_cli("w1 --input " + input.string()).status == 2);
  {
    std::ofstream f(input);
    f << "{ not json";
  }
  CHECK(run_cli("w1 --input " + input.string()).status == 2);
  std::filesystem::remove(input);

  const auto csv = scratch("sweep.csv");
  r = run_cli("sweep wasserstein-rsquare --lambda-steps 5 --csv " + csv.string());
  CHECK(r.status == 0);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "lambda,W1,W2,W,ratio,k_lambda");
  std::filesystem::remove(csv);

  r = run_cli("khomology");
  CHECK(r.status == 0);
  j = Json::parse(r.out);
  REQUIRE(j.size() == 4);
  CHECK(j[2].at("module") == "F1");
  CHECK(std::abs(j[2].at("pairings").at("p-").get<double>() + 1.0) <= 1e-8);
}

TEST_CASE("cli seed comes from NCGP_SEED when not given") {
  const Run a = run_cli("check theorem1 --trials 3 --seed 9");
  const Run b = [] {
    ::setenv("NCGP_SEED", "9", 1);
    Run r = run_cli("check theorem1 --trials 3");
    ::unsetenv("NCGP_SEED");
    return r;
  }();
  REQUIRE(a.status == 0);
  Json ja = Json::parse(a.out), jb = Json::parse(b.out);
  ja.erase("runtime");
  jb.erase("runtime");
  CHECK(ja == jb);
}
