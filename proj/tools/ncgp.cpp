// ncgp: command-line front end for the finite spectral geometry toolkit.
//
//   ncgp check <experiment|all> [--lambda X] [--mu X] [--n N] [--seed N] [--trials N] [--tol X] [--json PATH]
//   ncgp sweep wasserstein-rsquare [--lambda-steps N] [--csv PATH] [--json PATH]
//   ncgp distance (--input PATH | --triple NAME [--states I,J] [--character K]) [--lambda X] [--mu X] [--n N] [--tol X]
//   ncgp w1 [--input PATH | --lambda X]
//   ncgp khomology [--lambda X] [--mu X] [--json PATH]
//
// Exit status: 0 when every check passes, 1 when one fails, 2 on usage or
// input errors. NCGP_SEED supplies the seed when --seed is absent.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ncg/catalog.hpp"
#include "ncg/error.hpp"
#include "ncg/experiments.hpp"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::optional<double> lambda;
  std::optional<double> mu;
  std::optional<double> tol;
  std::optional<std::size_t> trials;
  std::optional<std::size_t> n;
  std::optional<std::size_t> lambda_steps;
  std::optional<std::uint64_t> seed;
  std::string json_path;
  std::string csv_path;
  std::string input_path;
  std::string triple;
  std::vector<std::size_t> states{0, 1};
  std::size_t character = 0;
  std::string target;
};

void add_params(CLI::App* sub, Options& o) {
  sub->add_option("--lambda", o.lambda, "Scale lambda of the two-point factor");
  sub->add_option("--mu", o.mu, "Scale mu of the amplified factor");
  sub->add_option("--tol", o.tol, "Tolerance");
  sub->add_option("--n", o.n, "Lattice size");
  sub->add_option("--seed", o.seed, "Seed (default: NCGP_SEED or 0)");
  sub->add_option("--trials", o.trials, "Number of random trials");
  sub->add_option("--json", o.json_path, "Also write JSON output to this file");
}

std::uint64_t resolve_seed(const Options& o) {
  if (o.seed) return *o.seed;
  if (const char* env = std::getenv("NCGP_SEED")) {
    try {
      std::size_t used = 0;
      const std::uint64_t v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw ncg::NcgError(ncg::ErrorKind::kInvalidInput, "NCGP_SEED is not an unsigned integer");
  }
  return 0;
}

ncg::ExperimentParams params_of(const Options& o) {
  ncg::ExperimentParams p;
  p.lambda = o.lambda;
  p.mu = o.mu;
  p.tol = o.tol;
  p.trials = o.trials;
  p.n = o.n;
  p.lambda_steps = o.lambda_steps;
  p.seed = resolve_seed(o);
  return p;
}

void emit(const ncg::Json& j, const std::string& path) {
  std::cout << j.dump(2) << '\n';
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw ncg::NcgError(ncg::ErrorKind::kInvalidInput, "cannot write " + path);
  out << j.dump(2) << '\n';
}

ncg::Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ncg::NcgError(ncg::ErrorKind::kInvalidInput, "cannot read " + path);
  try {
    return ncg::Json::parse(in);
  } catch (const ncg::Json::exception& e) {
    throw ncg::NcgError(ncg::ErrorKind::kInvalidInput, path + ": " + e.what());
  }
}

int cmd_check(const Options& o) {
  const ncg::ExperimentParams p = params_of(o);
  if (o.target == "all") {
    ncg::Json all = ncg::Json::array();
    bool pass = true;
    for (const std::string& id : ncg::experiment_ids()) {
      const ncg::ExperimentReport r = ncg::run_experiment(id, p);
      pass = pass && r.pass;
      all.push_back(ncg::to_json(r));
    }
    emit(all, o.json_path);
    return pass ? 0 : kExitFail;
  }
  if (!ncg::is_experiment(o.target)) {
    std::cerr << "ncgp: unknown experiment '" << o.target << "'; known:";
    for (const auto& id : ncg::experiment_ids()) std::cerr << ' ' << id;
    std::cerr << '\n';
    return kExitUsage;
  }
  const ncg::ExperimentReport r = ncg::run_experiment(o.target, p);
  emit(ncg::to_json(r), o.json_path);
  return r.pass ? 0 : kExitFail;
}

int cmd_sweep(const Options& o) {
  const ncg::SweepOutput s = ncg::run_sweep(o.target, params_of(o));
  if (o.csv_path.empty()) {
    std::cout << s.csv;
  } else {
    std::ofstream out(o.csv_path);
    if (!out) throw ncg::NcgError(ncg::ErrorKind::kInvalidInput, "cannot write " + o.csv_path);
    out << s.csv;
    std::cout << ncg::to_json(s.report).dump(2) << '\n';
  }
  if (!o.json_path.empty()) {
    std::ofstream out(o.json_path);
    out << ncg::to_json(s.report).dump(2) << '\n';
  }
  return s.report.pass ? 0 : kExitFail;
}

ncg::SpectralTriple catalog_triple(const Options& o) {
  const double lambda = o.lambda.value_or(1.0);
  const double mu = o.mu.value_or(1.0);
  const std::size_t n = o.n.value_or(5);
  const ncg::FiniteAlgebra c2 = ncg::FiniteAlgebra::commutative(2);
  if (o.triple == "two_point") return ncg::two_point(lambda);
  if (o.triple == "amplified_two_point") return ncg::amplified_two_point(mu);
  if (o.triple == "amplify") return ncg::amplify(ncg::two_point(lambda));
  if (o.triple == "product") return ncg::product(ncg::two_point(lambda), ncg::amplified_two_point(mu));
  if (o.triple == "pullback") return ncg::as_triple(ncg::pullback_module(ncg::Character::coordinate(c2, o.character)));
  if (o.triple == "pullback_plus") return ncg::as_triple(ncg::pullback_module(ncg::Character::coordinate(c2, 0)));
  if (o.triple == "pullback_minus") return ncg::as_triple(ncg::pullback_module(ncg::Character::coordinate(c2, 1)));
  if (o.triple == "lattice_line") return ncg::lattice_line(n, 1.0);
  if (o.triple == "two_sheeted_line") return ncg::two_sheeted_line(n, 1.0);
  if (o.triple == "product_two_sheeted") return ncg::product(ncg::two_point(lambda), ncg::two_sheeted_line(n, 1.0));
  throw ncg::NcgError(ncg::ErrorKind::kInvalidInput, "unknown triple '" + o.triple + "'");
}

int cmd_distance(const Options& o) {
  ncg::DistanceOptions opts;
  if (o.tol) opts.tol = *o.tol;
  if (!o.input_path.empty()) {
    const ncg::Json doc = read_json(o.input_path);
    if (!doc.contains("triple") || !doc.contains("states") || !doc.at("states").is_array() || doc.at("states").size() != 2) {
      throw ncg::NcgError(ncg::ErrorKind::kInvalidInput, "distance input needs \"triple\" and two \"states\"");
    }
    const ncg::SpectralTriple t = ncg::triple_from_json(doc.at("triple"));
    const ncg::State a = ncg::state_from_json(doc.at("states")[0], t.algebra());
    const ncg::State b = ncg::state_from_json(doc.at("states")[1], t.algebra());
    emit(ncg::to_json(ncg::spectral_distance(t, a, b, opts)), o.json_path);
    return 0;
  }
  if (o.triple.empty()) throw ncg::NcgError(ncg::ErrorKind::kInvalidInput, "distance needs --input or --triple");
  if (o.states.size() != 2) throw ncg::NcgError(ncg::ErrorKind::kInvalidInput, "--states takes two indices");
  const ncg::SpectralTriple t = catalog_triple(o);
  const auto pure = ncg::pure_states(t.algebra());
  for (std::size_t s : o.states) {
    if (s >= pure.size()) throw ncg::NcgError(ncg::ErrorKind::kInvalidInput, "state index out of range");
  }
  emit(ncg::to_json(ncg::spectral_distance(t, pure[o.states[0]], pure[o.states[1]], opts)), o.json_path);
  return 0;
}

int cmd_w1(const Options& o) {
  if (!o.input_path.empty()) {
    const ncg::Json doc = read_json(o.input_path);
    if (!doc.contains("space") || !doc.contains("mu") || !doc.contains("nu")) {
      throw ncg::NcgError(ncg::ErrorKind::kInvalidInput, "w1 input needs \"space\", \"mu\" and \"nu\"");
    }
    const ncg::FiniteMetricSpace space = ncg::space_from_json(doc.at("space"));
    emit(ncg::to_json(ncg::w1(space, ncg::measure_from_json(doc.at("mu")), ncg::measure_from_json(doc.at("nu")))),
         o.json_path);
    return 0;
  }
  // Default instance: the unit square with phi_lambda (x) phi_lambda against
  // the corner point mass.
  const double lambda = o.lambda.value_or(0.5);
  const ncg::FiniteMetricSpace segment = ncg::FiniteMetricSpace::euclidean({{0.0}, {1.0}});
  const ncg::FiniteMetricSpace square = ncg::product_space(segment, segment);
  const ncg::Measure m = ncg::segment_measure(lambda);
  const ncg::Measure corner = ncg::Measure::dirac(4, 0);
  ncg::Json out = ncg::to_json(ncg::w1(square, ncg::product_measure(m, m), corner));
  out["space"] = ncg::to_json(square);
  emit(out, o.json_path);
  return 0;
}

int cmd_khomology(const Options& o) {
  const ncg::ExperimentReport r = ncg::run_experiment("khomology", params_of(o));
  emit(r.computed.at("table"), o.json_path);
  return r.pass ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral distances, Pythagoras inequalities, Wasserstein-1 and K-homology pairings on finite spectral triples"};
  app.require_subcommand(1);
  Options o;

  CLI::App* check = app.add_subcommand("check", "Run a named experiment (or 'all') and print its report");
  check->add_option("experiment", o.target, "Experiment id")->required();
  add_params(check, o);

  CLI::App* sweep = app.add_subcommand("sweep", "Run a parameter sweep and print CSV");
  sweep->add_option("experiment", o.target, "Sweep id")->required();
  sweep->add_option("--lambda-steps", o.lambda_steps, "Number of lambda steps in (0, 1]");
  sweep->add_option("--csv", o.csv_path, "Write CSV to this file instead of stdout");
  add_params(sweep, o);

  CLI::App* distance = app.add_subcommand("distance", "Spectral distance between two states");
  distance->add_option("--input", o.input_path, "JSON file with \"triple\" and \"states\"");
  distance->add_option("--triple", o.triple,
                       "Catalog triple: two_point, amplified_two_point, amplify, product, pullback, pullback_plus, "
                       "pullback_minus, lattice_line, two_sheeted_line, product_two_sheeted");
  distance->add_option("--states", o.states, "Indices of two pure states")->delimiter(',');
  distance->add_option("--character", o.character, "Coordinate character of C^2 for 'pullback' (0 or 1)");
  add_params(distance, o);

  CLI::App* w1 = app.add_subcommand("w1", "Wasserstein-1 distance on a finite metric space");
  w1->add_option("--input", o.input_path, "JSON file with \"space\", \"mu\", \"nu\"");
  add_params(w1, o);

  CLI::App* khom = app.add_subcommand("khomology", "Pairing table of the catalog Fredholm modules");
  add_params(khom, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (check->parsed()) return cmd_check(o);
    if (sweep->parsed()) return cmd_sweep(o);
    if (distance->parsed()) return cmd_distance(o);
    if (w1->parsed()) return cmd_w1(o);
    if (khom->parsed()) return cmd_khomology(o);
  } catch (const ncg::NcgError& e) {
    std::cerr << "ncgp: " << e.what() << '\n';
    return e.kind() == ncg::ErrorKind::kInvalidInput || e.kind() == ncg::ErrorKind::kDimensionMismatch ||
                   e.kind() == ncg::ErrorKind::kUnsupported
               ? kExitUsage
               : kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "ncgp: internal error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}
