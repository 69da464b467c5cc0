#include "ncg/serialize.hpp"

#include <cmath>
#include <string>

#include "ncg/error.hpp"

namespace ncg {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw NcgError(ErrorKind::kInvalidInput, "json: " + what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::vector<ComplexMatrix> matrices_from_json(const Json& j) {
  if (!j.is_array()) malformed("expected an array of matrices");
  std::vector<ComplexMatrix> out;
  out.reserve(j.size());
  for (const auto& m : j) out.push_back(matrix_from_json(m));
  return out;
}

Json to_json(const std::vector<ComplexMatrix>& ms) {
  Json out = Json::array();
  for (const auto& m : ms) out.push_back(to_json(m));
  return out;
}

}  // namespace

Json to_json(const ComplexMatrix& m) {
  Json entries = Json::array();
  for (const Complex& z : m.entries()) entries.push_back({z.real(), z.imag()});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  try {
    const auto rows = field(j, "rows").get<std::size_t>();
    const auto cols = field(j, "cols").get<std::size_t>();
    const Json& entries = field(j, "entries");
    if (!entries.is_array() || entries.size() != rows * cols) malformed("matrix entry count does not match rows x cols");
    std::vector<Complex> values;
    values.reserve(entries.size());
    for (const auto& e : entries) {
      if (e.is_number()) {
        values.emplace_back(e.get<double>(), 0.0);
      } else if (e.is_array() && e.size() == 2) {
        values.emplace_back(e[0].get<double>(), e[1].get<double>());
      } else {
        malformed("matrix entries must be [re, im] pairs");
      }
    }
    return ComplexMatrix(rows, cols, std::move(values));
  } catch (const nlohmann::json::exception& e) {
    malformed(e.what());
  }
}

Json to_json(const FiniteAlgebra& a) {
  Json out = {{"blocks", a.blocks()}};
  if (a.has_factorization()) out["factors"] = {to_json(a.first_factor()), to_json(a.second_factor())};
  return out;
}

FiniteAlgebra algebra_from_json(const Json& j) {
  try {
    FiniteAlgebra a(field(j, "blocks").get<std::vector<std::size_t>>());
    if (j.contains("factors")) {
      const Json& f = j.at("factors");
      if (!f.is_array() || f.size() != 2) malformed("\"factors\" must hold two algebras");
      FiniteAlgebra t = FiniteAlgebra::tensor(algebra_from_json(f[0]), algebra_from_json(f[1]));
      if (t.blocks() != a.blocks()) malformed("blocks disagree with the recorded factors");
      return t;
    }
    return a;
  } catch (const nlohmann::json::exception& e) {
    malformed(e.what());
  }
}

Json to_json(const AlgebraElement& a) { return {{"algebra", to_json(a.algebra())}, {"blocks", to_json(a.blocks())}}; }

AlgebraElement element_from_json(const Json& j) {
  return AlgebraElement(algebra_from_json(field(j, "algebra")), matrices_from_json(field(j, "blocks")));
}

Json to_json(const Representation& r) {
  Json images = Json::object();
  for (std::size_t b = 0; b < r.images().size(); ++b) images[std::to_string(b)] = to_json(r.images()[b]);
  return {{"algebra", to_json(r.algebra())}, {"hilbert_dim", r.hilbert_dim()}, {"basis_images", std::move(images)}};
}

Representation representation_from_json(const Json& j) {
  try {
    FiniteAlgebra algebra = algebra_from_json(field(j, "algebra"));
    const auto dim = field(j, "hilbert_dim").get<std::size_t>();
    const Json& images = field(j, "basis_images");
    std::vector<std::vector<ComplexMatrix>> out;
    for (std::size_t b = 0; b < algebra.block_count(); ++b) {
      out.push_back(matrices_from_json(field(images, std::to_string(b).c_str())));
    }
    return Representation::make(std::move(algebra), dim, std::move(out));
  } catch (const nlohmann::json::exception& e) {
    malformed(e.what());
  }
}

Json to_json(const State& s) { return {{"algebra", to_json(s.algebra())}, {"densities", to_json(s.densities())}}; }

State state_from_json(const Json& j, const FiniteAlgebra& algebra) {
  if (j.contains("algebra") && !(algebra_from_json(j.at("algebra")) == algebra)) malformed("state lives on another algebra");
  return State::make(algebra, matrices_from_json(field(j, "densities")));
}

State state_from_json(const Json& j) {
  return State::make(algebra_from_json(field(j, "algebra")), matrices_from_json(field(j, "densities")));
}

Json to_json(const SpectralTriple& t) {
  return {{"algebra", to_json(t.algebra())},
          {"representation", to_json(t.rep())},
          {"dirac", to_json(t.dirac().matrix())},
          {"grading", t.grading() ? to_json(*t.grading()) : Json(nullptr)}};
}

SpectralTriple triple_from_json(const Json& j) {
  Representation rep = representation_from_json(field(j, "representation"));
  if (j.contains("algebra") && !(algebra_from_json(j.at("algebra")) == rep.algebra())) {
    malformed("triple algebra differs from its representation's algebra");
  }
  std::optional<ComplexMatrix> grading;
  if (j.contains("grading") && !j.at("grading").is_null()) grading = matrix_from_json(j.at("grading"));
  return SpectralTriple::make(std::move(rep), matrix_from_json(field(j, "dirac")), std::move(grading));
}

Json to_json(const FredholmModule& m) {
  return {{"representation", to_json(m.rep())}, {"F", to_json(m.f())}, {"grading", to_json(m.grading())}};
}

Json extended_real(double v) {
  if (std::isinf(v) && v > 0) return "inf";
  if (std::isinf(v)) return "-inf";
  return v;
}

double extended_real_from_json(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInfinity;
    if (s == "-inf") return -kInfinity;
    malformed("unknown extended real \"" + s + "\"");
  }
  if (!j.is_number()) malformed("expected a number or \"inf\"");
  return j.get<double>();
}

Json to_json(const DistanceResult& r) {
  return {{"lower", extended_real(r.lower)},
          {"upper", extended_real(r.upper)},
          {"status", std::string(to_string(r.status))},
          {"optimizer", to_json(r.optimizer)}};
}

Json to_json(const FiniteMetricSpace& s) {
  return {{"labels", s.labels()}, {"coords", s.coords()}, {"dist", s.distances()}};
}

FiniteMetricSpace space_from_json(const Json& j) {
  try {
    if (j.contains("dist")) {
      const auto dist = j.at("dist").get<std::vector<std::vector<double>>>();
      std::vector<std::string> labels;
      if (j.contains("labels")) {
        labels = j.at("labels").get<std::vector<std::string>>();
      } else {
        for (std::size_t i = 0; i < dist.size(); ++i) labels.push_back(std::to_string(i));
      }
      std::vector<std::vector<double>> coords;
      if (j.contains("coords")) coords = j.at("coords").get<std::vector<std::vector<double>>>();
      return FiniteMetricSpace::make(std::move(labels), std::move(coords), dist);
    }
    return FiniteMetricSpace::euclidean(field(j, "coords").get<std::vector<std::vector<double>>>());
  } catch (const nlohmann::json::exception& e) {
    malformed(e.what());
  }
}

Json to_json(const Measure& m) { return {{"weights", m.weights()}}; }

Measure measure_from_json(const Json& j) {
  try {
    if (j.is_array()) return Measure::make(j.get<std::vector<double>>());
    return Measure::make(field(j, "weights").get<std::vector<double>>());
  } catch (const nlohmann::json::exception& e) {
    malformed(e.what());
  }
}

Json to_json(const W1Result& r) {
  return {{"value", r.value},
          {"primal", r.primal_value},
          {"dual", r.dual_value},
          {"potential", r.potential},
          {"plan", r.plan}};
}

}  // namespace ncg
