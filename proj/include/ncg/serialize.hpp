#pragma once

#include "json.hpp"
#include "ncg/algebra.hpp"
#include "ncg/distance.hpp"
#include "ncg/khomology.hpp"
#include "ncg/matrix.hpp"
#include "ncg/spectral_triple.hpp"
#include "ncg/wasserstein.hpp"

namespace ncg {

using Json = nlohmann::json;

// Decoders throw NcgError(kInvalidInput) on malformed documents and run the
// usual constructors, so every invariant is rechecked on load. Doubles
// round-trip exactly.

/// {"rows": r, "cols": c, "entries": [[re, im], ...]} row-major.
Json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

/// {"blocks": [...]} plus "factors": [first, second] for tensor products.
Json to_json(const FiniteAlgebra& a);
FiniteAlgebra algebra_from_json(const Json& j);

/// {"algebra": ..., "blocks": [matrix, ...]}.
Json to_json(const AlgebraElement& a);
AlgebraElement element_from_json(const Json& j);

/// {"algebra": ..., "hilbert_dim": n, "basis_images": {"0": [matrix, ...], ...}}
/// with the images of block b listed as E_00, E_01, ..., row-major.
Json to_json(const Representation& r);
Representation representation_from_json(const Json& j);

/// {"algebra": ..., "densities": [matrix, ...]}.
Json to_json(const State& s);
State state_from_json(const Json& j, const FiniteAlgebra& algebra);
State state_from_json(const Json& j);

/// {"algebra", "representation", "dirac", "grading" (matrix or null)}.
Json to_json(const SpectralTriple& t);
SpectralTriple triple_from_json(const Json& j);

/// {"representation", "F", "grading"}.
Json to_json(const FredholmModule& m);

/// Finite numbers stay numbers; +inf is written as the string "inf".
Json extended_real(double v);
double extended_real_from_json(const Json& j);

/// {"lower", "upper", "status", "optimizer"}.
Json to_json(const DistanceResult& r);

/// {"labels", "coords", "dist"}.
Json to_json(const FiniteMetricSpace& s);
FiniteMetricSpace space_from_json(const Json& j);
/// {"weights": [...]}, or a bare array of weights on input.
Json to_json(const Measure& m);
Measure measure_from_json(const Json& j);

/// {"value", "primal", "dual", "potential", "plan"}.
Json to_json(const W1Result& r);

}  // namespace ncg
