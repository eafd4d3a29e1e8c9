#pragma once

#include <json.hpp>

#include "alloy/blend.hpp"
#include "alloy/cond_expectation.hpp"
#include "alloy/crossed_z2.hpp"
#include "alloy/star_algebra.hpp"

namespace alloy {

using Json = nlohmann::json;

// Matrices travel as {"rows": n, "cols": n, "re": [[..]], "im": [[..]]};
// round trips preserve values to full double precision.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

// Algebras travel as {"ambient_dim", "unital", "tol", "basis": [matrix...]}.
Json algebra_to_json(const StarAlgebra& alg);
AlgebraPtr algebra_from_json(const Json& j);

Json verdict_to_json(const BlendVerdict& v);

// Fundamental data: {"A": algebra, "pi": matrix on coordinates,
// "h": ambient Hermitian matrix}.
Json fundamental_data_to_json(const FundamentalData& fd);
FundamentalData fundamental_data_from_json(const Json& j);

Json expectation_report_to_json(const CondExpReport& rep);

}  // namespace alloy
