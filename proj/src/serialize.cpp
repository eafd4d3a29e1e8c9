#include "alloy/serialize.hpp"

namespace alloy {

Json matrix_to_json(const Matrix& m) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json re_row = Json::array(), im_row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      re_row.push_back(m(i, j).real());
      im_row.push_back(m(i, j).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", std::move(re)},
              {"im", std::move(im)}};
}

Matrix matrix_from_json(const Json& j) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(i, c) = Complex(re.at(static_cast<size_t>(i)).at(static_cast<size_t>(c)).get<double>(),
                        im.at(static_cast<size_t>(i)).at(static_cast<size_t>(c)).get<double>());
    }
  }
  if (!m.allFinite()) throw std::invalid_argument("matrix_from_json: non-finite entries");
  return m;
}

Json algebra_to_json(const StarAlgebra& alg) {
  Json basis = Json::array();
  for (const auto& b : alg.basis()) basis.push_back(matrix_to_json(b));
  return Json{{"ambient_dim", alg.ambient_dim()},
              {"unital", alg.unital()},
              {"tol", alg.tol()},
              {"basis", std::move(basis)}};
}

AlgebraPtr algebra_from_json(const Json& j) {
  std::vector<Matrix> basis;
  for (const auto& b : j.at("basis")) basis.push_back(matrix_from_json(b));
  return std::make_shared<StarAlgebra>(j.at("ambient_dim").get<int>(), std::move(basis),
                                       j.at("unital").get<bool>(),
                                       j.at("tol").get<double>());
}

Json verdict_to_json(const BlendVerdict& v) {
  return Json{{"is_blend", v.is_blend},     {"is_alloy", v.is_alloy},
              {"is_strict", v.is_strict},   {"rank_ij", v.rank_ij},
              {"rank_ji", v.rank_ji},       {"dim_X", v.dim_X},
              {"dim_A_tensor_B", v.dim_A_tensor_B}};
}

Json fundamental_data_to_json(const FundamentalData& fd) {
  return Json{{"A", algebra_to_json(*fd.A)},
              {"pi", matrix_to_json(fd.pi)},
              {"h", matrix_to_json(fd.A->from_coords(fd.h))}};
}

FundamentalData fundamental_data_from_json(const Json& j) {
  AlgebraPtr A = algebra_from_json(j.at("A"));
  Matrix pi = matrix_from_json(j.at("pi"));
  Vector h = A->decompose(matrix_from_json(j.at("h")));
  FundamentalData fd{std::move(A), std::move(pi), std::move(h)};
  fd.validate();
  return fd;
}

Json expectation_report_to_json(const CondExpReport& rep) {
  Json residuals = Json::object();
  for (const auto& [key, value] : rep.residuals) residuals[key] = value;
  return Json{{"h_spectrum", rep.h_spectrum},
              {"alpha", rep.alpha},
              {"covariant", rep.covariant},
              {"faithful", rep.faithful},
              {"residuals", std::move(residuals)}};
}

}  // namespace alloy
