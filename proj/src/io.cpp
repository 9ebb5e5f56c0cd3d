#include "stratafold/io.hpp"

#include <fstream>
#include <sstream>

namespace stratafold::io {

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object()) throw InvalidSpec("expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) throw InvalidSpec(std::string("missing key \"") + key + "\"");
  return *it;
}

double number(const Json& j, const std::string& what) {
  if (!j.is_number()) throw InvalidSpec(what + ": expected a number");
  return j.get<double>();
}

int dimension(const Json& j) {
  const Json& d = require(j, "dim");
  if (!d.is_number_integer() || d.get<long long>() < 1) throw InvalidSpec("\"dim\" must be a positive integer");
  return d.get<int>();
}

int index(const Json& j, int dim) {
  if (!j.is_number_integer()) throw InvalidSpec("structure constant index must be an integer");
  const long long i = j.get<long long>();
  if (i < 0 || i >= dim) throw InvalidSpec("structure constant index out of range");
  return static_cast<int>(i);
}

}  // namespace

Json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidSpec("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_json(buf.str());
  } catch (const InvalidSpec& e) {
    throw InvalidSpec(path.string() + ": " + e.what());
  }
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidSpec(std::string("malformed JSON: ") + e.what());
  }
}

exterior::LieAlgebra lie_algebra_from_json(const Json& j) {
  const int n = dimension(j);
  if (n > exterior::kMaxDim) throw InvalidSpec("\"dim\" too large");
  std::vector<exterior::StructureConstant> entries;
  const auto it = j.find("c");
  if (it != j.end()) {
    if (!it->is_array()) throw InvalidSpec("\"c\" must be an array");
    for (const Json& e : *it) {
      if (!e.is_array() || e.size() != 4) throw InvalidSpec("\"c\" entries must be [i, j, k, value]");
      entries.push_back({index(e[0], n), index(e[1], n), index(e[2], n), number(e[3], "structure constant")});
    }
  }
  return exterior::LieAlgebra::from_entries(n, entries);
}

Json to_json(const exterior::LieAlgebra& alg) {
  const int n = alg.dim();
  Json c = Json::array();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (alg.c(i, j, k) != 0.0) c.push_back({i, j, k, alg.c(i, j, k)});
  return {{"dim", n}, {"c", c}};
}

clifford::MetricSpec metric_from_json(const Json& j) {
  const int n = dimension(j);
  const Json& g = require(j, "g");
  if (!g.is_array() || static_cast<int>(g.size()) != n) throw InvalidSpec("\"g\" must have dim rows");
  Eigen::MatrixXd m(n, n);
  for (int r = 0; r < n; ++r) {
    if (!g[r].is_array() || static_cast<int>(g[r].size()) != n) throw InvalidSpec("\"g\" must have dim columns");
    for (int c = 0; c < n; ++c) m(r, c) = number(g[r][c], "metric entry");
  }
  return clifford::MetricSpec(std::move(m));
}

qgeom::Matrix complex_matrix_from_json(const Json& j, int n) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) throw InvalidSpec("matrix must have dim rows");
  qgeom::Matrix m(n, n);
  for (int r = 0; r < n; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != n) throw InvalidSpec("matrix must have dim columns");
    for (int c = 0; c < n; ++c) {
      const Json& e = j[r][c];
      if (e.is_number()) {
        m(r, c) = e.get<double>();
      } else if (e.is_array() && e.size() == 2) {
        m(r, c) = qgeom::Complex(number(e[0], "real part"), number(e[1], "imaginary part"));
      } else {
        throw InvalidSpec("matrix entries must be numbers or [re, im]");
      }
    }
  }
  return m;
}

Json complex_matrix_to_json(const qgeom::Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

qgeom::LindbladSpec lindblad_from_json(const Json& j) {
  const int n = dimension(j);
  if (n > 64) throw InvalidSpec("\"dim\" too large");
  qgeom::Matrix h = qgeom::Matrix::Zero(n, n);
  if (const auto it = j.find("H"); it != j.end()) h = complex_matrix_from_json(*it, n);
  std::vector<qgeom::Matrix> v;
  if (const auto it = j.find("V"); it != j.end()) {
    if (!it->is_array()) throw InvalidSpec("\"V\" must be an array of matrices");
    for (const Json& e : *it) v.push_back(complex_matrix_from_json(e, n));
  }
  return qgeom::LindbladSpec(qgeom::HermitianOperator(h, 1e-10), std::move(v));
}

Json to_json(const qgeom::LindbladSpec& spec) {
  Json v = Json::array();
  for (const qgeom::Matrix& m : spec.collapse()) v.push_back(complex_matrix_to_json(m));
  return {{"dim", spec.dim()}, {"H", complex_matrix_to_json(spec.hamiltonian().matrix())}, {"V", v}};
}

qgeom::DensityState state_from_json(const Json& j, int n) {
  if (!j.is_object()) throw InvalidSpec("initial state must be an object");
  const bool has_coords = j.contains("coords"), has_rho = j.contains("rho");
  if (has_coords == has_rho) throw InvalidSpec("initial state needs exactly one of \"coords\" or \"rho\"");
  if (has_rho) return qgeom::DensityState(complex_matrix_from_json(j["rho"], n));
  const Json& c = j["coords"];
  if (!c.is_array()) throw InvalidSpec("\"coords\" must be an array");
  const int len = static_cast<int>(c.size());
  if (len != n * n - 1 && len != n * n) throw InvalidSpec("\"coords\" must have n^2 - 1 or n^2 entries");
  Eigen::VectorXd x(len);
  for (int i = 0; i < len; ++i) x[i] = number(c[i], "coordinate");
  return qgeom::DensityState::from_coords(n, x);
}

statgeom::ProbabilityVector probability_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw InvalidSpec("probability vector must be a non-empty array");
  Eigen::VectorXd p(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) p[static_cast<Eigen::Index>(i)] = number(j[i], "probability");
  return statgeom::ProbabilityVector(std::move(p), 1e-10);
}

}  // namespace stratafold::io
