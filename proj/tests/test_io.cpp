#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "stratafold/io.hpp"
#include "support/quantum.hpp"

using namespace stratafold;
using io::Json;

TEST_CASE("lie algebra from json") {
  const auto so3 = io::lie_algebra_from_json(io::parse_json(R"({"dim": 3, "c": [[0,1,2,1],[1,2,0,1],[2,0,1,1]]})"));
  const auto ref = exterior::LieAlgebra::so3();
  CHECK(so3.constants() == ref.constants());
  CHECK(io::lie_algebra_from_json(io::to_json(ref)).constants() == ref.constants());
  const auto abelian = io::lie_algebra_from_json(io::parse_json(R"({"dim": 2})"));
  CHECK(abelian.constants() == std::vector<double>(8, 0.0));

  CHECK_THROWS_AS(io::lie_algebra_from_json(io::parse_json(R"({"dim": 3, "c": [[0,1,2,1],[1,2,0,1],[2,0,0,1]]})")),
                  InvalidSpec);
  CHECK_THROWS_AS(io::lie_algebra_from_json(io::parse_json(R"({"c": []})")), InvalidSpec);
  CHECK_THROWS_AS(io::lie_algebra_from_json(io::parse_json(R"({"dim": 3, "c": [[0,3,1,1]]})")), InvalidSpec);
  CHECK_THROWS_AS(io::lie_algebra_from_json(io::parse_json(R"({"dim": 3, "c": [[0,1,2]]})")), InvalidSpec);
  CHECK_THROWS_AS(io::lie_algebra_from_json(io::parse_json(R"({"dim": 3, "c": [[0,1,2,"x"]]})")), InvalidSpec);
  CHECK_THROWS_AS(io::lie_algebra_from_json(io::parse_json(R"({"dim": -2})")), InvalidSpec);
  CHECK_THROWS_AS(io::parse_json("{\"dim\": 3,"), InvalidSpec);
}

TEST_CASE("metric from json") {
  const auto m = io::metric_from_json(io::parse_json(R"({"dim": 2, "g": [[-1, 0], [0, 1]]})"));
  CHECK(m.negative() == 1);
  CHECK(m.positive() == 1);
  CHECK_THROWS_AS(io::metric_from_json(io::parse_json(R"({"dim": 2, "g": [[1, 2], [0, 1]]})")), InvalidSpec);
  CHECK_THROWS_AS(io::metric_from_json(io::parse_json(R"({"dim": 2, "g": [[1, 0]]})")), InvalidSpec);
}

TEST_CASE("lindblad spec and states from json") {
  const Json j = io::parse_json(R"({
    "dim": 2,
    "H": [[0, [0, -1]], [[0, 1], 0]],
    "V": [[[0.5, 0], [0, 0]], [[0, 0], [0, -0.5]]]
  })");
  const qgeom::LindbladSpec spec = io::lindblad_from_json(j);
  CHECK((spec.hamiltonian().matrix() - qgeom::HermitianOperator::pauli(2).matrix()).norm() == 0.0);
  REQUIRE(spec.collapse().size() == 2);
  CHECK(spec.collapse()[1](1, 1) == qgeom::Complex(-0.5, 0));

  testsupport::Rng rng(70);
  const qgeom::LindbladSpec r = testsupport::random_spec(rng, 3);
  const qgeom::LindbladSpec back = io::lindblad_from_json(io::parse_json(io::to_json(r).dump()));
  CHECK((back.hamiltonian().matrix() - r.hamiltonian().matrix()).norm() == 0.0);
  REQUIRE(back.collapse().size() == r.collapse().size());
  for (std::size_t k = 0; k < r.collapse().size(); ++k) CHECK((back.collapse()[k] - r.collapse()[k]).norm() == 0.0);

  CHECK_THROWS_AS(io::lindblad_from_json(io::parse_json(R"({"dim": 2, "H": [[0, 1], [0, 0]]})")), InvalidSpec);
  CHECK_THROWS_AS(io::lindblad_from_json(io::parse_json(R"({"dim": 2, "V": [[[1]]]})")), InvalidSpec);
  CHECK_THROWS_AS(io::lindblad_from_json(io::parse_json(R"({"dim": 2, "H": [[0, [1, 2, 3]], [0, 0]]})")),
                  InvalidSpec);

  const auto s = io::state_from_json(io::parse_json(R"({"coords": [0, 0, 1]})"), 2);
  CHECK(s.rank() == 1);
  CHECK(s.matrix()(0, 0).real() == doctest::Approx(1.0));
  const auto full = io::state_from_json(io::parse_json(R"({"coords": [1, 0.5, 0, 0]})"), 2);
  CHECK(full.coords()[1] == doctest::Approx(0.5));
  const auto m = io::state_from_json(io::parse_json(R"({"rho": [[0.5, [0, -0.5]], [[0, 0.5], 0.5]]})"), 2);
  CHECK(m.coords()[2] == doctest::Approx(1.0));
  CHECK_THROWS(io::state_from_json(io::parse_json(R"({"coords": [0, 0, 2]})"), 2));
  CHECK_THROWS_AS(io::state_from_json(io::parse_json(R"({"coords": [0, 0]})"), 2), InvalidSpec);
  CHECK_THROWS_AS(io::state_from_json(io::parse_json(R"({})"), 2), InvalidSpec);
  CHECK_THROWS_AS(io::state_from_json(io::parse_json(R"({"coords": [0,0,1], "rho": []})"), 2), InvalidSpec);
}

TEST_CASE("probability vectors from json") {
  const auto p = io::probability_from_json(io::parse_json("[0.25, 0.25, 0.5]"));
  CHECK(p.size() == 3);
  CHECK(p[2] == 0.5);
  CHECK_THROWS_AS(io::probability_from_json(io::parse_json("[0.5, 0.6]")), InvalidSpec);
  CHECK_THROWS_AS(io::probability_from_json(io::parse_json("[]")), InvalidSpec);
  CHECK_THROWS_AS(io::probability_from_json(io::parse_json("{\"p\": 1}")), InvalidSpec);
}

TEST_CASE("json files") {
  const auto path = std::filesystem::temp_directory_path() / "stratafold_io_test.json";
  {
    std::ofstream out(path);
    out << R"({"dim": 3, "c": [[0, 1, 2, 1]]})";
  }
  const auto h = io::lie_algebra_from_json(io::load_json(path));
  CHECK(h.c(1, 0, 2) == -1.0);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(io::load_json(path), InvalidSpec);
}
