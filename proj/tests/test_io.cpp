// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "iodir/error.hpp"
#include "iodir/io.hpp"
#include "iodir/random.hpp"

using namespace iodir;
using namespace iodir::io;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
  fs::path p = fs::temp_directory_path() / ("iodir_io_" + tag + "_" + std::to_string(::getpid()));
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1.0 / 3.0) == "0.3333333333");
  CHECK(format_number(1e7) == "10000000");
}

TEST_CASE("matrix and operator round trips") {
  Rng rng(81);
  Matrix m = random_gaussian(3, 2, rng);
  CHECK((matrix_from_json(matrix_to_json(m)) - m).norm() == 0.0);
  auto s = qtf_plus_control();
  auto op = operator_from_json(Json::parse(operator_to_json(s.op()).dump()));
  CHECK(op.layout() == s.layout());
  CHECK((op.matrix() - s.op().matrix()).norm() < 1e-15);
  auto s2 = setup_from_json(Json::parse(setup_to_json(s).dump()));
  CHECK(s2.labels(Role::GlobalOutput) == s.labels(Role::GlobalOutput));
  CHECK((s2.op().matrix() - s.op().matrix()).norm() < 1e-15);

  auto ch = random_bistochastic(2, rng);
  auto ch2 = channel_from_json(channel_to_json(ch));
  REQUIRE(ch2.kraus().size() == ch.kraus().size());
  for (std::size_t k = 0; k < ch.kraus().size(); ++k) CHECK((ch2.kraus()[k] - ch.kraus()[k]).norm() == 0.0);
}

TEST_CASE("malformed JSON is rejected") {
  CHECK_THROWS(matrix_from_json(Json::parse(R"({"re": [[1, 2], [3]], "im": [[0, 0], [0]]})")));
  CHECK_THROWS(matrix_from_json(Json::parse(R"({"im": [[1]]})")));
  CHECK(matrix_from_json(Json::parse(R"({"re": [[1]]})"))(0, 0) == Complex(1, 0));
  CHECK_THROWS(operator_from_json(Json::parse(R"({"labels": ["a"], "dims": [2], "re": [[1]], "im": [[0]]})")));
  CHECK_THROWS(operator_from_json(
      Json::parse(R"({"labels": ["a"], "dims": [2], "re": [[0, 1], [0, 0]], "im": [[0, 0], [0, 0]]})")));
  auto j = setup_to_json(qtf_plus_control());
  j["roles"]["A_I"] = "sideways";
  CHECK_THROWS(setup_from_json(j));
}

TEST_CASE("gate pairs round trip") {
  auto pairs = uniform_measure(builtin_gate_sets().all());
  auto back = pairs_from_json(pairs_to_json(pairs));
  REQUIRE(back.size() == pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    CHECK(back[k].pair.name == pairs[k].pair.name);
    CHECK(back[k].pair.tag == pairs[k].pair.tag);
    CHECK(back[k].weight == doctest::Approx(pairs[k].weight));
  }
  auto j = pairs_to_json(pairs);
  for (auto& e : j) e.erase("weight");
  auto uni = pairs_from_json(j);
  CHECK(uni[3].weight == doctest::Approx(1.0 / 21));
  j[0]["weight"] = 0.5;
  CHECK_THROWS(pairs_from_json(j));
}

TEST_CASE("witness round trip") {
  auto s = qtf_plus_control();
  Witness w{HermitianOperator::identity(s.layout()) * 0.25, std::nullopt};
  auto back = witness_from_json(witness_to_json(w));
  CHECK_FALSE(back.certificate.has_value());
  CHECK((back.op.matrix() - w.op.matrix()).norm() == 0.0);
  auto z = HermitianOperator::zero(s.layout());
  w.certificate = sdp::WitnessCertificate{w.op, z, z, z};
  back = witness_from_json(witness_to_json(w));
  REQUIRE(back.certificate.has_value());
  CHECK((back.certificate->w0.matrix() - w.op.matrix()).norm() == 0.0);
}

TEST_CASE("decomposition CSV") {
  Rng rng(82);
  HermitianOperator w(experiment_layout(), random_hermitian(32, rng));
  auto dec = decompose_witness(w, false);
  std::string csv = decomposition_to_csv(dec);
  CHECK(csv.rfind("a,b,c,d,e,coeff\n", 0) == 0);
  auto back = decomposition_from_csv(csv);
  CHECK_FALSE(back.restricted);
  REQUIRE(back.terms.size() == dec.terms.size());
  CHECK((reconstruct(back.terms).matrix() - w.matrix()).norm() < 1e-7);

  Decomposition r;
  r.restricted = true;
  r.terms = {{{0, 1, 2, kTraced, 3}, 0.25}, {{0, 0, 0, kTraced, 0}, -1.5}};
  std::string rc = decomposition_to_csv(r);
  CHECK(rc.rfind("b,c,e,coeff\n", 0) == 0);
  auto rb = decomposition_from_csv(rc);
  CHECK(rb.restricted);
  REQUIRE(rb.terms.size() == 2);
  CHECK(rb.terms[0].idx == r.terms[0].idx);
  CHECK(rb.terms[1].coeff == -1.5);

  CHECK_THROWS(decomposition_from_csv("a,b,c\n1,2,3\n"));
  CHECK_THROWS(decomposition_from_csv("a,b,c,d,e,coeff\n0,0,0,0,4,1\n"));
  CHECK_THROWS(decomposition_from_csv("a,b,c,d,e,coeff\n0,0,0,0,0,abc\n"));
}

TEST_CASE("probability CSV") {
  std::vector<ProbabilityRecord> ps(2);
  ps[0].idx = {0, 1, 2, 3, 0};
  ps[0].probability = 0.125;
  ps[1].idx = {0, 1, 2, kTraced, 0};
  ps[1].probability = 0.3;
  ps[1].counts = 30;
  ps[1].shots = 100;
  auto back = probabilities_from_csv(probabilities_to_csv(ps));
  REQUIRE(back.size() == 2);
  CHECK(back[0].probability == 0.125);
  CHECK(back[1].idx[3] == kTraced);
  CHECK(back[1].counts == 30);
  CHECK(back[1].probability == doctest::Approx(0.3));

  auto counted = probabilities_from_csv("a,b,c,d,e,probability,counts,shots\n0,0,0,0,0,0.9,25,100\n");
  CHECK(counted[0].probability == doctest::Approx(0.25));
  CHECK_THROWS(probabilities_from_csv("a,b,c,d,e,probability\n0,0,0,0,0,1.5\n"));
  CHECK_THROWS(probabilities_from_csv("a,b,c,d,e,probability\n0,0,0,0,0\n"));
}

TEST_CASE("atomic file writes") {
  auto dir = temp_dir("atomic");
  auto p = dir / "out.json";
  write_file_atomic(p, "first");
  write_file_atomic(p, "second");
  CHECK(read_file(p) == "second");
  for (const auto& e : fs::directory_iterator(dir)) CHECK(e.path().filename() == "out.json");
  CHECK_THROWS_AS(read_file(dir / "missing.json"), IoError);
  CHECK_THROWS_AS(write_file_atomic(dir / "no" / "such" / "dir.json", "x"), IoError);
  fs::remove_all(dir);
}
