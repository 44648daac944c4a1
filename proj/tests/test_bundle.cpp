#include <doctest.h>

#include "support.hpp"
#include "wproj/bundle.hpp"
#include "wproj/error.hpp"

using namespace wproj;
using namespace wproj::test;

TEST_CASE("project_V and project_W normalize lines") {
  CHECK(sup(ComplexVec(project_V(pt({2.0, 0.0}, {1.0})).rep() - vec({1.0, 0.0}))) < 1e-15);
  CHECK(sup(ComplexVec(project_V(pt({0.0, 3.0 * I}, {1.0})).rep() - vec({0.0, 1.0}))) < 1e-15);
  CHECK(sup(ComplexVec(project_W(pt({1.0}, {5.0, 0.0})).rep() - vec({1.0, 0.0}))) < 1e-15);
  CHECK(sup(ComplexVec(project_W(pt({1.0}, {0.0, -2.0})).rep() - vec({0.0, 1.0}))) < 1e-15);

  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const HomPoint p = random_point(rng, 3, 2);
    const ProjPoint line = project_V(p);
    CHECK(std::abs(line.rep().norm() - 1.0) < 1e-12);
    CHECK(line.rep()[0].imag() == 0.0);
    CHECK(line.rep()[0].real() > 0.0);
    const HomPoint q = act(random_scalar(rng), p);
    CHECK(project_V(q).distance(line) <= 1e-12);
    CHECK(project_W(q).distance(project_W(p)) <= 1e-12);
  }
}

TEST_CASE("embed_tautological") {
  const TautVector t = embed_tautological(pt({1.0, 0.0}, {0.0, 3.0}));
  CHECK(sup(ComplexVec(t.base.rep() - vec({1.0, 0.0}))) < 1e-15);
  ComplexMat expected(2, 2);
  expected << 0.0, 3.0, 0.0, 0.0;
  CHECK(sup(ComplexMat(t.vec - expected)) == 0.0);

  const TautVector s = embed_tautological(pt({2.0}, {1.0, 1.0}));
  CHECK(std::abs(s.base.rep()[0] - 1.0) < 1e-15);
  CHECK(sup(ComplexMat(s.vec - ComplexMat::Constant(1, 2, 2.0))) == 0.0);

  std::mt19937_64 rng(37);
  const HomPoint p = random_point(rng, 2, 3);
  const TautVector a = embed_tautological(p);
  const TautVector b = embed_tautological(act(random_scalar(rng), p));
  CHECK(a.base.distance(b.base) <= 1e-12);
  CHECK(sup(ComplexMat(a.vec - b.vec)) <= 1e-13);
}

TEST_CASE("fiber over a fixed line is line (x) C^m") {
  std::mt19937_64 rng(41);
  const int n = 3;
  const int m = 2;
  const ComplexVec line = random_vec(rng, n);
  const ProjPoint base(line);
  ComplexMat stacked(n * m, 8);
  for (int s = 0; s < 8; ++s) {
    const HomPoint p(random_scalar(rng) * line, random_vec(rng, m));
    const TautVector t = embed_tautological(p);
    CHECK(t.base.distance(base) <= 1e-12);
    // Each column lies on the base line.
    for (int k = 0; k < m; ++k) {
      const ComplexVec col = t.vec.col(k);
      const cplx coord = base.rep().dot(col);
      CHECK(sup(ComplexVec(col - coord * base.rep())) < 1e-12);
    }
    stacked.col(s) = t.vec.reshaped();
  }
  Eigen::JacobiSVD<ComplexMat> svd(stacked);
  const auto& sv = svd.singularValues();
  CHECK(sv[m - 1] > 1e-6 * sv[0]);
  CHECK(sv[m] < 1e-12 * sv[0]);
}

TEST_CASE("decompose_rank1") {
  ComplexMat col(2, 1);
  col << 3.0, 6.0;
  const HomPoint a = decompose_rank1(col, 1e-9);
  CHECK(equivalent(a, pt({1.0, 2.0}, {3.0}), 1e-12));
  CHECK(sup(ComplexMat(canonical_matrix(a) - col)) < 1e-14);

  ComplexMat corner(2, 2);
  corner << 0.0, 3.0, 0.0, 0.0;
  const HomPoint b = decompose_rank1(corner, 1e-9);
  CHECK(equivalent(b, pt({1.0, 0.0}, {0.0, 3.0}), 1e-12));
  CHECK(sup(ComplexMat(embed_tautological(b).vec - corner)) < 1e-14);

  try {
    decompose_rank1(ComplexMat::Identity(2, 2), 1e-9);
    FAIL("identity accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotRankOne);
  }
  try {
    decompose_rank1(ComplexMat::Zero(2, 3), 1e-9);
    FAIL("zero accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroMatrix);
  }
}

TEST_CASE("decompose_rank1 inverts the embedding") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 1000; ++trial) {
    const HomPoint p = random_point(rng, 1 + trial % 4, 1 + (trial / 4) % 4);
    const HomPoint q = decompose_rank1(canonical_matrix(p), 1e-9);
    CHECK(equivalent(q, p, 1e-8));
    CHECK(project_V(q).distance(project_V(p)) <= 1e-10);
    CHECK(project_W(q).distance(project_W(p)) <= 1e-10);
  }
}
