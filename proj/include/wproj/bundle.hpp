#pragma once

// The projections to P(V) and P(W) and the identification of [v||w] with the
// nonzero rank-one tensor v (x) w, viewed as a vector in E_V (x) W.

#include "wproj/hvec.hpp"

namespace wproj {

/// A line in a complex vector space, stored by a canonical representative:
/// unit Hermitian norm, first component with modulus > kEps real positive.
class ProjPoint {
 public:
  /// Normalizes any nonzero representative of the line.
  explicit ProjPoint(const ComplexVec& representative);

  const ComplexVec& rep() const noexcept { return rep_; }
  int dim() const noexcept { return static_cast<int>(rep_.size()); }

  /// Componentwise sup distance between canonical representatives.
  double distance(const ProjPoint& other) const;

 private:
  ComplexVec rep_;
};

/// A nonzero vector of the fiber of E_V (x) W over `base`: an n x m matrix
/// whose columns all lie on the line `base`.
struct TautVector {
  ProjPoint base;
  ComplexMat vec;
};

ProjPoint project_V(const HomPoint& p);
ProjPoint project_W(const HomPoint& p);

TautVector embed_tautological(const HomPoint& p);

/// Inverse of the tensor embedding via the dominant singular pair.
/// Throws ZeroMatrix for M = 0 and NotRankOne when sigma_2 > rtol * sigma_1.
HomPoint decompose_rank1(const ComplexMat& M, double rtol);

}  // namespace wproj
