#include "wproj/bundle.hpp"

#include <Eigen/SVD>

#include "wproj/error.hpp"

namespace wproj {

ProjPoint::ProjPoint(const ComplexVec& representative) {
  const double norm = representative.norm();
  if (representative.size() < 1 || max_modulus(representative) <= kEps) {
    throw Error(ErrorCode::ZeroVector, "a line needs a nonzero representative");
  }
  rep_ = representative / norm;
  for (Eigen::Index i = 0; i < rep_.size(); ++i) {
    const double r = std::abs(rep_[i]);
    if (r > kEps) {
      rep_ *= std::conj(rep_[i]) / r;
      rep_[i] = cplx(r, 0.0);
      break;
    }
  }
}

double ProjPoint::distance(const ProjPoint& other) const {
  if (dim() != other.dim()) throw Error(ErrorCode::DimMismatch, "lines of different spaces");
  return max_modulus(rep_ - other.rep_);
}

ProjPoint project_V(const HomPoint& p) { return ProjPoint(p.v()); }
ProjPoint project_W(const HomPoint& p) { return ProjPoint(p.w()); }

TautVector embed_tautological(const HomPoint& p) {
  return {project_V(p), canonical_matrix(p)};
}

HomPoint decompose_rank1(const ComplexMat& M, double rtol) {
  if (M.size() == 0 || M.norm() <= kEps) throw Error(ErrorCode::ZeroMatrix, "matrix is zero");
  Eigen::JacobiSVD<ComplexMat> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  if (sigma.size() > 1 && sigma[1] > rtol * sigma[0]) {
    throw Error(ErrorCode::NotRankOne, "second singular value exceeds tolerance");
  }
  // M ~ sigma_1 u_1 v_1^H, so M[a][k] = (sigma_1 u_1)^a * conj(v_1)^k.
  return HomPoint(sigma[0] * svd.matrixU().col(0), svd.matrixV().col(0).conjugate());
}

}  // namespace wproj
