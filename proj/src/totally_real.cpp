#include "jdisc/totally_real.hpp"

#include <Eigen/SVD>

namespace jdisc {

namespace {

constexpr double kRankTol = 1e-8;

RVector frame_singular_values(const TangentFrame& frame, const LinearComplexStructure& J) {
  const RMatrix& B = frame.basis;
  if (B.rows() != J.matrix().rows()) throw InvalidArgument("frame and structure dimensions differ");
  if (B.cols() == 0) throw InvalidArgument("empty frame");
  const RVector sb = Eigen::JacobiSVD<RMatrix>(B).singularValues();
  if (!(sb(sb.size() - 1) > kRankTol * sb(0))) throw InvalidArgument("frame vectors are linearly dependent");
  RMatrix M(B.rows(), 2 * B.cols());
  M << B, J.matrix() * B;
  return Eigen::JacobiSVD<RMatrix>(M).singularValues();
}

RealityTest rank_test(const RVector& s, Eigen::Index rank) {
  RealityTest r;
  r.largest = s(0);
  r.margin = rank <= s.size() ? s(rank - 1) : 0.0;
  r.value = r.margin > kRankTol * r.largest;
  return r;
}

}  // namespace

RealityTest is_totally_real(const TangentFrame& frame, const LinearComplexStructure& J) {
  if (frame.basis.cols() > J.dimension()) throw InvalidArgument("frame dimension exceeds n");
  const RVector s = frame_singular_values(frame, J);
  return rank_test(s, 2 * frame.basis.cols());
}

RealityTest is_generic(const TangentFrame& frame, const LinearComplexStructure& J) {
  const RVector s = frame_singular_values(frame, J);
  return rank_test(s, 2 * J.dimension());
}

}  // namespace jdisc
