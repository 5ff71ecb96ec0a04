// Copyright (C) 2026 The sct-lift Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <Eigen/Dense>

#include "sct/errors.hpp"
#include "sct/model.hpp"

namespace sct::model {

bool procrustes_align(double* pred, const double* gt, std::size_t joints) {
  using Mat = Eigen::Matrix<double, Eigen::Dynamic, 3, Eigen::RowMajor>;
  Eigen::Map<Mat> p(pred, static_cast<Eigen::Index>(joints), 3);
  Eigen::Map<const Mat> g(gt, static_cast<Eigen::Index>(joints), 3);
  const Eigen::RowVector3d mp = p.colwise().mean();
  const Eigen::RowVector3d mg = g.colwise().mean();
  const Mat pc = p.rowwise() - mp;
  const Mat gc = g.rowwise() - mg;
  const double np = pc.squaredNorm();
  const double ng = gc.squaredNorm();
  constexpr double kTiny = 1e-12;
  if (np < kTiny || ng < kTiny) {
    p = pc.rowwise() + mg;
    return false;
  }
  // Rotation R maximising tr(R^T gc^T pc) with pred mapped as s * pc * R + mg.
  const Eigen::Matrix3d m = pc.transpose() * gc;
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d u = svd.matrixU();
  Eigen::Vector3d s = svd.singularValues();
  const Eigen::Matrix3d v = svd.matrixV();
  if ((u * v.transpose()).determinant() < 0) {
    u.col(2) *= -1;
    s(2) *= -1;
  }
  const Eigen::Matrix3d r = u * v.transpose();
  const double scale = s.sum() / np;
  p = (scale * (pc * r)).rowwise() + mg;
  return true;
}

Metrics evaluate_metrics(const std::vector<double>& pred, const std::vector<double>& gt,
                         std::size_t joints) {
  if (pred.size() != gt.size()) throw ContractError("evaluate_metrics: prediction and ground truth sizes differ");
  if (joints == 0 || pred.empty() || pred.size() % (joints * 3) != 0) {
    throw ContractError("evaluate_metrics: data is not a whole number of J x 3 poses");
  }
  Metrics m;
  m.poses = pred.size() / (joints * 3);
  const std::size_t n = m.poses * joints;
  constexpr int kSteps = 31;
  std::vector<std::size_t> hits(kSteps, 0);
  std::size_t pck_hits = 0;
  double err_sum = 0, aligned_sum = 0;
  std::vector<double> aligned(joints * 3);
  for (std::size_t i = 0; i < m.poses; ++i) {
    const double* p = pred.data() + i * joints * 3;
    const double* g = gt.data() + i * joints * 3;
    std::copy(p, p + joints * 3, aligned.begin());
    if (!procrustes_align(aligned.data(), g, joints)) ++m.degenerate_poses;
    for (std::size_t j = 0; j < joints; ++j) {
      double e2 = 0, a2 = 0;
      for (int d = 0; d < 3; ++d) {
        const double e = p[j * 3 + d] - g[j * 3 + d];
        const double a = aligned[j * 3 + d] - g[j * 3 + d];
        e2 += e * e;
        a2 += a * a;
      }
      const double e = std::sqrt(e2);
      err_sum += e;
      aligned_sum += std::sqrt(a2);
      if (e < kPckThresholdMm) ++pck_hits;
      for (int k = 0; k < kSteps; ++k) {
        if (e < 5.0 * k) ++hits[static_cast<std::size_t>(k)];
      }
    }
  }
  const auto dn = static_cast<double>(n);
  m.mpjpe = err_sum / dn;
  m.p_mpjpe = aligned_sum / dn;
  m.pck = 100.0 * static_cast<double>(pck_hits) / dn;
  double auc = 0;
  for (auto h : hits) auc += static_cast<double>(h) / dn;
  m.auc = 100.0 * auc / kSteps;
  return m;
}

}  // namespace sct::model
