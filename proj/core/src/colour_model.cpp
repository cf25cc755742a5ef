#include "bishop/colour_model.hpp"

#include <cfloat>
#include <cmath>
#include <numbers>

#include "bishop/error.hpp"

namespace bishop {

double ColourModel::log_pdf(const ColourTriple& rgb) const {
  const Eigen::LLT<Eigen::Matrix3d> llt(cov);
  if (llt.info() != Eigen::Success) {
    throw Error(Errc::kValidation, "colour model '" + name + "' has a non-SPD covariance");
  }
  const Eigen::Vector3d d = Eigen::Vector3d(rgb[0], rgb[1], rgb[2]) - mean;
  const Eigen::Vector3d z = llt.matrixL().solve(d);
  const double log_det = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
  return -0.5 * (3.0 * std::log(2.0 * std::numbers::pi) + log_det + z.squaredNorm());
}

double ColourModel::pdf(const ColourTriple& rgb) const {
  return std::max(std::exp(log_pdf(rgb)), DBL_MIN);
}

void ColourModel::validate() const {
  if (!mean.allFinite() || !cov.allFinite()) {
    throw Error(Errc::kValidation, "colour model '" + name + "' has non-finite parameters");
  }
  if (!cov.isApprox(cov.transpose(), 1e-9)) {
    throw Error(Errc::kValidation, "colour model '" + name + "' covariance is not symmetric");
  }
  if (Eigen::LLT<Eigen::Matrix3d>(cov).info() != Eigen::Success) {
    throw Error(Errc::kValidation,
                "colour model '" + name + "' covariance is not positive-definite");
  }
}

ColourModel fit_colour_model(std::string name, std::span<const ColourTriple> samples) {
  if (samples.size() < 4) {
    throw Error(Errc::kInvalidArgument, "colour model '" + name + "' needs at least 4 samples, got " +
                                            std::to_string(samples.size()));
  }
  ColourModel model;
  model.name = std::move(name);
  for (const auto& s : samples) model.mean += Eigen::Vector3d(s[0], s[1], s[2]);
  model.mean /= static_cast<double>(samples.size());

  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const auto& s : samples) {
    const Eigen::Vector3d d = Eigen::Vector3d(s[0], s[1], s[2]) - model.mean;
    cov += d * d.transpose();
  }
  cov /= static_cast<double>(samples.size());

  for (int c = 0; c < 3; ++c) {
    if (cov(c, c) < 1e-9) {
      throw Error(Errc::kValidation, "colour model '" + model.name + "': channel " +
                                         std::to_string(c) + " has zero variance");
    }
  }
  if (Eigen::LLT<Eigen::Matrix3d>(cov).info() != Eigen::Success) {
    cov += kCovarianceJitter * Eigen::Matrix3d::Identity();
  }
  model.cov = cov;
  model.validate();
  return model;
}

}  // namespace bishop
