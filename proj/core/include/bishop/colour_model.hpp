#pragma once

#include <span>
#include <string>

#include <Eigen/Dense>

#include "bishop/vision.hpp"

namespace bishop {

/// Three-dimensional Gaussian over RGB.
struct ColourModel {
  std::string name;
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  Eigen::Matrix3d cov = Eigen::Matrix3d::Identity();

  /// Density at `rgb`; never below the smallest normal double so that weights
  /// stay positive far from the mean.
  double pdf(const ColourTriple& rgb) const;
  double log_pdf(const ColourTriple& rgb) const;
  /// Throws Errc::kValidation unless cov is symmetric positive-definite.
  void validate() const;
};

inline constexpr double kCovarianceJitter = 1e-6;

/// Maximum-likelihood fit. Needs at least 4 samples and non-zero variance in
/// every channel; jitter is added to the diagonal if Cholesky fails.
ColourModel fit_colour_model(std::string name, std::span<const ColourTriple> samples);

}  // namespace bishop
