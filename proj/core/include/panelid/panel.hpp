#pragma once

#include <Eigen/Dense>
#include <utility>

#include "panelid/errors.hpp"

namespace panelid {

// Balanced panel of level observations y_it, one row per individual,
// one column per period. Immutable after construction.
class PanelData {
 public:
  explicit PanelData(Eigen::MatrixXd values) : values_(std::move(values)) {
    if (values_.rows() < 1)
      throw dimension_error("panel needs at least one individual");
    if (values_.cols() < 3)
      throw dimension_error("panel needs at least T = 3 periods, got T = " +
                            std::to_string(values_.cols()));
    if (!values_.allFinite())
      throw domain_error("panel contains a non-finite observation");
  }

  const Eigen::MatrixXd& values() const { return values_; }
  Eigen::Index n_individuals() const { return values_.rows(); }
  Eigen::Index n_periods() const { return values_.cols(); }
  Eigen::MatrixXd::ConstRowXpr row(Eigen::Index i) const { return values_.row(i); }

 private:
  Eigen::MatrixXd values_;
};

}  // namespace panelid
