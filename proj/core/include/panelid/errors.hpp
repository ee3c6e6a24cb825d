#pragma once

#include <stdexcept>

namespace panelid {

// Base class for every error thrown by the library.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parameter outside its mathematical domain (l >= 0, tau <= 1/2, |theta0| >= 1
// where a stationary variance is required, probability outside (0,1), ...).
struct domain_error : error {
  using error::error;
};

// Inconsistent configuration, e.g. a heteroskedastic variance profile combined
// with a DGP that assumes a single sigma^2.
struct config_error : error {
  using error::error;
};

// Unsupported (moment set, T) combination or mismatched input shapes.
struct dimension_error : error {
  using error::error;
};

// Numerical degeneracy: singular or near-singular covariance, rank-deficient
// Jacobian estimate, fewer than two individuals where dispersion is needed.
struct degeneracy_error : error {
  using error::error;
};

// Too many replications of a simulation experiment failed.
struct experiment_error : error {
  using error::error;
};

// File or stream problems in the I/O layer.
struct io_error : error {
  using error::error;
};

}  // namespace panelid
