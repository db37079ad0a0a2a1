#pragma once

#include <stdexcept>

namespace pgfmix {

// A computation could not produce a finite or converged number
// (quadrature did not converge, a required quantity diverges, ...).
// Input-domain problems use std::invalid_argument instead.
class numeric_failure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace pgfmix
