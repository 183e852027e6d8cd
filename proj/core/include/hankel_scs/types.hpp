#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace hscs {

using Index = Eigen::Index;
using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;

/// Length-n vector of complex time-domain samples.
using ComplexSignal = CVector;

/// n_s x r factor parameterizing a lifted matrix as Z Z^T.
using Factor = CMatrix;

/// Thrown when a documented precondition on an argument does not hold.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a numerical routine cannot deliver its postcondition
/// (non-convergence, rank deficiency, infeasible sampling constraint).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& what)
{
    if (!cond) throw InvalidArgument(what);
}

}  // namespace hscs
