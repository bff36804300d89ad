#pragma once

#include <Eigen/Dense>
#include <complex>

namespace mfeit::trig {

/// Trigonometric interpolant of 2*pi-periodic samples given at
/// t_j = t0 + 2*pi*j/N, N even.  Coefficients for modes k = -N/2 .. N/2,
/// with the Nyquist mode split evenly between +-N/2.
class Interpolant {
public:
    Interpolant(const Eigen::VectorXcd& samples, double t0);

    std::complex<double> eval(double t) const;
    std::complex<double> evalDerivative(double t) const;
    std::complex<double> evalSecondDerivative(double t) const;

private:
    Eigen::VectorXcd coeff_;  // index m -> mode k = m - halfn
    int halfn_ = 0;
};

Eigen::VectorXcd resample(const Eigen::VectorXcd& samples, double t0,
                          const Eigen::VectorXd& new_params);
Eigen::VectorXd resample_real(const Eigen::VectorXd& samples, double t0,
                              const Eigen::VectorXd& new_params);

}  // namespace mfeit::trig
