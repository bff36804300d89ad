#include "mfeit/trig.hpp"

#include <stdexcept>

namespace mfeit::trig {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

Interpolant::Interpolant(const Eigen::VectorXcd& samples, double t0) {
    const int n = static_cast<int>(samples.size());
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("trig::Interpolant needs an even sample count");
    halfn_ = n / 2;
    coeff_ = Eigen::VectorXcd::Zero(n + 1);
    const std::complex<double> I(0.0, 1.0);
    // Plain O(N^2) DFT; N stays in the low hundreds here.
    for (int k = -halfn_; k <= halfn_ - 1; ++k) {
        std::complex<double> c(0.0, 0.0);
        for (int j = 0; j < n; ++j) {
            const double tj = t0 + kTwoPi * j / n;
            c += samples[j] * std::exp(-I * (double(k) * tj));
        }
        coeff_[k + halfn_] = c / double(n);
    }
    // Nyquist split
    coeff_[2 * halfn_] = 0.5 * coeff_[0];
    coeff_[0] *= 0.5;
}

std::complex<double> Interpolant::eval(double t) const {
    const std::complex<double> I(0.0, 1.0);
    std::complex<double> s(0.0, 0.0);
    for (int m = 0; m < coeff_.size(); ++m) {
        const double k = m - halfn_;
        s += coeff_[m] * std::exp(I * (k * t));
    }
    return s;
}

std::complex<double> Interpolant::evalDerivative(double t) const {
    const std::complex<double> I(0.0, 1.0);
    std::complex<double> s(0.0, 0.0);
    for (int m = 0; m < coeff_.size(); ++m) {
        const double k = m - halfn_;
        s += coeff_[m] * (I * k) * std::exp(I * (k * t));
    }
    return s;
}

std::complex<double> Interpolant::evalSecondDerivative(double t) const {
    const std::complex<double> I(0.0, 1.0);
    std::complex<double> s(0.0, 0.0);
    for (int m = 0; m < coeff_.size(); ++m) {
        const double k = m - halfn_;
        s += coeff_[m] * (-k * k) * std::exp(I * (k * t));
    }
    return s;
}

Eigen::VectorXcd resample(const Eigen::VectorXcd& samples, double t0,
                          const Eigen::VectorXd& new_params) {
    Interpolant ip(samples, t0);
    Eigen::VectorXcd out(new_params.size());
    for (int i = 0; i < new_params.size(); ++i) out[i] = ip.eval(new_params[i]);
    return out;
}

Eigen::VectorXd resample_real(const Eigen::VectorXd& samples, double t0,
                              const Eigen::VectorXd& new_params) {
    Eigen::VectorXcd cs = samples.cast<std::complex<double>>();
    Eigen::VectorXcd out = resample(cs, t0, new_params);
    return out.real();
}

}  // namespace mfeit::trig
