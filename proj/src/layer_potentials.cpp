#include "mfeit/layer_potentials.hpp"

#include <cmath>

#include "mfeit/errors.hpp"

namespace mfeit {

namespace {

constexpr double kPi = 3.141592653589793238462643383279;
constexpr double kTwoPi = 2.0 * kPi;

// Kress weights R_k for integrating log(4 sin^2((t-s)/2)) against periodic
// densities on a 2n-point uniform grid; k is the index offset i-j mod 2n.
std::vector<double> kress_log_weights(int n_nodes) {
    const int n = n_nodes / 2;
    std::vector<double> r(n_nodes);
    for (int k = 0; k < n_nodes; ++k) {
        double s = 0.0;
        for (int m = 1; m < n; ++m) s += std::cos(m * k * kPi / n) / m;
        r[k] = -(kTwoPi / n) * s - (kPi / (n * n)) * ((k % 2) ? -1.0 : 1.0);
    }
    return r;
}

}  // namespace

OperatorBlock single_layer_self(const Curve& c) {
    const int n = static_cast<int>(c.size());
    if (n < 16) throw TooFewNodes("single_layer_self: need >= 16 nodes");
    const auto R = kress_log_weights(n);
    OperatorBlock m(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double smooth;
            if (i == j) {
                smooth = std::log(c.speed[i]) / kTwoPi;
            } else {
                const double d = (c.nodes[i] - c.nodes[j]).norm();
                const double s = 2.0 * std::abs(std::sin(0.5 * (c.params[i] - c.params[j])));
                smooth = std::log(d / s) / kTwoPi;
            }
            const int k = ((i - j) % n + n) % n;
            m(i, j) = (R[k] / (4.0 * kPi) + c.dt * smooth) * c.speed[j];
        }
    }
    return m;
}

OperatorBlock kstar_self(const Curve& c) {
    const int n = static_cast<int>(c.size());
    OperatorBlock m(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double k;
            if (i == j) {
                k = c.curvature[i] / (4.0 * kPi);
            } else {
                const Vec2 d = c.nodes[i] - c.nodes[j];
                k = d.dot(c.normals[i]) / (kTwoPi * d.squaredNorm());
            }
            m(i, j) = k * c.weights[j];
        }
    }
    return m;
}

void require_disjoint(const Curve& src, const Curve& tgt) {
    const double spacing = src.perimeter() / static_cast<double>(src.size());
    if (min_distance(tgt, src) < 5.0 * spacing)
        throw CurvesTouch("cross-curve kernel: curves closer than 5 source node spacings");
}

OperatorBlock normal_derivative_cross(const Curve& src, const Curve& tgt) {
    require_disjoint(src, tgt);
    const int nt = static_cast<int>(tgt.size());
    const int ns = static_cast<int>(src.size());
    OperatorBlock m(nt, ns);
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < ns; ++j) {
            const Vec2 d = tgt.nodes[i] - src.nodes[j];
            m(i, j) = d.dot(tgt.normals[i]) / (kTwoPi * d.squaredNorm()) * src.weights[j];
        }
    return m;
}

OperatorBlock single_layer_cross(const Curve& src, const Curve& tgt) {
    require_disjoint(src, tgt);
    const int nt = static_cast<int>(tgt.size());
    const int ns = static_cast<int>(src.size());
    OperatorBlock m(nt, ns);
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < ns; ++j)
            m(i, j) = std::log((tgt.nodes[i] - src.nodes[j]).norm()) / kTwoPi * src.weights[j];
    return m;
}

OperatorBlock single_layer_eval(const Curve& src, const std::vector<Vec2>& pts) {
    const int nt = static_cast<int>(pts.size());
    const int ns = static_cast<int>(src.size());
    OperatorBlock m(nt, ns);
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < ns; ++j)
            m(i, j) = std::log((pts[i] - src.nodes[j]).norm()) / kTwoPi * src.weights[j];
    return m;
}

OperatorBlock double_layer_eval(const Curve& src, const std::vector<Vec2>& pts) {
    const int nt = static_cast<int>(pts.size());
    const int ns = static_cast<int>(src.size());
    OperatorBlock m(nt, ns);
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < ns; ++j) {
            const Vec2 d = src.nodes[j] - pts[i];
            m(i, j) = d.dot(src.normals[j]) / (kTwoPi * d.squaredNorm()) * src.weights[j];
        }
    return m;
}

std::pair<OperatorBlock, OperatorBlock> single_layer_grad_eval(const Curve& src,
                                                               const std::vector<Vec2>& pts) {
    const int nt = static_cast<int>(pts.size());
    const int ns = static_cast<int>(src.size());
    OperatorBlock gx(nt, ns), gy(nt, ns);
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < ns; ++j) {
            const Vec2 d = pts[i] - src.nodes[j];
            const double r2 = d.squaredNorm();
            gx(i, j) = d.x / (kTwoPi * r2) * src.weights[j];
            gy(i, j) = d.y / (kTwoPi * r2) * src.weights[j];
        }
    return {gx, gy};
}

Eigen::VectorXcd evaluate_single_layer(const Curve& src, const Eigen::VectorXcd& density,
                                       const std::vector<Vec2>& pts) {
    return single_layer_eval(src, pts).cast<std::complex<double>>() * density;
}

}  // namespace mfeit
