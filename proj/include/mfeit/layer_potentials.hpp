#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "mfeit/geometry.hpp"

namespace mfeit {

/// Dense Nystrom block mapping a nodal density on a source curve to values
/// (or normal derivatives) on a target curve.  Quadrature weights are folded
/// into the matrix, so application is a plain matrix-vector product.
using OperatorBlock = Eigen::MatrixXd;

struct BoundaryDensity {
    const Curve* curve = nullptr;
    Eigen::VectorXcd values;
    bool mean_zero = false;
};

/// Single layer S on the curve itself; the log singularity is handled by the
/// periodic product-quadrature splitting (spectrally accurate).
OperatorBlock single_layer_self(const Curve& c);

/// Neumann-Poincare operator K* on the curve itself; diagonal uses the smooth
/// kernel limit gamma/(4*pi) (convex-positive curvature sign).
OperatorBlock kstar_self(const Curve& c);

/// x -> d/dnu(x) integral over src of G(x,z) phi(z) ds(z), x on tgt.
OperatorBlock normal_derivative_cross(const Curve& src, const Curve& tgt);

/// Single layer from src evaluated on the nodes of a disjoint tgt curve.
OperatorBlock single_layer_cross(const Curve& src, const Curve& tgt);

OperatorBlock single_layer_eval(const Curve& src, const std::vector<Vec2>& pts);
OperatorBlock double_layer_eval(const Curve& src, const std::vector<Vec2>& pts);

/// Gradient of the single layer at off-curve points: pair (d/dx, d/dy).
std::pair<OperatorBlock, OperatorBlock> single_layer_grad_eval(const Curve& src,
                                                               const std::vector<Vec2>& pts);

Eigen::VectorXcd evaluate_single_layer(const Curve& src, const Eigen::VectorXcd& density,
                                       const std::vector<Vec2>& pts);

/// Throws CurvesTouch when min distance < 5 mean node spacings of src.
void require_disjoint(const Curve& src, const Curve& tgt);

}  // namespace mfeit
