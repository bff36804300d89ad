#include "mfeit/shape_reconstruction.hpp"

#include <cmath>

#include "mfeit/errors.hpp"
#include "mfeit/forward.hpp"

namespace mfeit {

namespace {

Eigen::VectorXd domain_weights(const Curve& c) {
    Eigen::VectorXd w(static_cast<int>(c.weights.size()));
    for (int j = 0; j < w.size(); ++j) w[j] = c.weights[static_cast<std::size_t>(j)];
    return w;
}

// h(theta) for each descent direction, evaluated at the anomaly nodes:
// columns [X0.x, X0.y, c_-N .. c_N].  For a coefficient c_n the boundary
// moves by f_n(theta) in the radial direction, so h = f_n <(cos,sin), nu>;
// a center shift moves every point by e_i, so h = <e_i, nu>.
Eigen::MatrixXd perturbation_fields(const StarShape& shape, const Curve& curve) {
    const int na = static_cast<int>(curve.nodes.size());
    const int np = 2 * shape.N + 3;
    Eigen::MatrixXd h(na, np);
    for (int q = 0; q < na; ++q) {
        const double th = curve.params[static_cast<std::size_t>(q)];
        const Vec2 nu = curve.normals[static_cast<std::size_t>(q)];
        const double radial = std::cos(th) * nu.x + std::sin(th) * nu.y;
        h(q, 0) = nu.x;
        h(q, 1) = nu.y;
        for (int n = -shape.N; n <= shape.N; ++n)
            h(q, 2 + n + shape.N) = shape.basis(n, th) * radial;
    }
    return h;
}

}  // namespace

void CauchyData::validate() const {
    if (neumann.size() != dirichlet.size() || neumann.empty())
        throw ValidationError("cauchy data: need matching f / u_meas per current");
    const int nd = static_cast<int>(domain.nodes.size());
    for (std::size_t i = 0; i < neumann.size(); ++i)
        if (neumann[i].size() != nd || dirichlet[i].size() != nd)
            throw DimensionMismatch("cauchy data: vector length != node count");
}

double objective_J(const StarShape& shape, const CauchyData& data, int n_nodes) {
    data.validate();
    const Curve anomaly = make_star_curve(shape, n_nodes);
    const ForwardSolver solver(data.domain, anomaly);
    const Eigen::VectorXd w = domain_weights(data.domain);
    double j = 0.0;
    for (int i = 0; i < data.numCurrents(); ++i) {
        const auto sol = solver.solvePerfectConductor(data.neumann[static_cast<std::size_t>(i)]);
        const Eigen::VectorXd r = sol.trace.real() - data.dirichlet[static_cast<std::size_t>(i)];
        j += 0.5 * r.cwiseAbs2().dot(w);
    }
    return j;
}

Eigen::VectorXd shape_gradient(const StarShape& shape, const CauchyData& data, int n_nodes) {
    data.validate();
    const Curve anomaly = make_star_curve(shape, n_nodes);
    const ForwardSolver solver(data.domain, anomaly);
    const Eigen::VectorXd w = domain_weights(data.domain);
    const Eigen::MatrixXd h = perturbation_fields(shape, anomaly);

    Eigen::VectorXd g = Eigen::VectorXd::Zero(2 * shape.N + 3);
    for (int i = 0; i < data.numCurrents(); ++i) {
        const auto sol = solver.solvePerfectConductor(data.neumann[static_cast<std::size_t>(i)]);
        const Eigen::VectorXd phi = sol.anomaly_flux.real();
        const Eigen::VectorXd r = sol.trace.real() - data.dirichlet[static_cast<std::size_t>(i)];
        // Dirichlet data of the linearized field for direction m is -h_m .* phi.
        const Eigen::MatrixXd uh =
            solver.solveLinearizedMulti((-h).array().colwise() * phi.array());
        g += uh.transpose() * (w.cwiseProduct(r));
    }
    return g;
}

ShapeDescentResult run_shape_descent(const StarShape& initial, const CauchyData& data,
                                     const ShapeDescentSettings& s, const StarShape* reference) {
    data.validate();
    if (initial.N > s.n_fourier)
        throw ValidationError("run_shape_descent: initial shape has more modes than settings");

    // Pad the iterate to the full descent basis.
    StarShape shape;
    shape.center = initial.center;
    shape.N = s.n_fourier;
    shape.coeffs.assign(static_cast<std::size_t>(2 * s.n_fourier + 1), 0.0);
    for (int n = -initial.N; n <= initial.N; ++n)
        shape.coeffs[static_cast<std::size_t>(n + s.n_fourier)] = initial.coeff(n);

    const Curve ref_curve =
        reference ? make_star_curve(*reference, 4 * s.n_nodes) : Curve{};
    auto record_symdiff = [&](ShapeDescentResult& res, const StarShape& sh) {
        if (!reference) return;
        res.symdiff_history.push_back(
            symmetric_difference_ratio(make_star_curve(sh, 4 * s.n_nodes), ref_curve));
    };
    auto admissible = [&](const StarShape& sh, Curve& out) {
        if (sh.minRadius() <= 0.0) return false;
        out = make_star_curve(sh, s.n_nodes);
        return is_inside(data.domain, out, s.delta0);
    };

    ShapeDescentResult res;
    {
        Curve c;
        if (!admissible(shape, c)) throw ValidationError("run_shape_descent: initial inadmissible");
    }
    double j = objective_J(shape, data, s.n_nodes);
    double alpha = s.alpha0;
    res.j_history.push_back(j);
    res.alpha_history.push_back(alpha);
    record_symdiff(res, shape);

    for (int it = 0; it < s.max_iter; ++it) {
        if (j < s.j_tol) {
            res.converged = true;
            break;
        }
        res.iterations = it + 1;
        const Eigen::VectorXd g = shape_gradient(shape, data, s.n_nodes);

        bool accepted = false;
        for (int halving = 0; halving <= s.max_halvings; ++halving) {
            StarShape trial = shape;
            trial.center.x -= alpha * g[0];
            trial.center.y -= alpha * g[1];
            for (int n = 0; n < 2 * s.n_fourier + 1; ++n)
                trial.coeffs[static_cast<std::size_t>(n)] -= alpha * g[2 + n];
            Curve tc;
            bool ok = false;
            double jt = 0.0;
            try {
                ok = admissible(trial, tc);
                if (ok) {
                    jt = objective_J(trial, data, s.n_nodes);
                    ok = jt <= j;
                }
            } catch (const ValidationError&) {
                ok = false;  // degenerate or touching trial curve: treat as a rejected step
            } catch (const NumericError&) {
                ok = false;
            }
            if (ok) {
                shape = trial;
                j = jt;
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted) throw StepCollapse("run_shape_descent: step underflow");

        res.j_history.push_back(j);
        res.alpha_history.push_back(alpha);
        record_symdiff(res, shape);
        alpha = std::min(alpha * 2.0, s.alpha0);
    }
    if (j < s.j_tol) res.converged = true;
    res.shape = shape;
    return res;
}

}  // namespace mfeit
