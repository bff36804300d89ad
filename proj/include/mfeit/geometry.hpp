#pragma once

#include <cmath>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace mfeit {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double squaredNorm() const { return x * x + y * y; }
    double norm() const { return std::sqrt(squaredNorm()); }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

/// Star-shaped anomaly: boundary X0 + r(theta)(cos theta, sin theta) with
/// r = sum_{n=-N}^{N} c_n f_n, f_n = cos(n theta) for n >= 0, sin(|n| theta) for n < 0.
struct StarShape {
    Vec2 center;
    int N = 0;
    std::vector<double> coeffs;  // c_{-N} .. c_N

    StarShape() : coeffs(1, 0.0) {}
    StarShape(Vec2 c, int harmonics) : center(c), N(harmonics), coeffs(2 * harmonics + 1, 0.0) {}

    double coeff(int n) const { return coeffs[static_cast<std::size_t>(n + N)]; }
    double& coeff(int n) { return coeffs[static_cast<std::size_t>(n + N)]; }

    static double basis(int n, double theta) {
        return n >= 0 ? std::cos(n * theta) : std::sin(-n * theta);
    }
    static double basisD1(int n, double theta) {
        return n >= 0 ? -n * std::sin(n * theta) : -n * std::cos(-n * theta);
    }
    static double basisD2(int n, double theta) {
        return n >= 0 ? -double(n) * n * std::cos(n * theta) : -double(n) * n * std::sin(-n * theta);
    }

    double radius(double theta) const;
    double radiusD1(double theta) const;
    double radiusD2(double theta) const;
    double minRadius(int n_samples = 720) const;

    void save(std::ostream& os) const;
    static StarShape load(std::istream& is);
    void saveFile(const std::string& path) const;
    static StarShape loadFile(const std::string& path);
};

/// Sampled closed curve on a uniform parameter grid theta_i = theta0 + 2*pi*i/N,
/// oriented counterclockwise with outward normal nu = R_{-pi/2} T.
struct Curve {
    std::vector<double> params;
    std::vector<Vec2> nodes;
    std::vector<Vec2> tangents;   // unit
    std::vector<Vec2> normals;    // unit, outward
    std::vector<double> curvature;  // convex-positive sign (circle: +1/R)
    std::vector<double> speed;      // |X'(t_i)|
    std::vector<double> weights;    // speed * dt  (arclength trapezoid weights)
    double dt = 0.0;

    std::size_t size() const { return nodes.size(); }
    double perimeter() const;
    double area() const;  // enclosed area, positive for CCW
    bool contains(const Vec2& p) const;  // even-odd rule on the node polygon
    double distanceTo(const Vec2& p) const;  // distance to node polygon
};

struct EllipseDomain {
    double a1 = 4.0;
    double a2 = 3.0;
};

Curve make_star_curve(const StarShape& shape, int n_nodes, double theta0 = 0.0);
Curve make_ellipse_curve(double a1, double a2, int n_nodes, double theta0 = 0.0);
Curve make_ellipse_curve(const EllipseDomain& d, int n_nodes, double theta0 = 0.0);

/// Closed curve from point samples on a uniform parameter grid; derivatives by
/// trigonometric differentiation.
Curve curve_from_samples(const std::vector<Vec2>& nodes, double theta0 = 0.0);

/// |A (symmetric difference) B| / |B| by scanline rasterization on a grid
/// covering the joint bounding box.
double symmetric_difference_ratio(const Curve& a, const Curve& b, int grid = 1024);

/// True iff every node of `shape` lies inside `domain` with distance >= margin.
bool is_inside(const Curve& domain, const Curve& shape, double margin);

double min_distance(const Curve& a, const Curve& b);

/// Least-squares Fourier fit of a positive radius function r(theta) into a
/// star shape with modes -N..N about the given center.
StarShape fit_star_shape(const std::function<double(double)>& radius, Vec2 center, int N,
                         int samples = 2048);

}  // namespace mfeit
