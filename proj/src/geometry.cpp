#include "mfeit/geometry.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "mfeit/errors.hpp"
#include "mfeit/trig.hpp"

namespace mfeit {

namespace {
constexpr double kPi = 3.141592653589793238462643383279;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

double StarShape::radius(double theta) const {
    double r = 0.0;
    for (int n = -N; n <= N; ++n) r += coeff(n) * basis(n, theta);
    return r;
}

double StarShape::radiusD1(double theta) const {
    double r = 0.0;
    for (int n = -N; n <= N; ++n) r += coeff(n) * basisD1(n, theta);
    return r;
}

double StarShape::radiusD2(double theta) const {
    double r = 0.0;
    for (int n = -N; n <= N; ++n) r += coeff(n) * basisD2(n, theta);
    return r;
}

double StarShape::minRadius(int n_samples) const {
    double m = std::numeric_limits<double>::max();
    for (int i = 0; i < n_samples; ++i) m = std::min(m, radius(kTwoPi * i / n_samples));
    return m;
}

void StarShape::save(std::ostream& os) const {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "center %.17g %.17g\n", center.x, center.y);
    os << buf << N << "\n";
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", coeffs[i]);
        os << (i ? " " : "") << buf;
    }
    os << "\n";
}

StarShape StarShape::load(std::istream& is) {
    std::string kw;
    StarShape s;
    if (!(is >> kw) || kw != "center") throw ValidationError("shape file: expected 'center'");
    if (!(is >> s.center.x >> s.center.y)) throw ValidationError("shape file: bad center");
    int n = 0;
    if (!(is >> n) || n < 0) throw ValidationError("shape file: bad harmonic cutoff");
    s.N = n;
    s.coeffs.assign(2 * static_cast<std::size_t>(n) + 1, 0.0);
    for (auto& c : s.coeffs)
        if (!(is >> c)) throw ValidationError("shape file: missing coefficients");
    return s;
}

void StarShape::saveFile(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw ValidationError("cannot open for writing: " + path);
    save(os);
}

StarShape StarShape::loadFile(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ValidationError("cannot open shape file: " + path);
    return load(is);
}

double Curve::perimeter() const {
    double p = 0.0;
    for (double w : weights) p += w;
    return p;
}

double Curve::area() const {
    // 1/2 * integral of (x y' - y x') dt
    double a = 0.0;
    for (std::size_t i = 0; i < size(); ++i)
        a += 0.5 * nodes[i].cross(tangents[i]) * speed[i] * dt;
    return a;
}

bool Curve::contains(const Vec2& p) const {
    bool in = false;
    const std::size_t n = size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2& a = nodes[i];
        const Vec2& b = nodes[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double xc = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (p.x < xc) in = !in;
        }
    }
    return in;
}

double Curve::distanceTo(const Vec2& p) const {
    double best = std::numeric_limits<double>::max();
    const std::size_t n = size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2& a = nodes[j];
        const Vec2& b = nodes[i];
        const Vec2 ab = b - a;
        const double len2 = ab.squaredNorm();
        double t = len2 > 0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
        best = std::min(best, (p - (a + ab * t)).norm());
    }
    return best;
}

Curve make_star_curve(const StarShape& shape, int n_nodes, double theta0) {
    if (n_nodes < 8 || n_nodes % 2 != 0)
        throw TooFewNodes("make_star_curve: n_nodes must be even and >= 8");
    Curve c;
    c.dt = kTwoPi / n_nodes;
    c.params.resize(n_nodes);
    c.nodes.resize(n_nodes);
    c.tangents.resize(n_nodes);
    c.normals.resize(n_nodes);
    c.curvature.resize(n_nodes);
    c.speed.resize(n_nodes);
    c.weights.resize(n_nodes);
    for (int i = 0; i < n_nodes; ++i) {
        const double th = theta0 + c.dt * i;
        const double r = shape.radius(th);
        if (r <= 0.0) throw NonPositiveRadius(th);
        const double r1 = shape.radiusD1(th);
        const double r2 = shape.radiusD2(th);
        const double ct = std::cos(th), st = std::sin(th);
        const Vec2 er{ct, st}, et{-st, ct};
        c.params[i] = th;
        c.nodes[i] = shape.center + r * er;
        const Vec2 xp = r1 * er + r * et;
        const double sp = xp.norm();
        c.speed[i] = sp;
        c.tangents[i] = xp * (1.0 / sp);
        c.normals[i] = {c.tangents[i].y, -c.tangents[i].x};
        c.curvature[i] = (r * r + 2.0 * r1 * r1 - r * r2) / (sp * sp * sp);
        c.weights[i] = sp * c.dt;
    }
    return c;
}

Curve make_ellipse_curve(double a1, double a2, int n_nodes, double theta0) {
    if (n_nodes < 8 || n_nodes % 2 != 0)
        throw TooFewNodes("make_ellipse_curve: n_nodes must be even and >= 8");
    if (a1 <= 0 || a2 <= 0) throw ValidationError("ellipse semi-axes must be positive");
    Curve c;
    c.dt = kTwoPi / n_nodes;
    c.params.resize(n_nodes);
    c.nodes.resize(n_nodes);
    c.tangents.resize(n_nodes);
    c.normals.resize(n_nodes);
    c.curvature.resize(n_nodes);
    c.speed.resize(n_nodes);
    c.weights.resize(n_nodes);
    for (int i = 0; i < n_nodes; ++i) {
        const double t = theta0 + c.dt * i;
        const double ct = std::cos(t), st = std::sin(t);
        c.params[i] = t;
        c.nodes[i] = {a1 * ct, a2 * st};
        const Vec2 xp{-a1 * st, a2 * ct};
        const double sp = xp.norm();
        c.speed[i] = sp;
        c.tangents[i] = xp * (1.0 / sp);
        c.normals[i] = {c.tangents[i].y, -c.tangents[i].x};
        c.curvature[i] = a1 * a2 / (sp * sp * sp);
        c.weights[i] = sp * c.dt;
    }
    return c;
}

Curve make_ellipse_curve(const EllipseDomain& d, int n_nodes, double theta0) {
    return make_ellipse_curve(d.a1, d.a2, n_nodes, theta0);
}

Curve curve_from_samples(const std::vector<Vec2>& nodes, double theta0) {
    const int n = static_cast<int>(nodes.size());
    if (n < 8 || n % 2 != 0)
        throw TooFewNodes("curve_from_samples: need an even node count >= 8");
    Eigen::VectorXcd z(n);
    for (int i = 0; i < n; ++i) z[i] = std::complex<double>(nodes[i].x, nodes[i].y);
    trig::Interpolant ip(z, theta0);

    Curve c;
    c.dt = kTwoPi / n;
    c.params.resize(n);
    c.nodes = nodes;
    c.tangents.resize(n);
    c.normals.resize(n);
    c.curvature.resize(n);
    c.speed.resize(n);
    c.weights.resize(n);

    // Orientation: flip the sign convention if the sampled polygon is clockwise.
    double area2 = 0.0;
    for (int i = 0, j = n - 1; i < n; j = i++) area2 += nodes[j].cross(nodes[i]);
    const double orient = area2 >= 0 ? 1.0 : -1.0;

    for (int i = 0; i < n; ++i) {
        const double t = theta0 + c.dt * i;
        c.params[i] = t;
        const auto d1 = ip.evalDerivative(t);
        const auto d2 = ip.evalSecondDerivative(t);
        const Vec2 xp{d1.real(), d1.imag()};
        const Vec2 xpp{d2.real(), d2.imag()};
        const double sp = xp.norm();
        c.speed[i] = sp;
        const Vec2 tg = xp * (orient / sp);
        c.tangents[i] = tg;
        c.normals[i] = {tg.y, -tg.x};
        c.curvature[i] = orient * xp.cross(xpp) / (sp * sp * sp);
        c.weights[i] = sp * c.dt;
    }
    return c;
}

double symmetric_difference_ratio(const Curve& a, const Curve& b, int grid) {
    double x0 = std::numeric_limits<double>::max(), x1 = -x0;
    double y0 = x0, y1 = -x0;
    for (const auto* cv : {&a, &b}) {
        for (const auto& p : cv->nodes) {
            x0 = std::min(x0, p.x); x1 = std::max(x1, p.x);
            y0 = std::min(y0, p.y); y1 = std::max(y1, p.y);
        }
    }
    const double hx = (x1 - x0) / grid, hy = (y1 - y0) / grid;
    if (hx <= 0 || hy <= 0) throw DegenerateShape("symmetric_difference_ratio: flat bounding box");

    // Scanline parity fill per shape: for each grid row, collect edge crossings.
    auto fill = [&](const Curve& cv) {
        std::vector<std::vector<char>> mask(grid, std::vector<char>(grid, 0));
        std::vector<std::vector<double>> rows(grid);
        const std::size_t n = cv.size();
        for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
            Vec2 p = cv.nodes[j], q = cv.nodes[i];
            if (p.y == q.y) continue;
            if (p.y > q.y) std::swap(p, q);
            int r0 = static_cast<int>(std::ceil((p.y - y0) / hy - 0.5));
            int r1i = static_cast<int>(std::floor((q.y - y0) / hy - 0.5));
            r0 = std::max(r0, 0);
            r1i = std::min(r1i, grid - 1);
            for (int r = r0; r <= r1i; ++r) {
                const double yc = y0 + (r + 0.5) * hy;
                if (yc < p.y || yc >= q.y) continue;
                rows[r].push_back(p.x + (yc - p.y) / (q.y - p.y) * (q.x - p.x));
            }
        }
        for (int r = 0; r < grid; ++r) {
            auto& xs = rows[r];
            std::sort(xs.begin(), xs.end());
            for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
                int c0 = static_cast<int>(std::ceil((xs[k] - x0) / hx - 0.5));
                int c1 = static_cast<int>(std::floor((xs[k + 1] - x0) / hx - 0.5));
                c0 = std::max(c0, 0);
                c1 = std::min(c1, grid - 1);
                for (int c = c0; c <= c1; ++c) mask[r][c] = 1;
            }
        }
        return mask;
    };

    const auto ma = fill(a);
    const auto mb = fill(b);
    long long sym = 0, nb = 0, na = 0;
    for (int r = 0; r < grid; ++r)
        for (int c = 0; c < grid; ++c) {
            na += ma[r][c];
            nb += mb[r][c];
            sym += (ma[r][c] != mb[r][c]);
        }
    if (na < 10 || nb < 10) throw DegenerateShape("symmetric_difference_ratio: shape area below grid resolution");
    return static_cast<double>(sym) / static_cast<double>(nb);
}

bool is_inside(const Curve& domain, const Curve& shape, double margin) {
    for (const auto& p : shape.nodes) {
        if (!domain.contains(p)) return false;
        if (domain.distanceTo(p) < margin) return false;
    }
    return true;
}

double min_distance(const Curve& a, const Curve& b) {
    double best = std::numeric_limits<double>::max();
    for (const auto& p : a.nodes) best = std::min(best, b.distanceTo(p));
    return best;
}

StarShape fit_star_shape(const std::function<double(double)>& radius, Vec2 center, int N,
                         int samples) {
    StarShape s;
    s.center = center;
    s.N = N;
    s.coeffs.assign(static_cast<std::size_t>(2 * N + 1), 0.0);
    const double dt = 2.0 * kPi / samples;
    for (int q = 0; q < samples; ++q) {
        const double th = q * dt;
        const double r = radius(th);
        if (!(r > 0.0)) throw NonPositiveRadius(th);
        s.coeffs[static_cast<std::size_t>(N)] += r * dt / (2.0 * kPi);
        for (int n = 1; n <= N; ++n) {
            s.coeffs[static_cast<std::size_t>(N + n)] += r * std::cos(n * th) * dt / kPi;
            s.coeffs[static_cast<std::size_t>(N - n)] += r * std::sin(n * th) * dt / kPi;
        }
    }
    return s;
}

}  // namespace mfeit
