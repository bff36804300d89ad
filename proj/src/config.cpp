#include "mfeit/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "mfeit/errors.hpp"

namespace mfeit {

namespace {

std::vector<double> parse_list(const std::string& v, const std::string& key) {
    std::istringstream ss(v);
    std::vector<double> out;
    double x;
    while (ss >> x) out.push_back(x);
    std::string trail;
    if (ss.fail() && !ss.eof()) throw ValidationError("config: non-numeric value for " + key);
    if (out.empty()) throw ValidationError("config: empty value for " + key);
    return out;
}

double parse_one(const std::string& v, const std::string& key) {
    const auto l = parse_list(v, key);
    if (l.size() != 1) throw ValidationError("config: expected a single number for " + key);
    return l[0];
}

StarShape shape_from_coeffs(Vec2 center, const std::vector<double>& coeffs) {
    if (coeffs.size() % 2 == 0) throw ValidationError("config: shape needs 2N+1 coefficients");
    StarShape s;
    s.center = center;
    s.N = static_cast<int>(coeffs.size()) / 2;
    s.coeffs = coeffs;
    return s;
}

}  // namespace

ExperimentConfig::ExperimentConfig() {
    // Benchmark target: ellipse with semi-axes 1.5 and 1.0 centered at
    // (0.6, 0.4), stored as a Fourier fit of its radius function.
    target = fit_star_shape(
        [](double th) {
            const double a = 1.5, b = 1.0;
            const double c = std::cos(th), s = std::sin(th);
            return a * b / std::sqrt(b * b * c * c + a * a * s * s);
        },
        {0.6, 0.4}, 8);
    init.center = {0.0, 0.0};
    init.N = 0;
    init.coeffs = {0.5};
    stage_a.max_iter = 300000;  // the fixed small step needs a long budget
}

Curve ExperimentConfig::domainCurve(int n_nodes, double theta0) const {
    if (domain_kind == "ellipse") return make_ellipse_curve(domain_a1, domain_a2, n_nodes, theta0);
    return make_star_curve(domain_shape, n_nodes, theta0);
}

void ExperimentConfig::validate() const {
    if (domain_kind != "ellipse" && domain_kind != "star")
        throw ValidationError("config: domain.kind must be 'ellipse' or 'star'");
    if (domain_kind == "ellipse" && (domain_a1 <= 0 || domain_a2 <= 0))
        throw ValidationError("config: domain semi-axes must be positive");
    if (k0 <= 0) throw ValidationError("config: k0 must be positive");
    if (kappa1 < 0 || kappa2 < 0 || kappa3 < 0)
        throw ValidationError("config: kappa values must be non-negative");
    if (frequencies.size() < 2) throw ValidationError("config: need at least two frequencies");
    for (std::size_t p = 0; p < frequencies.size(); ++p) {
        if (frequencies[p] <= 0) throw ValidationError("config: frequencies must be positive");
        for (std::size_t q = p + 1; q < frequencies.size(); ++q)
            if (frequencies[p] == frequencies[q])
                throw ValidationError("config: frequencies must be distinct");
    }
    if (currents < 1 || currents > 2)
        throw ValidationError("config: currents must be 1 or 2");
    if (nodes_inversion < 16 || nodes_inversion % 2 != 0)
        throw ValidationError("config: nodes.inversion must be even and >= 16");
    if (nodes_data < 2 * nodes_inversion)
        throw ValidationError("config: nodes.data must be at least twice nodes.inversion");
    if (noise < 0) throw ValidationError("config: noise must be non-negative");
    if (target.minRadius() <= 0) throw ValidationError("config: target radius not positive");
    if (init.minRadius() <= 0) throw ValidationError("config: initial radius not positive");
    if (stage_b.n_fourier < init.N)
        throw ValidationError("config: stage_b.n_fourier smaller than initial shape order");
}

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        // trim
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("config line " + std::to_string(lineno) + ": expected key = value");
        auto trim = [](std::string s) {
            const auto b2 = s.find_first_not_of(" \t");
            if (b2 == std::string::npos) return std::string();
            const auto e2 = s.find_last_not_of(" \t");
            return s.substr(b2, e2 - b2 + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ValidationError("config line " + std::to_string(lineno) + ": empty key or value");
        if (kv.count(key)) throw ValidationError("config: duplicate key " + key);
        kv[key] = val;
    }

    ExperimentConfig c;
    Vec2 target_center = c.target.center, init_center = c.init.center, dom_center{0, 0};
    std::vector<double> target_coeffs, init_coeffs, dom_coeffs;
    for (const auto& [key, val] : kv) {
        if (key == "domain.kind") c.domain_kind = val;
        else if (key == "domain.a1") c.domain_a1 = parse_one(val, key);
        else if (key == "domain.a2") c.domain_a2 = parse_one(val, key);
        else if (key == "domain.center.x") dom_center.x = parse_one(val, key);
        else if (key == "domain.center.y") dom_center.y = parse_one(val, key);
        else if (key == "domain.coeffs") dom_coeffs = parse_list(val, key);
        else if (key == "target.center.x") target_center.x = parse_one(val, key);
        else if (key == "target.center.y") target_center.y = parse_one(val, key);
        else if (key == "target.coeffs") target_coeffs = parse_list(val, key);
        else if (key == "init.center.x") init_center.x = parse_one(val, key);
        else if (key == "init.center.y") init_center.y = parse_one(val, key);
        else if (key == "init.coeffs") init_coeffs = parse_list(val, key);
        else if (key == "kappa1") c.kappa1 = parse_one(val, key);
        else if (key == "kappa2") c.kappa2 = parse_one(val, key);
        else if (key == "kappa3") c.kappa3 = parse_one(val, key);
        else if (key == "k0") c.k0 = parse_one(val, key);
        else if (key == "frequencies") c.frequencies = parse_list(val, key);
        else if (key == "currents") c.currents = static_cast<int>(parse_one(val, key));
        else if (key == "nodes.data") c.nodes_data = static_cast<int>(parse_one(val, key));
        else if (key == "nodes.inversion") c.nodes_inversion = static_cast<int>(parse_one(val, key));
        else if (key == "noise") c.noise = parse_one(val, key);
        else if (key == "seed") c.seed = static_cast<std::uint64_t>(parse_one(val, key));
        else if (key == "stage_a.lambda_plus") c.stage_a.lambda_plus = parse_one(val, key);
        else if (key == "stage_a.lambda_minus") c.stage_a.lambda_minus = parse_one(val, key);
        else if (key == "stage_a.n_f") c.stage_a.n_f = static_cast<int>(parse_one(val, key));
        else if (key == "stage_a.step") c.stage_a.step = parse_one(val, key);
        else if (key == "stage_a.grad_tol") c.stage_a.grad_tol = parse_one(val, key);
        else if (key == "stage_a.max_iter") c.stage_a.max_iter = static_cast<int>(parse_one(val, key));
        else if (key == "stage_a.kappa_init") {
            const auto l = parse_list(val, key);
            if (l.size() != 3) throw ValidationError("config: stage_a.kappa_init needs 3 numbers");
            c.stage_a.kappa_init = {l[0], l[1], l[2]};
        } else if (key == "stage_b.n_fourier") c.stage_b.n_fourier = static_cast<int>(parse_one(val, key));
        else if (key == "stage_b.alpha0") c.stage_b.alpha0 = parse_one(val, key);
        else if (key == "stage_b.delta0") c.stage_b.delta0 = parse_one(val, key);
        else if (key == "stage_b.max_iter") c.stage_b.max_iter = static_cast<int>(parse_one(val, key));
        else if (key == "stage_b.j_tol") c.stage_b.j_tol = parse_one(val, key);
        else if (key == "stage_b.max_halvings") c.stage_b.max_halvings = static_cast<int>(parse_one(val, key));
        else throw ValidationError("config: unknown key " + key);
    }
    if (!target_coeffs.empty()) c.target = shape_from_coeffs(target_center, target_coeffs);
    else c.target.center = target_center;
    if (!init_coeffs.empty()) c.init = shape_from_coeffs(init_center, init_coeffs);
    else c.init.center = init_center;
    if (!dom_coeffs.empty()) c.domain_shape = shape_from_coeffs(dom_center, dom_coeffs);
    c.stage_a.k0 = c.k0;
    c.stage_b.n_nodes = c.nodes_inversion;
    c.validate();
    return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ValidationError("config: cannot open " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return parse(ss.str());
}

}  // namespace mfeit
