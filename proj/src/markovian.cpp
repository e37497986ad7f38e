#include "mpemba/markovian.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_set>

#include <nlohmann/json.hpp>

namespace mpemba {

PopulationVector apply_step(const PopulationVector& p, const ElementaryStep& s) {
    if (s.i == s.j) throw std::domain_error("elementary step needs two distinct levels");
    if (s.i < 0 || s.j < 0 || s.i >= p.dim() || s.j >= p.dim())
        throw std::domain_error("level index out of range");
    if (s.lambda < 0.0 || s.lambda > 1.0)
        throw std::domain_error("lambda must lie in [0, 1]");
    const double gi = std::exp(-p.bath_beta * p.level_energies[s.i]);
    const double gj = std::exp(-p.bath_beta * p.level_energies[s.j]);
    const double total = p.populations[s.i] + p.populations[s.j];
    PopulationVector out = p;
    out.populations[s.i] =
        (1.0 - s.lambda) * p.populations[s.i] + s.lambda * gi / (gi + gj) * total;
    out.populations[s.j] = total - out.populations[s.i];
    return out;
}

std::vector<PopulationVector> relax_trajectory(const PopulationVector& p,
                                               const std::vector<TrajectoryLeg>& schedule) {
    std::vector<PopulationVector> states;
    states.reserve(schedule.size() + 1);
    states.push_back(p);
    for (const auto& leg : schedule) {
        if (!(leg.duration > 0.0) || !(leg.tau > 0.0))
            throw std::domain_error("leg duration and tau must be positive");
        const double lambda = 1.0 - std::exp(-leg.duration / leg.tau);
        states.push_back(apply_step(states.back(), {leg.i, leg.j, lambda}));
    }
    return states;
}

namespace {

struct SearchContext {
    const PopulationVector* target = nullptr;
    ThermoCurve target_curve;
    std::vector<double> gamma; // bath weights per level
    std::vector<double> grid;  // candidate touch x-coordinates
    MarkovSearchConfig cfg;
    std::unordered_set<std::string> seen;
    double best_residual = 1e300;
    int deepest = 0;
};

std::string quantize(const std::vector<double>& p, double quantum) {
    std::string key;
    key.reserve(p.size() * sizeof(long long));
    for (double v : p) {
        const long long q = std::llround(v / quantum);
        key.append(reinterpret_cast<const char*>(&q), sizeof(q));
    }
    return key;
}

// max over vertex grid of (target height - state height); <= tol means dominance
double curve_deficit(const PopulationVector& p, const SearchContext& ctx) {
    const ThermoCurve c = build_curve(p, false);
    double deficit = -1e300;
    for (double x : ctx.grid) {
        const double d = curve_height_at(ctx.target_curve, x) - curve_height_at(c, x);
        deficit = std::max(deficit, d);
    }
    return deficit;
}

double curve_gap_sup(const PopulationVector& p, const SearchContext& ctx) {
    const ThermoCurve c = build_curve(p, false);
    double gap = 0.0;
    for (double x : ctx.grid)
        gap = std::max(gap,
                       std::abs(curve_height_at(ctx.target_curve, x) - curve_height_at(c, x)));
    return gap;
}

// Critical lambdas in (0, 1] for thermalizing levels (i, j) from state p:
// beta-order crossings, target-curve touches, and full thermalization.
std::vector<double> critical_lambdas(const PopulationVector& p, int i, int j,
                                     const SearchContext& ctx) {
    const int d = p.dim();
    const double gi = ctx.gamma[i], gj = ctx.gamma[j];
    const double total = p.populations[i] + p.populations[j];
    const double pi_inf = gi / (gi + gj) * total; // lambda = 1 endpoint
    const double pj_inf = total - pi_inf;

    // ratio r_k(lambda) = a_k + b_k * lambda
    std::vector<double> a(d), b(d, 0.0);
    for (int k = 0; k < d; ++k) a[k] = p.populations[k] / ctx.gamma[k];
    b[i] = (pi_inf - p.populations[i]) / gi;
    b[j] = (pj_inf - p.populations[j]) / gj;

    std::vector<double> cuts;
    for (int m : {i, j}) {
        for (int k = 0; k < d; ++k) {
            if (k == m) continue;
            const double db = b[m] - b[k];
            if (std::abs(db) < 1e-300) continue;
            const double lam = (a[k] - a[m]) / db;
            if (lam > 1e-12 && lam < 1.0 - 1e-12) cuts.push_back(lam);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.push_back(1.0);

    std::vector<double> lambdas;
    lambdas.push_back(1.0);
    double lo = 0.0;
    for (double hi : cuts) {
        if (hi - lo > 1e-12) {
            // heights are linear in lambda while the order is fixed; two samples
            const double l1 = lo + 0.25 * (hi - lo);
            const double l2 = lo + 0.75 * (hi - lo);
            const PopulationVector p1 = apply_step(p, {i, j, l1});
            const PopulationVector p2 = apply_step(p, {i, j, l2});
            const ThermoCurve c1 = build_curve(p1, false);
            const ThermoCurve c2 = build_curve(p2, false);
            for (double x : ctx.grid) {
                const double h1 = curve_height_at(c1, x);
                const double h2 = curve_height_at(c2, x);
                const double tgt = curve_height_at(ctx.target_curve, x);
                if (std::abs(h2 - h1) < 1e-300) continue;
                const double lam = l1 + (tgt - h1) * (l2 - l1) / (h2 - h1);
                if (lam > lo + 1e-12 && lam < hi - 1e-12) lambdas.push_back(lam);
            }
        }
        if (hi < 1.0) lambdas.push_back(hi); // the order-change point itself
        lo = hi;
    }
    std::sort(lambdas.begin(), lambdas.end());
    lambdas.erase(std::unique(lambdas.begin(), lambdas.end(),
                              [](double x, double y) { return std::abs(x - y) < 1e-12; }),
                  lambdas.end());
    return lambdas;
}

bool dfs(const PopulationVector& cur, int depth, std::vector<ElementaryStep>& path,
         SearchContext& ctx) {
    const double deficit = curve_deficit(cur, ctx);
    if (deficit > ctx.cfg.curve_tol) return false; // dominance lost, dead branch
    ctx.best_residual = std::min(ctx.best_residual, std::max(deficit, 0.0));
    ctx.deepest = std::max(ctx.deepest, depth);
    if (curve_gap_sup(cur, ctx) <= ctx.cfg.curve_tol) return true; // arrived at q
    if (depth >= ctx.cfg.depth_cap) return false;
    const std::string key = quantize(cur.populations, ctx.cfg.state_quantum);
    if (!ctx.seen.insert(key).second) return false;

    const int d = cur.dim();
    for (int i = 0; i < d - 1; ++i) {
        for (int j = i + 1; j < d; ++j) {
            for (double lam : critical_lambdas(cur, i, j, ctx)) {
                path.push_back({i, j, lam});
                if (dfs(apply_step(cur, {i, j, lam}), depth + 1, path, ctx)) return true;
                path.pop_back();
            }
        }
    }
    return false;
}

} // namespace

MarkovDecision continuously_thermo_majorizes(const PopulationVector& p,
                                             const PopulationVector& q,
                                             const MarkovSearchConfig& cfg) {
    if (p.bath_beta != q.bath_beta)
        throw std::invalid_argument("continuous thermo-majorization requires a common bath");
    if (p.dim() != q.dim())
        throw std::invalid_argument("dimension mismatch");
    if (p.dim() > cfg.dimension_cap)
        throw std::runtime_error("dimension " + std::to_string(p.dim()) +
                                 " above the Markovian search cap " +
                                 std::to_string(cfg.dimension_cap));
    SearchContext ctx;
    ctx.cfg = cfg;
    if (ctx.cfg.depth_cap < 0) ctx.cfg.depth_cap = p.dim() * (p.dim() - 1);
    ctx.target = &q;
    ctx.target_curve = build_curve(q, false);
    ctx.gamma.resize(p.dim());
    for (int k = 0; k < p.dim(); ++k)
        ctx.gamma[k] = std::exp(-p.bath_beta * p.level_energies[k]);
    // touch grid: every vertex x either curve can have (cumsums of any order
    // are sub-sums of gamma; use target vertices plus all partial sums for
    // small d, else the descending-gamma cumsums)
    ctx.grid = ctx.target_curve.xs;
    {
        std::vector<double> g = ctx.gamma;
        std::sort(g.begin(), g.end(), std::greater<double>());
        double acc = 0.0;
        for (double w : g) {
            acc += w;
            ctx.grid.push_back(acc);
        }
        std::sort(ctx.grid.begin(), ctx.grid.end());
        ctx.grid.erase(std::unique(ctx.grid.begin(), ctx.grid.end()), ctx.grid.end());
    }

    MarkovDecision out;
    std::vector<ElementaryStep> path;
    out.reachable = dfs(p, 0, path, ctx);
    out.deepest_frontier = ctx.deepest;
    if (out.reachable) {
        out.certificate.steps = std::move(path);
        // replay to report the final residual
        PopulationVector cur = p;
        for (const auto& s : out.certificate.steps) cur = apply_step(cur, s);
        out.certificate.residual = curve_gap_sup(cur, ctx);
    } else {
        out.certificate.residual = ctx.best_residual;
    }
    return out;
}

MpembaResult max_product_temperature_markovian(const DensityMatrix& state,
                                               const Temperature& bath,
                                               const MarkovSearchConfig& cfg) {
    const double bath_beta = to_beta(bath);
    const auto red = state.reduce_to_qubit(0);
    const double pg = red[0].real(), pe = red[3].real();
    const double local_beta = std::log(pg / pe) / state.basis.gap();
    if (local_beta > bath_beta + 1e-12)
        throw std::domain_error("state is colder than the bath");
    // Markovian trajectories act on the energy-basis diagonal only
    PopulationVector pops{state.diagonal(), state.basis.energies(), bath_beta};

    const auto product = [&](double t_c) {
        const GibbsWeights gw = gibbs_weights(state.basis, to_beta(Temperature::celsius(t_c)));
        std::vector<double> p(gw.weights);
        for (double& v : p) v /= gw.partition_function;
        return PopulationVector{std::move(p), state.basis.energies(), bath_beta};
    };
    const auto reaches = [&](double t_c) {
        return continuously_thermo_majorizes(pops, product(t_c), cfg).reachable;
    };

    MpembaResult res;
    res.method = Method::markovian;
    const double local_c = Temperature::from_beta(local_beta).to_celsius();
    if (!reaches(local_c)) {
        res.diagnostic = "state cannot even reach its own local-temperature product form";
        return res;
    }
    // upper bracket: the non-Markovian bound plus margin always fails
    const MpembaResult upper = max_product_temperature(state, bath);
    double lo = local_c;
    double hi = upper.max_temperature ? upper.max_temperature->to_celsius() + 1.0 : local_c + 1.0;
    if (reaches(hi)) {
        res.diagnostic = "upper bracket unexpectedly reachable";
        res.max_temperature = Temperature::celsius(hi);
        return res;
    }
    while (hi - lo > 1e-3) {
        const double mid = 0.5 * (lo + hi);
        if (reaches(mid))
            lo = mid;
        else
            hi = mid;
    }
    res.max_temperature = Temperature::celsius(lo);
    return res;
}

std::string certificate_to_json(const MarkovCertificate& cert) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : cert.steps)
        arr.push_back({{"i", s.i}, {"j", s.j}, {"lambda", s.lambda}});
    return arr.dump(2);
}

std::string trajectory_to_csv(const std::vector<PopulationVector>& states,
                              const std::vector<TrajectoryLeg>& schedule) {
    if (states.empty()) return "";
    std::string out = "t";
    for (int k = 0; k < states.front().dim(); ++k) out += ",level_" + std::to_string(k);
    out += "\n";
    char buf[64];
    double t = 0.0;
    for (size_t s = 0; s < states.size(); ++s) {
        if (s > 0) t += schedule[s - 1].duration;
        std::snprintf(buf, sizeof(buf), "%.12f", t);
        out += buf;
        for (double v : states[s].populations) {
            std::snprintf(buf, sizeof(buf), ",%.12f", v);
            out += buf;
        }
        out += "\n";
    }
    return out;
}

} // namespace mpemba
