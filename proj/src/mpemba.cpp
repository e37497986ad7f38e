#include "mpemba/mpemba.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mpemba {

namespace {

// Cumulative height of the k-th product-curve vertex (1-based k) at inverse
// temperature beta; energies must be sorted in descending order.
double product_vertex_height(double beta, int k, const std::vector<double>& energies_desc) {
    double num = 0.0, z = 0.0;
    const int d = static_cast<int>(energies_desc.size());
    for (int i = 0; i < d; ++i) {
        const double w = std::exp(-beta * energies_desc[i]);
        z += w;
        if (i < k) num += w;
    }
    return num / z;
}

PopulationVector product_pops(double beta, const EnergySpectrum& spec, double bath_beta) {
    const GibbsWeights gw = gibbs_weights(spec, beta);
    std::vector<double> p(gw.weights);
    for (double& v : p) v /= gw.partition_function;
    return PopulationVector{std::move(p), spec.energies(), bath_beta};
}

} // namespace

MpembaResult max_product_temperature(const PopulationVector& pops, const EnergySpectrum& spec) {
    const double bath_beta = pops.bath_beta;
    const int d = pops.dim();
    if (d != spec.dim())
        throw std::invalid_argument("population vector does not match the spectrum");

    std::vector<double> energies_desc = spec.energies();
    std::sort(energies_desc.begin(), energies_desc.end(), std::greater<double>());

    // product-curve x-vertices are independent of beta (descending-energy order)
    std::vector<double> xs(d);
    {
        double acc = 0.0;
        for (int i = 0; i < d; ++i) {
            acc += std::exp(-bath_beta * energies_desc[i]);
            xs[i] = acc;
        }
    }
    const ThermoCurve state_curve = build_curve(pops, false);
    std::vector<double> y(d);
    for (int i = 0; i < d; ++i) y[i] = curve_height_at(state_curve, xs[i]);

    const double gap = spec.gap();
    const double beta_lo = 1e-12;
    MpembaResult res;
    res.method = Method::non_markovian;

    // phase 1: solve the touching beta of every vertex independently
    std::vector<double> beta_of_vertex(d, -1.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int k = 1; k <= d; ++k) {
        const double target = y[k - 1];
        if (target >= 1.0 - 1e-14) continue; // vertex at the top, no constraint
        // height is strictly decreasing in beta; bracket then bisect
        double lo = beta_lo, hi = bath_beta;
        if (product_vertex_height(lo, k, energies_desc) < target) continue;
        if (product_vertex_height(hi, k, energies_desc) > target) continue;
        while ((hi - lo) * gap > 1e-12) {
            const double mid = 0.5 * (lo + hi);
            if (product_vertex_height(mid, k, energies_desc) > target)
                lo = mid;
            else
                hi = mid;
        }
        beta_of_vertex[k - 1] = 0.5 * (lo + hi);
    }

    // phase 2: the hottest touching product state that is still majorized wins;
    // test candidates in ascending beta so the first success is the minimum
    std::vector<int> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return beta_of_vertex[a] < beta_of_vertex[b];
    });
    double best_beta = -1.0;
    for (int idx : order) {
        const double beta_k = beta_of_vertex[idx];
        if (beta_k < 0.0) continue;
        if (thermo_majorizes(pops, product_pops(beta_k, spec, bath_beta)).holds) {
            best_beta = beta_k;
            res.binding_vertex = idx + 1;
            break;
        }
    }
    if (best_beta < 0.0) {
        res.diagnostic = "no touching product state found";
        return res;
    }

    // boundary certificate: tighten against the first failing beta above
    double beta_pass = best_beta;
    const double t_pass = Temperature::from_beta(beta_pass).to_celsius();
    double beta_fail = to_beta(Temperature::celsius(t_pass + 0.1));
    if (thermo_majorizes(pops, product_pops(beta_fail, spec, bath_beta)).holds) {
        res.diagnostic = "boundary not tight: majorization persists 0.1 C above the result";
    } else {
        while ((beta_pass - beta_fail) * gap > 1e-6) {
            const double mid = 0.5 * (beta_pass + beta_fail);
            if (thermo_majorizes(pops, product_pops(mid, spec, bath_beta)).holds)
                beta_pass = mid;
            else
                beta_fail = mid;
        }
    }
    res.max_temperature = Temperature::from_beta(beta_pass);
    return res;
}

MpembaResult max_product_temperature(const DensityMatrix& state, const Temperature& bath) {
    const double bath_beta = to_beta(bath);
    // local inverse temperature from the first qubit's reduced state
    const auto red = state.reduce_to_qubit(0);
    const double pg = red[0].real(), pe = red[3].real();
    const double local_beta = std::log(pg / pe) / state.basis.gap();
    if (local_beta > bath_beta + 1e-12)
        throw std::domain_error("state is colder than the bath");
    const PopulationVector pops = block_diagonalize_zero_mode(state, bath_beta);
    return max_product_temperature(pops, state.basis);
}

CcConditions cc_conditions(double beta_c, double beta_h, double beta_b,
                           const EnergySpectrum& pair_spec) {
    const double eg = pair_spec.e_ground, ee = pair_spec.e_excited;
    const double zp = std::pow(std::exp(-beta_h * eg) + std::exp(-beta_h * ee), 2.0);
    const double zc = std::exp(-beta_c * eg) + std::exp(-beta_c * ee);
    CcConditions out;
    out.first_point_ok = std::exp(-2.0 * beta_h * ee) / zp < std::exp(-beta_c * ee) / zc;
    const double lhs = (std::exp(-2.0 * beta_h * ee) + 2.0 * std::exp(-beta_h * (eg + ee))) / zp;
    const double rhs =
        (std::exp(-beta_c * ee) + 2.0 * std::exp(-beta_b * (ee - eg) - beta_c * eg)) / zc;
    out.intersection_residual = lhs - rhs;
    return out;
}

bool discord_lambda_constraint(double beta_c, double beta_b, const EnergySpectrum& pair_spec) {
    return (beta_b - beta_c) * pair_spec.gap() <= std::log(2.0);
}

namespace {

double entropy_of(const std::vector<double>& eigs) {
    double s = 0.0;
    for (double p : eigs)
        if (p > 0.0) s -= p * std::log(p);
    return s;
}

} // namespace

double free_energy(const DensityMatrix& state, double bath_beta) {
    if (!(bath_beta > 0.0))
        throw std::domain_error("free energy needs a finite positive bath beta");
    double energy = 0.0;
    for (int i = 0; i < state.dim; ++i)
        energy += state.at(i, i).real() * state.basis.energy(i);
    const std::vector<double> eigs = jacobi_eigenvalues(state.entries, state.dim);
    return energy - entropy_of(eigs) / bath_beta;
}

double free_energy(const PopulationVector& pops, double bath_beta) {
    if (!(bath_beta > 0.0))
        throw std::domain_error("free energy needs a finite positive bath beta");
    double energy = 0.0;
    for (int i = 0; i < pops.dim(); ++i)
        energy += pops.populations[i] * pops.level_energies[i];
    return energy - entropy_of(pops.populations) / bath_beta;
}

// ---- scans -------------------------------------------------------------

std::string register_kind_name(RegisterKind k) {
    switch (k) {
        case RegisterKind::product: return "p";
        case RegisterKind::classical: return "cc";
        case RegisterKind::entangled: return "qce";
        case RegisterKind::discord: return "qcd";
        case RegisterKind::multipartite_classical: return "multi-cc";
    }
    throw std::logic_error("unreachable");
}

RegisterKind register_kind_from_name(const std::string& name) {
    if (name == "p") return RegisterKind::product;
    if (name == "cc") return RegisterKind::classical;
    if (name == "qce") return RegisterKind::entangled;
    if (name == "qcd") return RegisterKind::discord;
    if (name == "multi-cc") return RegisterKind::multipartite_classical;
    throw std::invalid_argument("unknown correlation kind: " + name);
}

namespace {

// Pair population vector after zero-mode rotation, canonical order gg,ge,eg,ee.
std::vector<double> pair_pops_rotated(RegisterKind kind, double local_beta,
                                      const EnergySpectrum& pair_spec) {
    const double wg = std::exp(-local_beta * pair_spec.e_ground);
    const double we = std::exp(-local_beta * pair_spec.e_excited);
    const double pg = wg / (wg + we), pe = we / (wg + we);
    switch (kind) {
        case RegisterKind::product: return {pg * pg, pg * pe, pe * pg, pe * pe};
        case RegisterKind::classical:
        case RegisterKind::entangled:
            // the entangled state's coherences sit outside the zero mode,
            // so its population vector equals the classical one
            return {pg, 0.0, 0.0, pe};
        case RegisterKind::discord: {
            const double lam = pg * pe; // maximum permissible value
            return {pg * pg, pg * pe + lam, pg * pe - lam, pe * pe};
        }
        default:
            throw std::logic_error("multipartite kind has no pair form");
    }
}

} // namespace

PopulationVector scan_register_pops(RegisterKind kind, int n_pairs, ScanMode mode,
                                    double local_beta, double bath_beta,
                                    const EnergySpectrum& pair_spec) {
    if (n_pairs < 1) throw std::invalid_argument("n_pairs must be positive");
    if (n_pairs > 7)
        throw std::runtime_error("scan dimension cap exceeded: " + std::to_string(n_pairs) +
                                 " pairs (hard cap 7)");
    const int nq = 2 * n_pairs;
    const EnergySpectrum spec(pair_spec.e_ground, pair_spec.e_excited, nq);
    const int d = spec.dim();

    std::vector<double> lex; // composite populations in lexicographic qubit order
    if (kind == RegisterKind::multipartite_classical) {
        const double wg = std::exp(-local_beta * pair_spec.e_ground);
        const double we = std::exp(-local_beta * pair_spec.e_excited);
        lex.assign(d, 0.0);
        lex.front() = wg / (wg + we);
        lex.back() = we / (wg + we);
    } else {
        lex = pair_pops_rotated(kind, local_beta, pair_spec);
        for (int m = 1; m < n_pairs; ++m) {
            const RegisterKind next =
                (mode == ScanMode::scaling) ? kind : RegisterKind::product;
            const std::vector<double> factor = pair_pops_rotated(next, local_beta, pair_spec);
            std::vector<double> prod(lex.size() * factor.size());
            for (size_t a = 0; a < lex.size(); ++a)
                for (size_t b = 0; b < factor.size(); ++b)
                    prod[a * factor.size() + b] = lex[a] * factor[b];
            lex = std::move(prod);
        }
    }

    // lexicographic bit index -> canonical (energy-major) index
    std::unordered_map<std::string, int> index_of;
    index_of.reserve(spec.levels.size());
    for (const auto& lv : spec.levels) index_of.emplace(lv.label, lv.index);
    std::vector<double> pops(d, 0.0);
    std::string label(nq, 'g');
    for (int bits = 0; bits < d; ++bits) {
        for (int q = 0; q < nq; ++q)
            label[q] = ((bits >> (nq - 1 - q)) & 1) ? 'e' : 'g';
        pops[index_of.at(label)] = lex[bits];
    }
    return PopulationVector{std::move(pops), spec.energies(), bath_beta};
}

namespace {

std::vector<ScanRow> run_scan(const ScanConfig& cfg, ScanMode mode) {
    const double local_beta = to_beta(cfg.local_t);
    const double bath_beta = to_beta(cfg.bath_t);
    if (!(bath_beta > local_beta))
        throw std::invalid_argument("bath must be colder than the local temperature");
    if (cfg.max_pairs > 7)
        throw std::runtime_error("scan dimension cap exceeded (hard cap 7 pairs)");

    struct Cell {
        RegisterKind kind;
        int n;
    };
    std::vector<Cell> grid;
    for (RegisterKind k : cfg.kinds)
        for (int n = 1; n <= cfg.max_pairs; ++n) grid.push_back({k, n});

    std::vector<ScanRow> rows(grid.size());
    const auto compute = [&](size_t i) {
        const auto [kind, n] = grid[i];
        const EnergySpectrum spec(cfg.pair_spec.e_ground, cfg.pair_spec.e_excited, 2 * n);
        const PopulationVector pops =
            scan_register_pops(kind, n, mode, local_beta, bath_beta, cfg.pair_spec);
        ScanRow row;
        row.kind = kind;
        row.n_pairs = n;
        row.local_t_c = cfg.local_t.to_celsius();
        row.bath_t_c = cfg.bath_t.to_celsius();
        row.result = max_product_temperature(pops, spec);
        rows[i] = std::move(row);
    };

    if (cfg.exec == ScanExec::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (long long i = 0; i < static_cast<long long>(grid.size()); ++i)
            compute(static_cast<size_t>(i));
    } else {
        // true single-thread reference: also disables the kernel-level loops
#ifdef _OPENMP
        const int prev_threads = omp_get_max_threads();
        omp_set_num_threads(1);
#endif
        for (size_t i = 0; i < grid.size(); ++i) compute(i);
#ifdef _OPENMP
        omp_set_num_threads(prev_threads);
#endif
    }
    return rows;
}

} // namespace

std::vector<ScanRow> scan_dimensionality(const ScanConfig& cfg) {
    return run_scan(cfg, ScanMode::dimensionality);
}

std::vector<ScanRow> scan_scaling(const ScanConfig& cfg) {
    return run_scan(cfg, ScanMode::scaling);
}

std::string scan_to_csv(const std::vector<ScanRow>& rows) {
    std::string out = "kind,n_pairs,local_T_C,bath_T_C,max_T_C,method\n";
    char buf[160];
    for (const auto& r : rows) {
        const Temperature local = Temperature::celsius(r.local_t_c);
        std::string max_t = "none";
        if (r.result.has_mpemba(local)) {
            std::snprintf(buf, sizeof(buf), "%.2f", r.result.max_temperature->to_celsius());
            max_t = buf;
        }
        std::snprintf(buf, sizeof(buf), "%s,%d,%.2f,%.2f,%s,%s\n",
                      register_kind_name(r.kind).c_str(), r.n_pairs, r.local_t_c, r.bath_t_c,
                      max_t.c_str(),
                      r.result.method == Method::markovian ? "markovian" : "non-markovian");
        out += buf;
    }
    return out;
}

} // namespace mpemba
