#include "mpemba/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>

namespace mpemba {

void PopulationVector::validate(double tol) const {
    if (populations.size() != level_energies.size())
        throw std::invalid_argument("populations/energies length mismatch");
    double sum = 0.0;
    for (double p : populations) {
        if (p < -tol) throw std::invalid_argument("negative population");
        sum += p;
    }
    if (std::abs(sum - 1.0) > tol)
        throw std::invalid_argument("populations must sum to 1, got " + std::to_string(sum));
}

PopulationVector population_vector(const std::vector<double>& pops,
                                   const EnergySpectrum& spec, double bath_beta) {
    if (static_cast<int>(pops.size()) != spec.dim())
        throw std::invalid_argument("population vector does not match spectrum dimension");
    PopulationVector p{pops, spec.energies(), bath_beta};
    p.validate();
    return p;
}

BetaOrdered beta_order(const PopulationVector& p) {
    const int d = p.dim();
    std::vector<double> ratio(d);
    for (int i = 0; i < d; ++i)
        ratio[i] = p.populations[i] * std::exp(p.bath_beta * p.level_energies[i]);
    std::vector<int> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(),
                     [&](int a, int b) { return ratio[a] > ratio[b]; });
    BetaOrdered out;
    out.permutation = perm;
    out.ordered.bath_beta = p.bath_beta;
    out.ordered.populations.resize(d);
    out.ordered.level_energies.resize(d);
    for (int k = 0; k < d; ++k) {
        out.ordered.populations[k] = p.populations[perm[k]];
        out.ordered.level_energies[k] = p.level_energies[perm[k]];
    }
    return out;
}

ThermoCurve build_curve(const PopulationVector& p, bool normalize) {
    const PopulationVector ordered = beta_order(p).ordered;
    const int d = ordered.dim();
    ThermoCurve c;
    c.normalized = normalize;
    c.xs.resize(d + 1);
    c.ys.resize(d + 1);
    c.xs[0] = 0.0;
    c.ys[0] = 0.0;
    double zx = 0.0;
    for (int i = 0; i < d; ++i)
        zx += std::exp(-ordered.bath_beta * ordered.level_energies[i]);
    for (int i = 0; i < d; ++i) {
        const double w = std::exp(-ordered.bath_beta * ordered.level_energies[i]);
        c.xs[i + 1] = c.xs[i] + (normalize ? w / zx : w);
        c.ys[i + 1] = c.ys[i] + ordered.populations[i];
    }
    if (normalize) c.xs[d] = 1.0; // clamp accumulated rounding
    return c;
}

double curve_height_at(const ThermoCurve& c, double x) {
    const double xmax = c.xs.back();
    if (x < -1e-12 || x > xmax * (1.0 + 1e-12))
        throw std::domain_error("x outside the curve's range");
    x = std::clamp(x, 0.0, xmax);
    const auto it = std::upper_bound(c.xs.begin(), c.xs.end(), x);
    if (it == c.xs.begin()) return c.ys.front();
    if (it == c.xs.end()) return c.ys.back();
    const size_t hi = static_cast<size_t>(it - c.xs.begin());
    const size_t lo = hi - 1;
    const double dx = c.xs[hi] - c.xs[lo];
    if (dx <= 0.0) return std::max(c.ys[lo], c.ys[hi]);
    const double t = (x - c.xs[lo]) / dx;
    return c.ys[lo] + t * (c.ys[hi] - c.ys[lo]);
}

MajorizationResult thermo_majorizes(const PopulationVector& p, const PopulationVector& q,
                                    double tol) {
    if (p.bath_beta != q.bath_beta)
        throw std::invalid_argument("thermo-majorization requires a common bath");
    {
        std::vector<double> ep = p.level_energies, eq = q.level_energies;
        std::sort(ep.begin(), ep.end());
        std::sort(eq.begin(), eq.end());
        if (ep != eq)
            throw std::invalid_argument("thermo-majorization requires a common level-energy multiset");
    }
    const ThermoCurve cp = build_curve(p, false);
    const ThermoCurve cq = build_curve(q, false);
    std::vector<double> grid;
    grid.reserve(cp.xs.size() + cq.xs.size());
    grid.insert(grid.end(), cp.xs.begin(), cp.xs.end());
    grid.insert(grid.end(), cq.xs.begin(), cq.xs.end());
    std::sort(grid.begin(), grid.end());
    MajorizationResult r;
    r.holds = true;
    for (double x : grid) {
        if (curve_height_at(cp, x) < curve_height_at(cq, x) - tol) {
            r.holds = false;
            r.witness_x = x;
            return r;
        }
    }
    return r;
}

std::vector<double> jacobi_eigenvalues(std::vector<cplx> a, int n) {
    auto at = [&](int i, int j) -> cplx& { return a[static_cast<size_t>(i) * n + j]; };
    if (n == 1) return {at(0, 0).real()};

    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += 2.0 * std::norm(at(i, j));
        if (std::sqrt(off) < 1e-13) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = at(p, q);
                if (std::abs(apq) < 1e-300) continue;
                const double app = at(p, p).real();
                const double aqq = at(q, q).real();
                // phase removal followed by a real rotation: A <- V^dag A V with
                // V = [[c, -s], [s*conj(ph), c*conj(ph)]], ph = a_pq/|a_pq|
                const cplx ph = apq / std::abs(apq);
                const double b = std::abs(apq);
                const double theta = 0.5 * std::atan2(2.0 * b, app - aqq);
                const double cs = std::cos(theta);
                const double sn = std::sin(theta);
                for (int k = 0; k < n; ++k) { // A <- A V
                    const cplx akp = at(k, p);
                    const cplx akq = at(k, q);
                    at(k, p) = cs * akp + sn * std::conj(ph) * akq;
                    at(k, q) = -sn * akp + cs * std::conj(ph) * akq;
                }
                for (int k = 0; k < n; ++k) { // A <- V^dag A
                    const cplx apk = at(p, k);
                    const cplx aqk = at(q, k);
                    at(p, k) = cs * apk + sn * ph * aqk;
                    at(q, k) = -sn * apk + cs * ph * aqk;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = at(i, i).real();
    std::sort(ev.begin(), ev.end(), std::greater<double>());
    return ev;
}

PopulationVector block_diagonalize_zero_mode(const DensityMatrix& m, double bath_beta) {
    if (!m.is_hermitian(1e-10))
        throw std::domain_error("block diagonalization requires a Hermitian matrix");
    std::vector<double> pops = m.diagonal();

    // group level indices by energy (abs tolerance 1e-12 eV)
    std::map<long long, std::vector<int>> groups;
    for (int i = 0; i < m.dim; ++i) {
        const long long key = std::llround(m.basis.energy(i) / 1e-12);
        groups[key].push_back(i);
    }
    for (const auto& [key, idx] : groups) {
        if (idx.size() < 2) continue;
        const int k = static_cast<int>(idx.size());
        bool has_offdiag = false;
        std::vector<cplx> sub(static_cast<size_t>(k) * k);
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < k; ++c) {
                sub[static_cast<size_t>(r) * k + c] = m.at(idx[r], idx[c]);
                if (r != c && std::abs(sub[static_cast<size_t>(r) * k + c]) > 1e-15)
                    has_offdiag = true;
            }
        if (!has_offdiag) continue;
        const std::vector<double> ev = jacobi_eigenvalues(std::move(sub), k);
        for (int r = 0; r < k; ++r) pops[idx[r]] = ev[r];
    }
    PopulationVector out{std::move(pops), m.basis.energies(), bath_beta};
    return out;
}

std::string curve_to_csv(const ThermoCurve& c) {
    std::string out = "x,y\n";
    char buf[80];
    for (size_t i = 0; i < c.xs.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.12f,%.12f\n", c.xs[i], c.ys[i]);
        out += buf;
    }
    return out;
}

} // namespace mpemba
