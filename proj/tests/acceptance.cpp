// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances and runtime budgets are pinned here on purpose.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "mpemba/coherence.hpp"
#include "mpemba/markovian.hpp"
#include "mpemba/mpemba.hpp"

using namespace mpemba;
using clock_type = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("criterion %d: %s — %s\n", criterion, pass ? "PASS" : "FAIL", detail.c_str());
    if (!pass) ++failures;
}

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

const EnergySpectrum pair_spec(0.0, 0.05, 2);
const Temperature bath = Temperature::celsius(0.0);
const double beta_b = to_beta(bath);
const double beta_c = to_beta(Temperature::celsius(60.0));

template <typename... Args>
std::string fmt(const char* f, Args... args) {
    char buf[192];
    std::snprintf(buf, sizeof(buf), f, args...);
    return buf;
}

PopulationVector product_pops(double t_c) {
    const GibbsWeights gw = gibbs_weights(pair_spec, to_beta(Temperature::celsius(t_c)));
    std::vector<double> p(gw.weights);
    for (double& v : p) v /= gw.partition_function;
    return population_vector(p, pair_spec, beta_b);
}

// independent closed-form eigenvalues for the brute-force cross-checks
std::vector<double> eigs2x2(const std::vector<cplx>& m) {
    const double tr = m[0].real() + m[3].real();
    const double det = (m[0] * m[3] - m[1] * m[2]).real();
    const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
    return {tr / 2.0 + disc, tr / 2.0 - disc};
}

std::vector<double> eigs3x3(const std::vector<cplx>& m) {
    // trigonometric solution of the characteristic cubic of a Hermitian matrix
    const double q = (m[0].real() + m[4].real() + m[8].real()) / 3.0;
    std::vector<cplx> b = m;
    for (int i = 0; i < 3; ++i) b[i * 3 + i] -= q;
    double p2 = 0.0;
    for (int i = 0; i < 9; ++i) p2 += std::norm(b[i]);
    const double p = std::sqrt(p2 / 6.0);
    if (p < 1e-300) return {q, q, q};
    for (auto& v : b) v /= p;
    const cplx det = b[0] * (b[4] * b[8] - b[5] * b[7]) - b[1] * (b[3] * b[8] - b[5] * b[6]) +
                     b[2] * (b[3] * b[7] - b[4] * b[6]);
    const double r = std::min(1.0, std::max(-1.0, det.real() / 2.0));
    const double phi = std::acos(r) / 3.0;
    const double e1 = q + 2.0 * p * std::cos(phi);
    const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
    return {e1, 3.0 * q - e1 - e3, e3};
}

// --- criteria ------------------------------------------------------------

void criterion_1() {
    const auto t0 = clock_type::now();
    const auto cc = build_pair(pair_spec, beta_c, CorrelationSpec::max(CorrelationKind::classical));
    const auto res = max_product_temperature(cc, bath);
    const double dt = seconds_since(t0);
    const bool has = res.max_temperature.has_value();
    const double t = has ? res.max_temperature->to_celsius() : -1e9;
    report(1, has && std::abs(t - 136.70) < 0.05 && dt < 1.0,
           fmt("classical pair non-Markovian max %.4f C (want 136.70 +/- 0.05) in %.3f s", t, dt));
}

void criterion_2() {
    const auto t0 = clock_type::now();
    const auto qd = build_pair(pair_spec, beta_c, CorrelationSpec::max(CorrelationKind::discord));
    const auto res = max_product_temperature(qd, bath);
    const double dt = seconds_since(t0);
    const bool has = res.max_temperature.has_value();
    const double t = has ? res.max_temperature->to_celsius() : -1e9;
    report(2, has && std::abs(t - 99.62) < 0.05 && dt < 1.0,
           fmt("discord pair non-Markovian max %.4f C (want 99.62 +/- 0.05) in %.3f s", t, dt));
}

void criterion_3() {
    const auto t0 = clock_type::now();
    const auto cc = build_pair(pair_spec, beta_c, CorrelationSpec::max(CorrelationKind::classical));
    const auto res = max_product_temperature_markovian(cc, bath);
    const double dt = seconds_since(t0);
    const bool has = res.max_temperature.has_value();
    const double t = has ? res.max_temperature->to_celsius() : -1e9;
    report(3, has && std::abs(t - 102.80) < 0.5 && dt < 60.0,
           fmt("classical pair Markovian max %.4f C (want 102.80 +/- 0.5) in %.3f s", t, dt));
}

void criterion_4() {
    const auto qd = build_pair(pair_spec, beta_c, CorrelationSpec::max(CorrelationKind::discord));
    const auto res = max_product_temperature_markovian(qd, bath);
    const bool none = !res.has_mpemba(Temperature::celsius(60.0));
    report(4, none, none ? std::string("discord pair Markovian max is none")
                         : fmt("discord pair unexpectedly reaches %.4f C",
                               res.max_temperature->to_celsius()));
}

void criterion_5() {
    // Result-1 intersection equation, solved independently by bisection on the
    // closed-form residual; the first condition must hold at the root.
    double lo = to_beta(Temperature::celsius(200.0)), hi = beta_c;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (cc_conditions(beta_c, mid, beta_b, pair_spec).intersection_residual > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    const double t_cc_analytic = Temperature::from_beta(0.5 * (lo + hi)).to_kelvin();
    const bool first_ok = cc_conditions(beta_c, 0.5 * (lo + hi), beta_b, pair_spec).first_point_ok;

    // Result-2 first-vertex equation: P_e(b_h)^2 equals the rotated discord
    // curve height at x = e^{-2 b_b E_e}, the product curve's first vertex.
    const auto qd = build_pair(pair_spec, beta_c, CorrelationSpec::max(CorrelationKind::discord));
    const auto pops = block_diagonalize_zero_mode(qd, beta_b);
    const double ee = pair_spec.e_excited;
    const double target_height =
        curve_height_at(build_curve(pops, false), std::exp(-2.0 * beta_b * ee));
    double blo = to_beta(Temperature::celsius(200.0)), bhi = beta_c;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (blo + bhi);
        const double z = std::exp(-mid * pair_spec.e_ground) + std::exp(-mid * ee);
        const double h = std::exp(-2.0 * mid * ee) / (z * z);
        if (h < target_height)
            bhi = mid; // too cold: the first vertex sits below the curve
        else
            blo = mid;
    }
    const double t_qcd_analytic = Temperature::from_beta(0.5 * (blo + bhi)).to_kelvin();

    const auto cc = build_pair(pair_spec, beta_c, CorrelationSpec::max(CorrelationKind::classical));
    const double t_cc_algo = max_product_temperature(cc, bath).max_temperature->to_kelvin();
    const double t_qcd_algo = max_product_temperature(qd, bath).max_temperature->to_kelvin();

    const bool pass = first_ok && std::abs(t_cc_algo - t_cc_analytic) < 0.01 &&
                      std::abs(t_qcd_algo - t_qcd_analytic) < 0.01 &&
                      std::abs(t_cc_analytic - 409.85) < 0.01 &&
                      std::abs(t_qcd_analytic - 372.78) < 0.01;
    report(5, pass,
           fmt("analytic roots %.4f K and %.4f K match the algorithmic results to 0.01 K",
               t_cc_analytic, t_qcd_analytic));
}

void criterion_6() {
    const double v = (beta_b - beta_c) * pair_spec.gap();
    const bool pass = std::abs(v - 0.3826) < 1e-3 && v < std::log(2.0) &&
                      discord_lambda_constraint(beta_c, beta_b, pair_spec);
    report(6, pass, fmt("(beta_b - beta_c) dE = %.6f < ln 2 = %.6f", v, std::log(2.0)));
}

bool suite_preorder(std::string& msg) {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int d : {4, 8, 16}) {
        const int nq = d == 4 ? 2 : (d == 8 ? 3 : 4);
        const EnergySpectrum spec(0.0, 0.05, nq);
        const GibbsWeights gw = gibbs_weights(spec, beta_b);
        std::vector<double> g(gw.weights);
        for (double& v : g) v /= gw.partition_function;
        const auto gibbs = population_vector(g, spec, beta_b);
        for (int trial = 0; trial < 334; ++trial) {
            std::vector<double> p(d);
            double sum = 0.0;
            for (double& v : p) sum += v = uni(rng);
            for (double& v : p) v /= sum;
            const auto pv = population_vector(p, spec, beta_b);
            if (!thermo_majorizes(pv, pv).holds) {
                msg = "reflexivity failed at d=" + std::to_string(d);
                return false;
            }
            if (!thermo_majorizes(pv, gibbs).holds) {
                msg = "Gibbs-minimality failed at d=" + std::to_string(d);
                return false;
            }
            // transitivity along the mixing chain p -> q -> r toward Gibbs
            std::vector<double> q(d), r(d);
            for (int i = 0; i < d; ++i) {
                q[i] = 0.6 * p[i] + 0.4 * g[i];
                r[i] = 0.2 * p[i] + 0.8 * g[i];
            }
            const auto qv = population_vector(q, spec, beta_b);
            const auto rv = population_vector(r, spec, beta_b);
            if (!thermo_majorizes(pv, qv).holds || !thermo_majorizes(qv, rv).holds ||
                !thermo_majorizes(pv, rv).holds) {
                msg = "transitivity chain failed at d=" + std::to_string(d);
                return false;
            }
        }
    }
    msg = "preorder axioms and Gibbs-minimality on 1002 random states at d in {4,8,16}";
    return true;
}

bool suite_containment_and_replay(std::string& msg) {
    // (b) Markovian implies non-Markovian; (d) every Markovian true replays
    const auto cc = build_pair(pair_spec, beta_c, CorrelationSpec::max(CorrelationKind::classical));
    const auto qd = build_pair(pair_spec, beta_c, CorrelationSpec::max(CorrelationKind::discord));
    const auto rp = build_pair(pair_spec, beta_c, CorrelationSpec::product());
    int replays = 0;
    for (const DensityMatrix* s : {&cc, &qd, &rp}) {
        const auto pops = population_vector(s->diagonal(), s->basis, beta_b);
        for (double t : {60.0, 61.0, 80.0, 100.0, 102.5, 110.0}) {
            const auto target = product_pops(t);
            const auto dec = continuously_thermo_majorizes(pops, target);
            if (dec.reachable) {
                if (!thermo_majorizes(pops, target).holds) {
                    msg = fmt("containment violated at target %.1f C", t);
                    return false;
                }
                auto state = pops;
                for (const auto& step : dec.certificate.steps) state = apply_step(state, step);
                const auto fc = build_curve(state, false);
                const auto tc = build_curve(target, false);
                for (size_t i = 0; i < tc.xs.size(); ++i)
                    if (std::abs(curve_height_at(fc, tc.xs[i]) - tc.ys[i]) > 1e-8) {
                        msg = fmt("certificate replay missed the target at %.1f C", t);
                        return false;
                    }
                ++replays;
            }
        }
    }
    msg = "Markovian containment on 18 decisions, " + std::to_string(replays) +
          " certificates replayed";
    return true;
}

bool suite_qce_equals_cc(std::string& msg) {
    // (c) rotated entangled populations equal the classical ones, and the
    // result does not depend on mu
    const auto cc_pops = block_diagonalize_zero_mode(
        build_pair(pair_spec, beta_c, CorrelationSpec::max(CorrelationKind::classical)), beta_b);
    const double mu_max =
        max_correlation_strength(CorrelationKind::entangled, beta_c, pair_spec);
    double ref = -1.0;
    for (double f : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const auto qe = build_pair(pair_spec, beta_c,
                                   CorrelationSpec::with_strength(CorrelationKind::entangled,
                                                                  f * mu_max));
        if (f == 1.0) {
            const auto qe_pops = block_diagonalize_zero_mode(qe, beta_b);
            for (int i = 0; i < 4; ++i)
                if (std::abs(qe_pops.populations[i] - cc_pops.populations[i]) > 1e-12) {
                    msg = "rotated entangled populations differ from classical";
                    return false;
                }
        }
        const auto res = max_product_temperature(qe, bath);
        const double t = res.max_temperature->to_celsius();
        if (ref < 0.0)
            ref = t;
        else if (std::abs(t - ref) > 1e-9) {
            msg = fmt("mu-dependence detected: %.6f vs %.6f", t, ref);
            return false;
        }
    }
    msg = "entangled = classical after rotation; result mu-independent across 5 strengths";
    return true;
}

bool suite_mode_reconstruction(std::string& msg) {
    // (e) exact reconstruction on 1000 random Hermitian matrices up to d = 64
    std::mt19937 rng(7);
    std::normal_distribution<double> gauss(0.0, 1.0);
    int done = 0;
    for (int nq = 1; nq <= 6; ++nq) {
        const EnergySpectrum spec(0.0, 0.05, nq);
        const int trials = nq == 6 ? 165 : 167;
        for (int t = 0; t < trials; ++t, ++done) {
            DensityMatrix m(spec);
            for (int i = 0; i < m.dim; ++i) {
                m.at(i, i) = gauss(rng);
                for (int j = i + 1; j < m.dim; ++j) {
                    const cplx v{gauss(rng), gauss(rng)};
                    m.at(i, j) = v;
                    m.at(j, i) = std::conj(v);
                }
            }
            const auto back = mode_reconstruct(mode_decompose(m), spec);
            for (size_t k = 0; k < m.entries.size(); ++k)
                if (back.entries[k] != m.entries[k]) {
                    msg = "reconstruction mismatch at d=" + std::to_string(m.dim);
                    return false;
                }
        }
    }
    msg = "exact mode reconstruction on " + std::to_string(done) + " matrices up to d=64";
    return true;
}

bool suite_block_eigs(std::string& msg) {
    // (f) eigenvalues of random degenerate blocks vs closed-form solvers
    std::mt19937 rng(11);
    std::normal_distribution<double> gauss(0.0, 0.3);
    for (int trial = 0; trial < 500; ++trial) {
        // 2x2 degenerate (ge, eg) block of a pair state
        DensityMatrix m(pair_spec);
        const double a = std::abs(gauss(rng)) + 0.5, d = std::abs(gauss(rng)) + 0.5;
        const cplx off{gauss(rng), gauss(rng)};
        m.at(1, 1) = a;
        m.at(2, 2) = d;
        m.at(1, 2) = off;
        m.at(2, 1) = std::conj(off);
        m.at(0, 0) = 0.1;
        m.at(3, 3) = 0.1;
        const auto pops = block_diagonalize_zero_mode(m, beta_b);
        const auto ref = eigs2x2({m.at(1, 1), m.at(1, 2), m.at(2, 1), m.at(2, 2)});
        if (std::abs(pops.populations[1] - ref[0]) > 1e-10 ||
            std::abs(pops.populations[2] - ref[1]) > 1e-10) {
            msg = "2x2 block eigenvalues disagree with the closed form";
            return false;
        }
        // 3x3 degenerate block of a 3-qubit register (levels 1..3 share energy)
        const EnergySpectrum spec3(0.0, 0.05, 3);
        DensityMatrix m3(spec3);
        std::vector<cplx> blk(9);
        for (int i = 0; i < 3; ++i) {
            blk[i * 3 + i] = std::abs(gauss(rng)) + 0.5;
            for (int j = i + 1; j < 3; ++j) {
                const cplx v{gauss(rng), gauss(rng)};
                blk[i * 3 + j] = v;
                blk[j * 3 + i] = std::conj(v);
            }
        }
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m3.at(1 + i, 1 + j) = blk[i * 3 + j];
        m3.at(0, 0) = 0.1;
        for (int k = 4; k < 8; ++k) m3.at(k, k) = 0.05;
        const auto pops3 = block_diagonalize_zero_mode(m3, beta_b);
        auto ref3 = eigs3x3(blk);
        std::sort(ref3.begin(), ref3.end(), std::greater<double>());
        for (int i = 0; i < 3; ++i)
            if (std::abs(pops3.populations[1 + i] - ref3[i]) > 1e-9) {
                msg = "3x3 block eigenvalues disagree with the closed form";
                return false;
            }
    }
    msg = "block eigenvalues match closed-form solvers on 1000 random degenerate blocks";
    return true;
}

void criterion_7() {
    const auto t0 = clock_type::now();
    std::string detail, msg;
    bool pass = true;
    for (auto* suite : {&suite_preorder, &suite_containment_and_replay, &suite_qce_equals_cc,
                        &suite_mode_reconstruction, &suite_block_eigs}) {
        if (!(*suite)(msg)) {
            pass = false;
            detail = msg;
            break;
        }
    }
    const double dt = seconds_since(t0);
    if (pass && dt >= 300.0) {
        pass = false;
        detail = fmt("suites exceeded the 5 min budget: %.1f s", dt);
    }
    if (pass) detail = fmt("all five property suites green in %.1f s", dt);
    report(7, pass, detail);
}

void criterion_8() {
    const auto t0 = clock_type::now();
    ScanConfig cfg;
    cfg.kinds = {RegisterKind::classical, RegisterKind::entangled, RegisterKind::discord};
    cfg.max_pairs = 4;
    const auto scaling = scan_scaling(cfg);
    const auto dimensionality = scan_dimensionality(cfg);
    const double dt = seconds_since(t0);

    bool pass = dt < 120.0 && scaling.size() == 12 && dimensionality.size() == 12;
    std::string detail;
    const auto value = [](const ScanRow& r) {
        return r.result.max_temperature ? r.result.max_temperature->to_celsius() : -1e9;
    };
    for (const auto* rows : {&scaling, &dimensionality}) {
        if (!pass) break;
        // rows are ordered kind-major: cc 1..4, qce 1..4, qcd 1..4
        if (std::abs(value((*rows)[0]) - 136.70) > 0.05) {
            pass = false;
            detail = "classical n=1 anchor missing";
        }
        if (std::abs(value((*rows)[8]) - 99.62) > 0.05) {
            pass = false;
            detail = "discord n=1 anchor missing";
        }
        for (int n = 0; n < 4 && pass; ++n)
            if (std::abs(value((*rows)[n]) - value((*rows)[4 + n])) > 1e-9) {
                pass = false;
                detail = "entangled row differs from classical at n=" + std::to_string(n + 1);
            }
    }
    if (pass) detail = fmt("both scans for n=1..4 with anchors and QC-E = CC rows in %.1f s", dt);
    report(8, pass, detail);
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    return failures == 0 ? 0 : 1;
}
