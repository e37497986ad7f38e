#include "mpemba/states.hpp"

#include <cmath>
#include <unordered_map>

namespace mpemba {

double DensityMatrix::trace() const {
    double t = 0.0;
    for (int i = 0; i < dim; ++i) t += at(i, i).real();
    return t;
}

bool DensityMatrix::is_hermitian(double tol) const {
    for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j)
            if (std::abs(at(i, j) - std::conj(at(j, i))) > tol) return false;
    return true;
}

std::vector<double> DensityMatrix::diagonal() const {
    std::vector<double> d(dim);
    for (int i = 0; i < dim; ++i) d[i] = at(i, i).real();
    return d;
}

std::vector<cplx> DensityMatrix::reduce_to_qubit(int qubit) const {
    if (qubit < 0 || qubit >= basis.n_qubits)
        throw std::invalid_argument("qubit index out of range");
    std::vector<cplx> red(4, cplx{0.0, 0.0});
    for (int i = 0; i < dim; ++i) {
        const std::string& li = basis.levels[i].label;
        for (int j = 0; j < dim; ++j) {
            const std::string& lj = basis.levels[j].label;
            bool rest_equal = true;
            for (int q = 0; q < basis.n_qubits && rest_equal; ++q)
                if (q != qubit && li[q] != lj[q]) rest_equal = false;
            if (!rest_equal) continue;
            const int a = li[qubit] == 'e' ? 1 : 0;
            const int b = lj[qubit] == 'e' ? 1 : 0;
            red[static_cast<size_t>(a) * 2 + b] += at(i, j);
        }
    }
    return red;
}

namespace {

struct PairPops {
    double pg, pe;
};

PairPops single_qubit_pops(double beta, const EnergySpectrum& spec) {
    const double wg = std::exp(-beta * spec.e_ground);
    const double we = std::exp(-beta * spec.e_excited);
    return {wg / (wg + we), we / (wg + we)};
}

} // namespace

double max_correlation_strength(CorrelationKind kind, double beta, const EnergySpectrum& pair_spec) {
    const auto [pg, pe] = single_qubit_pops(beta, pair_spec);
    switch (kind) {
        case CorrelationKind::entangled: return std::sqrt(pg * pe);
        case CorrelationKind::discord: return pg * pe;
        default: return 0.0;
    }
}

DensityMatrix build_pair(const EnergySpectrum& pair_spec, double beta, const CorrelationSpec& corr) {
    if (pair_spec.n_qubits != 2)
        throw std::invalid_argument("build_pair expects a 2-qubit spectrum");
    const auto [pg, pe] = single_qubit_pops(beta, pair_spec);

    const int gg = pair_spec.level_index("gg");
    const int ge = pair_spec.level_index("ge");
    const int eg = pair_spec.level_index("eg");
    const int ee = pair_spec.level_index("ee");

    DensityMatrix rho(pair_spec);
    double strength = 0.0;
    if (corr.kind == CorrelationKind::entangled || corr.kind == CorrelationKind::discord) {
        const double bound = max_correlation_strength(corr.kind, beta, pair_spec);
        strength = corr.max_strength ? bound : corr.strength;
        if (strength < 0.0 || strength > bound + 1e-15)
            throw std::domain_error("correlation strength " + std::to_string(strength) +
                                    " exceeds the positivity bound " + std::to_string(bound));
    }

    switch (corr.kind) {
        case CorrelationKind::product:
            rho.at(gg, gg) = pg * pg;
            rho.at(ge, ge) = pg * pe;
            rho.at(eg, eg) = pe * pg;
            rho.at(ee, ee) = pe * pe;
            break;
        case CorrelationKind::classical:
            rho.at(gg, gg) = pg;
            rho.at(ee, ee) = pe;
            break;
        case CorrelationKind::entangled:
            rho.at(gg, gg) = pg;
            rho.at(ee, ee) = pe;
            rho.at(gg, ee) = strength;
            rho.at(ee, gg) = strength;
            break;
        case CorrelationKind::discord:
            rho.at(gg, gg) = pg * pg;
            rho.at(ge, ge) = pg * pe;
            rho.at(eg, eg) = pe * pg;
            rho.at(ee, ee) = pe * pe;
            rho.at(ge, eg) = strength;
            rho.at(eg, ge) = strength;
            break;
    }
    return rho;
}

DensityMatrix compose_register(const std::vector<DensityMatrix>& pairs) {
    if (pairs.empty())
        throw std::invalid_argument("compose_register needs at least one pair");
    for (const auto& p : pairs)
        if (!p.basis.same_single_qubit_levels(pairs.front().basis))
            throw std::invalid_argument("pairs must share the same single-qubit spectrum");
    if (pairs.size() == 1) return pairs.front();

    int total_qubits = 0;
    for (const auto& p : pairs) total_qubits += p.basis.n_qubits;
    if (total_qubits > 14)
        throw std::runtime_error("register dimension cap exceeded (" +
                                 std::to_string(total_qubits) + " qubits)");

    EnergySpectrum spec(pairs.front().basis.e_ground, pairs.front().basis.e_excited, total_qubits);
    std::unordered_map<std::string, int> index_of;
    index_of.reserve(spec.levels.size());
    for (const auto& lv : spec.levels) index_of.emplace(lv.label, lv.index);

    DensityMatrix out(spec);
    const size_t k = pairs.size();
    std::vector<int> ri(k, 0), ci(k, 0);
    std::string rlabel, clabel;
    // enumerate multi-indices over the pair factors
    const auto advance = [&](std::vector<int>& idx) {
        for (size_t m = k; m-- > 0;) {
            if (++idx[m] < pairs[m].dim) return true;
            idx[m] = 0;
        }
        return false;
    };
    do {
        do {
            cplx v{1.0, 0.0};
            for (size_t m = 0; m < k && v != cplx{0.0, 0.0}; ++m)
                v *= pairs[m].at(ri[m], ci[m]);
            if (v != cplx{0.0, 0.0}) {
                rlabel.clear();
                clabel.clear();
                for (size_t m = 0; m < k; ++m) {
                    rlabel += pairs[m].basis.levels[ri[m]].label;
                    clabel += pairs[m].basis.levels[ci[m]].label;
                }
                out.at(index_of.at(rlabel), index_of.at(clabel)) = v;
            }
        } while (advance(ci));
    } while (advance(ri));
    return out;
}

DensityMatrix multipartite_classical(const EnergySpectrum& spec, double beta) {
    const auto [pg, pe] = single_qubit_pops(beta, spec);
    DensityMatrix rho(spec);
    const int ground = spec.level_index(std::string(spec.n_qubits, 'g'));
    const int top = spec.level_index(std::string(spec.n_qubits, 'e'));
    rho.at(ground, ground) = pg;
    rho.at(top, top) = pe;
    return rho;
}

} // namespace mpemba
