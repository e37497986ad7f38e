#include "mpemba/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mpemba {

double Temperature::to_kelvin() const {
    switch (unit) {
        case TempUnit::celsius: return value + celsius_offset;
        case TempUnit::kelvin: return value;
        case TempUnit::inverse_ev:
            if (value < 0.0)
                throw std::domain_error("negative inverse temperature");
            if (value == 0.0) return std::numeric_limits<double>::infinity();
            return 1.0 / (k_boltzmann_ev * value);
    }
    throw std::logic_error("unreachable");
}

double to_beta(const Temperature& t) {
    if (t.unit == TempUnit::inverse_ev) {
        if (t.value < 0.0)
            throw std::domain_error("negative inverse temperature");
        return t.value;
    }
    const double kelvin = t.to_kelvin();
    if (!(kelvin > 0.0))
        throw std::domain_error("temperature must be positive in kelvin, got " +
                                std::to_string(kelvin));
    if (std::isinf(kelvin)) return 0.0;
    return 1.0 / (k_boltzmann_ev * kelvin);
}

EnergySpectrum::EnergySpectrum(double eg, double ee, int n)
    : e_ground(eg), e_excited(ee), n_qubits(n) {
    if (!(ee > eg))
        throw std::invalid_argument("excited level must lie above ground level");
    if (n <= 0)
        throw std::invalid_argument("n_qubits must be positive");
    if (n > 20)
        throw std::invalid_argument("n_qubits too large");
    const int d = 1 << n;
    levels.reserve(d);
    for (int bits = 0; bits < d; ++bits) {
        Level lv;
        std::string label(n, 'g');
        double e = 0.0;
        for (int q = 0; q < n; ++q) {
            const bool excited = (bits >> (n - 1 - q)) & 1;
            if (excited) label[q] = 'e';
            e += excited ? ee : eg;
        }
        lv.energy = e;
        lv.label = std::move(label);
        levels.push_back(std::move(lv));
    }
    // energy-major order, lexicographic labels (g<e) inside each degenerate block
    std::stable_sort(levels.begin(), levels.end(), [](const Level& a, const Level& b) {
        if (a.energy != b.energy) return a.energy < b.energy;
        // lexicographic with g < e (not ASCII order)
        for (size_t k = 0; k < a.label.size(); ++k)
            if (a.label[k] != b.label[k]) return a.label[k] == 'g';
        return false;
    });
    for (int i = 0; i < d; ++i) levels[i].index = i;
}

std::vector<double> EnergySpectrum::energies() const {
    std::vector<double> out;
    out.reserve(levels.size());
    for (const auto& lv : levels) out.push_back(lv.energy);
    return out;
}

int EnergySpectrum::level_index(const std::string& label) const {
    for (const auto& lv : levels)
        if (lv.label == label) return lv.index;
    throw std::invalid_argument("unknown level label: " + label);
}

bool EnergySpectrum::same_single_qubit_levels(const EnergySpectrum& other) const {
    return e_ground == other.e_ground && e_excited == other.e_excited;
}

GibbsWeights gibbs_weights(const EnergySpectrum& spec, double beta) {
    if (beta < 0.0)
        throw std::domain_error("beta must be non-negative");
    GibbsWeights gw;
    gw.beta = beta;
    gw.weights.reserve(spec.dim());
    double z = 0.0;
    for (const auto& lv : spec.levels) {
        const double w = std::exp(-beta * lv.energy);
        gw.weights.push_back(w);
        z += w;
    }
    gw.partition_function = z;
    return gw;
}

} // namespace mpemba
