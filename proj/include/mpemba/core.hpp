#pragma once
// Units, Gibbs weights and energy-level bookkeeping for n-qubit registers
// built from a single-qubit spectrum {E_g, E_e}.

#include <stdexcept>
#include <string>
#include <vector>

namespace mpemba {

// CODATA value, eV/K
inline constexpr double k_boltzmann_ev = 8.617333262e-5;
inline constexpr double celsius_offset = 273.15;

enum class TempUnit { celsius, kelvin, inverse_ev };

struct Temperature {
    double value = 0.0;
    TempUnit unit = TempUnit::kelvin;

    static Temperature celsius(double c) { return {c, TempUnit::celsius}; }
    static Temperature kelvin(double k) { return {k, TempUnit::kelvin}; }
    static Temperature from_beta(double beta) { return {beta, TempUnit::inverse_ev}; }

    double to_kelvin() const;
    double to_celsius() const { return to_kelvin() - celsius_offset; }
};

// 1/(k_B T); throws std::domain_error for non-positive kelvin.
double to_beta(const Temperature& t);

struct Level {
    int index = 0;          // position in the canonical ordering
    double energy = 0.0;    // eV
    std::string label;      // e.g. "geg", one char per qubit
};

// Energy levels of an n-qubit register, ordered by total energy with the
// lexicographic label (g < e) as tiebreak, so degenerate levels are contiguous.
struct EnergySpectrum {
    double e_ground = 0.0;
    double e_excited = 0.0;
    int n_qubits = 0;
    std::vector<Level> levels;

    EnergySpectrum() = default;
    EnergySpectrum(double eg, double ee, int n);

    int dim() const { return static_cast<int>(levels.size()); }
    double gap() const { return e_excited - e_ground; }
    double energy(int i) const { return levels[i].energy; }
    std::vector<double> energies() const;

    // Index of the level whose label equals `label`.
    int level_index(const std::string& label) const;

    bool same_single_qubit_levels(const EnergySpectrum& other) const;
};

struct GibbsWeights {
    double beta = 0.0;
    std::vector<double> weights;     // e^{-beta E_i}, canonical level order
    double partition_function = 0.0; // Z = sum of weights
};

GibbsWeights gibbs_weights(const EnergySpectrum& spec, double beta);

} // namespace mpemba
