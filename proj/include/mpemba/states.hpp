#pragma once
// Builders for locally thermal two-qubit states (product, classically
// correlated, entangled, discordant) and their tensor compositions.

#include <complex>
#include <vector>

#include "mpemba/core.hpp"

namespace mpemba {

using cplx = std::complex<double>;

struct DensityMatrix {
    EnergySpectrum basis;
    int dim = 0;
    std::vector<cplx> entries; // row-major, dim*dim, canonical level order

    DensityMatrix() = default;
    explicit DensityMatrix(const EnergySpectrum& spec)
        : basis(spec), dim(spec.dim()), entries(static_cast<size_t>(spec.dim()) * spec.dim()) {}

    cplx& at(int i, int j) { return entries[static_cast<size_t>(i) * dim + j]; }
    const cplx& at(int i, int j) const { return entries[static_cast<size_t>(i) * dim + j]; }

    double trace() const;
    bool is_hermitian(double tol = 1e-12) const;
    std::vector<double> diagonal() const;

    // Reduced single-qubit state (2x2) after tracing out all other qubits.
    std::vector<cplx> reduce_to_qubit(int qubit) const;
};

enum class CorrelationKind { product, classical, entangled, discord };

struct CorrelationSpec {
    CorrelationKind kind = CorrelationKind::product;
    bool max_strength = true; // resolve strength to the positivity bound
    double strength = 0.0;    // mu or lambda when max_strength is false

    static CorrelationSpec product() { return {CorrelationKind::product, false, 0.0}; }
    static CorrelationSpec max(CorrelationKind k) { return {k, true, 0.0}; }
    static CorrelationSpec with_strength(CorrelationKind k, double s) { return {k, false, s}; }
};

// Positivity ceilings: mu_max = sqrt(Pg Pe) for the entangled state,
// lambda_max = Pg Pe for the discordant state.
double max_correlation_strength(CorrelationKind kind, double beta, const EnergySpectrum& pair_spec);

// Locally thermal two-qubit state at inverse temperature beta.
// pair_spec must describe exactly 2 qubits.
DensityMatrix build_pair(const EnergySpectrum& pair_spec, double beta, const CorrelationSpec& corr);

// Tensor product of two-qubit pair states into one register (canonical order).
DensityMatrix compose_register(const std::vector<DensityMatrix>& pairs);

// Pg |g...g><g...g| + Pe |e...e><e...e| over n_qubits.
DensityMatrix multipartite_classical(const EnergySpectrum& spec, double beta);

} // namespace mpemba
