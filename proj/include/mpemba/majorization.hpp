#pragma once
// Beta-ordering, thermo-majorization curves, the preorder decision and
// zero-mode block diagonalization of degenerate energy subspaces.

#include <optional>
#include <vector>

#include "mpemba/core.hpp"
#include "mpemba/states.hpp"

namespace mpemba {

struct PopulationVector {
    std::vector<double> populations;    // >= 0, sum to 1
    std::vector<double> level_energies; // eV, parallel to populations
    double bath_beta = 0.0;

    int dim() const { return static_cast<int>(populations.size()); }
    void validate(double tol = 1e-9) const;
};

PopulationVector population_vector(const std::vector<double>& pops,
                                   const EnergySpectrum& spec, double bath_beta);

struct BetaOrdered {
    PopulationVector ordered;
    std::vector<int> permutation; // ordered.populations[k] == input.populations[permutation[k]]
};

// Stable sort by non-increasing p_i / e^{-beta E_i}; ties keep canonical order.
BetaOrdered beta_order(const PopulationVector& p);

struct ThermoCurve {
    std::vector<double> xs; // cumulative bath weights, starts at 0
    std::vector<double> ys; // cumulative populations, starts at 0
    bool normalized = false;

    int vertex_count() const { return static_cast<int>(xs.size()); }
};

ThermoCurve build_curve(const PopulationVector& p, bool normalize);

// Piecewise-linear interpolant; x must lie in [0, xs.back()].
double curve_height_at(const ThermoCurve& c, double x);

struct MajorizationResult {
    bool holds = false;
    std::optional<double> witness_x; // first x where p's curve dips below q's
    explicit operator bool() const { return holds; }
};

// p >=_th q iff p's curve lies above q's at every vertex x of both curves,
// within an absolute height tolerance.
MajorizationResult thermo_majorizes(const PopulationVector& p, const PopulationVector& q,
                                    double tol = 1e-9);

// Zero-mode rotation: replace each degenerate-energy principal submatrix
// with its eigenvalue multiset (non-increasing within the block), keep
// non-degenerate diagonals. Returns the population vector of the rotated state.
PopulationVector block_diagonalize_zero_mode(const DensityMatrix& m, double bath_beta);

// Cyclic Jacobi eigenvalues of a small Hermitian matrix (row-major, n x n),
// returned in non-increasing order. Off-diagonal Frobenius threshold 1e-13.
std::vector<double> jacobi_eigenvalues(std::vector<cplx> a, int n);

// CSV export: header "x,y", one vertex per row, 12 decimal digits.
std::string curve_to_csv(const ThermoCurve& c);

} // namespace mpemba
