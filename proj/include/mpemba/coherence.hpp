#pragma once
// Decomposition of a density matrix into Bohr-frequency coherence modes and
// the per-entry mode-order report.

#include <map>
#include <vector>

#include "mpemba/states.hpp"

namespace mpemba {

struct SparseEntry {
    int row = 0;
    int col = 0;
    cplx value;
};

struct ModeDecomposition {
    // key: omega rounded to the 1e-12 eV bin; value: entries with E_row - E_col = omega
    std::map<long long, std::vector<SparseEntry>> modes;

    static long long bin(double omega_ev) {
        return static_cast<long long>(std::llround(omega_ev / 1e-12));
    }
    double omega_of(long long key) const { return static_cast<double>(key) * 1e-12; }
};

ModeDecomposition mode_decompose(const DensityMatrix& m);

// Sum of all modes; must reconstruct the input exactly.
DensityMatrix mode_reconstruct(const ModeDecomposition& d, const EnergySpectrum& spec);

struct ModeReportEntry {
    std::string row_label;
    std::string col_label;
    double omega_ev = 0.0;
    int order = 0; // |E_row - E_col| / (E_e - E_g)
};

// One entry per matrix element, row-major over the canonical level order.
std::vector<ModeReportEntry> mode_report(const DensityMatrix& m);

std::string mode_report_to_json(const std::vector<ModeReportEntry>& report);

} // namespace mpemba
