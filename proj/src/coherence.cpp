#include "mpemba/coherence.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace mpemba {

ModeDecomposition mode_decompose(const DensityMatrix& m) {
    ModeDecomposition d;
    for (int i = 0; i < m.dim; ++i) {
        for (int j = 0; j < m.dim; ++j) {
            const cplx v = m.at(i, j);
            if (v == cplx{0.0, 0.0}) continue;
            const double omega = m.basis.energy(i) - m.basis.energy(j);
            d.modes[ModeDecomposition::bin(omega)].push_back({i, j, v});
        }
    }
    return d;
}

DensityMatrix mode_reconstruct(const ModeDecomposition& d, const EnergySpectrum& spec) {
    DensityMatrix out(spec);
    for (const auto& [key, entries] : d.modes)
        for (const auto& e : entries) out.at(e.row, e.col) += e.value;
    return out;
}

std::vector<ModeReportEntry> mode_report(const DensityMatrix& m) {
    std::vector<ModeReportEntry> out;
    out.reserve(static_cast<size_t>(m.dim) * m.dim);
    const double gap = m.basis.gap();
    for (int i = 0; i < m.dim; ++i) {
        for (int j = 0; j < m.dim; ++j) {
            ModeReportEntry e;
            e.row_label = m.basis.levels[i].label;
            e.col_label = m.basis.levels[j].label;
            e.omega_ev = m.basis.energy(i) - m.basis.energy(j);
            e.order = static_cast<int>(std::llround(std::abs(e.omega_ev) / gap));
            out.push_back(std::move(e));
        }
    }
    return out;
}

std::string mode_report_to_json(const std::vector<ModeReportEntry>& report) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : report) {
        arr.push_back({{"row", e.row_label},
                       {"col", e.col_label},
                       {"omega_eV", e.omega_ev},
                       {"order", e.order}});
    }
    return arr.dump(2);
}

} // namespace mpemba
