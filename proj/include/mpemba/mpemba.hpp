#pragma once
// Maximum product-state temperature search, the closed-form two-qubit
// conditions, nonequilibrium free energy and the dimensionality/scaling scans.

#include <optional>
#include <string>
#include <vector>

#include "mpemba/majorization.hpp"

namespace mpemba {

enum class Method { non_markovian, markovian };

struct MpembaResult {
    std::optional<Temperature> max_temperature; // empty when the search fails outright
    int binding_vertex = -1;                    // product-curve vertex where contact occurs
    Method method = Method::non_markovian;
    std::string diagnostic;

    // "No Mpemba" sentinel: the found temperature does not exceed the local one.
    bool has_mpemba(const Temperature& local) const {
        return max_temperature && max_temperature->to_celsius() > local.to_celsius() + 0.001;
    }
};

// Touching-vertex search over the product-curve family; the result certifies
// thermo_majorizes(state, rho_P(T*)) and fails just above T*.
MpembaResult max_product_temperature(const DensityMatrix& state, const Temperature& bath);
MpembaResult max_product_temperature(const PopulationVector& pops, const EnergySpectrum& spec);

struct CcConditions {
    bool first_point_ok = false;     // e^{-2 b_h E_e}/Z_P < e^{-b_c E_e}/Z_C
    double intersection_residual = 0.0; // LHS - RHS of the third-vertex equation
};

CcConditions cc_conditions(double beta_c, double beta_h, double beta_b,
                           const EnergySpectrum& pair_spec);

// (beta_b - beta_c)(E_e - E_g) <= ln 2
bool discord_lambda_constraint(double beta_c, double beta_b, const EnergySpectrum& pair_spec);

// F = tr[rho H] - S/beta, entropy from eigenvalues with 0 ln 0 := 0.
double free_energy(const DensityMatrix& state, double bath_beta);
double free_energy(const PopulationVector& pops, double bath_beta);

// ---- scans -------------------------------------------------------------

enum class RegisterKind { product, classical, entangled, discord, multipartite_classical };

std::string register_kind_name(RegisterKind k); // "p", "cc", "qce", "qcd", "multi-cc"
RegisterKind register_kind_from_name(const std::string& name);

enum class ScanMode { dimensionality, scaling };
enum class ScanExec { serial, parallel };

struct ScanRow {
    RegisterKind kind;
    int n_pairs = 0;
    double local_t_c = 0.0;
    double bath_t_c = 0.0;
    MpembaResult result;
};

struct ScanConfig {
    std::vector<RegisterKind> kinds;
    int max_pairs = 5;        // default scan depth (dim 1024); hard cap 7
    Temperature local_t = Temperature::celsius(60.0);
    Temperature bath_t = Temperature::celsius(0.0);
    EnergySpectrum pair_spec{0.0, 0.05, 2};
    ScanExec exec = ScanExec::parallel;
};

// Registers carry the correlation in one pair (dimensionality) or every pair
// (scaling); each correlated pair is reduced to its zero-mode-rotated
// population vector before composition.
std::vector<ScanRow> scan_dimensionality(const ScanConfig& cfg);
std::vector<ScanRow> scan_scaling(const ScanConfig& cfg);

// Population vector of the scan register for one grid cell.
PopulationVector scan_register_pops(RegisterKind kind, int n_pairs, ScanMode mode,
                                    double local_beta, double bath_beta,
                                    const EnergySpectrum& pair_spec);

// CSV: header kind,n_pairs,local_T_C,bath_T_C,max_T_C,method
std::string scan_to_csv(const std::vector<ScanRow>& rows);

} // namespace mpemba
