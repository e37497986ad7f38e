#pragma once
// Elementary two-level thermalizations, relaxation trajectories, the
// continuous thermo-majorization decision and the Markovian Mpemba range.

#include <vector>

#include "mpemba/mpemba.hpp"

namespace mpemba {

struct ElementaryStep {
    int i = 0;
    int j = 0;
    double lambda = 0.0; // in [0, 1]; 1 fully thermalizes the pair
};

struct MarkovCertificate {
    std::vector<ElementaryStep> steps;
    double residual = 0.0; // max curve deficit of the reached state vs the target
};

struct MarkovDecision {
    bool reachable = false;
    MarkovCertificate certificate; // on failure: best residual found within the bound
    int deepest_frontier = 0;
    explicit operator bool() const { return reachable; }
};

struct MarkovSearchConfig {
    int depth_cap = -1;              // default d(d-1)
    double state_quantum = 1e-10;    // memoization grid
    double curve_tol = 1e-9;         // dominance and arrival tolerance
    int dimension_cap = 16;
};

// p_i' = (1-l) p_i + l g_i/(g_i+g_j) (p_i+p_j); p_j' takes the remainder.
PopulationVector apply_step(const PopulationVector& p, const ElementaryStep& s);

struct TrajectoryLeg {
    int i = 0;
    int j = 0;
    double duration = 0.0;
    double tau = 1.0;
};

// Closed-form relaxation: lambda = 1 - exp(-duration/tau) per leg.
// Returns the initial state followed by the state after each leg.
std::vector<PopulationVector> relax_trajectory(const PopulationVector& p,
                                               const std::vector<TrajectoryLeg>& schedule);

// Depth-bounded search over elementary thermalizations with lambdas restricted
// to critical values (beta-order changes, target-curve touches, lambda = 1).
// True means a replayable sequence mapping p onto q was found.
MarkovDecision continuously_thermo_majorizes(const PopulationVector& p,
                                             const PopulationVector& q,
                                             const MarkovSearchConfig& cfg = {});

// Bisection on the product temperature with the decision above as oracle.
// Works on the energy-basis diagonal of the state: coherences are not
// convertible to populations along Markovian trajectories.
MpembaResult max_product_temperature_markovian(const DensityMatrix& state,
                                               const Temperature& bath,
                                               const MarkovSearchConfig& cfg = {});

// JSON list of {i, j, lambda}.
std::string certificate_to_json(const MarkovCertificate& cert);

// CSV: t,level_0,...,level_{d-1}
std::string trajectory_to_csv(const std::vector<PopulationVector>& states,
                              const std::vector<TrajectoryLeg>& schedule);

} // namespace mpemba
