// Command-line surface for curve export, Mpemba range computation, coherence
// mode reports, relaxation trajectories and the dimensionality/scaling scans.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mpemba/coherence.hpp"
#include "mpemba/markovian.hpp"
#include "mpemba/mpemba.hpp"

using namespace mpemba;
using nlohmann::json;

namespace {

struct CommonOpts {
    double eg = 0.0;
    double ee = 0.05;
    double local_c = 60.0;
    double bath_c = 0.0;
    std::string corr = "cc";
    std::string strength = "max";
    int pairs = 1;
    std::string method = "to";
    std::string out;
    std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->fallthrough(); // lets --config reach the top-level parser
    cmd->add_option("--eg", o.eg, "ground level energy (eV)");
    cmd->add_option("--ee", o.ee, "excited level energy (eV)");
    cmd->add_option("--local-c", o.local_c, "local temperature (Celsius)");
    cmd->add_option("--bath-c", o.bath_c, "bath temperature (Celsius)");
    cmd->add_option("--corr", o.corr, "correlation kind")
        ->check(CLI::IsMember({"p", "cc", "qce", "qcd", "multi-cc"}));
    cmd->add_option("--strength", o.strength, "correlation strength (number or 'max')");
    cmd->add_option("--pairs", o.pairs, "number of qubit pairs");
    cmd->add_option("--method", o.method, "to (thermal operations) or markov")
        ->check(CLI::IsMember({"to", "markov"}));
    cmd->add_option("--out", o.out, "output path");
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
}

CorrelationSpec corr_spec(const CommonOpts& o) {
    CorrelationKind kind;
    if (o.corr == "p") kind = CorrelationKind::product;
    else if (o.corr == "cc") kind = CorrelationKind::classical;
    else if (o.corr == "qce") kind = CorrelationKind::entangled;
    else if (o.corr == "qcd") kind = CorrelationKind::discord;
    else throw CLI::ValidationError("--corr", "kind has no pair form: " + o.corr);
    if (o.strength == "max") return CorrelationSpec::max(kind);
    return CorrelationSpec::with_strength(kind, std::stod(o.strength));
}

DensityMatrix build_state(const CommonOpts& o) {
    const double local_beta = to_beta(Temperature::celsius(o.local_c));
    if (o.corr == "multi-cc") {
        const EnergySpectrum spec(o.eg, o.ee, 2 * o.pairs);
        return multipartite_classical(spec, local_beta);
    }
    const EnergySpectrum pair_spec(o.eg, o.ee, 2);
    std::vector<DensityMatrix> pairs;
    pairs.push_back(build_pair(pair_spec, local_beta, corr_spec(o)));
    for (int k = 1; k < o.pairs; ++k)
        pairs.push_back(build_pair(pair_spec, local_beta, CorrelationSpec::product()));
    return compose_register(pairs);
}

void validate(const CommonOpts& o) {
    if (!(o.bath_c < o.local_c))
        throw CLI::ValidationError("--bath-c", "bath must be colder than the local temperature");
    if (o.pairs < 1) throw CLI::ValidationError("--pairs", "must be positive");
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open output path: " + path);
    f << content;
}

std::string sibling_path(const std::string& path, const std::string& tag) {
    if (path.empty()) return path;
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos) return path + "." + tag;
    return path.substr(0, dot) + "." + tag + path.substr(dot);
}

json curve_json(const ThermoCurve& c) {
    json pts = json::array();
    for (size_t i = 0; i < c.xs.size(); ++i) pts.push_back({c.xs[i], c.ys[i]});
    return pts;
}

// drop interior vertices that do not change the slope
ThermoCurve collapse_collinear(const ThermoCurve& c) {
    ThermoCurve out;
    out.normalized = c.normalized;
    const size_t n = c.xs.size();
    for (size_t i = 0; i < n; ++i) {
        if (i > 0 && i + 1 < n) {
            const double dx1 = c.xs[i] - out.xs.back();
            const double dy1 = c.ys[i] - out.ys.back();
            const double dx2 = c.xs[i + 1] - c.xs[i];
            const double dy2 = c.ys[i + 1] - c.ys[i];
            if (std::abs(dy1 * dx2 - dy2 * dx1) < 1e-12) continue;
        }
        out.xs.push_back(c.xs[i]);
        out.ys.push_back(c.ys[i]);
    }
    return out;
}

int cmd_curve(const CommonOpts& o) {
    if (o.bath_c > o.local_c)
        throw CLI::ValidationError("--bath-c", "bath must not be hotter than the local temperature");
    if (o.pairs < 1) throw CLI::ValidationError("--pairs", "must be positive");
    const double bath_beta = to_beta(Temperature::celsius(o.bath_c));
    const DensityMatrix state = build_state(o);
    const PopulationVector pops = block_diagonalize_zero_mode(state, bath_beta);
    const ThermoCurve state_curve = collapse_collinear(build_curve(pops, true));

    const GibbsWeights gw =
        gibbs_weights(state.basis, to_beta(Temperature::celsius(o.local_c)));
    std::vector<double> prod(gw.weights);
    for (double& v : prod) v /= gw.partition_function;
    const ThermoCurve local_product_curve = collapse_collinear(
        build_curve(PopulationVector{prod, state.basis.energies(), bath_beta}, true));

    if (o.format == "json") {
        json out;
        out["state"] = curve_json(state_curve);
        out["product_local"] = curve_json(local_product_curve);
        write_output(o.out, out.dump(2) + "\n");
    } else {
        write_output(o.out, curve_to_csv(state_curve));
        if (!o.out.empty())
            write_output(sibling_path(o.out, "product_local"), curve_to_csv(local_product_curve));
    }
    return 0;
}

int cmd_mpemba_max(const CommonOpts& o) {
    validate(o);
    const Temperature bath = Temperature::celsius(o.bath_c);
    const Temperature local = Temperature::celsius(o.local_c);
    const DensityMatrix state = build_state(o);
    const MpembaResult res = o.method == "markov"
                                 ? max_product_temperature_markovian(state, bath)
                                 : max_product_temperature(state, bath);
    // re-validate the certificate before emitting
    if (res.max_temperature && o.method == "to") {
        const PopulationVector pops = block_diagonalize_zero_mode(state, to_beta(bath));
        const GibbsWeights gw = gibbs_weights(state.basis, to_beta(*res.max_temperature));
        std::vector<double> prod(gw.weights);
        for (double& v : prod) v /= gw.partition_function;
        if (!thermo_majorizes(pops, PopulationVector{prod, state.basis.energies(), to_beta(bath)}))
            throw std::runtime_error("internal certificate check failed");
    }

    char line[64];
    if (res.has_mpemba(local))
        std::snprintf(line, sizeof(line), "max_T_C=%.2f", res.max_temperature->to_celsius());
    else
        std::snprintf(line, sizeof(line), "max_T_C=none");
    std::cout << line << "\n";

    if (!o.out.empty()) {
        json out;
        out["max_T_C"] = res.has_mpemba(local) ? json(res.max_temperature->to_celsius()) : json();
        out["method"] = o.method == "markov" ? "markovian" : "non-markovian";
        out["binding_vertex"] = res.binding_vertex;
        if (!res.diagnostic.empty()) out["diagnostic"] = res.diagnostic;
        write_output(o.out, out.dump(2) + "\n");
    }
    return 0;
}

int cmd_scan(const CommonOpts& o, const std::string& mode, const std::vector<std::string>& kinds,
             bool serial, bool pairs_given) {
    validate(o);
    ScanConfig cfg;
    cfg.local_t = Temperature::celsius(o.local_c);
    cfg.bath_t = Temperature::celsius(o.bath_c);
    cfg.pair_spec = EnergySpectrum(o.eg, o.ee, 2);
    if (pairs_given) cfg.max_pairs = o.pairs; // else: ScanConfig default depth
    cfg.exec = serial ? ScanExec::serial : ScanExec::parallel;
    if (kinds.empty()) {
        cfg.kinds = {RegisterKind::product, RegisterKind::classical, RegisterKind::entangled,
                     RegisterKind::discord, RegisterKind::multipartite_classical};
    } else {
        for (const auto& k : kinds) cfg.kinds.push_back(register_kind_from_name(k));
    }
    const std::vector<ScanRow> rows = mode == "scaling" ? scan_scaling(cfg)
                                                        : scan_dimensionality(cfg);
    if (o.format == "json") {
        json arr = json::array();
        const Temperature local = cfg.local_t;
        for (const auto& r : rows) {
            json row;
            row["kind"] = register_kind_name(r.kind);
            row["n_pairs"] = r.n_pairs;
            row["local_T_C"] = r.local_t_c;
            row["bath_T_C"] = r.bath_t_c;
            row["max_T_C"] = r.result.has_mpemba(local)
                                 ? json(r.result.max_temperature->to_celsius())
                                 : json();
            row["method"] = r.result.method == Method::markovian ? "markovian" : "non-markovian";
            arr.push_back(row);
        }
        write_output(o.out, arr.dump(2) + "\n");
    } else {
        write_output(o.out, scan_to_csv(rows));
    }
    return 0;
}

int cmd_modes(const CommonOpts& o) {
    const DensityMatrix state = build_state(o);
    write_output(o.out, mode_report_to_json(mode_report(state)) + "\n");
    return 0;
}

int cmd_trajectory(const CommonOpts& o, const std::vector<std::string>& legs) {
    validate(o);
    const double bath_beta = to_beta(Temperature::celsius(o.bath_c));
    const DensityMatrix state = build_state(o);
    PopulationVector pops{state.diagonal(), state.basis.energies(), bath_beta};
    std::vector<TrajectoryLeg> schedule;
    for (const auto& spec : legs) {
        TrajectoryLeg leg;
        char comma;
        std::istringstream ss(spec);
        if (!(ss >> leg.i >> comma >> leg.j >> comma >> leg.duration >> comma >> leg.tau))
            throw CLI::ValidationError("--leg", "expected i,j,duration,tau: " + spec);
        schedule.push_back(leg);
    }
    const auto states = relax_trajectory(pops, schedule);
    write_output(o.out, trajectory_to_csv(states, schedule));
    return 0;
}

int cmd_free_energy(const CommonOpts& o) {
    validate(o);
    const double bath_beta = to_beta(Temperature::celsius(o.bath_c));
    const DensityMatrix state = build_state(o);
    const double f = free_energy(state, bath_beta);
    char line[64];
    std::snprintf(line, sizeof(line), "free_energy_eV=%.12g", f);
    std::cout << line << "\n";
    if (!o.out.empty()) {
        json out{{"free_energy_eV", f}};
        write_output(o.out, out.dump(2) + "\n");
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Thermo-majorization analysis of correlation-driven Mpemba effects"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "INI configuration file with one [subcommand] section per command; "
                   "command-line flags take precedence");

    CommonOpts o;
    std::string scan_mode;
    std::vector<std::string> scan_kinds;
    bool scan_serial = false;
    std::vector<std::string> legs;

    auto* curve = app.add_subcommand("curve", "export thermo-majorization curve vertices");
    add_common(curve, o);
    auto* mmax = app.add_subcommand("mpemba-max", "maximum product-state temperature");
    add_common(mmax, o);
    auto* scan = app.add_subcommand("scan", "dimensionality or scaling scan");
    add_common(scan, o);
    scan->add_option("mode", scan_mode, "dimensionality or scaling")
        ->required()
        ->check(CLI::IsMember({"dimensionality", "scaling"}));
    scan->add_option("--kinds", scan_kinds, "subset of correlation kinds to scan");
    scan->add_flag("--serial", scan_serial, "run the scan on a single thread");
    auto* modes = app.add_subcommand("modes", "coherence-mode report as JSON");
    add_common(modes, o);
    auto* traj = app.add_subcommand("trajectory", "closed-form relaxation trajectory");
    add_common(traj, o);
    traj->add_option("--leg", legs, "thermalization leg i,j,duration,tau (repeatable)");
    auto* fe = app.add_subcommand("free-energy", "nonequilibrium free energy (eV)");
    add_common(fe, o);

    CLI11_PARSE(app, argc, argv);

    try {
        if (curve->parsed()) return cmd_curve(o);
        if (mmax->parsed()) return cmd_mpemba_max(o);
        if (scan->parsed())
            return cmd_scan(o, scan_mode, scan_kinds, scan_serial, scan->count("--pairs") > 0);
        if (modes->parsed()) return cmd_modes(o);
        if (traj->parsed()) return cmd_trajectory(o, legs);
        if (fe->parsed()) return cmd_free_energy(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
