// Benchmark of the scan kernel: serial reference vs the OpenMP-parallel path.

#include <chrono>
#include <cstdio>

#include "mpemba/mpemba.hpp"

using namespace mpemba;

namespace {

double run(const ScanConfig& cfg, ScanExec exec) {
    ScanConfig c = cfg;
    c.exec = exec;
    const auto t0 = std::chrono::steady_clock::now();
    scan_scaling(c);
    scan_dimensionality(c);
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    ScanConfig cfg;
    cfg.kinds = {RegisterKind::product, RegisterKind::classical, RegisterKind::entangled,
                 RegisterKind::discord, RegisterKind::multipartite_classical};
    cfg.max_pairs = argc > 1 ? std::atoi(argv[1]) : 4;

    std::printf("scan benchmark: kinds=5, n=1..%d (both scan modes)\n", cfg.max_pairs);
    const double warm = run(cfg, ScanExec::serial);
    (void)warm;
    const double serial = run(cfg, ScanExec::serial);
    const double parallel = run(cfg, ScanExec::parallel);
    std::printf("serial   : %8.3f s\n", serial);
    std::printf("parallel : %8.3f s\n", parallel);
    std::printf("speedup  : %8.2fx\n", serial / parallel);
    return 0;
}
