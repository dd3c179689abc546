// Compares coverage with and without RIS assistance for a user served by a
// fixed TX 20 m away, then checks one point against a short simulation.
//
//   demo_coverage [lambda_t]

#include <cstdio>
#include <cstdlib>

#include "risnet/analytic.hpp"
#include "risnet/mcsim.hpp"
#include "risnet/units.hpp"

int main(int argc, char** argv) {
    using namespace risnet;

    SystemParams sp;
    sp.lambda_t = argc > 1 ? std::atof(argv[1]) : 1e-4;
    sp.p = 0.5;
    sp.n_elements = 32;
    sp.fading = {2.0, 2.0};

    std::printf("lambda_t = %g per m^2, N = %zu, p = %g, threshold 0 dB\n\n", sp.lambda_t, sp.n_elements, sp.p);
    std::printf("%8s  %10s  %10s  %12s\n", "P [dBm]", "with RIS", "no RIS", "rate w/ RIS");
    for (double p_dbm = -40.0; p_dbm <= 20.0; p_dbm += 10.0) {
        sp.tx_power_w = dbm_to_watts(p_dbm);
        std::printf("%8.0f  %10.4f  %10.4f  %12.3f\n", p_dbm, coverage_fixed_ris(sp, 1.0),
                    coverage_fixed_noris(sp, 1.0), rate_fixed(sp, true));
    }

    sp.tx_power_w = dbm_to_watts(-24.0);
    McConfig mc;
    mc.params = sp;
    mc.trials = 20'000;
    const Estimate e = estimate_coverage(simulate_sinr(mc, Association::Fixed, true), 1.0);
    std::printf("\nat -24 dBm: analytic %.4f, simulated %.4f +- %.4f (%zu trials)\n", coverage_fixed_ris(sp, 1.0),
                e.value, e.ci_halfwidth, mc.trials);
    return 0;
}
