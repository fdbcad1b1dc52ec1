// Measure the exponential synchronization rate of a random spanning-tree
// digraph and compare it with the spectral prediction Re(lambda2).

#include <cstdio>

#include "spheresync/spheresync.hpp"

int main() {
    using namespace spheresync;

    const Digraph g = generate(GraphFamily::random_spanning_tree_plus_edges, 5, /*seed=*/3);

    RateOptions opt;
    opt.n = 3;
    opt.seed = 3;
    const RateEstimate est = measure_sync_rate(g, opt);

    std::printf("predicted rate Re(lambda2)      = %.6f\n", est.predicted_rate);
    std::printf("fitted state-error decay        = %.6f  (rel. err %.2f%%, r^2 %.5f)\n",
                est.state_fit.mu_hat, 100.0 * est.relative_error_state, est.state_fit.r_squared);
    std::printf("fitted error-entry decay        = %.6f  (expected %.6f, rel. err %.2f%%)\n",
                est.error_fit.mu_hat, 2.0 * est.predicted_rate, 100.0 * est.relative_error_error);
    return est.relative_error_state < 0.05 ? 0 : 1;
}
