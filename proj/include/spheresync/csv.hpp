#pragma once

#include <cmath>
#include <sstream>
#include <string>

#include "spheresync/dynamics.hpp"
#include "spheresync/subspaces.hpp"
#include "spheresync/summary.hpp"

namespace spheresync {

/// Trajectory export: columns t, max_err (max pairwise state distance),
/// max_e (max error entry), then e_0_1, e_0_2, ... in lexicographic pair
/// order. Works for both integrators; without stored states the distance is
/// recovered from e via ||r_i - r_j|| = sqrt(2 e_ij).
inline std::string trajectory_csv(const Trajectory& traj) {
    if (traj.errors.empty())
        return "t,max_err,max_e\n";
    const int m = traj.errors.front().rows();
    const auto pairs = index_pairs(m);

    std::ostringstream out;
    out << "t,max_err,max_e";
    for (const auto& [i, j] : pairs) out << ",e_" << i << "_" << j;
    out << "\n";

    const bool have_states = traj.states.size() == traj.times.size();
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const Mat& e = traj.errors[k];
        const double max_e = max_error_entry(e);
        const double max_err =
            have_states ? max_pairwise_distance(traj.states[k]) : std::sqrt(std::max(0.0, 2.0 * max_e));
        out << format_float(traj.times[k]) << "," << format_float(max_err) << "," << format_float(max_e);
        for (const auto& [i, j] : pairs) out << "," << format_float(e(i, j));
        out << "\n";
    }
    return out.str();
}

} // namespace spheresync
