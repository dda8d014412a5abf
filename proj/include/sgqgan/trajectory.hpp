#pragma once

#include <iosfwd>
#include <string_view>
#include <vector>

namespace sgqgan {

// Per-trial metric series (root fidelity or accuracy) with pointwise bands.
struct Trajectory {
    std::vector<std::vector<double>> series;  // [trial][k]
    std::vector<double> mean;
    std::vector<double> std;                  // sample standard deviation

    std::size_t trials() const { return series.size(); }
    double final_mean() const { return mean.empty() ? 0.0 : mean.back(); }
    // Sample std of each trial's last value.
    double final_std() const;
};

// Pointwise mean and sample std (n - 1 denominator; zero for one trial).
// Throws LengthMismatch if the series lengths differ.
Trajectory aggregate(std::vector<std::vector<double>> series);

// k,trial_id,<metric>
void write_trajectory_csv(std::ostream& os, const Trajectory& traj, std::string_view metric);
// k,mean,std
void write_aggregate_csv(std::ostream& os, const Trajectory& traj);

}  // namespace sgqgan
