#include "sgqgan/trajectory.hpp"

#include <cmath>
#include <ostream>

#include <fmt/format.h>

#include "sgqgan/error.hpp"

namespace sgqgan {

namespace {

std::pair<double, double> mean_std(const std::vector<double>& xs) {
    if (xs.empty()) return {0.0, 0.0};
    double sum = 0.0;
    for (double x : xs) sum += x;
    const double mean = sum / static_cast<double>(xs.size());
    if (xs.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

}  // namespace

double Trajectory::final_std() const {
    std::vector<double> last;
    for (const auto& s : series)
        if (!s.empty()) last.push_back(s.back());
    return mean_std(last).second;
}

Trajectory aggregate(std::vector<std::vector<double>> series) {
    Trajectory traj;
    traj.series = std::move(series);
    if (traj.series.empty()) return traj;
    const std::size_t len = traj.series.front().size();
    for (std::size_t i = 0; i < traj.series.size(); ++i) {
        if (traj.series[i].size() != len) {
            throw Error(ErrorKind::LengthMismatch,
                        fmt::format("trial {} has {} points, trial 0 has {}", i, traj.series[i].size(), len));
        }
    }
    traj.mean.resize(len);
    traj.std.resize(len);
    std::vector<double> column(traj.series.size());
    for (std::size_t k = 0; k < len; ++k) {
        for (std::size_t i = 0; i < traj.series.size(); ++i) column[i] = traj.series[i][k];
        std::tie(traj.mean[k], traj.std[k]) = mean_std(column);
    }
    return traj;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj, std::string_view metric) {
    os << "k,trial_id," << metric << '\n';
    for (std::size_t trial = 0; trial < traj.series.size(); ++trial) {
        const auto& s = traj.series[trial];
        for (std::size_t k = 0; k < s.size(); ++k) os << fmt::format("{},{},{:.17g}\n", k, trial, s[k]);
    }
}

void write_aggregate_csv(std::ostream& os, const Trajectory& traj) {
    os << "k,mean,std\n";
    for (std::size_t k = 0; k < traj.mean.size(); ++k) {
        os << fmt::format("{},{:.17g},{:.17g}\n", k, traj.mean[k], traj.std[k]);
    }
}

}  // namespace sgqgan
