#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "sgqgan/error.hpp"

namespace sgqgan {

// Seeds for trial `trial` under a master seed:
//   trial_seed(m, t)     = splitmix64(m + (t + 1) * 0x9E3779B97F4A7C15)
//   stream_seed(s, j)    = splitmix64(s ^ ((j + 1) * 0xD1B54A32D192ED03))
// Stream 0 drives SPSA directions, stream 1 the measurement model, so the
// same trial sees the same directions whatever the measurement backend.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial);
std::uint64_t stream_seed(std::uint64_t trial_seed, std::uint64_t stream);

inline constexpr std::uint64_t kDirectionStream = 0;
inline constexpr std::uint64_t kMeasurementStream = 1;

// Worker count from SGQGAN_THREADS (0 or unset = hardware concurrency).
std::size_t configured_threads();

// Runs body(i) for i in [0, count) on up to `threads` workers. The first
// exception (lowest index) is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body, std::size_t threads = 0);

// Runs fn(trial) for every trial concurrently and returns the outcomes in
// trial order. Failures are collected; the thrown Error has the first
// failure's kind and one "trial i: ..." line per failed trial.
template <class T, class Fn>
std::vector<T> run_trials(std::size_t count, Fn&& fn) {
    std::vector<std::optional<T>> outcomes(count);
    std::vector<std::optional<Error>> failures(count);
    parallel_for(count, [&](std::size_t trial) {
        try {
            outcomes[trial] = fn(trial);
        } catch (const Error& e) {
            failures[trial] = e.with_context(fmt::format("trial {}", trial));
        }
    });
    std::optional<ErrorKind> kind;
    std::string report;
    for (const auto& f : failures) {
        if (!f) continue;
        if (!kind) kind = f->kind();
        if (!report.empty()) report += '\n';
        report += f->what();
    }
    if (kind) throw Error(*kind, report);
    std::vector<T> out;
    out.reserve(count);
    for (auto& o : outcomes) out.push_back(std::move(*o));
    return out;
}

}  // namespace sgqgan
