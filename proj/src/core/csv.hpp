#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "core/montecarlo.hpp"

namespace dirac {

// CSV schemas. All numeric fields are serialized with 17 significant digits
// so that parse(serialize(x)) == x bit for bit.
//
//   ensemble: sample_index,phase                  one row per accepted sample
//   summary:  samples,rejected,mean,variance,stderr_mean,stderr_variance
//   sweep:    N,sigma,sigma_stderr
//   fit:      a,b,residual_norm

void write_ensemble_csv(std::ostream& out, const PhaseEnsemble& ensemble);
void write_summary_csv(std::ostream& out, const MomentEstimate& est, std::uint64_t rejected);
void write_sweep_csv(std::ostream& out, std::span<const SweepPoint> points);
void write_fit_csv(std::ostream& out, const FitResult& fit);

/// Accepted (index, phase) rows of an ensemble file.
std::vector<std::pair<std::uint64_t, double>> read_ensemble_csv(std::istream& in);
std::vector<SweepPoint> read_sweep_csv(std::istream& in);

std::string format_full(double value);

}  // namespace dirac
