#pragma once
// Space metering sweeps over random words, with the fits used to certify the
// logarithmic-workspace and polynomial-output claims empirically.

#include <random>
#include <vector>

#include "lognf/factory.hpp"

namespace lognf {

// Uniform i.i.d. letters over the symmetric alphabet.
Word random_word(const Alphabet& a, long long len, std::mt19937_64& rng);

struct SweepRow {
  long long length = 0;
  int sample = 0;
  long long peak_bits = 0;
  unsigned long long steps = 0;
  long long output_length = 0;
};

// One metered run per (length, sample); seeds derive from (seed, length,
// sample) so results are reproducible and independent of scheduling.
std::vector<SweepRow> meter_sweep(const Built& b, const std::vector<long long>& lengths,
                                  int samples, unsigned long long seed,
                                  unsigned long long step_limit = Exec::kDefaultStepLimit,
                                  int threads = 1);

double median(std::vector<double> v);

struct LinFit {
  double slope = 0;
  double intercept = 0;
};
// Least squares y = slope * x + intercept.
LinFit fit_linear(const std::vector<double>& xs, const std::vector<double>& ys);

// Per-length medians of a sweep column.
std::vector<double> sweep_medians(const std::vector<SweepRow>& rows,
                                  const std::vector<long long>& lengths,
                                  long long SweepRow::*field);
std::vector<double> sweep_medians_steps(const std::vector<SweepRow>& rows,
                                        const std::vector<long long>& lengths);

}  // namespace lognf
