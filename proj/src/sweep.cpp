#include "lognf/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <future>

namespace lognf {

Word random_word(const Alphabet& a, long long len, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 2 * a.rank() - 1);
  Word w;
  w.reserve(static_cast<size_t>(len));
  for (long long i = 0; i < len; ++i) {
    int v = pick(rng);
    int idx = v / 2 + 1;
    w.push_back(v % 2 == 0 ? idx : -idx);
  }
  return w;
}

namespace {

unsigned long long mix(unsigned long long x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::vector<SweepRow> meter_sweep(const Built& b, const std::vector<long long>& lengths,
                                  int samples, unsigned long long seed,
                                  unsigned long long step_limit, int threads) {
  struct Task {
    long long length;
    int sample;
  };
  std::vector<Task> tasks;
  for (long long len : lengths)
    for (int s = 0; s < samples; ++s) tasks.push_back({len, s});

  std::vector<SweepRow> rows(tasks.size());
  auto work = [&](size_t lo, size_t hi) {
    for (size_t i = lo; i < hi; ++i) {
      std::mt19937_64 rng(mix(seed ^ mix(static_cast<unsigned long long>(tasks[i].length) * 1000003ULL +
                                         static_cast<unsigned long long>(tasks[i].sample))));
      Word w = random_word(b.alphabet, tasks[i].length, rng);
      RunResult r = run(*b.nf, w, step_limit);
      rows[i] = SweepRow{tasks[i].length, tasks[i].sample, r.report.peak_bits, r.report.steps,
                         r.report.output_length};
    }
  };
  int nthreads = std::max(1, threads);
  if (nthreads == 1 || tasks.size() < 2) {
    work(0, tasks.size());
  } else {
    std::vector<std::future<void>> futs;
    size_t chunk = (tasks.size() + static_cast<size_t>(nthreads) - 1) / static_cast<size_t>(nthreads);
    for (int t = 0; t < nthreads; ++t) {
      size_t lo = static_cast<size_t>(t) * chunk;
      size_t hi = std::min(tasks.size(), lo + chunk);
      if (lo >= hi) break;
      futs.push_back(std::async(std::launch::async, work, lo, hi));
    }
    for (auto& f : futs) f.get();
  }
  return rows;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

LinFit fit_linear(const std::vector<double>& xs, const std::vector<double>& ys) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double n = static_cast<double>(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  double denom = n * sxx - sx * sx;
  LinFit f;
  if (denom != 0) {
    f.slope = (n * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / n;
  }
  return f;
}

std::vector<double> sweep_medians(const std::vector<SweepRow>& rows,
                                  const std::vector<long long>& lengths,
                                  long long SweepRow::*field) {
  std::vector<double> out;
  for (long long len : lengths) {
    std::vector<double> vals;
    for (const auto& r : rows)
      if (r.length == len) vals.push_back(static_cast<double>(r.*field));
    out.push_back(median(std::move(vals)));
  }
  return out;
}

std::vector<double> sweep_medians_steps(const std::vector<SweepRow>& rows,
                                        const std::vector<long long>& lengths) {
  std::vector<double> out;
  for (long long len : lengths) {
    std::vector<double> vals;
    for (const auto& r : rows)
      if (r.length == len) vals.push_back(static_cast<double>(r.steps));
    out.push_back(median(std::move(vals)));
  }
  return out;
}

}  // namespace lognf
