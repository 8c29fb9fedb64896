// Copyright (c) specsense contributors
// SPDX-License-Identifier: Apache-2.0
#include "specsense/montecarlo.hpp"

#include <cmath>
#include <algorithm>
#include <atomic>
#include <future>
#include <random>
#include <stdexcept>

namespace specsense {

namespace detail {

namespace {
std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace

std::uint64_t stream_key(std::uint64_t seed, int band, int radio, bool signal_present,
                         int chunk) {
  std::uint64_t h = splitmix64(seed ^ 0x5370656353656e73ULL);
  h = splitmix64(h ^ static_cast<std::uint64_t>(band));
  h = splitmix64(h ^ (static_cast<std::uint64_t>(radio) + 0x1000ULL));
  h = splitmix64(h ^ (signal_present ? 0x2000ULL : 0x3000ULL));
  h = splitmix64(h ^ (static_cast<std::uint64_t>(chunk) + 0x4000ULL));
  return h;
}

}  // namespace detail

namespace {

// Marsaglia polar normal sampler over one mt19937_64 stream.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t key) : rng_(key) {}

  double next() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    cached_ = v * f;
    has_cached_ = true;
    return u * f;
  }

  // one random sign bit
  double sign() { return (rng_() & 1ULL) ? 1.0 : -1.0; }

 private:
  double uniform() { return (rng_() >> 11) * 0x1.0p-53; }
  std::mt19937_64 rng_;
  bool has_cached_ = false;
  double cached_ = 0;
};

void fill_chunk(const SensingScenario& s, int band, int radio, bool signal_present,
                std::uint64_t seed, int chunk, int count, const SimOptions& options,
                double* out) {
  NormalStream stream(detail::stream_key(seed, band, radio, signal_present, chunk));
  const int M = s.samples_per_band;
  const double sv = std::sqrt(s.noise_variance);
  const double amp = signal_present ? std::sqrt(s.channel_gains(band, radio)) : 0.0;
  for (int t = 0; t < count; ++t) {
    double energy = 0;
    if (!signal_present) {
      for (int m = 0; m < M; ++m) {
        const double r = sv * stream.next();
        energy += r * r;
      }
    } else if (options.symbols == SymbolModel::kConstantModulus) {
      for (int m = 0; m < M; ++m) {
        const double r = amp * stream.sign() + sv * stream.next();
        energy += r * r;
      }
    } else {
      for (int m = 0; m < M; ++m) {
        const double r = amp * stream.next() + sv * stream.next();
        energy += r * r;
      }
    }
    out[t] = energy;
  }
}

int num_chunks(int trials) {
  return (trials + detail::kChunkTrials - 1) / detail::kChunkTrials;
}

template <typename Fn>
void run_chunks(int chunks, int threads, Fn&& per_chunk) {
  if (threads <= 1 || chunks <= 1) {
    for (int c = 0; c < chunks; ++c) per_chunk(c);
    return;
  }
  std::vector<std::future<void>> tasks;
  std::atomic<int> next{0};
  const int workers = std::min(threads, chunks);
  tasks.reserve(workers);
  for (int i = 0; i < workers; ++i) {
    tasks.push_back(std::async(std::launch::async, [&]() {
      for (int c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) per_chunk(c);
    }));
  }
  for (auto& t : tasks) t.get();
}

}  // namespace

std::vector<double> simulate_energies(const SensingScenario& s, int band, int radio,
                                      bool signal_present, int trials, std::uint64_t seed,
                                      const SimOptions& options) {
  if (band < 0 || band >= s.num_bands || radio < 0 || radio >= s.num_radios) {
    throw std::invalid_argument("simulate_energies: band/radio out of range");
  }
  if (trials < 1) throw std::invalid_argument("simulate_energies: trials must be >= 1");
  std::vector<double> out(trials);
  const int chunks = num_chunks(trials);
  run_chunks(chunks, options.threads, [&](int c) {
    const int begin = c * detail::kChunkTrials;
    const int count = std::min(detail::kChunkTrials, trials - begin);
    fill_chunk(s, band, radio, signal_present, seed, c, count, options, out.data() + begin);
  });
  return out;
}

EmpiricalMetrics empirical_rates(const SensingScenario& s, const PolicyConstraints& p,
                                 const FusionDesign& d, int trials, std::uint64_t seed,
                                 const SimOptions& options) {
  ensure_valid(s, p);
  if (ValidationResult v = validate_design(s, d); !v.ok()) {
    throw std::invalid_argument("empirical_rates: invalid design: " + v.to_string());
  }
  if (trials < 1) throw std::invalid_argument("empirical_rates: trials must be >= 1");

  const int K = s.num_bands;
  const int N = s.num_radios;
  const int chunks = num_chunks(trials);

  EmpiricalMetrics em;
  em.trials = trials;
  em.metrics.pf.resize(K);
  em.metrics.pd.resize(K);
  em.metrics.pm.resize(K);
  em.pf_stderr.resize(K);
  em.pd_stderr.resize(K);

  for (int k = 0; k < K; ++k) {
    std::vector<long> above_h0(chunks, 0), above_h1(chunks, 0);
    run_chunks(chunks, options.threads, [&](int c) {
      const int begin = c * detail::kChunkTrials;
      const int count = std::min(detail::kChunkTrials, trials - begin);
      std::vector<std::vector<double>> y0(N), y1(N);
      for (int n = 0; n < N; ++n) {
        y0[n].resize(count);
        y1[n].resize(count);
        fill_chunk(s, k, n, false, seed, c, count, options, y0[n].data());
        fill_chunk(s, k, n, true, seed, c, count, options, y1[n].data());
      }
      const double gamma = d.thresholds[k];
      long a0 = 0, a1 = 0;
      for (int t = 0; t < count; ++t) {
        double z0 = 0, z1 = 0;
        for (int n = 0; n < N; ++n) {
          z0 += d.weights(k, n) * y0[n][t];
          z1 += d.weights(k, n) * y1[n][t];
        }
        if (z0 > gamma) ++a0;
        if (z1 > gamma) ++a1;
      }
      above_h0[c] = a0;
      above_h1[c] = a1;
    });
    long total0 = 0, total1 = 0;
    for (int c = 0; c < chunks; ++c) {
      total0 += above_h0[c];
      total1 += above_h1[c];
    }
    const double pf = static_cast<double>(total0) / trials;
    const double pd = static_cast<double>(total1) / trials;
    em.metrics.pf[k] = pf;
    em.metrics.pd[k] = pd;
    em.metrics.pm[k] = 1.0 - pd;
    em.pf_stderr[k] = std::sqrt(pf * (1.0 - pf) / trials);
    em.pd_stderr[k] = std::sqrt(pd * (1.0 - pd) / trials);
  }
  em.metrics.throughput = p.throughput_rates.dot((1.0 - em.metrics.pf.array()).matrix());
  em.metrics.interference = p.interference_costs.dot(em.metrics.pm);
  return em;
}

}  // namespace specsense
