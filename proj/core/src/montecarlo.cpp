#include "quill/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "quill/errors.hpp"
#include "quill/illumination.hpp"
#include "quill/photon_stats.hpp"
#include "quill/samplers.hpp"

namespace quill::mc {

std::string_view to_string(StreamMode mode) noexcept {
  return mode == StreamMode::per_shot_counter ? "per-shot-counter" : "sequential";
}

std::string_view to_string(Estimator estimator) noexcept {
  return estimator == Estimator::population ? "population" : "empirical";
}

std::string_view to_string(Quantity q) noexcept {
  switch (q) {
  case Quantity::snr: return "snr";
  case Quantity::epsilon: return "epsilon";
  case Quantity::nrf: return "nrf";
  case Quantity::delta_mean: return "delta_mean";
  case Quantity::delta_var: return "delta_var";
  case Quantity::count_moments: return "count_moments";
  case Quantity::mi: return "mi";
  }
  return "unknown";
}

const MCEstimate& MCResult::at(std::string_view name) const {
  for (const auto& v : values) {
    if (v.name == name) {
      return v.estimate;
    }
  }
  throw std::out_of_range("MCResult: no estimate named '" + std::string(name) + "'");
}

void PairMoments::add(double x, double y) noexcept {
  const double p = x * y;
  n += 1.0;
  const double dx = x - mean_x;
  const double dy = y - mean_y;
  const double dp = p - mean_p;
  mean_x += dx / n;
  mean_y += dy / n;
  mean_p += dp / n;
  m2_x += dx * (x - mean_x);
  m2_y += dy * (y - mean_y);
  m2_p += dp * (p - mean_p);
  c_xy += dx * (y - mean_y);
}

void PairMoments::merge(const PairMoments& o) noexcept {
  if (o.n == 0.0) {
    return;
  }
  if (n == 0.0) {
    *this = o;
    return;
  }
  const double total = n + o.n;
  const double w = n * o.n / total;
  const double dx = o.mean_x - mean_x;
  const double dy = o.mean_y - mean_y;
  const double dp = o.mean_p - mean_p;
  m2_x += o.m2_x + dx * dx * w;
  m2_y += o.m2_y + dy * dy * w;
  m2_p += o.m2_p + dp * dp * w;
  c_xy += o.c_xy + dx * dy * w;
  mean_x += dx * o.n / total;
  mean_y += dy * o.n / total;
  mean_p += dp * o.n / total;
  n = total;
}

void ScalarMoments::add(double x) noexcept {
  n += 1.0;
  const double d = x - mean;
  mean += d / n;
  m2 += d * (x - mean);
}

void ScalarMoments::merge(const ScalarMoments& o) noexcept {
  if (o.n == 0.0) {
    return;
  }
  if (n == 0.0) {
    *this = o;
    return;
  }
  const double total = n + o.n;
  const double d = o.mean - mean;
  m2 += o.m2 + d * d * n * o.n / total;
  mean += d * o.n / total;
  n = total;
}

void CountingBatch::merge(const CountingBatch& o) noexcept {
  in.merge(o.in);
  out.merge(o.out);
  frame_cov_in.merge(o.frame_cov_in);
  frame_cov_out.merge(o.frame_cov_out);
}

namespace {

void check_config(const MCConfig& cfg) {
  if (cfg.batches < kMinBatches) {
    throw ConfigError("MCConfig: at least " + std::to_string(kMinBatches) +
                      " batches are required for a standard error");
  }
  if (cfg.shots < 2 || cfg.shots < 2ull * cfg.batches) {
    throw ConfigError("MCConfig: need at least 2 shots per batch (shots = " +
                      std::to_string(cfg.shots) + ", batches = " +
                      std::to_string(cfg.batches) + ")");
  }
}

std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t batch_begin(std::uint64_t shots, std::uint32_t batches, std::uint32_t b) {
  return shots / batches * b + std::min<std::uint64_t>(b, shots % batches);
}

/// Runs body(batch_index, rng_factory) over all batches, honouring the
/// stream mode and thread count. Batch results are written by index.
template <class Body>
void for_each_batch(const MCConfig& cfg, Body&& body) {
  const std::uint32_t batches = cfg.batches;
  if (cfg.stream_mode == StreamMode::sequential) {
    Philox4x32 rng(cfg.seed, 0);
    for (std::uint32_t b = 0; b < batches; ++b) {
      body(b, [&rng](std::uint64_t) -> Philox4x32& { return rng; });
    }
    return;
  }

  unsigned threads = cfg.threads == 0 ? std::thread::hardware_concurrency() : cfg.threads;
  threads = std::clamp<unsigned>(threads, 1u, batches);

  auto run_batch = [&](std::uint32_t b) {
    Philox4x32 rng(cfg.seed, 0);
    body(b, [&rng, &cfg](std::uint64_t shot) -> Philox4x32& {
      rng = Philox4x32(cfg.seed, shot);
      return rng;
    });
  };

  if (threads == 1) {
    for (std::uint32_t b = 0; b < batches; ++b) {
      run_batch(b);
    }
    return;
  }

  std::atomic<std::uint32_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&] {
        for (std::uint32_t b = next.fetch_add(1); b < batches; b = next.fetch_add(1)) {
          try {
            run_batch(b);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) {
              failure = std::current_exception();
            }
          }
        }
      });
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
}

double sample_cov(const std::vector<sampling::PixelCounts>& px) {
  const double n = static_cast<double>(px.size());
  double ms = 0.0, mr = 0.0;
  for (const auto& c : px) {
    ms += static_cast<double>(c.signal);
    mr += static_cast<double>(c.reference);
  }
  ms /= n;
  mr /= n;
  double acc = 0.0;
  for (const auto& c : px) {
    acc += (static_cast<double>(c.signal) - ms) * (static_cast<double>(c.reference) - mr);
  }
  return acc / (n - 1.0);
}

// Named statistics computed identically on each batch and on the pool.
using StatFn = std::function<double(const CountingBatch&)>;

struct NamedStat {
  const char* name;
  StatFn fn;
};

double unbiased(double m2, double n) { return m2 / (n - 1.0); }

std::vector<NamedStat> counting_stats(Quantity q, Estimator est, double pixels) {
  auto cov = [](const PairMoments& m) { return unbiased(m.c_xy, m.n); };
  auto var_p = [](const PairMoments& m) { return unbiased(m.m2_p, m.n); };
  auto frame_var = [](const ScalarMoments& m) { return unbiased(m.m2, m.n); };
  const bool pop = est == Estimator::population;

  switch (q) {
  case Quantity::count_moments:
    return {
        {"mean_s", [](const CountingBatch& b) { return b.in.mean_x; }},
        {"mean_r", [](const CountingBatch& b) { return b.in.mean_y; }},
        {"var_s", [](const CountingBatch& b) { return unbiased(b.in.m2_x, b.in.n); }},
        {"var_r", [](const CountingBatch& b) { return unbiased(b.in.m2_y, b.in.n); }},
        {"cov_sr", [=](const CountingBatch& b) { return cov(b.in); }},
    };
  case Quantity::delta_mean:
    if (pop) {
      return {{"delta_mean_in", [=](const CountingBatch& b) { return cov(b.in); }},
              {"delta_mean_out", [=](const CountingBatch& b) { return cov(b.out); }}};
    }
    return {{"delta_mean_in", [](const CountingBatch& b) { return b.frame_cov_in.mean; }},
            {"delta_mean_out", [](const CountingBatch& b) { return b.frame_cov_out.mean; }}};
  case Quantity::delta_var:
    if (pop) {
      return {{"delta_var_in", [=](const CountingBatch& b) { return var_p(b.in); }},
              {"delta_var_out", [=](const CountingBatch& b) { return var_p(b.out); }}};
    }
    return {{"delta_var_in", [=](const CountingBatch& b) { return frame_var(b.frame_cov_in); }},
            {"delta_var_out", [=](const CountingBatch& b) { return frame_var(b.frame_cov_out); }}};
  case Quantity::snr:
    if (pop) {
      return {{"snr", [=](const CountingBatch& b) {
                 return std::abs(cov(b.in) - cov(b.out)) /
                        std::sqrt(var_p(b.in) + var_p(b.out));
               }}};
    }
    return {{"snr", [=](const CountingBatch& b) {
               return std::abs(b.frame_cov_in.mean - b.frame_cov_out.mean) /
                      std::sqrt(frame_var(b.frame_cov_in) + frame_var(b.frame_cov_out)) /
                      std::sqrt(pixels);
             }}};
  case Quantity::epsilon:
    return {{"epsilon", [=](const CountingBatch& b) {
               const double nv_s = unbiased(b.in.m2_x, b.in.n) - b.in.mean_x;
               const double nv_r = unbiased(b.in.m2_y, b.in.n) - b.in.mean_y;
               return cov(b.in) / std::sqrt(nv_s * nv_r);
             }}};
  case Quantity::nrf:
    return {{"nrf", [=](const CountingBatch& b) {
               const double v = unbiased(b.in.m2_x, b.in.n) + unbiased(b.in.m2_y, b.in.n) -
                                2.0 * cov(b.in);
               return v / (b.in.mean_x + b.in.mean_y);
             }}};
  case Quantity::mi:
    break;
  }
  throw ParameterError("extract: quantity '" + std::string(to_string(q)) +
                       "' is not a counting quantity");
}

/// Value from the pooled batches, standard error from the delete-one-batch
/// jackknife. For a plain mean this is exactly the spread of the batch means;
/// for ratios and square roots it avoids evaluating the statistic on a single
/// small batch, where normally ordered variances can turn negative.
template <class Batch, class Fn>
MCEstimate batch_estimate(const std::vector<Batch>& batches, const Batch& pooled,
                          Fn&& fn, std::uint64_t n_samples, std::uint64_t seed) {
  const std::size_t nb = batches.size();
  std::vector<Batch> suffix(nb + 1);
  for (std::size_t i = nb; i-- > 0;) {
    suffix[i] = batches[i];
    suffix[i].merge(suffix[i + 1]);
  }
  ScalarMoments loo;
  Batch prefix;
  for (std::size_t i = 0; i < nb; ++i) {
    Batch without = prefix;
    without.merge(suffix[i + 1]);
    loo.add(fn(without));
    prefix.merge(batches[i]);
  }
  const double n = static_cast<double>(nb);
  MCEstimate e;
  e.value = fn(pooled);
  e.std_error = std::sqrt(loo.m2 * (n - 1.0) / n);
  e.n_samples = n_samples;
  e.seed = seed;
  return e;
}

} // namespace

CountingRun run_counting(const Scenario& s, const MCConfig& cfg) {
  validate(s);
  check_config(cfg);
  const std::int64_t pixels = cfg.pixels > 0 ? cfg.pixels : s.N_pix;
  if (cfg.estimator == Estimator::empirical && pixels < 2) {
    throw ConfigError("MCConfig: the empirical estimator needs at least 2 pixels per frame");
  }

  const sampling::CountSampler in_sampler(s);
  const sampling::CountSampler out_sampler(photon_stats::with_object(s, false));

  CountingRun run;
  run.scenario = s;
  run.config = cfg;
  run.pixels = pixels;
  run.batches.resize(cfg.batches);
  if (cfg.record_digests) {
    run.digests.resize(cfg.shots);
  }

  for_each_batch(cfg, [&](std::uint32_t b, auto&& rng_for_shot) {
    CountingBatch acc;
    std::vector<sampling::PixelCounts> in_px(static_cast<std::size_t>(pixels));
    std::vector<sampling::PixelCounts> out_px(static_cast<std::size_t>(pixels));
    const std::uint64_t first = batch_begin(cfg.shots, cfg.batches, b);
    const std::uint64_t last = batch_begin(cfg.shots, cfg.batches, b + 1);
    for (std::uint64_t shot = first; shot < last; ++shot) {
      Philox4x32& rng = rng_for_shot(shot);
      std::uint64_t digest = shot;
      for (std::size_t p = 0; p < in_px.size(); ++p) {
        in_px[p] = in_sampler(rng);
        out_px[p] = out_sampler(rng);
        acc.in.add(static_cast<double>(in_px[p].signal),
                   static_cast<double>(in_px[p].reference));
        acc.out.add(static_cast<double>(out_px[p].signal),
                    static_cast<double>(out_px[p].reference));
        if (cfg.record_digests) {
          for (auto v : {in_px[p].signal, in_px[p].reference, out_px[p].signal,
                         out_px[p].reference}) {
            digest = mix64(digest ^ static_cast<std::uint64_t>(v));
          }
        }
      }
      if (pixels >= 2) {
        acc.frame_cov_in.add(sample_cov(in_px));
        acc.frame_cov_out.add(sample_cov(out_px));
      }
      if (cfg.record_digests) {
        run.digests[shot] = digest;
      }
    }
    run.batches[b] = acc;
  });
  return run;
}

MCResult extract(const CountingRun& run, Quantity quantity) {
  const auto& cfg = run.config;
  CountingBatch pooled;
  for (const auto& b : run.batches) {
    pooled.merge(b);
  }
  const bool frame_based = cfg.estimator == Estimator::empirical &&
                           (quantity == Quantity::snr || quantity == Quantity::delta_mean ||
                            quantity == Quantity::delta_var);
  const std::uint64_t n_samples =
      frame_based ? cfg.shots : cfg.shots * static_cast<std::uint64_t>(run.pixels);

  MCResult result;
  result.quantity = quantity;
  result.estimator = cfg.estimator;
  for (const auto& stat : counting_stats(quantity, cfg.estimator,
                                         static_cast<double>(run.pixels))) {
    result.values.push_back(
        {stat.name, batch_estimate(run.batches, pooled, stat.fn, n_samples, cfg.seed)});
  }
  return result;
}

namespace {

struct QuadratureBatch {
  double n = 0.0;
  double qq1 = 0.0, pp1 = 0.0, qq2 = 0.0, pp2 = 0.0, q1q2 = 0.0, p1p2 = 0.0;

  void merge(const QuadratureBatch& o) noexcept {
    n += o.n;
    qq1 += o.qq1;
    pp1 += o.pp1;
    qq2 += o.qq2;
    pp2 += o.pp2;
    q1q2 += o.q1q2;
    p1p2 += o.p1p2;
  }
  // Zero-mean Wigner function: raw second moments, projected onto
  // standard form.
  double a() const { return 0.5 * (qq1 + pp1) / n; }
  double b() const { return 0.5 * (qq2 + pp2) / n; }
  double c() const { return q1q2 / n; }
  double d() const { return p1p2 / n; }
  double mi() const {
    const double ab = a() * b();
    return -0.5 * (std::log1p(-c() * c() / ab) + std::log1p(-d() * d() / ab));
  }
};

} // namespace

MCResult estimate_effective_cm(const Scenario& s, const MCConfig& cfg) {
  validate(s);
  check_config(cfg);
  const auto eff = s.object_present ? illumination::effective_cm(s)
                                    : illumination::effective_cm_object_absent(s);
  const sampling::QuadratureSampler sampler(eff.cm);

  std::vector<QuadratureBatch> batches(cfg.batches);
  for_each_batch(cfg, [&](std::uint32_t b, auto&& rng_for_shot) {
    QuadratureBatch acc;
    const std::uint64_t first = batch_begin(cfg.shots, cfg.batches, b);
    const std::uint64_t last = batch_begin(cfg.shots, cfg.batches, b + 1);
    for (std::uint64_t shot = first; shot < last; ++shot) {
      const auto x = sampler(rng_for_shot(shot));
      acc.n += 1.0;
      acc.qq1 += x[0] * x[0];
      acc.pp1 += x[1] * x[1];
      acc.qq2 += x[2] * x[2];
      acc.pp2 += x[3] * x[3];
      acc.q1q2 += x[0] * x[2];
      acc.p1p2 += x[1] * x[3];
    }
    batches[b] = acc;
  });

  QuadratureBatch pooled;
  for (const auto& b : batches) {
    pooled.merge(b);
  }
  MCResult result;
  result.quantity = Quantity::mi;
  result.estimator = cfg.estimator;
  auto add = [&](const char* name, double (QuadratureBatch::*fn)() const) {
    result.values.push_back(
        {name, batch_estimate(batches, pooled, [fn](const QuadratureBatch& q) { return (q.*fn)(); },
                              cfg.shots, cfg.seed)});
  };
  add("mi", &QuadratureBatch::mi);
  add("a", &QuadratureBatch::a);
  add("b", &QuadratureBatch::b);
  add("c", &QuadratureBatch::c);
  add("d", &QuadratureBatch::d);
  return result;
}

MCResult estimate(const Scenario& s, Quantity quantity, const MCConfig& cfg) {
  if (quantity == Quantity::mi) {
    return estimate_effective_cm(s, cfg);
  }
  return extract(run_counting(s, cfg), quantity);
}

} // namespace quill::mc
