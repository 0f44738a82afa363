#include <cmath>

#include "count_oracles.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "quill/errors.hpp"
#include "quill/illumination.hpp"
#include "quill/photon_stats.hpp"

using namespace quill;
using namespace quill::photon_stats;
using quill::test::fig2;
using quill::test::fig3;
using quill::test::single_pair;

namespace {

bool rel_close(double got, long double want, double tol) {
  return std::abs(static_cast<long double>(got) - want) <= tol * std::abs(want);
}

oracle::JointTable pair_table(SourceKind kind, double mu, double p, double q, std::size_t n) {
  return kind == SourceKind::twb ? oracle::twb_pair(mu, p, q, n)
                                 : oracle::thb_pair(mu, p, q, n);
}

} // namespace

TEST_CASE("single-pair covariance against truncated distributions") {
  const auto twb = oracle::moments(oracle::twb_pair(0.1L, 1.0L, 0.5L, 60));
  CHECK(std::abs(twb.cov - 0.055L) < 1e-15L);
  const auto s_twb = single_pair(SourceKind::twb, 0.1, 1.0, 0.5);
  CHECK(rel_close(count_moments(s_twb).cov_sr, twb.cov, 1e-6));
  CHECK(rel_close(per_mode_moments(s_twb).cov_pair, twb.cov, 1e-6));

  const auto thb = oracle::moments(oracle::thb_pair(0.2L, 1.0L, 1.0L, 200));
  CHECK(std::abs(thb.cov - 0.04L) < 1e-15L);
  const auto s_thb = single_pair(SourceKind::thb, 0.2, 1.0, 1.0);
  CHECK(rel_close(count_moments(s_thb).cov_sr, thb.cov, 1e-6));
}

TEST_CASE("single-pair cumulants up to fourth order") {
  struct Case {
    SourceKind kind;
    double mu, eta, tau;
  };
  for (const Case c : {Case{SourceKind::twb, 0.1, 1.0, 0.5}, Case{SourceKind::twb, 0.7, 0.38, 0.5},
                       Case{SourceKind::twb, 1.3, 0.9, 1.0}, Case{SourceKind::thb, 0.2, 1.0, 1.0},
                       Case{SourceKind::thb, 0.9, 0.38, 0.5}, Case{SourceKind::thb, 1.5, 0.6, 0.2}}) {
    CAPTURE(static_cast<int>(c.kind));
    CAPTURE(c.mu);
    const auto s = single_pair(c.kind, c.mu, c.eta, c.tau);
    const auto t = pair_table(c.kind, c.mu, c.eta, c.eta * c.tau, 200);
    const auto m = oracle::moments(t);
    const auto k = pair_cumulants(s);
    CHECK(rel_close(k.k10, m.mean_s, 1e-10));
    CHECK(rel_close(k.k01, m.mean_r, 1e-10));
    CHECK(rel_close(k.k20, m.var_s, 1e-10));
    CHECK(rel_close(k.k02, m.var_r, 1e-10));
    CHECK(rel_close(k.k11, m.cov, 1e-10));
    CHECK(rel_close(k.k21, oracle::central_moment(t, 2, 1), 1e-9));
    CHECK(rel_close(k.k12, oracle::central_moment(t, 1, 2), 1e-9));
    const long double mu22 = oracle::central_moment(t, 2, 2);
    CHECK(rel_close(k.k22, mu22 - m.var_s * m.var_r - 2 * m.cov * m.cov, 1e-8));
    CHECK(rel_close(product_variance(detector_cumulants(s)), m.var_product, 1e-9));
  }
}

TEST_CASE("detector composition of several pairs and a bath") {
  for (auto kind : {SourceKind::twb, SourceKind::thb}) {
    // Two source pairs, mu1 = 0.3, eta = 0.6, tau = 0.5; two bath modes of
    // 0.8 photons detected with eta_beta = 0.5.
    Scenario s;
    s.source_kind = kind;
    s.M = 2;
    s.eta = 0.6;
    s.N = 0.6 * 2 * 0.3;
    s.M_beta = 2;
    s.eta_beta = 0.5;
    s.N_beta = 0.5 * 2 * 0.8;

    const auto one = pair_table(kind, 0.3, 0.6, 0.3, 60);
    auto t = oracle::convolve(one, one, 90, 90);
    const auto bath = oracle::thermal(0.4L, 60);
    t = oracle::add_signal_noise(t, bath, 120);
    t = oracle::add_signal_noise(t, bath, 150);
    const auto m = oracle::moments(t);
    REQUIRE(std::abs(m.total - 1.0L) < 1e-15L);

    const auto cm = count_moments(s);
    CHECK(rel_close(cm.mean_s, m.mean_s, 1e-12));
    CHECK(rel_close(cm.mean_r, m.mean_r, 1e-12));
    CHECK(rel_close(cm.var_s, m.var_s, 1e-12));
    CHECK(rel_close(cm.var_r, m.var_r, 1e-12));
    CHECK(rel_close(cm.cov_sr, m.cov, 1e-12));
    const auto d = delta_stats(s);
    CHECK(d.mean_in == cm.cov_sr);
    CHECK(rel_close(d.var_in, m.var_product, 1e-11));

    // Object removed: the signal pixel sees only the bath.
    auto t_out = oracle::convolve(pair_table(kind, 0.3, 0.6, 0.0, 60),
                                  pair_table(kind, 0.3, 0.6, 0.0, 60), 90, 90);
    t_out = oracle::add_signal_noise(t_out, bath, 120);
    t_out = oracle::add_signal_noise(t_out, bath, 150);
    CHECK(d.mean_out == 0.0);
    CHECK(rel_close(d.var_out, oracle::moments(t_out).var_product, 1e-11));
  }
}

TEST_CASE("empirical-means variance against exhaustive enumeration") {
  for (auto kind : {SourceKind::twb, SourceKind::thb}) {
    auto s = single_pair(kind, 0.15, 0.8, 0.5);
    s.M_beta = 1;
    s.eta_beta = 1.0;
    s.N_beta = 0.05;
    auto t = pair_table(kind, 0.15, 0.8, 0.4, 10);
    t = oracle::add_signal_noise(t, oracle::thermal(0.05L, 10), 10);
    const long double total = oracle::moments(t).total;
    for (auto& w : t.p) w /= total;
    for (int n : {2, 3}) {
      CAPTURE(n);
      const auto d = delta_stats_empirical(s, n);
      // Truncation at 10 photons per detector drops ~1e-9 of the mass.
      CHECK(rel_close(d.var_in, oracle::sample_cov_variance(t, n), 1e-4));
    }
  }
  CHECK_THROWS_AS(delta_stats_empirical(fig2(SourceKind::twb, 10), 1), DomainError);
}

TEST_CASE("moment identities") {
  for (double nb : {0.0, 10.0, 5000.0, 1e6}) {
    for (auto kind : {SourceKind::twb, SourceKind::thb}) {
      auto s = fig2(kind, nb);
      if (nb == 0.0) s.M_beta = 0;
      const auto m = count_moments(s);
      CHECK(m.mean_r == doctest::Approx(s.N).epsilon(1e-14));
      CHECK(m.mean_s == doctest::Approx(0.5 * s.N + nb).epsilon(1e-14));
      CHECK(count_moments(with_object(s, false)).cov_sr == 0.0);
      CHECK(delta_stats(s).mean_out == 0.0);
    }
  }
  // mean_r = N under scaling of every extensive parameter.
  for (double k : {0.5, 3.0, 17.0}) {
    auto s = fig3(SourceKind::twb, 1e4);
    s.N *= k;
    s.M = static_cast<std::int64_t>(s.M * k);
    s.N_beta *= k;
    s.M_beta = static_cast<std::int64_t>(s.M_beta * k);
    CHECK(count_moments(s).mean_r == doctest::Approx(s.N).epsilon(1e-14));
  }
}

TEST_CASE("snr") {
  auto dark = fig2(SourceKind::twb, 1000);
  dark.N = 0;
  CHECK(snr(dark) == 0.0);

  Scenario vacuum;
  CHECK_THROWS_AS(snr(vacuum), DomainError);

  for (auto kind : {SourceKind::twb, SourceKind::thb}) {
    double prev = snr(fig2(kind, 1e2));
    for (double nb : {1e3, 1e4, 1e5}) {
      const double cur = snr(fig2(kind, nb));
      CHECK(cur < prev);
      prev = cur;
    }
    const auto s = fig3(kind, 1e4);
    CHECK(snr_frame(s) == doctest::Approx(std::sqrt(80.0) * snr(s)).epsilon(1e-15));
  }
}

TEST_CASE("snr ratio") {
  const auto same = snr_ratio(fig2(SourceKind::twb, 500), fig2(SourceKind::twb, 500));
  CHECK(same.ratio == 1.0);
  CHECK(same.dominant_bath == 1.0);

  const double limit = illumination::asymptotic_ratio(4000, 4000, 0.38, 90000);
  const auto r7 = snr_ratio(fig2(SourceKind::twb, 1e7), fig2(SourceKind::thb, 1e7));
  CHECK(std::abs(r7.ratio / limit - 1.0) < 1e-3);

  // Fig-3 photon numbers: the covariance ratio gives the quoted enhancement,
  // the complete SNR ratio keeps the source noise of the reference arm.
  const auto r3 = snr_ratio(fig3(SourceKind::twb, 1e7), fig3(SourceKind::thb, 1e7));
  CHECK(r3.dominant_bath == doctest::Approx(15.1).epsilon(0.1 / 15.1));
  CHECK(r3.dominant_bath == doctest::Approx(15.13633553101062754).epsilon(1e-14));
  CHECK(r3.ratio == doctest::Approx(12.11431514755879515).epsilon(1e-10));

  auto dark = fig2(SourceKind::thb, 100);
  dark.N = 0;
  CHECK_THROWS_AS(snr_ratio(fig2(SourceKind::twb, 100), dark), DomainError);
}

TEST_CASE("Cauchy-Schwarz parameter") {
  for (double n : {10.0, 4000.0}) {
    for (std::int64_t mb : {1, 50, 1300}) {
      for (double nb = 1; nb <= 1e8; nb *= 10) {
        auto s = fig2(SourceKind::thb, nb);
        s.N = n;
        s.M_beta = mb;
        CHECK(cauchy_schwarz_epsilon(s) <= 1.0 + 1e-9);
      }
    }
  }

  // Zero bath: thermal marginals have normally ordered variance n^2 per mode,
  // so eps = mu1 (mu1 + 1) pq / (mu1^2 pq) = (mu1 + 1) / mu1.
  auto s = fig3(SourceKind::twb, 0);
  s.M_beta = 0;
  const double mu = s.N / (s.eta * static_cast<double>(s.M));
  CHECK(cauchy_schwarz_epsilon(s) == doctest::Approx((mu + 1) / mu).epsilon(1e-12));
  CHECK(cauchy_schwarz_epsilon(s) > 1.0);

  for (double nb = 1e4; nb <= 1e8; nb *= 10) {
    CHECK(cauchy_schwarz_epsilon(fig3(SourceKind::twb, nb)) <= 1.0);
  }
}

TEST_CASE("noise reduction factor") {
  for (double nb : {0.0, 10.0, 1e3, 1e6}) {
    for (double n : {1.0, 4000.0}) {
      auto s = fig2(SourceKind::thb, nb);
      s.N = n;
      if (nb == 0.0) s.M_beta = 0;
      CHECK(noise_reduction_factor(s) >= 1.0);
    }
  }
  const auto perfect = single_pair(SourceKind::twb, 0.8, 1.0, 1.0);
  CHECK(noise_reduction_factor(perfect) == doctest::Approx(0.0));
  CHECK(noise_reduction_factor(fig3(SourceKind::twb, 1e6)) > 1.0);
  CHECK_THROWS_AS(noise_reduction_factor(Scenario{}), DomainError);
}
