#include <cmath>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "quill/errors.hpp"
#include "quill/rng.hpp"
#include "quill/samplers.hpp"

using namespace quill;
using namespace quill::sampling;

TEST_CASE("Philox4x32-10 known-answer vectors") {
  using B = Philox4x32::Block;
  using K = Philox4x32::Key;
  CHECK(Philox4x32::encrypt(B{0, 0, 0, 0}, K{0, 0}) ==
        B{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  CHECK(Philox4x32::encrypt(B{~0u, ~0u, ~0u, ~0u}, K{~0u, ~0u}) ==
        B{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  CHECK(Philox4x32::encrypt(B{0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                            K{0xa4093822u, 0x299f31d0u}) ==
        B{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("streams are pure functions of key and stream index") {
  Philox4x32 a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    CHECK(x == b());
    CHECK(x != c());
    CHECK(x != d());
    seen.insert(x);
  }
  CHECK(seen.size() == 100);
  CHECK(a.blocks_used() == 50);

  Philox4x32 u(1, 1);
  for (int i = 0; i < 10000; ++i) {
    const double x = uniform_open(u);
    REQUIRE(x > 0.0);
    REQUIRE(x < 1.0);
  }
}

namespace {

struct Stats {
  double n = 0, mean = 0, m2 = 0;
  void add(double x) {
    n += 1;
    const double d = x - mean;
    mean += d / n;
    m2 += d * (x - mean);
  }
  double var() const { return m2 / (n - 1); }
  double se() const { return std::sqrt(var() / n); }
};

} // namespace

TEST_CASE("scalar samplers reproduce their first two moments") {
  constexpr int kDraws = 400000;
  for (double mean : {0.05, 0.5, 3.0, 40.0}) {
    CAPTURE(mean);
    Philox4x32 rng(11, static_cast<std::uint64_t>(mean * 1000));
    Stats g, e, p;
    for (int i = 0; i < kDraws; ++i) {
      g.add(static_cast<double>(geometric(rng, mean)));
      e.add(exponential(rng, mean));
      p.add(static_cast<double>(poisson(rng, mean)));
    }
    CHECK(std::abs(g.mean - mean) < 4 * g.se());
    CHECK(std::abs(e.mean - mean) < 4 * e.se());
    CHECK(std::abs(p.mean - mean) < 4 * p.se());
    CHECK(g.var() == doctest::Approx(mean * (mean + 1)).epsilon(0.03));
    CHECK(p.var() == doctest::Approx(mean).epsilon(0.03));
  }
  Philox4x32 rng(5, 5);
  for (std::int64_t n : {3, 20, 200}) {
    Stats b;
    for (int i = 0; i < kDraws; ++i) b.add(static_cast<double>(binomial_thin(rng, n, 0.3)));
    CHECK(std::abs(b.mean - 0.3 * n) < 4 * b.se());
    CHECK(b.var() == doctest::Approx(0.21 * n).epsilon(0.03));
  }
  CHECK(geometric(rng, 0.0) == 0);
  CHECK(poisson(rng, 0.0) == 0);
  CHECK(binomial_thin(rng, 9, 1.0) == 9);
}

TEST_CASE("perfect twin beams give identical counts") {
  auto s = quill::test::single_pair(SourceKind::twb, 2.0, 1.0, 1.0);
  s.M = 7;
  s.N = 14.0;
  const CountSampler sample(s);
  Philox4x32 rng(3, 0);
  for (int i = 0; i < 20000; ++i) {
    const auto c = sample(rng);
    REQUIRE(c.signal == c.reference);
  }
}

TEST_CASE("dark THB source leaves only the bath") {
  Scenario s;
  s.source_kind = SourceKind::thb;
  s.N = 0;
  s.M = 10;
  s.M_beta = 4;
  s.N_beta = 2.0;
  s.eta_beta = 0.5;
  Philox4x32 rng(9, 9);
  Stats bath;
  for (int i = 0; i < 200000; ++i) {
    const auto c = sample_thb_counts(s, rng);
    REQUIRE(c.reference == 0);
    bath.add(static_cast<double>(c.signal));
  }
  CHECK(std::abs(bath.mean - 2.0) < 4 * bath.se());
  CHECK_THROWS_AS(sample_twb_counts(s, rng), ParameterError);
}

TEST_CASE("quadrature sampler rejects unphysical input") {
  CHECK_THROWS_AS(QuadratureSampler(gaussian::TwoModeCM{1, 1, 2, 0}), DomainError);
}
