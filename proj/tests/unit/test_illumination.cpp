#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "quill/errors.hpp"
#include "quill/illumination.hpp"

using namespace quill;
using namespace quill::illumination;
using quill::test::fig2;
using quill::test::fig3;

// Reference values below were evaluated once in 50-digit arithmetic from the
// element formulas and are frozen here.

TEST_CASE("effective matrix elements at Fig-2 parameters") {
  const auto thb = effective_cm(fig2(SourceKind::thb, 5000)).cm;
  CHECK(thb.a == doctest::Approx(1.0888888888888889).epsilon(1e-15));
  CHECK(thb.c == doctest::Approx(0.062836483950169742).epsilon(1e-13));
  CHECK(thb.c == thb.d);
  // b = 1 + (N + 2 N_beta) / (M + M_beta)
  CHECK(thb.b == doctest::Approx(1.0 + 14000.0 / 90050.0).epsilon(1e-14));

  const auto twb = effective_cm(fig2(SourceKind::twb, 5000)).cm;
  CHECK(twb.a == thb.a);
  CHECK(twb.b == thb.b);
  CHECK(twb.c > 0.0);
  CHECK(twb.d == -twb.c);
}

TEST_CASE("mutual information at Fig-2 parameters") {
  CHECK(mutual_info(fig2(SourceKind::thb, 5000)) ==
        doctest::Approx(0.0031431431744665373).epsilon(1e-11));
  CHECK(mutual_info(fig2(SourceKind::twb, 5000)) ==
        doctest::Approx(0.030428169626759051).epsilon(1e-11));
  CHECK(mi_ratio(fig2(SourceKind::twb, 5000), fig2(SourceKind::thb, 5000)) ==
        doctest::Approx(9.6808092847769818).epsilon(1e-10));
}

TEST_CASE("asymptotic enhancement") {
  // (mu_T^2 + mu_T) / mu_theta^2; equal N gives (mu + 1) / mu.
  CHECK(asymptotic_ratio(4000, 4000, 0.38, 90000) ==
        doctest::Approx(9.55).epsilon(1e-14));
  CHECK(asymptotic_ratio(4232, 3278, 0.38, 90000) ==
        doctest::Approx(15.13633553101062754).epsilon(1e-14));
  CHECK(asymptotic_ratio(fig3(SourceKind::twb, 0), fig3(SourceKind::thb, 0)) ==
        doctest::Approx(15.13633553101062754).epsilon(1e-14));

  CHECK_THROWS_AS(asymptotic_ratio(fig3(SourceKind::thb, 0), fig3(SourceKind::thb, 0)),
                  ParameterError);
  auto other = fig3(SourceKind::thb, 0);
  other.M = 1000;
  CHECK_THROWS_AS(asymptotic_ratio(fig3(SourceKind::twb, 0), other), ParameterError);
  CHECK_THROWS_AS(asymptotic_ratio(4000, 0, 0.38, 90000), DomainError);
}

TEST_CASE("ratios approach the asymptote for a dominant bath") {
  const double limit = asymptotic_ratio(4000, 4000, 0.38, 90000);
  const double r = mi_ratio(fig2(SourceKind::twb, 1e8), fig2(SourceKind::thb, 1e8));
  CHECK(std::abs(r / limit - 1.0) < 1e-3);
  // MI_TWB > MI_THB everywhere on a Fig-3 grid.
  for (double nb = 10; nb <= 1e7; nb *= 10) {
    CHECK(mutual_info(fig3(SourceKind::twb, nb)) > mutual_info(fig3(SourceKind::thb, nb)));
  }
}

TEST_CASE("every effective matrix on the parameter grid is physical") {
  for (auto kind : {SourceKind::twb, SourceKind::thb}) {
    for (double n : {1.0, 100.0, 4000.0, 40000.0}) {
      for (std::int64_t mb : {1, 50, 1300, 90000}) {
        for (double nb = 0; nb <= 1e8; nb = nb == 0 ? 1 : nb * 10) {
          auto s = fig2(kind, nb);
          s.N = n;
          s.M_beta = mb;
          const auto cm = effective_cm(s).cm;
          CHECK(gaussian::is_physical(cm).nu_minus >= 1.0 - 1e-9);
        }
      }
    }
  }
}

TEST_CASE("object handling") {
  auto s = fig2(SourceKind::twb, 100);
  s.tau = 0.3;
  CHECK_THROWS_AS(effective_cm(s), ParameterError);
  s.tau = 0.5;
  s.object_present = false;
  CHECK_THROWS_AS(effective_cm(s), ParameterError);

  const auto absent = effective_cm_object_absent(s).cm;
  CHECK(absent.c == 0.0);
  CHECK(absent.d == 0.0);
  CHECK(absent.b == doctest::Approx(1.0 + 200.0 / 90050.0).epsilon(1e-14));
  CHECK(gaussian::mutual_info_renyi2(absent) == 0.0);
}
