#pragma once

#include "quill/scenario.hpp"

namespace quill::test {

// Fig-2 style geometry: equal detected photon numbers for both sources.
inline Scenario fig2(SourceKind kind, double n_beta) {
  Scenario s;
  s.source_kind = kind;
  s.N = 4000;
  s.M = 90000;
  s.N_beta = n_beta;
  s.M_beta = 50;
  s.eta = 0.38;
  s.eta_beta = 0.5;
  return s;
}

// Fig-3 style geometry: measured photon numbers differ between sources.
inline Scenario fig3(SourceKind kind, double n_beta) {
  Scenario s = fig2(kind, n_beta);
  s.N = kind == SourceKind::twb ? 4232 : 3278;
  s.M_beta = 1300;
  return s;
}

inline Scenario single_pair(SourceKind kind, double mu1, double eta, double tau) {
  Scenario s;
  s.source_kind = kind;
  s.M = 1;
  s.eta = eta;
  s.N = eta * mu1;
  s.tau = tau;
  return s;
}

} // namespace quill::test
