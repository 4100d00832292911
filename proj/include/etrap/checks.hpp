//! Self-check suites behind `etrap oracle-check`.
#pragma once

#include "etrap/config.hpp"

#include <random>
#include <string>
#include <vector>

namespace etrap
{

struct OracleCheck
{
  std::string name;
  double value = 0;  //!< measured discrepancy
  double limit = 0;
  bool passed = false;
  std::string detail;
};

//! Random Hermitian pentadiagonal ladder with O(1 eV) entries.
LadderHamiltonian random_banded_hamiltonian(std::mt19937_64& rng, int n_max);

/*!
 * Bessel sum rule, Raman-Nath agreement (exact and perturbed), stepper
 * against dense propagation for the configured Hamiltonian, a seeded
 * random banded suite and the two-level Bragg reduction.
 */
std::vector<OracleCheck> run_oracle_suites(const RunConfig& config,
                                           int random_systems = 50);

}  // namespace etrap
