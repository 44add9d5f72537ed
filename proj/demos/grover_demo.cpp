// Copyright 2026 The aqclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Two-qubit Grover search: gate-by-gate amplitudes, then the same circuit
// run as an adiabatic evolution of its clock Hamiltonian.

#include <cstdio>

#include "aqclab/adiabatic/engine.hpp"
#include "aqclab/adiabatic/path.hpp"
#include "aqclab/clock/circuit.hpp"
#include "aqclab/clock/history.hpp"

int main() {
  using namespace aqc;
  const QuantumCircuit circ = grover_circuit(2);
  const auto hist = history_vector(circ, StateVector::qubit_basis(2, 0));
  for (int l = 0; l <= circ.length(); ++l) {
    std::printf("after %d gate(s):", l);
    for (Index b = 0; b < 4; ++b) std::printf(" %+.3f", hist.alphas[static_cast<std::size_t>(l)][b].real());
    std::printf("\n");
  }

  const auto path = compile_to_path(circ);
  const double est = adiabatic_time_estimate(gap_profile(path, 101));
  std::printf("clock dimension %ld, time estimate %.2f\n", static_cast<long>(path.H0.dim()), est);
  for (double factor : {0.1, 1.0, 10.0, 50.0}) {
    const double tau = factor * est;
    const auto res = run_adiabatic(path, tau, std::max(0.01, tau / 20000));
    Rng rng(7);
    int last = 0;
    double marked = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const auto r = measure_history(res.final_state, 2, rng);
      if (r.clock != circ.length()) continue;
      ++last;
      marked += std::norm(r.state[2]);
    }
    std::printf("tau = %5.1f x estimate: history overlap %.4f, clock=L in %d/1000, P(x=2 | clock=L) %.4f\n", factor,
                res.success, last, last ? marked / last : 0.0);
  }
  return 0;
}
