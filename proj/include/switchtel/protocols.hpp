#pragma once

#include <array>
#include <optional>

#include "switchtel/channels.hpp"
#include "switchtel/complex_matrix.hpp"
#include "switchtel/parameters.hpp"

namespace switchtel {

/// Selects one end-to-end experiment: protocol 1 (idle when off) or 2
/// (measure-and-prepare when off), path 1 (discard the switch) or 2
/// (Hadamard, measure, post-select `outcome`). `outcome` must be set
/// exactly when path == 2.
struct ProtocolRun {
  int protocol;
  int path;
  std::optional<SwitchOutcome> outcome;
  SwitchParams switch_setting;
  InputParams input;
};

struct RunResult {
  ComplexMatrix bob_state;  // 2×2 density matrix
  double fidelity;          // ⟨ψ_in|ρ_B|ψ_in⟩
  double probability;       // post-selection probability; 1.0 on path 1
};

/// Full density-matrix evolution: build |ξ⟩, apply the protocol's Kraus set,
/// reduce along the chosen path, trace down to Bob, score against the input.
RunResult run(const ProtocolRun& r);
RunResult run(const ProtocolRun& r, const KrausBundle& kraus);

/// Bloch-sphere average of run(...).fidelity over the input qubit, by the
/// fixed Gauss–Legendre × trapezoid rule. Evolves the full pipeline at every
/// node; see ChannelResponse::average_fidelity for the fast equivalent.
double average_fidelity(int protocol, int path, std::optional<SwitchOutcome> outcome,
                        const SwitchParams& s);

/// |α|²·F_on + |β|²·F_off where F_on/F_off are the path-1 average fidelities
/// of the pure |on⟩ / |off⟩ branches, i.e. the no-switch classical mixture.
double classical_mixture_fidelity(int protocol, const SwitchParams& s);

/// Precomputed linear response of one (protocol, path, outcome) pipeline.
///
/// The pipeline from the joint input density matrix to Bob's unnormalized
/// post-branch state is linear, so evolving the 16 products of switch and
/// input matrix units once captures it exactly. Evaluation at any parameters
/// then costs a handful of 2×2 contractions, which is what makes dense
/// parameter sweeps affordable. Agrees with run() to roundoff.
class ChannelResponse {
 public:
  ChannelResponse(int protocol, int path, std::optional<SwitchOutcome> outcome);
  ChannelResponse(int protocol, int path, std::optional<SwitchOutcome> outcome,
                  const KrausBundle& kraus);

  RunResult evaluate(const SwitchParams& s, const InputParams& q) const;
  double fidelity(const SwitchParams& s, const InputParams& q) const;
  double probability(const SwitchParams& s, const InputParams& q) const;

  /// Same quadrature as switchtel::average_fidelity, evaluated through the
  /// precomputed response.
  double average_fidelity(const SwitchParams& s) const;

 private:
  struct Mat2 {
    cdouble m[2][2];
  };

  // base_[k*2+l][i*2+j]: Bob response to the matrix units |k⟩⟨l| on S and
  // |i⟩⟨j| on A'.
  std::array<std::array<Mat2, 4>, 4> base_{};

  std::array<Mat2, 4> input_response(const SwitchParams& s) const;
};

}  // namespace switchtel
