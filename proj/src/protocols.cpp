#include "switchtel/protocols.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "switchtel/linalg.hpp"
#include "switchtel/states.hpp"

namespace switchtel {

namespace {

void validate_selector(int protocol, int path, const std::optional<SwitchOutcome>& outcome) {
  if (protocol != 1 && protocol != 2) {
    throw std::invalid_argument("protocol must be 1 or 2");
  }
  if (path != 1 && path != 2) {
    throw std::invalid_argument("path must be 1 or 2");
  }
  if (path == 1 && outcome.has_value()) {
    throw std::invalid_argument("path 1 has no switch outcome");
  }
  if (path == 2 && !outcome.has_value()) {
    throw std::invalid_argument("path 2 requires a switch outcome");
  }
}

const KrausSet& protocol_ops(const KrausBundle& kraus, int protocol) {
  return protocol == 1 ? kraus.protocol1 : kraus.protocol2;
}

// Precomputed moments of the quadrature nodes: for each node, the input
// amplitudes' pair products Q_ij = q_i conj(q_j) and the sixteen products
// P[(ij),(ab)] = Q_ij * Q_ba that the averaged quadratic form contracts with.
struct HaarMoments {
  struct Node {
    double weight;
    double q_re[4], q_im[4];
    double p_re[16], p_im[16];
  };
  std::vector<Node> nodes;

  static const HaarMoments& instance() {
    static const HaarMoments table = [] {
      HaarMoments moments;
      const auto& base = haar_nodes();
      moments.nodes.reserve(base.size());
      for (const HaarNode& hn : base) {
        const InputParams q(hn.theta_prime, hn.phi_prime);
        const cdouble amp[2] = {q.a(), q.b()};
        Node node{};
        node.weight = hn.weight;
        cdouble qq[4];
        for (int i = 0; i < 2; ++i) {
          for (int j = 0; j < 2; ++j) {
            qq[i * 2 + j] = amp[i] * std::conj(amp[j]);
          }
        }
        for (int t = 0; t < 4; ++t) {
          node.q_re[t] = qq[t].real();
          node.q_im[t] = qq[t].imag();
        }
        for (int ij = 0; ij < 4; ++ij) {
          for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
              const cdouble p = qq[ij] * qq[b * 2 + a];  // Q_ij * Q_ba
              node.p_re[ij * 4 + a * 2 + b] = p.real();
              node.p_im[ij * 4 + a * 2 + b] = p.imag();
            }
          }
        }
        moments.nodes.push_back(node);
      }
      return moments;
    }();
    return table;
  }
};

}  // namespace

RunResult run(const ProtocolRun& r) { return run(r, standard_kraus()); }

RunResult run(const ProtocolRun& r, const KrausBundle& kraus) {
  validate_selector(r.protocol, r.path, r.outcome);

  const ComplexMatrix joint = projector(initial_joint(r.switch_setting, r.input));
  const ComplexMatrix evolved = apply_kraus(joint, protocol_ops(kraus, r.protocol).ops());

  ComplexMatrix alice_bob;
  double probability = 1.0;
  if (r.path == 1) {
    alice_bob = partial_trace(evolved, SubsystemLayout::switch_alice_bob(),
                              {Qubit::APrime, Qubit::A, Qubit::B});
  } else {
    PostselectResult selected = postselect_switch(evolved, *r.outcome);
    alice_bob = std::move(selected.state);
    probability = selected.probability;
  }

  ComplexMatrix bob = partial_trace(alice_bob, SubsystemLayout::alice_bob(), {Qubit::B});
  const double fid = fidelity_to_pure(bob, input_qubit(r.input));
  return {std::move(bob), fid, probability};
}

double average_fidelity(int protocol, int path, std::optional<SwitchOutcome> outcome,
                        const SwitchParams& s) {
  validate_selector(protocol, path, outcome);
  return haar_average([&](const InputParams& q) {
    return run({protocol, path, outcome, s, q}).fidelity;
  });
}

double classical_mixture_fidelity(int protocol, const SwitchParams& s) {
  if (protocol != 1 && protocol != 2) {
    throw std::invalid_argument("protocol must be 1 or 2");
  }
  // Path-1 average fidelities of the two pure branches, cached; the mixture
  // is their convex combination with the switch populations.
  struct BranchAverages {
    double on, off;
  };
  static const BranchAverages cache[2] = {
      {ChannelResponse(1, 1, std::nullopt).average_fidelity(SwitchParams(0.0, 0.0)),
       ChannelResponse(1, 1, std::nullopt)
           .average_fidelity(SwitchParams(3.141592653589793, 0.0))},
      {ChannelResponse(2, 1, std::nullopt).average_fidelity(SwitchParams(0.0, 0.0)),
       ChannelResponse(2, 1, std::nullopt)
           .average_fidelity(SwitchParams(3.141592653589793, 0.0))},
  };
  const BranchAverages& branches = cache[protocol - 1];
  const double on_weight = std::norm(s.alpha());
  const double off_weight = std::norm(s.beta());
  return on_weight * branches.on + off_weight * branches.off;
}

ChannelResponse::ChannelResponse(int protocol, int path, std::optional<SwitchOutcome> outcome)
    : ChannelResponse(protocol, path, outcome, standard_kraus()) {}

ChannelResponse::ChannelResponse(int protocol, int path, std::optional<SwitchOutcome> outcome,
                                 const KrausBundle& kraus) {
  validate_selector(protocol, path, outcome);
  const KrausSet& ops = protocol_ops(kraus, protocol);
  const ComplexMatrix resource = projector(bell(BellState::PsiMinus));

  for (int k = 0; k < 2; ++k) {
    for (int l = 0; l < 2; ++l) {
      // Matrix unit |k⟩⟨l| on the switch.
      ComplexMatrix e_switch(2, 2);
      e_switch(k, l) = 1.0;
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          ComplexMatrix e_input(2, 2);
          e_input(i, j) = 1.0;

          const ComplexMatrix joint = tensor(e_switch, tensor(e_input, resource));
          const ComplexMatrix evolved = apply_kraus(joint, ops.ops());

          ComplexMatrix alice_bob;
          if (path == 1) {
            alice_bob = partial_trace(evolved, SubsystemLayout::switch_alice_bob(),
                                      {Qubit::APrime, Qubit::A, Qubit::B});
          } else {
            // Unnormalized conditional block; normalization happens at
            // evaluation time, where the trace is the outcome probability.
            static const ComplexMatrix h_on_switch = tensor(hadamard(), identity(8));
            const ComplexMatrix rotated = h_on_switch * evolved * h_on_switch.dagger();
            const std::size_t offset = (*outcome == SwitchOutcome::On) ? 0 : 8;
            alice_bob = ComplexMatrix(8, 8);
            for (std::size_t r = 0; r < 8; ++r) {
              for (std::size_t c = 0; c < 8; ++c) {
                alice_bob(r, c) = rotated(offset + r, offset + c);
              }
            }
          }

          const ComplexMatrix bob =
              partial_trace(alice_bob, SubsystemLayout::alice_bob(), {Qubit::B});
          Mat2& slot = base_[k * 2 + l][i * 2 + j];
          for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) slot.m[r][c] = bob(r, c);
          }
        }
      }
    }
  }
}

std::array<ChannelResponse::Mat2, 4> ChannelResponse::input_response(
    const SwitchParams& s) const {
  const cdouble amp[2] = {s.alpha(), s.beta()};
  std::array<Mat2, 4> c{};
  for (int k = 0; k < 2; ++k) {
    for (int l = 0; l < 2; ++l) {
      const cdouble weight = amp[k] * std::conj(amp[l]);
      if (weight == cdouble(0.0)) continue;
      const auto& block = base_[k * 2 + l];
      for (int t = 0; t < 4; ++t) {
        for (int r = 0; r < 2; ++r) {
          for (int col = 0; col < 2; ++col) {
            c[t].m[r][col] += weight * block[t].m[r][col];
          }
        }
      }
    }
  }
  return c;
}

RunResult ChannelResponse::evaluate(const SwitchParams& s, const InputParams& q) const {
  const std::array<Mat2, 4> c = input_response(s);
  const cdouble amp[2] = {q.a(), q.b()};

  ComplexMatrix sigma(2, 2);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const cdouble qij = amp[i] * std::conj(amp[j]);
      for (int r = 0; r < 2; ++r) {
        for (int col = 0; col < 2; ++col) {
          sigma(r, col) += qij * c[i * 2 + j].m[r][col];
        }
      }
    }
  }

  const double probability = sigma.trace().real();
  if (probability < 1e-14) {
    throw std::runtime_error("ChannelResponse: outcome probability below 1e-14");
  }
  sigma *= cdouble(1.0 / probability);

  const double fid = fidelity_to_pure(sigma, input_qubit(q));
  return {std::move(sigma), fid, probability};
}

double ChannelResponse::fidelity(const SwitchParams& s, const InputParams& q) const {
  return evaluate(s, q).fidelity;
}

double ChannelResponse::probability(const SwitchParams& s, const InputParams& q) const {
  return evaluate(s, q).probability;
}

double ChannelResponse::average_fidelity(const SwitchParams& s) const {
  const std::array<Mat2, 4> c = input_response(s);

  // Flatten the response for the quadrature loop: the fidelity numerator is
  // Σ C[(ij),(ab)]·Q_ij·Q_ba and the denominator Σ Tr(C_ij)·Q_ij.
  double c_re[16], c_im[16], t_re[4], t_im[4];
  for (int ij = 0; ij < 4; ++ij) {
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        const cdouble z = c[ij].m[a][b];
        c_re[ij * 4 + a * 2 + b] = z.real();
        c_im[ij * 4 + a * 2 + b] = z.imag();
      }
    }
    const cdouble tr = c[ij].m[0][0] + c[ij].m[1][1];
    t_re[ij] = tr.real();
    t_im[ij] = tr.imag();
  }

  double acc = 0.0;
  for (const auto& node : HaarMoments::instance().nodes) {
    double num = 0.0;
    for (int t = 0; t < 16; ++t) {
      num += c_re[t] * node.p_re[t] - c_im[t] * node.p_im[t];
    }
    double den = 0.0;
    for (int t = 0; t < 4; ++t) {
      den += t_re[t] * node.q_re[t] - t_im[t] * node.q_im[t];
    }
    acc += node.weight * (num / den);
  }
  return acc;
}

}  // namespace switchtel
