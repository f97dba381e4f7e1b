#pragma once

#include <functional>
#include <vector>

#include "switchtel/complex_matrix.hpp"
#include "switchtel/layout.hpp"
#include "switchtel/parameters.hpp"

namespace switchtel {

/// Kronecker product a ⊗ b.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

/// |v⟩⟨v| for a column vector v (no normalization applied).
ComplexMatrix projector(const ComplexMatrix& v);

/// Reduced density matrix on `keep`, ordered as in `layout`. Throws on a
/// layout/dimension mismatch or when `keep` is not a subset of the layout.
ComplexMatrix partial_trace(const ComplexMatrix& rho, const SubsystemLayout& layout,
                            const std::vector<Qubit>& keep);

/// ∑_i E_i ρ E_i†. Trace is preserved exactly when ∑ E_i†E_i = I.
ComplexMatrix apply_kraus(const ComplexMatrix& rho, const std::vector<ComplexMatrix>& ops);

/// Overlap fidelity ⟨ψ|ρ|ψ⟩ of a density matrix to a pure state (not its
/// square root). Throws if ψ deviates from unit norm by more than 1e-9.
double fidelity_to_pure(const ComplexMatrix& rho, const ComplexMatrix& psi);

/// Gauss–Legendre nodes and weights on (-1, 1).
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

struct HaarNode {
  double theta_prime;
  double phi_prime;
  double weight;
};

/// Fixed product rule for averaging over the input-state Bloch sphere:
/// 64-node Gauss–Legendre in cos θ' times a 128-node trapezoid in φ'.
/// Weights sum to 1, so ∑ w·f is directly the spherical mean of f.
const std::vector<HaarNode>& haar_nodes();

/// Uniform Bloch-sphere average of f. Throws if f is non-finite at a node.
double haar_average(const std::function<double(const InputParams&)>& f);

/// Eigenvalues of a Hermitian matrix (cyclic Jacobi), ascending order.
std::vector<double> hermitian_eigenvalues(ComplexMatrix a);

struct DensityDiagnostics {
  double hermiticity_error;  // ‖ρ − ρ†‖_max
  double trace_error;        // |Tr ρ − 1|
  double min_eigenvalue;

  bool acceptable(double herm_tol = 1e-12, double trace_tol = 1e-12,
                  double eigen_floor = -1e-10) const {
    return hermiticity_error <= herm_tol && trace_error <= trace_tol &&
           min_eigenvalue >= eigen_floor;
  }
};

/// Hermiticity, trace and positivity diagnostics of a square matrix.
DensityDiagnostics density_diagnostics(const ComplexMatrix& rho);

/// True when v is a column vector of unit 2-norm within `tol`.
bool is_unit_state_vector(const ComplexMatrix& v, double tol = 1e-12);

}  // namespace switchtel
