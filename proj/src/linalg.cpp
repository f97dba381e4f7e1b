#include "switchtel/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace switchtel {

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ra = 0; ra < a.rows(); ++ra) {
    for (std::size_t ca = 0; ca < a.cols(); ++ca) {
      const cdouble f = a(ra, ca);
      if (f == cdouble(0.0)) continue;
      for (std::size_t rb = 0; rb < b.rows(); ++rb) {
        for (std::size_t cb = 0; cb < b.cols(); ++cb) {
          out(ra * b.rows() + rb, ca * b.cols() + cb) = f * b(rb, cb);
        }
      }
    }
  }
  return out;
}

ComplexMatrix projector(const ComplexMatrix& v) {
  if (!v.is_column()) throw std::invalid_argument("projector: expected a column vector");
  const std::size_t n = v.rows();
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out(i, j) = v(i, 0) * std::conj(v(j, 0));
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, const SubsystemLayout& layout,
                            const std::vector<Qubit>& keep) {
  if (!rho.is_square() || rho.rows() != layout.dimension()) {
    throw std::invalid_argument("partial_trace: matrix does not match layout dimension");
  }
  for (Qubit q : keep) {
    if (!layout.contains(q)) {
      throw std::invalid_argument("partial_trace: kept label not in layout");
    }
  }

  const std::size_t n = layout.count();
  std::vector<std::size_t> kept_positions;  // in layout order
  std::vector<std::size_t> traced_positions;
  for (std::size_t pos = 0; pos < n; ++pos) {
    const bool is_kept =
        std::find(keep.begin(), keep.end(), layout.labels()[pos]) != keep.end();
    (is_kept ? kept_positions : traced_positions).push_back(pos);
  }

  const std::size_t kept_count = kept_positions.size();
  const std::size_t traced_count = traced_positions.size();
  const std::size_t out_dim = std::size_t{1} << kept_count;

  // Bit `pos` of a full index refers to factor `pos` counted from the left,
  // i.e. the most significant bit is the first tensor factor.
  const auto full_index = [&](std::size_t kept_bits, std::size_t traced_bits) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < kept_count; ++k) {
      const std::size_t bit = (kept_bits >> (kept_count - 1 - k)) & 1u;
      idx |= bit << (n - 1 - kept_positions[k]);
    }
    for (std::size_t t = 0; t < traced_count; ++t) {
      const std::size_t bit = (traced_bits >> (traced_count - 1 - t)) & 1u;
      idx |= bit << (n - 1 - traced_positions[t]);
    }
    return idx;
  };

  ComplexMatrix out(out_dim, out_dim);
  const std::size_t traced_dim = std::size_t{1} << traced_count;
  for (std::size_t i = 0; i < out_dim; ++i) {
    for (std::size_t j = 0; j < out_dim; ++j) {
      cdouble acc = 0.0;
      for (std::size_t t = 0; t < traced_dim; ++t) {
        acc += rho(full_index(i, t), full_index(j, t));
      }
      out(i, j) = acc;
    }
  }
  return out;
}

ComplexMatrix apply_kraus(const ComplexMatrix& rho, const std::vector<ComplexMatrix>& ops) {
  if (!rho.is_square()) throw std::invalid_argument("apply_kraus: rho must be square");
  ComplexMatrix out(rho.rows(), rho.cols());
  for (const ComplexMatrix& e : ops) {
    if (!e.is_square() || e.rows() != rho.rows()) {
      throw std::invalid_argument("apply_kraus: operator dimension mismatch");
    }
    out += e * rho * e.dagger();
  }
  return out;
}

double fidelity_to_pure(const ComplexMatrix& rho, const ComplexMatrix& psi) {
  if (!psi.is_column() || !rho.is_square() || rho.rows() != psi.rows()) {
    throw std::invalid_argument("fidelity_to_pure: dimension mismatch");
  }
  if (std::abs(psi.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("fidelity_to_pure: psi is not normalized");
  }
  cdouble acc = 0.0;
  for (std::size_t i = 0; i < rho.rows(); ++i) {
    for (std::size_t j = 0; j < rho.cols(); ++j) {
      acc += std::conj(psi(i, 0)) * rho(i, j) * psi(j, 0);
    }
  }
  return acc.real();
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Newton iteration from the Chebyshev-based initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

const std::vector<HaarNode>& haar_nodes() {
  static const std::vector<HaarNode> table = [] {
    constexpr int kCosNodes = 64;
    constexpr int kPhiNodes = 128;
    std::vector<double> u, w;
    gauss_legendre(kCosNodes, u, w);

    // Closed trapezoid on [0, 2π]; the half weights at the matching
    // endpoints keep the rule exact for periodic integrands.
    const double h = 2.0 * std::numbers::pi / (kPhiNodes - 1);
    std::vector<HaarNode> nodes;
    nodes.reserve(kCosNodes * kPhiNodes);
    for (int i = 0; i < kCosNodes; ++i) {
      const double theta_prime = std::acos(u[i]);
      for (int j = 0; j < kPhiNodes; ++j) {
        const double phi_prime = h * j;
        double wj = (j == 0 || j == kPhiNodes - 1) ? h / 2.0 : h;
        // (1/4π) ∫∫ f d(cosθ') dφ' with Σ weights = 1.
        nodes.push_back({theta_prime, phi_prime, w[i] * wj / (4.0 * std::numbers::pi)});
      }
    }
    return nodes;
  }();
  return table;
}

double haar_average(const std::function<double(const InputParams&)>& f) {
  double acc = 0.0;
  for (const HaarNode& node : haar_nodes()) {
    const double value = f(InputParams(node.theta_prime, node.phi_prime));
    if (!std::isfinite(value)) {
      throw std::runtime_error("haar_average: integrand is not finite at a node");
    }
    acc += node.weight * value;
  }
  return acc;
}

std::vector<double> hermitian_eigenvalues(ComplexMatrix a) {
  if (!a.is_square()) throw std::invalid_argument("hermitian_eigenvalues: not square");
  const std::size_t n = a.rows();

  // Cyclic Jacobi with complex rotations; adequate for the tiny Hermitian
  // matrices used by the density checks.
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
    }
    if (off < 1e-14) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cdouble apq = a(p, q);
        if (std::abs(apq) < 1e-300) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double phase = std::arg(apq);
        const double two_theta = std::atan2(2.0 * std::abs(apq), app - aqq);
        const double c = std::cos(two_theta / 2.0);
        const cdouble s = std::polar(std::sin(two_theta / 2.0), phase);

        // a ← J† a J with J = [[c, -s], [conj(s), c]] acting on (p, q).
        for (std::size_t i = 0; i < n; ++i) {
          const cdouble aip = a(i, p), aiq = a(i, q);
          a(i, p) = c * aip + std::conj(s) * aiq;
          a(i, q) = -s * aip + c * aiq;
        }
        for (std::size_t j = 0; j < n; ++j) {
          const cdouble apj = a(p, j), aqj = a(q, j);
          a(p, j) = c * apj + s * aqj;
          a(q, j) = -std::conj(s) * apj + c * aqj;
        }
      }
    }
  }

  std::vector<double> eigs(n);
  for (std::size_t i = 0; i < n; ++i) eigs[i] = a(i, i).real();
  std::sort(eigs.begin(), eigs.end());
  return eigs;
}

DensityDiagnostics density_diagnostics(const ComplexMatrix& rho) {
  if (!rho.is_square()) throw std::invalid_argument("density_diagnostics: not square");
  DensityDiagnostics d{};
  d.hermiticity_error = (rho - rho.dagger()).max_abs();
  d.trace_error = std::abs(rho.trace() - cdouble(1.0));

  // Symmetrize before the eigenvalue pass so the diagnostics stay meaningful
  // for matrices with roundoff-level asymmetry.
  ComplexMatrix h = rho;
  h += rho.dagger();
  h *= 0.5;
  const std::vector<double> eigs = hermitian_eigenvalues(h);
  d.min_eigenvalue = eigs.front();
  return d;
}

bool is_unit_state_vector(const ComplexMatrix& v, double tol) {
  return v.is_column() && std::abs(v.norm() - 1.0) <= tol;
}

}  // namespace switchtel
