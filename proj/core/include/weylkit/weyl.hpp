#pragma once

#include <optional>

#include "weylkit/boundary.hpp"
#include "weylkit/propagator.hpp"
#include "weylkit/sampler.hpp"

namespace weylkit {

// System, boundary operator at a and the decomposing triplet built from them.
struct Problem {
  SymmetricSystem sys;
  BoundaryOperatorU U;
  EndpointForm form;
  DecomposingTriplet triplet;
  double mode_tol = 1e-6;

  static Problem make(SymmetricSystem sys, const Mat& U);
};

enum class TauKind { Tau0, Truncated, General };

// Lower half-plane pair (D0(λ), D1(λ)): D0 acts on K = hat2 ⊕ rest, D1 maps
// 𝒞_b into K. The upper half-plane pair is derived from it.
struct BoundaryParameter {
  TauKind kind = TauKind::Tau0;
  int K = 0;
  int q = 0;
  int c = 0;
  int hb = 0;
  LambdaSampler D0_user, D1_user;

  Mat D0(cd lambda) const;
  Mat D1(cd lambda) const;
  // Rows [C0 C1] describing τ₊(λ) for Im λ > 0; C0 acts on K, C1 on 𝒞_b.
  Mat C(cd lambda) const;
};

BoundaryParameter make_tau(const DecomposingTriplet& t, TauKind kind, LambdaSampler D0 = {}, LambdaSampler D1 = {});
// Constant pair whose ℂ₋ condition is K ξ = 0 on the endpoint data ξ
// (EqualIndices with a regular endpoint, K of full row rank c).
BoundaryParameter tau_from_endpoint_rows(const DecomposingTriplet& t, const Mat& K);
// max |∂f/∂λ̄| over the entries, by central differences.
double holomorphy_defect(const LambdaSampler& f, cd lambda, double h = 1e-5);

struct WeylBlocks {
  Mat M1, N1, N2, M2, M3, M4;
};

struct WeylData {
  cd lambda{};
  bool upper = false;
  SolutionBasis basis;
  Mat Z;                 // basis coefficients of the solution maps
  Mat c_v0, c_u;         // basis coefficients of v0 and u±
  Mat m0, Phi, Psi, Mdot;
  Mat M;                 // M₊ (dim 𝓗₀ × dim 𝓗₁) or M₋ (dim 𝓗₁ × dim 𝓗₀)
  WeylBlocks blocks;
  double z_residual = 0.0;
  double block_residual = 0.0;
};

Mat solve_Z(const Problem& p, const SolutionBasis& basis, cd lambda, double* residual = nullptr);
// Base solutions, X± blocks and Weyl blocks; throws ConsistencyError when
// the X blocks and the Weyl-block identities disagree beyond 1e-7.
WeylData weyl_data(const Problem& p, cd lambda, double block_tol = 1e-7);
// Residuals of m0*(λ̄) = m0, Φ₊*(λ̄) = Ψ₋, Ψ₊*(λ̄) = Φ₋, Ṁ₊*(λ̄) = Ṁ₋.
double symmetry_residual(const WeylData& lower, const WeylData& upper);
// Max residual of the boundary conditions satisfied by v0 and u±.
double base_condition_residual(const Problem& p, const WeylData& w);

struct MTau {
  Mat m;            // resolvent-form value
  Mat m_direct;     // from the boundary conditions of v_τ
  Mat c_vtau;       // basis coefficients of v_τ
  double agreement = 0.0;
  double condition_residual = 0.0;
};

MTau m_tau(const Problem& p, const BoundaryParameter& tau, const WeylData& w);
MTau m_tau(const Problem& p, const BoundaryParameter& tau, cd lambda);
SolutionBasis v_tau(const WeylData& w, const MTau& mt);
// min eigenvalue of (Im λ)⁻¹ Im m_τ − ∫ v_τ* Δ v_τ.
double lower_bound_margin(const Problem& p, const WeylData& w, const MTau& mt);
// Lower-left block norm and ||lower-right + (i/2)I|| of m_τ on ℂ₋.
std::pair<double, double> triangularity(const Problem& p, const Mat& m);

// m-function of the maximal symmetric relation when ν_{b+} = 0.
Mat minimal_m(const Problem& p, cd lambda);
// |m(μ) − m(λ)* − (μ − λ̄)∫ v*(λ) Δ v(μ)| for ν_{b±} = 0.
double displacement_residual(const Problem& p, cd lambda, cd mu);

}  // namespace weylkit
