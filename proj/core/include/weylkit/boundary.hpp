#pragma once

#include <random>
#include <string>

#include "weylkit/blockspace.hpp"
#include "weylkit/system.hpp"

namespace weylkit {

struct RelationResiduals {
  double hat_hat = 0.0;  // ||u1 J-row products|| : i u2 u2* − u1 u3* + u3 u1* − iI
  double one_hat = 0.0;  // i u5 u2* − u4 u3* + u6 u1*
  double one_one = 0.0;  // i u5 u5* + u6 u4* − u4 u6*
  double max() const { return std::max({hat_hat, one_hat, one_one}); }
};

// U : ℍ → Ĥ ⊕ H given by the rows [u1 u2 u3; u4 u5 u6]; Ut is the
// J-unitary completion [u7 u8 u9; u1 u2 u3; u4 u5 u6].
struct BoundaryOperatorU {
  BlockSignature sig;
  Mat U;
  Mat Ut;
  RelationResiduals residuals;
  double extension_residual = 0.0;

  // Block u_k, k = 1..9 (u7..u9 require the extension).
  Mat block(int k) const;
  bool extended() const { return Ut.size() > 0; }
};

RelationResiduals relation_residuals(const BlockSignature& sig, const Mat& U);
BoundaryOperatorU validate_U(const BlockSignature& sig, const Mat& U, double tol = 1e-12);
BoundaryOperatorU extend_U(BoundaryOperatorU u, double tol = 1e-12);
BoundaryOperatorU make_U(const BlockSignature& sig, const Mat& U);
// Rows [0 I 0; cos B 0 sin B] for a Hermitian ν₊×ν₊ matrix B.
Mat separated_U(const BlockSignature& sig, const Mat& B);

struct GammaA {
  Vec g0, ghat, g1;
};

GammaA gamma_a(const BoundaryOperatorU& U, const Vec& ya);
// (J y(a), z(a)) + (Γ1a y, Γ0a z) − (Γ0a y, Γ1a z) − i(Γ̂a y, Γ̂a z)
cd gamma_a_identity(const BoundaryOperatorU& U, const Vec& y, const Vec& z);
// Initial values at a of φ_U and ψ (n × ν₋).
Mat phi_initial(const BoundaryOperatorU& U);
Mat psi_initial(const BoundaryOperatorU& U);

// Endpoint data at b is a vector ξ of length data_dim (y(b) or y(t_cut);
// empty for a tail without boundary values). The form is
// [y,z]_b = i ξ_z* Omega ξ_y.
struct EndpointForm {
  int nu_b_plus = 0;
  int nu_b_minus = 0;
  int dim_C = 0;
  int dim_Hb = 0;
  int sign = 0;
  int data_dim = 0;
  Mat Omega;
  Mat G0b, Ghb, G1b;

  cd bracket(const Vec& xi_y, const Vec& xi_z) const;
};

EndpointForm endpoint_form_from_omega(const Mat& Omega, double tol = 1e-10);
EndpointForm build_endpoint_form(const SymmetricSystem& sys);
// max |[y,z]_b − RHS| over pairs of basis vectors of the endpoint data.
double endpoint_identity_residual(const EndpointForm& form);

enum class CaseTag { Case1, Case2, EqualIndices };
std::string case_name(CaseTag c);
CaseTag classify_case(const BlockSignature& sig, const EndpointForm& form);

// Γ-maps act on joint boundary data β = (y(a); ξ) of length n + data_dim.
// 𝓗₀ coordinates: [principal | hat2 | rest] where principal = H ⊕ Ĥ₁ (Case 1)
// or H (Case 2), hat2 = Ĥ₂ (Case 1) or Ĥ (Case 2), rest = 𝒞_b (Case 1) or
// 𝒞_b ⊕ Ĥ_b (Case 2). 𝓗₁ = [principal | 𝒞_b].
struct DecomposingTriplet {
  CaseTag tag = CaseTag::EqualIndices;
  BlockSignature sig;
  EndpointForm form;
  BoundaryOperatorU U;
  int n = 0, nb = 0;
  int p1 = 0;     // principal block dimension
  int q = 0;      // hat2 dimension
  int h1 = 0;     // dim Ĥ₁ (Case 1 / EqualIndices)
  int c = 0;      // dim 𝒞_b
  int hb = 0;     // dim Ĥ_b outside Ĥ₁ pairing (Case 2)
  int dim_H0 = 0, dim_H1 = 0, dim_H2 = 0;

  Mat G0a, Gha, G1a, G0b, Ghb, G1b;  // rows on β
  Mat Gamma0, Gamma1;
  Mat P2;  // dim_H0 square projector onto 𝓗₂
  Mat E1;  // embedding 𝓗₁ → 𝓗₀

  int n_plus() const { return dim_H1; }
  int n_minus() const { return dim_H0; }
  // Rows of Γ̂a for the hat2 block (Ĥ₂ in Case 1, all of Ĥ in Case 2).
  Mat Gha2() const;
  Mat Gha1() const;
  // b-rows entering τ: Γ0b (Case 1) or Γ̃0b = (Γ0b; Γ̂b) (Case 2).
  Mat Gbtilde() const;
  // Dimension of the τ domain K = hat2 ⊕ rest.
  int tau_dim() const { return dim_H0 - p1; }
  Mat joint(const Mat& ya, const Mat& xi) const;
};

DecomposingTriplet build_triplet(const SymmetricSystem& sys, const BoundaryOperatorU& U, const EndpointForm& form,
                                 CaseTag tag);
// Max residual of the abstract Green identity against the Lagrange form
// [y,z]_b − (J y(a), z(a)) on random boundary data.
double green_identity_residual(const DecomposingTriplet& t, int pairs, std::mt19937_64& rng);
bool triplet_surjective(const DecomposingTriplet& t);

}  // namespace weylkit
