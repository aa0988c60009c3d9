#pragma once

#include "bgg/bgg.hpp"
#include "bgg/diagram.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <vector>

namespace bgg {

/// Exact polynomial in n variables.
class Polynomial {
 public:
  using Terms = std::map<std::vector<int>, Rational>;

  explicit Polynomial(int n = 0) : n_(n) {}
  static Polynomial constant(int n, const Rational& c);
  static Polynomial coordinate(int n, int axis);
  static Polynomial monomial(const std::vector<int>& exps, const Rational& c);

  int vars() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const;
  Rational coeff(const std::vector<int>& exps) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(const Rational& s) const;
  bool operator==(const Polynomial& o) const { return n_ == o.n_ && terms_ == o.terms_; }

  Polynomial diff(int axis) const;
  /// Exact integral over the unit cube [0,1]^n.
  Rational integrate_cube() const;

  void add_term(const std::vector<int>& exps, const Rational& c);

 private:
  int n_;
  Terms terms_;
};

/// A field with polynomial components.
using Field = std::vector<Polynomial>;
/// Square matrix of polynomials, M[k][l].
using MatrixField = std::vector<Field>;

/// Unit-cube L2 inner product of two form blocks with the same n, i and value
/// dimension: entry (a_k, b_m) is the integral of the product of coefficient
/// monomials when the (form, value) components agree, else zero.
SparseMat cube_gram(const FormBlock& a, const FormBlock& b);

/// Packs per-row component fields into Z^i, one vector per weight 0..wmax.
/// rows[j] has forms(i) * dim V_j components, ordered (form, value). Throws
/// std::out_of_range when a component needs a weight above wmax.
std::vector<Vector> to_columns(const BuiltDiagram& bd, int i, const std::vector<Field>& rows);
/// Inverse of to_columns: sums the homogeneous pieces back into fields.
std::vector<Field> from_columns(const BuiltDiagram& bd, int i, const std::vector<Vector>& per_weight);
/// Applies a per-weight column operator (Z^i -> Z^{i+1}) to per-weight vectors.
std::vector<Vector> apply_columns(const std::vector<SparseMat>& per_weight, const std::vector<Vector>& x);

struct EnergyParams {
  Rational mu = 1, lambda = 1, mu_c = 1, alpha = 1, beta = 1, gamma = 1;
};

/// Unit-cube L2 norm squared, summed over components.
Rational sq_norm(const Field& f);
MatrixField grad(const Field& u);
Field curl(const Field& u);
Polynomial div(const Field& u);
MatrixField mskw(const Field& w);  // 3D: vector -> skew matrix; 2D: scalar (w[0]) -> skew matrix
MatrixField sym(const MatrixField& m);
MatrixField dev(const MatrixField& m);
/// 2 vskw of the skew part: (m32 - m23, m13 - m31, m21 - m12) in 3D, m21 - m12 in 2D.
Field two_vskw(const MatrixField& m);
Polynomial trace(const MatrixField& m);
Field flatten(const MatrixField& m);
MatrixField operator+(const MatrixField& a, const MatrixField& b);
MatrixField operator-(const MatrixField& a, const MatrixField& b);

/// mu |sym M|^2 + (mu_c/2) |2 vskw M|^2 + (lambda/2) (tr M)^2.
Rational strain_metric(const MatrixField& m, const EnergyParams& p);
/// ((gamma+beta)/2) |sym G|^2 + ((gamma-beta)/4) |2 vskw G|^2 + (alpha/2) (tr G)^2.
Rational curvature_metric(const MatrixField& g, const EnergyParams& p);

/// Cosserat energy of (u, omega) assembled term by term from the fields.
Rational cosserat_energy(const Field& u, const Field& omega, const EnergyParams& p);
/// The same energy as the C-weighted norm of d_V^0 (u, omega) of the
/// elasticity diagram `bd`, with psi_12 = -omega_3, psi_13 = omega_2, psi_23 = -omega_1.
Rational cosserat_energy_dv(const BuiltDiagram& bd, const Field& u, const Field& omega, const EnergyParams& p);

/// alpha |dev grad phi + mskw u|^2 + mu |sym grad u|^2 + (lambda/2) |div u|^2.
Rational generalization1(const Field& u, const Field& phi, const Rational& alpha, const EnergyParams& p);

/// Block metric of the generalized energies: C1 = strain_metric, C3 = c3 |.|^2,
/// and C2 = (a2/2) |vector part|^2 plus curvature_metric on the 3D matrix part,
/// or (a2/2) |first vector|^2 + (b2/2) |second vector|^2 in 2D.
struct GeneralizedParams {
  EnergyParams c;
  Rational a2 = 1, b2 = 1, c3 = 1;
};

/// C1(grad u - iota sigma + mskw omega) + C2(grad sigma - phi, grad omega + mskw phi) + C3(grad phi).
Rational generalization2(const Field& u, const Polynomial& sigma, const Field& omega, const Field& phi,
                         const GeneralizedParams& p);
/// The same via d_V^0 of conf-deformation-3d; rows (u), (omega, sigma), (-phi).
Rational generalization2_dv(const BuiltDiagram& bd, const Field& u, const Polynomial& sigma, const Field& omega,
                            const Field& phi, const GeneralizedParams& p);

/// 2D plate analog: C1(grad u - iota sigma - mskw omega) + C2(grad sigma - phi,
/// grad omega - perp phi) + C3(grad phi), perp(a, b) = (-b, a).
Rational plate_generalization(const Field& u, const Polynomial& sigma, const Polynomial& omega, const Field& phi,
                              const GeneralizedParams& p);
/// The same via d_V^0 of mobius-2d; rows (u), (sigma, omega), (phi).
Rational plate_generalization_dv(const BuiltDiagram& bd, const Field& u, const Polynomial& sigma,
                                 const Polynomial& omega, const Field& phi, const GeneralizedParams& p);

/// Field with `comps` components of degree <= `degree` and random rational
/// coefficients p/q, |p| <= 9, 1 <= q <= 5.
Field random_field(std::mt19937_64& rng, int n, int comps, int degree);

struct KornRow {
  int r = 0;
  std::size_t dim = 0;              // vector fields of degree <= r
  std::size_t kernel_dim = 0;       // ker D^0
  std::size_t dev_deff_kernel = 0;  // ker dev sym grad alone
  double sigma_min = 0;             // sqrt of the least eigenvalue of (A, M) off the kernel
};

/// For r = r_min..r_max on the unit square: D^0 of mobius-2d on vector fields
/// of degree <= r, its exact kernel, the kernel of dev sym grad (assembled
/// directly), and the smallest generalized singular value of D^0 with respect
/// to the unit-square L2 norms on the L2-orthogonal complement of the kernel.
std::vector<KornRow> korn2d_experiment(int r_min, int r_max);

/// dev sym grad on 2D vector fields of degree p, output as 2x2 matrices of
/// degree p - 1 in (k, l) row-major component order.
SparseMat dev_deff_2d(int p);

}  // namespace bgg
