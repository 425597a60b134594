#ifndef BERGLAB_GROUPS_HPP
#define BERGLAB_GROUPS_HPP

#include <Eigen/Dense>

#include "berglab/algebra.hpp"
#include "berglab/domains.hpp"
#include "berglab/maps.hpp"

namespace berglab {

enum class GroupKind { SymmetricGroup, Cyclic };

// Finite pseudoreflection group given by explicit unitary matrices, together
// with a homogeneous system of parameters and the canonical relative
// invariant f_mu (= prod of reflecting-hyperplane forms L_i^{m_i-1}, equal to
// the jacobian of the hsop map up to a scalar).
class ReflectionGroup {
  public:
    static ReflectionGroup symmetric(int d); // permutation matrices on C^d
    static ReflectionGroup cyclic(int m);    // {omega^k} acting on C, omega = e^{2 pi i/m}

    GroupKind kind() const { return kind_; }
    int dimension() const { return dim_; }
    std::size_t order() const { return elements_.size(); }
    const std::vector<Eigen::MatrixXcd>& elements() const { return elements_; }
    // chi_mu(rho) = det^{-1}(rho)
    Cx chi_mu(std::size_t idx) const { return chi_[idx]; }
    const std::vector<Polynomial>& hsop() const { return hsop_; }
    const Polynomial& f_mu() const { return f_mu_; }
    std::string name() const;

    // the polynomial map assembled from the hsop (symmetrization for S_d,
    // z^m for the cyclic group); its multiplicity is the group order
    ProperMap theta_map() const;
    Domain natural_domain() const; // D^d for S_d, D for cyclic

  private:
    ReflectionGroup() = default;
    GroupKind kind_{};
    int dim_ = 0;
    int cyclic_order_ = 0;
    std::vector<Eigen::MatrixXcd> elements_;
    CVec chi_;
    std::vector<Polynomial> hsop_;
    Polynomial f_mu_{1};
};

// f(rho z) as a polynomial, exact on coefficients
Polynomial group_act(const Polynomial& f, const Eigen::MatrixXcd& rho);

// true iff f(rho z) = chi_mu(rho) f(z) on coefficients for every rho
bool relative_invariant_check(const Polynomial& f, const ReflectionGroup& g, double tol = 1e-12);

// P_mu f = (1/|G|) sum_rho chi_mu(rho^{-1}) f o rho^{-1}; with the matrices
// acting by substitution this reads (1/|G|) sum_rho det(rho) f(rho z).
Polynomial project_group(const ReflectionGroup& g, const Polynomial& f);

// exact polynomial quotient f / f_mu; requires relative invariance, throws
// NotDivisible when the remainder exceeds 1e-10 * |f|.
Polynomial divide_by_fmu(const Polynomial& f, const ReflectionGroup& g);

struct EquivReport {
    int cap = 0;
    int dim_gamma_span = 0;      // span of Gamma_theta images of the target basis
    int dim_projection_span = 0; // span of P_mu applied to monomials
    double principal_angle = 0;  // largest principal angle, radians
    bool pass = false;
};

// Largest principal angle between ran Gamma_theta and ran P_mu on truncated
// spaces, measured in the quadrature inner product. Passes below 1e-6.
EquivReport verify_equiv(const ReflectionGroup& g, const Domain& domain, int cap);

} // namespace berglab

#endif
