#ifndef BERGLAB_SPACES_HPP
#define BERGLAB_SPACES_HPP

#include <Eigen/Dense>

#include <functional>
#include <memory>

#include "berglab/algebra.hpp"
#include "berglab/domains.hpp"
#include "berglab/maps.hpp"

namespace berglab {

// black-box holomorphic scalar function on a domain
using HoloFn = std::function<Cx(std::span<const Cx>)>;

HoloFn to_fn(const Polynomial& p);
HoloFn to_fn(const RationalFunction& r);

// ---------------------------------------------------------------------------
// Truncated orthonormal basis of the Bergman space. Reinhardt domains carry
// normalized monomials; the symmetrized polydisc carries the polynomials
// h_alpha with (h_alpha o s) J_s / sqrt(d!) equal to the anti-symmetrized
// monomial basis of A^2_anti(D^d). Labels are graded-lexicographic
// multi-indices (partitions alpha_1 >= ... >= alpha_d for G_d).
// ---------------------------------------------------------------------------
struct BasisSet {
    Domain domain = Domain::unit_disc();
    int degree_cap = 0;
    std::vector<MultiIndex> labels;
    std::vector<Polynomial> elements;

    std::size_t size() const { return elements.size(); }
};

BasisSet onb(const Domain& domain, int degree_cap);

// the anti-symmetrized monomial  sqrt(prod(lambda_j+1)/d!) * det((z_i^{lambda_j}))
Polynomial antisymmetrized_monomial(const MultiIndex& lambda_strict_decreasing);

// decreasing multi-indices with |alpha| <= cap, graded-lex order
std::vector<MultiIndex> partitions_up_to(int d, int cap);

// ---------------------------------------------------------------------------
// Gamma_f psi = (1/sqrt m) (psi o f) J_f. The rational form is available
// whenever the map has rational components; the callable always is.
// ---------------------------------------------------------------------------
struct GammaImage {
    HoloFn fn;
    std::optional<RationalFunction> rational;
    std::optional<Polynomial> polynomial; // set when the result is polynomial
};

GammaImage gamma_apply(const ProperMap& f, const Polynomial& psi);
HoloFn gamma_apply(const ProperMap& f, const HoloFn& psi);

// Gamma_f applied to the target orthonormal basis, |alpha| <= cap
std::vector<GammaImage> gamma_basis(const ProperMap& f, int cap);

// ---------------------------------------------------------------------------
// Gram matrices: G_{jk} = int f_j conj(f_k) dmu by quadrature, hermitized.
// ---------------------------------------------------------------------------
Eigen::MatrixXcd gram(const std::vector<HoloFn>& fns, const Domain& domain, int level);
// polynomial families share per-node power tables, much faster on tensor rules
Eigen::MatrixXcd gram(const std::vector<Polynomial>& fns, const Domain& domain, int level);
Eigen::MatrixXcd gram(const BasisSet& basis, int level = 0); // 0 = default level

// quadrature inner products of a function family (column j = f_j) against
// another family (row i): out(i,j) = <g_j, f_i>? -- see implementation notes.
Eigen::MatrixXcd quad_inner_products(const std::vector<HoloFn>& rows,
                                     const std::vector<HoloFn>& cols,
                                     const QuadratureRule& rule);

// ---------------------------------------------------------------------------
// Reproducing-kernel models.
// ---------------------------------------------------------------------------
enum class KernelForm { ClosedForm, TruncatedSum, PulledBack };

class KernelModel {
  public:
    // disc/polydisc: prod (1 - z_i conj(w_i))^{-2}; symmetrized polydisc:
    // the determinant formula with a normalization constant pinned by the
    // reproduce-on-constants oracle at construction time.
    static KernelModel closed_form(const Domain& domain);
    static KernelModel truncated_sum(const Domain& domain, std::vector<HoloFn> orthonormal);
    static KernelModel pulled_back(const ProperMap& f, KernelModel inner);

    KernelForm form() const { return form_; }
    const Domain& domain() const { return domain_; }
    double symdisc_constant() const { return symdisc_constant_; }

    // K(z, w); PulledBack and the symmetrized closed form refuse evaluation
    // within |J| < 1e-8 of the branch locus (PoleEvaluation).
    Cx eval(std::span<const Cx> z, std::span<const Cx> w) const;
    Cx eval(const CVec& z, const CVec& w) const {
        return eval(std::span<const Cx>(z), std::span<const Cx>(w));
    }

  private:
    KernelModel(KernelForm f, Domain d) : form_(f), domain_(d) {}
    KernelForm form_;
    Domain domain_;
    std::vector<HoloFn> basis_;
    std::shared_ptr<const KernelModel> inner_;
    std::shared_ptr<const ProperMap> map_;
    double symdisc_constant_ = 1.0;
};

// |int phi(z) conj(K(z,w)) dmu(z) - phi(w)|
double reproduce_check(const KernelModel& model, const HoloFn& phi, std::span<const Cx> w,
                       int level);

// ---------------------------------------------------------------------------
// Structured inner products for maps built from Blaschke factors. The tensor
// quadrature of a separable integrand factors into per-coordinate sums, so
// these tables make polydisc-product and symmetrized-quotient integrals exact
// at one-dimensional cost.
//   gram_table(p,q)  = <B^p B', B^q B'>_D
//   cross_table(k,p) = <z^k,   B^p B'>_D
// ---------------------------------------------------------------------------
struct BlaschkeTables {
    Eigen::MatrixXcd gram;  // (pmax+1) x (pmax+1)
    Eigen::MatrixXcd cross; // (kmax+1) x (pmax+1)
};
BlaschkeTables blaschke_tables(const BlaschkeData& b, int pmax, int kmax, int level = 0);

// default 1-D quadrature level for rational Blaschke integrands
inline int blaschke_level(int pmax) { return std::max(120, 8 * pmax + 40); }

// Exact inner product on the symmetrized polydisc for polynomial data:
// <F,G>_{G_d} = (1/d!) <(F o s) V, (G o s) V>_{D^d} with V the vandermonde.
Cx symdisc_inner_exact(const Polynomial& f, const Polynomial& g, int d);

// (F o s) * V, the anti-symmetric pullback used throughout the symmetrized
// computations
Polynomial symdisc_pullback(const Polynomial& f, int d);

// ---------------------------------------------------------------------------
// Inner products involving Gamma_f for a self-map f(s(z)) = s(B(z_1),...)
// of the symmetrized polydisc. Writing Q_F = (F o s) V, the pushforward
// integrals collapse to per-coordinate Blaschke tables:
//   <Gamma_f F, Gamma_f G> = (1/(d! m)) sum_{a in Q_F, b in Q_G} c_a conj(c_b)
//                            prod_i <B^{a_i} B', B^{b_i} B'>
//   <phi, Gamma_f F>       = (1/(d! sqrt m)) sum prod_i <z^{k_i}, B^{p_i} B'>
// ---------------------------------------------------------------------------
class EzEngine {
  public:
    EzEngine(const ProperMap& ez, int pmax, int kmax);

    Cx gamma_inner(const Polynomial& q_f, const Polynomial& q_g) const;
    Cx mixed_inner(const Polynomial& q_phi, const Polynomial& q_f) const;
    double gamma_norm(const Polynomial& psi) const; // ||Gamma_f psi||_{G_d}

  private:
    int d_;
    double dfact_;
    double mult_;
    Eigen::MatrixXcd t_, u_;
};

} // namespace berglab

#endif
