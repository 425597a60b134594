#ifndef BERGLAB_DOMAINS_HPP
#define BERGLAB_DOMAINS_HPP

#include "berglab/algebra.hpp"
#include "berglab/common.hpp"

namespace berglab {

enum class DomainKind { UnitDisc, Polydisc, SymmetrizedPolydisc };

// Quadrature nodes/weights for the normalized measure (dA/pi on the disc and
// tensor powers of it; the |J_s|^2/d! pushforward on the symmetrized
// polydisc). Nodes are stored flat, dimension() entries per node.
class QuadratureRule {
  public:
    QuadratureRule(int dim, int exact_degree) : dim_(dim), exact_degree_(exact_degree) {}

    int dimension() const { return dim_; }
    int exact_degree() const { return exact_degree_; }
    std::size_t size() const { return weights_.size(); }
    std::span<const Cx> node(std::size_t i) const {
        return {points_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
    }
    double weight(std::size_t i) const { return weights_[i]; }
    double mass() const;

    void push_node(std::span<const Cx> z, double w);
    void reserve(std::size_t n);

  private:
    int dim_;
    int exact_degree_;
    std::vector<Cx> points_;
    std::vector<double> weights_;
};

// Bounded-domain descriptor: membership, normalized-measure quadrature, and
// monomial norms where the domain is complete Reinhardt.
class Domain {
  public:
    static Domain unit_disc();
    static Domain polydisc(int d);
    static Domain symmetrized_polydisc(int d);

    DomainKind kind() const { return kind_; }
    int dimension() const { return dim_; }
    bool is_reinhardt() const { return kind_ != DomainKind::SymmetrizedPolydisc; }
    std::string name() const;

    // Strict membership. The symmetrized polydisc decides by a companion
    // eigenvalue check with margin 1e-12. Throws DimensionMismatch.
    bool contains(std::span<const Cx> z) const;
    bool contains(const CVec& z) const { return contains(std::span<const Cx>(z)); }

    // ||z^alpha|| = prod (alpha_i+1)^{-1/2}; throws NotReinhardt on the
    // symmetrized polydisc.
    double monomial_norm(const MultiIndex& alpha) const;

    // Disc: Gauss-Legendre in r^2 times 2*level+1 uniform angles, exact for
    // z^a conj(z)^b with a,b <= level. Polydisc: tensor power. Symmetrized
    // polydisc: pushforward with weights w*|J_s|^2/d! (zero-weight diagonal
    // nodes dropped).
    QuadratureRule quadrature(int level) const;

    // sample a point of the domain, bounded away from the boundary
    CVec sample(Rng& rng, double rmax = 0.85) const;

    bool operator==(const Domain& other) const { return kind_ == other.kind_ && dim_ == other.dim_; }

  private:
    Domain(DomainKind k, int d) : kind_(k), dim_(d) {}
    DomainKind kind_;
    int dim_;
};

// Exact normalized-measure inner product of polynomials on a complete
// Reinhardt domain: <p,q> = sum_alpha p_a conj(q_a) prod 1/(alpha_i+1).
// Coincides with quadrature values (the rules are exact on polynomials).
Cx reinhardt_inner_product(const Polynomial& p, const Polynomial& q, const Domain& dom);

// Default quadrature level for integrands assembled from a basis of the
// given maximal degree.
inline int default_level(int max_basis_degree) { return 2 * max_basis_degree + 4; }

} // namespace berglab

#endif
