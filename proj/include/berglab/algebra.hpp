#ifndef BERGLAB_ALGEBRA_HPP
#define BERGLAB_ALGEBRA_HPP

#include <map>
#include <optional>

#include "berglab/common.hpp"

namespace berglab {

using MultiIndex = std::vector<int>;

int total_degree(const MultiIndex& alpha);

// Graded lexicographic order: compare total degree first, then lex.
// This is the canonical term/basis enumeration order across the project.
struct GradedLexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

// ---------------------------------------------------------------------------
// Sparse multivariate polynomial with complex double coefficients.
//
// Canonical form: no stored coefficient is exactly zero, and after every
// arithmetic operation coefficients smaller than 1e-13 relative to the
// largest magnitude are pruned. "Exact" below always means exact coefficient
// arithmetic up to double rounding.
// ---------------------------------------------------------------------------
class Polynomial {
  public:
    using TermMap = std::map<MultiIndex, Cx, GradedLexLess>;

    explicit Polynomial(int dim = 1);

    static Polynomial zero(int dim);
    static Polynomial constant(int dim, Cx value);
    static Polynomial variable(int dim, int i); // z_i, 0-based
    static Polynomial monomial(MultiIndex alpha, Cx coeff = Cx(1.0));

    int dimension() const { return dim_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const; // max total degree; -1 for the zero polynomial
    const TermMap& terms() const { return terms_; }
    Cx coeff(const MultiIndex& alpha) const;
    void add_term(const MultiIndex& alpha, Cx c);

    Cx operator()(std::span<const Cx> z) const;
    Cx operator()(const CVec& z) const { return (*this)(std::span<const Cx>(z)); }
    Cx operator()(Cx z) const; // univariate convenience

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& rhs);
    Polynomial& operator-=(const Polynomial& rhs);
    Polynomial& operator*=(const Polynomial& rhs);
    Polynomial& operator*=(Cx scalar);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
    friend Polynomial operator*(Polynomial a, Cx s) { return a *= s; }
    friend Polynomial operator*(Cx s, Polynomial a) { return a *= s; }

    Polynomial pow(int k) const;
    Polynomial partial(int i) const; // formal d/dz_i, 0-based

    double max_abs_coeff() const;
    // sum of |c_alpha|, a cheap coefficient norm used in divisibility checks
    double coeff_l1() const;

    bool approx_equal(const Polynomial& rhs, double tol) const;

    std::string to_string() const;

  private:
    void prune();

    int dim_;
    TermMap terms_;
};

// ---------------------------------------------------------------------------
// Quotient of two polynomials. Never auto-reduced; evaluation is defined away
// from zeros of the denominator, and equality is decided by cross-multiplied
// coefficient comparison.
// ---------------------------------------------------------------------------
class RationalFunction {
  public:
    RationalFunction() : num_(Polynomial::zero(1)), den_(Polynomial::constant(1, 1.0)) {}
    RationalFunction(Polynomial num, Polynomial den);
    RationalFunction(const Polynomial& p) : num_(p), den_(Polynomial::constant(p.dimension(), 1.0)) {}

    int dimension() const { return num_.dimension(); }
    const Polynomial& numerator() const { return num_; }
    const Polynomial& denominator() const { return den_; }

    // throws PoleEvaluation when |den(z)| < 1e-14
    Cx operator()(std::span<const Cx> z) const;
    Cx operator()(const CVec& z) const { return (*this)(std::span<const Cx>(z)); }
    Cx operator()(Cx z) const;

    RationalFunction operator-() const;
    RationalFunction& operator+=(const RationalFunction& rhs);
    RationalFunction& operator-=(const RationalFunction& rhs);
    RationalFunction& operator*=(const RationalFunction& rhs);
    RationalFunction& operator*=(Cx scalar);

    friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
    friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
    friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
    friend RationalFunction operator*(RationalFunction a, Cx s) { return a *= s; }

    RationalFunction pow(int k) const;
    RationalFunction partial(int i) const; // quotient rule, unreduced

    // cross-multiplied comparison: num*rhs.den == rhs.num*den
    bool approx_equal(const RationalFunction& rhs, double tol) const;

    std::string to_string() const;

  private:
    Polynomial num_, den_;
};

// psi(g_1,...,g_d); throws DimensionMismatch when psi.dimension() != g.size()
// or the g_i disagree on their source dimension.
Polynomial compose(const Polynomial& psi, const std::vector<Polynomial>& g);
RationalFunction compose(const Polynomial& psi, const std::vector<RationalFunction>& g);

// det((d g_j / d z_i)) with component j in row j; throws DimensionMismatch
// unless the system is square.
Polynomial jacobian_det(const std::vector<Polynomial>& g);
RationalFunction jacobian_det(const std::vector<RationalFunction>& g);

// f(rho * z) for a matrix rho given in row-major order (dim x dim).
Polynomial substitute_linear(const Polynomial& f, const std::vector<Cx>& rho_rowmajor);

// Division of p by the linear factor (z_i - z_j), i != j, by synthetic
// division in the variable z_i. Returns {quotient, remainder}; the remainder
// does not involve z_i.
std::pair<Polynomial, Polynomial> divide_linear_difference(const Polynomial& p, int i, int j);

// Symmetric-function catalog: elementary symmetric polynomial of degree k in
// d variables, the full symmetrization vector, and the Vandermonde
// prod_{i<j}(z_i - z_j).
Polynomial elementary_symmetric(int d, int k);
std::vector<Polynomial> symmetrization_components(int d);
Polynomial vandermonde(int d);

// Dense univariate coefficient list c_0..c_n (throws DimensionMismatch on
// multivariate input).
std::vector<Cx> univariate_coeffs(const Polynomial& p);

} // namespace berglab

#endif
