#ifndef BERGLAB_MAPS_HPP
#define BERGLAB_MAPS_HPP

#include <memory>
#include <optional>

#include "berglab/algebra.hpp"
#include "berglab/domains.hpp"

namespace berglab {

enum class MapKind { Blaschke, Power, PolydiscProduct, Symmetrization, EdigarianZwonek };

// preimage set of a single target point
struct Fiber {
    CVec base_point;
    std::vector<CVec> preimages;
    bool regular = false;          // all preimages have |J_f| > 1e-10
    double boundary_clearance = 0; // min over preimage coordinates of 1 - |z_i|

    // fibers are trusted for downstream numerics only when regular and
    // bounded away from the boundary
    bool trusted(double guard = 1e-6) const { return regular && boundary_clearance > guard; }
};

// one finite Blaschke product e^{i theta} prod ((z-a_j)/(1-conj(a_j) z))^{k_j}
struct BlaschkeData {
    CVec zeros;
    std::vector<int> powers;
    double phase = 0.0;
    int order = 0;
    RationalFunction rf;         // the product itself
    RationalFunction derivative; // d/dz
};

// Proper holomorphic map from the catalog. Immutable; cheap to copy.
class ProperMap {
  public:
    // B(z) = e^{i phase} prod ((z-a_j)/(1-conj(a_j) z))^{k_j}; multiplicity
    // sum k_j. Throws ZeroOutsideDisc.
    static ProperMap blaschke(CVec zeros, std::vector<int> powers, double phase);
    static ProperMap power(int n); // z^n, tagged separately for the catalog
    // componentwise Blaschke self-map of the polydisc; multiplicity prod m_i
    static ProperMap polydisc_product(std::vector<ProperMap> factors);
    // elementary symmetric map D^d -> G_d, multiplicity d!
    static ProperMap symmetrization(int d);
    // self-map of G_d with f(s(z)) = s(B(z_1),...,B(z_d)); multiplicity n^d
    static ProperMap edigarian_zwonek(const ProperMap& blaschke_map, int d);

    MapKind kind() const { return kind_; }
    const Domain& source() const { return source_; }
    const Domain& target() const { return target_; }
    int dimension() const { return source_.dimension(); }
    int multiplicity() const { return multiplicity_; }
    const std::string& name() const { return name_; }

    // rational component data; empty for EdigarianZwonek (evaluated through
    // fibers of the symmetrization map instead)
    const std::vector<RationalFunction>& components() const { return components_; }
    const std::optional<RationalFunction>& jacobian_rf() const { return jacobian_; }
    bool has_rational_form() const { return !components_.empty(); }

    const BlaschkeData& blaschke_data() const;                 // Blaschke/Power/EZ
    const std::vector<BlaschkeData>& product_factors() const;  // PolydiscProduct

    CVec operator()(std::span<const Cx> z) const;
    CVec operator()(const CVec& z) const { return (*this)(std::span<const Cx>(z)); }
    Cx jacobian(std::span<const Cx> z) const;
    Cx jacobian(const CVec& z) const { return jacobian(std::span<const Cx>(z)); }

    // All preimages of w. Throws TargetMiss when w is outside the target and
    // RootFindingDiverged when the solver fails its residual contract.
    Fiber fiber(std::span<const Cx> w) const;
    Fiber fiber(const CVec& w) const { return fiber(std::span<const Cx>(w)); }

  private:
    ProperMap(MapKind k, Domain src, Domain tgt, int mult, std::string name)
        : kind_(k), source_(src), target_(tgt), multiplicity_(mult), name_(std::move(name)) {}

    MapKind kind_;
    Domain source_;
    Domain target_;
    int multiplicity_;
    std::string name_;
    std::vector<RationalFunction> components_;
    std::optional<RationalFunction> jacobian_;
    std::shared_ptr<const BlaschkeData> blaschke_;
    std::shared_ptr<const std::vector<BlaschkeData>> factors_;
    int ez_dim_ = 0;
};

// Draws random target points until `trials` trusted fibers are collected,
// asserts their cardinalities agree, and returns the common count. Throws
// InconsistentFiberCount on disagreement, NoRegularValue when sampling keeps
// hitting untrusted fibers.
int multiplicity_certify(const ProperMap& f, int trials, Rng& rng);

} // namespace berglab

#endif
