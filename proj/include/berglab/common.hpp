#ifndef BERGLAB_COMMON_HPP
#define BERGLAB_COMMON_HPP

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace berglab {

using Cx = std::complex<double>;
using CVec = std::vector<Cx>;

// ---------------------------------------------------------------------------
// Error types. Every throwing operation documents which of these it raises.
// ---------------------------------------------------------------------------

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct PoleEvaluation : std::domain_error {
    using std::domain_error::domain_error;
};
struct NotReinhardt : std::domain_error {
    using std::domain_error::domain_error;
};
struct ZeroOutsideDisc : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct RootFindingDiverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TargetMiss : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct InconsistentFiberCount : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TruncationUnsafe : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NearBranchLocus : std::domain_error {
    using std::domain_error::domain_error;
};
struct NotDivisible : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoRegularValue : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnknownMap : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct UnknownCheck : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Seeded random source. All randomized checks draw from one of these and log
// the seed, so every report is reproducible. fork() derives an independent
// stream from a label, which keeps per-check draws stable when the set of
// checks in a scenario changes.
// ---------------------------------------------------------------------------

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed), gen_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return gen_(); }

    // uniform in [0,1)
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // uniform w.r.t. area on the disc of radius rmax
    Cx disc_point(double rmax = 1.0) {
        const double r = rmax * std::sqrt(uniform());
        const double t = 2.0 * pi() * uniform();
        return Cx(r * std::cos(t), r * std::sin(t));
    }

    CVec polydisc_point(int d, double rmax = 1.0) {
        CVec z(static_cast<std::size_t>(d));
        for (auto& zi : z) zi = disc_point(rmax);
        return z;
    }

    Rng fork(std::string_view label) const {
        std::uint64_t h = 1469598103934665603ull; // FNV-1a
        for (char c : label) {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ull;
        }
        return Rng(mix(seed_ ^ h));
    }

    static constexpr double pi() { return 3.141592653589793238462643383279502884; }

  private:
    static std::uint64_t mix(std::uint64_t x) { // splitmix64 finalizer
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

    std::uint64_t seed_;
    std::mt19937_64 gen_;
};

} // namespace berglab

#endif
