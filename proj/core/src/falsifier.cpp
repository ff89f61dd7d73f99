#include <cmath>
#include <random>
#include <string>

#include "internal.hpp"
#include "isocone/errors.hpp"
#include "isocone/isotonicity.hpp"
#include "isocone/projection.hpp"

namespace isocone {
namespace {

constexpr int kRejectionBudget = 1000;  // > 99.9% rejection is a sampling failure
constexpr double kViolationFactor = 10.0;

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Draws directions d in L. Generator descriptions mix single-generator
/// and dense exponential combinations; Lorentz cones mix boundary and
/// interior rays; facet-only descriptions fall back to rejection sampling.
class DirectionSampler {
 public:
  explicit DirectionSampler(const ConeSpec& L) : cone_(L), dim_(L.dim()) {
    if (const auto* lor = L.get<Lorentz>(); lor != nullptr && lor->dim > 2) {
      lorentz_ = true;
      return;
    }
    generators_ = extremeRays(L);
  }

  Vector draw(std::mt19937_64& rng) const {
    std::exponential_distribution<double> expo(1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::bernoulli_distribution coin(0.5);
    Vector d;
    if (generators_) {
      const Matrix& g = *generators_;
      if (coin(rng)) {
        std::uniform_int_distribution<Eigen::Index> pick(0, g.cols() - 1);
        d = expo(rng) * g.col(pick(rng));
      } else {
        Vector w(g.cols());
        for (Eigen::Index j = 0; j < w.size(); ++j) w(j) = expo(rng);
        d = g * w;
      }
    } else if (lorentz_) {
      d.resize(dim_);
      for (int i = 0; i + 1 < dim_; ++i) d(i) = gauss(rng);
      const double r = d.head(dim_ - 1).norm();
      d(dim_ - 1) = coin(rng) ? r : r * (1.0 + expo(rng));
    } else {
      std::uniform_real_distribution<double> box(-1.0, 1.0);
      d.resize(dim_);
      int attempt = 0;
      while (true) {
        for (int i = 0; i < dim_; ++i) d(i) = box(rng);
        if (membership(cone_, d, 0.0)) break;
        if (++attempt >= kRejectionBudget) {
          throw SamplingFailure("falsify: rejection sampling in L rejected " + std::to_string(attempt) +
                                " consecutive draws");
        }
      }
    }
    return d;
  }

 private:
  const ConeSpec& cone_;
  int dim_;
  bool lorentz_ = false;
  std::optional<Matrix> generators_;
};

}  // namespace

std::optional<Counterexample> falsify(const ConeSpec& K, const ConeSpec& L, const FalsifierConfig& cfg) {
  cfg.validate();
  if (K.dim() != L.dim()) throw DimensionMismatch("falsify: K and L differ in dimension");
  const int m = K.dim();
  const DirectionSampler sampler(L);
  const double threshold = -kViolationFactor * cfg.tol;

  for (std::int64_t t = 0; t < cfg.trials; ++t) {
    std::mt19937_64 rng(splitmix64(cfg.seed ^ splitmix64(static_cast<std::uint64_t>(t))));
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> logMagnitude(-2.0, 1.0);

    Vector x(m);
    for (int i = 0; i < m; ++i) x(i) = cfg.scale * gauss(rng);
    Vector d = sampler.draw(rng);
    const double dn = d.norm();
    if (dn == 0.0) continue;
    d *= cfg.scale * std::pow(10.0, logMagnitude(rng)) / dn;
    const Vector y = x + d;

    Vector px = project(K, x).point;
    Vector py = project(K, y).point;
    Vector v = py - px;
    const double margin = membershipMargin(L, v);
    if (margin < threshold) {
      return Counterexample{x, y, std::move(px), std::move(py), std::move(v), margin, t};
    }
  }
  return std::nullopt;
}

}  // namespace isocone
