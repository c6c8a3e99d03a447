#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "thcp/rng.hpp"

namespace thcp {

// A degree law mu on the nonnegative integers. Infinite-support variants
// (Poisson) are tail-truncated at construction; the truncation point is
// chosen so the neglected mass, weighted by (1+k), is below 1e-13. All
// derived quantities (thinning, F_r, rho_r, sampling) work off the dense
// pmf table; moments re-expand the exact pmf where the table would bias
// high-order sums.
class DegreeDistribution {
  public:
    enum class Kind { dirac, poisson, mixture, pmf_table, power_law };

    static DegreeDistribution dirac(std::int64_t a);
    static DegreeDistribution poisson(double lambda);
    static DegreeDistribution mixture(std::vector<DegreeDistribution> components,
                                      std::vector<double> weights);
    static DegreeDistribution from_pmf(const std::map<std::int64_t, double>& table);
    static DegreeDistribution power_law(double exponent, std::int64_t dmin, std::int64_t dmax);

    Kind kind() const { return kind_; }

    // P(D = k); zero outside the (truncated) support.
    double pmf(std::int64_t k) const;

    // E[D^k] for real k > 0. Throws std::runtime_error if the adaptive tail
    // sum does not converge within the support cap.
    double moment(double k) const;

    double mean() const { return mean_; }

    std::int64_t min_support() const { return k_min_; }
    std::int64_t max_support() const { return k_min_ + static_cast<std::int64_t>(table_.size()) - 1; }

    std::int64_t sample(SplitMix64& rng) const;

    std::string describe() const;

    nlohmann::json to_json() const;
    static DegreeDistribution from_json(const nlohmann::json& j);

    bool operator==(const DegreeDistribution& other) const;

    // Dense pmf over [min_support(), max_support()].
    const std::vector<double>& table() const { return table_; }

    static constexpr std::int64_t kSupportCap = 100000;
    static constexpr double kTailTol = 1e-12;

  private:
    DegreeDistribution() = default;
    void finalize();  // builds cdf, mean

    Kind kind_ = Kind::dirac;
    std::int64_t dirac_a_ = 0;
    double lambda_ = 0.0;
    double exponent_ = 0.0;
    std::int64_t dmin_ = 0, dmax_ = 0;
    std::vector<double> weights_;
    std::vector<DegreeDistribution> components_;
    std::map<std::int64_t, double> raw_table_;

    std::int64_t k_min_ = 0;
    std::vector<double> table_;
    std::vector<double> cdf_;
    double mean_ = 0.0;
};

// P(Bin(D, h) = l): the law of the h-thinned degree.
double thinned_pmf(const DegreeDistribution& dist, double h, std::int64_t l);

// F_r(h) = E[D_h 1{D_h >= r}] and rho_r(h) = P(D_h >= r) for D_h = Bin(D, h).
double core_f(const DegreeDistribution& dist, double h, int r);
double core_rho(const DegreeDistribution& dist, double h, int r);

struct CoreThresholdResult {
    double hhat = 0.0;        // largest h <= 1 with d h^2 = F_r(h), when a core exists
    double rho = 0.0;         // rho_r(hhat), the limiting core fraction
    bool condition_holds = false;
    int r = 0;
};

// Locates hhat and the limiting r-core density for the given law, or reports
// that no macroscopic r-core exists. The equality case d h^2 = F_r(h) at
// h = 1 (regular-type laws with all mass >= r) counts as core-exists with
// hhat = 1.
CoreThresholdResult solve_core_threshold(const DegreeDistribution& dist, int r);

// Erdos-Renyi r-core emergence threshold
//   d_r = min{ alpha / P(Pois(alpha) >= r-1) : alpha > 0 },
// minimized by golden-section after a coarse bracket scan on (0, 50].
double er_core_threshold(int r);

}  // namespace thcp
