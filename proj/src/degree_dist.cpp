#include "thcp/degree_dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace thcp {

namespace {

double poisson_pmf(double lambda, std::int64_t k) {
    if (k < 0) return 0.0;
    if (lambda <= 0.0) return k == 0 ? 1.0 : 0.0;
    return std::exp(-lambda + static_cast<double>(k) * std::log(lambda) -
                    std::lgamma(static_cast<double>(k) + 1.0));
}

double binom_pmf(std::int64_t n, std::int64_t l, double h) {
    if (l < 0 || l > n) return 0.0;
    if (h <= 0.0) return l == 0 ? 1.0 : 0.0;
    if (h >= 1.0) return l == n ? 1.0 : 0.0;
    double nd = static_cast<double>(n), ld = static_cast<double>(l);
    return std::exp(std::lgamma(nd + 1.0) - std::lgamma(ld + 1.0) - std::lgamma(nd - ld + 1.0) +
                    ld * std::log(h) + (nd - ld) * std::log1p(-h));
}

// P(Bin(n, h) >= r) via the short lower tail.
double binom_upper_tail(std::int64_t n, std::int64_t r, double h) {
    if (r <= 0) return 1.0;
    if (r > n) return 0.0;
    double lower = 0.0;
    for (std::int64_t l = 0; l < r; ++l) lower += binom_pmf(n, l, h);
    return std::clamp(1.0 - lower, 0.0, 1.0);
}

}  // namespace

DegreeDistribution DegreeDistribution::dirac(std::int64_t a) {
    if (a < 0) throw std::runtime_error("dirac: atom must be a nonnegative integer");
    DegreeDistribution d;
    d.kind_ = Kind::dirac;
    d.dirac_a_ = a;
    d.k_min_ = a;
    d.table_ = {1.0};
    d.finalize();
    return d;
}

DegreeDistribution DegreeDistribution::poisson(double lambda) {
    if (!(lambda >= 0.0)) throw std::runtime_error("poisson: lambda must be >= 0");
    DegreeDistribution d;
    d.kind_ = Kind::poisson;
    d.lambda_ = lambda;
    d.k_min_ = 0;
    double cum = 0.0;
    for (std::int64_t k = 0;; ++k) {
        if (k > kSupportCap)
            throw std::runtime_error("poisson: support cap reached during tail truncation");
        double p = poisson_pmf(lambda, k);
        d.table_.push_back(p);
        cum += p;
        // (1+k)-weighted tail below tolerance once past the mode
        if (static_cast<double>(k) > lambda &&
            (1.0 - cum) * (static_cast<double>(k) + 2.0) < 1e-13)
            break;
    }
    d.finalize();
    return d;
}

DegreeDistribution DegreeDistribution::mixture(std::vector<DegreeDistribution> components,
                                               std::vector<double> weights) {
    if (components.empty() || components.size() != weights.size())
        throw std::runtime_error("mixture: components and weights must be nonempty and aligned");
    double wsum = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (!(wsum > 0.0)) throw std::runtime_error("mixture: weights must have positive sum");
    for (double& w : weights) {
        if (w < 0.0) throw std::runtime_error("mixture: weights must be nonnegative");
        w /= wsum;
    }
    DegreeDistribution d;
    d.kind_ = Kind::mixture;
    std::int64_t lo = components.front().min_support();
    std::int64_t hi = components.front().max_support();
    for (const auto& c : components) {
        lo = std::min(lo, c.min_support());
        hi = std::max(hi, c.max_support());
    }
    d.k_min_ = lo;
    d.table_.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);
    for (std::size_t i = 0; i < components.size(); ++i) {
        const auto& t = components[i].table();
        std::int64_t off = components[i].min_support() - lo;
        for (std::size_t k = 0; k < t.size(); ++k)
            d.table_[static_cast<std::size_t>(off) + k] += weights[i] * t[k];
    }
    d.components_ = std::move(components);
    d.weights_ = std::move(weights);
    d.finalize();
    return d;
}

DegreeDistribution DegreeDistribution::from_pmf(const std::map<std::int64_t, double>& table) {
    if (table.empty()) throw std::runtime_error("pmf: empty table");
    double sum = 0.0;
    for (const auto& [k, p] : table) {
        if (k < 0) throw std::runtime_error("pmf: negative support value");
        if (p < 0.0) throw std::runtime_error("pmf: negative probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::runtime_error("pmf: probabilities must sum to 1 within 1e-12");
    DegreeDistribution d;
    d.kind_ = Kind::pmf_table;
    d.raw_table_ = table;
    d.k_min_ = table.begin()->first;
    std::int64_t hi = table.rbegin()->first;
    d.table_.assign(static_cast<std::size_t>(hi - d.k_min_ + 1), 0.0);
    for (const auto& [k, p] : table) d.table_[static_cast<std::size_t>(k - d.k_min_)] = p;
    d.finalize();
    return d;
}

DegreeDistribution DegreeDistribution::power_law(double exponent, std::int64_t dmin,
                                                 std::int64_t dmax) {
    if (dmin < 0 || dmax < dmin) throw std::runtime_error("powerlaw: need 0 <= dmin <= dmax");
    if (dmin == 0) throw std::runtime_error("powerlaw: dmin must be >= 1");
    if (dmax - dmin + 1 > kSupportCap) throw std::runtime_error("powerlaw: support cap exceeded");
    DegreeDistribution d;
    d.kind_ = Kind::power_law;
    d.exponent_ = exponent;
    d.dmin_ = dmin;
    d.dmax_ = dmax;
    d.k_min_ = dmin;
    double z = 0.0;
    for (std::int64_t k = dmin; k <= dmax; ++k)
        z += std::pow(static_cast<double>(k), -exponent);
    for (std::int64_t k = dmin; k <= dmax; ++k)
        d.table_.push_back(std::pow(static_cast<double>(k), -exponent) / z);
    d.finalize();
    return d;
}

void DegreeDistribution::finalize() {
    cdf_.resize(table_.size());
    double cum = 0.0;
    for (std::size_t i = 0; i < table_.size(); ++i) {
        cum += table_[i];
        cdf_[i] = cum;
    }
    mean_ = 0.0;
    for (std::size_t i = 0; i < table_.size(); ++i)
        mean_ += static_cast<double>(k_min_ + static_cast<std::int64_t>(i)) * table_[i];
}

double DegreeDistribution::pmf(std::int64_t k) const {
    if (k < k_min_ || k > max_support()) return 0.0;
    return table_[static_cast<std::size_t>(k - k_min_)];
}

double DegreeDistribution::moment(double k) const {
    if (!(k > 0.0)) throw std::runtime_error("moment: order must be > 0");
    switch (kind_) {
        case Kind::dirac:
            return std::pow(static_cast<double>(dirac_a_), k);
        case Kind::mixture: {
            double m = 0.0;
            for (std::size_t i = 0; i < components_.size(); ++i)
                m += weights_[i] * components_[i].moment(k);
            return m;
        }
        case Kind::poisson: {
            // adaptive sum with the untruncated pmf; the geometric-ratio stop
            // rule bounds the neglected tail by 6x the last term
            double acc = 0.0;
            for (std::int64_t j = 1;; ++j) {
                if (j > kSupportCap)
                    throw std::runtime_error("moment: did not converge within support cap");
                double term = std::pow(static_cast<double>(j), k) * poisson_pmf(lambda_, j);
                acc += term;
                bool past = static_cast<double>(j) >= 2.0 * lambda_ &&
                            static_cast<double>(j) >= 2.0 * k + 2.0;
                if (past && 6.0 * term <= kTailTol * acc) break;
            }
            return acc;
        }
        case Kind::pmf_table:
        case Kind::power_law: {
            double m = 0.0;
            for (std::size_t i = 0; i < table_.size(); ++i) {
                std::int64_t j = k_min_ + static_cast<std::int64_t>(i);
                if (j == 0) continue;
                m += std::pow(static_cast<double>(j), k) * table_[i];
            }
            return m;
        }
    }
    throw std::logic_error("moment: unreachable");
}

std::int64_t DegreeDistribution::sample(SplitMix64& rng) const {
    double u = rng.next_unit();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) --it;
    return k_min_ + static_cast<std::int64_t>(it - cdf_.begin());
}

std::string DegreeDistribution::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::dirac: os << "dirac(" << dirac_a_ << ")"; break;
        case Kind::poisson: os << "poisson(" << lambda_ << ")"; break;
        case Kind::mixture: {
            os << "mixture(";
            for (std::size_t i = 0; i < components_.size(); ++i) {
                if (i) os << ", ";
                os << weights_[i] << "*" << components_[i].describe();
            }
            os << ")";
            break;
        }
        case Kind::pmf_table: os << "pmf[" << raw_table_.size() << " atoms]"; break;
        case Kind::power_law:
            os << "powerlaw(" << exponent_ << ", " << dmin_ << ".." << dmax_ << ")";
            break;
    }
    return os.str();
}

nlohmann::json DegreeDistribution::to_json() const {
    nlohmann::json j;
    switch (kind_) {
        case Kind::dirac:
            j = {{"type", "dirac"}, {"a", dirac_a_}};
            break;
        case Kind::poisson:
            j = {{"type", "poisson"}, {"lambda", lambda_}};
            break;
        case Kind::mixture: {
            nlohmann::json comps = nlohmann::json::array();
            for (const auto& c : components_) comps.push_back(c.to_json());
            j = {{"type", "mixture"}, {"components", comps}, {"weights", weights_}};
            break;
        }
        case Kind::pmf_table: {
            nlohmann::json table = nlohmann::json::object();
            for (const auto& [k, p] : raw_table_) table[std::to_string(k)] = p;
            j = {{"type", "pmf"}, {"table", table}};
            break;
        }
        case Kind::power_law:
            j = {{"type", "powerlaw"}, {"exponent", exponent_}, {"dmin", dmin_}, {"dmax", dmax_}};
            break;
    }
    return j;
}

DegreeDistribution DegreeDistribution::from_json(const nlohmann::json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "dirac") return dirac(j.at("a").get<std::int64_t>());
    if (type == "poisson") return poisson(j.at("lambda").get<double>());
    if (type == "mixture") {
        std::vector<DegreeDistribution> comps;
        for (const auto& c : j.at("components")) comps.push_back(from_json(c));
        return mixture(std::move(comps), j.at("weights").get<std::vector<double>>());
    }
    if (type == "pmf") {
        std::map<std::int64_t, double> table;
        for (const auto& [k, p] : j.at("table").items())
            table[std::stoll(k)] = p.get<double>();
        return from_pmf(table);
    }
    if (type == "powerlaw")
        return power_law(j.at("exponent").get<double>(), j.at("dmin").get<std::int64_t>(),
                         j.at("dmax").get<std::int64_t>());
    throw std::runtime_error("unknown distribution type: " + type);
}

bool DegreeDistribution::operator==(const DegreeDistribution& other) const {
    if (kind_ != other.kind_) return false;
    switch (kind_) {
        case Kind::dirac: return dirac_a_ == other.dirac_a_;
        case Kind::poisson: return lambda_ == other.lambda_;
        case Kind::mixture:
            return weights_ == other.weights_ && components_ == other.components_;
        case Kind::pmf_table: return raw_table_ == other.raw_table_;
        case Kind::power_law:
            return exponent_ == other.exponent_ && dmin_ == other.dmin_ && dmax_ == other.dmax_;
    }
    return false;
}

double thinned_pmf(const DegreeDistribution& dist, double h, std::int64_t l) {
    if (l < 0) return 0.0;
    double acc = 0.0;
    const auto& t = dist.table();
    for (std::size_t i = 0; i < t.size(); ++i) {
        std::int64_t j = dist.min_support() + static_cast<std::int64_t>(i);
        if (j < l || t[i] == 0.0) continue;
        acc += binom_pmf(j, l, h) * t[i];
    }
    return acc;
}

// F_r(h) = sum_j pmf(j) * j * h * P(Bin(j-1, h) >= r-1), the identity
// E[B 1{B>=r}] = n h P(Bin(n-1, h) >= r-1) applied under the degree mixture.
double core_f(const DegreeDistribution& dist, double h, int r) {
    double acc = 0.0;
    const auto& t = dist.table();
    for (std::size_t i = 0; i < t.size(); ++i) {
        std::int64_t j = dist.min_support() + static_cast<std::int64_t>(i);
        if (j < r || t[i] == 0.0) continue;
        acc += t[i] * static_cast<double>(j) * h * binom_upper_tail(j - 1, r - 1, h);
    }
    return acc;
}

double core_rho(const DegreeDistribution& dist, double h, int r) {
    double acc = 0.0;
    const auto& t = dist.table();
    for (std::size_t i = 0; i < t.size(); ++i) {
        std::int64_t j = dist.min_support() + static_cast<std::int64_t>(i);
        if (j < r || t[i] == 0.0) continue;
        acc += t[i] * binom_upper_tail(j, r, h);
    }
    return acc;
}

CoreThresholdResult solve_core_threshold(const DegreeDistribution& dist, int r) {
    if (r < 2) throw std::runtime_error("solve_core_threshold: r must be >= 2");
    CoreThresholdResult res;
    res.r = r;
    const double d = dist.mean();
    if (!(d > 0.0)) return res;

    auto g = [&](double h) { return d * h * h - core_f(dist, h, r); };

    // g(1) = d - E[D 1{D>=r}] >= 0; equality means the whole graph is its
    // own r-core in the limit (no mass on 1..r-1).
    if (std::abs(g(1.0)) <= 1e-9 * std::max(1.0, d)) {
        res.hhat = 1.0;
        res.rho = core_rho(dist, 1.0, r);
        res.condition_holds = true;
        return res;
    }

    // Fine grid scan for a dip below zero; h where g < 0 certifies the core
    // condition. Track the largest such grid point for root bracketing.
    constexpr double step = 1e-4;
    double h_neg = -1.0;
    double g_min = g(1.0);
    double h_min = 1.0;
    const int cells = static_cast<int>(1.0 / step);
    for (int i = cells - 1; i >= 1; --i) {
        double h = static_cast<double>(i) * step;
        double v = g(h);
        if (v < g_min) {
            g_min = v;
            h_min = h;
        }
        if (v < 0.0 && h_neg < 0.0) h_neg = h;
    }

    if (h_neg < 0.0) {
        // No grid point below zero: polish the grid minimum by ternary
        // search in case the dip is narrower than the grid step.
        double lo = std::max(step, h_min - step), hi = std::min(1.0, h_min + step);
        for (int it = 0; it < 200; ++it) {
            double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
            if (g(m1) < g(m2)) hi = m2; else lo = m1;
        }
        double h_star = 0.5 * (lo + hi);
        if (g(h_star) < 0.0)
            h_neg = h_star;
        else
            return res;  // no-core: dh^2 > F_r(h) for all h in (0,1)
    }

    // Largest root: g < 0 at h_neg and g >= 0 approaching 1; bisect on the
    // first sign change above h_neg.
    double lo = h_neg, hi = 1.0;
    double probe = std::min(1.0, h_neg + step);
    while (probe < 1.0 && g(probe) < 0.0) {
        lo = probe;
        probe += step;
    }
    hi = std::min(probe, 1.0);
    for (int it = 0; it < 100 && hi - lo > 1e-10; ++it) {
        double mid = 0.5 * (lo + hi);
        if (g(mid) < 0.0) lo = mid; else hi = mid;
    }
    res.hhat = 0.5 * (lo + hi);
    res.rho = core_rho(dist, res.hhat, r);
    res.condition_holds = true;
    return res;
}

double er_core_threshold(int r) {
    if (r < 3) throw std::runtime_error("er_core_threshold: r must be >= 3");
    auto objective = [r](double alpha) {
        // alpha / P(Pois(alpha) >= r-1)
        double lower = 0.0, term = std::exp(-alpha);
        for (int k = 0; k <= r - 2; ++k) {
            lower += term;
            term *= alpha / static_cast<double>(k + 1);
        }
        double tail = std::clamp(1.0 - lower, 0.0, 1.0);
        if (tail <= 0.0) return std::numeric_limits<double>::infinity();
        return alpha / tail;
    };

    // coarse bracket on (0, 50]
    double best_a = 0.01, best_v = objective(0.01);
    for (double a = 0.02; a <= 50.0; a += 0.01) {
        double v = objective(a);
        if (v < best_v) {
            best_v = v;
            best_a = a;
        }
    }
    double lo = std::max(1e-9, best_a - 0.01), hi = std::min(50.0, best_a + 0.01);

    // golden-section to 1e-8 in alpha
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = objective(x1), f2 = objective(x2);
    while (hi - lo > 1e-10) {
        if (f1 < f2) {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = objective(x1);
        } else {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = objective(x2);
        }
    }
    return objective(0.5 * (lo + hi));
}

}  // namespace thcp
