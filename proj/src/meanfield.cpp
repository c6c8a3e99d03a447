#include "thcp/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace thcp::meanfield {

double f(double q, double p, int theta) {
    return p * std::pow(q, theta) * ((theta + 1) - theta * q);
}

double f_prime(double q, double p, int theta) {
    return p * theta * (theta + 1) * std::pow(q, theta - 1) * (1.0 - q);
}

namespace {

// r(q) = f(q)/q - 1 on (0, 1]; its roots are the nontrivial fixed points.
double r_of(double q, double p, int theta) {
    return p * std::pow(q, theta - 1) * ((theta + 1) - theta * q) - 1.0;
}

Stability classify(double q, double p, int theta) {
    double deriv = f_prime(q, p, theta);
    if (std::abs(deriv - 1.0) < 1e-6) return Stability::marginal;
    return deriv < 1.0 ? Stability::stable : Stability::unstable;
}

}  // namespace

FixedPointReport fixed_points(double p, int theta, double tol) {
    if (theta < 1) throw std::runtime_error("fixed_points: theta must be >= 1");
    if (!(tol > 0.0)) throw std::runtime_error("fixed_points: tol must be > 0");
    FixedPointReport report;
    report.p = p;
    report.theta = theta;
    report.roots.push_back({0.0, classify(0.0, p, theta)});

    std::vector<double> roots;
    constexpr double step = 1e-4;
    const int cells = static_cast<int>(1.0 / step);
    double prev_q = step;
    double prev_v = r_of(prev_q, p, theta);
    if (std::abs(prev_v) < 1e-14) roots.push_back(prev_q);
    for (int i = 2; i <= cells; ++i) {
        double q = static_cast<double>(i) * step;
        double v = r_of(q, p, theta);
        if (std::abs(v) < 1e-14) {
            roots.push_back(q);
        } else if (prev_v * v < 0.0) {
            double lo = prev_q, hi = q, flo = prev_v;
            while (hi - lo > tol) {
                double mid = 0.5 * (lo + hi);
                double fm = r_of(mid, p, theta);
                if (fm == 0.0) { lo = hi = mid; break; }
                if ((fm < 0.0) == (flo < 0.0)) { lo = mid; flo = fm; }
                else hi = mid;
            }
            roots.push_back(0.5 * (lo + hi));
        }
        prev_q = q;
        prev_v = v;
    }

    // Tangency: r has a single interior critical point q* = (theta^2-1)/theta^2
    // (a maximum); a double root hides there without a sign change.
    if (theta >= 2) {
        double q_star = (static_cast<double>(theta) * theta - 1.0) /
                        (static_cast<double>(theta) * theta);
        if (std::abs(r_of(q_star, p, theta)) < 1e-9) {
            bool known = false;
            for (double q : roots)
                if (std::abs(q - q_star) < 1e-6) known = true;
            if (!known) roots.push_back(q_star);
        }
    }

    std::sort(roots.begin(), roots.end());
    for (double q : roots) report.roots.push_back({q, classify(q, p, theta)});
    report.has_nontrivial = !roots.empty();
    return report;
}

double critical_p(int theta, double tol) {
    if (theta < 2) throw std::runtime_error("critical_p: theta must be >= 2");
    if (!(tol > 0.0)) throw std::runtime_error("critical_p: tol must be > 0");

    // r(., p) rises to its unique interior max then falls, so ternary search
    // evaluates sup r exactly enough to decide existence.
    auto has_root = [theta](double p) {
        double lo = 1e-12, hi = 1.0;
        for (int it = 0; it < 200; ++it) {
            double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
            if (r_of(m1, p, theta) < r_of(m2, p, theta)) lo = m1;
            else hi = m2;
        }
        return r_of(0.5 * (lo + hi), p, theta) >= 0.0;
    };

    double lo = 0.0, hi = 1.0;  // no root at p=0; root exists at p=1
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (has_root(mid)) hi = mid;
        else lo = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace thcp::meanfield
