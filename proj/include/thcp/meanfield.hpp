#pragma once

#include <vector>

namespace thcp::meanfield {

// One-step infection recursion on the (theta+2)-regular tree:
//   f(q) = p q^theta ((theta+1) - theta q).
double f(double q, double p, int theta);

// Analytic derivative f'(q) = p theta (theta+1) q^(theta-1) (1 - q).
double f_prime(double q, double p, int theta);

enum class Stability { stable, unstable, marginal };

struct FixedPoint {
    double q;
    Stability stability;
};

struct FixedPointReport {
    double p;
    int theta;
    std::vector<FixedPoint> roots;  // ascending in q; q = 0 always present
    bool has_nontrivial;            // any root q > 0
};

// All fixed points of f on [0,1]: sign-change scan on a 1e-4 grid plus
// bisection, with tangency roots recovered from the critical points of
// f(q)/q - 1. Stability from |f'(q)| with a 1e-6 marginal band around 1.
FixedPointReport fixed_points(double p, int theta, double tol = 1e-12);

// Infimum p for which f(q) = q has a root q > tol, by bisection on p.
// The existence test exploits that r(q) = f(q)/q - 1 has a single interior
// maximum, so a ternary search decides sign(max r) rigorously.
double critical_p(int theta, double tol = 1e-10);

}  // namespace thcp::meanfield
