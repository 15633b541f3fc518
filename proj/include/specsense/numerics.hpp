#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace specsense {

// Thrown when an iterative routine cannot reach its accuracy target; carries
// the best value computed so far.
class numeric_error : public std::runtime_error {
public:
    numeric_error(const std::string& what, double partial_value)
        : std::runtime_error(what), partial(partial_value) {}
    double partial;
};

// Thrown when a root bracket does not enclose the target; carries the
// function values at both endpoints.
class bracket_error : public std::runtime_error {
public:
    bracket_error(const std::string& what, double f_lo_, double f_hi_)
        : std::runtime_error(what), f_lo(f_lo_), f_hi(f_hi_) {}
    double f_lo;
    double f_hi;
};

struct QuadratureConfig {
    double abs_tol = 1e-12;
    int max_depth = 48;
};

struct PhiResult {
    double value = 0.0;
    double error_bound = 0.0; // quadrature estimate plus tail truncation bound
    int evaluations = 0;
};

// phi(t, a, b) = integral over h in [0, inf) of exp(-h - t / (a + b*h)) dh.
// Governs exceedance probabilities of an exponential statistic whose mean is
// randomly scaled by 1 + (b/a) * Exp(1). Requires t >= 0, a > 0, b >= 0.
// phi(t, a, 0) reduces exactly to exp(-t / a).
PhiResult phi_detailed(double t, double a, double b, const QuadratureConfig& cfg = {});
double phi(double t, double a, double b, const QuadratureConfig& cfg = {});

// Survival function of the Erlang(n, 1) distribution:
// P(sum of n unit-mean exponentials > x) = exp(-x) * sum_{k<n} x^k / k!.
// Requires n >= 1, x >= 0. n == 1 returns exp(-x) exactly.
double erlang_survival(int n, double x);

// P(Binomial(n, p) > floor(n / 2)): strict majority out of n voters.
// Requires n >= 1, p in [0, 1].
double binomial_tail_exceeds_half(int n, double p);

// Bisection for f(x) = target with f continuous and strictly decreasing on
// [lo, hi]. Throws bracket_error unless f(lo) >= target >= f(hi). Throws
// numeric_error if f evaluates to a non-finite value inside the bracket.
double solve_monotone_decreasing(const std::function<double(double)>& f, double target,
                                 double lo, double hi, double tol = 1e-12);

} // namespace specsense
