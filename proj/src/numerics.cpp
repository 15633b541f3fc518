#include "specsense/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace specsense {

namespace {

inline double phi_integrand(double h, double t, double a, double b) {
    return std::exp(-h - t / (a + b * h));
}

double adapt(double t, double a, double b, double lo, double hi, double flo, double fmid,
             double fhi, double whole, double tol, int depth, int max_depth, int& evals,
             double& err_acc, bool& converged) {
    double mid = 0.5 * (lo + hi);
    double lm = 0.5 * (lo + mid);
    double rm = 0.5 * (mid + hi);
    double flm = phi_integrand(lm, t, a, b);
    double frm = phi_integrand(rm, t, a, b);
    evals += 2;
    double h12 = (hi - lo) / 12.0;
    double left = h12 * (flo + 4.0 * flm + fmid);
    double right = h12 * (fmid + 4.0 * frm + fhi);
    double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol || depth >= max_depth) {
        if (std::abs(delta) > 15.0 * tol) converged = false;
        err_acc += std::abs(delta) / 15.0;
        return left + right + delta / 15.0;
    }
    return adapt(t, a, b, lo, mid, flo, flm, fmid, left, 0.5 * tol, depth + 1, max_depth,
                 evals, err_acc, converged) +
           adapt(t, a, b, mid, hi, fmid, frm, fhi, right, 0.5 * tol, depth + 1, max_depth,
                 evals, err_acc, converged);
}

} // namespace

PhiResult phi_detailed(double t, double a, double b, const QuadratureConfig& cfg) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("phi: t must be finite and >= 0");
    if (!(a > 0.0)) throw std::invalid_argument("phi: a must be > 0");
    if (!(b >= 0.0)) throw std::invalid_argument("phi: b must be >= 0");
    if (t == 0.0) return {1.0, 0.0, 0};
    if (b == 0.0) return {std::exp(-t / a), 0.0, 0};

    // Truncate where the exp(-h) envelope is an order below the tolerance,
    // then bound the remainder by sandwiching the t-dependent factor.
    double h_max = -std::log(std::min(cfg.abs_tol, 1e-8) / 10.0);
    double flo = phi_integrand(0.0, t, a, b);
    double fmid = phi_integrand(0.5 * h_max, t, a, b);
    double fhi = phi_integrand(h_max, t, a, b);
    int evals = 3;
    double err_acc = 0.0;
    bool converged = true;
    double whole = h_max / 6.0 * (flo + 4.0 * fmid + fhi);
    double value = adapt(t, a, b, 0.0, h_max, flo, fmid, fhi, whole, cfg.abs_tol, 0,
                         cfg.max_depth, evals, err_acc, converged);

    double env = std::exp(-h_max);
    double tail_lo = env * std::exp(-t / (a + b * h_max));
    double tail_mid = 0.5 * (tail_lo + env);
    value += tail_mid;
    double bound = err_acc + 0.5 * (env - tail_lo);

    if (!converged)
        throw numeric_error("phi: quadrature failed to converge at depth limit", value);
    return {value, bound, evals};
}

double phi(double t, double a, double b, const QuadratureConfig& cfg) {
    return phi_detailed(t, a, b, cfg).value;
}

double erlang_survival(int n, double x) {
    if (n < 1) throw std::invalid_argument("erlang_survival: n must be >= 1");
    if (!(x >= 0.0)) throw std::invalid_argument("erlang_survival: x must be >= 0");
    if (n == 1) return std::exp(-x);
    if (x == 0.0) return 1.0;
    if (x < 700.0) {
        double term = std::exp(-x);
        double sum = term;
        for (int k = 1; k < n; ++k) {
            term *= x / static_cast<double>(k);
            sum += term;
        }
        return std::min(sum, 1.0);
    }
    // exp(-x) underflows; accumulate the partial sums in the log domain.
    double lx = std::log(x);
    double m = -x;
    for (int k = 0; k < n; ++k)
        m = std::max(m, k * lx - std::lgamma(k + 1.0));
    double s = 0.0;
    for (int k = 0; k < n; ++k)
        s += std::exp(k * lx - std::lgamma(k + 1.0) - m);
    return std::exp(m + std::log(s) - x);
}

double binomial_tail_exceeds_half(int n, double p) {
    if (n < 1) throw std::invalid_argument("binomial_tail_exceeds_half: n must be >= 1");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("binomial_tail_exceeds_half: p must lie in [0, 1]");
    if (p == 0.0) return 0.0;
    if (p == 1.0) return 1.0;
    // Sum the upper tail directly; going through 1 - CDF would cancel badly
    // when the tail is small.
    int k0 = n / 2 + 1;
    double lp = std::log(p);
    double lq = std::log1p(-p);
    double lgn = std::lgamma(n + 1.0);
    double sum = 0.0;
    for (int k = n; k >= k0; --k)
        sum += std::exp(lgn - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) + k * lp +
                        (n - k) * lq);
    return std::min(sum, 1.0);
}

double solve_monotone_decreasing(const std::function<double(double)>& f, double target,
                                 double lo, double hi, double tol) {
    if (!(lo < hi)) throw std::invalid_argument("solve_monotone_decreasing: need lo < hi");
    if (!(tol > 0.0)) throw std::invalid_argument("solve_monotone_decreasing: tol must be > 0");
    double flo = f(lo);
    double fhi = f(hi);
    if (!std::isfinite(flo) || !std::isfinite(fhi))
        throw numeric_error("solve_monotone_decreasing: non-finite endpoint value",
                            std::isfinite(flo) ? hi : lo);
    if (flo < target || fhi > target)
        throw bracket_error("solve_monotone_decreasing: bracket does not enclose target",
                            flo, fhi);
    for (int it = 0; it < 200 && (hi - lo) > tol; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (!std::isfinite(fm))
            throw numeric_error("solve_monotone_decreasing: non-finite value inside bracket",
                                mid);
        if (fm >= target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace specsense
