#pragma once

// Plain deterministic Nelder-Mead simplex minimizer for the 2- and 3-angle
// refinement steps.  Standard coefficients (reflect 1, expand 2, contract
// 1/2, shrink 1/2); converged when the spread of simplex values drops below
// value_tol.  No randomness, so identical inputs give identical results.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

namespace qubound::detail {

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

template <typename F>
NelderMeadResult nelder_mead(F&& f, const std::vector<double>& x0, double step, double value_tol,
                             int max_iter) {
    const std::size_t n = x0.size();
    std::vector<std::vector<double>> xs(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) xs[i + 1][i] += step;
    std::vector<double> fs(n + 1);
    for (std::size_t i = 0; i <= n; ++i) fs[i] = f(xs[i]);

    std::vector<std::size_t> order(n + 1);
    NelderMeadResult res;
    for (res.iterations = 0; res.iterations < max_iter; ++res.iterations) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
        const std::size_t best = order[0];
        const std::size_t second_worst = order[n - 1];
        const std::size_t worst = order[n];
        if (fs[worst] - fs[best] < value_tol) {
            res.converged = true;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t d = 0; d < n; ++d) centroid[d] += xs[i][d];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        const auto blend = [&](double coeff) {
            std::vector<double> x(n);
            for (std::size_t d = 0; d < n; ++d)
                x[d] = centroid[d] + coeff * (centroid[d] - xs[worst][d]);
            return x;
        };

        const std::vector<double> xr = blend(1.0);
        const double fr = f(xr);
        bool shrink = false;
        if (fr < fs[best]) {
            const std::vector<double> xe = blend(2.0);
            const double fe = f(xe);
            if (fe < fr) {
                xs[worst] = xe;
                fs[worst] = fe;
            } else {
                xs[worst] = xr;
                fs[worst] = fr;
            }
        } else if (fr < fs[second_worst]) {
            xs[worst] = xr;
            fs[worst] = fr;
        } else if (fr < fs[worst]) {
            const std::vector<double> xc = blend(0.5);  // outside contraction
            const double fc = f(xc);
            if (fc <= fr) {
                xs[worst] = xc;
                fs[worst] = fc;
            } else {
                shrink = true;
            }
        } else {
            const std::vector<double> xc = blend(-0.5);  // inside contraction
            const double fc = f(xc);
            if (fc < fs[worst]) {
                xs[worst] = xc;
                fs[worst] = fc;
            } else {
                shrink = true;
            }
        }
        if (shrink) {
            for (std::size_t i = 0; i <= n; ++i) {
                if (i == best) continue;
                for (std::size_t d = 0; d < n; ++d)
                    xs[i][d] = xs[best][d] + 0.5 * (xs[i][d] - xs[best][d]);
                fs[i] = f(xs[i]);
            }
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i)
        if (fs[i] < fs[best]) best = i;
    res.x = xs[best];
    res.value = fs[best];
    return res;
}

}  // namespace qubound::detail
