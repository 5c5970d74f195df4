#ifndef DVLIGHT_DETAIL_LEVMAR_HPP
#define DVLIGHT_DETAIL_LEVMAR_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <span>
#include <utility>
#include <vector>

namespace dvlight::detail {

struct LevmarResult {
    std::vector<double> params;
    bool converged = false;
};

// Damped iterative least squares on weighted 1-D data: normal equations with
// adaptive damping. Deterministic: fixed damping schedule, no restarts.
// Stops on relative parameter change < 1e-8 or after 200 iterations; on
// non-convergence the best iterate is returned with converged = false.
template <typename Model>
LevmarResult levmar_fit(const Model& model, std::vector<double> p,
                        std::span<const double> x, std::span<const double> y,
                        std::span<const double> w) {
    const int np = static_cast<int>(p.size());
    const std::size_t n = x.size();

    auto chi2 = [&](const std::vector<double>& q) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = y[i] - model.value(x[i], q);
            s += w[i] * r * r;
        }
        return s;
    };

    double lambda = 1e-3;
    double best = chi2(p);
    bool converged = false;

    std::vector<double> grad(np);
    for (int iter = 0; iter < 200; ++iter) {
        Eigen::MatrixXd jtj = Eigen::MatrixXd::Zero(np, np);
        Eigen::VectorXd jtr = Eigen::VectorXd::Zero(np);
        for (std::size_t i = 0; i < n; ++i) {
            model.gradient(x[i], p, grad);
            const double r = y[i] - model.value(x[i], p);
            for (int a = 0; a < np; ++a) {
                jtr(a) += w[i] * grad[a] * r;
                for (int b = 0; b <= a; ++b)
                    jtj(a, b) += w[i] * grad[a] * grad[b];
            }
        }
        for (int a = 0; a < np; ++a)
            for (int b = a + 1; b < np; ++b)
                jtj(a, b) = jtj(b, a);

        bool stepped = false;
        for (int attempt = 0; attempt < 30 && !stepped; ++attempt) {
            Eigen::MatrixXd damped = jtj;
            for (int a = 0; a < np; ++a)
                damped(a, a) += lambda * std::max(jtj(a, a), 1e-300);
            Eigen::VectorXd delta = damped.ldlt().solve(jtr);
            if (!delta.allFinite()) {
                lambda *= 10.0;
                continue;
            }
            std::vector<double> trial(p);
            for (int a = 0; a < np; ++a)
                trial[a] += delta(a);
            const double c = chi2(trial);
            if (c <= best) {
                double rel = 0.0;
                for (int a = 0; a < np; ++a) {
                    const double scale = std::max(std::abs(p[a]), 1e-300);
                    rel = std::max(rel, std::abs(delta(a)) / scale);
                }
                p = std::move(trial);
                best = c;
                lambda = std::max(lambda * 0.1, 1e-14);
                stepped = true;
                if (rel < 1e-8)
                    converged = true;
            } else {
                lambda *= 10.0;
            }
        }
        if (converged || !stepped)
            break;
    }
    return {std::move(p), converged};
}

} // namespace dvlight::detail

#endif
