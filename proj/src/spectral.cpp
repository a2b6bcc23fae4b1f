#include "ckfractal/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ckfractal {

double PerronData::half_scale() const { return std::pow(static_cast<double>(size()), delta / 2.0); }

double PerronData::branch_derivative() const { return std::pow(static_cast<double>(size()), -delta); }

namespace {

struct EigenResult {
    double radius;
    std::vector<double> vector;
    double residual;
};

EigenResult power_iterate(const AdmissibilityMatrix& a, bool transpose, bool shifted, double tol,
                          std::size_t max_iter) {
    const std::size_t n = a.size();
    auto entry = [&](std::size_t i, std::size_t j) {
        return static_cast<double>(transpose ? a(static_cast<Digit>(j), static_cast<Digit>(i))
                                             : a(static_cast<Digit>(i), static_cast<Digit>(j)));
    };
    std::vector<double> x(n, 1.0 / static_cast<double>(n));
    std::vector<double> ax(n);
    for (std::size_t iter = 0; iter <= max_iter; ++iter) {
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += entry(i, j) * x[j];
            ax[i] = s;
        }
        // sum(x) = 1, so sum(Ax) is the Rayleigh-type estimate of r.
        const double r = std::accumulate(ax.begin(), ax.end(), 0.0);
        double residual = 0.0;
        for (std::size_t i = 0; i < n; ++i) residual = std::max(residual, std::abs(ax[i] - r * x[i]));
        if (residual <= tol) return {r, x, residual};

        std::vector<double> next = ax;
        if (shifted) {
            for (std::size_t i = 0; i < n; ++i) next[i] += x[i];
        }
        const double total = std::accumulate(next.begin(), next.end(), 0.0);
        for (auto& v : next) v /= total;
        x = std::move(next);
    }
    throw Error(ErrorKind::NoConvergence, "power iteration did not converge in " + std::to_string(max_iter) + " steps");
}

}  // namespace

PerronData perron_data(const AdmissibilityMatrix& a, double tol, std::size_t max_iter) {
    if (!a.strict() && !is_irreducible(a.entries())) throw Error(ErrorKind::Reducible, "matrix is not irreducible");
    const bool shifted = !a.strict();
    EigenResult right = power_iterate(a, false, shifted, tol, max_iter);
    EigenResult left = power_iterate(a, true, shifted, tol, max_iter);

    PerronData pd{a, right.radius, std::move(right.vector), std::move(left.vector), 0.0,
                  std::max(right.residual, left.residual)};
    pd.delta = a.size() > 1 ? std::log(pd.radius) / std::log(static_cast<double>(a.size())) : 0.0;
    return pd;
}

double cylinder_measure(const PerronData& pd, const Word& w) {
    if (!pd.matrix.admissible(w)) throw Error(ErrorKind::InadmissibleWord, "word is not admissible");
    if (w.empty()) return 1.0;
    return std::pow(pd.radius, -static_cast<double>(w.size() - 1)) * pd.p[w.back()];
}

std::vector<double> level_measures(const PerronData& pd, std::size_t k) {
    if (k == 0) return {1.0};
    const AdmissibilityMatrix& a = pd.matrix;
    std::vector<double> out;
    out.reserve(a.word_count(k));
    const double scale = std::pow(pd.radius, -static_cast<double>(k - 1));
    if (k == 1) {
        for (std::size_t c = 0; c < a.size(); ++c) out.push_back(pd.p[c]);
        return out;
    }
    for (const Word& w : enumerate_words(a, k)) out.push_back(scale * pd.p[w.back()]);
    return out;
}

Complex inner_product(const CylinderFunction& f, const CylinderFunction& g, const PerronData& pd) {
    require_same_matrix(f, g);
    if (!(f.matrix() == pd.matrix)) throw Error(ErrorKind::MatrixMismatch, "function and eigen-data differ");
    const std::size_t level = std::max(f.level(), g.level());
    const CylinderFunction fr = f.refine(level);
    const CylinderFunction gr = g.refine(level);
    const std::vector<double> mu = level_measures(pd, level);
    Complex total{};
    for (std::size_t i = 0; i < mu.size(); ++i) total += std::conj(fr[i]) * gr[i] * mu[i];
    return total;
}

double norm(const CylinderFunction& f, const PerronData& pd) {
    if (!(f.matrix() == pd.matrix)) throw Error(ErrorKind::MatrixMismatch, "function and eigen-data differ");
    const std::vector<double> mu = level_measures(pd, f.level());
    double total = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) total += std::norm(f[i]) * mu[i];
    return std::sqrt(total);
}

double self_similarity_residual(const PerronData& pd, std::size_t k) {
    const AdmissibilityMatrix& a = pd.matrix;
    const double derivative = pd.branch_derivative();
    double worst = 0.0;
    for (const Word& w : enumerate_words(a, k)) {
        // Only the branch of w_0 maps into C_w; its preimage is C_{shift w}, or D_{w_0} at length one.
        double preimage = 0.0;
        if (w.size() == 1) {
            for (Digit j = 0; j < a.size(); ++j) {
                if (a(w.front(), j)) preimage += pd.p[j];
            }
        } else {
            preimage = cylinder_measure(pd, shift(w));
        }
        worst = std::max(worst, std::abs(cylinder_measure(pd, w) - derivative * preimage));
    }
    return worst;
}

}  // namespace ckfractal
