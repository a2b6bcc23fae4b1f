#pragma once

#include <vector>

#include "ckfractal/core.hpp"

namespace ckfractal {

/// Perron-Frobenius eigen-data of an irreducible admissibility matrix.
///
/// p is the right eigenvector of A and omega the right eigenvector of A^t,
/// both positive with unit sum. delta = log r / log N is the Hausdorff
/// dimension of Lambda_A, and the Hausdorff measure of a cylinder is
/// mu(Lambda_{k,A}(a)) = r^-(k-1) p_{a_k}.
struct PerronData {
    AdmissibilityMatrix matrix;
    double radius = 0.0;
    std::vector<double> p;
    std::vector<double> omega;
    double delta = 0.0;
    /// Largest of the two achieved eigen-residuals (infinity norm).
    double residual = 0.0;

    std::size_t size() const noexcept { return p.size(); }
    /// N^{delta/2}, the norm scale of each generator S_i.
    double half_scale() const;
    /// N^{-delta}, the constant Radon-Nikodym derivative of every branch.
    double branch_derivative() const;
};

inline constexpr double kDefaultTol = 1e-12;
inline constexpr std::size_t kDefaultMaxIter = 100000;

/// Power iteration from the uniform start vector. Strict matrices iterate A
/// itself; non-strict (but irreducible) matrices iterate A + I, which has the
/// same Perron vector and is primitive.
PerronData perron_data(const AdmissibilityMatrix& a, double tol = kDefaultTol, std::size_t max_iter = kDefaultMaxIter);

double cylinder_measure(const PerronData& pd, const Word& w);

/// Cylinder measures of all of W_{k,A}, canonical order.
std::vector<double> level_measures(const PerronData& pd, std::size_t k);

/// L^2(Lambda_A, mu_A) pairing, conjugate-linear in f.
Complex inner_product(const CylinderFunction& f, const CylinderFunction& g, const PerronData& pd);
double norm(const CylinderFunction& f, const PerronData& pd);

/// max_w |mu(w) - N^-delta sum_{i : A(i, w_0) = 1} mu(i w)| over W_{k,A}.
double self_similarity_residual(const PerronData& pd, std::size_t k);

}  // namespace ckfractal
