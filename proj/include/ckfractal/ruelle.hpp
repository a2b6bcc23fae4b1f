#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "ckfractal/core.hpp"
#include "ckfractal/spectral.hpp"

namespace ckfractal {

/// W evaluated at a point given by its (finite) digit word and numeric value.
/// Evaluators must be re-entrant.
using PointwisePotential = std::function<double(const Point&)>;

/// (R_W f)(b) = sum_{i : A(i, b_0) = 1} W(i b) f(i b), at level max(levels, 2) - 1.
CylinderFunction ruelle_apply(const CylinderFunction& w, const CylinderFunction& f, const PerronData& pd);
/// (T_W f)(x) = N^delta W(x) f(sigma(x)); R_W is its adjoint when W is real.
CylinderFunction weighted_composition(const CylinderFunction& w, const CylinderFunction& f, const PerronData& pd);
/// max |<T_W e_u, e_v> - <e_u, R_W e_v>| over level-K basis pairs.
double ruelle_adjoint_residual(const CylinderFunction& w, const PerronData& pd, std::size_t level);

/// max_b |sum_{i : A(i, b_0) = 1} W(i b) - 1|.
double keane_residual(const CylinderFunction& w, const PerronData& pd);

/// |sum_{j : A(j, x_1) = 1} W(sigma_j x) - 1| at a single point.
double pointwise_keane_residual(const PointwisePotential& w, const AdmissibilityMatrix& a, const Point& x);

/// W(y) = (1 - cos(2 pi N y / N_1)) / N_1 with N_1 the column count of the
/// digit following y's leading digit: for y = sigma_j(x) that digit is x_1, so
/// all preimages of x share N_1. Needs |y.word| >= 2.
PointwisePotential trig_potential_pointwise(const AdmissibilityMatrix& a);
/// W(y) = 1 / N_1 with N_1 as above; a Keane potential for every matrix.
PointwisePotential uniform_keane_potential(const AdmissibilityMatrix& a);

/// Cylinder form: W sampled at the left endpoint x(a) of each level-k cylinder.
CylinderFunction sample_potential(const PointwisePotential& w, const AdmissibilityMatrix& a, std::size_t level);

struct TrigPotential {
    PointwisePotential pointwise;
    CylinderFunction sampled;
};

/// The trigonometric potential in both forms; sampled at level max(sample_level, 2).
TrigPotential trig_potential(const PerronData& pd, std::size_t sample_level);

/// sum_{j : A(j, x_1) = 1} exp(2 pi i N sigma_j(x) / N_1).
Complex trig_root_sum(const AdmissibilityMatrix& a, const Point& x);

/// True when every column support {j : A(j, c) = 1} hits each residue class
/// mod its size exactly once, which is what makes the trigonometric potential
/// satisfy the Keane condition.
bool trig_potential_is_keane(const AdmissibilityMatrix& a);

/// P_x(Lambda_{k,A^t}(a)) = A(a_1, x_1) W(sigma_{a_1} x) ... W(sigma_{a_k} ... sigma_{a_1} x).
double walk_measure(const Point& x, const PointwisePotential& w, const Word& path, const AdmissibilityMatrix& a);

/// All words of W_{k,A^t} in lexicographic order.
std::vector<Word> enumerate_transposed_words(const AdmissibilityMatrix& a, std::size_t k);

/// (word, P_x(word)) for every word of W_{k,A^t}.
std::vector<std::pair<Word, double>> walk_distribution(const Point& x, const PointwisePotential& w,
                                                       const AdmissibilityMatrix& a, std::size_t k);

/// max |P_x(a) - sum_j A^t(a_last, j) P_x(a j)| over a in W_{m,A^t}, 1 <= m < depth.
double walk_additivity_residual(const Point& x, const PointwisePotential& w, const AdmissibilityMatrix& a,
                                std::size_t depth);

/// sum over W_{k,A^t} of P_x; equals 1 for Keane potentials.
double walk_layer_mass(const Point& x, const PointwisePotential& w, const AdmissibilityMatrix& a, std::size_t k);

/// Truncation sum_{k=1}^{kmax} walk_layer_mass(k) of the harmonic series.
double harmonic_truncated(const Point& x, const PointwisePotential& w, const AdmissibilityMatrix& a, std::size_t kmax);

/// |sum_j A(j, x_1) W(sigma_j x) h_{kmax-1}(sigma_j x) - (h_kmax(x) - layer_1(x))|,
/// the shift re-indexing behind the fixed-point property of the series.
double harmonic_reindex_residual(const Point& x, const PointwisePotential& w, const AdmissibilityMatrix& a,
                                 std::size_t kmax);

}  // namespace ckfractal
