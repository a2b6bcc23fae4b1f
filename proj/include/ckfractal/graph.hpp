#pragma once

/**
 * @file graph.hpp
 * @brief Cuntz-Krieger data and path wavelets of a finite directed graph.
 *
 * Edges play the role of letters: the edge matrix has A(e, e') = 1 iff
 * r(e) = s(e'), so admissible words are edge paths.
 */

#include <utility>
#include <vector>

#include "ckfractal/core.hpp"
#include "ckfractal/spectral.hpp"
#include "ckfractal/wavelets.hpp"

namespace ckfractal {

class DirectedGraph {
public:
    /// Throws SinkFound when a vertex has no outgoing edge.
    DirectedGraph(std::size_t vertex_count, std::vector<std::pair<std::size_t, std::size_t>> edges);

    std::size_t vertex_count() const noexcept { return vertex_count_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    std::size_t source(std::size_t e) const { return edges_.at(e).first; }
    std::size_t range(std::size_t e) const { return edges_.at(e).second; }
    const std::vector<std::pair<std::size_t, std::size_t>>& edges() const noexcept { return edges_; }
    /// Edge ids leaving v, ascending.
    std::vector<std::size_t> out_edges(std::size_t v) const;

private:
    std::size_t vertex_count_;
    std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

AdmissibilityMatrix edge_matrix(const DirectedGraph& g);

/// Perron data of the edge matrix; throws Reducible if it is not irreducible.
PerronData graph_perron(const DirectedGraph& g, double tol = kDefaultTol, std::size_t max_iter = kDefaultMaxIter);

struct VertexMeasure {
    /// mu(v) = p_{e_1} ... p_{e_k} along the chosen shortest path; 0 at v0 and
    /// at unreachable vertices.
    std::vector<double> value;
    std::vector<bool> reachable;
    /// Chosen path per vertex (breadth first, lexicographically least edge ids).
    std::vector<std::vector<std::size_t>> path;
    double total = 0.0;
};

VertexMeasure vertex_measure(const DirectedGraph& g, std::size_t v0, const PerronData& pd);

struct GraphWaveletSet {
    DirectedGraph graph;
    std::size_t v0 = 0;
    std::size_t e0 = 0;
    PerronData perron;
    /// coeffs[e][l-1] = c^{l,e}, indexed by edge, zero off {e' : r(e) = s(e')}.
    std::vector<std::vector<CoefficientVector>> coeffs;

    /// d_e - 1.
    std::size_t count(std::size_t e) const { return coeffs.at(e).size(); }
};

/// Throws BaseEdgeMismatch unless r(e0) = v0.
GraphWaveletSet build_graph_wavelets(const DirectedGraph& g, std::size_t v0, std::size_t e0, const PerronData& pd);

/// Psi = c^{l_1,e_0}_{e_1} c^{l_2,e_1}_{e_2} ... c^{l_k,e_{k-1}}_{e_k}; levels are 1-based.
Complex psi_path(const GraphWaveletSet& gw, const std::vector<std::size_t>& path, const std::vector<std::size_t>& levels);

/// Edge paths of length k starting at v0, lexicographic.
std::vector<std::vector<std::size_t>> paths_from(const DirectedGraph& g, std::size_t v0, std::size_t k,
                                                 std::size_t cap);

/// Psi as a function of the end vertex r(e_k); throws MultiplePaths when more
/// than one length-k path reaches v. Returns 0 when none does.
Complex psi_vertex(const GraphWaveletSet& gw, std::size_t v, const std::vector<std::size_t>& levels, std::size_t cap);

struct PathIntegralReport {
    std::size_t paths = 0;
    /// Level tuples each of whose entries is valid along every path.
    std::vector<std::vector<std::size_t>> tuples;
    /// Tuples valid along some but not all paths.
    std::size_t excluded = 0;
    /// max |sum_paths Psi p_{e_1} ... p_{e_k}|.
    double max_mean = 0.0;
    /// max |G - I| over the Gram matrix of the tuples.
    double max_gram_dev = 0.0;
};

PathIntegralReport path_integrals(const GraphWaveletSet& gw, std::size_t k, std::size_t cap);

/// Largest coefficient of (P_{r(e)} - S_e* S_e) e_w over edges e and level-K
/// basis functions e_w, with P_v = sum_{s(e) = v} S_e S_e*.
double vertex_projection_residual(const DirectedGraph& g, const PerronData& pd, std::size_t level);

}  // namespace ckfractal
