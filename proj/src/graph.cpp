#include "ckfractal/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ckfractal/repr.hpp"

namespace ckfractal {

DirectedGraph::DirectedGraph(std::size_t vertex_count, std::vector<std::pair<std::size_t, std::size_t>> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
    if (vertex_count_ == 0) throw Error(ErrorKind::NotSquare, "graph has no vertices");
    std::vector<bool> has_out(vertex_count_, false);
    for (const auto& [s, r] : edges_) {
        if (s >= vertex_count_ || r >= vertex_count_) {
            throw Error(ErrorKind::IndexOutOfRange, "edge endpoint outside 0.." + std::to_string(vertex_count_ - 1));
        }
        has_out[s] = true;
    }
    for (std::size_t v = 0; v < vertex_count_; ++v) {
        if (!has_out[v]) throw Error(ErrorKind::SinkFound, "vertex " + std::to_string(v) + " has no outgoing edge");
    }
}

std::vector<std::size_t> DirectedGraph::out_edges(std::size_t v) const {
    std::vector<std::size_t> out;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        if (edges_[e].first == v) out.push_back(e);
    }
    return out;
}

AdmissibilityMatrix edge_matrix(const DirectedGraph& g) {
    const std::size_t n = g.edge_count();
    std::vector<std::vector<int>> raw(n, std::vector<int>(n, 0));
    for (std::size_t e = 0; e < n; ++e) {
        for (std::size_t f = 0; f < n; ++f) raw[e][f] = g.range(e) == g.source(f) ? 1 : 0;
    }
    return AdmissibilityMatrix::validate(raw, false);
}

PerronData graph_perron(const DirectedGraph& g, double tol, std::size_t max_iter) {
    return perron_data(edge_matrix(g), tol, max_iter);
}

VertexMeasure vertex_measure(const DirectedGraph& g, std::size_t v0, const PerronData& pd) {
    if (v0 >= g.vertex_count()) throw Error(ErrorKind::IndexOutOfRange, "base vertex out of range");
    const std::size_t nv = g.vertex_count();
    VertexMeasure out{std::vector<double>(nv, 0.0), std::vector<bool>(nv, false), std::vector<std::vector<std::size_t>>(nv), 0.0};
    out.reachable[v0] = true;
    std::vector<std::size_t> layer{v0};
    while (!layer.empty()) {
        std::vector<std::size_t> next;
        for (std::size_t u : layer) {
            for (std::size_t e : g.out_edges(u)) {
                const std::size_t v = g.range(e);
                if (out.reachable[v] && std::find(next.begin(), next.end(), v) == next.end()) continue;
                std::vector<std::size_t> candidate = out.path[u];
                candidate.push_back(e);
                if (!out.reachable[v]) {
                    out.reachable[v] = true;
                    out.path[v] = std::move(candidate);
                    next.push_back(v);
                } else if (candidate < out.path[v]) {
                    out.path[v] = std::move(candidate);
                }
            }
        }
        std::sort(next.begin(), next.end());
        layer = std::move(next);
    }
    for (std::size_t v = 0; v < nv; ++v) {
        if (v == v0 || !out.reachable[v]) continue;
        double product = 1.0;
        for (std::size_t e : out.path[v]) product *= pd.p[e];
        out.value[v] = product;
        out.total += product;
    }
    return out;
}

GraphWaveletSet build_graph_wavelets(const DirectedGraph& g, std::size_t v0, std::size_t e0, const PerronData& pd) {
    if (v0 >= g.vertex_count() || e0 >= g.edge_count()) throw Error(ErrorKind::IndexOutOfRange, "base vertex or edge out of range");
    if (g.range(e0) != v0) {
        throw Error(ErrorKind::BaseEdgeMismatch, "edge " + std::to_string(e0) + " does not end at vertex " + std::to_string(v0));
    }
    if (pd.size() != g.edge_count()) throw Error(ErrorKind::MatrixMismatch, "eigen-data does not match the edge count");
    GraphWaveletSet gw{g, v0, e0, pd, {}};
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        std::vector<Digit> support;
        for (std::size_t f : g.out_edges(g.range(e))) support.push_back(static_cast<Digit>(f));
        gw.coeffs.push_back(weighted_complement_basis(pd.p, support));
    }
    return gw;
}

Complex psi_path(const GraphWaveletSet& gw, const std::vector<std::size_t>& path, const std::vector<std::size_t>& levels) {
    if (path.empty()) throw Error(ErrorKind::EmptyWord, "path must contain at least one edge");
    if (levels.size() != path.size()) throw Error(ErrorKind::LevelOutOfRange, "one level per edge is required");
    const DirectedGraph& g = gw.graph;
    Complex value = 1.0;
    std::size_t prev = gw.e0;
    for (std::size_t m = 0; m < path.size(); ++m) {
        const std::size_t e = path[m];
        if (e >= g.edge_count()) throw Error(ErrorKind::IndexOutOfRange, "edge " + std::to_string(e) + " out of range");
        if (g.source(e) != g.range(prev)) {
            throw Error(ErrorKind::NotComposable, "edge " + std::to_string(e) + " does not continue edge " + std::to_string(prev));
        }
        if (levels[m] < 1 || levels[m] > gw.count(prev)) {
            throw Error(ErrorKind::LevelOutOfRange,
                        "level " + std::to_string(levels[m]) + " exceeds d-1 = " + std::to_string(gw.count(prev)) +
                            " at edge " + std::to_string(prev));
        }
        value *= gw.coeffs[prev][levels[m] - 1][e];
        prev = e;
    }
    return value;
}

std::vector<std::vector<std::size_t>> paths_from(const DirectedGraph& g, std::size_t v0, std::size_t k, std::size_t cap) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> current;
    auto extend = [&](auto&& self, std::size_t v) -> void {
        if (current.size() == k) {
            if (out.size() >= cap) throw Error(ErrorKind::CapExceeded, "more than " + std::to_string(cap) + " paths");
            out.push_back(current);
            return;
        }
        for (std::size_t e : g.out_edges(v)) {
            current.push_back(e);
            self(self, g.range(e));
            current.pop_back();
        }
    };
    extend(extend, v0);
    return out;
}

Complex psi_vertex(const GraphWaveletSet& gw, std::size_t v, const std::vector<std::size_t>& levels, std::size_t cap) {
    const std::vector<std::vector<std::size_t>> all = paths_from(gw.graph, gw.v0, levels.size(), cap);
    const std::vector<std::size_t>* hit = nullptr;
    for (const auto& path : all) {
        if (gw.graph.range(path.back()) != v) continue;
        if (hit) throw Error(ErrorKind::MultiplePaths, "several length-" + std::to_string(levels.size()) + " paths reach vertex " + std::to_string(v));
        hit = &path;
    }
    return hit ? psi_path(gw, *hit, levels) : Complex{};
}

PathIntegralReport path_integrals(const GraphWaveletSet& gw, std::size_t k, std::size_t cap) {
    if (k == 0) throw Error(ErrorKind::LevelTooLow, "path length must be at least 1");
    const std::vector<std::vector<std::size_t>> paths = paths_from(gw.graph, gw.v0, k, cap);
    PathIntegralReport report;
    report.paths = paths.size();

    std::vector<std::size_t> widest(k, 0);
    for (const auto& path : paths) {
        std::size_t prev = gw.e0;
        for (std::size_t m = 0; m < k; ++m) {
            widest[m] = std::max(widest[m], gw.count(prev));
            prev = path[m];
        }
    }
    auto valid_along = [&](const std::vector<std::size_t>& tuple, const std::vector<std::size_t>& path) {
        std::size_t prev = gw.e0;
        for (std::size_t m = 0; m < k; ++m) {
            if (tuple[m] > gw.count(prev)) return false;
            prev = path[m];
        }
        return true;
    };

    std::size_t candidates = 1;
    for (std::size_t w : widest) {
        if (w == 0) return report;
        if (candidates > cap / w) throw Error(ErrorKind::CapExceeded, "more than " + std::to_string(cap) + " level tuples");
        candidates *= w;
    }
    std::vector<std::size_t> tuple(k, 1);
    for (std::size_t t = 0; t < candidates; ++t) {
        std::size_t valid = 0;
        for (const auto& path : paths) valid += valid_along(tuple, path) ? 1 : 0;
        if (valid == paths.size()) {
            report.tuples.push_back(tuple);
        } else if (valid > 0) {
            ++report.excluded;
        }
        for (std::size_t m = k; m-- > 0;) {
            if (++tuple[m] <= widest[m]) break;
            tuple[m] = 1;
        }
    }

    std::vector<double> weight(paths.size(), 1.0);
    for (std::size_t q = 0; q < paths.size(); ++q) {
        for (std::size_t e : paths[q]) weight[q] *= gw.perron.p[e];
    }
    std::vector<std::vector<Complex>> psi;
    for (const auto& lv : report.tuples) {
        std::vector<Complex> row;
        Complex mean{};
        for (std::size_t q = 0; q < paths.size(); ++q) {
            row.push_back(psi_path(gw, paths[q], lv));
            mean += row.back() * weight[q];
        }
        report.max_mean = std::max(report.max_mean, std::abs(mean));
        psi.push_back(std::move(row));
    }
    for (std::size_t s = 0; s < psi.size(); ++s) {
        for (std::size_t t = s; t < psi.size(); ++t) {
            Complex g{};
            for (std::size_t q = 0; q < paths.size(); ++q) g += std::conj(psi[s][q]) * psi[t][q] * weight[q];
            report.max_gram_dev = std::max(report.max_gram_dev, std::abs(g - (s == t ? Complex(1.0) : Complex{})));
        }
    }
    return report;
}

double vertex_projection_residual(const DirectedGraph& g, const PerronData& pd, std::size_t level) {
    const AdmissibilityMatrix& a = pd.matrix;
    double worst = 0.0;
    for (std::size_t u = 0; u < a.word_count(level); ++u) {
        const CylinderFunction basis = CylinderFunction::basis(a, level, u);
        for (std::size_t e = 0; e < g.edge_count(); ++e) {
            const CylinderFunction lhs = apply_S_star(static_cast<Digit>(e), apply_S(static_cast<Digit>(e), basis, pd), pd);
            CylinderFunction rhs(a, level);
            for (std::size_t f : g.out_edges(g.range(e))) rhs = rhs + range_projection(Word{static_cast<Digit>(f)}, basis, pd);
            worst = std::max(worst, max_abs_diff(lhs, rhs));
        }
    }
    return worst;
}

}  // namespace ckfractal
