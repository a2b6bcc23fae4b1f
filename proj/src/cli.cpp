#include "ckfractal/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "ckfractal/core.hpp"
#include "ckfractal/graph.hpp"
#include "ckfractal/io.hpp"
#include "ckfractal/repr.hpp"
#include "ckfractal/ruelle.hpp"
#include "ckfractal/sierpinski.hpp"
#include "ckfractal/spectral.hpp"
#include "ckfractal/wavelets.hpp"

namespace ckfractal::cli {

namespace {

struct Options {
    std::string matrix;
    bool non_strict = false;
    double tol = kDefaultTol;
    std::size_t max_iter = kDefaultMaxIter;
    std::size_t cap = kDefaultCap;
    std::string signal;
    std::string coeffs;
    std::string potential;
    std::string compare;
    std::string graph;
    std::string out;
    std::string op = "S";
    std::string word;
    std::string point;
    std::string potential_kind = "trig";
    std::string set;
    std::size_t level = 1;
    std::size_t out_level = 0;
    std::size_t depth = 1;
    std::size_t res = 0;
    std::size_t samples = 50;
    std::size_t sample_level = 5;
    std::size_t v0 = 0;
    std::size_t e0 = 0;
    double t_min = -20.0;
    double t_max = 20.0;
};

std::string num(double x) { return format_number(x); }

void kv(std::ostream& os, const std::string& key, const std::string& value) { os << key << " = " << value << '\n'; }
void kv(std::ostream& os, const std::string& key, double value) { kv(os, key, num(value)); }
void kv_count(std::ostream& os, const std::string& key, std::size_t value) { kv(os, key, std::to_string(value)); }

AdmissibilityMatrix load(const Options& o) {
    if (o.matrix.empty()) throw Error(ErrorKind::Usage, "--matrix is required");
    return AdmissibilityMatrix::validate(load_matrix(o.matrix), !o.non_strict);
}

PerronData perron_of(const Options& o) { return perron_data(load(o), o.tol, o.max_iter); }

CylinderFunction signal_of(const Options& o, const AdmissibilityMatrix& a) {
    if (o.signal.empty()) throw Error(ErrorKind::Usage, "--signal is required");
    return load_signal(o.signal, a);
}

// Runs `body` against the --out file when given, otherwise against stdout.
void emit(const Options& o, std::ostream& out, const std::function<void(std::ostream&)>& body) {
    if (o.out.empty()) {
        body(out);
        return;
    }
    std::ofstream file(o.out);
    if (!file) throw Error(ErrorKind::Parse, "cannot write '" + o.out + "'");
    body(file);
}

void require_cap(std::size_t count, const Options& o, const char* what) {
    if (count > o.cap) {
        throw Error(ErrorKind::CapExceeded, std::to_string(count) + " " + what + " exceed the cap of " + std::to_string(o.cap));
    }
}

Point point_of(const Options& o, const AdmissibilityMatrix& a) {
    if (o.point.empty()) throw Error(ErrorKind::Usage, "--point is required");
    return nadic_value(a, parse_word(o.point, a.size()));
}

PointwisePotential potential_of(const Options& o, const PerronData& pd) {
    if (o.potential_kind == "trig") return trig_potential_pointwise(pd.matrix);
    if (o.potential_kind == "uniform") return uniform_keane_potential(pd.matrix);
    if (o.potential_kind == "constant") {
        const double c = pd.branch_derivative();
        return [c](const Point&) { return c; };
    }
    throw Error(ErrorKind::Usage, "unknown potential '" + o.potential_kind + "' (trig, uniform, constant)");
}

void cmd_perron(const Options& o, std::ostream& out) {
    const PerronData pd = perron_of(o);
    kv_count(out, "n", pd.size());
    kv(out, "radius", pd.radius);
    kv(out, "delta", pd.delta);
    for (std::size_t i = 0; i < pd.size(); ++i) kv(out, "p[" + std::to_string(i) + "]", pd.p[i]);
    for (std::size_t i = 0; i < pd.size(); ++i) kv(out, "omega[" + std::to_string(i) + "]", pd.omega[i]);
    kv(out, "residual", pd.residual);
}

void cmd_words(const Options& o, std::ostream& out) {
    const AdmissibilityMatrix a = load(o);
    const std::size_t count = a.word_count(o.level);
    require_cap(count, o, "words");
    kv_count(out, "count", count);
    for (const Word& w : enumerate_words(a, o.level)) out << word_to_string(w, a.size()) << '\n';
}

void cmd_measure(const Options& o, std::ostream& out) {
    const PerronData pd = perron_of(o);
    const AdmissibilityMatrix& a = pd.matrix;
    require_cap(a.word_count(o.level), o, "words");
    const std::vector<Word> words = enumerate_words(a, o.level);
    if (o.signal.empty()) {
        const std::vector<double> mu = level_measures(pd, o.level);
        for (std::size_t t = 0; t < words.size(); ++t) out << word_to_string(words[t], a.size()) << ' ' << num(mu[t]) << '\n';
        return;
    }
    const CylinderFunction f = signal_of(o, a);
    if (!o.set.empty()) {
        std::vector<Word> members;
        std::istringstream ss(o.set);
        for (std::string t; std::getline(ss, t, ',');) members.push_back(parse_word(t, a.size()));
        const SpectralMass m = measure_mu_f(f, make_borel_set(a, o.level, members), pd);
        kv(out, "mu_f", m.value);
        kv(out, "unit_norm", m.unit_norm ? "true" : "false");
        if (!m.unit_norm) out << "# warning: the signal is not a unit vector\n";
        return;
    }
    const std::vector<double> masses = cylinder_masses(f, o.level, pd);
    const bool unit = std::abs(norm(f, pd) - 1.0) <= 1e-9;
    kv(out, "unit_norm", unit ? "true" : "false");
    if (!unit) out << "# warning: the signal is not a unit vector\n";
    for (std::size_t t = 0; t < words.size(); ++t) out << word_to_string(words[t], a.size()) << ' ' << num(masses[t]) << '\n';
}

void cmd_op_apply(const Options& o, std::ostream& out) {
    const PerronData pd = perron_of(o);
    const CylinderFunction f = signal_of(o, pd.matrix);
    const Word w = o.word.empty() ? Word{} : parse_word(o.word, pd.size());
    auto letter = [&]() {
        if (w.size() != 1) throw Error(ErrorKind::Usage, "--word must be a single letter for " + o.op);
        return w.front();
    };
    CylinderFunction g = f;
    if (o.op == "S") g = apply_S(letter(), f, pd);
    else if (o.op == "Sstar") g = apply_S_star(letter(), f, pd);
    else if (o.op == "Sword") g = apply_S_word(w, f, pd, false);
    else if (o.op == "Sword-adjoint") g = apply_S_word(w, f, pd, true);
    else if (o.op == "proj") g = range_projection(w, f, pd);
    else if (o.op == "shift") g = compose_shift(f);
    else if (o.op == "pf") g = pf_operator(f, pd);
    else throw Error(ErrorKind::Usage, "unknown --op '" + o.op + "' (S, Sstar, Sword, Sword-adjoint, proj, shift, pf)");
    emit(o, out, [&](std::ostream& os) { write_signal(os, g); });
}

void cmd_op_check(const Options& o, std::ostream& out) {
    const PerronData pd = perron_of(o);
    kv_count(out, "level", o.level);
    kv(out, "ck_residual", ck_relations_residual(pd, o.level));
    kv(out, "projection_residual", projection_residual(pd, o.level));
    kv(out, "pf_adjoint_residual", pf_adjoint_residual(pd, o.level));
}

void cmd_fourier(const Options& o, std::ostream& out) {
    const PerronData pd = perron_of(o);
    const CylinderFunction f = signal_of(o, pd.matrix);
    if (o.samples == 0) throw Error(ErrorKind::Usage, "--samples must be positive");
    out << "t,re,im,tail_bound\n";
    for (std::size_t s = 0; s < o.samples; ++s) {
        const double t = o.samples == 1 ? o.t_min : o.t_min + (o.t_max - o.t_min) * static_cast<double>(s) / static_cast<double>(o.samples - 1);
        const Complex v = fourier_approx(f, t, o.level, pd);
        out << num(t) << ',' << num(v.real()) << ',' << num(v.imag()) << ',' << num(fourier_tail_bound(t, o.level, pd.size())) << '\n';
    }
}

void cmd_kms(const Options& o, std::ostream& out) {
    const PerronData pd = perron_of(o);
    kv(out, "n_delta", std::pow(static_cast<double>(pd.size()), pd.delta));
    for (Digit i = 0; i < pd.size(); ++i) kv(out, "ratio[" + std::to_string(i) + "]", kms_ratio(i, pd));
    const CylinderFunction h = pf_fixed_point(pd);
    kv(out, "pf_fixed_residual", norm(pf_operator(h, pd) - h, pd));
}

void cmd_wavelets_build(const Options& o, std::ostream& out) {
    const PerronData pd = perron_of(o);
    const MotherWaveletSet mw(pd);
    kv_count(out, "mother_count", mw.total_count());
    for (const MotherWavelet& m : mw.all()) {
        for (Digit j = 0; j < pd.size(); ++j) {
            if (!pd.matrix(m.letter, j)) continue;
            out << "c " << m.letter << ' ' << m.index << ' ' << j << ' ' << num(m.coeffs[j].real()) << ' ' << num(m.coeffs[j].imag()) << '\n';
        }
    }
    if (o.level >= 1) {
        kv_count(out, "basis_size", basis_labels(mw, o.level).size());
        kv_count(out, "word_count", pd.matrix.word_count(o.level));
        kv(out, "gram_residual", basis_gram_residual(mw, o.level));
    }
}

void cmd_wavelets_analyze(const Options& o, std::ostream& out) {
    const PerronData pd = perron_of(o);
    const MotherWaveletSet mw(pd);
    const WaveletCoefficients c = analyze(signal_of(o, pd.matrix), mw);
    emit(o, out, [&](std::ostream& os) { write_coefficients(os, c); });
}

void cmd_wavelets_synthesize(const Options& o, std::ostream& out) {
    const PerronData pd = perron_of(o);
    const MotherWaveletSet mw(pd);
    if (o.coeffs.empty()) throw Error(ErrorKind::Usage, "--coeffs is required");
    const WaveletCoefficients c = load_coefficients(o.coeffs);
    if (c.n != pd.size()) throw Error(ErrorKind::MatrixMismatch, "coefficient alphabet differs from the matrix");
    const std::size_t level = o.out_level > 0 ? o.out_level : std::max<std::size_t>(c.level, 1);
    const CylinderFunction f = synthesize(c, mw, level);
    emit(o, out, [&](std::ostream& os) { write_signal(os, f); });
    if (!o.compare.empty()) {
        kv(out, "roundtrip_max_error", max_abs_diff(f, load_signal(o.compare, pd.matrix)));
    }
}

void cmd_ruelle_apply(const Options& o, std::ostream& out) {
    const PerronData pd = perron_of(o);
    if (o.potential.empty()) throw Error(ErrorKind::Usage, "--potential is required");
    const CylinderFunction w = load_signal(o.potential, pd.matrix);
    const CylinderFunction g = ruelle_apply(w, signal_of(o, pd.matrix), pd);
    emit(o, out, [&](std::ostream& os) { write_signal(os, g); });
}

void cmd_ruelle_keane(const Options& o, std::ostream& out) {
    const PerronData pd = perron_of(o);
    if (o.potential.empty()) throw Error(ErrorKind::Usage, "--potential is required");
    kv(out, "keane_residual", keane_residual(load_signal(o.potential, pd.matrix), pd));
}

void cmd_ruelle_trig(const Options& o, std::ostream& out) {
    const PerronData pd = perron_of(o);
    const AdmissibilityMatrix& a = pd.matrix;
    const TrigPotential trig = trig_potential(pd, o.level);
    require_cap(a.word_count(o.sample_level), o, "sample points");
    double pointwise = 0.0, roots = 0.0, lowest = 1.0;
    std::size_t count = 0;
    for (const Word& w : enumerate_words(a, o.sample_level)) {
        if (count == o.samples) break;
        const Point x = nadic_value(a, w);
        pointwise = std::max(pointwise, pointwise_keane_residual(trig.pointwise, a, x));
        roots = std::max(roots, std::abs(trig_root_sum(a, x)));
        ++count;
    }
    for (Complex c : trig.sampled.coeffs()) lowest = std::min(lowest, c.real());
    kv(out, "keane_condition", trig_potential_is_keane(a) ? "true" : "false");
    kv_count(out, "sample_points", count);
    kv(out, "pointwise_keane_residual", pointwise);
    kv(out, "root_sum_max", roots);
    kv_count(out, "sample_level", trig.sampled.level());
    kv(out, "sampled_keane_residual", keane_residual(trig.sampled, pd));
    kv(out, "min_value", lowest);
    if (!o.out.empty()) emit(o, out, [&](std::ostream& os) { write_signal(os, trig.sampled); });
}

void cmd_walk(const Options& o, std::ostream& out) {
    const PerronData pd = perron_of(o);
    const AdmissibilityMatrix& a = pd.matrix;
    const Point x = point_of(o, a);
    const PointwisePotential w = potential_of(o, pd);
    const std::vector<Word> paths = enumerate_transposed_words(a, o.depth);
    require_cap(paths.size(), o, "paths");
    double mass = 0.0;
    for (const auto& [path, p] : walk_distribution(x, w, a, o.depth)) {
        out << word_to_string(path, a.size()) << ' ' << num(p) << '\n';
        mass += p;
    }
    kv(out, "layer_mass", mass);
    kv(out, "additivity_residual", walk_additivity_residual(x, w, a, o.depth));
    kv(out, "harmonic_truncated", harmonic_truncated(x, w, a, o.depth));
}

void cmd_sierpinski_info(const Options& o, std::ostream& out) {
    const SierpinskiSpec spec = sierpinski_spec(load(o));
    kv_count(out, "N", spec.matrix.size());
    kv_count(out, "D", spec.D);
    kv(out, "planar_dimension", spec.planar_dimension);
    kv(out, "similarity_dimension", spec.similarity_dimension);
    if (spec.planar_dimension != spec.similarity_dimension) {
        out << "# planar_dimension uses log D / (2 log N); the self-similar value is log D / log N\n";
    }
    for (std::size_t t = 0; t < spec.D; ++t) {
        out << "letter " << t << ' ' << spec.letter_map[t].first << ' ' << spec.letter_map[t].second << '\n';
    }
}

void cmd_sierpinski_cells(const Options& o, std::ostream& out) {
    const SierpinskiSpec spec = sierpinski_spec(load(o));
    const std::size_t n = spec.matrix.size();
    const std::vector<SierpinskiCell> all = cells(spec, o.depth, o.cap);
    kv_count(out, "count", all.size());
    for (const auto& c : all) out << word_to_string(c.xword, n) << ' ' << word_to_string(c.yword, n) << '\n';
}

void cmd_sierpinski_render(const Options& o, std::ostream& out) {
    const SierpinskiSpec spec = sierpinski_spec(load(o));
    std::size_t res = o.res;
    if (res == 0) {
        res = 1;
        for (std::size_t m = 0; m < o.depth; ++m) res *= spec.matrix.size();
    }
    const Raster r = render(spec, o.depth, res);
    emit(o, out, [&](std::ostream& os) { write_pgm(os, r); });
    if (!o.out.empty()) {
        kv_count(out, "dark_pixels", r.dark_count());
        kv_count(out, "total_pixels", r.pixels.size());
        kv(out, "dark_fraction", static_cast<double>(r.dark_count()) / static_cast<double>(r.pixels.size()));
    }
}

void cmd_sierpinski_induced(const Options& o, std::ostream& out) {
    const SierpinskiSpec spec = sierpinski_spec(load(o));
    const AdmissibilityMatrix t = induced_matrix(spec);
    emit(o, out, [&](std::ostream& os) { write_matrix(os, t); });
}

DirectedGraph graph_of(const Options& o) {
    if (o.graph.empty()) throw Error(ErrorKind::Usage, "--graph is required");
    return load_graph(o.graph);
}

void cmd_graph_info(const Options& o, std::ostream& out) {
    const DirectedGraph g = graph_of(o);
    const PerronData pd = graph_perron(g, o.tol, o.max_iter);
    kv_count(out, "vertices", g.vertex_count());
    kv_count(out, "edges", g.edge_count());
    kv(out, "radius", pd.radius);
    for (std::size_t e = 0; e < g.edge_count(); ++e) kv(out, "p[" + std::to_string(e) + "]", pd.p[e]);
    const VertexMeasure vm = vertex_measure(g, o.v0, pd);
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        kv(out, "mu[" + std::to_string(v) + "]", vm.value[v]);
        if (!vm.reachable[v]) out << "# vertex " << v << " is not reachable from " << o.v0 << '\n';
    }
    kv(out, "mu_total", vm.total);
    out << "# edge matrix\n";
    write_matrix(out, pd.matrix);
}

void cmd_graph_wavelets(const Options& o, std::ostream& out) {
    const DirectedGraph g = graph_of(o);
    const PerronData pd = graph_perron(g, o.tol, o.max_iter);
    const GraphWaveletSet gw = build_graph_wavelets(g, o.v0, o.e0, pd);
    const PathIntegralReport report = path_integrals(gw, o.depth, o.cap);
    const std::vector<std::vector<std::size_t>> paths = paths_from(g, o.v0, o.depth, o.cap);
    auto join = [](const std::vector<std::size_t>& v) {
        std::string s;
        for (std::size_t t = 0; t < v.size(); ++t) s += (t ? "," : "") + std::to_string(v[t]);
        return s;
    };
    for (const auto& levels : report.tuples) {
        for (const auto& path : paths) {
            const Complex v = psi_path(gw, path, levels);
            out << join(path) << ' ' << join(levels) << ' ' << num(v.real()) << ' ' << num(v.imag()) << '\n';
        }
    }
    kv_count(out, "paths", report.paths);
    kv_count(out, "tuples", report.tuples.size());
    kv_count(out, "excluded_tuples", report.excluded);
    kv(out, "max_mean", report.max_mean);
    kv(out, "max_gram_dev", report.max_gram_dev);
}

int exit_code(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Usage: return kUsage;
    case ErrorKind::CapExceeded: return kCapExceeded;
    case ErrorKind::NoConvergence: return kNoConvergence;
    default: return kData;
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Cuntz-Krieger fractal toolkit", "ckfractal"};
    app.require_subcommand(1, 1);

    std::function<void(std::ostream&)> action;
    auto bind = [&](CLI::App* cmd, std::function<void(const Options&, std::ostream&)> fn) {
        cmd->callback([&action, &o, fn]() { action = [&o, fn](std::ostream& os) { fn(o, os); }; });
    };
    auto matrix_opts = [&](CLI::App* cmd) {
        cmd->add_option("--matrix", o.matrix, "Admissibility matrix file")->required();
        cmd->add_flag("--non-strict", o.non_strict, "Skip the unit-diagonal and irreducibility checks");
        cmd->add_option("--tol", o.tol, "Power-iteration tolerance");
        cmd->add_option("--max-iter", o.max_iter, "Power-iteration limit");
        cmd->add_option("--cap", o.cap, "Enumeration cap");
    };
    auto out_opt = [&](CLI::App* cmd) { cmd->add_option("--out", o.out, "Output file (default stdout)"); };

    auto* perron = app.add_subcommand("perron", "Perron-Frobenius data and dimension");
    matrix_opts(perron);
    bind(perron, cmd_perron);

    auto* words = app.add_subcommand("words", "List W_{k,A}");
    matrix_opts(words);
    words->add_option("--length", o.level, "Word length");
    bind(words, cmd_words);

    auto* measure = app.add_subcommand("measure", "Cylinder measures, or spectral masses of a signal");
    matrix_opts(measure);
    measure->add_option("--length", o.level, "Cylinder level");
    measure->add_option("--signal", o.signal, "Signal file");
    measure->add_option("--set", o.set, "Comma-separated cylinder words of a Borel set");
    bind(measure, cmd_measure);

    auto* op = app.add_subcommand("op", "Cuntz-Krieger operators");
    op->require_subcommand(1, 1);
    auto* op_apply = op->add_subcommand("apply", "Apply an operator to a signal");
    matrix_opts(op_apply);
    out_opt(op_apply);
    op_apply->add_option("--signal", o.signal, "Signal file")->required();
    op_apply->add_option("--op", o.op, "S, Sstar, Sword, Sword-adjoint, proj, shift or pf");
    op_apply->add_option("--word", o.word, "Letter or word");
    bind(op_apply, cmd_op_apply);
    auto* op_check = op->add_subcommand("check", "Relation residuals on the level-K basis");
    matrix_opts(op_check);
    op_check->add_option("--level", o.level, "Basis level K");
    bind(op_check, cmd_op_check);

    auto* fourier = app.add_subcommand("fourier", "Fourier transform of the spectral measure");
    matrix_opts(fourier);
    fourier->add_option("--signal", o.signal, "Signal file")->required();
    fourier->add_option("--level", o.level, "Approximation level k");
    fourier->add_option("--t-min", o.t_min, "First t");
    fourier->add_option("--t-max", o.t_max, "Last t");
    fourier->add_option("--samples", o.samples, "Number of t values");
    bind(fourier, cmd_fourier);

    auto* kms = app.add_subcommand("kms", "KMS ratios and the Perron-Frobenius fixed point");
    matrix_opts(kms);
    bind(kms, cmd_kms);

    auto* wav = app.add_subcommand("wavelets", "Wavelet basis");
    wav->require_subcommand(1, 1);
    auto* wav_build = wav->add_subcommand("build", "Mother wavelet coefficients and basis checks");
    matrix_opts(wav_build);
    wav_build->add_option("--level", o.level, "Basis level K for the Gram check");
    bind(wav_build, cmd_wavelets_build);
    auto* wav_analyze = wav->add_subcommand("analyze", "Signal to coefficients");
    matrix_opts(wav_analyze);
    out_opt(wav_analyze);
    wav_analyze->add_option("--signal", o.signal, "Signal file")->required();
    wav_analyze->add_option("--level", o.level, "Ignored; the signal level is used");
    bind(wav_analyze, cmd_wavelets_analyze);
    auto* wav_synth = wav->add_subcommand("synthesize", "Coefficients to signal");
    matrix_opts(wav_synth);
    out_opt(wav_synth);
    wav_synth->add_option("--coeffs", o.coeffs, "Coefficient file")->required();
    wav_synth->add_option("--level", o.out_level, "Output level (default: the coefficient level)");
    wav_synth->add_option("--compare", o.compare, "Signal to compare against");
    bind(wav_synth, cmd_wavelets_synthesize);

    auto* ruelle = app.add_subcommand("ruelle", "Ruelle transfer operator");
    ruelle->require_subcommand(1, 1);
    auto* r_apply = ruelle->add_subcommand("apply", "Apply R_W to a signal");
    matrix_opts(r_apply);
    out_opt(r_apply);
    r_apply->add_option("--potential", o.potential, "Potential signal file")->required();
    r_apply->add_option("--signal", o.signal, "Signal file")->required();
    bind(r_apply, cmd_ruelle_apply);
    auto* r_keane = ruelle->add_subcommand("keane", "Keane residual of a cylinder potential");
    matrix_opts(r_keane);
    r_keane->add_option("--potential", o.potential, "Potential signal file")->required();
    bind(r_keane, cmd_ruelle_keane);
    auto* r_trig = ruelle->add_subcommand("trig", "Trigonometric potential checks");
    matrix_opts(r_trig);
    out_opt(r_trig);
    r_trig->add_option("--level", o.level, "Sampling level of the cylinder form");
    r_trig->add_option("--sample-level", o.sample_level, "Level of the sample points x(a)");
    r_trig->add_option("--samples", o.samples, "Number of sample points");
    bind(r_trig, cmd_ruelle_trig);

    auto walk_opts = [&](CLI::App* cmd) {
        matrix_opts(cmd);
        cmd->add_option("--point", o.point, "Base point word")->required();
        cmd->add_option("--depth", o.depth, "Path length");
        cmd->add_option("--potential", o.potential_kind, "trig, uniform or constant");
        bind(cmd, cmd_walk);
    };
    walk_opts(ruelle->add_subcommand("walk", "Random-walk measure"));
    walk_opts(app.add_subcommand("walk", "Random-walk measure"));

    auto* sier = app.add_subcommand("sierpinski", "Sierpinski set");
    sier->require_subcommand(1, 1);
    auto* s_info = sier->add_subcommand("info", "D and dimensions");
    matrix_opts(s_info);
    bind(s_info, cmd_sierpinski_info);
    auto* s_cells = sier->add_subcommand("cells", "Depth-k cells");
    matrix_opts(s_cells);
    s_cells->add_option("--depth", o.depth, "Depth k");
    bind(s_cells, cmd_sierpinski_cells);
    auto* s_render = sier->add_subcommand("render", "PGM raster");
    matrix_opts(s_render);
    out_opt(s_render);
    s_render->add_option("--depth", o.depth, "Depth k");
    s_render->add_option("--res", o.res, "Side in pixels (default N^k)");
    bind(s_render, cmd_sierpinski_render);
    auto* s_induced = sier->add_subcommand("induced", "Induced pair matrix");
    matrix_opts(s_induced);
    out_opt(s_induced);
    bind(s_induced, cmd_sierpinski_induced);

    auto* graph = app.add_subcommand("graph", "Directed graphs");
    graph->require_subcommand(1, 1);
    auto graph_opts = [&](CLI::App* cmd) {
        cmd->add_option("--graph", o.graph, "Graph file")->required();
        cmd->add_option("--tol", o.tol, "Power-iteration tolerance");
        cmd->add_option("--max-iter", o.max_iter, "Power-iteration limit");
        cmd->add_option("--cap", o.cap, "Enumeration cap");
        cmd->add_option("--v0", o.v0, "Base vertex");
    };
    auto* g_info = graph->add_subcommand("info", "Edge matrix, Perron data and vertex measure");
    graph_opts(g_info);
    bind(g_info, cmd_graph_info);
    auto* g_wav = graph->add_subcommand("wavelets", "Path wavelets");
    graph_opts(g_wav);
    g_wav->add_option("--e0", o.e0, "Base edge ending at v0");
    g_wav->add_option("--depth", o.depth, "Path length k");
    bind(g_wav, cmd_graph_wavelets);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        action(out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kData;
    }
    return kOk;
}

}  // namespace ckfractal::cli
