#include "ckfractal/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace ckfractal {

namespace {

// Next non-blank, non-comment line split into tokens; false at end of input.
bool next_tokens(std::istream& is, std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(is, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        tokens.clear();
        for (std::string t; ss >> t;) tokens.push_back(t);
        if (!tokens.empty()) return true;
    }
    return false;
}

std::size_t parse_count(const std::string& t, const char* what) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        if (t.empty() || t[0] == '-' || t[0] == '+') throw std::invalid_argument(t);
        v = std::stoull(t, &pos);
    } catch (const std::exception&) {
        throw Error(ErrorKind::Parse, std::string("expected a non-negative integer for ") + what + ", got '" + t + "'");
    }
    if (pos != t.size()) throw Error(ErrorKind::Parse, std::string("trailing characters in ") + what + " '" + t + "'");
    return static_cast<std::size_t>(v);
}

double parse_real(const std::string& t) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &pos);
    } catch (const std::exception&) {
        throw Error(ErrorKind::Parse, "expected a number, got '" + t + "'");
    }
    if (pos != t.size()) throw Error(ErrorKind::Parse, "trailing characters in number '" + t + "'");
    return v;
}

void expect_size(const std::vector<std::string>& tokens, std::size_t n, const char* what) {
    if (tokens.size() != n) {
        throw Error(ErrorKind::Parse, std::string(what) + " needs " + std::to_string(n) + " fields, got " + std::to_string(tokens.size()));
    }
}

std::ifstream open(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Parse, "cannot open '" + path + "'");
    return in;
}

}  // namespace

std::string format_number(double x) {
    if (x == 0.0) x = 0.0;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

std::string word_to_string(const Word& w, std::size_t n) {
    if (w.empty()) return "-";
    std::string out;
    for (std::size_t m = 0; m < w.size(); ++m) {
        if (n > 10 && m) out += ':';
        out += std::to_string(w[m]);
    }
    return out;
}

Word parse_word(const std::string& text, std::size_t n) {
    if (text == "-") return Word{};
    std::vector<Digit> digits;
    if (n > 10) {
        std::istringstream ss(text);
        for (std::string part; std::getline(ss, part, ':');) digits.push_back(static_cast<Digit>(parse_count(part, "digit")));
    } else {
        for (char c : text) {
            if (c < '0' || c > '9') throw Error(ErrorKind::Parse, "bad digit in word '" + text + "'");
            digits.push_back(static_cast<Digit>(c - '0'));
        }
    }
    for (Digit d : digits) {
        if (d >= n) throw Error(ErrorKind::Parse, "digit " + std::to_string(d) + " outside the alphabet in '" + text + "'");
    }
    if (digits.empty()) throw Error(ErrorKind::Parse, "empty word token");
    return Word(std::move(digits));
}

std::vector<std::vector<int>> read_matrix(std::istream& is) {
    std::vector<std::string> tokens;
    if (!next_tokens(is, tokens)) throw Error(ErrorKind::Parse, "empty matrix file");
    expect_size(tokens, 1, "matrix header");
    const std::size_t n = parse_count(tokens[0], "matrix size");
    std::vector<std::vector<int>> raw;
    for (std::size_t i = 0; i < n; ++i) {
        if (!next_tokens(is, tokens)) throw Error(ErrorKind::Parse, "matrix has fewer than " + std::to_string(n) + " rows");
        expect_size(tokens, n, "matrix row");
        std::vector<int> row;
        for (const auto& t : tokens) row.push_back(static_cast<int>(parse_count(t, "matrix entry")));
        raw.push_back(std::move(row));
    }
    if (next_tokens(is, tokens)) throw Error(ErrorKind::Parse, "extra lines after the matrix");
    return raw;
}

void write_matrix(std::ostream& os, const AdmissibilityMatrix& a) {
    os << a.size() << '\n';
    for (const auto& row : a.entries()) {
        for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << row[j];
        os << '\n';
    }
}

CylinderFunction read_signal(std::istream& is, const AdmissibilityMatrix& a) {
    std::vector<std::string> tokens;
    if (!next_tokens(is, tokens)) throw Error(ErrorKind::Parse, "empty signal file");
    expect_size(tokens, 2, "signal header");
    const std::size_t n = parse_count(tokens[0], "alphabet size");
    const std::size_t k = parse_count(tokens[1], "level");
    if (n != a.size()) throw Error(ErrorKind::MatrixMismatch, "signal alphabet " + std::to_string(n) + " differs from the matrix");
    const std::size_t count = a.word_count(k);
    std::vector<Complex> coeffs(count);
    std::vector<bool> seen(count, false);
    std::size_t lines = 0;
    while (next_tokens(is, tokens)) {
        expect_size(tokens, 3, "signal line");
        const Word w = parse_word(tokens[0], n);
        if (w.size() != k || !a.admissible(w)) throw Error(ErrorKind::Parse, "'" + tokens[0] + "' is not a word of W_" + std::to_string(k));
        const std::size_t idx = a.index_of(w);
        if (seen[idx]) throw Error(ErrorKind::Parse, "word '" + tokens[0] + "' appears twice");
        seen[idx] = true;
        coeffs[idx] = Complex(parse_real(tokens[1]), parse_real(tokens[2]));
        ++lines;
    }
    if (lines != count) {
        throw Error(ErrorKind::Parse, "signal lists " + std::to_string(lines) + " of " + std::to_string(count) + " words");
    }
    return CylinderFunction(a, k, std::move(coeffs));
}

void write_signal(std::ostream& os, const CylinderFunction& f) {
    const AdmissibilityMatrix& a = f.matrix();
    os << a.size() << ' ' << f.level() << '\n';
    const std::vector<Word> words = enumerate_words(a, f.level());
    for (std::size_t t = 0; t < words.size(); ++t) {
        os << word_to_string(words[t], a.size()) << ' ' << format_number(f[t].real()) << ' ' << format_number(f[t].imag()) << '\n';
    }
}

WaveletCoefficients read_coefficients(std::istream& is) {
    std::vector<std::string> tokens;
    if (!next_tokens(is, tokens)) throw Error(ErrorKind::Parse, "empty coefficient file");
    expect_size(tokens, 2, "coefficient header");
    WaveletCoefficients c;
    c.n = parse_count(tokens[0], "alphabet size");
    c.level = parse_count(tokens[1], "level");
    std::map<std::size_t, Complex> scaling;
    while (next_tokens(is, tokens)) {
        const std::string& tag = tokens[0];
        if (tag == "S") {
            expect_size(tokens, 4, "scaling line");
            const std::size_t i = parse_count(tokens[1], "letter");
            if (i >= c.n) throw Error(ErrorKind::Parse, "scaling letter outside the alphabet");
            if (scaling.count(i)) throw Error(ErrorKind::Parse, "scaling letter listed twice");
            scaling[i] = Complex(parse_real(tokens[2]), parse_real(tokens[3]));
        } else if (tag == "M") {
            expect_size(tokens, 5, "mother line");
            c.mother.push_back({static_cast<Digit>(parse_count(tokens[1], "letter")), parse_count(tokens[2], "level index"),
                                Complex(parse_real(tokens[3]), parse_real(tokens[4]))});
        } else if (tag == "D") {
            expect_size(tokens, 6, "detail line");
            c.detail.push_back({parse_word(tokens[1], c.n), parse_count(tokens[2], "level index"),
                                static_cast<Digit>(parse_count(tokens[3], "letter")),
                                Complex(parse_real(tokens[4]), parse_real(tokens[5]))});
        } else {
            throw Error(ErrorKind::Parse, "unknown coefficient tag '" + tag + "'");
        }
    }
    for (std::size_t i = 0; i < c.n; ++i) {
        auto it = scaling.find(i);
        c.scaling.push_back(it == scaling.end() ? Complex{} : it->second);
    }
    return c;
}

void write_coefficients(std::ostream& os, const WaveletCoefficients& c) {
    os << c.n << ' ' << c.level << '\n';
    for (std::size_t i = 0; i < c.scaling.size(); ++i) {
        os << "S " << i << ' ' << format_number(c.scaling[i].real()) << ' ' << format_number(c.scaling[i].imag()) << '\n';
    }
    for (const auto& m : c.mother) {
        os << "M " << m.letter << ' ' << m.index << ' ' << format_number(m.value.real()) << ' ' << format_number(m.value.imag()) << '\n';
    }
    for (const auto& d : c.detail) {
        os << "D " << word_to_string(d.word, c.n) << ' ' << d.index << ' ' << d.letter << ' ' << format_number(d.value.real())
           << ' ' << format_number(d.value.imag()) << '\n';
    }
}

DirectedGraph read_graph(std::istream& is) {
    std::vector<std::string> tokens;
    if (!next_tokens(is, tokens)) throw Error(ErrorKind::Parse, "empty graph file");
    expect_size(tokens, 2, "graph header");
    const std::size_t v = parse_count(tokens[0], "vertex count");
    const std::size_t e = parse_count(tokens[1], "edge count");
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t t = 0; t < e; ++t) {
        if (!next_tokens(is, tokens)) throw Error(ErrorKind::Parse, "graph has fewer than " + std::to_string(e) + " edges");
        expect_size(tokens, 2, "edge line");
        edges.emplace_back(parse_count(tokens[0], "source"), parse_count(tokens[1], "range"));
    }
    if (next_tokens(is, tokens)) throw Error(ErrorKind::Parse, "extra lines after the edge list");
    return DirectedGraph(v, std::move(edges));
}

void write_graph(std::ostream& os, const DirectedGraph& g) {
    os << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const auto& [s, r] : g.edges()) os << s << ' ' << r << '\n';
}

std::vector<std::vector<int>> load_matrix(const std::string& path) {
    std::ifstream in = open(path);
    return read_matrix(in);
}

CylinderFunction load_signal(const std::string& path, const AdmissibilityMatrix& a) {
    std::ifstream in = open(path);
    return read_signal(in, a);
}

WaveletCoefficients load_coefficients(const std::string& path) {
    std::ifstream in = open(path);
    return read_coefficients(in);
}

DirectedGraph load_graph(const std::string& path) {
    std::ifstream in = open(path);
    return read_graph(in);
}

}  // namespace ckfractal
