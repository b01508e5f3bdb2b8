#include "graphnls/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "graphnls/error.hpp"

namespace graphnls {

std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_graph_function(std::ostream& os, const GraphFunction& psi) {
    const Grid& g = psi.grid();
    os << "edge,k,x,re,im\n";
    for (int j = 0; j < psi.n_edges(); ++j) {
        const auto e = psi.edge(j);
        for (std::size_t k = 0; k < e.size(); ++k) {
            os << (j + 1) << ',' << k << ',' << format_real(g.x(k)) << ',' << format_real(e[k].real()) << ','
               << format_real(e[k].imag()) << '\n';
        }
    }
}

void write_graph_function(const std::filesystem::path& path, const GraphFunction& psi) {
    std::ofstream os(path);
    if (!os) {
        throw Error(ErrorCode::io, "cannot open " + path.string() + " for writing");
    }
    write_graph_function(os, psi);
}

namespace {

struct Row {
    int edge;
    std::size_t k;
    double x;
    double re;
    double im;
};

double parse_real(const std::string& field, std::size_t line) {
    double v = 0.0;
    const auto* first = field.data();
    const auto* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) {
        throw Error(ErrorCode::io, "bad number '" + field + "' on line " + std::to_string(line));
    }
    return v;
}

}  // namespace

GraphFunction read_graph_function(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "edge,k,x,re,im") {
        throw Error(ErrorCode::io, "missing graph function header 'edge,k,x,re,im'");
    }
    std::vector<Row> rows;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        std::stringstream ss(line);
        std::string f[5];
        for (int i = 0; i < 5; ++i) {
            if (!std::getline(ss, f[i], ',')) {
                throw Error(ErrorCode::io, "short row on line " + std::to_string(lineno));
            }
        }
        rows.push_back({static_cast<int>(parse_real(f[0], lineno)), static_cast<std::size_t>(parse_real(f[1], lineno)),
                        parse_real(f[2], lineno), parse_real(f[3], lineno), parse_real(f[4], lineno)});
    }
    if (rows.empty()) {
        throw Error(ErrorCode::io, "graph function file has no rows");
    }

    int n_edges = 0;
    std::size_t cells = 0;
    for (const auto& r : rows) {
        n_edges = std::max(n_edges, r.edge);
        cells = std::max(cells, r.k);
    }
    if (rows.size() != static_cast<std::size_t>(n_edges) * (cells + 1)) {
        throw Error(ErrorCode::io, "row count does not match N * (K + 1)");
    }
    double length = 0.0;
    for (const auto& r : rows) {
        if (r.edge == 1 && r.k == cells) {
            length = r.x;
        }
    }
    GraphFunction psi(Grid(length, static_cast<int>(cells)), n_edges);
    for (const auto& r : rows) {
        if (r.edge < 1 || r.k > cells) {
            throw Error(ErrorCode::io, "row index out of range");
        }
        psi.edge(r.edge - 1)[r.k] = cplx(r.re, r.im);
    }
    for (int j = 1; j < n_edges; ++j) {
        if (psi.at(j, 0) != psi.vertex()) {
            throw Error(ErrorCode::io, "vertex values differ between edges");
        }
    }
    return psi;
}

GraphFunction read_graph_function(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) {
        throw Error(ErrorCode::io, "cannot open " + path.string());
    }
    return read_graph_function(is);
}

}  // namespace graphnls
