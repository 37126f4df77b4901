#include "eigloc/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace eigloc::io {

namespace {

std::string lowercase(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

// Next line that is neither blank nor a % comment (the banner is consumed
// separately). Returns false at end of stream.
bool next_data_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        std::size_t k = line.find_first_not_of(" \t\r\n");
        if (k == std::string::npos) continue;
        if (line[k] == '%') continue;
        return true;
    }
    return false;
}

double parse_value(const std::string& tok, const char* what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        if (!std::isfinite(v)) throw IoError(std::string(what) + ": non-finite value");
        return v;
    } catch (const IoError&) {
        throw;
    } catch (const std::exception&) {
        throw IoError(std::string(what) + ": cannot parse value '" + tok + "'");
    }
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct MirrorAssembler {
    int n;
    Vector dense;
    std::vector<char> seen;

    explicit MirrorAssembler(int order)
        : n(order),
          dense(static_cast<std::size_t>(order) * order, 0.0),
          seen(static_cast<std::size_t>(order) * order, 0) {}

    void put(int i, int j, double v) {
        const std::size_t k = static_cast<std::size_t>(i) * n + j;
        if (seen[k]) throw IoError("matrix market: duplicate entry at (" +
                                   std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
        seen[k] = 1;
        dense[k] = v;
    }
};

}  // namespace

SymmetricMatrix read_matrix_market(std::istream& in, double sym_tol) {
    std::string banner;
    if (!std::getline(in, banner)) throw IoError("matrix market: empty stream");
    std::istringstream bs(banner);
    std::string tag, object, format, field, symmetry;
    bs >> tag >> object >> format >> field >> symmetry;
    if (lowercase(tag) != "%%matrixmarket")
        throw IoError("matrix market: missing %%MatrixMarket banner");
    if (lowercase(object) != "matrix")
        throw IoError("matrix market: unsupported object '" + object + "'");
    format = lowercase(format);
    field = lowercase(field);
    symmetry = lowercase(symmetry);
    if (format != "array" && format != "coordinate")
        throw IoError("matrix market: unsupported format '" + format + "'");
    if (field != "real")
        throw IoError("matrix market: only the real field is supported (got '" + field + "')");
    if (symmetry != "general" && symmetry != "symmetric")
        throw IoError("matrix market: unsupported symmetry '" + symmetry + "'");

    std::string line;
    if (!next_data_line(in, line)) throw IoError("matrix market: missing size line");
    std::istringstream sz(line);
    long rows = 0, cols = 0, nnz = 0;
    if (!(sz >> rows >> cols)) throw IoError("matrix market: malformed size line");
    if (format == "coordinate" && !(sz >> nnz))
        throw IoError("matrix market: coordinate size line needs nnz");
    if (rows != cols) throw IoError("matrix market: matrix must be square");
    if (rows < 1) throw IoError("matrix market: order must be >= 1");
    const int n = static_cast<int>(rows);

    if (format == "array") {
        const bool sym = symmetry == "symmetric";
        const std::size_t expected = sym ? SymmetricMatrix::packed_size(n)
                                         : static_cast<std::size_t>(n) * n;
        std::vector<double> vals;
        vals.reserve(expected);
        while (vals.size() < expected && next_data_line(in, line)) {
            std::istringstream ls(line);
            std::string tok;
            while (ls >> tok) vals.push_back(parse_value(tok, "matrix market"));
        }
        if (vals.size() != expected)
            throw IoError("matrix market: expected " + std::to_string(expected) +
                          " array values, got " + std::to_string(vals.size()));
        if (sym) {
            // Lower triangle, column by column.
            SymmetricMatrix out(n);
            Vector dense(static_cast<std::size_t>(n) * n, 0.0);
            std::size_t k = 0;
            for (int j = 0; j < n; ++j)
                for (int i = j; i < n; ++i) {
                    dense[static_cast<std::size_t>(i) * n + j] = vals[k];
                    dense[static_cast<std::size_t>(j) * n + i] = vals[k];
                    ++k;
                }
            return SymmetricMatrix::from_dense(n, dense, sym_tol);
        }
        // General: full column-major listing; symmetry must hold numerically.
        Vector dense(static_cast<std::size_t>(n) * n);
        std::size_t k = 0;
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) dense[static_cast<std::size_t>(i) * n + j] = vals[k++];
        return SymmetricMatrix::from_dense(n, dense, sym_tol);
    }

    // Coordinate.
    MirrorAssembler asmbl(n);
    long count = 0;
    while (count < nnz && next_data_line(in, line)) {
        std::istringstream ls(line);
        long i1 = 0, j1 = 0;
        std::string vtok;
        if (!(ls >> i1 >> j1 >> vtok))
            throw IoError("matrix market: malformed coordinate entry '" + line + "'");
        if (i1 < 1 || i1 > n || j1 < 1 || j1 > n)
            throw IoError("matrix market: index out of range in '" + line + "'");
        asmbl.put(static_cast<int>(i1 - 1), static_cast<int>(j1 - 1),
                  parse_value(vtok, "matrix market"));
        ++count;
    }
    if (count != nnz)
        throw IoError("matrix market: expected " + std::to_string(nnz) + " entries, got " +
                      std::to_string(count));

    if (symmetry == "symmetric") {
        // Entries may come from either triangle; a mirrored pair given twice
        // counts as a duplicate unless the values agree within tolerance.
        Vector dense(static_cast<std::size_t>(n) * n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const std::size_t k = static_cast<std::size_t>(i) * n + j;
                const std::size_t km = static_cast<std::size_t>(j) * n + i;
                if (!asmbl.seen[k]) continue;
                if (i != j && asmbl.seen[km] &&
                    std::abs(asmbl.dense[k] - asmbl.dense[km]) > sym_tol)
                    throw IoError("matrix market: symmetric file lists both (i,j) and (j,i) "
                                  "with different values at (" +
                                  std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
                dense[k] = asmbl.dense[k];
                dense[km] = asmbl.dense[k];
            }
        return SymmetricMatrix::from_dense(n, dense, sym_tol);
    }
    return SymmetricMatrix::from_dense(n, asmbl.dense, sym_tol);
}

SymmetricMatrix read_matrix_market_file(const std::string& path, double sym_tol) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return read_matrix_market(in, sym_tol);
}

void write_matrix_market_array(std::ostream& out, const SymmetricMatrix& a) {
    const int n = a.order();
    out << "%%MatrixMarket matrix array real symmetric\n";
    out << n << " " << n << "\n";
    for (int j = 0; j < n; ++j)
        for (int i = j; i < n; ++i) out << fmt(a(i, j)) << "\n";
}

void write_matrix_market_coordinate(std::ostream& out, const SymmetricMatrix& a) {
    const int n = a.order();
    long nnz = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j)
            if (a(i, j) != 0.0) ++nnz;
    out << "%%MatrixMarket matrix coordinate real symmetric\n";
    out << n << " " << n << " " << nnz << "\n";
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j)
            if (a(i, j) != 0.0) out << (i + 1) << " " << (j + 1) << " " << fmt(a(i, j)) << "\n";
}

namespace {

template <class WriteFn>
void write_file(const std::string& path, WriteFn&& fn) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    fn(out);
    out.flush();
    if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace

void write_matrix_market_array_file(const std::string& path, const SymmetricMatrix& a) {
    write_file(path, [&](std::ostream& o) { write_matrix_market_array(o, a); });
}

void write_matrix_market_coordinate_file(const std::string& path, const SymmetricMatrix& a) {
    write_file(path, [&](std::ostream& o) { write_matrix_market_coordinate(o, a); });
}

Vector read_vector(std::istream& in) {
    Vector v;
    std::string line;
    while (std::getline(in, line)) {
        const std::size_t k = line.find_first_not_of(" \t\r\n");
        if (k == std::string::npos) continue;
        if (line[k] == '%' || line[k] == '#') continue;
        std::istringstream ls(line);
        std::string tok;
        ls >> tok;
        v.push_back(parse_value(tok, "vector file"));
        std::string extra;
        if (ls >> extra) throw IoError("vector file: expected one value per line, got '" + line + "'");
    }
    if (v.empty()) throw IoError("vector file: no values found");
    return v;
}

Vector read_vector_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return read_vector(in);
}

void write_vector(std::ostream& out, const Vector& v) {
    for (double x : v) out << fmt(x) << "\n";
}

void write_vector_file(const std::string& path, const Vector& v) {
    write_file(path, [&](std::ostream& o) { write_vector(o, v); });
}

}  // namespace eigloc::io
