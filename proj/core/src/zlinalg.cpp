#include "rotorkit/zlinalg.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include "rotorkit/errors.hpp"

namespace rotorkit {

IntMatrix::IntMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), entries_(static_cast<size_t>(rows) * cols, Int(0)) {
    if (rows < 0 || cols < 0) throw precondition_error("negative matrix dimension");
}

IntMatrix::IntMatrix(int rows, int cols, std::vector<Int> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows < 0 || cols < 0) throw precondition_error("negative matrix dimension");
    if (entries_.size() != static_cast<size_t>(rows) * cols)
        throw precondition_error("entry count does not match dimensions");
}

size_t IntMatrix::index(int i, int j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
        throw precondition_error("matrix index out of range");
    return static_cast<size_t>(i) * cols_ + j;
}

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
    if (cols_ != other.rows_) throw precondition_error("matrix product dimension mismatch");
    IntMatrix out(rows_, other.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Int& aik = at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < other.cols_; ++j)
                out.at(i, j) += aik * other.at(k, j);
        }
    return out;
}

std::vector<Int> IntMatrix::operator*(const std::vector<Int>& x) const {
    if (static_cast<int>(x.size()) != cols_)
        throw precondition_error("matrix-vector dimension mismatch");
    std::vector<Int> out(rows_, Int(0));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (at(i, j) != 0) out[i] += at(i, j) * x[j];
    return out;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
}

IntMatrix IntMatrix::submatrix(const std::vector<int>& row_set,
                               const std::vector<int>& col_set) const {
    IntMatrix out(static_cast<int>(row_set.size()), static_cast<int>(col_set.size()));
    for (size_t i = 0; i < row_set.size(); ++i)
        for (size_t j = 0; j < col_set.size(); ++j)
            out.at(static_cast<int>(i), static_cast<int>(j)) = at(row_set[i], col_set[j]);
    return out;
}

void IntMatrix::swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
}

void IntMatrix::swap_cols(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
}

void IntMatrix::add_row(int i, int j, const Int& k) {
    for (int c = 0; c < cols_; ++c) at(i, c) += k * at(j, c);
}

void IntMatrix::add_col(int i, int j, const Int& k) {
    for (int r = 0; r < rows_; ++r) at(r, i) += k * at(r, j);
}

void IntMatrix::scale_row(int i, const Int& k) {
    for (int c = 0; c < cols_; ++c) at(i, c) *= k;
}

Int determinant(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw precondition_error("determinant of non-square matrix");
    const int n = a.rows();
    if (n == 0) return 1;
    IntMatrix m = a;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (m.at(k, k) == 0) {
            int pivot = -1;
            for (int i = k + 1; i < n; ++i)
                if (m.at(i, k) != 0) {
                    pivot = i;
                    break;
                }
            if (pivot == -1) return 0;
            m.swap_rows(k, pivot);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j)
                m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
            m.at(i, k) = 0;
        }
        prev = m.at(k, k);
    }
    return sign * m.at(n - 1, n - 1);
}

std::vector<Int> SmithForm::invariant_factors() const {
    std::vector<Int> alphas;
    for (int i = 0; i < rank; ++i) alphas.push_back(d.at(i, i));
    return alphas;
}

SmithForm smith_normal_form(const IntMatrix& a) {
    const int n = a.rows(), m = a.cols();
    SmithForm out;
    out.d = a;
    out.d.row_labels.clear();
    out.d.col_labels.clear();
    out.s = IntMatrix::identity(n);
    out.t = IntMatrix::identity(m);
    IntMatrix& d = out.d;
    IntMatrix& s = out.s;
    IntMatrix& t = out.t;

    int top = 0;
    while (top < n && top < m) {
        // Pivot: minimum-absolute-value nonzero in the remaining submatrix.
        int pi = -1, pj = -1;
        for (int i = top; i < n; ++i)
            for (int j = top; j < m; ++j)
                if (d.at(i, j) != 0 &&
                    (pi == -1 || abs_int(d.at(i, j)) < abs_int(d.at(pi, pj)))) {
                    pi = i;
                    pj = j;
                }
        if (pi == -1) break; // remaining submatrix is zero

        d.swap_rows(top, pi);
        s.swap_rows(top, pi);
        d.swap_cols(top, pj);
        t.swap_cols(top, pj);

        bool settled = false;
        while (!settled) {
            settled = true;
            // Clear the pivot column. A nonzero remainder is strictly smaller
            // than the pivot, so promoting it keeps the pivot shrinking.
            for (int i = top + 1; i < n && settled; ++i) {
                if (d.at(i, top) == 0) continue;
                Int q = d.at(i, top) / d.at(top, top);
                if (q != 0) {
                    d.add_row(i, top, -q);
                    s.add_row(i, top, -q);
                }
                if (d.at(i, top) != 0) {
                    d.swap_rows(top, i);
                    s.swap_rows(top, i);
                    settled = false;
                }
            }
            if (!settled) continue;
            for (int j = top + 1; j < m && settled; ++j) {
                if (d.at(top, j) == 0) continue;
                Int q = d.at(top, j) / d.at(top, top);
                if (q != 0) {
                    d.add_col(j, top, -q);
                    t.add_col(j, top, -q);
                }
                if (d.at(top, j) != 0) {
                    d.swap_cols(top, j);
                    t.swap_cols(top, j);
                    settled = false;
                }
            }
            if (!settled) continue;
            // Divisibility: the pivot must divide every remaining entry, so
            // that the diagonal forms a chain. Pull a violating row in and
            // start over.
            for (int i = top + 1; i < n && settled; ++i)
                for (int j = top + 1; j < m && settled; ++j)
                    if (d.at(i, j) % d.at(top, top) != 0) {
                        d.add_row(top, i, 1);
                        s.add_row(top, i, 1);
                        settled = false;
                    }
        }
        ++top;
    }

    out.rank = top;
    for (int i = 0; i < top; ++i)
        if (d.at(i, i) < 0) {
            d.scale_row(i, -1);
            s.scale_row(i, -1);
        }
    return out;
}

std::optional<DiophantineSolution> solve_diophantine(const IntMatrix& a,
                                                     const std::vector<Int>& b) {
    if (static_cast<int>(b.size()) != a.rows())
        throw precondition_error("right-hand side does not match matrix rows");
    SmithForm snf = smith_normal_form(a);
    const int m = a.cols();
    std::vector<Int> c = snf.s * b;

    std::vector<Int> y(m, Int(0));
    for (int i = 0; i < a.rows(); ++i) {
        if (i < snf.rank) {
            if (c[i] % snf.d.at(i, i) != 0) return std::nullopt;
            y[i] = c[i] / snf.d.at(i, i);
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }

    DiophantineSolution sol;
    sol.particular = snf.t * y;
    for (int j = snf.rank; j < m; ++j) {
        std::vector<Int> k(m, Int(0));
        for (int i = 0; i < m; ++i) k[i] = snf.t.at(i, j);
        sol.kernel.push_back(std::move(k));
    }
    return sol;
}

IntMatrix laplacian_matrix(const Multigraph& g) {
    const int n = g.vertex_count();
    IntMatrix l(n, n);
    for (int v = 0; v < n; ++v)
        for (int a : g.out_arcs(v)) {
            l.at(g.head(a), v) += 1;
            l.at(g.tail(a), v) -= 1;
        }
    l.row_labels = g.vertex_universe()->names();
    l.col_labels = g.vertex_universe()->names();
    return l;
}

Int arborescence_count(const Multigraph& g, const std::set<int>& roots) {
    for (int r : roots)
        if (r < 0 || r >= g.vertex_count())
            throw unknown_id_error("root outside vertex range");
    std::vector<int> keep;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!roots.count(v)) keep.push_back(v);
    IntMatrix reduced = laplacian_matrix(g).submatrix(keep, keep);
    return abs_int(determinant(reduced));
}

PeriodBasis primitive_period_vectors(const Multigraph& g) {
    PeriodBasis basis;
    IntMatrix l = laplacian_matrix(g);
    StrongComponents sc = strong_and_leaf_components(g);
    for (int b : sc.leaf_blocks) {
        const std::vector<int>& block = sc.partition.blocks()[b];
        if (block.size() == 1 && g.is_sink(block.front())) continue;

        // Arcs out of a leaf component stay inside it, so the restriction of
        // the Laplacian to the block is the Laplacian of the induced
        // subgraph; its kernel has rank one.
        IntMatrix sub = l.submatrix(block, block);
        SmithForm snf = smith_normal_form(sub);
        const int k = static_cast<int>(block.size());
        if (snf.rank != k - 1)
            throw error("leaf-component Laplacian kernel is not rank one");
        std::vector<Int> vec(k);
        for (int i = 0; i < k; ++i) vec[i] = snf.t.at(i, k - 1);

        Int g0 = 0;
        for (const Int& x : vec) g0 = gcd_int(g0, x);
        if (g0 == 0) throw error("null primitive period vector");
        bool negative = false;
        for (const Int& x : vec)
            if (x != 0) {
                negative = x < 0;
                break;
            }
        std::map<int, Int> coeffs;
        for (int i = 0; i < k; ++i) {
            Int x = vec[i] / g0;
            if (negative) x = -x;
            if (x <= 0)
                throw error("primitive period vector not positive on its component");
            coeffs[block[i]] = x;
        }
        basis.push_back({block, Config(g.vertex_universe(), std::move(coeffs))});
    }
    return basis;
}

IntMatrix read_matrix(std::istream& in) {
    long long rows = 0, cols = 0;
    if (!(in >> rows >> cols) || rows < 0 || cols < 0)
        throw parse_error("matrix header must be 'rows cols'");
    std::vector<Int> entries;
    entries.reserve(static_cast<size_t>(rows * cols));
    for (long long i = 0; i < rows * cols; ++i) {
        std::string token;
        if (!(in >> token))
            throw parse_error("matrix has fewer entries than rows*cols");
        try {
            entries.emplace_back(token);
        } catch (const std::exception&) {
            throw parse_error("bad matrix entry '" + token + "'");
        }
    }
    return IntMatrix(static_cast<int>(rows), static_cast<int>(cols), std::move(entries));
}

void write_matrix(std::ostream& out, const IntMatrix& m) {
    out << m.rows() << ' ' << m.cols() << '\n';
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            if (j) out << ' ';
            out << m.at(i, j);
        }
        out << '\n';
    }
}

} // namespace rotorkit
