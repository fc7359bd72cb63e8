#pragma once

#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rotorkit/config.hpp"
#include "rotorkit/ints.hpp"
#include "rotorkit/multigraph.hpp"

namespace rotorkit {

/// Dense rectangular matrix with arbitrary-precision entries and optional
/// row/column labels (used to index Laplacians by vertices, the routing
/// operator by arcs+vertices / faces).
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(int rows, int cols);
    IntMatrix(int rows, int cols, std::vector<Int> entries);

    static IntMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    const Int& at(int i, int j) const { return entries_.at(index(i, j)); }
    Int& at(int i, int j) { return entries_.at(index(i, j)); }

    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;

    bool operator==(const IntMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && entries_ == other.entries_;
    }

    IntMatrix operator*(const IntMatrix& other) const;
    std::vector<Int> operator*(const std::vector<Int>& x) const;

    IntMatrix transposed() const;

    /// Rows and columns restricted to the given (sorted) index subsets.
    IntMatrix submatrix(const std::vector<int>& row_set,
                        const std::vector<int>& col_set) const;

    void swap_rows(int i, int j);
    void swap_cols(int i, int j);
    /// row(i) += k * row(j); col version alike.
    void add_row(int i, int j, const Int& k);
    void add_col(int i, int j, const Int& k);
    void scale_row(int i, const Int& k);

private:
    size_t index(int i, int j) const;
    int rows_, cols_;
    std::vector<Int> entries_;
};

/// Exact determinant by fraction-free (Bareiss) elimination. The empty
/// matrix has determinant 1.
Int determinant(const IntMatrix& a);

/// Unimodular S (n x n), T (m x m) and diagonal D = S*A*T whose diagonal
/// entries alpha_1 | alpha_2 | ... | alpha_r are the invariant factors of A.
struct SmithForm {
    IntMatrix s;
    IntMatrix d;
    IntMatrix t;
    int rank = 0;

    std::vector<Int> invariant_factors() const;
};

SmithForm smith_normal_form(const IntMatrix& a);

struct DiophantineSolution {
    std::vector<Int> particular;          ///< one x with A*x = b
    std::vector<std::vector<Int>> kernel; ///< basis of {x : A*x = 0}
};

/// Integral solutions of A*x = b via the Smith decomposition; nullopt iff
/// the system has no integral solution.
std::optional<DiophantineSolution> solve_diophantine(const IntMatrix& a,
                                                     const std::vector<Int>& b);

/// Matrix of the Laplacian homomorphism: column v holds the coefficient
/// vector of the out-arc boundary sum at v. Loops contribute nothing.
IntMatrix laplacian_matrix(const Multigraph& g);

/// Number of arborescences rooted in `roots`: |det| of the Laplacian with
/// the root rows and columns removed (matrix-tree).
Int arborescence_count(const Multigraph& g, const std::set<int>& roots);

struct PeriodEntry {
    std::vector<int> block; ///< the non-sink leaf component, sorted
    Config vector;          ///< >= 0, positive exactly on the block, coprime there
};

/// One primitive period vector per leaf component that is not a sink
/// singleton; each is annihilated by the Laplacian.
using PeriodBasis = std::vector<PeriodEntry>;

PeriodBasis primitive_period_vectors(const Multigraph& g);

/// Text format used by the CLI: first line `rows cols`, then row-major
/// whitespace-separated integers.
IntMatrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const IntMatrix& m);

} // namespace rotorkit
