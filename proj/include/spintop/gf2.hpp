#pragma once

#include <optional>
#include <vector>

#include "spintop/bitvec.hpp"

namespace spintop {

// Row-major dense matrix over GF(2). Rows are bit-packed; elimination is
// word-level XOR with a fixed pivot order (columns left to right), so every
// derived basis is deterministic.
struct Gf2Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Bitvec> row_data;

    Gf2Matrix() = default;
    Gf2Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), row_data(r, Bitvec(c)) {}

    static Gf2Matrix identity(std::size_t n);

    bool get(std::size_t r, std::size_t c) const { return row_data[r].get(c); }
    void set(std::size_t r, std::size_t c, bool v = true) { row_data[r].set(c, v); }

    // y = M x with x over columns, y over rows.
    Bitvec multiply(const Bitvec& x) const;

    Gf2Matrix transposed() const;

    // Matrix whose columns are the given vectors (all of length `dim`).
    static Gf2Matrix from_columns(std::size_t dim, const std::vector<Bitvec>& cols);
};

std::size_t rank(Gf2Matrix m);

// Basis of {x : m x = 0}; one vector per free column, in ascending column
// order, each with free variables other than its own set to zero.
std::vector<Bitvec> kernel_basis(const Gf2Matrix& m);

// Any x with m x = rhs (free variables zero), or nullopt if rhs is outside
// the column space.
std::optional<Bitvec> solve(const Gf2Matrix& m, const Bitvec& rhs);

// Maintains a row-echelon set of independent vectors; used to build quotient
// bases and to test membership in a span incrementally.
class IncrementalBasis {
  public:
    explicit IncrementalBasis(std::size_t dim) : dim_(dim) {}

    // Reduce v against the current rows; returns the residual.
    Bitvec reduce(Bitvec v) const;

    // Insert v if independent of the span. Returns true if the rank grew.
    bool add(Bitvec v);

    bool contains(const Bitvec& v) const { return reduce(v).none(); }
    std::size_t rank() const { return rows_.size(); }
    const std::vector<Bitvec>& rows() const { return rows_; }

  private:
    std::size_t dim_;
    std::vector<Bitvec> rows_;   // echelon rows
    std::vector<long> pivots_;   // pivot column of each row
};

}  // namespace spintop
