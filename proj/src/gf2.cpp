#include "spintop/gf2.hpp"

#include <stdexcept>

namespace spintop {

Gf2Matrix Gf2Matrix::identity(std::size_t n)
{
    Gf2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.set(i, i);
    return m;
}

Bitvec Gf2Matrix::multiply(const Bitvec& x) const
{
    if (x.size() != cols)
        throw std::invalid_argument("Gf2Matrix::multiply: size mismatch");
    Bitvec y(rows);
    for (std::size_t r = 0; r < rows; ++r)
        if (row_data[r].dot(x))
            y.set(r);
    return y;
}

Gf2Matrix Gf2Matrix::transposed() const
{
    Gf2Matrix t(cols, rows);
    for (std::size_t r = 0; r < rows; ++r)
        row_data[r].for_each_set([&](std::size_t c) { t.set(c, r); });
    return t;
}

Gf2Matrix Gf2Matrix::from_columns(std::size_t dim, const std::vector<Bitvec>& cols)
{
    Gf2Matrix m(dim, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        cols[j].for_each_set([&](std::size_t i) { m.set(i, j); });
    return m;
}

namespace {

// Reduced row echelon form in place. Returns the pivot column of each pivot
// row (row i of the result has pivot pivot_cols[i]); rows below are zero.
std::vector<std::size_t> rref(Gf2Matrix& m)
{
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t piv = r;
        while (piv < m.rows && !m.get(piv, c))
            ++piv;
        if (piv == m.rows)
            continue;
        std::swap(m.row_data[piv], m.row_data[r]);
        for (std::size_t i = 0; i < m.rows; ++i)
            if (i != r && m.get(i, c))
                m.row_data[i] ^= m.row_data[r];
        pivot_cols.push_back(c);
        ++r;
    }
    return pivot_cols;
}

}  // namespace

std::size_t rank(Gf2Matrix m)
{
    return rref(m).size();
}

std::vector<Bitvec> kernel_basis(const Gf2Matrix& m_in)
{
    Gf2Matrix m = m_in;
    std::vector<std::size_t> piv = rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (std::size_t c : piv)
        is_pivot[c] = true;

    std::vector<Bitvec> basis;
    for (std::size_t f = 0; f < m.cols; ++f) {
        if (is_pivot[f])
            continue;
        Bitvec x(m.cols);
        x.set(f);
        for (std::size_t i = 0; i < piv.size(); ++i)
            if (m.get(i, f))
                x.set(piv[i]);
        basis.push_back(std::move(x));
    }
    return basis;
}

std::optional<Bitvec> solve(const Gf2Matrix& m_in, const Bitvec& rhs)
{
    if (rhs.size() != m_in.rows)
        throw std::invalid_argument("gf2::solve: rhs size mismatch");
    Gf2Matrix m = m_in;
    Bitvec b = rhs;

    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t piv = r;
        while (piv < m.rows && !m.get(piv, c))
            ++piv;
        if (piv == m.rows)
            continue;
        std::swap(m.row_data[piv], m.row_data[r]);
        bool br = b.get(r), bp = b.get(piv);
        b.set(r, bp);
        b.set(piv, br);
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i != r && m.get(i, c)) {
                m.row_data[i] ^= m.row_data[r];
                if (b.get(r))
                    b.flip(i);
            }
        }
        pivot_cols.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < m.rows; ++i)
        if (b.get(i))
            return std::nullopt;

    Bitvec x(m.cols);
    for (std::size_t i = 0; i < pivot_cols.size(); ++i)
        if (b.get(i))
            x.set(pivot_cols[i]);
    return x;
}

Bitvec IncrementalBasis::reduce(Bitvec v) const
{
    for (std::size_t i = 0; i < rows_.size(); ++i)
        if (v.get(std::size_t(pivots_[i])))
            v ^= rows_[i];
    return v;
}

bool IncrementalBasis::add(Bitvec v)
{
    v = reduce(std::move(v));
    long p = v.first_set();
    if (p < 0)
        return false;
    // Keep echelon shape: eliminate the new pivot from existing rows.
    for (std::size_t i = 0; i < rows_.size(); ++i)
        if (rows_[i].get(std::size_t(p)))
            rows_[i] ^= v;
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
}

}  // namespace spintop
