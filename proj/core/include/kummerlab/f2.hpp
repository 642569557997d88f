#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace kummerlab {

// Vectors over F2, packed into 64 bits. Everything downstream (square-class
// independence, Selmer conditions, local subspaces) lives in dimension <= ~20,
// so a single word is plenty.
using F2Vec = std::uint64_t;

inline int f2_dot(F2Vec a, F2Vec b) { return std::popcount(a & b) & 1; }

// Row space of a set of F2 vectors, kept in reduced echelon form.
class F2Span {
public:
    F2Span() = default;

    // Returns true if v was independent of the current span.
    bool add(F2Vec v) {
        v = reduce(v);
        if (v == 0) return false;
        F2Vec pivot = F2Vec(1) << (63 - std::countl_zero(v));
        for (auto& row : rows_)
            if (row & pivot) row ^= v;
        rows_.push_back(v);
        pivots_.push_back(pivot);
        return true;
    }

    bool contains(F2Vec v) const { return reduce(v) == 0; }
    int dim() const { return static_cast<int>(rows_.size()); }
    const std::vector<F2Vec>& rows() const { return rows_; }

    // Remainder of v modulo the span.
    F2Vec reduce(F2Vec v) const {
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (v & pivots_[i]) v ^= rows_[i];
        return v;
    }

    // Coordinates of v in terms of the stored rows; v must lie in the span.
    F2Vec coordinates(F2Vec v) const {
        F2Vec coeff = 0;
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (v & pivots_[i]) {
                v ^= rows_[i];
                coeff |= F2Vec(1) << i;
            }
        return coeff;
    }

private:
    std::vector<F2Vec> rows_;
    std::vector<F2Vec> pivots_;
};

inline int f2_rank(const std::vector<F2Vec>& vecs) {
    F2Span s;
    for (F2Vec v : vecs) s.add(v);
    return s.dim();
}

// Kernel basis of the linear map x -> (dot(x, row_i))_i on F2^dim.
inline std::vector<F2Vec> f2_kernel(const std::vector<F2Vec>& constraint_rows, int dim) {
    std::vector<F2Vec> rows = constraint_rows;
    std::vector<int> pivot_col;
    std::size_t r = 0;
    for (int c = 0; c < dim && r < rows.size(); ++c) {
        std::size_t sel = r;
        while (sel < rows.size() && !(rows[sel] >> c & 1)) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != r && (rows[i] >> c & 1)) rows[i] ^= rows[r];
        pivot_col.push_back(c);
        ++r;
    }
    rows.resize(r);
    std::vector<bool> is_pivot(dim, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<F2Vec> kernel;
    for (int c = 0; c < dim; ++c) {
        if (is_pivot[c]) continue;
        F2Vec v = F2Vec(1) << c;
        for (std::size_t i = 0; i < r; ++i)
            if (rows[i] >> c & 1) v |= F2Vec(1) << pivot_col[i];
        kernel.push_back(v);
    }
    return kernel;
}

// Intersection of two subspaces given by spanning sets, as a basis.
// A combination of a lies in span(b) iff its residue modulo span(b) is zero,
// which is a linear condition on the coefficient vector.
inline std::vector<F2Vec> f2_intersection(const std::vector<F2Vec>& a,
                                          const std::vector<F2Vec>& b, int dim) {
    F2Span sb;
    for (F2Vec v : b) sb.add(v);
    std::vector<F2Vec> residues;
    residues.reserve(a.size());
    for (F2Vec v : a) residues.push_back(sb.reduce(v));
    std::vector<F2Vec> constraints;
    for (int bitpos = 0; bitpos < dim; ++bitpos) {
        F2Vec row = 0;
        for (std::size_t i = 0; i < residues.size(); ++i)
            if (residues[i] >> bitpos & 1) row |= F2Vec(1) << i;
        if (row) constraints.push_back(row);
    }
    F2Span out;
    for (F2Vec coeff : f2_kernel(constraints, static_cast<int>(a.size()))) {
        F2Vec x = 0;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (coeff >> i & 1) x ^= a[i];
        out.add(x);
    }
    return out.rows();
}

}  // namespace kummerlab
