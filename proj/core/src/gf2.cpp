#include "slag/gf2.hpp"

#include <algorithm>
#include <bit>

#include "slag/errors.hpp"

namespace slag {

BitMatrix::BitMatrix(int rows, int cols) : rows_(rows), cols_(cols), words_((cols + 63) / 64) {
    if (rows < 0 || cols < 0) throw PreconditionError("negative matrix size");
    bits_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(words_), 0);
}

BitMatrix BitMatrix::identity(int n) {
    BitMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

void BitMatrix::set(int r, int c, bool v) {
    const std::uint64_t mask = std::uint64_t{1} << bit(c);
    if (v) row(r)[word(c)] |= mask;
    else row(r)[word(c)] &= ~mask;
}

void BitMatrix::addRow(int dst, int src) {
    std::uint64_t* d = row(dst);
    const std::uint64_t* s = row(src);
    for (int w = 0; w < words_; ++w) d[w] ^= s[w];
}

void BitMatrix::swapRows(int a, int b) {
    if (a == b) return;
    std::swap_ranges(row(a), row(a) + words_, row(b));
}

bool BitMatrix::isZero() const {
    return std::all_of(bits_.begin(), bits_.end(), [](std::uint64_t w) { return w == 0; });
}

int BitMatrix::popcount() const {
    int n = 0;
    for (std::uint64_t w : bits_) n += std::popcount(w);
    return n;
}

BitMatrix BitMatrix::transpose() const {
    BitMatrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c)
            if (get(r, c)) t.set(c, r, true);
    return t;
}

BitMatrix BitMatrix::select(const std::vector<int>& rowIdx, const std::vector<int>& colIdx) const {
    BitMatrix s(static_cast<int>(rowIdx.size()), static_cast<int>(colIdx.size()));
    for (std::size_t i = 0; i < rowIdx.size(); ++i)
        for (std::size_t j = 0; j < colIdx.size(); ++j)
            if (get(rowIdx[i], colIdx[j])) s.set(static_cast<int>(i), static_cast<int>(j), true);
    return s;
}

BitMatrix BitMatrix::operator*(const BitMatrix& o) const {
    if (cols_ != o.rows_) throw PreconditionError("GF(2) product dimension mismatch");
    BitMatrix p(rows_, o.cols_);
    for (int r = 0; r < rows_; ++r)
        for (int k = 0; k < cols_; ++k)
            if (get(r, k)) {
                std::uint64_t* d = p.row(r);
                const std::uint64_t* s = o.row(k);
                for (int w = 0; w < p.words_; ++w) d[w] ^= s[w];
            }
    return p;
}

BitMatrix BitMatrix::operator+(const BitMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw PreconditionError("GF(2) sum dimension mismatch");
    BitMatrix s = *this;
    for (std::size_t i = 0; i < bits_.size(); ++i) s.bits_[i] ^= o.bits_[i];
    return s;
}

bool BitMatrix::operator==(const BitMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && bits_ == o.bits_;
}

int BitMatrix::rank() const {
    BitMatrix a = *this;
    int rank = 0;
    for (int c = 0; c < cols_ && rank < rows_; ++c) {
        int pivot = -1;
        for (int r = rank; r < rows_; ++r)
            if (a.get(r, c)) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        a.swapRows(rank, pivot);
        for (int r = 0; r < rows_; ++r)
            if (r != rank && a.get(r, c)) a.addRow(r, rank);
        ++rank;
    }
    return rank;
}

std::optional<BitMatrix> BitMatrix::inverse() const {
    if (rows_ != cols_) throw PreconditionError("inverse of a non-square GF(2) matrix");
    const int n = rows_;
    BitMatrix a = *this;
    BitMatrix inv = identity(n);
    for (int c = 0; c < n; ++c) {
        int pivot = -1;
        for (int r = c; r < n; ++r)
            if (a.get(r, c)) {
                pivot = r;
                break;
            }
        if (pivot < 0) return std::nullopt;
        a.swapRows(c, pivot);
        inv.swapRows(c, pivot);
        for (int r = 0; r < n; ++r)
            if (r != c && a.get(r, c)) {
                a.addRow(r, c);
                inv.addRow(r, c);
            }
    }
    return inv;
}

}  // namespace slag
