#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace slag {

/// Dense matrix over GF(2) with rows packed into 64-bit words.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(int rows, int cols);

    static BitMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    bool get(int r, int c) const { return (row(r)[word(c)] >> bit(c)) & 1u; }
    void set(int r, int c, bool v);
    void flip(int r, int c) { row(r)[word(c)] ^= std::uint64_t{1} << bit(c); }
    void addRow(int dst, int src);  // row dst += row src
    void swapRows(int a, int b);

    bool isZero() const;
    int popcount() const;
    BitMatrix transpose() const;
    /// Sub-matrix of the given row and column index lists.
    BitMatrix select(const std::vector<int>& rowIdx, const std::vector<int>& colIdx) const;

    BitMatrix operator*(const BitMatrix& o) const;
    BitMatrix operator+(const BitMatrix& o) const;
    bool operator==(const BitMatrix& o) const;

    int rank() const;
    /// Inverse of a square matrix, or nullopt when singular.
    std::optional<BitMatrix> inverse() const;

private:
    static int word(int c) { return c >> 6; }
    static int bit(int c) { return c & 63; }
    std::uint64_t* row(int r) { return bits_.data() + static_cast<std::size_t>(r) * static_cast<std::size_t>(words_); }
    const std::uint64_t* row(int r) const {
        return bits_.data() + static_cast<std::size_t>(r) * static_cast<std::size_t>(words_);
    }

    int rows_ = 0;
    int cols_ = 0;
    int words_ = 0;
    std::vector<std::uint64_t> bits_;
};

}  // namespace slag
