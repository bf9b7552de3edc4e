#pragma once

#include <hfkr/errors.hpp>

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace hfkr {

/// Trials x digest-bits matrix of flip indicators.
///
/// Rows are stored packed, each padded to a whole byte, bit j of a row in
/// byte j / 8 at mask 0x80 >> (j % 8). That is the byte layout of the digest
/// itself, so a row is just the XOR of two digests.
class bit_matrix {
public:
    bit_matrix() = default;
    bit_matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), row_bytes_((cols + 7) / 8), data_(rows * row_bytes_, 0) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t row_bytes() const noexcept { return row_bytes_; }

    bool get(std::size_t r, std::size_t c) const noexcept {
        return (data_[r * row_bytes_ + c / 8] >> (7 - c % 8)) & 1u;
    }

    void set(std::size_t r, std::size_t c, bool v) noexcept {
        auto& byte = data_[r * row_bytes_ + c / 8];
        const auto mask = static_cast<std::uint8_t>(0x80u >> (c % 8));
        byte = v ? static_cast<std::uint8_t>(byte | mask) : static_cast<std::uint8_t>(byte & ~mask);
    }

    std::span<const std::uint8_t> row(std::size_t r) const noexcept {
        return {data_.data() + r * row_bytes_, row_bytes_};
    }

    void set_row(std::size_t r, std::span<const std::uint8_t> packed) {
        if (packed.size() != row_bytes_) throw error("bit_matrix row has wrong byte length");
        std::copy(packed.begin(), packed.end(), data_.begin() + static_cast<std::ptrdiff_t>(r * row_bytes_));
    }

    /// Number of set bits in each column.
    std::vector<std::uint64_t> column_sums() const {
        std::vector<std::uint64_t> sums(cols_, 0);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) sums[c] += get(r, c);
        return sums;
    }

    std::uint64_t popcount() const noexcept {
        std::uint64_t n = 0;
        for (const auto b : data_) n += static_cast<std::uint64_t>(std::popcount(b));
        return n;
    }

    const std::vector<std::uint8_t>& data() const noexcept { return data_; }

    friend bool operator==(const bit_matrix&, const bit_matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t row_bytes_ = 0;
    std::vector<std::uint8_t> data_;
};

/// Binary layout: rows (u32 LE), cols (u32 LE), then the packed rows.
inline void write_bit_matrix(std::ostream& out, const bit_matrix& m) {
    auto put_u32 = [&out](std::size_t v) {
        const auto u = static_cast<std::uint32_t>(v);
        const char b[4] = {static_cast<char>(u & 0xFF), static_cast<char>((u >> 8) & 0xFF),
                           static_cast<char>((u >> 16) & 0xFF), static_cast<char>((u >> 24) & 0xFF)};
        out.write(b, 4);
    };
    put_u32(m.rows());
    put_u32(m.cols());
    out.write(reinterpret_cast<const char*>(m.data().data()), static_cast<std::streamsize>(m.data().size()));
}

inline bit_matrix read_bit_matrix(std::istream& in) {
    auto get_u32 = [&in]() {
        unsigned char b[4];
        if (!in.read(reinterpret_cast<char*>(b), 4)) throw error("truncated bit matrix header");
        return std::uint32_t{b[0]} | std::uint32_t{b[1]} << 8 | std::uint32_t{b[2]} << 16 | std::uint32_t{b[3]} << 24;
    };
    const std::uint32_t rows = get_u32();
    const std::uint32_t cols = get_u32();
    bit_matrix m(rows, cols);
    std::vector<std::uint8_t> row(m.row_bytes());
    for (std::size_t r = 0; r < rows; ++r) {
        if (!in.read(reinterpret_cast<char*>(row.data()), static_cast<std::streamsize>(row.size())))
            throw error("truncated bit matrix body at row " + std::to_string(r));
        m.set_row(r, row);
    }
    return m;
}

}  // namespace hfkr
