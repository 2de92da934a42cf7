#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace sha5 {

using F5Row = std::vector<std::uint8_t>;

/// Dense matrix over GF(5); every row has the same length.
struct F5Matrix {
    std::vector<F5Row> rows;

    std::size_t columns() const { return rows.empty() ? 0 : rows.front().size(); }
};

inline std::uint8_t f5(long long v) {
    long long r = v % 5;
    return static_cast<std::uint8_t>(r < 0 ? r + 5 : r);
}

std::uint8_t f5_inv(std::uint8_t a);

/// Row rank over GF(5). Throws DomainError on ragged input.
int f5_rank(const F5Matrix& m);

/// Coefficients c with sum_i c_i * basis[i] == target, if target is in the row span.
std::optional<F5Row> f5_solve(const std::vector<F5Row>& basis, const F5Row& target);

/// Incremental echelon basis; used to test membership while growing a span.
class F5Span {
public:
    explicit F5Span(std::size_t width) : width_(width) {}

    /// Adds v if independent; returns true when the rank grew.
    bool insert(const F5Row& v);
    bool contains(const F5Row& v) const;
    int rank() const { return static_cast<int>(pivots_.size()); }

private:
    F5Row reduce(F5Row v) const;

    std::size_t width_;
    std::vector<F5Row> echelon_;
    std::vector<std::size_t> pivots_;
};

}  // namespace sha5
