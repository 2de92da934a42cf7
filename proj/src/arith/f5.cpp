#include "arith/f5.hpp"

#include "arith/bigint.hpp"

namespace sha5 {

std::uint8_t f5_inv(std::uint8_t a) {
    static constexpr std::uint8_t inv[5] = {0, 1, 3, 2, 4};
    if (a % 5 == 0) throw DomainError("f5_inv: zero");
    return inv[a % 5];
}

int f5_rank(const F5Matrix& m) {
    const std::size_t cols = m.columns();
    std::vector<F5Row> a = m.rows;
    for (const auto& r : a)
        if (r.size() != cols) throw DomainError("f5_rank: ragged matrix");
    int rank = 0;
    for (std::size_t c = 0; c < cols && rank < static_cast<int>(a.size()); ++c) {
        std::size_t piv = static_cast<std::size_t>(rank);
        while (piv < a.size() && a[piv][c] == 0) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[piv], a[static_cast<std::size_t>(rank)]);
        F5Row& pr = a[static_cast<std::size_t>(rank)];
        const std::uint8_t inv = f5_inv(pr[c]);
        for (auto& x : pr) x = static_cast<std::uint8_t>(x * inv % 5);
        for (std::size_t r = 0; r < a.size(); ++r) {
            if (r == static_cast<std::size_t>(rank) || a[r][c] == 0) continue;
            const std::uint8_t f = a[r][c];
            for (std::size_t k = 0; k < cols; ++k) a[r][k] = static_cast<std::uint8_t>((a[r][k] + 5 * 5 - f * pr[k]) % 5);
        }
        ++rank;
    }
    return rank;
}

std::optional<F5Row> f5_solve(const std::vector<F5Row>& basis, const F5Row& target) {
    // Solve sum c_i b_i = t by eliminating on the augmented transpose.
    const std::size_t n = basis.size();
    const std::size_t w = target.size();
    std::vector<F5Row> a(w, F5Row(n + 1, 0));
    for (std::size_t j = 0; j < w; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            if (basis[i].size() != w) throw DomainError("f5_solve: width mismatch");
            a[j][i] = basis[i][j] % 5;
        }
        a[j][n] = target[j] % 5;
    }
    std::vector<std::size_t> pivcol;
    std::size_t row = 0;
    for (std::size_t c = 0; c < n && row < w; ++c) {
        std::size_t piv = row;
        while (piv < w && a[piv][c] == 0) ++piv;
        if (piv == w) continue;
        std::swap(a[piv], a[row]);
        const std::uint8_t inv = f5_inv(a[row][c]);
        for (auto& x : a[row]) x = static_cast<std::uint8_t>(x * inv % 5);
        for (std::size_t r = 0; r < w; ++r) {
            if (r == row || a[r][c] == 0) continue;
            const std::uint8_t f = a[r][c];
            for (std::size_t k = 0; k <= n; ++k) a[r][k] = static_cast<std::uint8_t>((a[r][k] + 25 - f * a[row][k]) % 5);
        }
        pivcol.push_back(c);
        ++row;
    }
    for (std::size_t r = row; r < w; ++r)
        if (a[r][n] != 0) return std::nullopt;
    F5Row c(n, 0);
    for (std::size_t r = 0; r < pivcol.size(); ++r) c[pivcol[r]] = a[r][n];
    return c;
}

F5Row F5Span::reduce(F5Row v) const {
    for (std::size_t i = 0; i < echelon_.size(); ++i) {
        const std::uint8_t f = v[pivots_[i]];
        if (f == 0) continue;
        for (std::size_t k = 0; k < width_; ++k) v[k] = static_cast<std::uint8_t>((v[k] + 25 - f * echelon_[i][k]) % 5);
    }
    return v;
}

bool F5Span::insert(const F5Row& v) {
    if (v.size() != width_) throw DomainError("F5Span: width mismatch");
    F5Row r = reduce(v);
    std::size_t piv = 0;
    while (piv < width_ && r[piv] == 0) ++piv;
    if (piv == width_) return false;
    const std::uint8_t inv = f5_inv(r[piv]);
    for (auto& x : r) x = static_cast<std::uint8_t>(x * inv % 5);
    for (std::size_t i = 0; i < echelon_.size(); ++i) {
        const std::uint8_t f = echelon_[i][piv];
        if (f == 0) continue;
        for (std::size_t k = 0; k < width_; ++k)
            echelon_[i][k] = static_cast<std::uint8_t>((echelon_[i][k] + 25 - f * r[k]) % 5);
    }
    echelon_.push_back(std::move(r));
    pivots_.push_back(piv);
    return true;
}

bool F5Span::contains(const F5Row& v) const {
    if (v.size() != width_) throw DomainError("F5Span: width mismatch");
    F5Row r = reduce(v);
    for (auto x : r)
        if (x) return false;
    return true;
}

}  // namespace sha5
