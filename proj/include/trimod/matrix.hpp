#pragma once

// Dense exact linear algebra over prime fields F_p (2 <= p <= 97).
// Everything downstream (module homs, Ext/Tor, diagram chases) reduces to
// rref / solve / quotient on these matrices, so determinism here makes the
// whole engine reproducible: leftmost pivots, free variables set to zero,
// canonical (reduced-echelon) subspace bases.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace trimod {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

inline bool is_prime(u32 n) {
    if (n < 2) return false;
    for (u32 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline void check_modulus(u32 p) {
    if (!is_prime(p) || p > 97)
        throw std::invalid_argument("modulus must be a prime <= 97, got " + std::to_string(p));
}

// a^-1 mod p via Fermat; p prime, a != 0.
inline u32 inv_mod(u32 a, u32 p) {
    if (a % p == 0) throw std::invalid_argument("inverse of zero");
    u64 base = a % p, acc = 1;
    u32 e = p - 2;
    while (e) {
        if (e & 1) acc = acc * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<u32>(acc);
}

class Mat {
  public:
    Mat() : p_(2), rows_(0), cols_(0) {}
    Mat(u32 p, std::size_t rows, std::size_t cols)
        : p_(p), rows_(rows), cols_(cols), e_(rows * cols, 0) {
        check_modulus(p);
    }
    Mat(u32 p, std::size_t rows, std::size_t cols, std::vector<u32> entries)
        : p_(p), rows_(rows), cols_(cols), e_(std::move(entries)) {
        check_modulus(p);
        if (e_.size() != rows * cols)
            throw std::invalid_argument("entry count does not match rows*cols");
        for (auto& v : e_) v %= p_;
    }

    static Mat identity(u32 p, std::size_t n) {
        Mat m(p, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
    static Mat zero(u32 p, std::size_t rows, std::size_t cols) { return Mat(p, rows, cols); }

    // single column from a vector
    static Mat col_vec(u32 p, const std::vector<u32>& v) {
        Mat m(p, v.size(), 1);
        for (std::size_t i = 0; i < v.size(); ++i) m.at(i, 0) = v[i] % p;
        return m;
    }
    static Mat row_vec(u32 p, const std::vector<u32>& v) {
        Mat m(p, 1, v.size());
        for (std::size_t j = 0; j < v.size(); ++j) m.at(0, j) = v[j] % p;
        return m;
    }

    u32 p() const { return p_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty_shape() const { return rows_ == 0 || cols_ == 0; }

    u32 operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
    u32& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const std::vector<u32>& entries() const { return e_; }

    std::vector<u32> row(std::size_t i) const {
        return std::vector<u32>(e_.begin() + i * cols_, e_.begin() + (i + 1) * cols_);
    }
    std::vector<u32> col(std::size_t j) const {
        std::vector<u32> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    bool operator==(const Mat& o) const {
        return p_ == o.p_ && rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }
    bool is_zero() const {
        for (u32 v : e_)
            if (v) return false;
        return true;
    }
    bool is_identity() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if ((*this)(i, j) != (i == j ? 1u : 0u)) return false;
        return true;
    }

    Mat operator+(const Mat& o) const {
        require_same_shape(o);
        Mat r(p_, rows_, cols_);
        for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = (e_[k] + o.e_[k]) % p_;
        return r;
    }
    Mat operator-(const Mat& o) const {
        require_same_shape(o);
        Mat r(p_, rows_, cols_);
        for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = (e_[k] + p_ - o.e_[k]) % p_;
        return r;
    }
    Mat operator*(const Mat& o) const {
        if (p_ != o.p_) throw std::invalid_argument("modulus mismatch in matrix product");
        if (cols_ != o.rows_) throw std::invalid_argument("shape mismatch in matrix product");
        Mat r(p_, rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                u64 a = (*this)(i, k);
                if (!a) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    r.e_[i * o.cols_ + j] =
                        static_cast<u32>((r.e_[i * o.cols_ + j] + a * o(k, j)) % p_);
            }
        return r;
    }
    Mat scaled(u32 c) const {
        Mat r(p_, rows_, cols_);
        for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = static_cast<u32>(u64(e_[k]) * c % p_);
        return r;
    }
    Mat transpose() const {
        Mat r(p_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = (*this)(i, j);
        return r;
    }

    Mat hstack(const Mat& o) const {
        if (rows_ != o.rows_ || p_ != o.p_) throw std::invalid_argument("hstack mismatch");
        Mat r(p_, rows_, cols_ + o.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = (*this)(i, j);
            for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o(i, j);
        }
        return r;
    }
    Mat vstack(const Mat& o) const {
        if (cols_ != o.cols_ || p_ != o.p_) throw std::invalid_argument("vstack mismatch");
        Mat r(p_, rows_ + o.rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = (*this)(i, j);
        for (std::size_t i = 0; i < o.rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(rows_ + i, j) = o(i, j);
        return r;
    }
    Mat block(std::size_t i0, std::size_t j0, std::size_t nr, std::size_t nc) const {
        Mat r(p_, nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) r.at(i, j) = (*this)(i0 + i, j0 + j);
        return r;
    }
    // diag(this, o)
    Mat dsum(const Mat& o) const {
        Mat r(p_, rows_ + o.rows_, cols_ + o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = (*this)(i, j);
        for (std::size_t i = 0; i < o.rows_; ++i)
            for (std::size_t j = 0; j < o.cols_; ++j) r.at(rows_ + i, cols_ + j) = o(i, j);
        return r;
    }
    // Kronecker product; index (i,j) of this pairs with blocks of o.
    Mat kron(const Mat& o) const {
        Mat r(p_, rows_ * o.rows_, cols_ * o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) {
                u64 c = (*this)(i, j);
                if (!c) continue;
                for (std::size_t k = 0; k < o.rows_; ++k)
                    for (std::size_t l = 0; l < o.cols_; ++l)
                        r.at(i * o.rows_ + k, j * o.cols_ + l) =
                            static_cast<u32>(c * o(k, l) % p_);
            }
        return r;
    }

    // row-major flattening of this matrix as a single row
    std::vector<u32> flat() const { return e_; }

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < rows_; ++i) {
            s += i ? "; " : "[";
            for (std::size_t j = 0; j < cols_; ++j) s += (j ? " " : "") + std::to_string((*this)(i, j));
        }
        return s + "]";
    }

  private:
    void require_same_shape(const Mat& o) const {
        if (p_ != o.p_ || rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix shape/modulus mismatch");
    }

    u32 p_;
    std::size_t rows_, cols_;
    std::vector<u32> e_;
};

struct RrefResult {
    Mat reduced;
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_cols;
};

// Unique reduced row-echelon form, leftmost-pivot rule.
inline RrefResult rref(const Mat& m) {
    Mat a = m;
    const u32 p = a.p();
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
    for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
        std::size_t piv = rank;
        while (piv < a.rows() && a(piv, col) == 0) ++piv;
        if (piv == a.rows()) continue;
        if (piv != rank)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(piv, j), a.at(rank, j));
        const u32 inv = inv_mod(a(rank, col), p);
        for (std::size_t j = col; j < a.cols(); ++j)
            a.at(rank, j) = static_cast<u32>(u64(a(rank, j)) * inv % p);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == rank) continue;
            const u32 f = a(i, col);
            if (!f) continue;
            for (std::size_t j = col; j < a.cols(); ++j)
                a.at(i, j) = static_cast<u32>((a(i, j) + u64(p - f) * a(rank, j)) % p);
        }
        pivots.push_back(col);
        ++rank;
    }
    return {std::move(a), rank, std::move(pivots)};
}

inline std::size_t rank_of(const Mat& m) { return rref(m).rank; }

// A linear subspace of F_p^ambient, stored as a canonical RREF row basis.
struct Subspace {
    std::size_t ambient = 0;
    Mat basis;  // dim x ambient, rows linearly independent, reduced echelon
    std::vector<std::size_t> pivot_cols;

    std::size_t dim() const { return basis.rows(); }
    u32 p() const { return basis.p(); }

    bool operator==(const Subspace& o) const {
        return ambient == o.ambient && basis == o.basis;
    }

    static Subspace zero(u32 p, std::size_t ambient) {
        Subspace s;
        s.ambient = ambient;
        s.basis = Mat(p, 0, ambient);
        return s;
    }
    static Subspace full(u32 p, std::size_t ambient) {
        return from_rows(Mat::identity(p, ambient));
    }
    // span of the rows, canonicalized
    static Subspace from_rows(const Mat& rows) {
        RrefResult r = rref(rows);
        Subspace s;
        s.ambient = rows.cols();
        s.basis = r.reduced.block(0, 0, r.rank, rows.cols());
        s.pivot_cols = r.pivot_cols;
        return s;
    }
    static Subspace from_cols(const Mat& cols) { return from_rows(cols.transpose()); }

    // coordinates of v in the RREF basis (read off at pivot columns); nullopt if v outside
    std::optional<std::vector<u32>> coords(const std::vector<u32>& v) const {
        const u32 pp = basis.p();
        std::vector<u32> c(dim());
        for (std::size_t r = 0; r < dim(); ++r) c[r] = v[pivot_cols[r]] % pp;
        // verify reconstruction
        for (std::size_t j = 0; j < ambient; ++j) {
            u64 acc = 0;
            for (std::size_t r = 0; r < dim(); ++r) acc += u64(c[r]) * basis(r, j);
            if (acc % pp != v[j] % pp) return std::nullopt;
        }
        return c;
    }
    bool contains_vec(const std::vector<u32>& v) const { return coords(v).has_value(); }
    bool contains(const Subspace& o) const {
        for (std::size_t r = 0; r < o.dim(); ++r)
            if (!contains_vec(o.basis.row(r))) return false;
        return true;
    }

    Subspace sum(const Subspace& o) const {
        if (ambient != o.ambient) throw std::invalid_argument("subspace ambient mismatch");
        return from_rows(basis.vstack(o.basis));
    }
    Subspace intersect(const Subspace& o) const {
        if (ambient != o.ambient) throw std::invalid_argument("subspace ambient mismatch");
        if (dim() == 0 || o.dim() == 0) return zero(basis.p(), ambient);
        // x = basis^T c = o.basis^T d  <=>  (c,d) in ker [basis^T | -o.basis^T]
        Mat sys = basis.transpose().hstack(o.basis.transpose().scaled(basis.p() - 1));
        RrefResult r = rref(sys);
        // kernel vectors -> take c-part, map to ambient
        std::vector<u32> zerov;
        Mat gens(basis.p(), 0, ambient);
        std::size_t n = sys.cols();
        std::vector<bool> is_piv(n, false);
        for (auto c : r.pivot_cols) is_piv[c] = true;
        for (std::size_t f = 0; f < n; ++f) {
            if (is_piv[f]) continue;
            std::vector<u32> k(n, 0);
            k[f] = 1;
            for (std::size_t rr = 0; rr < r.rank; ++rr)
                k[r.pivot_cols[rr]] = (basis.p() - r.reduced(rr, f)) % basis.p();
            // ambient vector = sum over first dim() coords of basis rows
            std::vector<u32> v(ambient, 0);
            for (std::size_t c = 0; c < dim(); ++c)
                for (std::size_t j = 0; j < ambient; ++j)
                    v[j] = static_cast<u32>((v[j] + u64(k[c]) * basis(c, j)) % basis.p());
            gens = gens.vstack(Mat::row_vec(basis.p(), v));
        }
        return from_rows(gens);
    }
};

// kernel of m (as a map F^cols -> F^rows), canonical basis
inline Subspace kernel(const Mat& m) {
    RrefResult r = rref(m);
    const u32 p = m.p();
    std::vector<bool> is_piv(m.cols(), false);
    for (auto c : r.pivot_cols) is_piv[c] = true;
    Mat rows(p, 0, m.cols());
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_piv[f]) continue;
        std::vector<u32> k(m.cols(), 0);
        k[f] = 1;
        for (std::size_t rr = 0; rr < r.rank; ++rr)
            k[r.pivot_cols[rr]] = (p - r.reduced(rr, f)) % p;
        rows = rows.vstack(Mat::row_vec(p, k));
    }
    return Subspace::from_rows(rows);
}

inline Subspace column_space(const Mat& m) { return Subspace::from_cols(m); }

struct SolveResult {
    Mat particular;       // cols(a) x cols(b), free variables zero
    Subspace kernel_basis;  // kernel of a
};

// Solve a X = b for all columns of b simultaneously; nullopt when inconsistent.
inline std::optional<SolveResult> solve(const Mat& a, const Mat& b) {
    if (a.p() != b.p()) throw std::invalid_argument("solve: modulus mismatch");
    if (a.rows() != b.rows()) throw std::invalid_argument("solve: row count mismatch");
    RrefResult r = rref(a.hstack(b));
    // consistency: no pivot may fall in the b-columns
    for (auto c : r.pivot_cols)
        if (c >= a.cols()) return std::nullopt;
    Mat x(a.p(), a.cols(), b.cols());
    for (std::size_t rr = 0; rr < r.pivot_cols.size(); ++rr)
        for (std::size_t j = 0; j < b.cols(); ++j)
            x.at(r.pivot_cols[rr], j) = r.reduced(rr, a.cols() + j);
    return SolveResult{std::move(x), kernel(a)};
}

struct QuotientMaps {
    std::size_t dim = 0;
    Mat projection;  // dim x ambient, kernel exactly the subspace
    Mat section;     // ambient x dim, projection * section = I
};

// Quotient of F^ambient by sub; complement = non-pivot coordinates.
inline QuotientMaps quotient(std::size_t ambient, const Subspace& sub) {
    if (sub.ambient != ambient) throw std::invalid_argument("quotient: ambient mismatch");
    const u32 p = sub.p();
    std::vector<bool> is_piv(ambient, false);
    for (auto c : sub.pivot_cols) is_piv[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < ambient; ++j)
        if (!is_piv[j]) free_cols.push_back(j);
    const std::size_t q = free_cols.size();
    QuotientMaps result;
    result.dim = q;
    // projection = E_F (I - B^T E_P): subtract the sub-part read off at pivots
    Mat proj(p, q, ambient);
    for (std::size_t r = 0; r < q; ++r) {
        proj.at(r, free_cols[r]) = 1;
        for (std::size_t k = 0; k < sub.dim(); ++k) {
            u32 coef = sub.basis(k, free_cols[r]);
            if (coef)
                proj.at(r, sub.pivot_cols[k]) =
                    (proj(r, sub.pivot_cols[k]) + p - coef) % p;
        }
    }
    Mat sec(p, ambient, q);
    for (std::size_t r = 0; r < q; ++r) sec.at(free_cols[r], r) = 1;
    result.projection = std::move(proj);
    result.section = std::move(sec);
    return result;
}

}  // namespace trimod
