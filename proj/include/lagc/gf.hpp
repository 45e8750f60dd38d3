/**************************************************************************
 * gf.hpp
 *
 * Copyright 2026 The lagc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 **************************************************************************/

/**
 * @file gf.hpp
 * @brief The field tower k = F_q ⊂ ℓ = F_{q^r} and exact linear algebra over k.
 *
 * Element encoding. An element of k = F_p[z]/(modulus_k) is stored as the
 * integer Σ d_i p^i where (d_0, ..., d_{e-1}) are its coordinates in the power
 * basis (1, z, ..., z^{e-1}). An element of ℓ = k[β]/(modulus_l) is stored as
 * Σ c_i q^i where c_i ∈ k are its coordinates in (1, β, ..., β^{r-1}). Under
 * these encodings k embeds into ℓ as the integers 0..q-1, and the same
 * integers are used in every serialized artifact.
 *
 * Both moduli are the first monic irreducible polynomial of the required
 * degree when the monic polynomials are ordered by their little-endian
 * integer encoding (so lexicographically from the leading coefficient down).
 */

#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace lagc::gf {

struct KElem {
    std::uint32_t v = 0;
    friend constexpr auto operator<=>(KElem, KElem) = default;
};

struct LElem {
    std::uint32_t v = 0;
    friend constexpr auto operator<=>(LElem, LElem) = default;
};

/// Little-endian coefficient vector of a polynomial over F_p.
using PolyFp = std::vector<std::uint32_t>;

/// Dense matrix over k, row-major.
class MatK {
public:
    MatK() = default;
    MatK(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static MatK identity(std::size_t n) {
        MatK m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = KElem{1};
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    KElem& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    KElem operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool is_zero() const noexcept {
        for (auto x : a_)
            if (x.v != 0)
                return false;
        return true;
    }

    friend bool operator==(const MatK&, const MatK&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<KElem> a_;
};

namespace detail {

inline bool is_prime(std::uint64_t n) {
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0)
                n /= d;
        }
    }
    if (n > 1)
        out.push_back(n);
    return out;
}

/// b^e, or 0 if the result exceeds `limit`.
inline std::uint64_t checked_pow(std::uint64_t b, std::uint64_t e, std::uint64_t limit) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < e; ++i) {
        if (r > limit / b)
            return 0;
        r *= b;
    }
    return r;
}

/// Remainder of f modulo a monic g over a field described by `F`.
/// F supplies zero(), add, sub, mul and is_zero on its element type.
template <class F, class T>
std::vector<T> poly_rem(const F& fld, std::vector<T> f, const std::vector<T>& g) {
    const std::size_t dg = g.size() - 1;
    while (f.size() > dg) {
        const T lead = f.back();
        const std::size_t shift = f.size() - 1 - dg;
        if (!fld.is_zero(lead))
            for (std::size_t i = 0; i < dg; ++i)
                f[shift + i] = fld.sub(f[shift + i], fld.mul(lead, g[i]));
        f.pop_back();
    }
    return f;
}

/// Trial division by every monic polynomial of degree 1..deg/2.
template <class F, class T>
bool is_irreducible(const F& fld, const std::vector<T>& f) {
    const std::size_t n = f.size() - 1;
    if (n == 0)
        return false;
    const std::uint64_t fs = fld.size();
    for (std::size_t d = 1; 2 * d <= n; ++d) {
        const std::uint64_t count = checked_pow(fs, d, ~std::uint64_t{0} >> 1);
        std::vector<T> g(d + 1);
        g[d] = fld.one();
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            std::uint64_t t = idx;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = fld.from_index(t % fs);
                t /= fs;
            }
            auto rem = poly_rem(fld, f, g);
            bool zero = true;
            for (const auto& c : rem)
                zero = zero && fld.is_zero(c);
            if (zero)
                return false;
        }
    }
    return true;
}

/// First monic irreducible polynomial of degree n in little-endian index order.
template <class F>
auto first_irreducible(const F& fld, std::size_t n) {
    using T = decltype(fld.one());
    const std::uint64_t fs = fld.size();
    const std::uint64_t count = checked_pow(fs, n, ~std::uint64_t{0} >> 1);
    std::vector<T> f(n + 1);
    f[n] = fld.one();
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::uint64_t t = idx;
        for (std::size_t i = 0; i < n; ++i) {
            f[i] = fld.from_index(t % fs);
            t /= fs;
        }
        if (is_irreducible(fld, f))
            return f;
    }
    fail(Errc::NotIrreducible, "no irreducible polynomial found");
}

struct PrimeField {
    std::uint32_t p;
    std::uint32_t zero() const { return 0; }
    std::uint32_t one() const { return 1; }
    std::uint64_t size() const { return p; }
    std::uint32_t from_index(std::uint64_t i) const { return static_cast<std::uint32_t>(i); }
    bool is_zero(std::uint32_t a) const { return a == 0; }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return (a + b) % p; }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return (a + p - b) % p; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return static_cast<std::uint32_t>((std::uint64_t{a} * b) % p);
    }
};

} // namespace detail

/**
 * The pair k = F_q ⊂ ℓ = F_{q^r} together with the q-Frobenius Φ of ℓ/k.
 *
 * Towers are immutable once built and are handed around as
 * shared_ptr<const FieldTower>; element values are plain integers and carry
 * no back-pointer, so all arithmetic goes through the tower.
 */
class FieldTower {
public:
    static constexpr std::uint64_t kMaxFieldSize = std::uint64_t{1} << 24;
    static constexpr std::uint64_t kMaxBaseSize = std::uint64_t{1} << 16;

    static std::shared_ptr<const FieldTower> make(std::uint32_t p, std::uint32_t e, std::uint32_t r) {
        return std::shared_ptr<const FieldTower>(new FieldTower(p, e, r, {}, {}));
    }

    /// Build a tower from explicit moduli; both are checked for irreducibility.
    static std::shared_ptr<const FieldTower> make(std::uint32_t p, std::uint32_t e, std::uint32_t r,
                                                  PolyFp modulus_k, std::vector<KElem> modulus_l) {
        return std::shared_ptr<const FieldTower>(
            new FieldTower(p, e, r, std::move(modulus_k), std::move(modulus_l)));
    }

    FieldTower(const FieldTower&) = delete;
    FieldTower& operator=(const FieldTower&) = delete;

    std::uint32_t p() const noexcept { return p_; }
    std::uint32_t e() const noexcept { return e_; }
    std::uint32_t r() const noexcept { return r_; }
    std::uint32_t q() const noexcept { return q_; }
    /// |ℓ| = q^r.
    std::uint32_t size() const noexcept { return size_; }

    const PolyFp& modulus_k() const noexcept { return modulus_k_; }
    const std::vector<KElem>& modulus_l() const noexcept { return modulus_l_; }
    LElem generator() const noexcept { return generator_; }

    // ---- k = F_q -------------------------------------------------------

    std::uint64_t k_size() const noexcept { return q_; }
    KElem k_from_int(std::int64_t n) const {
        const std::int64_t pp = p_;
        return KElem{static_cast<std::uint32_t>(((n % pp) + pp) % pp)};
    }
    KElem k_add(KElem a, KElem b) const {
        if (p_ == 2)
            return KElem{a.v ^ b.v};
        if (e_ == 1)
            return KElem{(a.v + b.v) % p_};
        std::uint32_t out = 0, pw = 1;
        for (std::uint32_t i = 0; i < e_; ++i) {
            out += ((a.v % p_ + b.v % p_) % p_) * pw;
            a.v /= p_;
            b.v /= p_;
            pw *= p_;
        }
        return KElem{out};
    }
    KElem k_neg(KElem a) const {
        if (p_ == 2)
            return a;
        if (e_ == 1)
            return KElem{(p_ - a.v) % p_};
        std::uint32_t out = 0, pw = 1;
        for (std::uint32_t i = 0; i < e_; ++i) {
            out += ((p_ - a.v % p_) % p_) * pw;
            a.v /= p_;
            pw *= p_;
        }
        return KElem{out};
    }
    KElem k_sub(KElem a, KElem b) const { return k_add(a, k_neg(b)); }
    KElem k_mul(KElem a, KElem b) const {
        if (a.v == 0 || b.v == 0)
            return KElem{0};
        if (e_ == 1)
            return KElem{static_cast<std::uint32_t>((std::uint64_t{a.v} * b.v) % p_)};
        std::uint32_t s = k_log_[a.v] + k_log_[b.v];
        if (s >= q_ - 1)
            s -= q_ - 1;
        return k_exp_[s];
    }
    KElem k_inv(KElem a) const {
        if (a.v == 0)
            fail(Errc::DivisionByZero, "inverse of 0 in k");
        return k_inv_[a.v];
    }
    KElem k_pow(KElem a, std::uint64_t n) const {
        KElem r{1};
        while (n) {
            if (n & 1)
                r = k_mul(r, a);
            a = k_mul(a, a);
            n >>= 1;
        }
        return r;
    }

    // ---- ℓ = F_{q^r} ---------------------------------------------------

    static constexpr LElem zero() noexcept { return LElem{0}; }
    static constexpr LElem one() noexcept { return LElem{1}; }
    static constexpr LElem embed(KElem a) noexcept { return LElem{a.v}; }
    bool in_k(LElem a) const noexcept { return a.v < q_; }

    /// β^i, the i-th vector of the fixed power basis.
    LElem basis(std::uint32_t i) const { return LElem{pow_q_.at(i)}; }

    KElem coord(LElem a, std::uint32_t i) const { return KElem{(a.v / pow_q_[i]) % q_}; }
    std::vector<KElem> coords(LElem a) const {
        std::vector<KElem> c(r_);
        for (std::uint32_t i = 0; i < r_; ++i) {
            c[i] = KElem{a.v % q_};
            a.v /= q_;
        }
        return c;
    }
    LElem from_coords(std::span<const KElem> c) const {
        if (c.size() != r_)
            fail(Errc::ShapeMismatch, "coordinate vector has wrong length");
        std::uint32_t v = 0;
        for (std::uint32_t i = r_; i-- > 0;) {
            if (c[i].v >= q_)
                fail(Errc::InvalidArgument, "coordinate outside k");
            v = v * q_ + c[i].v;
        }
        return LElem{v};
    }

    LElem add(LElem a, LElem b) const {
        if (p_ == 2)
            return LElem{a.v ^ b.v};
        if (r_ == 1)
            return LElem{k_add(KElem{a.v}, KElem{b.v}).v};
        std::uint32_t out = 0;
        for (std::uint32_t i = 0; i < r_; ++i) {
            out += k_add(KElem{a.v % q_}, KElem{b.v % q_}).v * pow_q_[i];
            a.v /= q_;
            b.v /= q_;
        }
        return LElem{out};
    }
    LElem neg(LElem a) const {
        if (p_ == 2)
            return a;
        std::uint32_t out = 0;
        for (std::uint32_t i = 0; i < r_; ++i) {
            out += k_neg(KElem{a.v % q_}).v * pow_q_[i];
            a.v /= q_;
        }
        return LElem{out};
    }
    LElem sub(LElem a, LElem b) const { return add(a, neg(b)); }

    /// k-scalar action c·a.
    LElem scale(KElem c, LElem a) const {
        if (c.v == 0)
            return zero();
        std::uint32_t out = 0;
        for (std::uint32_t i = 0; i < r_; ++i) {
            out += k_mul(c, KElem{a.v % q_}).v * pow_q_[i];
            a.v /= q_;
        }
        return LElem{out};
    }

    LElem mul(LElem a, LElem b) const {
        if (a.v == 0 || b.v == 0)
            return zero();
        if (r_ == 1)
            return LElem{k_mul(KElem{a.v}, KElem{b.v}).v};
        std::array<KElem, kMaxDegree> ad{}, bd{};
        std::array<KElem, 2 * kMaxDegree> c{};
        for (std::uint32_t i = 0; i < r_; ++i) {
            ad[i] = KElem{a.v % q_};
            bd[i] = KElem{b.v % q_};
            a.v /= q_;
            b.v /= q_;
        }
        for (std::uint32_t i = 0; i < r_; ++i) {
            if (ad[i].v == 0)
                continue;
            for (std::uint32_t j = 0; j < r_; ++j)
                if (bd[j].v != 0)
                    c[i + j] = k_add(c[i + j], k_mul(ad[i], bd[j]));
        }
        for (std::uint32_t deg = 2 * r_ - 2; deg >= r_; --deg) {
            const KElem lead = c[deg];
            if (lead.v == 0)
                continue;
            const std::uint32_t shift = deg - r_;
            for (std::uint32_t i = 0; i < r_; ++i)
                if (modulus_l_[i].v != 0)
                    c[shift + i] = k_sub(c[shift + i], k_mul(lead, modulus_l_[i]));
        }
        std::uint32_t v = 0;
        for (std::uint32_t i = r_; i-- > 0;)
            v = v * q_ + c[i].v;
        return LElem{v};
    }

    LElem pow(LElem a, std::uint64_t n) const {
        LElem r = one();
        while (n) {
            if (n & 1)
                r = mul(r, a);
            a = mul(a, a);
            n >>= 1;
        }
        return r;
    }

    LElem inv(LElem a) const {
        if (a.v == 0)
            fail(Errc::DivisionByZero, "inverse of 0 in ℓ");
        return pow(a, std::uint64_t{size_} - 2);
    }

    /// a^{q^j}; j is taken modulo r, so negative exponents are allowed.
    LElem frobenius(LElem a, std::int64_t j) const {
        const std::int64_t rr = r_;
        const auto jj = static_cast<std::uint32_t>(((j % rr) + rr) % rr);
        if (jj == 0 || a.v < q_)
            return a;
        const LElem* row = &frob_[std::size_t{jj} * r_];
        LElem out = zero();
        for (std::uint32_t i = 0; i < r_; ++i) {
            const KElem c{a.v % q_};
            a.v /= q_;
            if (c.v != 0)
                out = add(out, scale(c, row[i]));
        }
        return out;
    }

    /// N_{ℓ/k}(a) = a^{(q^r-1)/(q-1)}.
    KElem norm(LElem a) const {
        if (a.v == 0)
            return KElem{0};
        const LElem n = pow(a, (std::uint64_t{size_} - 1) / (q_ - 1));
        if (!in_k(n))
            fail(Errc::InvalidArgument, "norm landed outside k (corrupt tower)");
        return KElem{n.v};
    }

    /// The generator power g^i of least i with N(g^i) = c.
    LElem norm_preimage(KElem c) const {
        if (c.v == 0)
            fail(Errc::NormPreimageOfZero, "0 has no preimage in ℓ^×");
        if (c.v >= q_)
            fail(Errc::InvalidArgument, "value outside k");
        const KElem n0 = norm(generator_);
        KElem cur{1};
        LElem gi = one();
        for (std::uint64_t i = 0; i + 1 < size_; ++i) {
            if (cur == c)
                return gi;
            cur = k_mul(cur, n0);
            gi = mul(gi, generator_);
        }
        fail(Errc::InvalidArgument, "norm is not surjective (corrupt tower)");
    }

    // ---- linear algebra over k -------------------------------------------

    /// Matrix of v ↦ a·Φ^j(v) in the power basis; column c is the image of β^c.
    MatK endo_matrix(LElem a, std::int64_t j) const {
        if (j < 0 || j >= static_cast<std::int64_t>(r_))
            fail(Errc::InvalidExponent, "endo_matrix exponent must lie in [0, r)");
        MatK m(r_, r_);
        for (std::uint32_t c = 0; c < r_; ++c) {
            const LElem img = mul(a, frobenius(basis(c), j));
            LElem t = img;
            for (std::uint32_t i = 0; i < r_; ++i) {
                m(i, c) = KElem{t.v % q_};
                t.v /= q_;
            }
        }
        return m;
    }

    /// Interpret ℓ-elements as the columns of an r×n matrix.
    MatK columns_to_mat(std::span<const LElem> cols) const {
        MatK m(r_, cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c) {
            LElem t = cols[c];
            for (std::uint32_t i = 0; i < r_; ++i) {
                m(i, c) = KElem{t.v % q_};
                t.v /= q_;
            }
        }
        return m;
    }

    std::vector<LElem> mat_to_columns(const MatK& m) const {
        if (m.rows() != r_)
            fail(Errc::ShapeMismatch, "matrix must have r rows");
        std::vector<LElem> out(m.cols());
        for (std::size_t c = 0; c < m.cols(); ++c) {
            std::uint32_t v = 0;
            for (std::uint32_t i = r_; i-- > 0;)
                v = v * q_ + m(i, c).v;
            out[c] = LElem{v};
        }
        return out;
    }

    MatK mat_mul(const MatK& a, const MatK& b) const {
        if (a.cols() != b.rows())
            fail(Errc::ShapeMismatch, "matrix product dimensions");
        MatK out(a.rows(), b.cols());
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t l = 0; l < a.cols(); ++l) {
                const KElem x = a(i, l);
                if (x.v == 0)
                    continue;
                for (std::size_t j = 0; j < b.cols(); ++j)
                    out(i, j) = k_add(out(i, j), k_mul(x, b(l, j)));
            }
        return out;
    }

    MatK mat_add(const MatK& a, const MatK& b) const {
        if (a.rows() != b.rows() || a.cols() != b.cols())
            fail(Errc::ShapeMismatch, "matrix sum dimensions");
        MatK out(a.rows(), a.cols());
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j)
                out(i, j) = k_add(a(i, j), b(i, j));
        return out;
    }

    MatK mat_sub(const MatK& a, const MatK& b) const {
        if (a.rows() != b.rows() || a.cols() != b.cols())
            fail(Errc::ShapeMismatch, "matrix difference dimensions");
        MatK out(a.rows(), a.cols());
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j)
                out(i, j) = k_sub(a(i, j), b(i, j));
        return out;
    }

    std::size_t rank(MatK m) const { return eliminate(m, nullptr); }
    std::size_t kernel_dim(const MatK& m) const { return m.cols() - rank(m); }

    KElem det(MatK m) const {
        if (m.rows() != m.cols())
            fail(Errc::ShapeMismatch, "determinant of a non-square matrix");
        KElem d{1};
        if (eliminate(m, &d) < m.rows())
            return KElem{0};
        return d;
    }

    /// k-rank of a family of ℓ-elements (the rank of their coordinate columns).
    std::size_t rank_of(std::span<const LElem> cols) const {
        std::array<std::array<std::uint32_t, kMaxDegree>, kMaxDegree> rows{};
        const std::size_t n = std::min<std::size_t>(cols.size(), kMaxDegree);
        if (cols.size() > kMaxDegree)
            return rank(columns_to_mat(cols));
        // Row-reduce the transposed system: one row per input vector.
        for (std::size_t c = 0; c < n; ++c) {
            std::uint32_t t = cols[c].v;
            for (std::uint32_t i = 0; i < r_; ++i) {
                rows[c][i] = t % q_;
                t /= q_;
            }
        }
        std::size_t rk = 0;
        for (std::uint32_t col = 0; col < r_ && rk < n; ++col) {
            std::size_t piv = rk;
            while (piv < n && rows[piv][col] == 0)
                ++piv;
            if (piv == n)
                continue;
            std::swap(rows[piv], rows[rk]);
            const KElem inv = k_inv(KElem{rows[rk][col]});
            for (std::size_t i = rk + 1; i < n; ++i) {
                if (rows[i][col] == 0)
                    continue;
                const KElem f = k_mul(KElem{rows[i][col]}, inv);
                for (std::uint32_t j = col; j < r_; ++j)
                    rows[i][j] = k_sub(KElem{rows[i][j]}, k_mul(f, KElem{rows[rk][j]})).v;
            }
            ++rk;
        }
        return rk;
    }

private:
    static constexpr std::uint32_t kMaxDegree = 24;

    FieldTower(std::uint32_t p, std::uint32_t e, std::uint32_t r, PolyFp modulus_k, std::vector<KElem> modulus_l)
        : p_(p), e_(e), r_(r) {
        if (!detail::is_prime(p))
            fail(Errc::NotPrime, "p = " + std::to_string(p) + " is not prime");
        if (e == 0 || r == 0)
            fail(Errc::InvalidArgument, "e and r must be positive");
        const std::uint64_t q = detail::checked_pow(p, e, kMaxBaseSize);
        if (q == 0)
            fail(Errc::TooLarge, "q exceeds 2^16");
        const std::uint64_t big = detail::checked_pow(q, r, kMaxFieldSize);
        if (big == 0 || r > kMaxDegree)
            fail(Errc::TooLarge, "q^r exceeds 2^24");
        q_ = static_cast<std::uint32_t>(q);
        size_ = static_cast<std::uint32_t>(big);

        const detail::PrimeField fp{p};
        if (modulus_k.empty()) {
            modulus_k_ = detail::first_irreducible(fp, e);
        } else {
            if (modulus_k.size() != e + 1 || modulus_k.back() != 1)
                fail(Errc::InvalidArgument, "modulus_k must be monic of degree e");
            for (auto c : modulus_k)
                if (c >= p)
                    fail(Errc::InvalidArgument, "modulus_k coefficient not reduced mod p");
            if (!detail::is_irreducible(fp, modulus_k))
                fail(Errc::NotIrreducible, "modulus_k is reducible over F_p");
            modulus_k_ = std::move(modulus_k);
        }
        build_k_tables();

        const KField kf{this};
        if (modulus_l.empty()) {
            modulus_l_ = detail::first_irreducible(kf, r);
        } else {
            if (modulus_l.size() != r + 1 || modulus_l.back() != KElem{1})
                fail(Errc::InvalidArgument, "modulus_l must be monic of degree r");
            for (auto c : modulus_l)
                if (c.v >= q_)
                    fail(Errc::InvalidArgument, "modulus_l coefficient outside k");
            if (!detail::is_irreducible(kf, modulus_l))
                fail(Errc::NotIrreducible, "modulus_l is reducible over k");
            modulus_l_ = std::move(modulus_l);
        }

        pow_q_.resize(r_ + 1);
        pow_q_[0] = 1;
        for (std::uint32_t i = 1; i <= r_; ++i)
            pow_q_[i] = pow_q_[i - 1] * q_;

        frob_.assign(std::size_t{r_} * r_, LElem{});
        for (std::uint32_t i = 0; i < r_; ++i)
            frob_[i] = basis(i);
        for (std::uint32_t i = 0; i < r_; ++i)
            frob_[r_ + i] = pow(basis(i), q_);
        for (std::uint32_t j = 2; j < r_; ++j)
            for (std::uint32_t i = 0; i < r_; ++i)
                frob_[j * r_ + i] = apply_frob_once(frob_[(j - 1) * r_ + i]);

        generator_ = find_generator();
    }

    // k as a field for the generic polynomial helpers.
    struct KField {
        const FieldTower* t;
        KElem zero() const { return KElem{0}; }
        KElem one() const { return KElem{1}; }
        std::uint64_t size() const { return t->q_; }
        KElem from_index(std::uint64_t i) const { return KElem{static_cast<std::uint32_t>(i)}; }
        bool is_zero(KElem a) const { return a.v == 0; }
        KElem add(KElem a, KElem b) const { return t->k_add(a, b); }
        KElem sub(KElem a, KElem b) const { return t->k_sub(a, b); }
        KElem mul(KElem a, KElem b) const { return t->k_mul(a, b); }
    };

    void build_k_tables() {
        k_inv_.assign(q_, KElem{0});
        if (e_ == 1) {
            for (std::uint32_t a = 1; a < q_; ++a)
                k_inv_[a] = k_pow(KElem{a}, p_ - 2);
            return;
        }
        // Multiply digit vectors modulo modulus_k to find a primitive element.
        const detail::PrimeField fp{p_};
        auto to_poly = [&](std::uint32_t v) {
            PolyFp d(e_);
            for (std::uint32_t i = 0; i < e_; ++i) {
                d[i] = v % p_;
                v /= p_;
            }
            return d;
        };
        auto from_poly = [&](const PolyFp& d) {
            std::uint32_t v = 0;
            for (std::uint32_t i = static_cast<std::uint32_t>(d.size()); i-- > 0;)
                v = v * p_ + d[i];
            return v;
        };
        auto mulmod = [&](std::uint32_t a, std::uint32_t b) {
            const PolyFp x = to_poly(a), y = to_poly(b);
            PolyFp z(2 * e_ - 1, 0);
            for (std::uint32_t i = 0; i < e_; ++i)
                for (std::uint32_t j = 0; j < e_; ++j)
                    z[i + j] = fp.add(z[i + j], fp.mul(x[i], y[j]));
            auto rem = detail::poly_rem(fp, z, modulus_k_);
            rem.resize(e_, 0);
            return from_poly(rem);
        };
        const auto factors = detail::prime_factors(q_ - 1);
        auto powmod = [&](std::uint32_t a, std::uint64_t n) {
            std::uint32_t r = 1;
            while (n) {
                if (n & 1)
                    r = mulmod(r, a);
                a = mulmod(a, a);
                n >>= 1;
            }
            return r;
        };
        std::uint32_t g = 0;
        for (std::uint32_t cand = 1; cand < q_ && g == 0; ++cand) {
            bool ok = true;
            for (auto f : factors)
                ok = ok && powmod(cand, (q_ - 1) / f) != 1;
            if (ok)
                g = cand;
        }
        k_exp_.assign(q_ - 1, KElem{0});
        k_log_.assign(q_, 0);
        std::uint32_t cur = 1;
        for (std::uint32_t i = 0; i + 1 < q_; ++i) {
            k_exp_[i] = KElem{cur};
            k_log_[cur] = i;
            cur = mulmod(cur, g);
        }
        for (std::uint32_t a = 1; a < q_; ++a)
            k_inv_[a] = k_exp_[(q_ - 1 - k_log_[a]) % (q_ - 1)];
    }

    // Row echelon form in place. If det is given, it receives the product of
    // the pivots with the sign of the row permutation.
    std::size_t eliminate(MatK& m, KElem* det) const {
        std::size_t rk = 0;
        bool odd = false;
        KElem prod{1};
        for (std::size_t col = 0; col < m.cols() && rk < m.rows(); ++col) {
            std::size_t piv = rk;
            while (piv < m.rows() && m(piv, col).v == 0)
                ++piv;
            if (piv == m.rows())
                continue;
            if (piv != rk) {
                for (std::size_t j = 0; j < m.cols(); ++j)
                    std::swap(m(piv, j), m(rk, j));
                odd = !odd;
            }
            const KElem pv = m(rk, col);
            prod = k_mul(prod, pv);
            const KElem inv = k_inv(pv);
            for (std::size_t i = rk + 1; i < m.rows(); ++i) {
                if (m(i, col).v == 0)
                    continue;
                const KElem f = k_mul(m(i, col), inv);
                for (std::size_t j = col; j < m.cols(); ++j)
                    m(i, j) = k_sub(m(i, j), k_mul(f, m(rk, j)));
            }
            ++rk;
        }
        if (det)
            *det = odd ? k_neg(prod) : prod;
        return rk;
    }

    LElem apply_frob_once(LElem a) const {
        LElem out = zero();
        for (std::uint32_t i = 0; i < r_; ++i) {
            const KElem c{a.v % q_};
            a.v /= q_;
            if (c.v != 0)
                out = add(out, scale(c, frob_[r_ + i]));
        }
        return out;
    }

    LElem find_generator() const {
        const auto factors = detail::prime_factors(std::uint64_t{size_} - 1);
        for (std::uint32_t cand = 1; cand < size_; ++cand) {
            bool ok = true;
            for (auto f : factors)
                ok = ok && pow(LElem{cand}, (std::uint64_t{size_} - 1) / f) != one();
            if (ok)
                return LElem{cand};
        }
        fail(Errc::InvalidArgument, "ℓ^× has no generator (corrupt modulus)");
    }

    std::uint32_t p_, e_, r_;
    std::uint32_t q_ = 0;
    std::uint32_t size_ = 0;
    PolyFp modulus_k_;
    std::vector<KElem> modulus_l_;
    std::vector<KElem> k_exp_;
    std::vector<std::uint32_t> k_log_;
    std::vector<KElem> k_inv_;
    std::vector<std::uint32_t> pow_q_;
    std::vector<LElem> frob_;
    LElem generator_{};
};

using TowerPtr = std::shared_ptr<const FieldTower>;

} // namespace lagc::gf
