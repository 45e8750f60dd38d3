/**************************************************************************
 * laurent.hpp
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
 * @file laurent.hpp
 * @brief Laurent series over F_{q^d}, the product ring L = L_0^m with its
 * shift-Frobenius, valuations and the local order Λ_{L,x}.
 *
 * Precision model: a series knows every coefficient of exponent below
 * prec(). Laurent polynomials are exact (prec() == kExact) and stay exact
 * under +, -, *. Only inversion of a non-monomial produces a truncated
 * series, carried to kDefaultPrecision terms past its valuation. Results are
 * tracked pessimistically, and anything that would need an unknown
 * coefficient throws PrecisionExhausted instead of guessing.
 */

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "error.hpp"
#include "gf.hpp"
#include "ore.hpp"
#include "rational.hpp"

namespace lagc::laurent {

class LaurentSeries {
public:
    static constexpr std::int64_t kExact = std::numeric_limits<std::int64_t>::max();
    static constexpr std::int64_t kDefaultPrecision = 64;

    LaurentSeries() = default;

    /// coeffs[i] is the coefficient of t^{val + i}; exponents ≥ prec are discarded.
    LaurentSeries(const gf::FieldTower* tower, std::int64_t val, std::vector<gf::LElem> coeffs,
                  std::int64_t prec = kExact)
        : t_(tower), val_(val), c_(std::move(coeffs)), prec_(prec) {
        normalize();
    }

    static LaurentSeries zero(const gf::FieldTower* t) { return LaurentSeries(t, 0, {}); }
    static LaurentSeries one(const gf::FieldTower* t) { return LaurentSeries(t, 0, {gf::FieldTower::one()}); }
    static LaurentSeries monomial(const gf::FieldTower* t, gf::LElem c, std::int64_t n) {
        return LaurentSeries(t, n, {c});
    }

    const gf::FieldTower* tower() const { return t_; }
    std::int64_t val_offset() const { return val_; }
    const std::vector<gf::LElem>& coeffs() const { return c_; }
    std::int64_t prec() const { return prec_; }
    bool is_exact() const { return prec_ == kExact; }

    /// No nonzero coefficient is known (exact zero, or zero to working precision).
    bool known_zero() const { return c_.empty(); }
    bool is_exact_zero() const { return c_.empty() && is_exact(); }

    /// Coefficient of t^n; PrecisionExhausted if n ≥ prec.
    gf::LElem coeff(std::int64_t n) const {
        if (n >= prec_)
            fail(Errc::PrecisionExhausted, "coefficient beyond known precision");
        if (n < val_ || n >= val_ + static_cast<std::int64_t>(c_.size()))
            return gf::FieldTower::zero();
        return c_[n - val_];
    }

    /// Certified lower bound for the valuation.
    std::int64_t lower_valuation() const { return c_.empty() ? prec_ : val_; }

    /// v_t; ∞ for the exact zero. Throws when nothing nonzero is known yet.
    ExtRational valuation() const {
        if (c_.empty()) {
            if (is_exact())
                return ExtRational::infinity();
            fail(Errc::PrecisionExhausted, "valuation not certified at this precision");
        }
        return ExtRational(val_);
    }

    LaurentSeries frobenius(std::int64_t j) const {
        std::vector<gf::LElem> c(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i)
            c[i] = t_->frobenius(c_[i], j);
        return LaurentSeries(t_, val_, std::move(c), prec_);
    }

    LaurentSeries operator-() const {
        std::vector<gf::LElem> c(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i)
            c[i] = t_->neg(c_[i]);
        return LaurentSeries(t_, val_, std::move(c), prec_);
    }

    friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
        return combine(a, b, false);
    }
    friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) {
        return combine(a, b, true);
    }

    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
        const gf::FieldTower* t = a.t_ ? a.t_ : b.t_;
        if (a.is_exact_zero() || b.is_exact_zero())
            return zero(t);
        const std::int64_t prec =
            std::min(sat_add(a.prec_, b.lower_valuation()), sat_add(b.prec_, a.lower_valuation()));
        if (a.c_.empty() || b.c_.empty())
            return LaurentSeries(t, 0, {}, prec);
        std::size_t len = a.c_.size() + b.c_.size() - 1;
        const std::int64_t val = a.val_ + b.val_;
        if (prec != kExact)
            len = static_cast<std::size_t>(std::clamp<std::int64_t>(prec - val, 0, static_cast<std::int64_t>(len)));
        std::vector<gf::LElem> c(len);
        for (std::size_t i = 0; i < a.c_.size() && i < len; ++i) {
            if (a.c_[i].v == 0)
                continue;
            for (std::size_t j = 0; j < b.c_.size() && i + j < len; ++j)
                c[i + j] = t->add(c[i + j], t->mul(a.c_[i], b.c_[j]));
        }
        return LaurentSeries(t, val, std::move(c), prec);
    }

    /// Inverse to `rel_prec` terms past the valuation (exact for monomials).
    LaurentSeries inverse(std::int64_t rel_prec = kDefaultPrecision) const {
        if (is_exact_zero())
            fail(Errc::DivisionByZero, "inverse of the zero series");
        const std::int64_t v = valuation().value().numerator();
        if (is_exact() && c_.size() == 1)
            return LaurentSeries(t_, -v, {t_->inv(c_[0])});
        std::int64_t n = rel_prec;
        if (!is_exact())
            n = std::min(n, prec_ - v);
        std::vector<gf::LElem> b(static_cast<std::size_t>(n));
        const gf::LElem b0 = t_->inv(c_[0]);
        b[0] = b0;
        for (std::int64_t i = 1; i < n; ++i) {
            gf::LElem s = gf::FieldTower::zero();
            for (std::int64_t k = 1; k <= i && k < static_cast<std::int64_t>(c_.size()); ++k)
                s = t_->add(s, t_->mul(c_[k], b[i - k]));
            b[i] = t_->neg(t_->mul(b0, s));
        }
        return LaurentSeries(t_, -v, std::move(b), -v + n);
    }

    /// Equality of all coefficients known on both sides.
    friend bool certified_equal(const LaurentSeries& a, const LaurentSeries& b) {
        return (a - b).known_zero();
    }

private:
    static std::int64_t sat_add(std::int64_t a, std::int64_t b) {
        if (a == kExact || b == kExact)
            return kExact;
        return a + b;
    }

    static LaurentSeries combine(const LaurentSeries& a, const LaurentSeries& b, bool subtract) {
        const gf::FieldTower* t = a.t_ ? a.t_ : b.t_;
        const std::int64_t prec = std::min(a.prec_, b.prec_);
        if (a.c_.empty() && b.c_.empty())
            return LaurentSeries(t, 0, {}, prec);
        std::int64_t lo = kExact, hi = std::numeric_limits<std::int64_t>::min();
        for (const auto* s : {&a, &b})
            if (!s->c_.empty()) {
                lo = std::min(lo, s->val_);
                hi = std::max(hi, s->val_ + static_cast<std::int64_t>(s->c_.size()));
            }
        if (prec != kExact)
            hi = std::min(hi, prec);
        if (hi <= lo)
            return LaurentSeries(t, 0, {}, prec);
        std::vector<gf::LElem> c(static_cast<std::size_t>(hi - lo));
        for (std::int64_t n = lo; n < hi; ++n) {
            const gf::LElem x = a.raw(n), y = b.raw(n);
            c[n - lo] = subtract ? t->sub(x, y) : t->add(x, y);
        }
        return LaurentSeries(t, lo, std::move(c), prec);
    }

    gf::LElem raw(std::int64_t n) const {
        if (n < val_ || n >= val_ + static_cast<std::int64_t>(c_.size()))
            return gf::FieldTower::zero();
        return c_[n - val_];
    }

    void normalize() {
        if (prec_ != kExact) {
            const std::int64_t keep = std::clamp<std::int64_t>(prec_ - val_, 0, static_cast<std::int64_t>(c_.size()));
            c_.resize(static_cast<std::size_t>(keep));
        }
        std::size_t lead = 0;
        while (lead < c_.size() && c_[lead].v == 0)
            ++lead;
        if (lead == c_.size()) {
            c_.clear();
            val_ = 0;
            return;
        }
        if (lead) {
            c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
            val_ += static_cast<std::int64_t>(lead);
        }
        while (!c_.empty() && c_.back().v == 0)
            c_.pop_back();
    }

    const gf::FieldTower* t_ = nullptr;
    std::int64_t val_ = 0;
    std::vector<gf::LElem> c_;
    std::int64_t prec_ = kExact;
};

/**
 * L = L_0^m with L_0 = F_{q^d}((t)), unramified over K = F_q((t)).
 * Φ(a_1, ..., a_m) = (Φ_0(a_m), a_1, ..., a_{m-1}) has order r = m·d.
 */
class ProductRing {
public:
    using Elem = std::vector<LaurentSeries>;

    ProductRing(std::uint32_t p, std::uint32_t e, std::uint32_t d, std::uint32_t m)
        : tower_(gf::FieldTower::make(p, e, d)), m_(m) {
        if (m == 0)
            fail(Errc::InvalidArgument, "m must be positive");
    }

    const gf::FieldTower& tower() const { return *tower_; }
    const gf::FieldTower* tower_raw() const { return tower_.get(); }
    std::uint32_t m() const { return m_; }
    std::uint32_t d() const { return tower_->r(); }

    Elem zero() const { return Elem(m_, LaurentSeries::zero(tower_.get())); }
    Elem one() const { return Elem(m_, LaurentSeries::one(tower_.get())); }

    Elem add(const Elem& a, const Elem& b) const { return zip(a, b, [](auto& x, auto& y) { return x + y; }); }
    Elem sub(const Elem& a, const Elem& b) const { return zip(a, b, [](auto& x, auto& y) { return x - y; }); }
    Elem mul(const Elem& a, const Elem& b) const { return zip(a, b, [](auto& x, auto& y) { return x * y; }); }
    Elem neg(const Elem& a) const {
        Elem out(m_);
        for (std::uint32_t i = 0; i < m_; ++i)
            out[i] = -a[i];
        return out;
    }

    Elem phi(const Elem& a, std::int64_t j) const {
        const std::int64_t r = order();
        const std::int64_t jj = ((j % r) + r) % r;
        // j shifts: block i of the result is block i-j of a, with one Φ_0
        // for every wrap past the end.
        Elem out(m_);
        for (std::int64_t i = 0; i < m_; ++i) {
            const std::int64_t src = i - jj;
            const std::int64_t wraps = -floor_div(src, m_);
            const std::int64_t idx = src + wraps * m_;
            out[i] = a[idx].frobenius(wraps);
        }
        return out;
    }

    bool is_zero(const Elem& a) const {
        for (const auto& s : a)
            if (!s.known_zero())
                return false;
        return true;
    }
    bool equal(const Elem& a, const Elem& b) const {
        for (std::uint32_t i = 0; i < m_; ++i)
            if (!certified_equal(a[i], b[i]))
                return false;
        return true;
    }
    std::optional<Elem> inverse(const Elem& a) const {
        Elem out(m_);
        for (std::uint32_t i = 0; i < m_; ++i) {
            if (a[i].known_zero())
                return std::nullopt;
            out[i] = a[i].inverse();
        }
        return out;
    }
    std::uint32_t order() const { return m_ * tower_->r(); }

    /// Diagonal embedding of K = k((t)); coefficients must lie in k.
    Elem diag(const LaurentSeries& x) const {
        for (auto c : x.coeffs())
            if (!tower_->in_k(c))
                fail(Errc::InvalidArgument, "diagonal element must have coefficients in k");
        return Elem(m_, x);
    }

    LaurentSeries series(std::int64_t val, std::vector<gf::LElem> c,
                         std::int64_t prec = LaurentSeries::kExact) const {
        return LaurentSeries(tower_.get(), val, std::move(c), prec);
    }

private:
    template <class F>
    Elem zip(const Elem& a, const Elem& b, F f) const {
        if (a.size() != m_ || b.size() != m_)
            fail(Errc::ShapeMismatch, "product ring element has wrong block count");
        Elem out(m_);
        for (std::uint32_t i = 0; i < m_; ++i)
            out[i] = f(a[i], b[i]);
        return out;
    }

    gf::TowerPtr tower_;
    std::uint32_t m_;
};

using LocalOreElem = ore::QuotientElem<ProductRing>;

inline ProductRing::Elem shift_frobenius(const ProductRing& ring, const ProductRing::Elem& a) {
    return ring.phi(a, 1);
}

/// v_{j,t}; j is 1-based.
inline ExtRational v_jt(const ProductRing& ring, const ProductRing::Elem& a, std::uint32_t j) {
    if (j < 1 || j > ring.m())
        fail(Errc::IndexOutOfRange, "block index out of range");
    return a[j - 1].valuation();
}

inline ExtRational v_t_of_x(const LocalOreElem& f) {
    const auto v = f.x()[0].valuation();
    if (v.is_infinite())
        fail(Errc::InvalidArgument, "x must be nonzero");
    return v;
}

/// w_{j,x}(f) = min_i (v_{j,t}(a_i) + i·v_t(x)/r).
inline ExtRational w_jx(const LocalOreElem& f, std::uint32_t j) {
    const auto& ring = f.ring();
    if (j < 1 || j > ring.m())
        fail(Errc::IndexOutOfRange, "block index out of range");
    const Rational vx = v_t_of_x(f).value();
    const std::int64_t r = f.r();
    ExtRational w = ExtRational::infinity();
    for (std::int64_t i = 0; i < r; ++i) {
        const auto v = v_jt(ring, f.coeff(static_cast<std::size_t>(i)), j);
        w = min(w, v + ExtRational(vx * Rational(i, r)));
    }
    return w;
}

inline ExtRational w_x(const LocalOreElem& f) {
    ExtRational w = ExtRational::infinity();
    for (std::uint32_t j = 1; j <= f.ring().m(); ++j)
        w = min(w, w_jx(f, j));
    return w;
}

inline bool in_lambda(const LocalOreElem& f) {
    for (std::uint32_t j = 1; j <= f.ring().m(); ++j)
        if (w_jx(f, j) < ExtRational(0))
            return false;
    return true;
}

/**
 * Reduction mod t of f(Φ) acting on O_L/tO_L = (F_{q^d})^m, over k.
 * Basis index of β^i in block j is j·d + i.
 */
inline gf::MatK epsilon_bar(const LocalOreElem& f) {
    const auto& ring = f.ring();
    const auto& t = ring.tower();
    if (!ring.equal(f.x(), ring.one()))
        fail(Errc::ModulusNotOne, "epsilon_bar needs x = 1");
    for (std::uint32_t j = 1; j <= ring.m(); ++j)
        if (w_jx(f, j) < ExtRational(0))
            fail(Errc::NotIntegral, "f is not in Λ_{L,1}");
    const std::uint32_t m = ring.m(), d = t.r(), r = m * d;
    // Residues of the coefficients.
    std::vector<std::vector<gf::LElem>> res(r, std::vector<gf::LElem>(m));
    for (std::uint32_t i = 0; i < r; ++i)
        for (std::uint32_t b = 0; b < m; ++b)
            res[i][b] = f.coeff(i)[b].coeff(0);
    gf::MatK out(r, r);
    for (std::uint32_t jb = 0; jb < m; ++jb)
        for (std::uint32_t ib = 0; ib < d; ++ib) {
            std::vector<gf::LElem> v(m, gf::FieldTower::zero());
            v[jb] = t.basis(ib);
            std::vector<gf::LElem> acc(m, gf::FieldTower::zero());
            for (std::uint32_t i = 0; i < r; ++i) {
                for (std::uint32_t b = 0; b < m; ++b)
                    acc[b] = t.add(acc[b], t.mul(res[i][b], v[b]));
                // v ← Φ(v)
                std::vector<gf::LElem> nv(m);
                nv[0] = t.frobenius(v[m - 1], 1);
                for (std::uint32_t b = 1; b < m; ++b)
                    nv[b] = v[b - 1];
                v = std::move(nv);
            }
            const std::uint32_t col = jb * d + ib;
            for (std::uint32_t b = 0; b < m; ++b)
                for (std::uint32_t i = 0; i < d; ++i)
                    out(b * d + i, col) = t.coord(acc[b], i);
        }
    return out;
}

} // namespace lagc::laurent
