/**************************************************************************
 * ore.hpp
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
 * @file ore.hpp
 * @brief Ore polynomials L[T;Φ] and the quotients D_{L,x} = L[T;Φ]/(T^r - x).
 *
 * The coefficient ring is any type satisfying OreRing: a commutative ring L
 * with an automorphism Φ of order r. The same code serves the finite field
 * ℓ (FieldRing below), products of Laurent series (laurent.hpp) and
 * function-field coefficients (curve.hpp).
 */

#pragma once

#include <concepts>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "error.hpp"
#include "gf.hpp"

namespace lagc::ore {

template <class R>
concept OreRing = requires(const R& ring, const typename R::Elem& a, std::int64_t j) {
    typename R::Elem;
    { ring.zero() } -> std::convertible_to<typename R::Elem>;
    { ring.one() } -> std::convertible_to<typename R::Elem>;
    { ring.add(a, a) } -> std::convertible_to<typename R::Elem>;
    { ring.sub(a, a) } -> std::convertible_to<typename R::Elem>;
    { ring.neg(a) } -> std::convertible_to<typename R::Elem>;
    { ring.mul(a, a) } -> std::convertible_to<typename R::Elem>;
    { ring.phi(a, j) } -> std::convertible_to<typename R::Elem>;
    { ring.is_zero(a) } -> std::convertible_to<bool>;
    { ring.equal(a, a) } -> std::convertible_to<bool>;
    { ring.inverse(a) } -> std::convertible_to<std::optional<typename R::Elem>>;
    { ring.order() } -> std::convertible_to<std::uint32_t>;
};

/// ℓ = F_{q^r} with its q-Frobenius.
class FieldRing {
public:
    using Elem = gf::LElem;

    explicit FieldRing(gf::TowerPtr tower) : tower_(std::move(tower)) {}

    const gf::FieldTower& tower() const { return *tower_; }
    const gf::TowerPtr& tower_ptr() const { return tower_; }

    Elem zero() const { return gf::FieldTower::zero(); }
    Elem one() const { return gf::FieldTower::one(); }
    Elem add(Elem a, Elem b) const { return tower_->add(a, b); }
    Elem sub(Elem a, Elem b) const { return tower_->sub(a, b); }
    Elem neg(Elem a) const { return tower_->neg(a); }
    Elem mul(Elem a, Elem b) const { return tower_->mul(a, b); }
    Elem phi(Elem a, std::int64_t j) const { return tower_->frobenius(a, j); }
    bool is_zero(Elem a) const { return a.v == 0; }
    bool equal(Elem a, Elem b) const { return a == b; }
    std::optional<Elem> inverse(Elem a) const {
        if (a.v == 0)
            return std::nullopt;
        return tower_->inv(a);
    }
    std::uint32_t order() const { return tower_->r(); }

private:
    gf::TowerPtr tower_;
};

/// Element of L[T;Φ]; coefficient i multiplies T^i.
template <OreRing Ring>
class OrePoly {
public:
    using Elem = typename Ring::Elem;

    OrePoly(const Ring& ring, std::vector<Elem> coeffs) : ring_(&ring), c_(std::move(coeffs)) { trim(); }

    static OrePoly monomial(const Ring& ring, Elem a, std::size_t i) {
        std::vector<Elem> c(i + 1, ring.zero());
        c[i] = std::move(a);
        return OrePoly(ring, std::move(c));
    }

    const Ring& ring() const { return *ring_; }
    const std::vector<Elem>& coeffs() const { return c_; }
    /// -1 for the zero polynomial.
    std::int64_t degree() const { return static_cast<std::int64_t>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : ring_->zero(); }

    friend OrePoly operator+(const OrePoly& f, const OrePoly& g) {
        check_same(f, g);
        const Ring& R = *f.ring_;
        std::vector<Elem> c(std::max(f.c_.size(), g.c_.size()), R.zero());
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = R.add(f.coeff(i), g.coeff(i));
        return OrePoly(R, std::move(c));
    }

    friend OrePoly operator-(const OrePoly& f, const OrePoly& g) {
        check_same(f, g);
        const Ring& R = *f.ring_;
        std::vector<Elem> c(std::max(f.c_.size(), g.c_.size()), R.zero());
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = R.sub(f.coeff(i), g.coeff(i));
        return OrePoly(R, std::move(c));
    }

    /// Twisted product: a T^i · b T^j = a Φ^i(b) T^{i+j}.
    friend OrePoly operator*(const OrePoly& f, const OrePoly& g) {
        check_same(f, g);
        const Ring& R = *f.ring_;
        if (f.is_zero() || g.is_zero())
            return OrePoly(R, {});
        std::vector<Elem> c(f.c_.size() + g.c_.size() - 1, R.zero());
        for (std::size_t i = 0; i < f.c_.size(); ++i) {
            if (R.is_zero(f.c_[i]))
                continue;
            for (std::size_t j = 0; j < g.c_.size(); ++j)
                c[i + j] = R.add(c[i + j], R.mul(f.c_[i], R.phi(g.c_[j], static_cast<std::int64_t>(i))));
        }
        return OrePoly(R, std::move(c));
    }

    friend bool operator==(const OrePoly& f, const OrePoly& g) {
        if (f.ring_ != g.ring_ || f.c_.size() != g.c_.size())
            return false;
        for (std::size_t i = 0; i < f.c_.size(); ++i)
            if (!f.ring_->equal(f.c_[i], g.c_[i]))
                return false;
        return true;
    }

private:
    static void check_same(const OrePoly& f, const OrePoly& g) {
        if (f.ring_ != g.ring_)
            fail(Errc::MixedRings, "Ore polynomials over different coefficient rings");
    }

    void trim() {
        while (!c_.empty() && ring_->is_zero(c_.back()))
            c_.pop_back();
    }

    const Ring* ring_;
    std::vector<Elem> c_;
};

/// Element a_0 + a_1 T + ... + a_{r-1} T^{r-1} of D_{L,x}.
template <OreRing Ring>
class QuotientElem {
public:
    using Elem = typename Ring::Elem;

    QuotientElem(const Ring& ring, std::vector<Elem> coeffs, Elem x) : ring_(&ring), x_(std::move(x)) {
        const std::size_t r = ring.order();
        if (coeffs.size() > r)
            fail(Errc::ShapeMismatch, "more than r coefficients; reduce with from_poly");
        coeffs.resize(r, ring.zero());
        c_ = std::move(coeffs);
        if (!ring.equal(ring.phi(x_, 1), x_))
            fail(Errc::NonCentralModulus, "T^r - x is not central: Φ(x) != x");
    }

    /// Reduce an Ore polynomial modulo T^r - x.
    static QuotientElem from_poly(const OrePoly<Ring>& f, Elem x) {
        const Ring& R = f.ring();
        const std::size_t r = R.order();
        std::vector<Elem> c(r, R.zero());
        Elem xp = R.one();
        for (std::size_t base = 0; base < f.coeffs().size(); base += r) {
            for (std::size_t i = 0; i < r && base + i < f.coeffs().size(); ++i)
                c[i] = R.add(c[i], R.mul(xp, f.coeffs()[base + i]));
            xp = R.mul(xp, x);
        }
        return QuotientElem(R, std::move(c), std::move(x));
    }

    static QuotientElem scalar(const Ring& ring, Elem a, Elem x) {
        return QuotientElem(ring, {std::move(a)}, std::move(x));
    }

    static QuotientElem T(const Ring& ring, Elem x) {
        std::vector<Elem> c(ring.order(), ring.zero());
        if (ring.order() == 1)
            c[0] = x;
        else
            c[1] = ring.one();
        return QuotientElem(ring, std::move(c), std::move(x));
    }

    const Ring& ring() const { return *ring_; }
    const std::vector<Elem>& coeffs() const { return c_; }
    const Elem& coeff(std::size_t i) const { return c_.at(i); }
    const Elem& x() const { return x_; }
    std::uint32_t r() const { return ring_->order(); }

    bool is_zero() const {
        for (const auto& a : c_)
            if (!ring_->is_zero(a))
                return false;
        return true;
    }

    OrePoly<Ring> lift() const { return OrePoly<Ring>(*ring_, c_); }

    friend QuotientElem operator+(const QuotientElem& f, const QuotientElem& g) {
        check_same(f, g);
        const Ring& R = *f.ring_;
        std::vector<Elem> c(f.r());
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = R.add(f.c_[i], g.c_[i]);
        return QuotientElem(R, std::move(c), f.x_);
    }

    friend QuotientElem operator-(const QuotientElem& f, const QuotientElem& g) {
        check_same(f, g);
        const Ring& R = *f.ring_;
        std::vector<Elem> c(f.r());
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = R.sub(f.c_[i], g.c_[i]);
        return QuotientElem(R, std::move(c), f.x_);
    }

    /// Twisted product followed by T^{r+i} -> x T^i.
    friend QuotientElem operator*(const QuotientElem& f, const QuotientElem& g) {
        check_same(f, g);
        const Ring& R = *f.ring_;
        const std::size_t r = f.r();
        std::vector<Elem> c(r, R.zero());
        for (std::size_t i = 0; i < r; ++i) {
            if (R.is_zero(f.c_[i]))
                continue;
            for (std::size_t j = 0; j < r; ++j) {
                if (R.is_zero(g.c_[j]))
                    continue;
                Elem t = R.mul(f.c_[i], R.phi(g.c_[j], static_cast<std::int64_t>(i)));
                if (i + j >= r)
                    c[i + j - r] = R.add(c[i + j - r], R.mul(f.x_, t));
                else
                    c[i + j] = R.add(c[i + j], t);
            }
        }
        return QuotientElem(R, std::move(c), f.x_);
    }

    friend bool operator==(const QuotientElem& f, const QuotientElem& g) {
        if (f.ring_ != g.ring_ || !f.ring_->equal(f.x_, g.x_))
            return false;
        for (std::size_t i = 0; i < f.c_.size(); ++i)
            if (!f.ring_->equal(f.c_[i], g.c_[i]))
                return false;
        return true;
    }

private:
    static void check_same(const QuotientElem& f, const QuotientElem& g) {
        if (f.ring_ != g.ring_)
            fail(Errc::MixedRings, "quotient elements over different coefficient rings");
        if (!f.ring_->equal(f.x_, g.x_))
            fail(Errc::MixedModuli, "quotient elements with different moduli x");
    }

    const Ring* ring_;
    std::vector<Elem> c_;
    Elem x_;
};

template <class Elem>
using Matrix = std::vector<std::vector<Elem>>;

/// M_f: column v holds the coordinates of T^v · f in (1, T, ..., T^{r-1}).
template <OreRing Ring>
Matrix<typename Ring::Elem> nrd_matrix(const QuotientElem<Ring>& f) {
    const Ring& R = f.ring();
    const std::int64_t r = f.r();
    Matrix<typename Ring::Elem> m(r, std::vector<typename Ring::Elem>(r, R.zero()));
    for (std::int64_t u = 0; u < r; ++u)
        for (std::int64_t v = 0; v < r; ++v) {
            if (u >= v)
                m[u][v] = R.phi(f.coeff(u - v), v);
            else
                m[u][v] = R.mul(f.x(), R.phi(f.coeff(u - v + r), v));
        }
    return m;
}

/// Division-free determinant (Berkowitz). Works over any commutative ring.
template <OreRing Ring>
typename Ring::Elem berkowitz_det(const Ring& R, const Matrix<typename Ring::Elem>& a) {
    using Elem = typename Ring::Elem;
    const std::size_t n = a.size();
    if (n == 0)
        return R.one();
    std::vector<Elem> c{R.one()};
    for (std::size_t k = 1; k <= n; ++k) {
        // Leading k×k block: A_{k-1}, column S, row R_, corner a_kk.
        const std::size_t km = k - 1;
        std::vector<Elem> col;
        col.reserve(k + 1);
        col.push_back(R.one());
        col.push_back(R.neg(a[km][km]));
        std::vector<Elem> s(km);
        for (std::size_t i = 0; i < km; ++i)
            s[i] = a[i][km];
        for (std::size_t p = 0; p + 1 < k; ++p) {
            Elem dot = R.zero();
            for (std::size_t i = 0; i < km; ++i)
                dot = R.add(dot, R.mul(a[km][i], s[i]));
            col.push_back(R.neg(dot));
            if (p + 2 < k) {
                std::vector<Elem> ns(km, R.zero());
                for (std::size_t i = 0; i < km; ++i)
                    for (std::size_t j = 0; j < km; ++j)
                        ns[i] = R.add(ns[i], R.mul(a[i][j], s[j]));
                s = std::move(ns);
            }
        }
        std::vector<Elem> nc(k + 1, R.zero());
        for (std::size_t i = 0; i <= k; ++i)
            for (std::size_t j = 0; j < c.size() && j <= i; ++j)
                nc[i] = R.add(nc[i], R.mul(col[i - j], c[j]));
        c = std::move(nc);
    }
    return (n % 2 == 0) ? c[n] : R.neg(c[n]);
}

/// Reduced norm: det(M_f). The result is fixed by Φ.
template <OreRing Ring>
typename Ring::Elem nrd(const QuotientElem<Ring>& f) {
    const Ring& R = f.ring();
    auto d = berkowitz_det(R, nrd_matrix(f));
    if (!R.equal(R.phi(d, 1), d))
        fail(Errc::InvalidArgument, "reduced norm is not Φ-invariant");
    return d;
}

/// γ_u: T ↦ uT, landing in D_{L, N(u)^{-1} x}.
template <OreRing Ring>
QuotientElem<Ring> gamma_u(const QuotientElem<Ring>& f, const typename Ring::Elem& u) {
    using Elem = typename Ring::Elem;
    const Ring& R = f.ring();
    auto uinv = R.inverse(u);
    if (!uinv)
        fail(Errc::NonInvertibleU, "u is not invertible");
    const std::size_t r = f.r();
    std::vector<Elem> c(r);
    Elem run = R.one();
    for (std::size_t i = 0; i < r; ++i) {
        c[i] = R.mul(f.coeff(i), run);
        run = R.mul(run, R.phi(u, static_cast<std::int64_t>(i)));
    }
    // run is now N(u); its inverse is the norm of u^{-1}.
    Elem ninv = R.one();
    for (std::size_t i = 0; i < r; ++i)
        ninv = R.mul(ninv, R.phi(*uinv, static_cast<std::int64_t>(i)));
    return QuotientElem<Ring>(R, std::move(c), R.mul(ninv, f.x()));
}

/// ε: D_{ℓ,1} → End_k(ℓ), Σ a_i T^i ↦ Σ a_i Φ^i.
inline gf::MatK epsilon(const QuotientElem<FieldRing>& f) {
    const auto& t = f.ring().tower();
    if (f.x() != gf::FieldTower::one())
        fail(Errc::ModulusNotOne, "epsilon needs x = 1");
    gf::MatK m(t.r(), t.r());
    for (std::uint32_t i = 0; i < t.r(); ++i)
        if (f.coeff(i).v != 0)
            m = t.mat_add(m, t.endo_matrix(f.coeff(i), i));
    return m;
}

} // namespace lagc::ore
