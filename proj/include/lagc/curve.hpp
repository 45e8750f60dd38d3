/**************************************************************************
 * curve.hpp
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
 * @file curve.hpp
 * @brief One-point curve models over k: the projective line and the
 * Hermitian curve y^{q0} + y = x^{q0+1} over F_{q0^2}.
 *
 * Functions regular away from P∞ are finite sums of monomials x^a y^b
 * (b < q0 on the Hermitian curve, b = 0 on P^1 where x plays the role of t).
 * Pole orders at P∞ are a (P^1) and a·q0 + b·(q0+1) (Hermitian); distinct
 * reduced monomials have distinct pole orders.
 */

#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "gf.hpp"
#include "rational.hpp"

namespace lagc::curve {

enum class CurveKind { ProjectiveLine, Hermitian };

inline const char* to_string(CurveKind k) { return k == CurveKind::ProjectiveLine ? "p1" : "hermitian"; }

struct Monomial {
    std::uint32_t a = 0; // power of x (or t)
    std::uint32_t b = 0; // power of y
    friend constexpr auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Rational place: an affine point (x, y) or the point at infinity.
struct Place {
    bool at_infinity = false;
    gf::KElem x{};
    gf::KElem y{};
    friend constexpr auto operator<=>(const Place&, const Place&) = default;
};

/// Sparse function: monomial → coefficient. Coefficients live in whatever
/// field the caller works in (k, or ℓ for base-changed functions).
using CurveFunction = std::map<Monomial, gf::LElem>;

class CurveModel {
public:
    static CurveModel projective_line(std::uint32_t p, std::uint32_t e) {
        return CurveModel(CurveKind::ProjectiveLine, gf::FieldTower::make(p, e, 1), 0);
    }

    static CurveModel hermitian(std::uint32_t p, std::uint32_t e, std::uint32_t q0) {
        auto k = gf::FieldTower::make(p, e, 1);
        if (e % 2 != 0 || std::uint64_t{q0} * q0 != k->q())
            fail(Errc::InvalidArgument, "Hermitian curve needs q = q0^2");
        return CurveModel(CurveKind::Hermitian, std::move(k), q0);
    }

    CurveKind kind() const { return kind_; }
    std::uint32_t q0() const { return q0_; }
    std::uint32_t p() const { return k_->p(); }
    std::uint32_t e() const { return k_->e(); }
    std::uint32_t q() const { return k_->q(); }
    const gf::FieldTower& k() const { return *k_; }
    const gf::TowerPtr& k_ptr() const { return k_; }

    std::uint32_t genus() const { return kind_ == CurveKind::Hermitian ? q0_ * (q0_ - 1) / 2 : 0; }

    std::int64_t pole_order(const Monomial& mono) const {
        if (kind_ == CurveKind::ProjectiveLine)
            return mono.a;
        return std::int64_t{mono.a} * q0_ + std::int64_t{mono.b} * (q0_ + 1);
    }

    /// The unique reduced monomial with pole order n, if n is a pole number.
    std::optional<Monomial> monomial_with_pole(std::int64_t n) const {
        if (n < 0)
            return std::nullopt;
        if (kind_ == CurveKind::ProjectiveLine)
            return Monomial{static_cast<std::uint32_t>(n), 0};
        for (std::uint32_t b = 0; b < q0_; ++b) {
            const std::int64_t rest = n - std::int64_t{b} * (q0_ + 1);
            if (rest >= 0 && rest % q0_ == 0)
                return Monomial{static_cast<std::uint32_t>(rest / q0_), b};
        }
        return std::nullopt;
    }

    bool is_pole_number(std::int64_t n) const { return monomial_with_pole(n).has_value(); }

    /// Gaps of the pole-number semigroup at P∞.
    std::vector<std::int64_t> gaps() const {
        std::vector<std::int64_t> out;
        const std::int64_t limit = 2 * std::int64_t{genus()} + 1;
        for (std::int64_t n = 1; n < limit; ++n)
            if (!is_pole_number(n))
                out.push_back(n);
        return out;
    }

    /// Basis of L(c·P∞), sorted by pole order.
    std::vector<Monomial> rr_basis(std::int64_t c) const {
        std::vector<Monomial> out;
        for (std::int64_t n = 0; n <= c; ++n)
            if (auto mono = monomial_with_pole(n))
                out.push_back(*mono);
        return out;
    }

    /// Affine rational places in lexicographic order of (x, y) indices.
    const std::vector<Place>& affine_places() const { return affine_; }

    /// All rational places: affine ones, then P∞.
    std::vector<Place> rational_places() const {
        auto out = affine_;
        out.push_back(Place{true, {}, {}});
        return out;
    }

    /// Bring a function to reduced form (y^{q0} → x^{q0+1} - y) over `t`.
    CurveFunction reduce(const gf::FieldTower& t, CurveFunction f) const {
        if (kind_ == CurveKind::Hermitian) {
            for (;;) {
                auto it = std::find_if(f.begin(), f.end(), [&](const auto& kv) { return kv.first.b >= q0_; });
                if (it == f.end())
                    break;
                const Monomial mono = it->first;
                const gf::LElem c = it->second;
                f.erase(it);
                add_term(t, f, Monomial{mono.a + q0_ + 1, mono.b - q0_}, c);
                add_term(t, f, Monomial{mono.a, mono.b - q0_ + 1}, t.neg(c));
            }
        }
        for (auto it = f.begin(); it != f.end();)
            it = (it->second.v == 0) ? f.erase(it) : std::next(it);
        return f;
    }

    static void add_term(const gf::FieldTower& t, CurveFunction& f, const Monomial& mono, gf::LElem c) {
        if (c.v == 0)
            return;
        auto [it, inserted] = f.try_emplace(mono, c);
        if (!inserted)
            it->second = t.add(it->second, c);
    }

    CurveFunction mul(const gf::FieldTower& t, const CurveFunction& f, const CurveFunction& g) const {
        CurveFunction out;
        for (const auto& [ma, ca] : f)
            for (const auto& [mb, cb] : g)
                add_term(t, out, Monomial{ma.a + mb.a, ma.b + mb.b}, t.mul(ca, cb));
        return reduce(t, std::move(out));
    }

    /// Pole order at P∞ of a reduced, nonzero function.
    std::int64_t pole_order(const CurveFunction& f) const {
        std::int64_t best = -1;
        for (const auto& [mono, c] : f)
            if (c.v != 0)
                best = std::max(best, pole_order(mono));
        if (best < 0)
            fail(Errc::InvalidArgument, "pole order of the zero function");
        return best;
    }

    /// Value at a rational place, computed in the field of `t` (k embeds as-is).
    gf::LElem eval(const gf::FieldTower& t, const CurveFunction& f, const Place& pl) const {
        if (pl.at_infinity) {
            gf::LElem c0 = gf::FieldTower::zero();
            for (const auto& [mono, c] : f) {
                if (c.v == 0)
                    continue;
                if (mono.a != 0 || mono.b != 0)
                    fail(Errc::PoleAtPlace, "function has a pole at P∞");
                c0 = t.add(c0, c);
            }
            return c0;
        }
        const gf::LElem px = gf::FieldTower::embed(pl.x), py = gf::FieldTower::embed(pl.y);
        gf::LElem acc = gf::FieldTower::zero();
        for (const auto& [mono, c] : f)
            acc = t.add(acc, t.mul(c, t.mul(t.pow(px, mono.a), t.pow(py, mono.b))));
        return acc;
    }

    /// Valuation of a reduced k-function at a rational place.
    std::int64_t valuation(const CurveFunction& f, const Place& pl) const {
        if (f.empty())
            fail(Errc::InvalidArgument, "valuation of the zero function");
        if (pl.at_infinity)
            return -pole_order(f);
        // Expand in the local parameter t = x - a. The zero divisor has
        // degree pole_order(f), so that many terms certify the valuation.
        const auto n = static_cast<std::size_t>(pole_order(f) + 1);
        const gf::FieldTower& k = *k_;
        using Series = std::vector<gf::LElem>;
        auto smul = [&](const Series& u, const Series& v) {
            Series w(n);
            for (std::size_t i = 0; i < n; ++i) {
                if (u[i].v == 0)
                    continue;
                for (std::size_t j = 0; i + j < n; ++j)
                    w[i + j] = k.add(w[i + j], k.mul(u[i], v[j]));
            }
            return w;
        };
        auto spow = [&](Series base, std::uint64_t ex) {
            Series out(n);
            out[0] = gf::FieldTower::one();
            while (ex) {
                if (ex & 1)
                    out = smul(out, base);
                base = smul(base, base);
                ex >>= 1;
            }
            return out;
        };
        Series xs(n);
        xs[0] = gf::FieldTower::embed(pl.x);
        if (n > 1)
            xs[1] = gf::FieldTower::one();
        Series ys(n);
        if (kind_ == CurveKind::Hermitian) {
            // y_{i+1} = x^{q0+1} - y_i^{q0}; each step fixes more t-adic digits.
            const Series rhs = spow(xs, q0_ + 1);
            ys[0] = gf::FieldTower::embed(pl.y);
            for (std::size_t it = 0; it <= n; ++it) {
                Series yq = spow(ys, q0_);
                Series nxt(n);
                for (std::size_t i = 0; i < n; ++i)
                    nxt[i] = k.sub(rhs[i], yq[i]);
                ys = std::move(nxt);
            }
        }
        Series acc(n);
        for (const auto& [mono, c] : f) {
            if (c.v == 0)
                continue;
            Series term = smul(spow(xs, mono.a), spow(ys, mono.b));
            for (std::size_t i = 0; i < n; ++i)
                acc[i] = k.add(acc[i], k.mul(c, term[i]));
        }
        for (std::size_t i = 0; i < n; ++i)
            if (acc[i].v != 0)
                return static_cast<std::int64_t>(i);
        fail(Errc::InvalidArgument, "valuation exceeds the degree of the zero divisor");
    }

private:
    CurveModel(CurveKind kind, gf::TowerPtr k, std::uint32_t q0) : kind_(kind), q0_(q0), k_(std::move(k)) {
        const std::uint32_t q = k_->q();
        if (kind_ == CurveKind::ProjectiveLine) {
            for (std::uint32_t a = 0; a < q; ++a)
                affine_.push_back(Place{false, gf::KElem{a}, gf::KElem{0}});
            return;
        }
        for (std::uint32_t a = 0; a < q; ++a) {
            const gf::KElem rhs = k_->k_pow(gf::KElem{a}, q0_ + 1);
            for (std::uint32_t b = 0; b < q; ++b) {
                const gf::KElem lhs = k_->k_add(k_->k_pow(gf::KElem{b}, q0_), gf::KElem{b});
                if (lhs == rhs)
                    affine_.push_back(Place{false, gf::KElem{a}, gf::KElem{b}});
            }
        }
    }

    CurveKind kind_;
    std::uint32_t q0_;
    gf::TowerPtr k_;
    std::vector<Place> affine_;
};

struct ZeroData {
    Place place;
    std::int64_t mult = 0;
};

/// A function with a single pole, at P∞, of order h.
struct XFunction {
    CurveFunction f;
    std::int64_t h = 0;
    std::vector<ZeroData> zeros;
    bool simple_zeros = false;
};

/// Valuation data of x at one place.
struct PlaceData {
    Place place;
    std::int64_t degree = 1;
    std::int64_t e = 1;
    std::int64_t v_x = 0;
    Rational rho{0};
    std::int64_t a = 0;
    std::int64_t b = 1;
};

/// Zeros of a k-function regular away from P∞; all rational iff mults sum to the pole order.
inline std::vector<ZeroData> rational_zeros(const CurveModel& c, const CurveFunction& f) {
    std::vector<ZeroData> out;
    for (const auto& pl : c.affine_places())
        if (c.eval(c.k(), f, pl).v == 0)
            out.push_back(ZeroData{pl, c.valuation(f, pl)});
    return out;
}

inline XFunction make_x(const CurveModel& c, CurveFunction f) {
    f = c.reduce(c.k(), std::move(f));
    XFunction x;
    x.h = c.pole_order(f);
    x.zeros = rational_zeros(c, f);
    x.f = std::move(f);
    std::int64_t total = 0;
    bool simple = true;
    for (const auto& z : x.zeros) {
        total += z.mult;
        simple = simple && z.mult == 1;
    }
    x.simple_zeros = simple && total == x.h;
    return x;
}

/// Smallest admissible pole order: n ≥ max(2g, 1), gcd(n, r) = 1, n a pole number.
inline std::int64_t choose_h(const CurveModel& c, std::uint32_t r) {
    std::int64_t n = std::max<std::int64_t>(2 * std::int64_t{c.genus()}, 1);
    while (std::gcd(n, std::int64_t{r}) != 1 || !c.is_pole_number(n))
        ++n;
    return n;
}

/**
 * Search L(h·P∞) \ L((h-1)·P∞) with leading coefficient 1. Lower
 * coefficients run lexicographically, lowest pole order most significant.
 * The first function with h distinct rational zeros wins; failing that,
 * the first one whose zeros are all rational.
 */
inline XFunction choose_x(const CurveModel& c, std::uint32_t r) {
    if (r == 0)
        fail(Errc::InvalidArgument, "r must be positive");
    const std::int64_t h = choose_h(c, r);
    const auto lower = c.rr_basis(h - 1);
    const Monomial lead = *c.monomial_with_pole(h);
    const std::uint64_t q = c.q();
    constexpr std::uint64_t kSearchCap = std::uint64_t{1} << 22;
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < lower.size() && count <= kSearchCap; ++i)
        count *= q;
    count = std::min(count, kSearchCap);

    std::optional<XFunction> fallback;
    std::vector<std::uint32_t> digits(lower.size(), 0);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::uint64_t t = idx;
        for (std::size_t i = lower.size(); i-- > 0;) {
            digits[i] = static_cast<std::uint32_t>(t % q);
            t /= q;
        }
        CurveFunction f;
        f[lead] = gf::FieldTower::one();
        for (std::size_t i = 0; i < lower.size(); ++i)
            if (digits[i] != 0)
                f[lower[i]] = gf::LElem{digits[i]};
        std::size_t nz = 0;
        for (const auto& pl : c.affine_places())
            if (c.eval(c.k(), f, pl).v == 0)
                ++nz;
        if (static_cast<std::int64_t>(nz) == h)
            return make_x(c, std::move(f));
        if (!fallback && nz > 0) {
            auto x = make_x(c, std::move(f));
            std::int64_t total = 0;
            for (const auto& z : x.zeros)
                total += z.mult;
            if (total == h)
                fallback = std::move(x);
        }
    }
    if (fallback)
        return *fallback;
    fail(Errc::NoAdmissibleFunction, "no function of pole order " + std::to_string(h) +
                                         " with only rational zeros in the search range");
}

inline PlaceData make_place_data(const Place& pl, std::int64_t v, std::uint32_t r) {
    PlaceData d;
    d.place = pl;
    d.v_x = v;
    d.rho = Rational(v * d.e, r);
    d.a = d.rho.numerator();
    d.b = d.rho.denominator();
    return d;
}

/// P∞ first, then every zero of x; all other places have ρ = 0, b = 1.
inline std::vector<PlaceData> place_data(const CurveModel&, const XFunction& x, std::uint32_t r) {
    std::vector<PlaceData> out;
    out.push_back(make_place_data(Place{true, {}, {}}, -x.h, r));
    for (const auto& z : x.zeros)
        out.push_back(make_place_data(z.place, z.mult, r));
    return out;
}

struct LambdaElem {
    Monomial mono;
    std::uint32_t i = 0; // power of T
    friend constexpr auto operator<=>(const LambdaElem&, const LambdaElem&) = default;
};

struct LambdaBasis {
    std::vector<LambdaElem> elems;
    std::vector<std::size_t> dims; // per power of T
    bool exact = true;
};

/// Basis of ⊕_i L(⌊(m - i·h)/r⌋·P∞)·T^i, ordered by i then pole order.
inline LambdaBasis lambda_basis(const CurveModel& c, const XFunction& x, std::uint32_t r, std::int64_t m) {
    LambdaBasis out;
    for (std::uint32_t i = 0; i < r; ++i) {
        const auto rr = c.rr_basis(floor_div(m - std::int64_t{i} * x.h, r));
        out.dims.push_back(rr.size());
        for (const auto& mono : rr)
            out.elems.push_back(LambdaElem{mono, i});
        for (const auto& z : x.zeros)
            if (floor_div(std::int64_t{i} * z.mult, r) != 0)
                out.exact = false;
    }
    return out;
}

/// Σ over places of (b-1)/b · deg.
inline Rational ramification_sum(const std::vector<PlaceData>& pd) {
    Rational s{0};
    for (const auto& d : pd)
        s += Rational(d.b - 1, d.b * d.e) * d.degree;
    return s;
}

/// ℓ-dimension lower bound m - r(g-1) - (r/2)·Σ (b-1)/b·deg.
inline Rational dim_bound(const CurveModel& c, const XFunction& x, std::uint32_t r, std::int64_t m) {
    const auto pd = place_data(c, x, r);
    return Rational(m) - Rational(std::int64_t{r} * (std::int64_t{c.genus()} - 1)) -
           Rational(r, 2) * ramification_sum(pd);
}

/// True iff E = (m/r)·P∞ has its coefficient in (1/b_P∞)·Z.
inline bool divisor_admissible(const XFunction& x, std::uint32_t r, std::int64_t m) {
    const auto d = make_place_data(Place{true, {}, {}}, -x.h, r);
    return (m * d.b) % std::int64_t{r} == 0;
}

/// Both sides of Σ_i deg_Y(E_i) = r·deg_Y(E) - (r²/2)·Σ (b-1)/(b e)·deg, full floors.
inline std::pair<Rational, Rational> degree_identity(const CurveModel& c, const XFunction& x, std::uint32_t r,
                                                     std::int64_t m) {
    if (!divisor_admissible(x, r, m))
        fail(Errc::InvalidArgument, "m/r is not in (1/b)·Z at P∞");
    const auto pd = place_data(c, x, r);
    // Coefficient of E at q_{P∞} is m/r and deg_Y(q_pl) = r·deg(pl).
    Rational lhs{0};
    for (std::uint32_t i = 0; i < r; ++i) {
        for (const auto& d : pd) {
            const Rational n = d.place.at_infinity ? Rational(m, r) : Rational(0);
            lhs += Rational(floor(n + Rational(i) * d.rho) * std::int64_t{r} * d.degree);
        }
    }
    const Rational rhs = Rational(std::int64_t{r} * m) - Rational(std::int64_t{r} * r, 2) * ramification_sum(pd);
    return {lhs, rhs};
}

/// Some rational place with v(x) coprime to r (rational places are inert).
inline bool check_h1(const CurveModel& c, const XFunction& x, std::uint32_t r) {
    for (const auto& d : place_data(c, x, r))
        if (std::gcd(d.v_x < 0 ? -d.v_x : d.v_x, std::int64_t{r}) == 1)
            return true;
    return false;
}

/// v_pl(x) = 0: x has neither a zero nor a pole at pl.
inline bool check_h2(const CurveModel& c, const XFunction& x, std::uint32_t, const Place& pl) {
    if (pl.at_infinity)
        return false;
    return c.eval(c.k(), x.f, pl).v != 0;
}

inline gf::LElem eval_function(const CurveModel& c, const CurveFunction& f, const Place& pl) {
    return c.eval(c.k(), f, pl);
}

/**
 * Functions regular away from P∞ with coefficients in ℓ, as an Ore
 * coefficient ring: Φ acts on coefficients. Only nonzero constants are
 * treated as invertible.
 */
class FunctionRing {
public:
    using Elem = CurveFunction;

    FunctionRing(const CurveModel& curve, gf::TowerPtr tower) : curve_(&curve), t_(std::move(tower)) {
        if (t_->p() != curve.p() || t_->e() != curve.e())
            fail(Errc::InvalidArgument, "tower and curve are over different base fields");
    }

    const CurveModel& curve() const { return *curve_; }
    const gf::FieldTower& tower() const { return *t_; }

    Elem zero() const { return {}; }
    Elem one() const { return {{Monomial{}, gf::FieldTower::one()}}; }
    Elem add(const Elem& a, const Elem& b) const {
        Elem out = a;
        for (const auto& [mono, c] : b)
            CurveModel::add_term(*t_, out, mono, c);
        return clean(std::move(out));
    }
    Elem neg(const Elem& a) const {
        Elem out;
        for (const auto& [mono, c] : a)
            out[mono] = t_->neg(c);
        return out;
    }
    Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }
    Elem mul(const Elem& a, const Elem& b) const { return curve_->mul(*t_, a, b); }
    Elem phi(const Elem& a, std::int64_t j) const {
        Elem out;
        for (const auto& [mono, c] : a)
            out[mono] = t_->frobenius(c, j);
        return out;
    }
    bool is_zero(const Elem& a) const { return a.empty(); }
    bool equal(const Elem& a, const Elem& b) const { return a == b; }
    std::optional<Elem> inverse(const Elem& a) const {
        if (a.size() == 1 && a.begin()->first == Monomial{})
            return Elem{{Monomial{}, t_->inv(a.begin()->second)}};
        return std::nullopt;
    }
    std::uint32_t order() const { return t_->r(); }

private:
    static Elem clean(Elem f) {
        for (auto it = f.begin(); it != f.end();)
            it = (it->second.v == 0) ? f.erase(it) : std::next(it);
        return f;
    }

    const CurveModel* curve_;
    gf::TowerPtr t_;
};

} // namespace lagc::curve
