/**************************************************************************
 * selftest.hpp
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

#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "code.hpp"
#include "curve.hpp"
#include "gf.hpp"
#include "io.hpp"
#include "laurent.hpp"
#include "ore.hpp"

namespace lagc::selftest {

struct SuiteResult {
    std::string name;
    std::size_t checks = 0;
    std::vector<std::string> failures;
    double ms = 0;

    bool passed() const { return failures.empty(); }
};

class Checker {
public:
    explicit Checker(SuiteResult& out) : out_(out) {}

    void operator()(bool ok, const std::string& what) {
        ++out_.checks;
        if (!ok && out_.failures.size() < 20)
            out_.failures.push_back(what);
    }

    /// Runs `f`; an escaping lagc::Error is recorded as a failure.
    template <class F>
    void guarded(const std::string& what, F&& f) {
        try {
            f();
        } catch (const Error& e) {
            (*this)(false, what + ": " + e.what());
        }
    }

    /// True iff `f` raises `code`.
    template <class F>
    void raises(Errc code, const std::string& what, F&& f) {
        try {
            f();
        } catch (const Error& e) {
            (*this)(e.code() == code, what + ": raised " + to_string(e.code()));
            return;
        }
        (*this)(false, what + ": nothing raised");
    }

private:
    SuiteResult& out_;
};

/// Random elements shared by the suites and the acceptance driver.
namespace gen {

inline gf::LElem l_elem(const gf::FieldTower& t, std::mt19937_64& rng, bool nonzero = false) {
    std::uint32_t v = static_cast<std::uint32_t>(rng() % t.size());
    while (nonzero && v == 0)
        v = static_cast<std::uint32_t>(rng() % t.size());
    return gf::LElem{v};
}

inline gf::LElem k_elem(const gf::FieldTower& t, std::mt19937_64& rng, bool nonzero = false) {
    std::uint32_t v = static_cast<std::uint32_t>(rng() % t.q());
    while (nonzero && v == 0)
        v = static_cast<std::uint32_t>(rng() % t.q());
    return gf::LElem{v};
}

inline ore::QuotientElem<ore::FieldRing> quotient(const ore::FieldRing& R, gf::LElem x, std::mt19937_64& rng) {
    std::vector<gf::LElem> c(R.order());
    for (auto& a : c)
        a = l_elem(R.tower(), rng);
    return ore::QuotientElem<ore::FieldRing>(R, c, x);
}

/// Laurent polynomial with valuation exactly `val` and `terms` coefficients.
inline laurent::LaurentSeries series(const laurent::ProductRing& P, std::mt19937_64& rng, std::int64_t val, int terms) {
    std::vector<gf::LElem> c(static_cast<std::size_t>(terms));
    c[0] = l_elem(P.tower(), rng, true);
    for (int i = 1; i < terms; ++i)
        c[i] = l_elem(P.tower(), rng);
    return P.series(val, c);
}

inline laurent::ProductRing::Elem product_elem(const laurent::ProductRing& P, std::mt19937_64& rng, std::int64_t lo,
                                              std::int64_t hi) {
    laurent::ProductRing::Elem a(P.m());
    for (auto& b : a) {
        if (rng() % 10 == 0) {
            b = laurent::LaurentSeries::zero(P.tower_raw());
            continue;
        }
        const std::int64_t v = lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
        b = series(P, rng, v, 1 + static_cast<int>(rng() % 3));
    }
    return a;
}

/// c·t^v·(1 + c1·t + c2·t²) with coefficients in k, embedded diagonally.
inline laurent::ProductRing::Elem modulus(const laurent::ProductRing& P, std::mt19937_64& rng, std::int64_t v) {
    const std::uint32_t q = P.tower().q();
    std::vector<gf::LElem> c{gf::LElem{1 + static_cast<std::uint32_t>(rng() % (q - 1))},
                             gf::LElem{static_cast<std::uint32_t>(rng() % q)}, gf::LElem{static_cast<std::uint32_t>(rng() % q)}};
    return P.diag(P.series(v, c));
}

inline laurent::LocalOreElem local(const laurent::ProductRing& P, const laurent::ProductRing::Elem& x, std::mt19937_64& rng,
                                   std::int64_t lo, std::int64_t hi) {
    std::vector<laurent::ProductRing::Elem> c(P.order());
    for (auto& a : c)
        a = product_elem(P, rng, lo, hi);
    return laurent::LocalOreElem(P, c, x);
}

/// Same, but with residues drawn from {0, 1} so that ε̄ often has a kernel.
inline laurent::LocalOreElem local_integral(const laurent::ProductRing& P, std::mt19937_64& rng) {
    auto f = local(P, P.one(), rng, 0, 2);
    if (rng() % 2) {
        std::vector<laurent::ProductRing::Elem> c = f.coeffs();
        for (auto& a : c)
            for (auto& b : a)
                b = b - P.series(0, {b.coeff(0)}) + P.series(0, {gf::LElem{static_cast<std::uint32_t>(rng() % 2)}});
        f = laurent::LocalOreElem(P, c, P.one());
    }
    return f;
}

/// v_t(Nrd f); the norm is diagonal in K, block 0 carries it.
inline ExtRational nrd_valuation(const laurent::LocalOreElem& f) { return ore::nrd(f)[0].valuation(); }

} // namespace gen

namespace detail {

struct TowerShape {
    std::uint32_t p, e, r;
};

inline constexpr TowerShape kSmallTowers[] = {{2, 1, 2}, {2, 1, 3}, {3, 1, 2}, {2, 2, 2}, {5, 1, 2}, {3, 1, 3}};

inline void suite_gf(Checker& check) {
    for (const auto& s : kSmallTowers) {
        const auto tp = gf::FieldTower::make(s.p, s.e, s.r);
        const auto& t = *tp;
        const std::string tag = "GF(" + std::to_string(t.q()) + "^" + std::to_string(s.r) + ")";
        for (std::uint32_t v = 1; v < t.size(); ++v) {
            const gf::LElem a{v};
            check(t.mul(a, t.inv(a)) == gf::FieldTower::one(), tag + ": a·a⁻¹ = 1");
            check(t.frobenius(a, s.r) == a, tag + ": Frobenius has order dividing r");
            check(t.det(t.endo_matrix(a, 0)).v == t.norm(a).v, tag + ": det of multiplication is the norm");
        }
        for (std::uint32_t c = 1; c < t.q(); ++c)
            check(t.norm(t.norm_preimage(gf::KElem{c})).v == c, tag + ": norm preimage");
        std::mt19937_64 rng(s.p * 100 + s.e * 10 + s.r);
        for (int i = 0; i < 50; ++i) {
            const auto a = gen::l_elem(t, rng), b = gen::l_elem(t, rng);
            check(t.norm(t.mul(a, b)).v == t.k_mul(t.norm(a), t.norm(b)).v, tag + ": norm is multiplicative");
            check(t.frobenius(t.add(a, b), 1) == t.add(t.frobenius(a, 1), t.frobenius(b, 1)), tag + ": Frobenius is additive");
        }
    }
}

inline void suite_ore(Checker& check) {
    std::mt19937_64 rng(11);
    for (const auto& s : kSmallTowers) {
        ore::FieldRing R(gf::FieldTower::make(s.p, s.e, s.r));
        const auto& t = R.tower();
        for (int i = 0; i < 40; ++i) {
            const auto x = gen::k_elem(t, rng, true);
            const auto f = gen::quotient(R, x, rng), g = gen::quotient(R, x, rng);
            const auto nf = ore::nrd(f);
            check(t.in_k(nf), "Nrd lands in K");
            check(ore::nrd(f * g) == R.mul(nf, ore::nrd(g)), "Nrd is multiplicative");
            const auto u = gen::l_elem(t, rng, true);
            check(ore::nrd(ore::gamma_u(f, u)) == nf, "Nrd∘γ_u = Nrd");
            const auto h = gen::quotient(R, R.one(), rng);
            check(t.det(ore::epsilon(h)).v == ore::nrd(h).v, "det ε = Nrd");
        }
    }
}

inline void suite_laurent(Checker& check) {
    std::mt19937_64 rng(13);
    for (auto [m, d] : {std::pair{1u, 2u}, std::pair{2u, 1u}, std::pair{2u, 2u}}) {
        laurent::ProductRing P(2, 1, d, m);
        for (int it = 0; it < 25; ++it) {
            const auto x = gen::modulus(P, rng, static_cast<std::int64_t>(rng() % 5) - 2);
            const auto f = gen::local(P, x, rng, -2, 2);
            ExtRational sum(0);
            for (std::uint32_t j = 1; j <= m; ++j)
                sum = sum + laurent::w_jx(f, j);
            const ExtRational rhs = sum.is_infinite() ? sum : ExtRational(sum.value() * Rational(d));
            check(gen::nrd_valuation(f) >= rhs, "v_t(Nrd f) ≥ d·Σ w_j");
            const auto g = gen::local_integral(P, rng);
            const auto ker = static_cast<std::int64_t>(P.tower().kernel_dim(laurent::epsilon_bar(g)));
            check(gen::nrd_valuation(g) >= ExtRational(ker), "v_t(Nrd f) ≥ dim ker ε̄(f)");
        }
    }
}

inline void suite_curve(Checker& check) {
    for (bool herm : {false, true}) {
        const auto c = herm ? curve::CurveModel::hermitian(2, 2, 2) : curve::CurveModel::projective_line(3, 1);
        const std::int64_t g = c.genus();
        for (std::int64_t n = std::max<std::int64_t>(0, 2 * g - 1); n <= 30; ++n)
            check(static_cast<std::int64_t>(c.rr_basis(n).size()) == n + 1 - g, "dim L(n·P∞) = n + 1 - g");
        for (std::uint32_t r : {1u, 2u, 3u}) {
            const auto x = curve::choose_x(c, r);
            check(curve::check_h1(c, x, r), "chosen x satisfies H1");
            for (std::int64_t m = 0; m <= 3 * std::int64_t{r}; ++m) {
                const auto [lhs, rhs] = curve::degree_identity(c, x, r, m);
                check(lhs == rhs, "floor degree identity");
            }
        }
    }
    check(curve::CurveModel::hermitian(2, 2, 2).rational_places().size() == 9, "Hermitian curve over GF(4) has 9 points");
}

inline void suite_code(Checker& check) {
    auto rs = code::LinearizedAGCode::construct(curve::CurveModel::projective_line(3, 1), 2, 1);
    check(rs.report().kappa_l == 2 && rs.report().d_lower == 3, "linearized RS parameters");
    check(rs.min_distance_bruteforce() == 3, "linearized RS is MSRD");
    auto herm = code::LinearizedAGCode::construct(curve::CurveModel::hermitian(2, 2, 2), 2, 3);
    const auto d = herm.min_distance_bruteforce();
    check(d >= herm.report().d_lower && d <= herm.report().singleton, "Hermitian code distance within bounds");
    check(herm.k_rank() == std::size_t{2} * herm.dimension(), "evaluation map is injective");
    std::mt19937_64 rng(17);
    const auto& t = herm.tower();
    for (int i = 0; i < 20; ++i) {
        std::vector<gf::LElem> a(herm.dimension()), b(herm.dimension()), sum(herm.dimension());
        for (std::size_t j = 0; j < a.size(); ++j) {
            a[j] = gen::l_elem(t, rng);
            b[j] = gen::l_elem(t, rng);
            sum[j] = t.add(a[j], b[j]);
        }
        const auto ca = herm.encode(a), cb = herm.encode(b), cs = herm.encode(sum);
        check(code::sumrank_distance(t, cs, ca) == code::sumrank_weight(t, cb), "encode is additive");
    }
    check.raises(Errc::TooFewPlaces, "m ≥ s·r",
                 [] { (void)code::LinearizedAGCode::construct(curve::CurveModel::projective_line(3, 1), 2, 100); });
}

inline void suite_bounds(Checker& check) {
    check(std::abs(bounds::compgv(49, 1, 0) - 5.0 / 6.0) < 1e-12, "compgv(49, 1, 0) = 5/6");
    check(std::abs(bounds::compgv(121, 2, 0) - 0.85) < 1e-12, "compgv(121, 2, 0) = 0.85");
    check(std::abs(bounds::compgv(121, bounds::Degree::infinity(), 0) - 0.8) < 1e-12, "compgv(121, ∞, 0) = 0.8");
    check(std::abs(bounds::gv_finite(49, 1, 10000, 0.3) - bounds::gv_asymptotic(49, 1, 0.3)) <= 0.01,
          "gv_finite approaches gv_asymptotic");
    check(bounds::gamma_q(2) > bounds::gamma_q(3) && bounds::gamma_q(3) > 1.0, "γ_q decreases toward 1");
    check.raises(Errc::QNotSquare, "compgv needs a square q", [] { (void)bounds::compgv(48, 2, 0); });
}

inline void suite_io(Checker& check) {
    for (const auto& code : {code::LinearizedAGCode::construct(curve::CurveModel::projective_line(3, 1), 2, 1),
                             code::LinearizedAGCode::construct(curve::CurveModel::hermitian(2, 2, 2), 2, 3)}) {
        const auto text = io::dump(io::to_json(code));
        const auto back = io::from_string(text);
        check(back.report() == code.report(), "round trip preserves the report");
        check(io::dump(io::to_json(back)) == text, "round trip is byte-identical");
        auto bad = io::to_json(code);
        auto& v = bad["generators"][0][0][0][0];
        v = (v.get<std::uint32_t>() + 1) % code.tower().q();
        check.raises(Errc::DescriptorMismatch, "corrupted generator is rejected", [&] { (void)io::from_json(bad); });
    }
}

} // namespace detail

struct Suite {
    std::string name;
    std::function<void(Checker&)> run;
};

inline std::vector<Suite> suites() {
    return {{"gf", detail::suite_gf},         {"ore", detail::suite_ore},   {"laurent", detail::suite_laurent},
            {"curve", detail::suite_curve},   {"code", detail::suite_code}, {"bounds", detail::suite_bounds},
            {"io", detail::suite_io}};
}

inline SuiteResult run_suite(const Suite& s) {
    SuiteResult out;
    out.name = s.name;
    Checker check(out);
    const auto t0 = std::chrono::steady_clock::now();
    check.guarded(s.name, [&] { s.run(check); });
    out.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

inline std::vector<SuiteResult> run_all() {
    std::vector<SuiteResult> out;
    for (const auto& s : suites())
        out.push_back(run_suite(s));
    return out;
}

} // namespace lagc::selftest
