/**************************************************************************
 * code_test.cpp
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

#include <random>

#include <gtest/gtest.h>

#include <lagc/code.hpp>
#include <lagc/ore.hpp>

#include "oracles.hpp"

using namespace lagc;
using code::Codeword;
using code::LinearizedAGCode;
using curve::CurveModel;
using gf::FieldTower;
using gf::KElem;
using gf::LElem;

namespace {

LElem rand_l(const FieldTower& t, std::mt19937_64& rng) { return LElem{static_cast<std::uint32_t>(rng() % t.size())}; }

std::vector<LElem> rand_msg(const LinearizedAGCode& c, std::mt19937_64& rng) {
    std::vector<LElem> m(c.dimension());
    for (auto& a : m)
        a = rand_l(c.tower(), rng);
    return m;
}

// Sum-rank weight from span sizes: block columns expanded to k-coordinates.
std::size_t oracle_weight(const FieldTower& t, const Codeword& cw) {
    std::size_t w = 0;
    for (const auto& blk : cw.blocks) {
        std::vector<std::vector<std::int64_t>> cols;
        for (auto v : blk) {
            std::vector<std::int64_t> col;
            std::uint32_t x = v.v;
            for (std::uint32_t i = 0; i < t.r(); ++i, x /= t.q())
                col.push_back(x % t.q());
            cols.push_back(col);
        }
        w += oracle::rank_by_span(cols, t);
    }
    return w;
}

// Minimum over every nonzero message, weights by span counting.
std::size_t oracle_min_distance(const LinearizedAGCode& c) {
    const auto& t = c.tower();
    const std::uint64_t Q = t.size();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < c.dimension(); ++i)
        total *= Q;
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (std::uint64_t idx = 1; idx < total; ++idx) {
        std::vector<LElem> msg(c.dimension());
        std::uint64_t tmp = idx;
        for (auto& a : msg) {
            a = LElem{static_cast<std::uint32_t>(tmp % Q)};
            tmp /= Q;
        }
        best = std::min(best, oracle_weight(t, c.encode(msg)));
    }
    return best;
}

LinearizedAGCode lrs(std::uint32_t p, std::uint32_t e, std::uint32_t r, std::int64_t m) {
    return LinearizedAGCode::construct(CurveModel::projective_line(p, e), r, m);
}

} // namespace

TEST(Construct, LinearizedReedSolomonF9) {
    const auto c = lrs(3, 1, 2, 1);
    EXPECT_EQ(c.s(), 2u);
    EXPECT_EQ(c.places()[0].x.v, 1u);
    EXPECT_EQ(c.places()[1].x.v, 2u);
    for (std::size_t j = 0; j < c.s(); ++j)
        EXPECT_EQ(c.tower().norm(c.norm_lifts()[j]).v, c.places()[j].x.v);
    const auto& rep = c.report();
    EXPECT_EQ(rep.kappa_l, 2);
    EXPECT_EQ(rep.n, 8);
    EXPECT_EQ(rep.n_l, 4);
    EXPECT_EQ(rep.d_lower, 3);
    EXPECT_EQ(rep.singleton, 3);
    EXPECT_EQ(rep.defect, Rational(0));
    EXPECT_EQ(rep.kappa_l_lower, Rational(2));
    EXPECT_TRUE(rep.exact);
}

TEST(Construct, GeneratorBlocks) {
    const auto c = lrs(3, 1, 2, 1);
    const auto& t = c.tower();
    ASSERT_EQ(c.lambda().elems.size(), 2u);
    // (1, T^0) and (1, T^1) in that order.
    const auto g0 = code::to_matrices(t, c.generators()[0]);
    const auto g1 = code::to_matrices(t, c.generators()[1]);
    for (std::size_t j = 0; j < c.s(); ++j) {
        EXPECT_EQ(g0[j], gf::MatK::identity(2));
        EXPECT_EQ(g1[j], t.endo_matrix(c.norm_lifts()[j], 1));
    }
}

TEST(Construct, GeneratorBlocksMatchEndoMatrices) {
    const auto c = LinearizedAGCode::construct(CurveModel::hermitian(2, 2, 2), 3, 7);
    const auto& t = c.tower();
    const auto& cur = c.curve();
    for (std::size_t b = 0; b < c.dimension(); ++b) {
        const auto le = c.lambda().elems[b];
        const auto blocks = code::to_matrices(t, c.generators()[b]);
        for (std::size_t j = 0; j < c.s(); ++j) {
            LElem a = cur.eval(t, {{le.mono, FieldTower::one()}}, c.places()[j]);
            for (std::uint32_t l = 0; l < le.i; ++l)
                a = t.mul(a, t.frobenius(c.norm_lifts()[j], l));
            EXPECT_EQ(blocks[j], t.endo_matrix(a, le.i));
        }
    }
}

TEST(Construct, Errors) {
    const auto p1 = CurveModel::projective_line(3, 1);
    try {
        (void)LinearizedAGCode::construct(p1, 2, 4);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::TooFewPlaces);
    }
    const auto x = curve::choose_x(p1, 2);
    try {
        (void)LinearizedAGCode::construct_at(p1, 2, 1, x, {curve::Place{false, KElem{0}, KElem{0}}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::HypothesisFailed);
    }
    const auto t2 = curve::make_x(p1, {{{2, 0}, LElem{1}}});
    try {
        (void)LinearizedAGCode::construct_with_x(p1, 2, 1, t2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::HypothesisFailed);
    }
    const curve::Place one{false, KElem{1}, KElem{0}};
    try {
        (void)LinearizedAGCode::construct_at(p1, 2, 1, x, {one, one});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::InvalidArgument);
    }
}

TEST(Construct, MaxPlaces) {
    const auto c = LinearizedAGCode::construct(CurveModel::projective_line(7, 1), 2, 3, 3);
    EXPECT_EQ(c.s(), 3u);
    EXPECT_EQ(c.places()[2].x.v, 3u);
}

TEST(Encode, BasicsAndLinearity) {
    std::mt19937_64 rng(3);
    for (auto c : {lrs(3, 1, 2, 1), lrs(2, 2, 3, 4), LinearizedAGCode::construct(CurveModel::hermitian(2, 2, 2), 2, 3)}) {
        const auto& t = c.tower();
        const std::vector<LElem> zero(c.dimension());
        EXPECT_EQ(code::sumrank_weight(t, c.encode(zero)), 0u);
        for (std::size_t b = 0; b < c.dimension(); ++b) {
            std::vector<LElem> e(c.dimension());
            e[b] = FieldTower::one();
            EXPECT_EQ(c.encode(e), c.generators()[b]);
        }
        for (int it = 0; it < 30; ++it) {
            const auto m1 = rand_msg(c, rng), m2 = rand_msg(c, rng);
            const LElem lam = rand_l(t, rng);
            std::vector<LElem> mix(c.dimension());
            for (std::size_t b = 0; b < mix.size(); ++b)
                mix[b] = t.add(m1[b], t.mul(lam, m2[b]));
            const auto lhs = c.encode(mix);
            auto rhs = c.encode(m1);
            const auto c2 = c.encode(m2);
            for (std::size_t j = 0; j < rhs.blocks.size(); ++j)
                for (std::size_t k = 0; k < rhs.blocks[j].size(); ++k)
                    rhs.blocks[j][k] = t.add(rhs.blocks[j][k], t.mul(lam, c2.blocks[j][k]));
            EXPECT_EQ(lhs, rhs);
            // ℓ-scaling is left composition with an invertible map.
            if (lam.v != 0) {
                std::vector<LElem> sc(c.dimension());
                for (std::size_t b = 0; b < sc.size(); ++b)
                    sc[b] = t.mul(lam, m1[b]);
                const auto a = code::to_matrices(t, c.encode(m1)), s = code::to_matrices(t, c.encode(sc));
                for (std::size_t j = 0; j < a.size(); ++j) {
                    EXPECT_EQ(s[j], t.mat_mul(t.endo_matrix(lam, 0), a[j]));
                    EXPECT_EQ(t.rank(s[j]), t.rank(a[j]));
                }
            }
        }
        try {
            (void)c.encode(std::vector<LElem>(c.dimension() + 1));
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), Errc::LengthMismatch);
        }
    }
}

TEST(Weight, Basics) {
    auto t = FieldTower::make(2, 1, 3);
    Codeword z;
    z.blocks.assign(3, std::vector<LElem>(3));
    EXPECT_EQ(code::sumrank_weight(*t, z), 0u);
    Codeword id = z;
    id.blocks[1] = t->mat_to_columns(gf::MatK::identity(3));
    EXPECT_EQ(code::sumrank_weight(*t, id), 3u);
    EXPECT_EQ(code::sumrank_distance(*t, id, z), 3u);
    Codeword bad;
    bad.blocks.assign(2, std::vector<LElem>(3));
    try {
        (void)code::sumrank_distance(*t, id, bad);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::ShapeMismatch);
    }
}

TEST(Weight, RankOneIsHamming) {
    auto t = FieldTower::make(5, 1, 1);
    std::mt19937_64 rng(5);
    for (int it = 0; it < 50; ++it) {
        Codeword c;
        std::size_t ham = 0;
        for (int j = 0; j < 6; ++j) {
            const LElem v{static_cast<std::uint32_t>(rng() % 5)};
            ham += v.v != 0;
            c.blocks.push_back({v});
        }
        EXPECT_EQ(code::sumrank_weight(*t, c), ham);
    }
}

TEST(Weight, AgreesWithSpanOracle) {
    std::mt19937_64 rng(7);
    const auto c = LinearizedAGCode::construct(CurveModel::hermitian(2, 2, 2), 2, 3);
    for (int it = 0; it < 40; ++it) {
        const auto cw = c.encode(rand_msg(c, rng));
        EXPECT_EQ(code::sumrank_weight(c.tower(), cw), oracle_weight(c.tower(), cw));
    }
}

TEST(MinDistance, LinearizedReedSolomonIsMSRD) {
    auto c = lrs(3, 1, 2, 1);
    EXPECT_EQ(c.projective_count(), 10u);
    EXPECT_EQ(c.min_distance_bruteforce(), 3);
    EXPECT_EQ(static_cast<std::size_t>(3), oracle_min_distance(c));
    EXPECT_EQ(c.report().d_exact, 3);
}

TEST(MinDistance, FullDimensionGivesOne) {
    // m = sr - 1: κ_ℓ = n_ℓ.
    auto c = lrs(3, 1, 2, 3);
    EXPECT_EQ(c.report().kappa_l, c.report().n_l);
    EXPECT_EQ(c.report().d_lower, 1);
    EXPECT_EQ(c.min_distance_bruteforce(), 1);
}

TEST(MinDistance, HermitianF4) {
    auto c = LinearizedAGCode::construct(CurveModel::hermitian(2, 2, 2), 2, 3);
    EXPECT_EQ(c.s(), 5u);
    EXPECT_EQ(c.report().kappa_l, 2);
    EXPECT_EQ(c.report().n_l, 10);
    EXPECT_EQ(c.report().d_lower, 7);
    EXPECT_EQ(c.report().kappa_l_lower, Rational(1));
    EXPECT_EQ(c.projective_count(), 17u);
    const auto d = c.min_distance_bruteforce();
    EXPECT_EQ(static_cast<std::size_t>(d), oracle_min_distance(c));
    EXPECT_GE(d, 7);
    EXPECT_LE(d, 9);
}

TEST(MinDistance, ParallelMatchesSerial) {
    auto c = LinearizedAGCode::construct(CurveModel::projective_line(2, 2), 2, 3);
    const auto a = c.min_weight(code::kDefaultEnumerationCap, 1);
    const auto b = c.min_weight(code::kDefaultEnumerationCap, 7);
    EXPECT_EQ(a, b);
}

TEST(MinDistance, CapIsEnforced) {
    auto c = lrs(3, 1, 2, 1);
    try {
        (void)c.min_distance_bruteforce(9);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::EnumerationTooLarge);
    }
}

TEST(MinDistance, ProjectiveRepresentativesCoverEveryLine) {
    const auto c = lrs(2, 2, 2, 2);   // κ = 3, Q = 16
    std::set<std::vector<std::uint32_t>> lines;
    for (std::uint64_t i = 0; i < c.projective_count(); ++i) {
        const auto msg = c.message_at(i);
        // Normalize by the first nonzero symbol.
        std::size_t lead = 0;
        while (msg[lead].v == 0)
            ++lead;
        EXPECT_EQ(msg[lead].v, 1u);
        std::vector<std::uint32_t> key;
        for (auto a : msg)
            key.push_back(a.v);
        lines.insert(key);
    }
    EXPECT_EQ(lines.size(), (4096u - 1u) / (16u - 1u));
    EXPECT_EQ(lines.size(), c.projective_count());
    EXPECT_THROW((void)c.message_at(c.projective_count()), Error);
}

TEST(MinDistance, BoundsOnManyInstances) {
    struct S {
        bool herm;
        std::uint32_t p, e, q0, r;
        std::int64_t m;
    };
    for (const auto& s : {S{false, 3, 1, 0, 2, 0}, S{false, 3, 1, 0, 2, 2}, S{false, 2, 2, 0, 2, 2}, S{false, 5, 1, 0, 2, 3},
                          S{false, 2, 2, 0, 3, 4}, S{false, 3, 1, 0, 3, 1}, S{true, 2, 2, 2, 2, 1}, S{true, 2, 2, 2, 2, 5},
                          S{true, 2, 2, 2, 3, 4}}) {
        const auto cur = s.herm ? CurveModel::hermitian(s.p, s.e, s.q0) : CurveModel::projective_line(s.p, s.e);
        auto c = LinearizedAGCode::construct(cur, s.r, s.m);
        if (c.projective_count() > (1u << 20))
            continue;
        EXPECT_EQ(c.k_rank(), std::size_t{s.r} * c.dimension());
        const auto d = c.min_distance_bruteforce(code::kDefaultEnumerationCap, 4);
        EXPECT_GE(d, c.report().d_lower);
        EXPECT_LE(d, c.report().singleton);
        EXPECT_GE(Rational(c.report().kappa_l), c.report().kappa_l_lower);
        // n_ℓ + 1 - κ_ℓ - d never exceeds the defect.
        EXPECT_LE(Rational(c.report().n_l + 1 - c.report().kappa_l - d), c.report().defect);
        if (s.m == 0) {
            EXPECT_EQ(c.report().kappa_l, 1);
            EXPECT_EQ(c.report().d_lower, std::int64_t(c.s() * s.r));
        }
    }
}

TEST(MinDistance, TwoDimensionalLinearizedReedSolomon) {
    // κ_ℓ = 2 and s = q - 1 blocks: d = rs - 1.
    for (auto [p, e] : {std::pair{3u, 1u}, std::pair{2u, 2u}, std::pair{5u, 1u}}) {
        auto c = lrs(p, e, 2, 1);
        EXPECT_EQ(c.s(), std::size_t{p == 2 ? 3u : p - 1});
        EXPECT_EQ(c.min_distance_bruteforce(), static_cast<std::int64_t>(2 * c.s() - 1));
    }
}

TEST(Restricted, FullDimsIsSameCode) {
    const auto c = lrs(3, 1, 2, 1);
    const auto rc = c.restrict({2, 2});
    EXPECT_EQ(rc.generators(), c.generators());
    EXPECT_EQ(rc.d_lower(), c.report().d_lower);
    EXPECT_EQ(rc.singleton(), c.report().singleton);
}

TEST(Restricted, ColumnsAndBounds) {
    auto c = LinearizedAGCode::construct(CurveModel::projective_line(3, 1), 3, 2);
    const auto one = code::construct_restricted(c, std::vector<std::uint32_t>(c.s(), 1));
    std::mt19937_64 rng(11);
    for (int it = 0; it < 20; ++it) {
        const auto cw = one.encode(rand_msg(c, rng));
        for (const auto& b : cw.blocks)
            EXPECT_EQ(b.size(), 1u);
        EXPECT_LE(code::sumrank_weight(c.tower(), cw), c.s());
    }
    const auto mixed = c.restrict({3, 2});
    EXPECT_EQ(mixed.n_l(), 5);
    EXPECT_EQ(mixed.d_lower(), 3);
    const auto d = mixed.min_distance_bruteforce();
    EXPECT_GE(d, mixed.d_lower());
    EXPECT_LE(d, c.min_distance_bruteforce());
}

TEST(Restricted, InvalidDims) {
    const auto c = lrs(3, 1, 2, 1);
    for (const auto& w : {std::vector<std::uint32_t>{0, 2}, std::vector<std::uint32_t>{3, 2}, std::vector<std::uint32_t>{2}}) {
        try {
            (void)c.restrict(w);
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), Errc::InvalidSubspaceDim);
        }
    }
}

TEST(ReducedNorm, BlockDeterminantsAreNormValues) {
    // det ε̄_j(f) = Nrd(f)(P_j), with Nrd computed over the function ring.
    std::mt19937_64 rng(13);
    for (auto c : {lrs(3, 1, 2, 2), LinearizedAGCode::construct(CurveModel::hermitian(2, 2, 2), 2, 5),
                   LinearizedAGCode::construct(CurveModel::hermitian(2, 2, 2), 3, 6)}) {
        const auto& t = c.tower();
        curve::FunctionRing R(c.curve(), c.tower_ptr());
        for (int it = 0; it < 10; ++it) {
            const auto msg = rand_msg(c, rng);
            std::vector<curve::CurveFunction> coeffs(c.r());
            for (std::size_t b = 0; b < msg.size(); ++b) {
                const auto& le = c.lambda().elems[b];
                coeffs[le.i] = R.add(coeffs[le.i], {{le.mono, msg[b]}});
            }
            const ore::QuotientElem<curve::FunctionRing> f(R, coeffs, c.x().f);
            const auto n = ore::nrd(f);
            const auto blocks = code::to_matrices(t, c.encode(msg));
            for (std::size_t j = 0; j < c.s(); ++j)
                EXPECT_EQ(t.det(blocks[j]).v, c.curve().eval(t, n, c.places()[j]).v);
            if (!f.is_zero()) {
                EXPECT_FALSE(R.is_zero(n));
            }
        }
    }
}
