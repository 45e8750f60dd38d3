/**************************************************************************
 * code.hpp
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
 * @file code.hpp
 * @brief Linearized AG codes: multi-evaluation, encoding, sum-rank weights
 * and brute-force minimum distance.
 *
 * A codeword is an s-tuple of k-linear maps ℓ → ℓ. Block j is stored as
 * its list of columns, column c being the image of β^c, so the ℓ-scalar
 * action (left composition with multiplication by λ) is a columnwise
 * multiplication in ℓ. MatK views are produced on demand.
 */

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "curve.hpp"
#include "error.hpp"
#include "gf.hpp"
#include "rational.hpp"

namespace lagc::code {

/// s blocks, each a list of ℓ-columns (r columns, or w_i after restriction).
struct Codeword {
    std::vector<std::vector<gf::LElem>> blocks;
    friend bool operator==(const Codeword&, const Codeword&) = default;
};

inline std::vector<gf::MatK> to_matrices(const gf::FieldTower& t, const Codeword& c) {
    std::vector<gf::MatK> out;
    out.reserve(c.blocks.size());
    for (const auto& b : c.blocks)
        out.push_back(t.columns_to_mat(b));
    return out;
}

inline Codeword from_matrices(const gf::FieldTower& t, const std::vector<gf::MatK>& ms) {
    Codeword c;
    for (const auto& m : ms)
        c.blocks.push_back(t.mat_to_columns(m));
    return c;
}

inline std::size_t sumrank_weight(const gf::FieldTower& t, const Codeword& c) {
    std::size_t w = 0;
    for (const auto& b : c.blocks)
        w += t.rank_of(b);
    return w;
}

inline std::size_t sumrank_weight(const gf::FieldTower& t, const std::vector<gf::MatK>& blocks) {
    std::size_t w = 0;
    for (const auto& b : blocks)
        w += t.rank(b);
    return w;
}

inline Codeword sub(const gf::FieldTower& t, const Codeword& a, const Codeword& b) {
    if (a.blocks.size() != b.blocks.size())
        fail(Errc::ShapeMismatch, "codewords have different block counts");
    Codeword out = a;
    for (std::size_t j = 0; j < a.blocks.size(); ++j) {
        if (a.blocks[j].size() != b.blocks[j].size())
            fail(Errc::ShapeMismatch, "codeword blocks have different shapes");
        for (std::size_t c = 0; c < a.blocks[j].size(); ++c)
            out.blocks[j][c] = t.sub(a.blocks[j][c], b.blocks[j][c]);
    }
    return out;
}

inline std::size_t sumrank_distance(const gf::FieldTower& t, const Codeword& a, const Codeword& b) {
    return sumrank_weight(t, sub(t, a, b));
}

struct ParameterReport {
    std::int64_t n = 0;          // k-dimension of the ambient space
    std::int64_t n_l = 0;        // ℓ-dimension of the ambient space
    std::int64_t kappa_l = 0;    // exact ℓ-dimension
    Rational kappa_l_lower{0};   // dimension lower bound
    std::int64_t d_lower = 0;    // distance lower bound
    std::int64_t singleton = 0;  // n_ℓ - κ_ℓ + 1
    Rational defect{0};          // bound on n_ℓ + 1 - κ_ℓ - d
    std::optional<std::int64_t> d_exact;
    bool exact = true;           // Λ basis is the full space

    friend bool operator==(const ParameterReport&, const ParameterReport&) = default;
};

/// Shared generator data plus the brute-force search.
class GeneratorSet {
public:
    GeneratorSet() = default;
    GeneratorSet(gf::TowerPtr tower, std::vector<Codeword> gens) : t_(std::move(tower)), gens_(std::move(gens)) {}

    const gf::FieldTower& tower() const { return *t_; }
    const gf::TowerPtr& tower_ptr() const { return t_; }
    const std::vector<Codeword>& generators() const { return gens_; }
    std::size_t dimension() const { return gens_.size(); }

    Codeword encode(std::span<const gf::LElem> msg) const {
        if (msg.size() != gens_.size())
            fail(Errc::LengthMismatch, "message has " + std::to_string(msg.size()) + " symbols, expected " +
                                           std::to_string(gens_.size()));
        Codeword out = zero_word();
        for (std::size_t b = 0; b < gens_.size(); ++b)
            axpy(out, msg[b], gens_[b]);
        return out;
    }

    /// Number of ℓ-projective classes of nonzero messages.
    std::uint64_t projective_count() const {
        const std::uint64_t Q = t_->size();
        std::uint64_t total = 0, pw = 1;
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            total += pw;
            if (pw > std::numeric_limits<std::uint64_t>::max() / Q)
                return std::numeric_limits<std::uint64_t>::max();
            pw *= Q;
            if (total > std::numeric_limits<std::uint64_t>::max() / 2)
                return std::numeric_limits<std::uint64_t>::max();
        }
        return total;
    }

    /// Minimum sum-rank weight over one message per ℓ-line.
    std::int64_t min_weight(std::uint64_t cap, unsigned jobs) const {
        const std::uint64_t count = projective_count();
        if (count > cap)
            fail(Errc::EnumerationTooLarge, std::to_string(count) + " projective classes exceed cap " +
                                                std::to_string(cap));
        if (count == 0)
            return 0;
        jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::min<std::uint64_t>(count, 256))));
        std::vector<std::int64_t> partial(jobs, std::numeric_limits<std::int64_t>::max());
        auto work = [&](unsigned w) {
            const std::uint64_t lo = count * w / jobs, hi = count * (w + 1) / jobs;
            std::int64_t best = std::numeric_limits<std::int64_t>::max();
            for (std::uint64_t idx = lo; idx < hi; ++idx)
                best = std::min(best, static_cast<std::int64_t>(sumrank_weight(*t_, encode(message_at(idx)))));
            partial[w] = best;
        };
        if (jobs == 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < jobs; ++w)
                pool.emplace_back(work, w);
            for (auto& th : pool)
                th.join();
        }
        return *std::min_element(partial.begin(), partial.end());
    }

    /// The idx-th projective representative: leading nonzero symbol is 1.
    std::vector<gf::LElem> message_at(std::uint64_t idx) const {
        const std::uint64_t Q = t_->size();
        const std::size_t kappa = gens_.size();
        std::vector<gf::LElem> msg(kappa);
        // Representatives led at position p number Q^{κ-1-p}.
        for (std::size_t p = 0; p < kappa; ++p) {
            std::uint64_t block = 1;
            for (std::size_t i = p + 1; i < kappa; ++i)
                block *= Q;
            if (idx < block) {
                msg[p] = gf::FieldTower::one();
                for (std::size_t i = kappa; i-- > p + 1;) {
                    msg[i] = gf::LElem{static_cast<std::uint32_t>(idx % Q)};
                    idx /= Q;
                }
                return msg;
            }
            idx -= block;
        }
        fail(Errc::IndexOutOfRange, "projective index out of range");
    }

    /// k-rank of the ℓ-span of the generators (r·κ_ℓ when they are ℓ-independent).
    std::size_t k_rank() const {
        const auto& t = *t_;
        std::size_t len = 0;
        for (const auto& b : zero_word().blocks)
            len += b.size() * t.r();
        gf::MatK m(gens_.size() * t.r(), len);
        std::size_t row = 0;
        for (const auto& g : gens_)
            for (std::uint32_t s = 0; s < t.r(); ++s, ++row) {
                std::size_t col = 0;
                for (const auto& blk : g.blocks)
                    for (auto v : blk) {
                        const auto cs = t.coords(t.mul(t.basis(s), v));
                        for (auto c : cs)
                            m(row, col++) = c;
                    }
            }
        return t.rank(m);
    }

protected:
    Codeword zero_word() const {
        Codeword z;
        if (!gens_.empty())
            for (const auto& b : gens_.front().blocks)
                z.blocks.emplace_back(b.size(), gf::FieldTower::zero());
        return z;
    }

    void axpy(Codeword& acc, gf::LElem lambda, const Codeword& g) const {
        if (lambda.v == 0)
            return;
        for (std::size_t j = 0; j < g.blocks.size(); ++j)
            for (std::size_t c = 0; c < g.blocks[j].size(); ++c)
                acc.blocks[j][c] = t_->add(acc.blocks[j][c], t_->mul(lambda, g.blocks[j][c]));
    }

    gf::TowerPtr t_;
    std::vector<Codeword> gens_;
};

constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 24;

class RestrictedCode;

class LinearizedAGCode : public GeneratorSet {
public:
    /// C(x; (m/r)·P∞; pl_1..pl_s) with x from choose_x.
    static LinearizedAGCode construct(const curve::CurveModel& c, std::uint32_t r, std::int64_t m,
                                      std::optional<std::size_t> max_s = std::nullopt) {
        return construct_with_x(c, r, m, curve::choose_x(c, r), max_s);
    }

    static LinearizedAGCode construct_with_x(const curve::CurveModel& c, std::uint32_t r, std::int64_t m,
                                             curve::XFunction x, std::optional<std::size_t> max_s = std::nullopt) {
        if (m < 0)
            fail(Errc::InvalidArgument, "m must be non-negative");
        std::vector<curve::Place> places;
        for (const auto& pl : c.affine_places())
            if (c.eval(c.k(), x.f, pl).v != 0)
                places.push_back(pl);
        if (max_s && places.size() > *max_s)
            places.resize(*max_s);
        return construct_at(c, r, m, std::move(x), std::move(places));
    }

    /// Construction at caller-chosen evaluation places.
    static LinearizedAGCode construct_at(const curve::CurveModel& c, std::uint32_t r, std::int64_t m,
                                         curve::XFunction x, std::vector<curve::Place> places) {
        LinearizedAGCode code;
        code.t_ = gf::FieldTower::make(c.p(), c.e(), r);
        code.curve_.emplace(c);
        code.r_ = r;
        code.m_ = m;
        code.x_ = std::move(x);
        const std::int64_t s = static_cast<std::int64_t>(places.size());
        if (s == 0 || m >= s * std::int64_t{r})
            fail(Errc::TooFewPlaces, "need m < s·r (m = " + std::to_string(m) + ", s = " + std::to_string(s) +
                                         ", r = " + std::to_string(r) + ")");
        if (!curve::check_h1(c, code.x_, r))
            fail(Errc::HypothesisFailed, "H1: no rational place with v(x) coprime to r");
        for (std::size_t i = 0; i < places.size(); ++i) {
            if (!curve::check_h2(c, code.x_, r, places[i]))
                fail(Errc::HypothesisFailed, "H2: x vanishes or has a pole at an evaluation place");
            for (std::size_t j = 0; j < i; ++j)
                if (places[i] == places[j])
                    fail(Errc::InvalidArgument, "evaluation places must be distinct");
        }
        code.places_ = std::move(places);
        const auto& t = *code.t_;
        for (const auto& pl : code.places_)
            code.norm_lifts_.push_back(t.norm_preimage(gf::KElem{c.eval(c.k(), code.x_.f, pl).v}));
        code.lambda_ = curve::lambda_basis(c, code.x_, r, m);
        for (const auto& le : code.lambda_.elems)
            code.gens_.push_back(code.evaluate_basis(le));
        code.fill_report();
        return code;
    }

    const curve::CurveModel& curve() const { return *curve_; }
    std::uint32_t r() const { return r_; }
    std::int64_t m() const { return m_; }
    std::size_t s() const { return places_.size(); }
    const curve::XFunction& x() const { return x_; }
    const std::vector<curve::Place>& places() const { return places_; }
    const std::vector<gf::LElem>& norm_lifts() const { return norm_lifts_; }
    const curve::LambdaBasis& lambda() const { return lambda_; }
    const ParameterReport& report() const { return report_; }

    /// α(φ·T^i): block j is v ↦ φ(P_j)·ū_jΦ(ū_j)⋯Φ^{i-1}(ū_j)·Φ^i(v).
    Codeword evaluate_basis(const curve::LambdaElem& le) const {
        const auto& t = *t_;
        curve::CurveFunction phi{{le.mono, gf::FieldTower::one()}};
        Codeword cw;
        for (std::size_t j = 0; j < places_.size(); ++j) {
            gf::LElem a = gf::FieldTower::embed(gf::KElem{curve_->eval(curve_->k(), phi, places_[j]).v});
            for (std::uint32_t l = 0; l < le.i; ++l)
                a = t.mul(a, t.frobenius(norm_lifts_[j], l));
            std::vector<gf::LElem> cols(r_);
            for (std::uint32_t col = 0; col < r_; ++col)
                cols[col] = t.mul(a, t.frobenius(t.basis(col), le.i));
            cw.blocks.push_back(std::move(cols));
        }
        return cw;
    }

    std::int64_t min_distance_bruteforce(std::uint64_t cap = kDefaultEnumerationCap, unsigned jobs = 1) {
        const std::int64_t d = min_weight(cap, jobs);
        if (d < report_.d_lower || d > report_.singleton)
            fail(Errc::BoundViolation, "d = " + std::to_string(d) + " outside [" + std::to_string(report_.d_lower) +
                                           ", " + std::to_string(report_.singleton) + "]");
        report_.d_exact = d;
        return d;
    }

    RestrictedCode restrict(const std::vector<std::uint32_t>& w) const;

    /// Attach a previously computed exact distance (descriptor loading).
    void set_d_exact(std::optional<std::int64_t> d) { report_.d_exact = d; }

private:
    void fill_report() {
        const std::int64_t s = static_cast<std::int64_t>(places_.size());
        const std::int64_t r = r_;
        const auto pd = curve::place_data(*curve_, x_, r_);
        report_.n = s * r * r;
        report_.n_l = s * r;
        report_.kappa_l = static_cast<std::int64_t>(lambda_.elems.size());
        report_.kappa_l_lower = curve::dim_bound(*curve_, x_, r_, m_);
        report_.d_lower = s * r - m_;
        report_.singleton = report_.n_l - report_.kappa_l + 1;
        report_.defect = Rational(r * (std::int64_t{curve_->genus()} - 1) + 1) +
                         Rational(r, 2) * curve::ramification_sum(pd);
        report_.exact = lambda_.exact;
    }

    std::optional<curve::CurveModel> curve_;
    std::uint32_t r_ = 0;
    std::int64_t m_ = 0;
    curve::XFunction x_;
    std::vector<curve::Place> places_;
    std::vector<gf::LElem> norm_lifts_;
    curve::LambdaBasis lambda_;
    ParameterReport report_;
};

/// Domain of block i restricted to span(β^0..β^{w_i - 1}).
class RestrictedCode : public GeneratorSet {
public:
    RestrictedCode(const LinearizedAGCode& base, std::vector<std::uint32_t> w) : w_(std::move(w)) {
        if (w_.size() != base.s())
            fail(Errc::InvalidSubspaceDim, "need one subspace dimension per block");
        for (auto wi : w_)
            if (wi == 0 || wi > base.r())
                fail(Errc::InvalidSubspaceDim, "subspace dimensions must lie in [1, r]");
        t_ = base.tower_ptr();
        for (const auto& g : base.generators()) {
            Codeword c;
            for (std::size_t j = 0; j < g.blocks.size(); ++j)
                c.blocks.emplace_back(g.blocks[j].begin(), g.blocks[j].begin() + w_[j]);
            gens_.push_back(std::move(c));
        }
        std::int64_t total = 0;
        for (auto wi : w_)
            total += wi;
        n_l_ = total;
        d_lower_ = total - base.m();
        singleton_ = total - static_cast<std::int64_t>(gens_.size()) + 1;
    }

    const std::vector<std::uint32_t>& dims() const { return w_; }
    std::int64_t n_l() const { return n_l_; }
    std::int64_t d_lower() const { return d_lower_; }
    std::int64_t singleton() const { return singleton_; }

    std::int64_t min_distance_bruteforce(std::uint64_t cap = kDefaultEnumerationCap, unsigned jobs = 1) const {
        const std::int64_t d = min_weight(cap, jobs);
        if (d < d_lower_ || d > singleton_)
            fail(Errc::BoundViolation, "restricted d = " + std::to_string(d) + " outside [" +
                                           std::to_string(d_lower_) + ", " + std::to_string(singleton_) + "]");
        return d;
    }

private:
    std::vector<std::uint32_t> w_;
    std::int64_t n_l_ = 0;
    std::int64_t d_lower_ = 0;
    std::int64_t singleton_ = 0;
};

inline RestrictedCode LinearizedAGCode::restrict(const std::vector<std::uint32_t>& w) const {
    return RestrictedCode(*this, w);
}

inline RestrictedCode construct_restricted(const LinearizedAGCode& code, const std::vector<std::uint32_t>& w) {
    return code.restrict(w);
}

} // namespace lagc::code
