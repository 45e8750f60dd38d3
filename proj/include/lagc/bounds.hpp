/**************************************************************************
 * bounds.hpp
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
 * @file bounds.hpp
 * @brief Rate bounds for sum-rank codes: the Gilbert–Varshamov bound (finite
 * block count and asymptotic) and the linear bound attained by linearized AG
 * codes over F_q with q a square.
 *
 * Everything is double precision; rates are R = κ/(rs), δ = d/(rs).
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"

namespace lagc::bounds {

/// Extension degree r, or the r → ∞ limit.
class Degree {
public:
    constexpr Degree(std::uint32_t r) : r_(r) {}
    static constexpr Degree infinity() { return Degree(); }

    constexpr bool is_infinite() const { return !r_.has_value(); }
    constexpr std::uint32_t value() const { return *r_; }

private:
    constexpr Degree() = default;
    std::optional<std::uint32_t> r_;
};

inline double log_q(double q, double x) { return std::log(x) / std::log(q); }

inline void check_q(double q) {
    if (!(q >= 2) || q != std::floor(q))
        fail(Errc::InvalidQ, "q must be an integer >= 2");
}

/// Π_{i≥1} (1 - q^{-i})^{-1}, stopped once q^{-i} < 1e-15.
inline double gamma_q(double q) {
    check_q(q);
    double prod = 1.0, qi = 1.0;
    for (int i = 1; i < 4096; ++i) {
        qi /= q;
        prod /= (1.0 - qi);
        if (qi < 1e-15)
            break;
    }
    return prod;
}

/// Largest rate guaranteed by the GV bound for s blocks of r×r matrices.
inline double gv_finite(double q, std::uint32_t r, std::uint64_t s, double delta) {
    check_q(q);
    if (r == 0 || s == 0)
        fail(Errc::InvalidArgument, "r and s must be positive");
    const double sr = static_cast<double>(s) * r;
    const auto d = static_cast<std::int64_t>(std::llround(delta * sr));
    if (!(delta > 2.0 / sr) || d < 2)
        fail(Errc::DeltaTooSmall, "need delta > 2/(rs)");
    double sum = 0.0;
    for (std::int64_t i = 1; i <= d - 1; ++i)
        sum += std::log1p(static_cast<double>(s - 1) / static_cast<double>(i));
    sum /= std::log(q);
    sum += log_q(q, static_cast<double>(d - 1));
    const double rr = static_cast<double>(r);
    return delta * delta - delta * (2.0 + 2.0 / sr) + 1.0 + 2.0 / sr + 1.0 / (sr * sr) -
           sum / (rr * rr * static_cast<double>(s)) - log_q(q, gamma_q(q)) / (rr * rr);
}

/// Asymptotic GV rate with the o(1) term dropped; δ = 0 returns the limit.
inline double gv_asymptotic(double q, Degree r, double delta) {
    check_q(q);
    if (delta < 0 || delta > 1)
        fail(Errc::InvalidArgument, "delta must lie in [0, 1]");
    const double base = (delta - 1.0) * (delta - 1.0);
    if (r.is_infinite())
        return base;
    const double rr = r.value();
    const double tail = log_q(q, gamma_q(q)) / (rr * rr);
    if (delta == 0.0)
        return base - tail;
    return base - (delta / rr) * log_q(q, 1.0 + 1.0 / (delta * rr)) - log_q(q, 1.0 + delta * rr) / (rr * rr) - tail;
}

/// Rate attained by linearized AG codes over F_q, q a square.
inline double compgv(double q, Degree r, double delta) {
    check_q(q);
    const double root = std::round(std::sqrt(q));
    if (root * root != q)
        fail(Errc::QNotSquare, "q must be a perfect square");
    double v = 1.0 - delta - 2.0 / (root - 1.0);
    if (!r.is_infinite())
        v += 1.0 / (r.value() * (root - 1.0));
    return v;
}

inline std::vector<double> delta_grid(double step) {
    if (!(step > 0) || step > 1)
        fail(Errc::InvalidArgument, "delta step must lie in (0, 1]");
    std::vector<double> out;
    const auto n = static_cast<std::int64_t>(std::floor(1.0 / step + 1e-9));
    for (std::int64_t i = 0; i <= n; ++i)
        out.push_back(static_cast<double>(i) * step);
    return out;
}

inline std::string format6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    std::string s = buf;
    if (s == "-0.000000")
        s = "0.000000";
    return s;
}

/// CSV with header delta,gv_asymptotic,compgv and six decimals per value.
inline std::string emit_table(double q, Degree r, std::span<const double> deltas) {
    std::string out = "delta,gv_asymptotic,compgv\n";
    for (double d : deltas)
        out += format6(d) + "," + format6(gv_asymptotic(q, r, d)) + "," + format6(compgv(q, r, d)) + "\n";
    return out;
}

} // namespace lagc::bounds
