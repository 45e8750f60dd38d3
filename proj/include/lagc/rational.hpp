/**************************************************************************
 * rational.hpp
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

#include <cstdint>
#include <ostream>
#include <string>

#include <boost/rational.hpp>

namespace lagc {

using Rational = boost::rational<std::int64_t>;

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

inline std::int64_t floor(const Rational& x) { return floor_div(x.numerator(), x.denominator()); }

inline std::string to_string(const Rational& x) {
    if (x.denominator() == 1)
        return std::to_string(x.numerator());
    return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

/// A rational number or +∞ (the valuation of zero).
class ExtRational {
public:
    ExtRational() = default;
    ExtRational(Rational v) : v_(v) {}
    ExtRational(std::int64_t v) : v_(v) {}

    static ExtRational infinity() {
        ExtRational x;
        x.inf_ = true;
        return x;
    }

    bool is_infinite() const noexcept { return inf_; }
    const Rational& value() const noexcept { return v_; }

    friend ExtRational operator+(const ExtRational& a, const ExtRational& b) {
        if (a.inf_ || b.inf_)
            return infinity();
        return ExtRational(a.v_ + b.v_);
    }

    friend bool operator==(const ExtRational& a, const ExtRational& b) {
        if (a.inf_ || b.inf_)
            return a.inf_ == b.inf_;
        return a.v_ == b.v_;
    }
    friend bool operator<(const ExtRational& a, const ExtRational& b) {
        if (a.inf_)
            return false;
        if (b.inf_)
            return true;
        return a.v_ < b.v_;
    }
    friend bool operator>(const ExtRational& a, const ExtRational& b) { return b < a; }
    friend bool operator<=(const ExtRational& a, const ExtRational& b) { return !(b < a); }
    friend bool operator>=(const ExtRational& a, const ExtRational& b) { return !(a < b); }

    friend ExtRational min(const ExtRational& a, const ExtRational& b) { return b < a ? b : a; }

    friend std::ostream& operator<<(std::ostream& os, const ExtRational& x) {
        return x.inf_ ? (os << "inf") : (os << to_string(x.v_));
    }

private:
    Rational v_{0};
    bool inf_ = false;
};

} // namespace lagc
