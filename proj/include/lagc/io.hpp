/**************************************************************************
 * io.hpp
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
 * @file io.hpp
 * @brief JSON code descriptors with a fixed key order.
 *
 * Field elements are written as integers: k-elements by their index,
 * ℓ-elements as arrays of r k-indices (power-basis coordinates), matrices
 * row by row. Loading rebuilds the code from curve, x, m and places and
 * rejects any stored derived data that disagrees.
 */

#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "code.hpp"
#include "curve.hpp"
#include "error.hpp"
#include "gf.hpp"
#include "rational.hpp"

namespace lagc::io {

using Json = nlohmann::ordered_json;

constexpr int kDescriptorVersion = 1;

inline Json lelem_json(const gf::FieldTower& t, gf::LElem a) {
    Json arr = Json::array();
    for (auto c : t.coords(a))
        arr.push_back(c.v);
    return arr;
}

inline Json matrix_json(const gf::MatK& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(m(i, j).v);
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json codeword_json(const gf::FieldTower& t, const code::Codeword& c) {
    Json blocks = Json::array();
    for (const auto& m : code::to_matrices(t, c))
        blocks.push_back(matrix_json(m));
    return blocks;
}

inline Json function_json(const curve::CurveFunction& f) {
    Json arr = Json::array();
    for (const auto& [mono, c] : f)
        arr.push_back(Json{{"a", mono.a}, {"b", mono.b}, {"coeff", c.v}});
    return arr;
}

inline Json place_json(const curve::Place& pl) { return Json{{"x", pl.x.v}, {"y", pl.y.v}}; }

inline Json report_json(const code::ParameterReport& r) {
    Json j;
    j["n"] = r.n;
    j["n_l"] = r.n_l;
    j["kappa_l"] = r.kappa_l;
    j["kappa_l_lower"] = to_string(r.kappa_l_lower);
    j["d_lower"] = r.d_lower;
    j["singleton"] = r.singleton;
    j["defect"] = to_string(r.defect);
    j["d_exact"] = r.d_exact ? Json(*r.d_exact) : Json(nullptr);
    j["exact"] = r.exact;
    return j;
}

inline Json curve_json(const curve::CurveModel& c) {
    Json j;
    j["kind"] = curve::to_string(c.kind());
    if (c.kind() == curve::CurveKind::Hermitian)
        j["q0"] = c.q0();
    return j;
}

/// Curve descriptor {kind, p, e, q0?, r, x, m}.
inline Json curve_descriptor(const code::LinearizedAGCode& code) {
    Json j;
    j["kind"] = curve::to_string(code.curve().kind());
    j["p"] = code.curve().p();
    j["e"] = code.curve().e();
    if (code.curve().kind() == curve::CurveKind::Hermitian)
        j["q0"] = code.curve().q0();
    j["r"] = code.r();
    j["x"] = function_json(code.x().f);
    j["m"] = code.m();
    return j;
}

inline Json to_json(const code::LinearizedAGCode& code) {
    const auto& t = code.tower();
    Json j;
    j["version"] = kDescriptorVersion;
    Json tower;
    tower["p"] = t.p();
    tower["e"] = t.e();
    tower["r"] = t.r();
    tower["modulus_k"] = t.modulus_k();
    Json ml = Json::array();
    for (auto c : t.modulus_l())
        ml.push_back(c.v);
    tower["modulus_l"] = std::move(ml);
    j["tower"] = std::move(tower);
    j["curve"] = curve_json(code.curve());
    j["x"] = function_json(code.x().f);
    j["m"] = code.m();
    Json places = Json::array();
    for (const auto& pl : code.places())
        places.push_back(place_json(pl));
    j["places"] = std::move(places);
    Json lifts = Json::array();
    for (auto u : code.norm_lifts())
        lifts.push_back(lelem_json(t, u));
    j["norm_lifts"] = std::move(lifts);
    Json lam = Json::array();
    for (const auto& le : code.lambda().elems)
        lam.push_back(Json{{"a", le.mono.a}, {"b", le.mono.b}, {"i", le.i}});
    j["lambda_basis"] = std::move(lam);
    Json gens = Json::array();
    for (const auto& g : code.generators())
        gens.push_back(codeword_json(t, g));
    j["generators"] = std::move(gens);
    j["report"] = report_json(code.report());
    return j;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

/// Rebuild a code from its descriptor; any inconsistency is DescriptorMismatch.
inline code::LinearizedAGCode from_json(const Json& j) {
    auto mismatch = [](const std::string& what) -> void { fail(Errc::DescriptorMismatch, what); };
    try {
        if (!j.is_object() || !j.contains("version"))
            mismatch("missing version");
        if (j.at("version").get<int>() != kDescriptorVersion)
            mismatch("unsupported descriptor version");
        const auto& tw = j.at("tower");
        const auto p = tw.at("p").get<std::uint32_t>();
        const auto e = tw.at("e").get<std::uint32_t>();
        const auto r = tw.at("r").get<std::uint32_t>();
        const auto& cj = j.at("curve");
        const auto kind = cj.at("kind").get<std::string>();
        std::optional<curve::CurveModel> c;
        if (kind == "p1")
            c.emplace(curve::CurveModel::projective_line(p, e));
        else if (kind == "hermitian")
            c.emplace(curve::CurveModel::hermitian(p, e, cj.at("q0").get<std::uint32_t>()));
        else
            mismatch("unknown curve kind " + kind);

        curve::CurveFunction f;
        for (const auto& term : j.at("x")) {
            const auto coeff = term.at("coeff").get<std::uint32_t>();
            if (coeff >= c->q())
                mismatch("x coefficient outside k");
            curve::CurveModel::add_term(c->k(), f,
                                        curve::Monomial{term.at("a").get<std::uint32_t>(), term.at("b").get<std::uint32_t>()},
                                        gf::LElem{coeff});
        }
        if (f.empty())
            mismatch("x is zero");
        auto x = curve::make_x(*c, std::move(f));

        std::vector<curve::Place> places;
        for (const auto& pj : j.at("places")) {
            const curve::Place pl{false, gf::KElem{pj.at("x").get<std::uint32_t>()}, gf::KElem{pj.at("y").get<std::uint32_t>()}};
            if (std::find(c->affine_places().begin(), c->affine_places().end(), pl) == c->affine_places().end())
                mismatch("place is not a rational point of the curve");
            places.push_back(pl);
        }

        auto code = code::LinearizedAGCode::construct_at(*c, r, j.at("m").get<std::int64_t>(), std::move(x),
                                                         std::move(places));
        Json rebuilt = to_json(code);
        const auto& rj = j.at("report");
        if (rj.contains("d_exact") && !rj.at("d_exact").is_null())
            code.set_d_exact(rj.at("d_exact").get<std::int64_t>());
        rebuilt["report"]["d_exact"] = rj.contains("d_exact") ? rj.at("d_exact") : Json(nullptr);
        for (const char* key : {"tower", "curve", "x", "m", "places", "norm_lifts", "lambda_basis", "generators", "report"})
            if (!j.contains(key) || j.at(key) != rebuilt.at(key))
                mismatch(std::string("field '") + key + "' disagrees with the rebuilt code");
        return code;
    } catch (const nlohmann::json::exception& ex) {
        fail(Errc::DescriptorMismatch, std::string("malformed descriptor: ") + ex.what());
    }
}

inline code::LinearizedAGCode from_string(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception& ex) {
        fail(Errc::DescriptorMismatch, std::string("invalid JSON: ") + ex.what());
    }
    return from_json(j);
}

} // namespace lagc::io
