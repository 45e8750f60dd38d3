/**************************************************************************
 * lagc.cpp
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

// Command-line front end: construct, encode, mindist, bounds, selftest.
//
// Exit codes:
//   0  success
//   1  selftest failure
//   2  invalid flags or arguments (including InvalidQ, QNotSquare, DeltaTooSmall)
//   3  HypothesisFailed, TooFewPlaces, NoAdmissibleFunction
//   4  LengthMismatch
//   5  EnumerationTooLarge
//   6  DescriptorMismatch
//   7  BoundViolation

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include <lagc/lagc.hpp>

namespace {

using namespace lagc;

int exit_code(Errc c) {
    switch (c) {
    case Errc::HypothesisFailed:
    case Errc::TooFewPlaces:
    case Errc::NoAdmissibleFunction: return 3;
    case Errc::LengthMismatch: return 4;
    case Errc::EnumerationTooLarge: return 5;
    case Errc::DescriptorMismatch: return 6;
    case Errc::BoundViolation: return 7;
    default: return 2;
    }
}

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::optional<std::string>& path, const std::string& text) {
    if (!path) {
        std::cout << text;
        return;
    }
    std::ofstream out(*path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text))
        throw UsageError("cannot write " + *path);
}

// Comma-separated ℓ indices, each decimal or 0x-prefixed hex.
std::vector<gf::LElem> parse_message(const std::string& text, std::uint32_t field_size) {
    std::vector<gf::LElem> out;
    if (text.empty())
        return out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = text.find(',', start);
        std::string tok = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.front())))
            tok.erase(tok.begin());
        while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back())))
            tok.pop_back();
        int base = 10;
        std::string digits = tok;
        if (digits.size() > 2 && digits[0] == '0' && (digits[1] == 'x' || digits[1] == 'X')) {
            base = 16;
            digits = digits.substr(2);
        }
        if (digits.empty())
            throw UsageError("malformed message symbol '" + tok + "'");
        for (char ch : digits)
            if (base == 10 ? !std::isdigit(static_cast<unsigned char>(ch)) : !std::isxdigit(static_cast<unsigned char>(ch)))
                throw UsageError("malformed message symbol '" + tok + "'");
        if (digits.size() > 9)
            throw UsageError("message symbol '" + tok + "' out of range");
        const unsigned long v = std::stoul(digits, nullptr, base);
        if (v >= field_size)
            throw UsageError("message symbol '" + tok + "' is not an element of the field of size " +
                             std::to_string(field_size));
        out.push_back(gf::LElem{static_cast<std::uint32_t>(v)});
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    return out;
}

std::string report_table(const code::LinearizedAGCode& c) {
    const auto& r = c.report();
    std::ostringstream out;
    auto row = [&](const std::string& k, const std::string& v) {
        out << k << std::string(16 - k.size(), ' ') << v << "\n";
    };
    row("curve", curve::to_string(c.curve().kind()));
    row("q", std::to_string(c.tower().q()));
    row("r", std::to_string(c.r()));
    row("m", std::to_string(c.m()));
    row("s", std::to_string(c.s()));
    row("n", std::to_string(r.n));
    row("n_l", std::to_string(r.n_l));
    row("kappa_l", std::to_string(r.kappa_l));
    row("kappa_l_lower", to_string(r.kappa_l_lower));
    row("d_lower", std::to_string(r.d_lower));
    row("singleton", std::to_string(r.singleton));
    row("singleton_gap", std::to_string(r.singleton - r.d_lower));
    row("defect", to_string(r.defect));
    row("exact", r.exact ? "yes" : "no");
    row("d_exact", r.d_exact ? std::to_string(*r.d_exact) : "-");
    return out.str();
}

struct ConstructArgs {
    std::string curve;
    std::uint32_t p = 0, e = 0, r = 0;
    std::optional<std::uint32_t> q0;
    std::int64_t m = 0;
    std::optional<std::size_t> max_s;
    std::string out;
};

int cmd_construct(const ConstructArgs& a) {
    curve::CurveModel model = [&] {
        if (a.curve == "p1") {
            if (a.q0)
                throw UsageError("--q0 only applies to --curve hermitian");
            return curve::CurveModel::projective_line(a.p, a.e);
        }
        if (!a.q0)
            throw UsageError("--curve hermitian needs --q0");
        return curve::CurveModel::hermitian(a.p, a.e, *a.q0);
    }();
    const auto code = code::LinearizedAGCode::construct(model, a.r, a.m, a.max_s);
    write_output(a.out, io::dump(io::to_json(code)));
    std::cout << report_table(code);
    return 0;
}

int cmd_encode(const std::string& path, const std::string& message) {
    const auto code = io::from_string(read_file(path));
    const auto msg = parse_message(message, code.tower().size());
    std::cout << io::dump(io::codeword_json(code.tower(), code.encode(msg)));
    return 0;
}

int cmd_mindist(const std::string& path, unsigned jobs, std::uint64_t cap) {
    auto code = io::from_string(read_file(path));
    const auto d = code.min_distance_bruteforce(cap, jobs);
    std::cout << d << "\n";
    std::cerr << "d = " << d << " in [" << code.report().d_lower << ", " << code.report().singleton << "]\n";
    return 0;
}

struct BoundsArgs {
    double q = 0;
    std::optional<std::uint32_t> r;
    bool r_inf = false;
    std::string mode;
    std::optional<std::uint64_t> s;
    std::optional<double> delta;
    double step = 0.01;
    std::optional<std::string> out;
};

int cmd_bounds(const BoundsArgs& a) {
    bounds::check_q(a.q);
    if (a.mode == "compgv" || a.mode == "table") {
        const double root = std::round(std::sqrt(a.q));
        if (root * root != a.q)
            fail(Errc::QNotSquare, "q must be a perfect square");
    }
    if (a.r.has_value() == a.r_inf)
        throw UsageError("give exactly one of --r and --r-inf");
    const bounds::Degree r = a.r_inf ? bounds::Degree::infinity() : bounds::Degree(*a.r);
    if (a.mode == "table") {
        const auto grid = bounds::delta_grid(a.step);
        write_output(a.out, bounds::emit_table(a.q, r, grid));
        return 0;
    }
    if (!a.delta)
        throw UsageError("--mode " + a.mode + " needs --delta");
    double v = 0;
    if (a.mode == "finite") {
        if (a.r_inf || !a.s)
            throw UsageError("--mode finite needs a finite --r and --s");
        v = bounds::gv_finite(a.q, *a.r, *a.s, *a.delta);
    } else if (a.mode == "asymptotic") {
        v = bounds::gv_asymptotic(a.q, r, *a.delta);
    } else {
        v = bounds::compgv(a.q, r, *a.delta);
    }
    write_output(a.out, bounds::format6(v) + "\n");
    return 0;
}

int cmd_selftest(bool verbose) {
    bool ok = true;
    for (const auto& suite : selftest::suites()) {
        const auto res = selftest::run_suite(suite);
        ok = ok && res.passed();
        std::printf("%-8s %s  %6.1f ms", res.name.c_str(), res.passed() ? "ok  " : "FAIL", res.ms);
        if (verbose)
            std::printf("  (%zu checks)", res.checks);
        std::printf("\n");
        for (const auto& f : res.failures)
            std::printf("    %s\n", f.c_str());
    }
    std::fflush(stdout);
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Linearized algebraic-geometry codes in the sum-rank metric"};
    app.require_subcommand(1);

    ConstructArgs ca;
    auto* construct = app.add_subcommand("construct", "Build a code and write its descriptor");
    construct->add_option("--curve", ca.curve, "Curve model")->required()->check(CLI::IsMember({"p1", "hermitian"}));
    construct->add_option("--p", ca.p, "Characteristic")->required();
    construct->add_option("--e", ca.e, "Degree of k over the prime field")->required();
    construct->add_option("--q0", ca.q0, "Hermitian parameter, q = q0^2");
    construct->add_option("--r", ca.r, "Degree of l over k")->required()->check(CLI::PositiveNumber);
    construct->add_option("--m", ca.m, "Pole order bound m (divisor (m/r)·P∞)")->required()->check(CLI::NonNegativeNumber);
    construct->add_option("--max-s", ca.max_s, "Use at most this many evaluation places")->check(CLI::PositiveNumber);
    construct->add_option("--out", ca.out, "Descriptor file")->required();

    std::string code_path, message;
    auto* encode = app.add_subcommand("encode", "Encode one message");
    encode->add_option("--code", code_path, "Descriptor file")->required();
    encode->add_option("--message", message, "Comma-separated l indices, decimal or 0x hex")->required();

    unsigned jobs = 1;
    std::uint64_t cap = code::kDefaultEnumerationCap;
    auto* mindist = app.add_subcommand("mindist", "Exact minimum sum-rank distance by enumeration");
    mindist->add_option("--code", code_path, "Descriptor file")->required();
    mindist->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 256u));
    mindist->add_option("--cap", cap, "Maximum number of projective classes");

    BoundsArgs ba;
    auto* bnds = app.add_subcommand("bounds", "Gilbert-Varshamov and comparison bounds");
    bnds->add_option("--q", ba.q, "Size of k")->required();
    auto* r_opt = bnds->add_option("--r", ba.r, "Degree r")->check(CLI::PositiveNumber);
    bnds->add_flag("--r-inf", ba.r_inf, "Take r to infinity")->excludes(r_opt);
    bnds->add_option("--mode", ba.mode, "Output")->required()->check(
        CLI::IsMember({"finite", "asymptotic", "compgv", "table"}));
    bnds->add_option("--s", ba.s, "Number of blocks (finite mode)")->check(CLI::PositiveNumber);
    bnds->add_option("--delta", ba.delta, "Relative distance")->check(CLI::Range(0.0, 1.0));
    bnds->add_option("--delta-step", ba.step, "Grid step (table mode)");
    bnds->add_option("--out", ba.out, "Output file (stdout if omitted)");

    bool verbose = false;
    auto* self = app.add_subcommand("selftest", "Run the built-in invariant suites");
    self->add_flag("--verbose", verbose, "Report check counts per suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        (void)app.exit(e);
        return 2;
    }

    try {
        if (*construct)
            return cmd_construct(ca);
        if (*encode)
            return cmd_encode(code_path, message);
        if (*mindist)
            return cmd_mindist(code_path, jobs, cap);
        if (*bnds)
            return cmd_bounds(ba);
        if (*self)
            return cmd_selftest(verbose);
    } catch (const Error& e) {
        std::cerr << "lagc: " << e.what() << "\n";
        return exit_code(e.code());
    } catch (const UsageError& e) {
        std::cerr << "lagc: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
