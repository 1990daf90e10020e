#pragma once

#include <iostream>
#include <optional>
#include <string>
#include <variant>

#include "amalgam/serialize.hpp"

namespace amalgam::cli {

struct NormCmd {
    SpaceSpec spec;
    PPF fn;
};

struct RearrangeCmd {
    PPF fn;
};

struct PairCmd {
    StepFunction a, b;
    std::optional<NormSpec> spec;
};

struct VerifyCmd {
    std::string suite;
    RandomCaseConfig cfg;
    std::vector<std::string> specs;   // parsed per suite
    double threshold = 10.0;
    Rational dilation_t = Rational(2);
    Rational p = Rational(1, 2);
    std::int64_t N = 100;
};

struct WitnessCmd {
    std::string name;
    std::optional<Rational> pA, pB, qB, qC, p, q;
    std::optional<Rational> a, b;   // family parameter overrides
    std::int64_t N = 1000;
};

using Command = std::variant<NormCmd, RearrangeCmd, PairCmd, VerifyCmd, WitnessCmd>;

namespace detail {

inline Exponent to_exponent(const Rational& r) { return Exponent::finite(r); }

inline Exponent exponent_arg(const std::optional<Rational>& r, const char* flag) {
    if (!r) throw ParseError(std::string("witness: missing --") + flag);
    return Exponent::finite(*r);
}

// exponent flags accept "inf" through a sentinel of 0 (exponents are
// positive otherwise); the CLI front end maps the literal string
inline Exponent exponent_or_inf(const std::optional<Rational>& r, const char* flag) {
    if (!r) throw ParseError(std::string("witness: missing --") + flag);
    if (r->is_zero()) return Exponent::inf();
    return Exponent::finite(*r);
}

inline int emit(std::ostream& out, const json& j, int code = 0) {
    out << j.dump(2) << "\n";
    return code;
}

inline int run_norm(const NormCmd& cmd, std::ostream& out) {
    ExtReal value;
    if (cmd.fn.is_step()) {
        value = space_norm(cmd.spec, StepFunction(cmd.fn));
    } else {
        // general inputs must already be non-increasing on their support
        value = space_norm(cmd.spec, MonotoneProfile(cmd.fn));
    }
    return emit(out, json{{"spec", str(cmd.spec)}, {"value", to_json(value)}});
}

inline int run_rearrange(const RearrangeCmd& cmd, std::ostream& out) {
    if (cmd.fn.is_step())
        return emit(out, to_json(rearrange_step(StepFunction(cmd.fn)).fn()));
    // non-step inputs are echoed in canonical form when already monotone;
    // symbolic rearrangement of general power functions is out of range
    return emit(out, to_json(MonotoneProfile(cmd.fn).fn()));
}

inline int run_pair(const PairCmd& cmd, std::ostream& out) {
    json j{{"raw", to_json(raw_pairing(cmd.a, cmd.b))},
           {"rearranged", to_json(rearranged_pairing(cmd.a, cmd.b))}};
    int code = 0;
    if (cmd.spec) {
        const HolderReport rep = holder_check(*cmd.spec, cmd.a, cmd.b);
        j["holder"] = to_json(rep);
        code = rep.pass ? 0 : 1;
    }
    return emit(out, j, code);
}

inline NormSpec norm_spec_arg(const VerifyCmd& cmd, std::size_t i, const char* fallback) {
    return parse_norm_spec(i < cmd.specs.size() ? cmd.specs[i] : fallback);
}

inline SpaceSpec space_spec_arg(const VerifyCmd& cmd, std::size_t i, const char* fallback) {
    return parse_space_spec(i < cmd.specs.size() ? cmd.specs[i] : fallback);
}

inline int run_verify(const VerifyCmd& cmd, std::ostream& out) {
    PropertyReport report;
    if (cmd.suite == "hardy-littlewood") {
        report = hardy_littlewood_suite(cmd.cfg);
    } else if (cmd.suite == "rearrangement") {
        report = rearrangement_suite(cmd.cfg);
    } else if (cmd.suite == "axioms") {
        report = axiom_suite(space_spec_arg(cmd, 0, "L:2"), cmd.cfg);
    } else if (cmd.suite == "dilation") {
        report = dilation_suite(space_spec_arg(cmd, 0, "L:2"), cmd.dilation_t, cmd.cfg);
    } else if (cmd.suite == "embedding") {
        const SpaceSpec src = space_spec_arg(cmd, 0, "WL:L:3:L:2");
        const SpaceSpec dst = space_spec_arg(cmd, 1, "WL:L:2:L:3");
        const auto* a = std::get_if<WLSpace>(&src);
        const auto* b = std::get_if<WLSpace>(&dst);
        if (!a || !b) throw ParseError("embedding suite expects two WL specs");
        report = embedding_suite(a->local, a->global, b->local, b->global, cmd.cfg);
    } else if (cmd.suite == "sandwich") {
        report = sandwich_suite(norm_spec_arg(cmd, 0, "L:2"), norm_spec_arg(cmd, 1, "L:1"),
                                cmd.cfg);
    } else if (cmd.suite == "extremal") {
        report = extremal_suite(norm_spec_arg(cmd, 0, "L:2"), cmd.cfg);
    } else if (cmd.suite == "hlp") {
        const SpaceSpec spec = space_spec_arg(cmd, 0, "WL:L:1:L:1/2");
        const auto* w = std::get_if<WLSpace>(&spec);
        if (!w) throw ParseError("hlp suite expects a WL spec");
        if (cmd.N < 2) throw ParseError("hlp suite needs --N >= 2");
        std::vector<HlpFamilyCase> family;
        for (std::int64_t n = 2; n <= cmd.N; n *= 10) family.push_back(chlp_family(cmd.p, n));
        if (family.empty() || family.back().f.pieces()[0].iv.right->num() != cmd.N)
            family.push_back(chlp_family(cmd.p, cmd.N));
        report = hlp_suite(w->local, w->global, family, cmd.threshold);
    } else {
        throw ParseError("unknown suite '" + cmd.suite + "'");
    }
    return emit(out, to_json(report), report.passed() ? 0 : 1);
}

inline int run_witness(const WitnessCmd& cmd, std::ostream& out) {
    if (cmd.N < 2) throw ParseError("witness: needs --N >= 2");
    if (cmd.name == "tem-local")
        return emit(out, to_json(tem_local_witness(exponent_arg(cmd.pA, "pA"),
                                                   exponent_or_inf(cmd.pB, "pB"))));
    if (cmd.name == "tem-global")
        return emit(out, to_json(tem_global_witness(exponent_or_inf(cmd.qB, "qB"),
                                                    exponent_or_inf(cmd.qC, "qC"))));
    if (cmd.name == "rwnbfs-p4")
        return emit(out, to_json(rwnbfs_p4_family(exponent_or_inf(cmd.p, "p"),
                                                  exponent_or_inf(cmd.q, "q"), cmd.N, cmd.a)));
    if (cmd.name == "rwnbfs-p5")
        return emit(out, to_json(rwnbfs_p5_family(exponent_or_inf(cmd.p, "p"),
                                                  exponent_or_inf(cmd.q, "q"), cmd.N, cmd.a,
                                                  cmd.b)));
    if (cmd.name == "chlp") {
        if (!cmd.p) throw ParseError("witness: missing --p");
        return emit(out, to_json(chlp_family(*cmd.p, cmd.N)));
    }
    throw ParseError("unknown witness '" + cmd.name + "'");
}

} // namespace detail

/**
 * Executes one parsed command: JSON on stdout, single-line diagnostics on
 * stderr. Exit code 0 on success/pass, 1 on a property or verification
 * failure, 2 on usage or parse errors.
 */
inline int run(const Command& cmd, std::ostream& out, std::ostream& err) {
    try {
        struct V {
            std::ostream& out;
            int operator()(const NormCmd& c) const { return detail::run_norm(c, out); }
            int operator()(const RearrangeCmd& c) const { return detail::run_rearrange(c, out); }
            int operator()(const PairCmd& c) const { return detail::run_pair(c, out); }
            int operator()(const VerifyCmd& c) const { return detail::run_verify(c, out); }
            int operator()(const WitnessCmd& c) const { return detail::run_witness(c, out); }
        };
        return std::visit(V{out}, cmd);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidSpec& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const NotNormable& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const UnsupportedIndices& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const IndicesNotApplicable& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const WitnessUnavailable& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidProfile& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "failure: " << e.what() << "\n";
        return 1;
    }
}

} // namespace amalgam::cli
