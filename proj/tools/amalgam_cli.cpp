#include <CLI11.hpp>

#include "amalgam/cli.hpp"

namespace {

using namespace amalgam;

Rational rational_flag(const std::string& s) {
    return s == "inf" ? Rational(0) : Rational::from_string(s);   // 0 marks inf for exponents
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact rearrangement and amalgam-norm calculator"};
    app.require_subcommand(1);

    std::string spec_str, fn_path, fn_path_b, suite, witness_name;
    std::vector<std::string> spec_list;
    std::uint64_t seed = 42;
    int cases = 200;
    double threshold = 10.0;
    std::string t_str = "2", p_str = "1/2", q_str, pA_str, pB_str, qB_str, qC_str;
    std::string a_str, b_str;
    std::int64_t N = 1000;

    auto* norm = app.add_subcommand("norm", "evaluate a space norm on a function file");
    norm->add_option("--spec", spec_str, "space spec, e.g. WL:L:1:L:inf")->required();
    norm->add_option("--fn", fn_path, "function file (JSON)")->required();

    auto* rearrange = app.add_subcommand("rearrange", "non-increasing rearrangement");
    rearrange->add_option("--fn", fn_path, "function file (JSON)")->required();

    auto* pair = app.add_subcommand("pair", "raw and rearranged pairings, optional Hoelder check");
    pair->add_option("--fa", fn_path, "first function file")->required();
    pair->add_option("--fb", fn_path_b, "second function file")->required();
    pair->add_option("--spec", spec_str, "Lebesgue spec for the Hoelder check, e.g. L:2");

    auto* verify = app.add_subcommand("verify", "run a property suite");
    verify->add_option("--suite", suite,
                       "hardy-littlewood | rearrangement | axioms | dilation | embedding | "
                       "sandwich | extremal | hlp")
        ->required();
    verify->add_option("--seed", seed, "random seed");
    verify->add_option("--cases", cases, "number of sampled cases");
    verify->add_option("--spec", spec_list, "suite specs (repeatable)");
    verify->add_option("--threshold", threshold, "HLP violation threshold");
    verify->add_option("--t", t_str, "dilation parameter (rational)");
    verify->add_option("--p", p_str, "family exponent (rational)");
    verify->add_option("--N", N, "family truncation length");

    auto* witness = app.add_subcommand("witness", "construct a certified counterexample");
    witness->add_option("--name", witness_name,
                        "tem-local | tem-global | rwnbfs-p4 | rwnbfs-p5 | chlp")
        ->required();
    witness->add_option("--pA", pA_str, "local source exponent");
    witness->add_option("--pB", pB_str, "local target exponent (rational or inf)");
    witness->add_option("--qB", qB_str, "global source exponent (rational or inf)");
    witness->add_option("--qC", qC_str, "global target exponent");
    witness->add_option("--p", p_str, "Wiener local / family exponent (rational or inf)");
    witness->add_option("--q", q_str, "Wiener global exponent (rational or inf)");
    witness->add_option("--a", a_str, "family parameter a override (rational)");
    witness->add_option("--b", b_str, "family parameter b override (rational)");
    witness->add_option("--N", N, "truncation length");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);   // --help
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        cli::Command cmd;
        if (*norm) {
            cmd = cli::NormCmd{parse_space_spec(spec_str), load_function_file(fn_path)};
        } else if (*rearrange) {
            cmd = cli::RearrangeCmd{load_function_file(fn_path)};
        } else if (*pair) {
            cli::PairCmd c{StepFunction(load_function_file(fn_path)),
                           StepFunction(load_function_file(fn_path_b)), std::nullopt};
            if (!spec_str.empty()) c.spec = parse_norm_spec(spec_str);
            cmd = std::move(c);
        } else if (*verify) {
            cli::VerifyCmd c;
            c.suite = suite;
            c.cfg.seed = seed;
            c.cfg.cases = cases;
            c.specs = spec_list;
            c.threshold = threshold;
            c.dilation_t = Rational::from_string(t_str);
            c.p = Rational::from_string(p_str);
            c.N = N;
            cmd = std::move(c);
        } else {
            cli::WitnessCmd c;
            c.name = witness_name;
            c.N = N;
            if (witness->count("--pA")) c.pA = rational_flag(pA_str);
            if (witness->count("--pB")) c.pB = rational_flag(pB_str);
            if (witness->count("--qB")) c.qB = rational_flag(qB_str);
            if (witness->count("--qC")) c.qC = rational_flag(qC_str);
            if (witness->count("--p")) c.p = rational_flag(p_str);
            if (witness->count("--q")) c.q = rational_flag(q_str);
            if (witness->count("--a")) c.a = Rational::from_string(a_str);
            if (witness->count("--b")) c.b = Rational::from_string(b_str);
            cmd = std::move(c);
        }
        return cli::run(cmd, std::cout, std::cerr);
    } catch (const amalgam::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
