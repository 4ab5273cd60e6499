// Command-line front end: parse arguments into a JobSpec and print the
// report.  Exit codes: 0 ok, 1 verify-paper mismatch, 2 parse error,
// 3 precondition violation.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fpt/cli.hpp"

namespace {

std::vector<std::int64_t> parse_weights(const std::string& text) {
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
        try {
            out.push_back(std::stoll(piece));
        } catch (const std::logic_error&) {
            throw fpt::parse_error("malformed weight: " + piece);
        }
    }
    if (out.empty()) throw fpt::parse_error("empty weight list");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact F-pure thresholds of quasi-homogeneous polynomials"};
    app.require_subcommand(1);

    fpt::JobSpec spec;
    std::string primes_text, weights_text;

    auto add_common = [&](CLI::App* cmd, bool needs_poly) {
        cmd->add_option("-p,--primes", primes_text,
                        "prime, comma list, or range lo..hi (sieved)")
            ->required();
        cmd->add_option("--weights", weights_text, "comma-separated positive weights");
        cmd->add_option("--e-cap", spec.e_cap, "candidate elimination level cap");
        cmd->add_flag("--json", spec.json, "machine-readable output");
        cmd->add_option("--threads", spec.threads, "worker cap (default: FPT_THREADS or cores)");
        if (needs_poly) cmd->add_option("poly", spec.poly, "polynomial text")->required();
    };

    auto* c_fpt = app.add_subcommand("fpt", "exact F-pure threshold");
    add_common(c_fpt, true);

    auto* c_nu = app.add_subcommand("nu", "nu_e sequence");
    add_common(c_nu, true);
    c_nu->add_option("-e,--levels", spec.levels, "number of levels");
    c_nu->add_option("--n", spec.nvars, "variable count override");

    auto* c_cand = app.add_subcommand("candidates", "threshold candidate list");
    c_cand->add_option("-p,--primes", primes_text, "prime, comma list, or range")->required();
    c_cand->add_option("--lambda", spec.lambda, "lct value a/b in lowest terms")->required();
    c_cand->add_option("--n", spec.nvars, "variable count (default 2)");
    c_cand->add_option("--depth", spec.depth, "digit-minimality filter depth");
    c_cand->add_flag("--unfiltered", spec.unfiltered, "skip the digit-minimality filter");
    c_cand->add_flag("--json", spec.json, "machine-readable output");

    auto* c_lct = app.add_subcommand("lct", "log canonical threshold and difference bounds");
    add_common(c_lct, true);

    auto* c_bad = app.add_subcommand("bad-primes", "sweep primes for certified fpt != lct");
    c_bad->add_option("-p,--primes", primes_text, "prime range to sweep")->required();
    c_bad->add_option("--lambda", spec.lambda, "lct value a/b in lowest terms")->required();
    c_bad->add_option("--poly", spec.poly, "optional polynomial to compute fpt per prime");
    c_bad->add_option("--weights", weights_text, "weights for --poly");
    c_bad->add_option("--e-cap", spec.e_cap, "candidate elimination level cap");
    c_bad->add_option("--threads", spec.threads, "worker cap");

    auto* c_pert = app.add_subcommand("perturb", "perturbation constancy report");
    add_common(c_pert, true);
    c_pert->add_option("-g,--perturbation", spec.perturb_g, "perturbation polynomial g")
        ->required();

    auto* c_verify = app.add_subcommand("verify-paper", "run the golden reproduction corpus");
    std::string suite = "fast";
    c_verify->add_option("--suite", suite, "fast or full")
        ->check(CLI::IsMember({"fast", "full"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_fpt->parsed()) spec.command = fpt::JobSpec::Command::fpt;
        if (c_nu->parsed()) spec.command = fpt::JobSpec::Command::nu;
        if (c_cand->parsed()) spec.command = fpt::JobSpec::Command::candidates;
        if (c_lct->parsed()) spec.command = fpt::JobSpec::Command::lct;
        if (c_bad->parsed()) spec.command = fpt::JobSpec::Command::bad_primes;
        if (c_pert->parsed()) spec.command = fpt::JobSpec::Command::perturb;
        if (c_verify->parsed()) {
            spec.command = fpt::JobSpec::Command::verify_paper;
            spec.full_suite = suite == "full";
        } else {
            spec.primes = fpt::expand_primes(primes_text);
            if (!weights_text.empty()) spec.weights = parse_weights(weights_text);
        }
    } catch (const fpt::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const fpt::precondition_error& e) {
        std::cerr << "precondition error: " << e.what() << "\n";
        return 3;
    }

    fpt::RunReport report = fpt::run(spec);
    if (report.exit_code == 0 || spec.command == fpt::JobSpec::Command::verify_paper)
        std::cout << report.out;
    else
        std::cerr << report.out;
    return report.exit_code;
}
