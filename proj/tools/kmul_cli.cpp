// Command-line surface for the multiplication toolkit: verify single
// parameter pairs, scan the parameter square, decompose numbers into
// products of attractor points, and reproduce the worked examples.
//
// Exit codes: 0 covered / all checks pass, 1 refuted or a check failed,
// 2 usage or invalid input.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "kmul/kmul.hpp"

namespace {

using namespace kmul;

constexpr int kExitCovered = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitUsage = 2;

Rational parse_or_usage(const std::string& text, const char* what) {
    try {
        return parse_rational(text);
    } catch (const parse_error& e) {
        std::cerr << "error: bad " << what << ": " << e.what() << "\n";
        std::exit(kExitUsage);
    }
}

void write_output(const std::string& path, const std::string& bytes) {
    if (path.empty() || path == "-") {
        std::cout << bytes;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write " << path << "\n";
        std::exit(kExitUsage);
    }
    out << bytes;
}

int run_verify(const std::string& lambda_text, const std::string& c_text, int depth) {
    Rational lambda = parse_or_usage(lambda_text, "--lambda");
    Rational c = parse_or_usage(c_text, "--c");
    IfsParams p = validate_params(lambda, c);
    std::cout << "lambda: " << rat_str(lambda) << "\n";
    std::cout << "c: " << rat_str(c) << "\n";
    if (!p.valid) {
        std::cout << "verdict: INVALID\n";
        std::cout << "reason: " << p.invalid_reason << "\n";
        return kExitUsage;
    }
    TheoremVerdict v = verify_theorem(p, depth);
    if (v.outcome == TheoremVerdict::Outcome::Covered) {
        std::cout << "verdict: COVERED\n";
        std::cout << "route: " << to_string(v.route) << "\n";
        std::cout << "window: " << v.window.str() << "\n";
        std::cout << "base-product: " << v.base_product.str() << "\n";
        std::cout << "m: " << rat_str(v.m) << "\n";
        std::cout << "renormalize: m = " << rat_str(v.m) << " <= lambda = " << rat_str(p.lambda)
                  << "\n";
        std::cout << "depth-invariance: " << (v.invariance_ok ? "ok" : "FAILED") << " (levels "
                  << v.window.base_level << ".." << v.invariance_to << ")\n";
        return kExitCovered;
    }
    std::cout << "verdict: NOT-COVERED\n";
    std::cout << "route: " << to_string(v.route) << "\n";
    if (v.gap)
        std::cout << "gap: (" << rat_str(v.gap->lo) << "," << rat_str(v.gap->hi) << ")\n";
    std::cout << "certificate: " << v.detail << "\n";
    return kExitRefuted;
}

bool apply_config_file(const std::string& path, std::map<std::string, std::string>& kv) {
    std::ifstream in(path);
    if (!in) return false;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t\r"));
            auto back = s.find_last_not_of(" \t\r");
            s.erase(back == std::string::npos ? 0 : back + 1);
            return s;
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = value;
    }
    return true;
}

int run_scan(std::map<std::string, std::string> options) {
    ScanConfig cfg;
    cfg.grid_step = parse_or_usage(options["step"], "step");
    cfg.lambda_range = Interval(parse_or_usage(options["lambda-min"], "lambda-min"),
                                parse_or_usage(options["lambda-max"], "lambda-max"));
    cfg.c_range = Interval(parse_or_usage(options["c-min"], "c-min"),
                           parse_or_usage(options["c-max"], "c-max"));
    std::string format = options["format"];
    std::string bytes;
    if (format == "csv") {
        bytes = scan_csv(cfg);
    } else if (format == "svg") {
        bytes = scan_svg(cfg);
    } else {
        std::cerr << "error: format must be csv or svg\n";
        return kExitUsage;
    }
    write_output(options["out"], bytes);
    return kExitCovered;
}

int run_decompose(const std::string& lambda_text, const std::string& c_text,
                  const std::string& u_text, int depth, const std::string& out_path) {
    Rational lambda = parse_or_usage(lambda_text, "--lambda");
    Rational c = parse_or_usage(c_text, "--c");
    Rational u = parse_or_usage(u_text, "--u");
    IfsParams p = validate_params(lambda, c);
    if (!p.valid) {
        std::cerr << "error: invalid parameters: " << p.invalid_reason << "\n";
        return kExitUsage;
    }
    try {
        DecompositionCertificate cert = decompose(p, u, depth);
        Rational err = cert.x * cert.y - u;
        if (err < 0) err = -err;
        std::cout << "u: " << rat_str(u) << "\n";
        std::cout << "word_x: " << cert.word_x << "\n";
        std::cout << "word_y: " << cert.word_y << "\n";
        std::cout << "x: " << rat_str(cert.x) << "\n";
        std::cout << "y: " << rat_str(cert.y) << "\n";
        std::cout << "scaling_power: " << cert.scaling_power << "\n";
        std::cout << "|x*y - u|: " << rat_str(err) << "\n";
        std::cout << "error_bound: " << rat_str(cert.error_bound) << "\n";
        bool ok = verify_certificate(p, u, cert);
        std::cout << "replay: " << (ok ? "ok" : "FAILED") << "\n";
        if (!out_path.empty()) write_output(out_path, to_json(cert, p, u).dump(2) + "\n");
        return ok ? kExitCovered : kExitRefuted;
    } catch (const not_in_coverage_region& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRefuted;
    }
}

struct CheckReporter {
    int failures = 0;
    void check(bool ok, const std::string& name) {
        std::cout << (ok ? "pass" : "FAIL") << ": " << name << "\n";
        if (!ok) ++failures;
    }
};

int run_examples(const std::string& which, int depth, const std::string& out_path) {
    CheckReporter report;
    if (which == "ex1") {
        // lambda = 1/3: coverage holds exactly from c = 4/9 on.
        IfsParams base = validate_params(rat(1, 3), rat(4, 9));
        for (const Rational& c : {rat(4, 9), rat(1, 2), rat(3, 5)}) {
            TheoremVerdict v = verify_theorem(validate_params(rat(1, 3), c), 4);
            report.check(v.outcome == TheoremVerdict::Outcome::Covered,
                         "covered at lambda=1/3, c=" + rat_str(c));
        }
        for (const Rational& c : {rat(1, 3), rat(2, 5), rat(43, 100)}) {
            TheoremVerdict v = verify_theorem(validate_params(rat(1, 3), c), 4);
            report.check(v.outcome == TheoremVerdict::Outcome::NotCovered && v.gap.has_value(),
                         "refuted at lambda=1/3, c=" + rat_str(c));
        }
        (void)base;
    } else if (which == "ex2") {
        const Rational prec = rat(1, 1000000000);
        const Interval unit(Rational(0), Rational(1));
        for (unsigned n = 2; n <= 10; ++n) {
            IntegerPolynomial palpha = IntegerPolynomial::monomial_plus(n, {1, -4, 1});
            IntegerPolynomial pbeta = IntegerPolynomial::monomial_plus(n, {1, -3});
            Interval alpha = isolate_smallest_root(palpha, unit, prec);
            Interval beta = isolate_smallest_root(pbeta, unit, prec);
            report.check(alpha.hi < beta.lo, "alpha < beta for n=" + std::to_string(n));
            // c = 2*lambda - lambda^n turns the coverage question into the
            // sign of lambda^n + lambda^2 - 4*lambda + 1.
            auto verdict_for = [&](const Rational& lambda) {
                Rational c = 2 * lambda - pow_int(lambda, n);
                return verify_theorem(validate_params(lambda, c), 2);
            };
            Rational inside = (alpha.hi + beta.lo) / 2;
            report.check(verdict_for(inside).outcome == TheoremVerdict::Outcome::Covered,
                         "covered inside (alpha,beta) at n=" + std::to_string(n));
            Rational below = alpha.lo / 2;
            report.check(verdict_for(below).outcome == TheoremVerdict::Outcome::NotCovered,
                         "refuted below alpha at n=" + std::to_string(n));
            Rational above = (beta.hi + 1) / 2;
            report.check(verdict_for(above).outcome == TheoremVerdict::Outcome::Invalid,
                         "invalid above beta at n=" + std::to_string(n));
        }
    } else if (which == "prop") {
        const Rational prec = rat(1, 1000000000);
        const Interval unit(Rational(0), Rational(1));
        for (unsigned n = 2; n <= 20; ++n) {
            IntegerPolynomial palpha = IntegerPolynomial::monomial_plus(n, {1, -4, 1});
            IntegerPolynomial pbeta = IntegerPolynomial::monomial_plus(n, {1, -3});
            Interval alpha = isolate_smallest_root(palpha, unit, prec);
            Interval beta = isolate_smallest_root(pbeta, unit, prec);
            report.check(alpha.width() <= prec && beta.width() <= prec && alpha.hi < beta.lo,
                         "disjoint ordered enclosures for n=" + std::to_string(n));
            if (n == 2) {
                IntegerPolynomial q({1, -3, 1});
                report.check(q.sign_at(beta.lo) > 0 && q.sign_at(beta.hi) < 0,
                             "beta enclosure brackets the root of x^2-3x+1");
            }
        }
    } else if (which == "blue-lemma") {
        BlueCertificate cert = certify_blue_lemma(depth);
        std::map<std::string, int> histogram;
        for (const auto& leaf : cert.leaves) histogram[to_string(leaf.rule)]++;
        std::cout << "depth: " << cert.depth << "\n";
        std::cout << "lambda-range: [" << rat_str(cert.root.l_lo) << "," << rat_str(cert.root.l_hi)
                  << "]\n";
        std::cout << "leaves: " << cert.leaves.size() << "\n";
        for (const auto& [rule, count] : histogram)
            std::cout << "  " << rule << ": " << count << "\n";
        std::cout << "undecided: " << cert.undecided.size() << "\n";
        report.check(cert.complete(), "no undecided boxes");
        std::string why;
        report.check(replay_blue_certificate(cert, &why), "independent replay" +
                     (why.empty() ? "" : " (" + why + ")"));
        if (!out_path.empty()) write_output(out_path, to_json(cert).dump(2) + "\n");
    } else {
        std::cerr << "error: --which must be ex1, ex2, prop or blue-lemma\n";
        return kExitUsage;
    }
    std::cout << (report.failures == 0 ? "all checks passed" : "checks failed") << "\n";
    return report.failures == 0 ? kExitCovered : kExitRefuted;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multiplication on an overlapping self-similar family"};
    app.require_subcommand(1);

    auto* verify = app.add_subcommand("verify", "decide coverage for one parameter pair");
    std::string lambda_text, c_text, u_text;
    int depth = 6;
    verify->add_option("--lambda", lambda_text, "contraction ratio, rational")->required();
    verify->add_option("--c", c_text, "translation parameter, rational")->required();
    verify->add_option("--depth", depth, "depth-invariance audit level");

    auto* scan = app.add_subcommand("scan", "classify a parameter grid to CSV or SVG");
    std::map<std::string, std::string> scan_options{
        {"step", "1/100"},  {"lambda-min", "0"}, {"lambda-max", "1"}, {"c-min", "0"},
        {"c-max", "1"},     {"format", "csv"},   {"out", ""},
    };
    std::string config_path;
    scan->add_option("--config", config_path, "key=value file mirroring the scan options");
    std::map<std::string, std::string> scan_cli;
    scan->add_option("--step", scan_cli["step"], "grid step, rational");
    scan->add_option("--lambda-min", scan_cli["lambda-min"], "lambda range lower bound");
    scan->add_option("--lambda-max", scan_cli["lambda-max"], "lambda range upper bound");
    scan->add_option("--c-min", scan_cli["c-min"], "c range lower bound");
    scan->add_option("--c-max", scan_cli["c-max"], "c range upper bound");
    scan->add_option("--format", scan_cli["format"], "csv or svg");
    scan->add_option("--out", scan_cli["out"], "output path (default stdout)");

    auto* decompose_cmd = app.add_subcommand("decompose", "write u as a product of attractor points");
    int decompose_depth = 12;
    std::string decompose_out;
    decompose_cmd->add_option("--lambda", lambda_text, "contraction ratio")->required();
    decompose_cmd->add_option("--c", c_text, "translation parameter")->required();
    decompose_cmd->add_option("--u", u_text, "target in [0,1]")->required();
    decompose_cmd->add_option("--depth", decompose_depth, "refinement depth");
    decompose_cmd->add_option("--out", decompose_out, "certificate JSON path");

    auto* examples = app.add_subcommand("examples", "reproduce the worked examples");
    std::string which;
    int blue_depth = 24;
    std::string examples_out;
    examples->add_option("--which", which, "ex1, ex2, prop or blue-lemma")->required();
    examples->add_option("--depth", blue_depth, "subdivision depth for blue-lemma");
    examples->add_option("--out", examples_out, "certificate output path (blue-lemma)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (verify->parsed()) return run_verify(lambda_text, c_text, depth);
        if (scan->parsed()) {
            std::map<std::string, std::string> options = scan_options;
            if (!config_path.empty() && !apply_config_file(config_path, options)) {
                std::cerr << "error: cannot read config " << config_path << "\n";
                return kExitUsage;
            }
            for (const auto& [key, value] : scan_cli)
                if (!value.empty()) options[key] = value;
            return run_scan(std::move(options));
        }
        if (decompose_cmd->parsed())
            return run_decompose(lambda_text, c_text, u_text, decompose_depth, decompose_out);
        if (examples->parsed()) return run_examples(which, blue_depth, examples_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRefuted;
    }
    return kExitUsage;
}
