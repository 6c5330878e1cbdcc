// matper: periods of integer matrices mod N, gcd(A^n - I) streams,
// exceptional-matrix classification, entropy, and scan experiments.

#include <CLI11.hpp>

#include <iostream>
#include <nlohmann/json.hpp>
#include <string>

#include "matper/classify.hpp"
#include "matper/errors.hpp"
#include "matper/growth.hpp"
#include "matper/modorder.hpp"
#include "matper/report_io.hpp"

namespace {

using matper::Int;

Int parse_big(const std::string& s, const char* what) {
    try {
        return Int(s);
    } catch (const std::invalid_argument&) {
        throw matper::ParseError(std::string("invalid ") + what + ": " + s);
    }
}

// "p^e,p^e,..." or "p,p,..." -> validated by order_mod
matper::FactoredInteger parse_factors(const std::string& spec, const Int& n) {
    matper::FactoredInteger f;
    f.n = n;
    std::string item;
    std::istringstream in(spec);
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        size_t caret = item.find('^');
        Int p = parse_big(item.substr(0, caret), "prime");
        unsigned e = 1;
        if (caret != std::string::npos) e = static_cast<unsigned>(std::stoul(item.substr(caret + 1)));
        f.factors.emplace_back(p, e);
    }
    std::sort(f.factors.begin(), f.factors.end());
    return f;
}

void emit_json(const nlohmann::ordered_json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact periods of integer matrices modulo N"};
    app.require_subcommand(1);

    std::string matrix_path, matrix2_path, modulus_str, factors_str, output_format;
    unsigned long n_max = 0, k_max = 0, r_param = 1, tail = 0, r_bound = 0;
    long exp_bound = 64;
    long prec_bits = 128;
    unsigned jobs = 1;
    uint64_t seed = 0;
    std::string nmin_str, nmax_str;

    auto add_matrix = [&](CLI::App* cmd) {
        cmd->add_option("-m,--matrix", matrix_path, "matrix file (JSON rows format)")->required();
    };
    auto add_common = [&](CLI::App* cmd, const char* fmt) {
        cmd->add_option("--seed", seed, "seed for the factorizer's randomized stage");
        cmd->add_option("--prec-bits", prec_bits, "initial certification precision (doubled on demand)")
            ->check(CLI::PositiveNumber);
        cmd->add_option("-o,--output", output_format,
                        std::string("output format (this command emits ") + fmt + ")")
            ->check(CLI::IsMember({fmt}));
    };

    CLI::App* order = app.add_subcommand("order", "ord(A,N) with a minimality certificate (JSON)");
    add_matrix(order);
    add_common(order, "json");
    order->add_option("-N,--modulus", modulus_str, "modulus N >= 2")->required();
    order->add_option("--factors", factors_str, "known factorization of N, e.g. 2^3,5,7");

    CLI::App* gcdpow = app.add_subcommand("gcd-pow", "stream of gcd(A^n - I) for n = 1..n_max (CSV)");
    add_matrix(gcdpow);
    add_common(gcdpow, "csv");
    gcdpow->add_option("--n-max", n_max, "largest exponent")->required()->check(CLI::PositiveNumber);
    gcdpow->add_option("--tail", tail, "tail window for the ratio summary (0 = all)");

    CLI::App* classify_cmd = app.add_subcommand("classify", "exceptional-matrix verdict with witness (JSON)");
    add_matrix(classify_cmd);
    add_common(classify_cmd, "json");
    classify_cmd->add_option("--exp-bound", exp_bound, "multiplicative-dependence exponent bound")
        ->check(CLI::PositiveNumber);
    classify_cmd->add_option("--r-bound", r_bound, "torsion order safety bound (0 = automatic)");

    CLI::App* scan = app.add_subcommand("scan", "ord(A,N)/log N over a modulus range (CSV)");
    add_matrix(scan);
    add_common(scan, "csv");
    scan->add_option("--n-min", nmin_str, "first modulus")->required();
    scan->add_option("--n-max", nmax_str, "last modulus")->required();
    scan->add_option("--jobs", jobs, "worker threads (output independent of this)");

    CLI::App* construct = app.add_subcommand(
        "construct", "small-period sequence N_k = gcd(A^{rk} - I) with orders (CSV)");
    add_matrix(construct);
    add_common(construct, "csv");
    construct->add_option("-r,--power", r_param, "power step r")->check(CLI::PositiveNumber);
    construct->add_option("--k-max", k_max, "largest k")->required()->check(CLI::PositiveNumber);

    CLI::App* entropy_cmd = app.add_subcommand("entropy", "toral entropy / log Mahler measure (JSON)");
    add_matrix(entropy_cmd);
    add_common(entropy_cmd, "json");

    CLI::App* kron = app.add_subcommand("kron", "Kronecker product of two matrices (matrix JSON)");
    add_matrix(kron);
    add_common(kron, "json");
    kron->add_option("-M,--matrix2", matrix2_path, "second matrix file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        matper::IntMatrix a = matper::parse_matrix_file(matrix_path);
        if (order->parsed()) {
            Int n = parse_big(modulus_str, "modulus");
            matper::OrderResult res = factors_str.empty()
                                          ? matper::order_mod(a, n, seed)
                                          : matper::order_mod(a, parse_factors(factors_str, n), seed);
            emit_json(matper::order_report(res));
        } else if (gcdpow->parsed()) {
            matper::GcdStream s = matper::gcd_power_stream(a, n_max, tail);
            std::cout << matper::gcd_stream_csv(s, matrix_path, n_max, tail);
        } else if (classify_cmd->parsed()) {
            matper::ExceptionalityVerdict v = matper::classify(a, exp_bound, r_bound);
            emit_json(matper::classify_report(v));
        } else if (scan->parsed()) {
            Int lo = parse_big(nmin_str, "n-min");
            Int hi = parse_big(nmax_str, "n-max");
            matper::ScanResult s = matper::ord_scan(a, lo, hi, jobs);
            std::cout << matper::scan_csv(s, matrix_path, lo, hi);
        } else if (construct->parsed()) {
            matper::PeriodSequence s = matper::small_period_sequence(a, r_param, k_max);
            std::cout << matper::period_sequence_csv(s, matrix_path, r_param, k_max);
        } else if (entropy_cmd->parsed()) {
            emit_json(matper::entropy_report(matper::entropy(a)));
        } else if (kron->parsed()) {
            matper::IntMatrix b = matper::parse_matrix_file(matrix2_path);
            emit_json(matper::matrix_json(matper::kronecker(a, b)));
        }
    } catch (const matper::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
