#include <iostream>

#include <CLI11.hpp>

#include "symdet/cli.hpp"
#include "symdet/errors.hpp"

int main(int argc, char** argv) {
    CLI::App app{"exact construction and verification of symmetric determinantal models"};
    app.require_subcommand(1);

    std::uint64_t seed = 1;
    int count = 1;
    std::string stratum = "generic";
    std::string outdir = ".";
    auto* gen = app.add_subcommand("gen", "generate seeded instance files");
    gen->add_option("--seed", seed, "generator seed");
    gen->add_option("--count", count, "number of instances");
    gen->add_option("--stratum", stratum, "generic | delta1_zero");
    gen->add_option("--out", outdir, "output directory");

    std::string in_path, checks = "all", out_path;
    bool timings = false;
    auto* verify = app.add_subcommand("verify", "run the verification pipeline");
    verify->add_option("--in", in_path, "instance or certificate file")->required();
    verify->add_option("--checks", checks, "comma list of checks, or all");
    verify->add_option("--out", out_path, "report JSON path");
    verify->add_flag("--timings", timings, "include timings in the report (breaks byte determinism)");

    std::string emit_in, format = "text";
    auto* emit = app.add_subcommand("emit", "emit model equations");
    emit->add_option("--in", emit_in, "instance file")->required();
    emit->add_option("--format", format, "text | json | cas");

    std::string scan_in, scan_out;
    std::uint64_t q = 10007, scan_seed = 1;
    long samples = 1000;
    auto* scan = app.add_subcommand("scan", "finite-field smoothness scan");
    scan->add_option("--in", scan_in, "instance file")->required();
    scan->add_option("--q", q, "prime modulus");
    scan->add_option("--samples", samples, "on-variety sample count");
    scan->add_option("--seed", scan_seed, "scan seed");
    scan->add_option("--out", scan_out, "report JSON path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return symdet::cli::cmd_gen(seed, count, stratum, outdir, std::cout);
        if (verify->parsed())
            return symdet::cli::cmd_verify(in_path, checks, out_path, std::cerr, timings);
        if (emit->parsed()) return symdet::cli::cmd_emit(emit_in, format, std::cout);
        if (scan->parsed())
            return symdet::cli::cmd_scan(scan_in, q, samples, scan_seed, scan_out, std::cout);
    } catch (const symdet::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return symdet::cli::kParseError;
    } catch (const symdet::UnknownFormat& e) {
        std::cerr << "error: " << e.what() << "\n";
        return symdet::cli::kParseError;
    } catch (const symdet::DegenerateInstance& e) {
        std::cerr << "error: " << e.what() << "\n";
        return symdet::cli::kDegenerate;
    } catch (const symdet::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
