#include "symdet/cli.hpp"

#include <chrono>
#include <filesystem>
#include <ostream>
#include <sstream>

#include "symdet/colength.hpp"
#include "symdet/errors.hpp"
#include "symdet/io.hpp"

namespace symdet::cli {

namespace {

using Clock = std::chrono::steady_clock;

struct CheckLog {
    io::json entries = io::json::array();
    bool timings;
    explicit CheckLog(bool t) : timings(t) {}

    template <typename F>
    bool run(const std::string& name, std::ostream& log, F&& body) {
        auto t0 = Clock::now();
        bool ok = false;
        std::string detail;
        try {
            ok = body(detail);
        } catch (const Error& e) {
            detail = e.what();
        }
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
        io::json entry{{"name", name}, {"status", ok ? "pass" : "fail"}};
        if (!detail.empty()) entry["detail"] = detail;
        if (timings) entry["ms"] = ms;
        entries.push_back(entry);
        log << (ok ? "[pass] " : "[FAIL] ") << name;
        if (!detail.empty()) log << " (" << detail << ")";
        log << " [" << ms << " ms]\n";
        return ok;
    }

    void skip(const std::string& name) {
        entries.push_back(io::json{{"name", name}, {"status", "skipped"}});
    }
};

bool wants(const std::string& checks, const std::string& name) {
    if (checks == "all")
        return name != "scan" && name != "degenerate";
    std::stringstream ss(checks);
    std::string item;
    while (std::getline(ss, item, ','))
        if (item == name || item == "all") return true;
    return false;
}

std::string poly_list_text(const std::vector<Poly>& polys, const std::string& label) {
    std::ostringstream os;
    os << label << "\n";
    for (const auto& p : polys) os << "  " << p.str() << "\n";
    return os.str();
}

}  // namespace

int cmd_gen(std::uint64_t seed, int count, const std::string& stratum, const std::string& outdir,
            std::ostream& log) {
    ext::Stratum st;
    if (stratum == "generic")
        st = ext::Stratum::Generic;
    else if (stratum == "delta1_zero")
        st = ext::Stratum::Delta1Zero;
    else {
        log << "unknown stratum: " << stratum << "\n";
        return kParseError;
    }
    std::vector<ext::Instance> insts;
    try {
        insts = ext::generate_instances(seed, count, st);
    } catch (const ExhaustedRejection& e) {
        log << e.what() << "\n";
        return kDegenerate;
    }
    std::filesystem::create_directories(outdir);
    for (int i = 0; i < count; ++i) {
        io::InstanceFile f{insts[i], seed, std::nullopt};
        std::ostringstream name;
        name << outdir << "/instance_" << stratum << "_" << seed << "_" << i << ".json";
        io::write_file(name.str(), io::instance_to_json(f).dump(2) + "\n");
        log << name.str() << "\n";
    }
    return kOk;
}

int cmd_verify(const std::string& in_path, const std::string& checks, const std::string& out_path,
               std::ostream& log, bool timings) {
    io::json j;
    try {
        j = io::json::parse(io::read_file(in_path));
    } catch (const std::exception& e) {
        log << "parse error: " << e.what() << "\n";
        return kParseError;
    }

    CheckLog cl(timings);
    int exit_code = kOk;
    auto fail = [&](int code) {
        if (exit_code == kOk) exit_code = code;
    };
    std::string digest;

    if (j.value("type", "instance") == "certificate") {
        // replay an existing certificate file
        try {
            ext::KernelCertificate cert = io::certificate_from_json(j);
            if (!cl.run("certificate-replay", log, [&](std::string&) {
                    return ext::verify_certificate(cert);
                }))
                fail(kReplayFailure);
            digest = io::digest_hex(io::certificate_to_json(cert).dump());
        } catch (const ParseError& e) {
            log << e.what() << "\n";
            return kParseError;
        }
    } else {
        io::InstanceFile file;
        try {
            file = io::instance_from_json(j);
        } catch (const ParseError& e) {
            log << e.what() << "\n";
            return kParseError;
        }
        const ext::Instance inst = file.inst;

        if (wants(checks, "degenerate")) {
            if (!cl.run("degenerate-stratum", log, [&](std::string& detail) {
                    ext::DegenerateReport rep = ext::degenerate_extension(inst, file.seed);
                    detail = "sq formal " + std::to_string(rep.sq1_member_formal) +
                             std::to_string(rep.sq2_member_formal) + ", conic generic " +
                             std::to_string(rep.conic_member_generic) + ", conic zero " +
                             std::to_string(rep.conic_member_zero);
                    return rep.sq1_member_formal && rep.sq2_member_formal &&
                           !rep.conic_member_formal && !rep.conic_member_generic &&
                           rep.conic_member_zero && rep.direct_route_agrees;
                }))
                fail(kKernelFailure);
        }

        ext::Deltas dl = ext::deltas_of(inst);
        if (wants(checks, "deltas")) {
            if (!cl.run("deltas", log, [&](std::string& detail) {
                    detail = "disc=" + dl.disc.str() + " d1=" + dl.d1.str();
                    return dl.generic();
                }))
                fail(kDegenerate);
        }
        if (dl.generic()) {
            if (wants(checks, "phi")) {
                if (!cl.run("image-equations", log, [&](std::string&) {
                        ext::PullbackMap phi = ext::curve_embedding(inst);
                        for (const auto& eq : ext::image_equations(inst))
                            if (!phi(eq).is_zero()) return false;
                        return true;
                    }))
                    fail(kKernelFailure);
            }
            if (wants(checks, "phi0")) {
                if (!cl.run("plane-extension-cofactors", log, [&](std::string&) {
                        ext::plane_extension();  // construction verifies the identity
                        return true;
                    }))
                    fail(kKernelFailure);
            }
            if (wants(checks, "matrixA")) {
                if (!cl.run("presentation-column-kill", log, [&](std::string&) {
                        ext::PullbackMap phi0 = ext::plane_extension();
                        RingPtr rb = rings::base();
                        PolyMatrix A = ext::presentation_matrix(rb);
                        RingPtr p5 = rings::p5();
                        Poly u = Poly::variable(p5, "u"), v = Poly::variable(p5, "v");
                        for (std::size_t col = 0; col < 3; ++col) {
                            Poly img = phi0(A.at(0, col)) + phi0(A.at(1, col)) * u +
                                       phi0(A.at(2, col)) * v;
                            if (!img.is_zero()) return false;
                        }
                        return det(A).weighted_degree() == std::optional<long>(8);
                    }))
                    fail(kKernelFailure);
            }
            if (wants(checks, "coeffsys")) {
                if (!cl.run("coefficient-system-kernel", log, [&](std::string& detail) {
                        auto sys = ext::coefficient_system(inst);
                        std::size_t dim = ext::kernel_dimension(sys);
                        detail = "kernel dimension " + std::to_string(dim);
                        return dim == 0;
                    }))
                    fail(kKernelFailure);
            }

            std::optional<ext::KernelCertificate> cert;
            if (wants(checks, "kernel") || wants(checks, "assembly") || wants(checks, "counts") ||
                wants(checks, "hilbert") || wants(checks, "slice") || wants(checks, "scan")) {
                if (!cl.run("kernel-equations", log, [&](std::string&) {
                        cert = ext::make_certificate(inst);
                        return true;
                    }))
                    fail(kKernelFailure);
                if (cert && wants(checks, "kernel")) {
                    if (!cl.run("witness-replay", log, [&](std::string&) {
                            return ext::verify_certificate(*cert);
                        }))
                        fail(kReplayFailure);
                    digest = io::digest_hex(io::certificate_to_json(*cert).dump());
                }
            }

            std::optional<assembly::ModelPair> pair;
            if (cert && (wants(checks, "assembly") || wants(checks, "counts") ||
                         wants(checks, "hilbert") || wants(checks, "slice") ||
                         wants(checks, "scan"))) {
                if (!cl.run("assembly-restriction", log, [&](std::string&) {
                        pair = assembly::assemble_model_pair(*cert);
                        return true;
                    }))
                    fail(kAssemblyFailure);
            }
            if (pair && wants(checks, "tangency")) {
                if (!cl.run("tangency", log, [&](std::string&) {
                        return assembly::tangency_check(inst).pass();
                    }))
                    fail(kAssemblyFailure);
            }
            if (pair && wants(checks, "counts")) {
                if (!cl.run("branch-counts", log, [&](std::string& detail) {
                        auto hp = assembly::halfpoint_locus_check(*pair);
                        auto m = assembly::block_matrix_of(*pair);
                        auto cl10 =
                            colength_projective(rings::yspace(), detmodel::minor_ideal_generators(m));
                        detail = "crossings " + std::to_string(hp.count) + ", nodes " +
                                 (cl10.value ? std::to_string(*cl10.value) : "inf");
                        return hp.count == 9 && hp.transversal && cl10.value && *cl10.value == 10;
                    }))
                    fail(kAssemblyFailure);
            }
            if (pair && wants(checks, "hilbert")) {
                if (!cl.run("hilbert-prefixes", log, [&](std::string&) {
                        return assembly::hilbert_check(*pair).pass();
                    }))
                    fail(kAssemblyFailure);
            }
            if (pair && file.slice && wants(checks, "slice")) {
                if (!cl.run("slice", log, [&](std::string& detail) {
                        auto sl = assembly::slice_surface(*pair, file.slice->h, file.slice->q2);
                        detail = "parameter tally " + std::to_string(sl.parameter_tally);
                        return sl.curve_ok && sl.transverse && sl.parameter_tally == 16;
                    }))
                    fail(kAssemblyFailure);
            }
            if (pair && wants(checks, "scan")) {
                if (!cl.run("quasismooth-scan", log, [&](std::string& detail) {
                        auto rep = modq::quasismooth_scan(
                            {pair->wprime[0], pair->wprime[1]}, rings::wprime(), 101, 500,
                            file.seed);
                        detail = std::to_string(rep.on_variety) + " points, " +
                                 std::to_string(rep.drops.size()) + " drops";
                        return rep.drops.empty() && rep.all_drops_reverified;
                    }))
                    fail(kScanFailure);
            }
        }
    }

    io::json report;
    report["schema"] = 1;
    report["type"] = "verification_report";
    report["tool"] = kToolVersion;
    report["input"] = in_path;
    report["checks"] = cl.entries;
    report["certificate_digest"] = digest;
    report["exit_code"] = exit_code;
    if (!out_path.empty()) io::write_file(out_path, report.dump(2) + "\n");
    log << "exit code " << exit_code << "\n";
    return exit_code;
}

int cmd_emit(const std::string& in_path, const std::string& format, std::ostream& out) {
    io::InstanceFile file;
    try {
        file = io::instance_from_json(io::json::parse(io::read_file(in_path)));
    } catch (const std::exception& e) {
        out << "parse error: " << e.what() << "\n";
        return kParseError;
    }
    ext::Instance inst = file.inst;
    ext::Deltas dl = ext::deltas_of(inst);
    if (!dl.generic()) return kDegenerate;
    ext::KernelCertificate cert = ext::make_certificate(inst);
    assembly::ModelPair pair = assembly::assemble_model_pair(cert);
    auto m = assembly::block_matrix_of(pair);
    auto eqs = detmodel::model_equations(m);

    if (format == "json") {
        io::json j;
        j["schema"] = 1;
        j["type"] = "model";
        j["instance"] = io::instance_to_json(file);
        j["tprime"] = io::json::array({pair.tprime[0].str(), pair.tprime[1].str()});
        j["wprime"] = io::json::array({pair.wprime[0].str(), pair.wprime[1].str()});
        j["certificate"] = io::certificate_to_json(cert);
        io::json mm = io::json::array();
        for (std::size_t i = 0; i < 4; ++i) {
            io::json row = io::json::array();
            for (std::size_t k = 0; k < 4; ++k) row.push_back(m.m.at(i, k).str());
            mm.push_back(row);
        }
        j["matrix"] = mm;
        out << j.dump(2) << "\n";
        return kOk;
    }
    if (format == "text") {
        out << "# symmetric model matrix\n";
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t k = 0; k < 4; ++k) out << (k ? " | " : "") << m.m.at(i, k).str();
            out << "\n";
        }
        out << poly_list_text(eqs.linear, "# row relations (weight 5)");
        out << poly_list_text(eqs.quadratic, "# cofactor relations (weight 6)");
        out << poly_list_text({pair.tprime[0], pair.tprime[1]}, "# surface model");
        out << poly_list_text({cert.sq1, cert.sq2, cert.mixed, cert.conic[0], cert.conic[1],
                               cert.conic[2]},
                              "# kernel equations");
        out << poly_list_text({pair.wprime[0], pair.wprime[1]}, "# sixfold model");
        return kOk;
    }
    if (format == "cas") {
        auto ring_decl = [&](const RingPtr& r) {
            std::ostringstream os;
            os << "ring r = 0, (";
            for (std::size_t i = 0; i < r->nvars(); ++i) os << (i ? "," : "") << r->var_name(i);
            os << "), wp(";
            for (std::size_t i = 0; i < r->nvars(); ++i) os << (i ? "," : "") << r->weight(i);
            os << ");";
            return os.str();
        };
        out << "// surface model in the weighted ring\n";
        out << ring_decl(rings::tprime()) << "\n";
        out << "ideal tprime = " << pair.tprime[0].str() << ",\n  " << pair.tprime[1].str()
            << ";\n\n";
        out << "// sixfold model\n";
        out << ring_decl(rings::wprime()) << "\n";
        out << "ideal wprime = " << pair.wprime[0].str() << ",\n  " << pair.wprime[1].str()
            << ";\n";
        out << "ideal kernel6 = " << cert.sq1.str() << ",\n  " << cert.sq2.str() << ",\n  "
            << cert.mixed.str() << ",\n  " << cert.conic[0].str() << ",\n  "
            << cert.conic[1].str() << ",\n  " << cert.conic[2].str() << ";\n";
        return kOk;
    }
    throw UnknownFormat("unknown emit format: " + format);
}

int cmd_scan(const std::string& in_path, std::uint64_t q, long samples, std::uint64_t seed,
             const std::string& out_path, std::ostream& log) {
    io::InstanceFile file;
    try {
        file = io::instance_from_json(io::json::parse(io::read_file(in_path)));
    } catch (const std::exception& e) {
        log << "parse error: " << e.what() << "\n";
        return kParseError;
    }
    if (!modq::is_prime(q) || q <= 3) {
        log << "bad prime\n";
        return kParseError;
    }
    ext::Deltas dl = ext::deltas_of(file.inst);
    if (!dl.generic()) return kDegenerate;
    ext::KernelCertificate cert = ext::make_certificate(file.inst);
    assembly::ModelPair pair = assembly::assemble_model_pair(cert);
    modq::ScanReport rep;
    if (file.slice) {
        auto sl = assembly::slice_surface(pair, file.slice->h, file.slice->q2, q, samples, seed);
        rep = *sl.scan;
    } else {
        rep = modq::quasismooth_scan({pair.wprime[0], pair.wprime[1]}, rings::wprime(), q, samples,
                                     seed);
    }
    std::string text = io::scan_report_to_json(rep).dump(2) + "\n";
    if (!out_path.empty())
        io::write_file(out_path, text);
    else
        log << text;
    return rep.drops.empty() && rep.all_drops_reverified ? kOk : kScanFailure;
}

}  // namespace symdet::cli
