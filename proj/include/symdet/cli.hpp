#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace symdet::cli {

inline constexpr const char* kToolVersion = "symdet 0.1.0";

// Exit codes, stable for scripting:
//   0 pass, 10 input parse error, 20 degenerate instance / wrong stratum,
//   30 kernel-equation failure, 31 witness-replay failure,
//   40 assembly/restriction/tangency/count/Hilbert failure, 50 scan failure.
enum ExitCode : int {
    kOk = 0,
    kParseError = 10,
    kDegenerate = 20,
    kKernelFailure = 30,
    kReplayFailure = 31,
    kAssemblyFailure = 40,
    kScanFailure = 50,
};

int cmd_gen(std::uint64_t seed, int count, const std::string& stratum, const std::string& outdir,
            std::ostream& log);

// `checks`: comma list among deltas, phi, phi0, matrixA, coeffsys, kernel,
// assembly, tangency, counts, hilbert, slice, scan, degenerate, or "all"
// (everything but scan and degenerate). Writes the verification report JSON
// to out_path when nonempty. When --in names a certificate file, only the
// certificate replay runs.
int cmd_verify(const std::string& in_path, const std::string& checks, const std::string& out_path,
               std::ostream& log, bool timings = false);

int cmd_emit(const std::string& in_path, const std::string& format, std::ostream& out);

int cmd_scan(const std::string& in_path, std::uint64_t q, long samples, std::uint64_t seed,
             const std::string& out_path, std::ostream& log);

}  // namespace symdet::cli
