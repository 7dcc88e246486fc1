#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "symdet/assembly.hpp"
#include "symdet/extension.hpp"
#include "symdet/modq.hpp"

namespace symdet::io {

using nlohmann::json;

struct SliceData {
    std::array<std::array<Rational, 4>, 3> h;
    std::array<Rational, 13> q2;
};

// The on-disk moduli point: schema version, generation seed, scalars as
// exact "p/q" strings, combination-form coefficients, optional slice data.
struct InstanceFile {
    ext::Instance inst;
    std::uint64_t seed = 0;
    std::optional<SliceData> slice;
};

json instance_to_json(const InstanceFile& file);
InstanceFile instance_from_json(const json& j);  // throws ParseError

json certificate_to_json(const ext::KernelCertificate& cert);
ext::KernelCertificate certificate_from_json(const json& j);  // throws ParseError

json scan_report_to_json(const modq::ScanReport& rep);

void write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);  // throws ParseError when unreadable

// FNV-1a 64 over the canonical serialization; hex string.
std::string digest_hex(const std::string& bytes);

}  // namespace symdet::io
