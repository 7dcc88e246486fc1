#include "symdet/io.hpp"

#include <fstream>
#include <sstream>

#include "symdet/errors.hpp"

namespace symdet::io {

namespace {

json rational_arr(const std::array<Rational, 3>& a) {
    return json::array({a[0].str(), a[1].str(), a[2].str()});
}

std::array<Rational, 3> rational_arr3(const json& j) {
    if (!j.is_array() || j.size() != 3) throw ParseError("expected a 3-vector of rationals");
    return {Rational::from_string(j[0].get<std::string>()),
            Rational::from_string(j[1].get<std::string>()),
            Rational::from_string(j[2].get<std::string>())};
}

json witness_to_json(const ext::Witness6& w) {
    json a = json::array();
    for (const auto& p : w) a.push_back(p.str());
    return a;
}

ext::Witness6 witness_from_json(const json& j) {
    if (!j.is_array() || j.size() != 6) throw ParseError("expected a 6-entry witness");
    ext::Witness6 w;
    for (int i = 0; i < 6; ++i) w[i] = Poly::parse(rings::base(), j[i].get<std::string>());
    return w;
}

}  // namespace

json instance_to_json(const InstanceFile& file) {
    json j;
    j["schema"] = 1;
    j["type"] = "instance";
    j["seed"] = file.seed;
    j["alpha1"] = file.inst.alpha1.str();
    j["alpha2"] = file.inst.alpha2.str();
    j["beta1"] = file.inst.beta1.str();
    j["beta2"] = file.inst.beta2.str();
    j["l1"] = rational_arr(file.inst.l1);
    j["l3"] = rational_arr(file.inst.l3);
    if (file.slice) {
        json h = json::array();
        for (const auto& row : file.slice->h) {
            json r = json::array();
            for (const auto& c : row) r.push_back(c.str());
            h.push_back(r);
        }
        json q2 = json::array();
        for (const auto& c : file.slice->q2) q2.push_back(c.str());
        j["slice"] = json{{"h", h}, {"q2", q2}};
    }
    return j;
}

InstanceFile instance_from_json(const json& j) {
    try {
        if (j.value("schema", 0) != 1) throw ParseError("unsupported schema version");
        InstanceFile f;
        f.seed = j.value("seed", std::uint64_t{0});
        f.inst.alpha1 = Rational::from_string(j.at("alpha1").get<std::string>());
        f.inst.alpha2 = Rational::from_string(j.at("alpha2").get<std::string>());
        f.inst.beta1 = Rational::from_string(j.at("beta1").get<std::string>());
        f.inst.beta2 = Rational::from_string(j.at("beta2").get<std::string>());
        f.inst.l1 = rational_arr3(j.at("l1"));
        f.inst.l3 = rational_arr3(j.at("l3"));
        if (j.contains("slice")) {
            SliceData s;
            const json& h = j["slice"].at("h");
            if (!h.is_array() || h.size() != 3) throw ParseError("slice: expected 3 forms");
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 4; ++c)
                    s.h[r][c] = Rational::from_string(h[r][c].get<std::string>());
            const json& q2 = j["slice"].at("q2");
            if (!q2.is_array() || q2.size() != 13) throw ParseError("slice: expected 13 q2 coefficients");
            for (int c = 0; c < 13; ++c) s.q2[c] = Rational::from_string(q2[c].get<std::string>());
            f.slice = s;
        }
        return f;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad instance file: ") + e.what());
    }
}

json certificate_to_json(const ext::KernelCertificate& cert) {
    json j;
    j["schema"] = 1;
    j["type"] = "certificate";
    j["instance"] = instance_to_json(InstanceFile{cert.inst, 0, std::nullopt});
    j["deltas"] = json{{"d1", cert.deltas.d1.str()},
                       {"d2", cert.deltas.d2.str()},
                       {"d3", cert.deltas.d3.str()},
                       {"disc", cert.deltas.disc.str()},
                       {"det_resultant", cert.deltas.det_resultant.str()}};
    j["equations"] = json{{"sq1", cert.sq1.str()},
                          {"sq2", cert.sq2.str()},
                          {"mixed", cert.mixed.str()},
                          {"conic", json::array({cert.conic[0].str(), cert.conic[1].str(),
                                                 cert.conic[2].str()})}};
    j["witnesses"] = json{{"sq1", witness_to_json(cert.w_sq1)},
                          {"sq2", witness_to_json(cert.w_sq2)},
                          {"mixed", witness_to_json(cert.w_mixed)},
                          {"conic", json::array({witness_to_json(cert.w_conic[0]),
                                                 witness_to_json(cert.w_conic[1]),
                                                 witness_to_json(cert.w_conic[2])})}};
    return j;
}

ext::KernelCertificate certificate_from_json(const json& j) {
    try {
        if (j.value("schema", 0) != 1) throw ParseError("unsupported schema version");
        ext::KernelCertificate cert;
        cert.inst = instance_from_json(j.at("instance")).inst;
        cert.deltas = ext::deltas_of(cert.inst);
        RingPtr S = rings::wprime();
        cert.sq1 = Poly::parse(S, j.at("equations").at("sq1").get<std::string>());
        cert.sq2 = Poly::parse(S, j.at("equations").at("sq2").get<std::string>());
        cert.mixed = Poly::parse(S, j.at("equations").at("mixed").get<std::string>());
        for (int i = 0; i < 3; ++i)
            cert.conic[i] = Poly::parse(S, j.at("equations").at("conic")[i].get<std::string>());
        cert.w_sq1 = witness_from_json(j.at("witnesses").at("sq1"));
        cert.w_sq2 = witness_from_json(j.at("witnesses").at("sq2"));
        cert.w_mixed = witness_from_json(j.at("witnesses").at("mixed"));
        for (int i = 0; i < 3; ++i)
            cert.w_conic[i] = witness_from_json(j.at("witnesses").at("conic")[i]);
        return cert;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad certificate file: ") + e.what());
    }
}

json scan_report_to_json(const modq::ScanReport& rep) {
    json j;
    j["schema"] = 1;
    j["type"] = "scan_report";
    j["q"] = rep.q;
    j["seed"] = rep.seed;
    j["samples_requested"] = rep.samples_requested;
    j["on_variety"] = rep.on_variety;
    j["fibers_tried"] = rep.fibers_tried;
    j["fixed_locus_hits"] = rep.fixed_locus_hits;
    j["all_drops_reverified"] = rep.all_drops_reverified;
    json drops = json::array();
    for (const auto& d : rep.drops)
        drops.push_back(json{{"point", d.point}, {"rank", d.rank}, {"expected", d.expected_rank}});
    j["drops"] = drops;
    return j;
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << contents;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string digest_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace symdet::io
