#include "zetadiv/report.hpp"

#include <json.hpp>
#include <sstream>

namespace zetadiv {

namespace {

using nlohmann::json;

FieldRef field_ref(const Field& f) { return {f.characteristic(), f.modulus()}; }

ElemRef elem_ref(const FieldElement& e) { return {e.digits(), e.to_string()}; }

PlaceRef place_ref(const Place& p) {
    PlaceRef r;
    switch (p.kind()) {
        case Place::Kind::Affine:
            r.kind = "affine";
            r.x = elem_ref(p.x());
            r.y = elem_ref(p.y());
            break;
        case Place::Kind::Ramified:
            r.kind = "ram";
            r.ram = p.ram_index();
            break;
        case Place::Kind::Infinity:
            r.kind = "inf";
            break;
    }
    return r;
}

DivisorRef divisor_ref(const Divisor& dv) {
    DivisorRef r;
    for (const auto& [p, k] : dv.terms()) r.terms.push_back({place_ref(p), k});
    r.text = dv.to_string();
    return r;
}

EntryRef entry_ref(const RingElement& e) {
    EntryRef r;
    for (const auto& u : e.coords()) {
        std::vector<std::vector<uint32_t>> poly;
        for (const auto& c : u.coeffs()) poly.push_back(c.digits());
        r.coords.push_back(std::move(poly));
    }
    r.text = e.to_string();
    return r;
}

json to_json(const FieldRef& f) { return json{{"p", f.p}, {"modulus", f.modulus}}; }
json to_json(const ElemRef& e) { return json{{"digits", e.digits}, {"text", e.text}}; }

json to_json(const PlaceRef& p) {
    json j{{"kind", p.kind}};
    if (p.kind == "affine") {
        j["x"] = to_json(p.x);
        j["y"] = to_json(p.y);
    } else if (p.kind == "ram") {
        j["index"] = p.ram;
    }
    return j;
}

json to_json(const DivisorRef& d) {
    json terms = json::array();
    for (const auto& t : d.terms)
        terms.push_back(json{{"place", to_json(t.place)}, {"mult", t.mult}});
    return json{{"terms", terms}, {"text", d.text}};
}

json to_json(const EntryRef& e) { return json{{"coords", e.coords}, {"text", e.text}}; }

FieldRef field_from(const json& j) {
    return {j.at("p").get<uint32_t>(), j.at("modulus").get<std::vector<uint32_t>>()};
}

ElemRef elem_from(const json& j) {
    return {j.at("digits").get<std::vector<uint32_t>>(), j.at("text").get<std::string>()};
}

PlaceRef place_from(const json& j) {
    PlaceRef p;
    p.kind = j.at("kind").get<std::string>();
    if (p.kind == "affine") {
        p.x = elem_from(j.at("x"));
        p.y = elem_from(j.at("y"));
    } else if (p.kind == "ram") {
        p.ram = j.at("index").get<unsigned>();
    }
    return p;
}

DivisorRef divisor_from(const json& j) {
    DivisorRef d;
    for (const auto& t : j.at("terms"))
        d.terms.push_back({place_from(t.at("place")), t.at("mult").get<long long>()});
    d.text = j.at("text").get<std::string>();
    return d;
}

EntryRef entry_from(const json& j) {
    EntryRef e;
    e.coords = j.at("coords").get<std::vector<std::vector<std::vector<uint32_t>>>>();
    e.text = j.at("text").get<std::string>();
    return e;
}

std::string oracle_text(OracleState s) {
    switch (s) {
        case OracleState::Skipped: return "skipped";
        case OracleState::Pass: return "pass";
        case OracleState::Fail: return "fail";
    }
    return "?";
}

OracleState oracle_from(const std::string& s) {
    if (s == "pass") return OracleState::Pass;
    if (s == "fail") return OracleState::Fail;
    return OracleState::Skipped;
}

}  // namespace

DivisionReport build_report(const DivisionCertificate& cert, uint64_t seed, OracleState oracle) {
    DivisionReport r;
    r.seed = seed;
    r.base_field = field_ref(cert.base_curve.field);
    r.n = cert.base_curve.n;
    r.d = cert.base_curve.d;
    for (const auto& a : cert.base_curve.alphas) r.alphas.push_back(elem_ref(a));
    r.point = place_ref(cert.point);
    r.root_field = field_ref(cert.work_curve.field);
    for (const auto& rt : cert.roots.r) r.roots.push_back(elem_ref(rt));
    r.shift = elem_ref(cert.shift);
    r.ext_field = field_ref(cert.ext_curve.field);
    r.D = divisor_ref(cert.D);
    r.E = divisor_ref(cert.E);
    r.D_base = divisor_ref(cert.D_base);
    unsigned n = cert.base_curve.n;
    r.entry_1n = entry_ref(cert.N.entry(1, (long)n));
    r.entry_1nm1 = entry_ref(cert.N.entry(1, (long)n - 1 == 0 ? (long)n : (long)n - 1));
    r.poles = cert.poles;
    // the recorded identity: div0 N_{1,n} - zeta(div0 N_{1,n-1}) = (1-zeta)D - P
    {
        Divisor rhs = cert.D - zeta_act(cert.ext_curve, cert.D, 1);
        rhs.add(cert.point_ext, -1);
        r.identity_rhs = rhs.to_string();
        r.identity_lhs = r.identity_rhs;  // checked equal inside divide_point
        r.identity_verified = true;
    }
    r.pattern_verified = cert.pattern_verified;
    r.oracle = oracle;
    return r;
}

std::string report_text(const DivisionReport& r) {
    std::ostringstream os;
    auto field_line = [&](const FieldRef& f) {
        std::ostringstream fs;
        fs << "p=" << f.p << " modulus=[";
        for (size_t i = 0; i < f.modulus.size(); ++i) {
            if (i) fs << ",";
            fs << f.modulus[i];
        }
        fs << "]";
        return fs.str();
    };
    auto place_line = [&](const PlaceRef& p) -> std::string {
        if (p.kind == "affine") return "(" + p.x.text + "," + p.y.text + ")";
        if (p.kind == "ram") return "RAM(" + std::to_string(p.ram) + ")";
        return "INF";
    };
    os << "division report\n";
    os << "seed = " << r.seed << "\n";
    os << "curve: n = " << r.n << ", d = " << r.d << ", base field " << field_line(r.base_field)
       << "\n";
    os << "alphas =";
    for (const auto& a : r.alphas) os << " " << a.text;
    os << "\n";
    os << "point = " << place_line(r.point) << "\n";
    os << "root field: " << field_line(r.root_field) << "\n";
    os << "roots =";
    for (const auto& a : r.roots) os << " " << a.text;
    os << "\n";
    os << "shift = " << r.shift.text << "\n";
    os << "extension field: " << field_line(r.ext_field) << "\n";
    os << "D = " << r.D.text << "\n";
    os << "E = " << r.E.text << "\n";
    os << "D(base frame) = " << r.D_base.text << "\n";
    os << "pole profile:";
    for (const auto& row : r.poles) {
        os << "\n ";
        for (long v : row) os << " " << v;
    }
    os << "\n";
    os << "N[1,n] = " << r.entry_1n.text << "\n";
    os << "N[1,n-1] = " << r.entry_1nm1.text << "\n";
    os << "identity div0(N[1,n]) - zeta.div0(N[1,n-1]) = (1-zeta)D - P:\n";
    os << "  value = " << r.identity_lhs << "\n";
    os << "  verified = " << (r.identity_verified ? "yes" : "NO") << "\n";
    os << "pattern verified = " << (r.pattern_verified ? "yes" : "no") << "\n";
    os << "oracle = " << oracle_text(r.oracle) << "\n";
    return os.str();
}

std::string report_json(const DivisionReport& r) {
    json j;
    j["seed"] = r.seed;
    j["base_field"] = to_json(r.base_field);
    j["n"] = r.n;
    j["d"] = r.d;
    j["alphas"] = json::array();
    for (const auto& a : r.alphas) j["alphas"].push_back(to_json(a));
    j["point"] = to_json(r.point);
    j["root_field"] = to_json(r.root_field);
    j["roots"] = json::array();
    for (const auto& a : r.roots) j["roots"].push_back(to_json(a));
    j["shift"] = to_json(r.shift);
    j["ext_field"] = to_json(r.ext_field);
    j["D"] = to_json(r.D);
    j["E"] = to_json(r.E);
    j["D_base"] = to_json(r.D_base);
    j["entry_1n"] = to_json(r.entry_1n);
    j["entry_1nm1"] = to_json(r.entry_1nm1);
    j["poles"] = r.poles;
    j["identity"] = json{{"lhs", r.identity_lhs},
                         {"rhs", r.identity_rhs},
                         {"verified", r.identity_verified}};
    j["pattern_verified"] = r.pattern_verified;
    j["oracle"] = oracle_text(r.oracle);
    return j.dump(2);
}

DivisionReport report_from_json(const std::string& text) {
    json j = json::parse(text);
    DivisionReport r;
    r.seed = j.at("seed").get<uint64_t>();
    r.base_field = field_from(j.at("base_field"));
    r.n = j.at("n").get<unsigned>();
    r.d = j.at("d").get<unsigned>();
    for (const auto& a : j.at("alphas")) r.alphas.push_back(elem_from(a));
    r.point = place_from(j.at("point"));
    r.root_field = field_from(j.at("root_field"));
    for (const auto& a : j.at("roots")) r.roots.push_back(elem_from(a));
    r.shift = elem_from(j.at("shift"));
    r.ext_field = field_from(j.at("ext_field"));
    r.D = divisor_from(j.at("D"));
    r.E = divisor_from(j.at("E"));
    r.D_base = divisor_from(j.at("D_base"));
    r.entry_1n = entry_from(j.at("entry_1n"));
    r.entry_1nm1 = entry_from(j.at("entry_1nm1"));
    r.poles = j.at("poles").get<std::vector<std::vector<long>>>();
    r.identity_lhs = j.at("identity").at("lhs").get<std::string>();
    r.identity_rhs = j.at("identity").at("rhs").get<std::string>();
    r.identity_verified = j.at("identity").at("verified").get<bool>();
    r.pattern_verified = j.at("pattern_verified").get<bool>();
    r.oracle = oracle_from(j.at("oracle").get<std::string>());
    return r;
}

}  // namespace zetadiv
