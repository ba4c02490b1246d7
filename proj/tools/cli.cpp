#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "zetadiv/gaps.hpp"
#include "zetadiv/report.hpp"
#include "zetadiv/selfcheck.hpp"

namespace zetadiv {

// ------------------------------------------------------------------
// config
// ------------------------------------------------------------------
namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<uint64_t> parse_list(const std::string& v, const std::string& key) {
    std::vector<uint64_t> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) fail("ConfigParse", "empty entry in list '" + key + "'");
        try {
            out.push_back(std::stoull(item));
        } catch (...) {
            fail("ConfigParse", "bad integer '" + item + "' in '" + key + "'");
        }
    }
    return out;
}

}  // namespace

CurveConfig parse_config_text(const std::string& text) {
    CurveConfig cfg;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) fail("ConfigParse", "expected 'key = value': " + line);
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key == "p") {
            cfg.p = (uint32_t)std::stoull(val);
        } else if (key == "ext") {
            for (uint64_t v : parse_list(val, key)) cfg.ext.push_back((uint32_t)v);
        } else if (key == "n") {
            cfg.n = (unsigned)std::stoull(val);
        } else if (key == "d") {
            cfg.d = (unsigned)std::stoull(val);
        } else if (key == "alphas") {
            cfg.alphas = parse_list(val, key);
        } else if (key == "point") {
            auto xy = parse_list(val, key);
            if (xy.size() != 2) fail("ConfigParse", "point needs exactly two coordinates");
            cfg.point = {xy[0], xy[1]};
        } else if (key == "roots") {
            cfg.roots = parse_list(val, key);
        } else {
            fail("ConfigParse", "unknown key '" + key + "'");
        }
    }
    if (!cfg.p) fail("ConfigParse", "missing key 'p'");
    if (!cfg.n || !cfg.d) fail("ConfigParse", "missing key 'n' or 'd'");
    if (cfg.alphas.size() != cfg.d) fail("ConfigParse", "expected d entries in 'alphas'");
    return cfg;
}

CurveConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("ConfigParse", "cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

namespace {

struct BuiltConfig {
    Field field;
    Curve curve;
    Place point;
};

BuiltConfig build_from_config(const CurveConfig& cfg, bool need_point) {
    Field f = cfg.ext.empty() ? Field::prime(cfg.p) : Field::extension(cfg.p, cfg.ext);
    std::vector<FieldElement> alphas;
    for (uint64_t a : cfg.alphas) alphas.push_back(f.from_index(a));
    Curve c = Curve::create(cfg.n, cfg.d, std::move(alphas), f);
    Place pl = Place::infinity();
    if (need_point) {
        if (!cfg.point) fail("ConfigParse", "missing key 'point'");
        pl = classify_point(c, f.from_index(cfg.point->first), f.from_index(cfg.point->second));
    }
    return {f, std::move(c), pl};
}

}  // namespace

// ------------------------------------------------------------------
// commands
// ------------------------------------------------------------------
int cmd_divide(const CurveConfig& cfg, bool verify, bool json, uint64_t seed, std::ostream& os) {
    BuiltConfig bc = build_from_config(cfg, true);
    RootChoice roots;
    if (!cfg.roots.empty()) {
        if (cfg.roots.size() != cfg.d) fail("ConfigParse", "expected d entries in 'roots'");
        for (uint64_t r : cfg.roots) roots.r.push_back(bc.field.from_index(r));
    } else {
        roots = compute_roots(bc.curve, bc.point).roots;
    }
    DivideOptions opt;
    opt.seed = seed;
    DivisionCertificate cert = divide_point(bc.curve, bc.point, roots, opt);
    OracleState oracle = OracleState::Skipped;
    if (verify) {
        Divisor delta = cert.D - zeta_act(cert.ext_curve, cert.D, 1);
        delta.add(cert.point_ext, -1);
        delta.add(Place::infinity(), 1);
        oracle = is_principal(cert.ext_curve, delta).principal ? OracleState::Pass
                                                               : OracleState::Fail;
    }
    DivisionReport rep = build_report(cert, seed, oracle);
    os << (json ? report_json(rep) : report_text(rep)) << (json ? "\n" : "");
    return oracle == OracleState::Fail ? 2 : 0;
}

int cmd_torsion(const CurveConfig& cfg, std::ostream& os) {
    BuiltConfig bc = build_from_config(cfg, false);
    auto classes = torsion_enumerate(cfg.n, cfg.d);
    os << "torsion classes of (1-zeta) on " << bc.curve.to_string() << "\n";
    for (const auto& t : classes)
        os << "  " << t.to_string() << "  " << torsion_divisor(bc.curve, t).to_string() << "\n";
    os << "count = " << classes.size() << "\n";
    return 0;
}

int cmd_gaps(unsigned n, unsigned d, const std::vector<unsigned>& label, bool json,
             std::ostream& os) {
    if (gcd_u64(n, d) != 1) fail("NotCoprime", "n and d must be coprime");
    GapProfile p = gap_set(n, d, label);
    long long w2 = weight_from_series(n, d, label);
    if (json) {
        nlohmann::json j;
        j["label"] = p.a;
        j["gaps"] = p.gaps;
        j["lambda"] = p.lambda;
        j["weight"] = p.weight;
        j["weight_from_series"] = w2;
        os << j.dump(2) << "\n";
        return 0;
    }
    os << "label = " << TorsionClass{p.a}.to_string() << "\n";
    os << "gaps = {";
    for (size_t i = 0; i < p.gaps.size(); ++i) os << (i ? "," : "") << p.gaps[i];
    os << "}\nlambda = (";
    for (size_t i = 0; i < p.lambda.size(); ++i) os << (i ? "," : "") << p.lambda[i];
    os << ")\nweight = " << p.weight << "\n";
    os << "weight (series route) = " << w2 << "\n";
    return 0;
}

int cmd_intersect(unsigned n, unsigned d, bool json, std::ostream& os) {
    if (gcd_u64(n, d) != 1) fail("NotCoprime", "n and d must be coprime");
    unsigned g = (n - 1) * (d - 1) / 2;
    auto classes = torsion_enumerate(n, d);
    long long total = 0;
    nlohmann::json rows = nlohmann::json::array();
    if (!json) os << "intersection multiplicities, n=" << n << " d=" << d << " genus=" << g << "\n";
    for (const auto& t : classes) {
        GapProfile p = gap_set(n, d, t.a);
        total += (long long)p.weight;
        if (json) {
            nlohmann::json row;
            row["label"] = p.a;
            row["gaps"] = p.gaps;
            row["lambda"] = p.lambda;
            row["i"] = p.weight;
            row["off_theta"] = (p.weight == 0);
            rows.push_back(row);
        } else {
            os << "  " << t.to_string() << "  gaps={";
            for (size_t i = 0; i < p.gaps.size(); ++i) os << (i ? "," : "") << p.gaps[i];
            os << "} lambda=(";
            for (size_t i = 0; i < p.lambda.size(); ++i) os << (i ? "," : "") << p.lambda[i];
            os << ") i=" << p.weight << (p.weight == 0 ? " [off theta]" : "") << "\n";
        }
    }
    long long pw = 1;
    for (unsigned i = 0; i + 1 < d; ++i) pw *= n;
    long long closed_num = (long long)g * (n + 1) * pw;
    bool ok = closed_num % 12 == 0 && total == closed_num / 12;
    if (json) {
        nlohmann::json j;
        j["rows"] = rows;
        j["total"] = total;
        j["closed_form"] = closed_num / 12;
        j["ok"] = ok;
        os << j.dump(2) << "\n";
    } else {
        os << "TOTAL = " << total << " (closed form: " << closed_num / 12 << ") "
           << (ok ? "OK" : "FAIL") << "\n";
    }
    return ok ? 0 : 2;
}

int cmd_selfcheck(unsigned n, unsigned d, uint64_t q, unsigned trials, uint64_t seed,
                  std::ostream& os) {
    SelfCheckParams prm;
    prm.n = n;
    prm.d = d;
    prm.q = q;
    prm.trials = trials;
    prm.seed = seed;
    return run_selfcheck(prm, os);
}

// ------------------------------------------------------------------
// argv entry point
// ------------------------------------------------------------------
int cli_main(int argc, char** argv) {
    CLI::App app{"exact division by 1-zeta on superelliptic curves"};
    app.require_subcommand(1);

    std::string config_path;
    bool verify = false, json = false;
    uint64_t seed = 1;

    auto* divide = app.add_subcommand("divide", "divide a point by 1-zeta, emit a certificate");
    divide->add_option("--config", config_path, "curve config file")->required();
    divide->add_flag("--verify", verify, "additionally run the linear-equivalence oracle");
    divide->add_flag("--json", json, "emit the report as JSON");
    divide->add_option("--seed", seed, "seed for probabilistic factoring steps");

    auto* torsion = app.add_subcommand("torsion", "enumerate the (1-zeta)-torsion classes");
    torsion->add_option("--config", config_path, "curve config file")->required();

    unsigned n = 0, d = 0;
    std::string label_str;
    auto* gaps = app.add_subcommand("gaps", "gap set and weight of one torsion class");
    gaps->add_option("-n", n, "cover degree")->required();
    gaps->add_option("-d", d, "branch count")->required();
    gaps->add_option("--label", label_str, "comma-separated d-1 residues")->required();
    gaps->add_flag("--json", json, "emit JSON");

    auto* intersect = app.add_subcommand("intersect", "intersection table over all classes");
    intersect->add_option("-n", n, "cover degree")->required();
    intersect->add_option("-d", d, "branch count")->required();
    intersect->add_flag("--json", json, "emit JSON");

    uint64_t q = 13;
    unsigned trials = 3;
    auto* selfcheck = app.add_subcommand("selfcheck", "run the randomized property suite");
    selfcheck->add_option("-n", n, "cover degree")->required();
    selfcheck->add_option("-d", d, "branch count")->required();
    selfcheck->add_option("-q", q, "field size (prime power, n | q-1)")->required();
    selfcheck->add_option("--trials", trials, "random instances per check");
    selfcheck->add_option("--seed", seed, "reproducibility seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 1 : 0;
    }

    try {
        if (divide->parsed()) return cmd_divide(load_config(config_path), verify, json, seed, std::cout);
        if (torsion->parsed()) return cmd_torsion(load_config(config_path), std::cout);
        if (gaps->parsed()) {
            std::vector<unsigned> label;
            for (uint64_t v : parse_list(label_str, "label")) label.push_back((unsigned)v);
            return cmd_gaps(n, d, label, json, std::cout);
        }
        if (intersect->parsed()) return cmd_intersect(n, d, json, std::cout);
        if (selfcheck->parsed()) return cmd_selfcheck(n, d, q, trials, seed, std::cout);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == "InternalInvariantViolation" ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace zetadiv
