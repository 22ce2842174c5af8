#include "fracmhd/manifest.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace fracmhd {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

const std::set<std::string> kCommands = {"run-scheme", "check-inequalities", "verify-uniqueness",
                                         "norms"};

const std::set<std::string> kCommonKeys = {"command", "seed", "output_dir", "threads", "d", "n"};

const std::set<std::string> kSchemeKeys = {"regime", "alpha",  "nu",    "dt",
                                           "T",      "n_iter", "sigma", "delta",
                                           "initial_data", "initial_data_b", "save_state"};

std::set<std::string> allowed_keys(const std::string& command) {
    std::set<std::string> keys = kCommonKeys;
    if (command == "run-scheme") {
        keys.insert(kSchemeKeys.begin(), kSchemeKeys.end());
    } else if (command == "verify-uniqueness") {
        keys.insert(kSchemeKeys.begin(), kSchemeKeys.end());
        keys.insert("epsilon");
        keys.insert("perturb_mode");
    } else if (command == "check-inequalities") {
        keys.insert("count");
        keys.insert("alpha");
    } else if (command == "norms") {
        keys.insert("initial_data");
        keys.insert("s");
        keys.insert("p");
        keys.insert("q");
        keys.insert("r");
        keys.insert("flavor");
        keys.insert("T");
    }
    return keys;
}

bool parse_number(const std::string& v, double& out) {
    std::string t = trim(v);
    if (t == "inf" || t == "Inf" || t == "INF") {
        out = kInf;
        return true;
    }
    try {
        std::size_t used = 0;
        out = std::stod(t, &used);
        return used == t.size();
    } catch (...) {
        return false;
    }
}

}  // namespace

bool Manifest::has(const std::string& key) const {
    return std::any_of(entries.begin(), entries.end(),
                       [&](const auto& e) { return e.first == key; });
}

std::string Manifest::get(const std::string& key, const std::string& fallback) const {
    for (const auto& [k, v] : entries)
        if (k == key) return v;
    return fallback;
}

double Manifest::get_num(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    double out = fallback;
    parse_number(get(key), out);
    return out;
}

std::int64_t Manifest::get_int(const std::string& key, std::int64_t fallback) const {
    if (!has(key)) return fallback;
    try {
        return std::stoll(get(key));
    } catch (...) {
        return fallback;
    }
}

ParseResult parse_manifest(const std::string& text, const std::string& command) {
    ParseResult result;
    std::vector<ManifestError>& errors = result.errors;
    Manifest m;
    m.command = command;

    if (kCommands.count(command) == 0)
        errors.push_back({0, "unknown command '" + command + "'"});

    const auto allowed = allowed_keys(command);
    std::set<std::string> seen;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            errors.push_back({lineno, "expected 'key = value'"});
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            errors.push_back({lineno, "expected 'key = value'"});
            continue;
        }
        if (allowed.count(key) == 0) {
            errors.push_back({lineno, "unknown key '" + key + "' for command '" + command + "'"});
            continue;
        }
        if (!seen.insert(key).second) {
            errors.push_back({lineno, "duplicate key '" + key + "'"});
            continue;
        }
        m.entries.emplace_back(key, value);
    }

    if (m.has("command") && m.get("command") != command)
        errors.push_back({0, "manifest names command '" + m.get("command") +
                                 "' but was invoked as '" + command + "'"});
    m.output_dir = m.get("output_dir", ".");
    m.seed = std::uint64_t(m.get_int("seed", 0));

    // numeric type checks
    for (const auto& [k, v] : m.entries) {
        static const std::set<std::string> numeric = {"alpha", "nu",    "dt",    "T",     "sigma",
                                                      "delta", "s",     "p",     "q",     "r",
                                                      "epsilon"};
        static const std::set<std::string> integral = {"seed", "threads", "d", "n", "n_iter",
                                                       "count"};
        if (numeric.count(k)) {
            double out;
            if (!parse_number(v, out)) errors.push_back({0, "key '" + k + "' is not a number"});
        }
        if (integral.count(k)) {
            try {
                (void)std::stoll(v);
            } catch (...) {
                errors.push_back({0, "key '" + k + "' is not an integer"});
            }
        }
    }

    // range checks before any computation
    if (errors.empty() && (command == "run-scheme" || command == "verify-uniqueness")) {
        try {
            (void)scheme_config_from(m);
        } catch (const std::exception& e) {
            errors.push_back({0, e.what()});
        }
    }
    if (errors.empty() && command == "norms") {
        const double p = m.get_num("p", 2.0), q = m.get_num("q", 2.0);
        if (!(p >= 1.0) || !(q >= 1.0))
            errors.push_back({0, "exponents p, q must lie in [1, inf]"});
        if (m.has("r") && !(m.get_num("r", 1.0) >= 1.0))
            errors.push_back({0, "exponent r must lie in [1, inf]"});
        const std::string flavor = m.get("flavor", "inhomogeneous");
        if (flavor != "inhomogeneous" && flavor != "homogeneous")
            errors.push_back({0, "flavor must be 'inhomogeneous' or 'homogeneous'"});
    }
    if (errors.empty() && command == "check-inequalities") {
        if (m.get_int("count", 100) < 1) errors.push_back({0, "count must be >= 1"});
        if (!(m.get_num("alpha", 0.6) >= 0.0)) errors.push_back({0, "alpha must be >= 0"});
    }

    if (errors.empty()) result.manifest = std::move(m);
    return result;
}

std::string serialize_manifest(const Manifest& m) {
    std::ostringstream out;
    out << "command = " << m.command << "\n";
    for (const auto& [k, v] : m.entries)
        if (k != "command") out << k << " = " << v << "\n";
    return out.str();
}

bool operator==(const Manifest& a, const Manifest& b) {
    auto canon = [](const Manifest& m) {
        std::vector<std::pair<std::string, std::string>> e = m.entries;
        std::erase_if(e, [](const auto& kv) { return kv.first == "command"; });
        std::sort(e.begin(), e.end());
        return std::make_tuple(m.command, e);
    };
    return canon(a) == canon(b);
}

SchemeConfig scheme_config_from(const Manifest& m) {
    SchemeConfig cfg;
    cfg.d = int(m.get_int("d", 2));
    cfg.n = int(m.get_int("n", 64));
    cfg.alpha = m.get_num("alpha", 1.0);
    cfg.nu = m.get_num("nu", 1.0);
    cfg.T = m.get_num("T", 0.1);
    cfg.dt = m.get_num("dt", cfg.T / 256.0);
    cfg.n_iter = int(m.get_int("n_iter", 6));
    cfg.sigma = m.get_num("sigma", 0.0);
    cfg.delta = m.get_num("delta", 0.1);
    const std::string regime = m.get("regime", cfg.alpha >= 1.0 ? "ge1" : "lt1");
    if (regime == "ge1")
        cfg.regime = Regime::AlphaGE1;
    else if (regime == "lt1")
        cfg.regime = Regime::AlphaLT1;
    else
        throw std::invalid_argument("regime must be 'ge1' or 'lt1'");
    cfg.validate();
    return cfg;
}

}  // namespace fracmhd
