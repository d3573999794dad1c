#include "teloinv/config_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "teloinv/errors.hpp"

namespace teloinv {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<double> parse_numbers(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        out.push_back(std::stod(tok));
    }
    return out;
}

}  // namespace

ParsedConfig parse_config(const std::map<std::string, std::string>& kv) {
    ParsedConfig out;
    double delta = 1.0;
    std::string law_kind = "uniform", n0_kind = "gamma";
    std::vector<double> n0_params = {9.0, 12.0};
    double degenerate_v0 = 0.5;

    for (const auto& [key, value] : kv) {
        if (key == "b") out.model.b = std::stod(value);
        else if (key == "N") out.model.N = std::stod(value);
        else if (key == "law.kind") law_kind = value;
        else if (key == "law.delta") delta = std::stod(value);
        else if (key == "law.v0") degenerate_v0 = std::stod(value);
        else if (key == "n0.kind") n0_kind = value;
        else if (key == "n0.params") n0_params = parse_numbers(value);
        else if (key == "precision_digits") out.precision_digits = std::stoul(value);
        else throw ConfigError("unknown config key: " + key);
    }

    if (law_kind == "uniform") out.model.law = ShorteningLaw::uniform(delta);
    else if (law_kind == "degenerate") out.model.law = ShorteningLaw::degenerate(degenerate_v0);
    else throw ConfigError("unsupported law.kind: " + law_kind);

    if (n0_kind == "gamma") {
        if (n0_params.size() != 2) throw ConfigError("gamma needs n0.params=ell,beta");
        out.model.n0 = InitialDistribution::gamma(n0_params[0], n0_params[1]);
    } else if (n0_kind == "weibull") {
        if (n0_params.size() != 2) throw ConfigError("weibull needs n0.params=k,scale");
        out.model.n0 = InitialDistribution::weibull(n0_params[0], n0_params[1]);
    } else if (n0_kind == "nakagami") {
        if (n0_params.size() != 2) throw ConfigError("nakagami needs n0.params=m,omega");
        out.model.n0 = InitialDistribution::nakagami(n0_params[0], n0_params[1]);
    } else if (n0_kind == "mixture") {
        // w1,ell1,beta1,w2,ell2,beta2,... — a weighted mixture of Gammas.
        if (n0_params.size() < 6 || n0_params.size() % 3 != 0)
            throw ConfigError("mixture needs n0.params=w,ell,beta triples");
        std::vector<double> weights;
        std::vector<InitialDistribution> comps;
        for (std::size_t i = 0; i < n0_params.size(); i += 3) {
            weights.push_back(n0_params[i]);
            comps.push_back(InitialDistribution::gamma(n0_params[i + 1], n0_params[i + 2]));
        }
        out.model.n0 = InitialDistribution::mixture(weights, comps);
    } else {
        throw ConfigError("unsupported n0.kind: " + n0_kind);
    }
    if (out.precision_digits < 16) throw ConfigError("precision_digits must be >= 16");
    return out;
}

ParsedConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("malformed config line: " + line);
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return parse_config(kv);
}

}  // namespace teloinv
