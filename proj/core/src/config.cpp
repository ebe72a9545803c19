#include "zigzag/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "zigzag/csv.hpp"

namespace zigzag {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

[[noreturn]] void fail(int line, const std::string& what) {
    throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

double parse_number(const std::string& tok, int line) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size()) fail(line, "trailing characters in number '" + tok + "'");
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (...) {
        fail(line, "not a number: '" + tok + "'");
    }
}

std::vector<std::string> parse_list(const std::string& v, int line) {
    if (v.size() < 2 || v.front() != '[' || v.back() != ']')
        fail(line, "expected a [..] list, got '" + v + "'");
    std::vector<std::string> items;
    std::string body = v.substr(1, v.size() - 2);
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (!tok.empty()) items.push_back(tok);
    }
    return items;
}

std::string unquote(const std::string& v) {
    if (v.size() >= 2 && ((v.front() == '"' && v.back() == '"') ||
                          (v.front() == '\'' && v.back() == '\'')))
        return v.substr(1, v.size() - 2);
    return v;
}

Method method_from(const std::string& s, int line) {
    if (s == "predict") return Method::predict;
    if (s == "witten") return Method::witten;
    if (s == "grushin") return Method::grushin;
    if (s == "direct") return Method::direct;
    if (s == "pencil") return Method::pencil;
    if (s == "semigroup") return Method::semigroup;
    if (s == "simulate") return Method::simulate;
    fail(line, "unknown method '" + s + "'");
}

} // namespace

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    std::vector<double> pot_cos{0.0}, pot_sin, al_cos{0.0}, al_sin;
    bool saw_potential = false;

    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string s = trim(raw);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') fail(line, "unterminated section header");
            section = trim(s.substr(1, s.size() - 2));
            if (section != "potential" && section != "alpha" && section != "run")
                fail(line, "unknown section [" + section + "]");
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) fail(line, "expected 'key = value'");
        const std::string key = trim(s.substr(0, eq));
        const std::string val = trim(s.substr(eq + 1));
        if (val.empty()) fail(line, "empty value for '" + key + "'");

        if (section.empty()) {
            if (key == "name")
                cfg.name = unquote(val);
            else
                fail(line, "key '" + key + "' outside any section");
        } else if (section == "potential" || section == "alpha") {
            auto& cos_c = (section == "potential") ? pot_cos : al_cos;
            auto& sin_c = (section == "potential") ? pot_sin : al_sin;
            if (section == "potential") saw_potential = true;
            std::vector<double> vals;
            for (const auto& t : parse_list(val, line)) vals.push_back(parse_number(t, line));
            if (key == "cos")
                cos_c = vals.empty() ? std::vector<double>{0.0} : vals;
            else if (key == "sin")
                sin_c = vals;
            else
                fail(line, "unknown key '" + key + "' in [" + section + "]");
        } else { // run
            if (key == "h") {
                cfg.h_list.clear();
                for (const auto& t : parse_list(val, line))
                    cfg.h_list.push_back(parse_number(t, line));
            } else if (key == "n") {
                cfg.n = static_cast<int>(parse_number(val, line));
            } else if (key == "methods") {
                cfg.methods.clear();
                for (const auto& t : parse_list(val, line)) cfg.methods.insert(method_from(t, line));
            } else if (key == "replicas") {
                cfg.replicas = static_cast<int>(parse_number(val, line));
            } else if (key == "seed") {
                cfg.seed = static_cast<std::uint64_t>(parse_number(val, line));
            } else if (key == "out") {
                cfg.output_dir = unquote(val);
            } else if (key == "radius_scale") {
                cfg.radius_scale = parse_number(val, line);
            } else if (key == "t_max") {
                cfg.t_max = parse_number(val, line);
            } else {
                fail(line, "unknown key '" + key + "' in [run]");
            }
        }
    }

    if (!saw_potential) fail(line, "missing [potential] section");
    cfg.potential = TorusPotential(pot_cos, pot_sin);
    cfg.alpha = TorusPotential(al_cos, al_sin);

    if (cfg.h_list.empty()) fail(line, "[run] h list is empty");
    for (std::size_t i = 0; i + 1 < cfg.h_list.size(); ++i)
        if (cfg.h_list[i] <= cfg.h_list[i + 1]) fail(line, "h list must be strictly decreasing");
    for (double h : cfg.h_list)
        if (h <= 0.0) fail(line, "h values must be positive");
    if (cfg.n < 3 || cfg.n % 2 == 0)
        fail(line, "n must be odd and >= 3 (odd Fourier collocation grid)");
    if (cfg.methods.empty()) fail(line, "methods must be non-empty");
    if (cfg.methods.count(Method::simulate) && cfg.replicas < 100)
        fail(line, "replicas must be >= 100 for simulate");
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string format_config(const ExperimentConfig& c) {
    std::ostringstream out;
    auto series = [&](const TorusPotential& p) {
        out << "cos = [";
        for (std::size_t i = 0; i < p.cos_coeffs().size(); ++i)
            out << (i ? ", " : "") << csv::num(p.cos_coeffs()[i]);
        out << "]\nsin = [";
        for (std::size_t i = 0; i < p.sin_coeffs().size(); ++i)
            out << (i ? ", " : "") << csv::num(p.sin_coeffs()[i]);
        out << "]\n";
    };
    out << "name = " << c.name << "\n[potential]\n";
    series(c.potential);
    out << "[alpha]\n";
    series(c.alpha);
    out << "[run]\nh = [";
    for (std::size_t i = 0; i < c.h_list.size(); ++i)
        out << (i ? ", " : "") << csv::num(c.h_list[i]);
    out << "]\nn = " << c.n << "\nmethods = [";
    bool first = true;
    for (auto m : c.methods) {
        out << (first ? "" : ", ") << method_name(m);
        first = false;
    }
    out << "]\nreplicas = " << c.replicas << "\nseed = " << c.seed << "\nout = " << c.output_dir
        << "\nradius_scale = " << csv::num(c.radius_scale) << "\n";
    if (c.t_max > 0.0) out << "t_max = " << csv::num(c.t_max) << "\n";
    return out.str();
}

} // namespace zigzag
