#include "model_spec.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace dilate {

namespace {

std::string strip(const std::string& s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    return out;
}

// Splits "head{body}" and returns {head, body}; model errors on mismatch.
std::pair<std::string, std::string> split_braced(const std::string& s) {
    const auto open = s.find('{');
    if (open == std::string::npos || s.back() != '}')
        throw_model("malformed descriptor (expected head{...}): " + s);
    return {s.substr(0, open), s.substr(open + 1, s.size() - open - 2)};
}

std::map<std::string, std::string> parse_kv(const std::string& body) {
    std::map<std::string, std::string> kv;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw_model("expected key=value, got: " + item);
        kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return kv;
}

double to_real(const std::string& s) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw_model("trailing characters in number: " + s);
        return v;
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        throw_model("not a number: " + s);
    }
}

std::uint64_t to_uint(const std::string& s) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(s, &pos);
        if (pos != s.size()) throw_model("trailing characters in integer: " + s);
        return v;
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        throw_model("not an integer: " + s);
    }
}

}  // namespace

CoeffModel parse_model_text(const std::string& raw) {
    const std::string text = strip(raw);
    const auto [head, body] = split_braced(text);
    if (head == "finite") {
        // (k,re,im),(k,re,im),...
        std::map<std::uint64_t, std::complex<double>> amps;
        std::size_t i = 0;
        while (i < body.size()) {
            if (body[i] == ',') {
                ++i;
                continue;
            }
            if (body[i] != '(') throw_model("finite model expects (k,re,im) tuples");
            const auto close = body.find(')', i);
            if (close == std::string::npos) throw_model("unterminated tuple in finite model");
            const std::string tuple = body.substr(i + 1, close - i - 1);
            std::vector<std::string> parts;
            std::stringstream ss(tuple);
            std::string p;
            while (std::getline(ss, p, ',')) parts.push_back(p);
            if (parts.size() != 3) throw_model("finite tuple needs exactly (k,re,im)");
            const std::uint64_t k = to_uint(parts[0]);
            if (k == 0) throw_model("finite model frequency must be >= 1");
            amps[k] += std::complex<double>(to_real(parts[1]), to_real(parts[2]));
            i = close + 1;
        }
        return CoeffModel::finite(std::move(amps));
    }
    if (head == "powerlaw") {
        auto kv = parse_kv(body);
        if (!kv.count("s")) throw_model("powerlaw needs s=...");
        const double s = to_real(kv["s"]);
        const std::uint64_t cutoff = kv.count("cutoff") ? to_uint(kv["cutoff"]) : 0;
        return CoeffModel::power_law(s, cutoff);
    }
    if (head == "cor3") {
        auto kv = parse_kv(body);
        if (!kv.count("gamma") || !kv.count("form"))
            throw_model("cor3 needs gamma=... and form=pow|log");
        const std::string form = kv["form"];
        if (form != "pow" && form != "log") throw_model("cor3 form must be pow or log");
        return CoeffModel::cor3(to_real(kv["gamma"]), form == "log");
    }
    throw_model("unknown model kind: " + head);
}

SeriesCoefficients parse_coeffs_text(const std::string& raw) {
    const std::string text = strip(raw);
    if (text == "reciprocal") return SeriesCoefficients::reciprocal();
    const auto [head, body] = split_braced(text);
    if (head == "list") {
        std::vector<double> values;
        std::stringstream ss(body);
        std::string item;
        while (std::getline(ss, item, ',')) values.push_back(to_real(item));
        return SeriesCoefficients::list(std::move(values));
    }
    if (head == "rule") {
        auto kv = parse_kv(body);
        if (!kv.count("p")) throw_model("coeffs rule needs p=...");
        return SeriesCoefficients::power_rule(to_real(kv["p"]));
    }
    throw_model("unknown coeffs kind: " + head);
}

ParsedSpec parse_spec_text(const std::string& text) {
    ParsedSpec spec;
    std::string normalized = text;
    std::replace(normalized.begin(), normalized.end(), ';', '\n');
    std::stringstream ss(normalized);
    std::string line;
    while (std::getline(ss, line)) {
        const std::string s = strip(line);
        if (s.empty() || s[0] == '#') continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw_model("expected 'model = ...' or 'coeffs = ...'");
        const std::string key = s.substr(0, eq);
        const std::string value = s.substr(eq + 1);
        if (key == "model")
            spec.model = parse_model_text(value);
        else if (key == "coeffs")
            spec.coeffs = parse_coeffs_text(value);
        else
            throw_model("unknown spec key: " + key);
    }
    return spec;
}

ParsedSpec parse_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw_model("cannot open model spec file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_spec_text(buf.str());
}

}  // namespace dilate
