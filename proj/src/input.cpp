#include "hopf3/input.hpp"

#include <fstream>
#include <sstream>

namespace hopf3 {

namespace {

// Minimal TOML subset: [table] and [table.sub] headers, key = value lines,
// bare or quoted keys, string / integer / float / boolean values, comments.
std::map<std::string, std::string> parse_toml_flat(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line, prefix;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto posh = line.find('#');
        if (posh != std::string::npos) {
            // keep # inside quotes
            bool inq = false;
            size_t i = 0;
            for (; i < line.size(); ++i) {
                if (line[i] == '"') inq = !inq;
                if (line[i] == '#' && !inq) break;
            }
            line = line.substr(0, i);
        }
        auto trim = [](std::string s) {
            size_t a = s.find_first_not_of(" \t\r");
            size_t b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw InputError("line " + std::to_string(lineno) + ": malformed table header");
            prefix = trim(line.substr(1, line.size() - 2));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InputError("line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.size() >= 2 && key.front() == '"' && key.back() == '"')
            key = key.substr(1, key.size() - 2);
        if (val.size() >= 2 && val.front() == '"' && val.back() == '"')
            val = val.substr(1, val.size() - 2);
        if (key.empty())
            throw InputError("line " + std::to_string(lineno) + ": empty key");
        kv[(prefix.empty() ? "" : prefix + ".") + key] = val;
    }
    return kv;
}

Mono parse_exponents(const std::string& key, int lineno_hint) {
    std::istringstream is(key);
    Mono m;
    int v, n = 0;
    while (is >> v) {
        if (n >= 3 || v < 0)
            throw InputError("bad exponent key '" + key + "'" +
                             (lineno_hint ? " (entry " + std::to_string(lineno_hint) + ")" : ""));
        m.e[n++] = v;
    }
    if (n != 3) throw InputError("exponent key '" + key + "' must have three entries");
    return m;
}

SSeries series_from_map(const std::map<std::string, std::string>& coeffs) {
    SSeries s(3);
    int n = 0;
    for (const auto& [k, v] : coeffs) {
        ++n;
        Mono m = parse_exponents(k, n);
        Rat c;
        try {
            c = parse_rat(v);
        } catch (const std::exception&) {
            throw InputError("bad rational '" + v + "' at exponent key '" + k + "'");
        }
        s.add_coeff(m, Scalar(c));
    }
    return s;
}

void apply_option(ClassifyOptions& o, const std::string& key, const std::string& val) {
    auto as_int = [&](const std::string& v) {
        try {
            return std::stoi(v);
        } catch (...) {
            throw InputError("bad integer option " + key + " = " + val);
        }
    };
    if (key == "order") o.ell = as_int(val);
    else if (key == "work") o.work = as_int(val);
    else if (key == "poincare_order") o.poincare_order = as_int(val);
    else if (key == "budget") o.budget = as_int(val);
    else if (key == "fix_order") o.fix_order = as_int(val);
    else if (key == "seed") o.seed = (unsigned)as_int(val);
    else if (key == "epsilon") o.epsilon = parse_rat(val);
    else if (key == "delta") o.delta = parse_rat(val);
    else if (key == "open_cones") o.open_cones = (val == "true" || val == "1");
    else throw InputError("unknown option '" + key + "'");
}

InputSpec from_flat(const std::map<std::string, std::string>& kv) {
    InputSpec spec;
    std::map<std::string, std::string> cx, cy, cz;
    for (const auto& [k, v] : kv) {
        if (k.rfind("field.x.", 0) == 0) cx[k.substr(8)] = v;
        else if (k.rfind("field.y.", 0) == 0) cy[k.substr(8)] = v;
        else if (k.rfind("field.z.", 0) == 0) cz[k.substr(8)] = v;
        else if (k.rfind("options.", 0) == 0) apply_option(spec.options, k.substr(8), v);
        else throw InputError("unknown table entry '" + k + "'");
    }
    if (cx.empty() && cy.empty() && cz.empty())
        throw InputError("no [field.x]/[field.y]/[field.z] coefficients found");
    spec.field.x = series_from_map(cx);
    spec.field.y = series_from_map(cy);
    spec.field.z = series_from_map(cz);
    if (!spec.field.singular_at_origin())
        throw InputError("the field must vanish at the origin (no constant terms)");
    Json jx = Json::object(), jy = Json::object(), jz = Json::object();
    for (const auto& [k, v] : cx) jx[k] = v;
    for (const auto& [k, v] : cy) jy[k] = v;
    for (const auto& [k, v] : cz) jz[k] = v;
    spec.echo["field"] = Json::object();
    spec.echo["field"]["x"] = jx;
    spec.echo["field"]["y"] = jy;
    spec.echo["field"]["z"] = jz;
    return spec;
}

} // namespace

InputSpec load_input(const std::string& path, const std::string& format) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open input file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    std::string fmt = format;
    if (fmt.empty()) {
        if (path.size() > 5 && path.substr(path.size() - 5) == ".json") fmt = "json";
        else if (path.size() > 5 && path.substr(path.size() - 5) == ".toml") fmt = "toml";
        else {
            // sniff: JSON starts with '{'
            size_t a = text.find_first_not_of(" \t\r\n");
            fmt = (a != std::string::npos && text[a] == '{') ? "json" : "toml";
        }
    }
    std::map<std::string, std::string> kv;
    if (fmt == "toml") {
        kv = parse_toml_flat(text);
    } else if (fmt == "json") {
        Json j;
        try {
            j = Json::parse(text);
        } catch (const std::exception& e) {
            throw InputError(std::string("JSON parse error: ") + e.what());
        }
        std::function<void(const Json&, const std::string&)> flatten =
            [&](const Json& node, const std::string& prefix) {
                for (auto it = node.begin(); it != node.end(); ++it) {
                    std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
                    if (it->is_object()) flatten(*it, key);
                    else if (it->is_string()) kv[key] = it->get<std::string>();
                    else kv[key] = it->dump();
                }
            };
        if (!j.is_object()) throw InputError("top-level JSON must be an object");
        flatten(j, "");
    } else {
        throw InputError("unknown format '" + fmt + "'");
    }
    return from_flat(kv);
}

} // namespace hopf3
