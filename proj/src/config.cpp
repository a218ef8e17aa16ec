#include "nlsob/config.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace nlsob {

namespace fs = std::filesystem;

ConfigError::ConfigError(int line, const std::string& field, const std::string& msg)
    : std::runtime_error("line " + std::to_string(line) + ", field '" + field + "': " + msg),
      line_(line),
      field_(field) {}

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_num(const std::string& v, int line, const std::string& key) {
    try {
        std::size_t used = 0;
        const double x = std::stod(v, &used);
        if (trim(v.substr(used)).empty()) return x;
    } catch (const std::exception&) {
    }
    throw ConfigError(line, key, "not a number: '" + v + "'");
}

const std::vector<std::string> kGlobalKeys = {
    "suite", "mode", "t", "resolution", "box", "out", "tolerance", "workers", "d", "p",
    "omega", "bbm_s", "bbm_box", "inverse_q", "inverse_c", "seed", "lemma_count"};
const std::vector<std::string> kKernelKeys = {"name", "type", "s", "s1", "s2", "coef", "radius",
                                              "a", "file", "e0", "e_inf", "support"};
const std::vector<std::string> kFunctionKeys = {"name", "type", "center", "width", "height",
                                                "lo", "hi", "slope", "file", "smooth"};

void check_keys(const Section& s, const std::vector<std::string>& allowed) {
    for (const auto& [k, v] : s.kv)
        if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
            throw ConfigError(v.second, k, "unknown key in [" + s.kind + "]");
}

}  // namespace

std::string Section::str(const std::string& key, const std::string& def) const {
    auto it = kv.find(key);
    return it == kv.end() ? def : it->second.first;
}

double Section::num(const std::string& key, double def) const {
    auto it = kv.find(key);
    return it == kv.end() ? def : parse_num(it->second.first, it->second.second, key);
}

double Section::num(const std::string& key) const {
    auto it = kv.find(key);
    if (it == kv.end()) throw ConfigError(line, key, "missing in [" + kind + "]");
    return parse_num(it->second.first, it->second.second, key);
}

std::vector<double> Section::list(const std::string& key, const std::vector<double>& def) const {
    auto it = kv.find(key);
    if (it == kv.end()) return def;
    std::vector<double> out;
    std::string v = it->second.first;
    std::replace(v.begin(), v.end(), ',', ' ');
    std::istringstream ss(v);
    std::string tok;
    while (ss >> tok) out.push_back(parse_num(tok, it->second.second, key));
    if (out.empty()) throw ConfigError(it->second.second, key, "empty list");
    return out;
}

int Section::line_of(const std::string& key) const {
    auto it = kv.find(key);
    return it == kv.end() ? line : it->second.second;
}

ExperimentConfig parse_config(std::istream& is, const std::string& base_dir) {
    ExperimentConfig cfg;
    cfg.base_dir = base_dir;
    cfg.global.kind = "global";
    Section* cur = &cfg.global;
    std::string raw;
    int line = 0;
    while (std::getline(is, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') throw ConfigError(line, s, "malformed section header");
            const std::string kind = trim(s.substr(1, s.size() - 2));
            if (kind == "kernel") {
                cfg.kernels.push_back({kind, line, {}});
                cur = &cfg.kernels.back();
            } else if (kind == "function") {
                cfg.functions.push_back({kind, line, {}});
                cur = &cfg.functions.back();
            } else if (kind == "run") {
                cur = &cfg.global;
            } else {
                throw ConfigError(line, kind, "unknown section");
            }
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ConfigError(line, s, "expected key = value");
        const std::string key = trim(s.substr(0, eq));
        const std::string val = trim(s.substr(eq + 1));
        if (key.empty()) throw ConfigError(line, key, "empty key");
        if (cur->kv.count(key)) throw ConfigError(line, key, "duplicate key");
        cur->kv[key] = {val, line};
    }
    return cfg;
}

void finalize_config(ExperimentConfig& cfg) {
    const Section& g = cfg.global;
    check_keys(g, kGlobalKeys);
    for (const auto& k : cfg.kernels) check_keys(k, kKernelKeys);
    for (const auto& f : cfg.functions) check_keys(f, kFunctionKeys);

    cfg.suite = g.str("suite", cfg.suite);
    const std::vector<std::string> suites = {"gns",  "fractional-gns", "poincare", "friedrichs",
                                             "bbm",  "lemmas",         "inverse",  "all"};
    if (std::find(suites.begin(), suites.end(), cfg.suite) == suites.end())
        throw ConfigError(g.line_of("suite"), "suite", "unknown suite '" + cfg.suite + "'");
    const std::string mode = g.str("mode", to_string(cfg.mode));
    if (mode == "a" || mode == "assumption-a")
        cfg.mode = VerifyMode::assumption_a;
    else if (mode == "mr2" || mode == "main-result2")
        cfg.mode = VerifyMode::main_result2;
    else
        throw ConfigError(g.line_of("mode"), "mode", "expected a or mr2");
    cfg.ts = g.list("t", cfg.ts);
    for (double t : cfg.ts)
        if (!(t >= 2.0)) throw ConfigError(g.line_of("t"), "t", "t >= 2 required");
    const double res = g.num("resolution", cfg.resolution);
    const int ires = static_cast<int>(res);
    if (ires != res || ires < 64 || ires > 16384 || (ires & (ires - 1)))
        throw ConfigError(g.line_of("resolution"), "resolution",
                          "must be a power of two between 2^6 and 2^14");
    cfg.resolution = ires;
    auto box = g.list("box", {cfg.box_lo, cfg.box_hi});
    if (box.size() != 2 || !(box[1] > box[0]))
        throw ConfigError(g.line_of("box"), "box", "expected lo hi with lo < hi");
    cfg.box_lo = box[0];
    cfg.box_hi = box[1];
    cfg.out = g.str("out", cfg.out);
    cfg.tolerance = g.num("tolerance", cfg.tolerance);
    if (cfg.tolerance < 0) throw ConfigError(g.line_of("tolerance"), "tolerance", "negative");
    cfg.workers = static_cast<int>(g.num("workers", cfg.workers));
    if (cfg.workers < 1) throw ConfigError(g.line_of("workers"), "workers", "must be >= 1");
    cfg.d = static_cast<int>(g.num("d", cfg.d));
    if (cfg.d != 1 && cfg.d != 2) throw ConfigError(g.line_of("d"), "d", "d must be 1 or 2");
    cfg.p = g.num("p", cfg.p);
    if (!(cfg.p >= 1.0)) throw ConfigError(g.line_of("p"), "p", "p >= 1 required");
    auto om = g.list("omega", {cfg.omega_lo, cfg.omega_hi});
    if (om.size() != 2 || !(om[1] > om[0]))
        throw ConfigError(g.line_of("omega"), "omega", "expected lo hi with lo < hi");
    cfg.omega_lo = om[0];
    cfg.omega_hi = om[1];
    cfg.bbm_s = g.list("bbm_s", cfg.bbm_s);
    for (double s : cfg.bbm_s)
        if (!(s > 0 && s < 1)) throw ConfigError(g.line_of("bbm_s"), "bbm_s", "s in (0,1)");
    auto bb = g.list("bbm_box", {cfg.bbm_lo, cfg.bbm_hi});
    if (bb.size() != 2 || !(bb[1] > bb[0]))
        throw ConfigError(g.line_of("bbm_box"), "bbm_box", "expected lo hi with lo < hi");
    cfg.bbm_lo = bb[0];
    cfg.bbm_hi = bb[1];
    cfg.inverse_q = g.num("inverse_q", cfg.inverse_q);
    cfg.inverse_c = g.num("inverse_c", cfg.inverse_c);
    cfg.seed = static_cast<unsigned long long>(g.num("seed", static_cast<double>(cfg.seed)));
    cfg.lemma_count = static_cast<int>(g.num("lemma_count", cfg.lemma_count));
    std::vector<std::string> names;
    for (auto* list : {&cfg.kernels, &cfg.functions})
        for (std::size_t i = 0; i < list->size(); ++i) {
            const Section& s = (*list)[i];
            if (!s.has("type")) throw ConfigError(s.line, "type", "missing in [" + s.kind + "]");
            const std::string name = s.str("name", s.kind + std::to_string(i + 1));
            if (std::find(names.begin(), names.end(), name) != names.end())
                throw ConfigError(s.line_of("name"), "name", "duplicate name '" + name + "'");
            names.push_back(name);
            if (s.has("file")) {
                fs::path p = s.str("file");
                if (p.is_relative()) p = fs::path(cfg.base_dir) / p;
                if (!fs::exists(p))
                    throw ConfigError(s.line_of("file"), "file", "no such file: " + p.string());
            }
        }
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(0, "config", "cannot open " + path);
    auto dir = fs::path(path).parent_path();
    ExperimentConfig cfg = parse_config(in, dir.empty() ? "." : dir.string());
    finalize_config(cfg);
    return cfg;
}

namespace {

std::string resolve(const std::string& base, const std::string& file) {
    fs::path p = file;
    if (p.is_relative()) p = fs::path(base) / p;
    return p.string();
}

void read_two_columns(const std::string& path, std::vector<double>& x, std::vector<double>& y,
                      int line) {
    std::ifstream in(path);
    if (!in) throw ConfigError(line, "file", "cannot open " + path);
    std::string raw;
    while (std::getline(in, raw)) {
        raw = trim(raw);
        if (raw.empty() || raw[0] == '#' || std::isalpha(static_cast<unsigned char>(raw[0])))
            continue;
        std::replace(raw.begin(), raw.end(), ',', ' ');
        std::istringstream ss(raw);
        double a, b;
        if (!(ss >> a >> b)) throw ConfigError(line, "file", "bad row in " + path);
        x.push_back(a);
        y.push_back(b);
    }
}

}  // namespace

NamedKernel make_kernel(const Section& sec, int d, double p, const std::string& base_dir) {
    NamedKernel nk;
    nk.name = sec.str("name", "kernel");
    const std::string type = sec.str("type");
    auto frac = [&](const std::string& key) {
        const double s = sec.num(key);
        if (!(s > 0 && s < 1)) throw ConfigError(sec.line_of(key), key, "s in (0,1)");
        return s;
    };
    if (type == "fractional") {
        nk.s = frac("s");
        nk.kernel = fractional_kernel(d, p, nk.s, sec.num("coef", 1.0));
    } else if (type == "max-fractional" || type == "min-fractional") {
        const double s1 = frac("s1"), s2 = frac("s2");
        if (!(s1 < s2)) throw ConfigError(sec.line_of("s2"), "s2", "need s1 < s2");
        nk.kernel = type == "max-fractional" ? max_fractional_kernel(d, p, s1, s2)
                                             : min_fractional_kernel(d, p, s1, s2);
    } else if (type == "ball") {
        nk.kernel = ball_kernel(d, p, sec.num("radius", 1.0));
    } else if (type == "log") {
        const double a = sec.num("a");
        if (!(a > 0)) throw ConfigError(sec.line_of("a"), "a", "a > 0 required");
        nk.kernel = log_family_kernel(d, p, a);
    } else if (type == "table") {
        std::vector<double> r, v;
        read_two_columns(resolve(base_dir, sec.str("file")), r, v, sec.line_of("file"));
        if (r.size() < 2) throw ConfigError(sec.line_of("file"), "file", "need two rows");
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (!(r[i] > 0) || !(v[i] > 0) || (i && !(r[i] > r[i - 1])))
                throw ConfigError(sec.line_of("file"), "file",
                                  "radii must increase strictly and values be positive");
        }
        nk.kernel = tabulated_kernel(d, p, r, v, sec.num("e0", end_slope(r, v, false)),
                                     sec.num("e_inf", end_slope(r, v, true)),
                                     sec.num("support", kInf));
    } else {
        throw ConfigError(sec.line_of("type"), "type", "unknown kernel type '" + type + "'");
    }
    return nk;
}

NamedFunction make_function(const Section& sec, const ExperimentConfig& cfg, double lo, double hi,
                            int resolution) {
    NamedFunction nf;
    nf.name = sec.str("name", "function");
    const std::string type = sec.str("type");
    const double c = sec.num("center", 0.0);
    const double w = sec.num("width", 1.0);
    const double a = sec.num("height", 1.0);
    Smoothness sm = Smoothness::piecewise_linear;
    std::function<double(double)> f;
    if (type == "hat") {
        f = [=](double r) { return a * std::max(0.0, 1.0 - r / w); };
    } else if (type == "bump") {
        sm = Smoothness::smooth;
        f = [=](double r) {
            const double z = r / w;
            return z < 1.0 ? a * std::exp(1.0 - 1.0 / (1.0 - z * z)) : 0.0;
        };
    } else if (type == "two-bump") {
        f = nullptr;
    } else if (type == "indicator" || type == "linear" || type == "sine") {
        f = nullptr;
    } else if (type == "csv") {
        std::ifstream in(resolve(cfg.base_dir, sec.str("file")));
        nf.u = read_grid_csv(in);
        return nf;
    } else {
        throw ConfigError(sec.line_of("type"), "type", "unknown function type '" + type + "'");
    }
    if (sec.str("smooth") == "true") sm = Smoothness::smooth;
    if (cfg.d == 2) {
        if (!f) throw ConfigError(sec.line_of("type"), "type", type + " is 1-d only");
        nf.u = sample_2d([&](double x, double y) { return f(std::hypot(x - c, y)); }, lo, hi, lo,
                         hi, resolution, sm);
        return nf;
    }
    if (type == "hat" || type == "bump") {
        nf.u = sample_1d([&](double x) { return f(std::abs(x - c)); }, lo, hi, resolution, sm);
    } else if (type == "two-bump") {
        const double sep = sec.num("width", 1.0);
        nf.u = sample_1d(
            [&](double x) {
                return a * (std::max(0.0, 1.0 - std::abs(x + 1.5 * sep) / sep) +
                            0.5 * std::max(0.0, 1.0 - 2.0 * std::abs(x - 1.5 * sep) / sep));
            },
            lo, hi, resolution, sm);
    } else {
        const double l = sec.num("lo", 0.0), h = sec.num("hi", 1.0);
        if (!(h > l)) throw ConfigError(sec.line_of("hi"), "hi", "need lo < hi");
        const double slope = sec.num("slope", 1.0);
        if (type == "indicator") {
            nf.u = sample_1d([&](double x) { return x >= l && x < h ? a : 0.0; }, lo, hi,
                             resolution, sm);
        } else if (type == "linear") {
            nf.u = sample_1d([&](double x) { return x >= l && x < h ? slope * x : 0.0; }, lo, hi,
                             resolution, sm);
        } else {
            nf.u = sample_1d(
                [&](double x) {
                    return x >= l && x <= h ? a * std::sin(kPi * (x - l) / (h - l)) : 0.0;
                },
                lo, hi, resolution, Smoothness::smooth);
        }
    }
    return nf;
}

std::vector<NamedKernel> build_kernels(const ExperimentConfig& cfg) {
    std::vector<NamedKernel> out;
    for (std::size_t i = 0; i < cfg.kernels.size(); ++i) {
        out.push_back(make_kernel(cfg.kernels[i], cfg.d, cfg.p, cfg.base_dir));
        out.back().name = cfg.kernels[i].str("name", "kernel" + std::to_string(i + 1));
    }
    return out;
}

std::vector<NamedFunction> build_functions(const ExperimentConfig& cfg) {
    std::vector<NamedFunction> out;
    for (std::size_t i = 0; i < cfg.functions.size(); ++i) {
        out.push_back(
            make_function(cfg.functions[i], cfg, cfg.box_lo, cfg.box_hi, cfg.resolution));
        out.back().name = cfg.functions[i].str("name", "function" + std::to_string(i + 1));
    }
    return out;
}

Section parse_inline(const std::string& kind, const std::string& spec) {
    Section s;
    s.kind = kind;
    std::string v = spec;
    std::replace(v.begin(), v.end(), ',', ' ');
    std::istringstream ss(v);
    std::string tok;
    while (ss >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw ConfigError(0, tok, "expected key=value");
        s.kv[tok.substr(0, eq)] = {tok.substr(eq + 1), 0};
    }
    if (!s.has("type")) throw ConfigError(0, "type", "missing");
    return s;
}

}  // namespace nlsob
