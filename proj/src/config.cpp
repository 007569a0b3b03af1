#include "vortexdyn/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "vortexdyn/errors.hpp"

namespace vdyn {

namespace {

std::string trim(const std::string& s) {
    auto begin = s.begin();
    while (begin != s.end() && std::isspace(static_cast<unsigned char>(*begin))) ++begin;
    auto end = s.end();
    while (end != begin && std::isspace(static_cast<unsigned char>(*(end - 1)))) --end;
    return std::string(begin, end);
}

struct Entry {
    std::string section;  // repeated sections carry a #index suffix
    std::string key;
    std::string value;
};

std::vector<Entry> tokenize(const std::string& text) {
    std::vector<Entry> entries;
    std::istringstream in(text);
    std::string line, section;
    int patch_count = 0, hole_count = 0;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw config_error("config: malformed section: " + line);
            section = trim(line.substr(1, line.size() - 2));
            if (section == "patch") section = "patch#" + std::to_string(patch_count++);
            if (section == "domain.hole") section = "domain.hole#" + std::to_string(hole_count++);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config: expected key = value, got: " + line);
        entries.push_back({section, trim(line.substr(0, eq)), trim(line.substr(eq + 1))});
    }
    return entries;
}

double to_double(const Entry& e) {
    try {
        std::size_t used = 0;
        const double v = std::stod(e.value, &used);
        if (trim(e.value.substr(used)).empty()) return v;
    } catch (const std::exception&) {
    }
    throw config_error("config: bad number for " + e.key + ": " + e.value);
}

std::vector<double> to_list(const Entry& e) {
    std::vector<double> out;
    std::istringstream in(e.value);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(to_double({e.section, e.key, item}));
    }
    return out;
}

Vec2 to_vec2(const Entry& e) {
    const auto list = to_list(e);
    if (list.size() != 2)
        throw config_error("config: " + e.key + " needs two components, got " + e.value);
    return {list[0], list[1]};
}

class Reader {
  public:
    explicit Reader(std::vector<Entry> entries) : entries_(std::move(entries)) {}

    const Entry* find(const std::string& section, const std::string& key) const {
        for (const Entry& e : entries_)
            if (e.section == section && e.key == key) return &e;
        return nullptr;
    }

    double number(const std::string& section, const std::string& key, double fallback) const {
        const Entry* e = find(section, key);
        return e ? to_double(*e) : fallback;
    }

    std::string text(const std::string& section, const std::string& key,
                     const std::string& fallback) const {
        const Entry* e = find(section, key);
        return e ? e->value : fallback;
    }

    std::vector<double> list(const std::string& section, const std::string& key) const {
        const Entry* e = find(section, key);
        return e ? to_list(*e) : std::vector<double>{};
    }

    bool has_section(const std::string& section) const {
        return std::any_of(entries_.begin(), entries_.end(),
                           [&](const Entry& e) { return e.section == section; });
    }

    const std::vector<Entry>& entries() const { return entries_; }

  private:
    std::vector<Entry> entries_;
};

CurveSpec read_curve(const Reader& reader, const std::string& section, int fallback_n) {
    CurveSpec c;
    c.cos_x = reader.list(section, "cos_x");
    c.sin_x = reader.list(section, "sin_x");
    c.cos_y = reader.list(section, "cos_y");
    c.sin_y = reader.list(section, "sin_y");
    c.n_quad = int(reader.number(section, "n_quad", fallback_n));
    if (c.cos_x.empty() && c.sin_x.empty() && c.cos_y.empty() && c.sin_y.empty())
        throw config_error("config: curve section " + section + " has no coefficients");
    return c;
}

}  // namespace

Domain DomainSpec::build() const {
    if (backend == "analytic-disk") return Domain::unit_disk(n_quad);
    if (backend == "analytic-annulus") return Domain::annulus(r0, r1, n_quad);
    if (backend == "boundary-integral") {
        BoundaryCurve out(outer.cos_x, outer.sin_x, outer.cos_y, outer.sin_y, outer.n_quad);
        std::vector<BoundaryCurve> hole_curves;
        for (const CurveSpec& h : holes)
            hole_curves.emplace_back(h.cos_x, h.sin_x, h.cos_y, h.sin_y, h.n_quad);
        return Domain::boundary_integral(std::move(out), std::move(hole_curves));
    }
    throw config_error("config: unknown domain backend '" + backend + "'");
}

std::vector<PatchSpec> Scenario::patch_specs() const {
    std::vector<PatchSpec> specs;
    for (const PatchConfig& pc : patches) {
        PatchSpec s;
        s.center = pc.center;
        s.strength = pc.strength;
        s.eps = eps;
        s.h = grid_h();
        s.beta = pc.beta;
        s.lambda = pc.lambda;
        if (pc.profile == "uniform")
            s.profile = PatchProfile::UniformDisc;
        else if (pc.profile == "singular")
            s.profile = PatchProfile::SingularPerturbed;
        else
            throw config_error("config: unknown patch profile '" + pc.profile + "'");
        specs.push_back(s);
    }
    return specs;
}

std::vector<Vec2> Scenario::initial_vortex_positions() const {
    std::vector<Vec2> out;
    for (const PatchConfig& pc : patches) out.push_back(pc.center + pc.y_offset * eps);
    return out;
}

std::vector<double> Scenario::strengths() const {
    std::vector<double> out;
    for (const PatchConfig& pc : patches) out.push_back(pc.strength);
    return out;
}

std::uint64_t fnv1a_hash(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

Scenario parse_scenario(const std::string& text) {
    const Reader reader(tokenize(text));
    Scenario sc;
    sc.schema = int(reader.number("", "schema", 1));
    if (sc.schema != 1)
        throw config_error("config: unsupported schema version " +
                           std::to_string(sc.schema));
    sc.name = reader.text("", "name", "unnamed");

    sc.domain_spec.backend = reader.text("domain", "backend", "analytic-disk");
    sc.domain_spec.n_quad = int(reader.number("domain", "n_quad", 256));
    sc.domain_spec.r0 = reader.number("domain", "r0", 0.5);
    sc.domain_spec.r1 = reader.number("domain", "r1", 1.0);
    if (sc.domain_spec.backend == "boundary-integral") {
        if (!reader.has_section("domain.outer"))
            throw config_error("config: boundary-integral backend needs [domain.outer]");
        sc.domain_spec.outer = read_curve(reader, "domain.outer", sc.domain_spec.n_quad);
        for (int k = 0;; ++k) {
            const std::string section = "domain.hole#" + std::to_string(k);
            if (!reader.has_section(section)) break;
            sc.domain_spec.holes.push_back(read_curve(reader, section, sc.domain_spec.n_quad));
        }
    }

    for (int k = 0;; ++k) {
        const std::string section = "patch#" + std::to_string(k);
        if (!reader.has_section(section)) break;
        PatchConfig pc;
        const Entry* center = reader.find(section, "center");
        if (!center) throw config_error("config: patch " + std::to_string(k) + " needs center");
        pc.center = to_vec2(*center);
        pc.strength = reader.number(section, "strength", 1.0);
        pc.profile = reader.text(section, "profile", "uniform");
        pc.beta = reader.number(section, "beta", 0.5);
        pc.lambda = reader.number(section, "lambda", -1.0);
        if (const Entry* off = reader.find(section, "y_offset")) pc.y_offset = to_vec2(*off);
        sc.patches.push_back(pc);
    }

    sc.circulations = reader.list("circulations", "gamma");

    sc.eps = reader.number("params", "eps", sc.eps);
    sc.delta = reader.number("params", "delta", sc.delta);
    sc.p = reader.number("params", "p", sc.p);
    sc.h_over_eps = reader.number("params", "h_over_eps", sc.h_over_eps);
    sc.blob_over_h = reader.number("params", "blob_over_h", sc.blob_over_h);
    sc.dt = reader.number("params", "dt", sc.dt);
    sc.t_end = reader.number("params", "t_end", sc.t_end);
    sc.frames_every = int(reader.number("params", "frames_every", sc.frames_every));
    sc.t_min = reader.number("params", "t_min", sc.t_min);
    sc.rate_window_lo = reader.number("params", "rate_window_lo", sc.rate_window_lo);
    sc.rate_window_hi = reader.number("params", "rate_window_hi", sc.rate_window_hi);

    if (sc.dt <= 0.0 || sc.t_end <= 0.0 || sc.frames_every < 1)
        throw config_error("config: dt, t_end and frames_every must be positive");
    if (sc.eps <= 0.0 || sc.delta <= 0.0 || sc.h_over_eps <= 0.0 || sc.blob_over_h <= 0.0)
        throw config_error("config: eps, delta, h_over_eps, blob_over_h must be positive");

    sc.config_hash = fnv1a_hash(text);
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("config: cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str());
}

}  // namespace vdyn
