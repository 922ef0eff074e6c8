#include "switchnet/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace switchnet {

// ---------------------------------------------------------------------------
// Built-in switching rules
// ---------------------------------------------------------------------------

void SwitchingRuleSpec::validate(Index state_dim, Index mode_count) const {
    if (inside_mode < 0 || inside_mode >= mode_count || outside_mode < 0 ||
        outside_mode >= mode_count)
        throw ConfigError("switching rule: mode indices must lie in 1.." +
                          std::to_string(mode_count));
    if (kind == Kind::Ball) {
        if (!(radius > 0.0)) throw ConfigError("switching rule: radius must be positive");
    } else {
        if (normal.size() != state_dim)
            throw ConfigError("switching rule: normal must have dimension " +
                              std::to_string(state_dim));
        if (normal.cwiseAbs().maxCoeff() == 0.0)
            throw ConfigError("switching rule: normal must be nonzero");
    }
}

Index SwitchingRuleSpec::evaluate(const Vector& x) const {
    return decision_value(x) <= 0.0 ? inside_mode : outside_mode;
}

double SwitchingRuleSpec::decision_value(const Vector& x) const {
    if (kind == Kind::Ball) return x.squaredNorm() - radius * radius;
    return normal.dot(x) - offset;
}

// ---------------------------------------------------------------------------
// System assembly
// ---------------------------------------------------------------------------

SwitchedNetworkSystem SystemSpec::build() const {
    if (nodes < 1) throw ConfigError("system: 'nodes' must be >= 1");
    if (node_dim < 1) throw ConfigError("system: 'node_dim' must be >= 1");
    if (mode_count < 1) throw ConfigError("system: 'modes' must be >= 1");
    if (!has_dynamics())
        throw ConfigError("system: per-mode adjacency and coefficient matrices are required");

    SwitchedNetworkSystem sys;
    sys.nodes = nodes;
    sys.node_dim = node_dim;
    sys.basis = PolynomialBasis(node_dim, basis_degree, basis_kind);
    sys.coupling.alpha = alpha;
    sys.coupling.beta = beta;
    sys.coupling.channel =
        channel.size() == 0 ? Matrix(Matrix::Identity(node_dim, node_dim)) : channel;

    if (static_cast<Index>(adjacencies.size()) != mode_count)
        throw ConfigError("system: expected " + std::to_string(mode_count) +
                          " adjacency matrices, got " + std::to_string(adjacencies.size()));
    if (static_cast<Index>(coeffs.size()) != mode_count && coeffs.size() != 1)
        throw ConfigError("system: expected 1 or " + std::to_string(mode_count) +
                          " coefficient matrices, got " + std::to_string(coeffs.size()));

    for (Index j = 0; j < mode_count; ++j) {
        ModeModel mode;
        try {
            mode.adjacency = AdjacencyMatrix(adjacencies[static_cast<size_t>(j)]);
        } catch (const std::invalid_argument& e) {
            throw ConfigError("system: adjacency_" + std::to_string(j + 1) + ": " + e.what());
        }
        const Matrix& c = coeffs.size() == 1 ? coeffs[0] : coeffs[static_cast<size_t>(j)];
        if (c.rows() != node_dim || c.cols() != sys.basis.length())
            throw ConfigError("system: coefficient matrix of mode " + std::to_string(j + 1) +
                              " must be " + std::to_string(node_dim) + "x" +
                              std::to_string(sys.basis.length()));
        mode.coeffs = c;
        sys.modes.push_back(std::move(mode));
    }

    rule.validate(nodes * node_dim, mode_count);
    const SwitchingRuleSpec r = rule;
    sys.switching_rule = [r](const Vector& x) { return r.evaluate(x); };
    sys.validate();
    return sys;
}

GroundTruth SystemSpec::ground_truth() const {
    const SwitchedNetworkSystem sys = build();
    GroundTruth truth;
    for (const ModeModel& mode : sys.modes) {
        truth.adjacencies.push_back(mode.adjacency);
        truth.coeffs.push_back(mode.coeffs);
    }
    return truth;
}

void SimulationSpec::validate(Index state_dim) const {
    if (box_lo.size() != state_dim || box_hi.size() != state_dim)
        throw ConfigError("simulation: box corners must have dimension " +
                          std::to_string(state_dim));
    for (Index i = 0; i < state_dim; ++i)
        if (!(box_lo(i) <= box_hi(i)))
            throw ConfigError("simulation: box is empty in coordinate " + std::to_string(i + 1));
    if (trajectory_count < 1) throw ConfigError("simulation: 'trajectories' must be >= 1");
    if (!(dt > 0.0)) throw ConfigError("simulation: 'dt' must be positive");
    if (!(t_end > 0.0)) throw ConfigError("simulation: 't_end' must be positive");
    if (stride < 1) throw ConfigError("simulation: 'stride' must be >= 1");
    if (noise_std < 0.0) throw ConfigError("simulation: 'noise_std' must be >= 0");
}

// ---------------------------------------------------------------------------
// Key = value parsing
// ---------------------------------------------------------------------------

namespace {

struct Entry {
    std::string value;
    int line = 0;
    bool used = false;
};

using Section = std::map<std::string, Entry>;
using Sections = std::map<std::string, Section>;

const std::vector<std::string> kKnownSections = {"system", "simulation", "identification",
                                                 "surface", "output"};

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    size_t b = s.find_last_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail_at(const std::string& origin, int line, const std::string& message) {
    throw ConfigError(origin + (line > 0 ? ":" + std::to_string(line) : "") + ": " + message);
}

Sections tokenize(const std::string& content, const std::string& origin) {
    Sections sections;
    std::istringstream in(content);
    std::string raw;
    std::string current;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string text = trim(raw);
        if (text.empty()) continue;
        if (text.front() == '[') {
            if (text.back() != ']') fail_at(origin, line, "unterminated section header");
            current = trim(text.substr(1, text.size() - 2));
            if (std::find(kKnownSections.begin(), kKnownSections.end(), current) ==
                kKnownSections.end())
                fail_at(origin, line, "unknown section [" + current + "]");
            sections.try_emplace(current);
            continue;
        }
        const size_t eq = text.find('=');
        if (eq == std::string::npos) fail_at(origin, line, "expected 'key = value'");
        if (current.empty()) fail_at(origin, line, "key appears before any [section] header");
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (key.empty()) fail_at(origin, line, "empty key");
        auto [it, inserted] = sections[current].try_emplace(key, Entry{value, line, false});
        if (!inserted)
            fail_at(origin, line,
                    "duplicate key '" + key + "' in section [" + current + "] (first on line " +
                        std::to_string(it->second.line) + ")");
    }
    return sections;
}

/// Typed access to one section with unknown-key detection.
class SectionReader {
public:
    SectionReader(Sections& sections, std::string name, std::string origin)
        : name_(std::move(name)), origin_(std::move(origin)) {
        auto it = sections.find(name_);
        if (it != sections.end()) section_ = &it->second;
    }

    [[nodiscard]] bool present() const { return section_ != nullptr; }

    [[nodiscard]] std::optional<std::string> raw(const std::string& key) {
        if (!section_) return std::nullopt;
        auto it = section_->find(key);
        if (it == section_->end()) return std::nullopt;
        it->second.used = true;
        line_ = it->second.line;
        return it->second.value;
    }

    template <typename T, typename Parser>
    T get_or(const std::string& key, T fallback, Parser parse) {
        const auto value = raw(key);
        if (!value) return fallback;
        return parse(*value, key);
    }

    double number(const std::string& key, double fallback) {
        return get_or(key, fallback, [this](const std::string& v, const std::string& k) {
            return parse_double(v, k);
        });
    }

    long long integer(const std::string& key, long long fallback) {
        return get_or(key, fallback, [this](const std::string& v, const std::string& k) {
            size_t pos = 0;
            long long out = 0;
            try {
                out = std::stoll(v, &pos);
            } catch (const std::exception&) {
                fail(k, "expected an integer, got '" + v + "'");
            }
            if (pos != v.size()) fail(k, "expected an integer, got '" + v + "'");
            return out;
        });
    }

    std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback) {
        return get_or(key, fallback, [this](const std::string& v, const std::string& k) {
            size_t pos = 0;
            std::uint64_t out = 0;
            try {
                out = std::stoull(v, &pos);
            } catch (const std::exception&) {
                fail(k, "expected a non-negative integer, got '" + v + "'");
            }
            if (pos != v.size() || v.front() == '-')
                fail(k, "expected a non-negative integer, got '" + v + "'");
            return out;
        });
    }

    bool boolean(const std::string& key, bool fallback) {
        return get_or(key, fallback, [this](const std::string& v, const std::string& k) {
            std::string low = v;
            std::transform(low.begin(), low.end(), low.begin(),
                           [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
            if (low == "true" || low == "yes" || low == "1") return true;
            if (low == "false" || low == "no" || low == "0") return false;
            fail(k, "expected true or false, got '" + v + "'");
            return false;
        });
    }

    std::string text(const std::string& key, std::string fallback) {
        return get_or(key, std::move(fallback),
                      [](const std::string& v, const std::string&) { return v; });
    }

    Vector vector(const std::string& key, Vector fallback) {
        return get_or(key, std::move(fallback), [this](const std::string& v, const std::string& k) {
            return parse_vector(v, k);
        });
    }

    std::optional<Matrix> matrix(const std::string& key) {
        const auto value = raw(key);
        if (!value) return std::nullopt;
        std::vector<Vector> rows;
        std::stringstream stream(*value);
        std::string row_text;
        while (std::getline(stream, row_text, ';')) {
            const Vector row = parse_vector(row_text, key);
            if (!rows.empty() && row.size() != rows.front().size())
                fail(key, "matrix rows have inconsistent lengths");
            rows.push_back(row);
        }
        if (rows.empty()) fail(key, "expected a matrix");
        Matrix m(static_cast<Index>(rows.size()), rows.front().size());
        for (size_t r = 0; r < rows.size(); ++r) m.row(static_cast<Index>(r)) = rows[r].transpose();
        return m;
    }

    [[noreturn]] void fail(const std::string& key, const std::string& message) const {
        fail_at(origin_, line_, "key '" + key + "' in section [" + name_ + "]: " + message);
    }

    void finish() const {
        if (!section_) return;
        for (const auto& [key, entry] : *section_)
            if (!entry.used)
                fail_at(origin_, entry.line,
                        "unknown key '" + key + "' in section [" + name_ + "]");
    }

private:
    double parse_double(const std::string& v, const std::string& key) {
        size_t pos = 0;
        double out = 0.0;
        try {
            out = std::stod(v, &pos);
        } catch (const std::exception&) {
            fail(key, "expected a number, got '" + v + "'");
        }
        if (pos != v.size() || !std::isfinite(out)) fail(key, "expected a number, got '" + v + "'");
        return out;
    }

    Vector parse_vector(const std::string& v, const std::string& key) {
        std::istringstream stream(v);
        std::vector<double> values;
        std::string token;
        while (stream >> token) values.push_back(parse_double(token, key));
        if (values.empty()) fail(key, "expected at least one number");
        Vector out(static_cast<Index>(values.size()));
        for (size_t i = 0; i < values.size(); ++i) out(static_cast<Index>(i)) = values[i];
        return out;
    }

    Section* section_ = nullptr;
    std::string name_;
    std::string origin_;
    int line_ = 0;
};

BasisKind parse_basis_kind(SectionReader& reader, const std::string& key,
                           const std::string& value) {
    if (value == "univariate-powers" || value == "univariate") return BasisKind::UnivariatePowers;
    if (value == "total-degree") return BasisKind::TotalDegree;
    reader.fail(key, "expected 'univariate-powers' or 'total-degree', got '" + value + "'");
}

RunConfig interpret(Sections sections, const std::string& origin) {
    RunConfig cfg;

    SectionReader system(sections, "system", origin);
    cfg.system.nodes = system.integer("nodes", 0);
    cfg.system.node_dim = system.integer("node_dim", 1);
    cfg.system.mode_count = system.integer("modes", 2);
    cfg.system.alpha = system.number("alpha", 1.0);
    cfg.system.beta = system.number("beta", -1.0);
    if (auto ch = system.matrix("channel")) cfg.system.channel = *ch;
    cfg.system.basis_degree = system.integer("basis_degree", 2);
    cfg.system.basis_kind = parse_basis_kind(system, "basis", system.text("basis", "univariate-powers"));
    for (Index j = 0; j < cfg.system.mode_count; ++j) {
        auto adj = system.matrix("adjacency_" + std::to_string(j + 1));
        if (adj) cfg.system.adjacencies.push_back(*adj);
    }
    if (auto shared = system.matrix("coeffs")) {
        cfg.system.coeffs.push_back(*shared);
    } else {
        for (Index j = 0; j < cfg.system.mode_count; ++j) {
            auto c = system.matrix("coeffs_" + std::to_string(j + 1));
            if (c) cfg.system.coeffs.push_back(*c);
        }
    }
    const std::string rule = system.text("rule", "ball");
    if (rule == "ball")
        cfg.system.rule.kind = SwitchingRuleSpec::Kind::Ball;
    else if (rule == "halfspace")
        cfg.system.rule.kind = SwitchingRuleSpec::Kind::HalfSpace;
    else
        system.fail("rule", "expected 'ball' or 'halfspace', got '" + rule + "'");
    cfg.system.rule.radius = system.number("radius", 1.0);
    cfg.system.rule.normal = system.vector("normal", Vector());
    cfg.system.rule.offset = system.number("offset", 0.0);
    cfg.system.rule.inside_mode = system.integer("inside_mode", 1) - 1;
    cfg.system.rule.outside_mode = system.integer("outside_mode", 2) - 1;
    system.finish();

    SectionReader simulation(sections, "simulation", origin);
    cfg.simulation.box_lo = simulation.vector("box_lo", Vector());
    cfg.simulation.box_hi = simulation.vector("box_hi", Vector());
    cfg.simulation.trajectory_count = simulation.integer("trajectories", 10);
    cfg.simulation.dt = simulation.number("dt", 0.01);
    cfg.simulation.t_end = simulation.number("t_end", 1.0);
    cfg.simulation.stride = static_cast<int>(simulation.integer("stride", 1));
    cfg.simulation.seed = simulation.unsigned_integer("seed", 0);
    cfg.simulation.noise_std = simulation.number("noise_std", 0.0);
    const std::string velocity = simulation.text("velocity", "exact");
    if (velocity == "exact")
        cfg.simulation.velocity = VelocityMode::Exact;
    else if (velocity == "finite-difference")
        cfg.simulation.velocity = VelocityMode::FiniteDifference;
    else
        simulation.fail("velocity", "expected 'exact' or 'finite-difference', got '" + velocity + "'");
    simulation.finish();

    SectionReader identification(sections, "identification", origin);
    cfg.identification.mode_count = identification.integer("modes", cfg.system.mode_count);
    cfg.identification.eta = identification.number("eta", 10.0);
    cfg.identification.basis_degree =
        identification.integer("degree", cfg.system.basis_degree);
    cfg.identification.basis_kind = parse_basis_kind(
        identification, "basis", identification.text("basis", to_string(cfg.system.basis_kind)));
    cfg.identification.max_outer_iterations =
        static_cast<int>(identification.integer("max_iterations", 50));
    cfg.identification.objective_tol = identification.number("tolerance", 1e-8);
    cfg.identification.rounding_threshold = identification.number("rounding_threshold", 0.5);
    cfg.identification.seed = identification.unsigned_integer("seed", 0);
    cfg.identification.share_node_dynamics = identification.boolean("share_dynamics", false);
    cfg.identification.allow_self_loops = identification.boolean("self_loops", true);
    cfg.identification.threads = static_cast<int>(identification.integer("threads", 0));
    identification.finish();

    SectionReader surface(sections, "surface", origin);
    cfg.surface.degree = surface.integer("degree", 2);
    cfg.surface.gamma = surface.number("gamma", 10.0);
    cfg.surface.grid_lo = surface.vector("grid_lo", cfg.simulation.box_lo);
    cfg.surface.grid_hi = surface.vector("grid_hi", cfg.simulation.box_hi);
    cfg.surface.grid_resolution = surface.integer("resolution", 41);
    surface.finish();

    SectionReader output(sections, "output", origin);
    cfg.output_dir = output.text("directory", "out");
    output.finish();

    return cfg;
}

/// Render a JSON config into the sectioned key = value form so both formats
/// share one interpretation path.
std::string json_scalar_to_token(const nlohmann::json& v, const std::string& key,
                                 const std::string& origin) {
    char buf[64];
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
    if (v.is_number_float()) {
        std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
        return buf;
    }
    throw ConfigError(origin + ": key '" + key + "': unsupported JSON value type");
}

Sections sections_from_json(const std::string& content, const std::string& origin) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(content);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(origin + ": invalid JSON: " + e.what());
    }
    if (!root.is_object()) throw ConfigError(origin + ": top level must be a JSON object");

    Sections sections;
    for (const auto& [section_name, body] : root.items()) {
        if (std::find(kKnownSections.begin(), kKnownSections.end(), section_name) ==
            kKnownSections.end())
            throw ConfigError(origin + ": unknown section '" + section_name + "'");
        if (!body.is_object())
            throw ConfigError(origin + ": section '" + section_name + "' must be an object");
        Section& sec = sections[section_name];
        for (const auto& [key, value] : body.items()) {
            std::string token;
            if (value.is_array() && !value.empty() && value.front().is_array()) {
                // matrix: array of rows
                std::vector<std::string> rows;
                for (const auto& row : value) {
                    std::vector<std::string> cells;
                    for (const auto& cell : row)
                        cells.push_back(json_scalar_to_token(cell, key, origin));
                    std::string joined;
                    for (size_t i = 0; i < cells.size(); ++i)
                        joined += (i ? " " : "") + cells[i];
                    rows.push_back(joined);
                }
                for (size_t i = 0; i < rows.size(); ++i) token += (i ? "; " : "") + rows[i];
            } else if (value.is_array()) {
                std::vector<std::string> cells;
                for (const auto& cell : value)
                    cells.push_back(json_scalar_to_token(cell, key, origin));
                for (size_t i = 0; i < cells.size(); ++i) token += (i ? " " : "") + cells[i];
            } else {
                token = json_scalar_to_token(value, key, origin);
            }
            sec[key] = Entry{token, 0, false};
        }
    }
    return sections;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_vector(const Vector& v) {
    std::string out;
    for (Index i = 0; i < v.size(); ++i) out += (i ? " " : "") + format_double(v(i));
    return out;
}

std::string format_matrix(const Matrix& m) {
    std::string out;
    for (Index r = 0; r < m.rows(); ++r) {
        if (r) out += "; ";
        for (Index c = 0; c < m.cols(); ++c) out += (c ? " " : "") + format_double(m(r, c));
    }
    return out;
}

}  // namespace

RunConfig parse_run_config_text(const std::string& content, const std::string& origin) {
    const size_t first = content.find_first_not_of(" \t\r\n");
    const bool looks_like_json = first != std::string::npos && content[first] == '{';
    const bool json_extension =
        origin.size() >= 5 && origin.compare(origin.size() - 5, 5, ".json") == 0;
    if (looks_like_json || json_extension)
        return interpret(sections_from_json(content, origin), origin);
    return interpret(tokenize(content, origin), origin);
}

RunConfig parse_run_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_run_config_text(buffer.str(), path);
}

std::string serialize_run_config(const RunConfig& cfg) {
    std::ostringstream out;
    out << "[system]\n";
    out << "nodes = " << cfg.system.nodes << "\n";
    out << "node_dim = " << cfg.system.node_dim << "\n";
    out << "modes = " << cfg.system.mode_count << "\n";
    out << "alpha = " << format_double(cfg.system.alpha) << "\n";
    out << "beta = " << format_double(cfg.system.beta) << "\n";
    if (cfg.system.channel.size() > 0)
        out << "channel = " << format_matrix(cfg.system.channel) << "\n";
    out << "basis_degree = " << cfg.system.basis_degree << "\n";
    out << "basis = " << to_string(cfg.system.basis_kind) << "\n";
    for (size_t j = 0; j < cfg.system.adjacencies.size(); ++j)
        out << "adjacency_" << j + 1 << " = " << format_matrix(cfg.system.adjacencies[j]) << "\n";
    if (cfg.system.coeffs.size() == 1) {
        out << "coeffs = " << format_matrix(cfg.system.coeffs[0]) << "\n";
    } else {
        for (size_t j = 0; j < cfg.system.coeffs.size(); ++j)
            out << "coeffs_" << j + 1 << " = " << format_matrix(cfg.system.coeffs[j]) << "\n";
    }
    out << "rule = " << (cfg.system.rule.kind == SwitchingRuleSpec::Kind::Ball ? "ball" : "halfspace")
        << "\n";
    out << "radius = " << format_double(cfg.system.rule.radius) << "\n";
    if (cfg.system.rule.normal.size() > 0)
        out << "normal = " << format_vector(cfg.system.rule.normal) << "\n";
    out << "offset = " << format_double(cfg.system.rule.offset) << "\n";
    out << "inside_mode = " << cfg.system.rule.inside_mode + 1 << "\n";
    out << "outside_mode = " << cfg.system.rule.outside_mode + 1 << "\n";

    out << "\n[simulation]\n";
    if (cfg.simulation.box_lo.size() > 0)
        out << "box_lo = " << format_vector(cfg.simulation.box_lo) << "\n";
    if (cfg.simulation.box_hi.size() > 0)
        out << "box_hi = " << format_vector(cfg.simulation.box_hi) << "\n";
    out << "trajectories = " << cfg.simulation.trajectory_count << "\n";
    out << "dt = " << format_double(cfg.simulation.dt) << "\n";
    out << "t_end = " << format_double(cfg.simulation.t_end) << "\n";
    out << "stride = " << cfg.simulation.stride << "\n";
    out << "seed = " << cfg.simulation.seed << "\n";
    out << "noise_std = " << format_double(cfg.simulation.noise_std) << "\n";
    out << "velocity = "
        << (cfg.simulation.velocity == VelocityMode::Exact ? "exact" : "finite-difference") << "\n";

    out << "\n[identification]\n";
    out << "modes = " << cfg.identification.mode_count << "\n";
    out << "eta = " << format_double(cfg.identification.eta) << "\n";
    out << "degree = " << cfg.identification.basis_degree << "\n";
    out << "basis = " << to_string(cfg.identification.basis_kind) << "\n";
    out << "max_iterations = " << cfg.identification.max_outer_iterations << "\n";
    out << "tolerance = " << format_double(cfg.identification.objective_tol) << "\n";
    out << "rounding_threshold = " << format_double(cfg.identification.rounding_threshold) << "\n";
    out << "seed = " << cfg.identification.seed << "\n";
    out << "share_dynamics = " << (cfg.identification.share_node_dynamics ? "true" : "false")
        << "\n";
    out << "self_loops = " << (cfg.identification.allow_self_loops ? "true" : "false") << "\n";
    out << "threads = " << cfg.identification.threads << "\n";

    out << "\n[surface]\n";
    out << "degree = " << cfg.surface.degree << "\n";
    out << "gamma = " << format_double(cfg.surface.gamma) << "\n";
    if (cfg.surface.grid_lo.size() > 0)
        out << "grid_lo = " << format_vector(cfg.surface.grid_lo) << "\n";
    if (cfg.surface.grid_hi.size() > 0)
        out << "grid_hi = " << format_vector(cfg.surface.grid_hi) << "\n";
    out << "resolution = " << cfg.surface.grid_resolution << "\n";

    out << "\n[output]\n";
    out << "directory = " << cfg.output_dir << "\n";
    return out.str();
}

}  // namespace switchnet
