#include "polaron/config.hpp"

#include <cmath>
#include <set>

#include "polaron/constants.hpp"
#include "polaron/toml.hpp"

namespace polaron::config {

namespace {

using toml::Value;

double recoil_energy(double impurity_mass, double lattice_spacing)
{
    const double k = constants::pi / lattice_spacing;
    return constants::hbar * constants::hbar * k * k / (2.0 * impurity_mass);
}

[[noreturn]] void bad(const std::string& path, const std::string& what)
{
    throw ConfigError("config: " + path + ": " + what);
}

const Value& expect(const toml::Table& t, const std::string& section,
                    const std::string& key, Value::Kind kind)
{
    const Value* v = t.find(section, key);
    const std::string path = section.empty() ? key : section + "." + key;
    if (!v) bad(path, "missing required key");
    if (v->kind != kind) {
        static const char* names[] = {"boolean", "number", "string", "array"};
        bad(path, std::string("expected ") + names[static_cast<int>(kind)] +
                      ", got " + names[static_cast<int>(v->kind)]);
    }
    return *v;
}

double get_number(const toml::Table& t, const std::string& section, const std::string& key,
                  double fallback)
{
    const Value* v = t.find(section, key);
    if (!v) return fallback;
    if (v->kind != Value::Kind::number) bad(section + "." + key, "expected number");
    return v->number;
}

std::vector<double> get_array(const toml::Table& t, const std::string& section,
                              const std::string& key)
{
    const Value& v = expect(t, section, key, Value::Kind::array);
    std::vector<double> out;
    for (const Value& item : v.array) {
        if (item.kind != Value::Kind::number)
            bad(section + "." + key, "expected an array of numbers");
        out.push_back(item.number);
    }
    return out;
}

void check_known_keys(const toml::Table& t)
{
    static const std::map<std::string, std::set<std::string>> schema = {
        {"", {"mode"}},
        {"system",
         {"impurity_mass_amu", "boson_mass_amu", "kappa_over_g", "density_per_m",
          "density_per_m2", "density_per_m3", "dimension", "lattice_spacing_nm",
          "lattice_depth_Er", "hopping_Er", "temperature_over_Ep",
          "tilt_hbar_omegaB_over_J", "healing_length_nm"}},
        {"solver", {"dt", "t_final", "n_sites", "grid_tol", "kernel_tol"}},
        {"sweep", {"temperatures_over_ep", "tilts", "t_d"}},
        {"output", {"directory", "emit_plots"}},
    };
    for (const auto& [section, keys] : t.sections) {
        auto known = schema.find(section);
        if (known == schema.end()) bad(section, "unknown section");
        for (const auto& [key, value] : keys)
            if (!known->second.count(key))
                bad(section.empty() ? key : section + "." + key, "unknown key");
    }
}

}  // namespace

void RunConfig::validate() const
{
    static const std::set<std::string> modes = {"gme",  "coupling", "selftrap",
                                               "fig3", "fig4",     "fig5",
                                               "selftrap-appc"};
    if (!modes.count(mode)) bad("mode", "unknown mode '" + mode + "'");
    try {
        system.validate();
    } catch (const std::invalid_argument& e) {
        bad("system", e.what());
    }
    if (solver.dt <= 0.0) bad("solver.dt", "must be > 0");
    if (solver.t_final <= 0.0) bad("solver.t_final", "must be > 0");
    if (solver.n_sites < 3 || solver.n_sites % 2 == 0)
        bad("solver.n_sites", "must be odd and >= 3");
    if (solver.grid_tol <= 0.0) bad("solver.grid_tol", "must be > 0");
    if (solver.kernel_tol <= 0.0) bad("solver.kernel_tol", "must be > 0");
    if (sweep.t_d <= 0.0) bad("sweep.t_d", "must be > 0");
    if (sweep.t_d > solver.t_final + 1e-12)
        bad("sweep.t_d", "must not exceed solver.t_final");
    for (double temp : sweep.temperatures_over_ep)
        if (temp < 0.0) bad("sweep.temperatures_over_ep", "entries must be >= 0");
}

model::SystemParams reference_system()
{
    model::SystemParams p;
    p.impurity_mass = 41.0 * constants::atomic_mass_unit;
    p.boson_mass = 87.0 * constants::atomic_mass_unit;
    p.kappa_over_g = 2.58;
    p.density = 1.0 / 200e-9;
    p.dimension = 1;
    p.lattice_spacing = 395e-9;
    p.lattice_depth_er = 12.0;
    p.healing_length = 652e-9;
    // J/hbar = 1.2 kHz.
    p.hopping_er = constants::hbar * 1.2e3 / recoil_energy(p.impurity_mass, p.lattice_spacing);
    return p;
}

RunConfig preset(const std::string& name)
{
    RunConfig cfg;
    cfg.system = reference_system();
    cfg.mode = name;
    if (name == "fig3") {
        cfg.sweep.temperatures_over_ep = {0.0, 5.0, 15.0};
    } else if (name == "fig4") {
        for (int i = 0; i < 12; ++i)
            cfg.sweep.temperatures_over_ep.push_back(15.0 * i / 11.0);
    } else if (name == "fig5") {
        cfg.sweep.temperatures_over_ep = {0.0, 5.0, 15.0};
        for (int i = 0; i < 15; ++i)
            cfg.sweep.tilts.push_back(0.1 * std::pow(200.0, i / 14.0));
    } else if (name == "selftrap-appc" || name == "selftrap") {
        // variational scan only; lattice solver parameters unused
    } else if (name == "gme" || name == "coupling") {
        cfg.system.temperature_over_ep = 5.0;
    } else {
        bad("mode", "unknown preset '" + name + "'");
    }
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path)
{
    toml::Table t;
    try {
        t = toml::parse_file(path);
    } catch (const std::runtime_error& e) {
        throw ConfigError(e.what());
    }
    check_known_keys(t);

    RunConfig cfg;
    if (const Value* v = t.find("", "mode")) {
        if (v->kind != Value::Kind::string) bad("mode", "expected string");
        cfg.mode = v->text;
    }

    model::SystemParams& sys = cfg.system;
    const model::SystemParams ref = reference_system();
    // Convert units only for user-supplied values; falling back through a
    // unit round-trip would perturb the reference defaults by one ulp and
    // break preset/config bit-identity.
    sys.impurity_mass =
        t.has("system", "impurity_mass_amu")
            ? get_number(t, "system", "impurity_mass_amu", 0.0) * constants::atomic_mass_unit
            : ref.impurity_mass;
    sys.boson_mass =
        t.has("system", "boson_mass_amu")
            ? get_number(t, "system", "boson_mass_amu", 0.0) * constants::atomic_mass_unit
            : ref.boson_mass;
    sys.kappa_over_g = get_number(t, "system", "kappa_over_g", ref.kappa_over_g);
    sys.dimension = static_cast<int>(get_number(t, "system", "dimension", ref.dimension));
    // Density key carries the dimensionality of its unit.
    static const std::map<std::string, int> density_keys = {
        {"density_per_m", 1}, {"density_per_m2", 2}, {"density_per_m3", 3}};
    int density_seen = 0;
    for (const auto& [key, dim] : density_keys) {
        if (!t.has("system", key)) continue;
        ++density_seen;
        if (dim != sys.dimension)
            bad("system." + key, "unit does not match dimension = " +
                                     std::to_string(sys.dimension));
        sys.density = get_number(t, "system", key, 0.0);
    }
    if (density_seen > 1) bad("system.density_per_m", "give exactly one density key");
    if (density_seen == 0) sys.density = ref.density;
    sys.lattice_spacing =
        t.has("system", "lattice_spacing_nm")
            ? get_number(t, "system", "lattice_spacing_nm", 0.0) * 1e-9
            : ref.lattice_spacing;
    sys.lattice_depth_er = get_number(t, "system", "lattice_depth_Er", ref.lattice_depth_er);
    sys.hopping_er = get_number(t, "system", "hopping_Er", ref.hopping_er);
    sys.temperature_over_ep = get_number(t, "system", "temperature_over_Ep", 0.0);
    sys.tilt = get_number(t, "system", "tilt_hbar_omegaB_over_J", 0.0);
    if (t.has("system", "healing_length_nm"))
        sys.healing_length = get_number(t, "system", "healing_length_nm", 0.0) * 1e-9;
    else
        sys.healing_length = ref.healing_length;

    cfg.solver.dt = get_number(t, "solver", "dt", cfg.solver.dt);
    cfg.solver.t_final = get_number(t, "solver", "t_final", cfg.solver.t_final);
    cfg.solver.n_sites =
        static_cast<int>(get_number(t, "solver", "n_sites", cfg.solver.n_sites));
    cfg.solver.grid_tol = get_number(t, "solver", "grid_tol", cfg.solver.grid_tol);
    cfg.solver.kernel_tol = get_number(t, "solver", "kernel_tol", cfg.solver.kernel_tol);

    if (t.has("sweep", "temperatures_over_ep"))
        cfg.sweep.temperatures_over_ep = get_array(t, "sweep", "temperatures_over_ep");
    if (t.has("sweep", "tilts")) cfg.sweep.tilts = get_array(t, "sweep", "tilts");
    cfg.sweep.t_d = get_number(t, "sweep", "t_d", cfg.sweep.t_d);

    if (const Value* v = t.find("output", "directory")) {
        if (v->kind != Value::Kind::string) bad("output.directory", "expected string");
        cfg.output.directory = v->text;
    }
    if (const Value* v = t.find("output", "emit_plots")) {
        if (v->kind != Value::Kind::boolean) bad("output.emit_plots", "expected boolean");
        cfg.output.emit_plots = v->boolean;
    }

    // Presets ship their own sweep grids; a config selecting a figure mode
    // without explicit sweeps inherits them for preset/config equivalence.
    if (cfg.sweep.temperatures_over_ep.empty() &&
        (cfg.mode == "fig3" || cfg.mode == "fig4" || cfg.mode == "fig5"))
        cfg.sweep.temperatures_over_ep = preset(cfg.mode).sweep.temperatures_over_ep;
    if (cfg.sweep.tilts.empty() && cfg.mode == "fig5")
        cfg.sweep.tilts = preset(cfg.mode).sweep.tilts;

    cfg.validate();
    return cfg;
}

}  // namespace polaron::config
