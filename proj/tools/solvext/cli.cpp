#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "table.hpp"

namespace solvext::cli {
namespace {

using models::Family;
using nlohmann::json;

constexpr int kTabulatePoints = 201;
constexpr int kVerifyDefaultNmax = 4;

const std::map<std::string, Subcommand> kSubcommands{{"validate", Subcommand::Validate},
                                                     {"tabulate", Subcommand::Tabulate},
                                                     {"spectrum", Subcommand::Spectrum},
                                                     {"verify", Subcommand::Verify}};
const std::map<std::string, Family> kFamilies{{"ho", Family::HarmonicRational},
                                              {"morse", Family::MorseRational}};
const std::map<std::string, OutputFormat> kFormats{{"csv", OutputFormat::Csv},
                                                   {"json", OutputFormat::Json}};
const std::map<std::string, TabulateKind> kKinds{{"potential", TabulateKind::Potential},
                                                 {"wavefunction", TabulateKind::Wavefunction}};

template <class E>
std::string name_of(const std::map<std::string, E>& m, E v) {
    for (const auto& [k, e] : m)
        if (e == v) return k;
    throw std::logic_error("unnamed enum value");
}

template <class E>
E value_of(const std::map<std::string, E>& m, const std::string& key, const char* what) {
    const auto it = m.find(key);
    if (it == m.end()) throw std::invalid_argument(std::string("unknown ") + what + ": " + key);
    return it->second;
}

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct HelpRequested {
    std::string text;
};

void check_combination(const CommandConfig& c) {
    if (c.family == Family::HarmonicRational && c.alpha)
        throw UsageError("--alpha is not accepted for --family ho");
    if (c.family == Family::MorseRational && !c.alpha)
        throw UsageError("--alpha is required for --family morse");
    if (c.ell < 0) throw UsageError("--ell must be non-negative");
    if (c.nmax && *c.nmax < 0) throw UsageError("--nmax must be non-negative");
    if (!(c.tolerance > 0.0)) throw UsageError("--tol must be positive");
    if (c.level != "ground") {
        const bool digits = !c.level.empty() &&
                            c.level.find_first_not_of("0123456789") == std::string::npos;
        if (!digits) throw UsageError("--level must be 'ground' or a non-negative integer");
    }
}

void add_spec_options(CLI::App& app, CommandConfig& c, std::string& family) {
    app.add_option("--family", family, "Model family")
        ->required()
        ->check(CLI::IsMember({"ho", "morse"}));
    app.add_option("--ell", c.ell, "Deformation degree ell")->required();
    app.add_option("--alpha", c.alpha, "Morse parameter alpha");
}

void add_output_options(CLI::App& app, CommandConfig& c, std::string& format) {
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("-o,--output", c.output, "Output path (default: standard output)");
}

void add_grid_options(CLI::App& app, CommandConfig& c) {
    app.add_option("--xmin", c.xmin, "Grid left end");
    app.add_option("--xmax", c.xmax, "Grid right end");
    app.add_option("--n", c.n_points, "Grid point count");
}

OutputFormat resolve_format(const CommandConfig& c, const char* env_format, OutputFormat fallback) {
    if (c.format) return *c.format;
    if (env_format && *env_format) {
        const auto it = kFormats.find(env_format);
        if (it == kFormats.end())
            throw UsageError(std::string(kFormatEnvVar) + " must be csv or json, got '" + env_format + "'");
        return it->second;
    }
    return fallback;
}

spectral::Grid resolve_grid(const CommandConfig& c, const models::ModelSpec& spec, int default_points) {
    const spectral::Grid d = spectral::default_grid(spec);
    try {
        return spectral::Grid(c.xmin.value_or(d.xmin()), c.xmax.value_or(d.xmax()),
                              c.n_points.value_or(default_points));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

models::Level resolve_level(const CommandConfig& c, const models::ModelSpec& spec) {
    if (c.level == "ground") return models::Level::ground();
    const models::Level l = models::Level::excited(std::stoi(c.level));
    if (!models::is_bound(spec, l))
        throw UsageError("level " + l.label() + " is not a bound state of this model");
    return l;
}

json table_json(const models::ModelSpec& spec, const Table& t) {
    json cols = t.columns;
    return {{"schema_version", kSchemaVersion}, {"spec", spec_to_json(spec)}, {"columns", cols},
            {"rows", rows_to_json(t)}};
}

void emit(std::ostream& os, OutputFormat f, const json& j, const Table* t) {
    if (f == OutputFormat::Json || !t)
        os << j.dump(2) << '\n';
    else
        write_csv(os, *t);
}

int cmd_validate(const CommandConfig& c, std::ostream& os, const char* env_format) {
    const models::Admissibility a = models::check_admissibility(c.family, c.ell, c.alpha);
    const bool json_out = c.format == OutputFormat::Json ||
                          (!c.format && env_format && std::string(env_format) == "json");
    if (json_out) {
        json spec = {{"family", name_of(kFamilies, c.family)},
                     {"ell", c.ell},
                     {"alpha", c.alpha ? json(*c.alpha) : json(nullptr)}};
        os << json{{"schema_version", kSchemaVersion},
                   {"spec", spec},
                   {"admissible", a.admissible},
                   {"reason", a.reason ? json(std::string(models::to_string(*a.reason))) : json(nullptr)},
                   {"detail", a.detail},
                   {"xi_zero", a.xi_zero ? json(*a.xi_zero) : json(nullptr)}}
                  .dump(2)
           << '\n';
    } else if (a.admissible) {
        os << "admissible\n";
    } else {
        os << models::to_string(*a.reason) << '\n' << a.detail << '\n';
    }
    return a.admissible ? kExitOk : kExitInadmissible;
}

int cmd_tabulate(const CommandConfig& c, const models::ModelSpec& spec, std::ostream& os,
                 OutputFormat f) {
    const spectral::Grid grid = resolve_grid(c, spec, kTabulatePoints);
    const models::PointEvaluator ev(spec);
    Table t;
    if (c.tabulate_kind == TabulateKind::Potential) {
        t.columns = {"x", "V"};
        for (int i = 0; i < grid.n_points(); ++i) t.rows.push_back({grid.x(i), ev.potential(grid.x(i))});
    } else {
        const models::Eigenstate st = models::eigenstate(spec, resolve_level(c, spec));
        const double norm = spectral::normalization(spec, st);
        t.columns = {"x", "phi", "phi_raw"};
        for (int i = 0; i < grid.n_points(); ++i) {
            const double raw = ev.wavefunction(st, grid.x(i));
            t.rows.push_back({grid.x(i), norm * raw, raw});
        }
    }
    json j = table_json(spec, t);
    j["kind"] = name_of(kKinds, c.tabulate_kind);
    if (c.tabulate_kind == TabulateKind::Wavefunction) j["level"] = c.level;
    emit(os, f, j, &t);
    return kExitOk;
}

int cmd_spectrum(const CommandConfig& c, const models::ModelSpec& spec, std::ostream& os,
                 OutputFormat f) {
    if (!spec.is_morse() && !c.nmax) throw UsageError("--nmax is required for --family ho");
    Table t;
    t.columns = {"level", "n", "energy"};
    if (spec.is_morse()) {
        t.columns.push_back("excited_bound");
        t.columns.push_back("threshold");
    }
    for (const models::Level& l : models::bound_levels(spec, c.nmax)) {
        std::vector<Cell> row{l.label(), l.is_ground() ? -1LL : static_cast<long long>(l.n()),
                              models::energy(spec, l)};
        if (spec.is_morse()) {
            row.emplace_back(models::morse_excited_bound(spec));
            row.emplace_back(models::continuum_threshold(spec));
        }
        t.rows.push_back(std::move(row));
    }
    json j = table_json(spec, t);
    if (spec.is_morse()) {
        j["excited_bound"] = models::morse_excited_bound(spec);
        j["threshold"] = models::continuum_threshold(spec);
    }
    emit(os, f, j, &t);
    return kExitOk;
}

int cmd_verify(const CommandConfig& c, const models::ModelSpec& spec, std::ostream& os,
               OutputFormat f) {
    const spectral::Grid grid = resolve_grid(c, spec, spectral::default_grid(spec).n_points());
    std::optional<int> nmax = c.nmax;
    if (!spec.is_morse() && !nmax) nmax = kVerifyDefaultNmax;
    const std::vector<Check> checks = run_checks(spec, grid, nmax, c.tolerance);
    const json report = report_to_json(spec, checks);
    Table t;
    t.columns = {"name", "pass", "metric", "tolerance"};
    for (const Check& ch : checks) t.rows.push_back({ch.name, ch.pass, ch.metric, ch.tolerance});
    emit(os, f, report, &t);
    return report["pass"].get<bool>() ? kExitOk : kExitVerificationFailed;
}

}  // namespace

json spec_to_json(const models::ModelSpec& spec) {
    return {{"family", std::string(models::to_string(spec.family()))},
            {"ell", spec.ell()},
            {"alpha", spec.alpha_opt() ? json(*spec.alpha_opt()) : json(nullptr)}};
}

json config_to_json(const CommandConfig& c) {
    auto opt = [](const auto& o) { return o ? json(*o) : json(nullptr); };
    return {{"subcommand", name_of(kSubcommands, c.subcommand)},
            {"family", name_of(kFamilies, c.family)},
            {"ell", c.ell},
            {"alpha", opt(c.alpha)},
            {"nmax", opt(c.nmax)},
            {"xmin", opt(c.xmin)},
            {"xmax", opt(c.xmax)},
            {"n_points", opt(c.n_points)},
            {"tolerance", c.tolerance},
            {"format", c.format ? json(name_of(kFormats, *c.format)) : json(nullptr)},
            {"output", opt(c.output)},
            {"tabulate_kind", name_of(kKinds, c.tabulate_kind)},
            {"level", c.level}};
}

CommandConfig config_from_json(const json& j) {
    try {
        CommandConfig c;
        c.subcommand = value_of(kSubcommands, j.at("subcommand").get<std::string>(), "subcommand");
        c.family = value_of(kFamilies, j.at("family").get<std::string>(), "family");
        c.ell = j.at("ell").get<int>();
        auto opt_d = [&](const char* k) -> std::optional<double> {
            return j.at(k).is_null() ? std::nullopt : std::optional<double>(j.at(k).get<double>());
        };
        auto opt_i = [&](const char* k) -> std::optional<int> {
            return j.at(k).is_null() ? std::nullopt : std::optional<int>(j.at(k).get<int>());
        };
        c.alpha = opt_d("alpha");
        c.nmax = opt_i("nmax");
        c.xmin = opt_d("xmin");
        c.xmax = opt_d("xmax");
        c.n_points = opt_i("n_points");
        c.tolerance = j.at("tolerance").get<double>();
        if (!j.at("format").is_null())
            c.format = value_of(kFormats, j.at("format").get<std::string>(), "format");
        if (!j.at("output").is_null()) c.output = j.at("output").get<std::string>();
        c.tabulate_kind = value_of(kKinds, j.at("tabulate_kind").get<std::string>(), "tabulate kind");
        c.level = j.at("level").get<std::string>();
        return c;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config_from_json: ") + e.what());
    }
}

CommandConfig parse_command_line(int argc, const char* const* argv) {
    CommandConfig c;
    std::string family = "ho";
    std::string format;
    std::string kind = "potential";

    CLI::App app{"Rationally extended harmonic-oscillator and Morse potentials"};
    app.require_subcommand(1);

    CLI::App* validate = app.add_subcommand("validate", "Check admissibility of a model");
    add_spec_options(*validate, c, family);
    add_output_options(*validate, c, format);

    CLI::App* tabulate = app.add_subcommand("tabulate", "Tabulate V(x) or a wavefunction on a grid");
    tabulate->add_option("kind", kind, "potential or wavefunction")
        ->required()
        ->check(CLI::IsMember({"potential", "wavefunction"}));
    add_spec_options(*tabulate, c, family);
    add_grid_options(*tabulate, c);
    tabulate->add_option("--level", c.level, "ground or excited index n");
    add_output_options(*tabulate, c, format);

    CLI::App* spectrum = app.add_subcommand("spectrum", "List closed-form bound-state energies");
    add_spec_options(*spectrum, c, family);
    spectrum->add_option("--nmax", c.nmax, "Highest excited index (required for ho)");
    add_output_options(*spectrum, c, format);

    CLI::App* verify = app.add_subcommand("verify", "Check closed forms against numerical oracles");
    add_spec_options(*verify, c, family);
    add_grid_options(*verify, c);
    verify->add_option("--nmax", c.nmax, "Highest excited index (default 4 for ho)");
    verify->add_option("--tol", c.tolerance, "Spectrum tolerance");
    add_output_options(*verify, c, format);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        throw HelpRequested{sub->help()};
    }

    for (const auto& [name, sub] : kSubcommands)
        if (app.got_subcommand(name)) c.subcommand = sub;
    c.family = kFamilies.at(family);
    if (!format.empty()) c.format = kFormats.at(format);
    c.tabulate_kind = kKinds.at(kind);
    check_combination(c);
    return c;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
        const char* env_format) {
    CommandConfig c;
    try {
        c = parse_command_line(argc, argv);
    } catch (const HelpRequested& h) {
        out << h.text;
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    std::ofstream file;
    if (c.output) {
        file.open(*c.output, std::ios::binary);
        if (!file) {
            err << "error: cannot open " << *c.output << '\n';
            return kExitUsage;
        }
    }
    std::ostream& os = c.output ? static_cast<std::ostream&>(file) : out;

    try {
        if (c.subcommand == Subcommand::Validate) return cmd_validate(c, os, env_format);
        const models::ModelSpec spec = models::validate_spec(c.family, c.ell, c.alpha);
        switch (c.subcommand) {
            case Subcommand::Tabulate:
                return cmd_tabulate(c, spec, os, resolve_format(c, env_format, OutputFormat::Csv));
            case Subcommand::Spectrum:
                return cmd_spectrum(c, spec, os, resolve_format(c, env_format, OutputFormat::Csv));
            case Subcommand::Verify:
                return cmd_verify(c, spec, os, resolve_format(c, env_format, OutputFormat::Json));
            case Subcommand::Validate: break;
        }
    } catch (const models::InadmissibleSpec& e) {
        err << models::to_string(e.reason()) << '\n' << e.admissibility().detail << '\n';
        return kExitInadmissible;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace solvext::cli
