#include <algorithm>
#include <cmath>
#include <functional>
#include <future>

#include "cli.hpp"
#include "solvext/families.hpp"

namespace solvext::cli {
namespace {

using models::Level;
using models::ModelSpec;
using nlohmann::json;

constexpr double kAlgebraTol = 1e-10;
constexpr double kGramTol = 1e-8;
constexpr double kResidualTol = 1e-3;
constexpr int kIdentityMaxN = 12;

Check make_check(std::string name, double metric, double tol, json details = json::object()) {
    Check c;
    c.name = std::move(name);
    c.metric = metric;
    c.tolerance = tol;
    c.pass = metric <= tol;
    c.details = std::move(details);
    return c;
}

std::vector<int> excited_indices(const std::vector<Level>& levels) {
    std::vector<int> out;
    for (const Level& l : levels)
        if (!l.is_ground()) out.push_back(l.n());
    return out;
}

// Laguerre parameter exercised by the identity checks: α for Morse, the
// -1/2 used by the imaginary-argument Hermite identity otherwise.
double identity_parameter(const ModelSpec& spec) { return spec.is_morse() ? spec.alpha() : -0.5; }

Check classical_ode_check(const ModelSpec& spec) {
    const double a = identity_parameter(spec);
    double worst = 0.0;
    for (int n = 0; n <= kIdentityMaxN; ++n)
        worst = std::max({worst, poly::hermite_ode_residual(n), poly::laguerre_ode_residual(n, a)});
    return make_check("algebra.classical_ode", worst, kAlgebraTol,
                      {{"n_max", kIdentityMaxN}, {"laguerre_parameter", a}});
}

Check identity_check(const ModelSpec& spec) {
    const double a = identity_parameter(spec);
    double worst = 0.0;
    for (int n = 1; n <= kIdentityMaxN; ++n) worst = std::max(worst, poly::laguerre_identity_residuals(n, a).max());
    return make_check("algebra.laguerre_identities", worst, kAlgebraTol,
                      {{"n_max", kIdentityMaxN}, {"laguerre_parameter", a}});
}

Check xi_check(const ModelSpec& spec) {
    return make_check("algebra.xi_ode", models::xi_ode_residual(spec), kAlgebraTol);
}

Check construction_check(const ModelSpec& spec, const std::vector<int>& ns) {
    double vcal = 0.0;
    double assembly = 0.0;
    for (int n : ns) {
        const models::ConstructionResiduals r = models::construction_residuals(spec, n);
        vcal = std::max(vcal, r.vcal_equation);
        assembly = std::max(assembly, r.assembly);
    }
    return make_check("algebra.construction", std::max(vcal, assembly), kAlgebraTol,
                      {{"vcal_equation", vcal}, {"assembly", assembly}});
}

Check degree_check(const ModelSpec& spec, const std::vector<int>& ns) {
    double worst = 0.0;
    for (int n : ns) {
        const int deg = models::p_polynomial(spec, n).degree();
        worst = std::max(worst, std::abs(double(deg - (spec.ell() + n + 1))));
    }
    return make_check("algebra.degree_law", worst, 0.0);
}

std::optional<Check> alternate_form_check(const ModelSpec& spec, const std::vector<int>& ns) {
    double worst = 0.0;
    if (spec.is_morse()) {
        for (int n : ns) {
            const poly::Polynomial p = models::p_polynomial(spec, n);
            const poly::Polynomial c = models::p_polynomial_closed(spec, n);
            worst = std::max(worst, poly::relative_residual(p - c, {&p, &c}));
        }
        return make_check("algebra.closed_form", worst, kAlgebraTol);
    }
    if (spec.ell() < 2) return std::nullopt;
    for (int n : ns) worst = std::max(worst, models::reduced_form_residual(spec, n));
    return make_check("algebra.reduced_form", worst, kAlgebraTol);
}

std::vector<Check> gram_checks(const ModelSpec& spec, const std::vector<Level>& levels) {
    const spectral::Matrix gx = spectral::gram_matrix(spec, levels, spectral::GramSpace::XSpace);
    const spectral::Matrix gm = spectral::gram_matrix(spec, levels, spectral::GramSpace::EtaMeasure);
    const spectral::Matrix gs = spectral::gram_matrix(spec, levels, spectral::GramSpace::EtaStated);
    std::vector<Check> out;
    out.push_back(make_check("gram.x_space", spectral::max_normalized_offdiag(gx), kGramTol,
                             {{"levels", levels.size()}}));
    out.push_back(make_check(
        "gram.eta_measure_vs_x", spectral::max_normalized_difference(gx, gm), kGramTol,
        {{"eta_measure_max_offdiag", spectral::max_normalized_offdiag(gm)},
         {"eta_stated_max_offdiag", spectral::max_normalized_offdiag(gs)},
         {"eta_stated_vs_x", spectral::max_normalized_difference(gx, gs)}}));
    return out;
}

Check residual_check(const ModelSpec& spec, const Level& level, const spectral::Grid& grid) {
    const models::Eigenstate st = models::eigenstate(spec, level);
    const spectral::Grid fine = grid.refined();
    const double coarse = spectral::schrodinger_residual(spec, st, grid);
    const double r = spectral::schrodinger_residual(spec, st, fine);
    return make_check("schrodinger." + level.label(), r, kResidualTol,
                      {{"n_points", fine.n_points()},
                       {"residual_at_double_spacing", coarse},
                       {"halving_ratio", coarse / r}});
}

Check spectrum_check(const ModelSpec& spec, const spectral::Grid& grid, std::optional<int> nmax,
                     double tol) {
    const spectral::VerificationReport r = spectral::compare_spectrum(spec, grid, nmax, tol);
    json details = {{"levels", r.levels},
                    {"analytic", r.analytic},
                    {"numeric", r.numeric},
                    {"abs_error", r.abs_error},
                    {"grid", {{"xmin", r.xmin}, {"xmax", r.xmax}, {"n_points", r.n_points}}},
                    {"numeric_bound_count", r.numeric_bound_count},
                    {"reason", r.reason.empty() ? json(nullptr) : json(r.reason)}};
    if (r.cutoff) details["cutoff"] = *r.cutoff;
    Check c = make_check("spectrum.compare", r.max_error, tol, std::move(details));
    c.pass = r.pass;
    return c;
}

}  // namespace

std::vector<Check> run_checks(const ModelSpec& spec, const spectral::Grid& grid,
                              std::optional<int> nmax, double tolerance) {
    const std::vector<Level> levels = models::bound_levels(spec, nmax);
    const std::vector<int> ns = excited_indices(levels);

    std::vector<std::future<std::vector<Check>>> jobs;
    // A job that throws becomes a single failing check named after the job.
    auto launch = [&jobs](std::string job, std::function<std::vector<Check>()> fn) {
        jobs.push_back(std::async(std::launch::async, [job = std::move(job), fn = std::move(fn)] {
            try {
                return fn();
            } catch (const std::exception& e) {
                Check c;
                c.name = job;
                c.metric = NAN;
                c.details = {{"error", e.what()}};
                return std::vector<Check>{c};
            }
        }));
    };
    launch("algebra", [&] {
        std::vector<Check> v{classical_ode_check(spec), identity_check(spec), xi_check(spec),
                             construction_check(spec, ns), degree_check(spec, ns)};
        if (auto c = alternate_form_check(spec, ns)) v.push_back(*c);
        return v;
    });
    launch("gram", [&] { return gram_checks(spec, levels); });
    launch("spectrum", [&] { return std::vector<Check>{spectrum_check(spec, grid, nmax, tolerance)}; });
    for (const Level& l : levels)
        launch("schrodinger." + l.label(), [&, l] { return std::vector<Check>{residual_check(spec, l, grid)}; });

    std::vector<Check> all;
    for (auto& j : jobs)
        for (Check& c : j.get()) all.push_back(std::move(c));
    std::sort(all.begin(), all.end(), [](const Check& a, const Check& b) { return a.name < b.name; });
    return all;
}

json report_to_json(const ModelSpec& spec, const std::vector<Check>& checks) {
    json arr = json::array();
    bool pass = true;
    for (const Check& c : checks) {
        arr.push_back({{"name", c.name},
                       {"pass", c.pass},
                       {"metric", c.metric},
                       {"tolerance", c.tolerance},
                       {"details", c.details}});
        pass = pass && c.pass;
    }
    return {{"schema_version", kSchemaVersion}, {"spec", spec_to_json(spec)}, {"checks", arr}, {"pass", pass}};
}

}  // namespace solvext::cli
