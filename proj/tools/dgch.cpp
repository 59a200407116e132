// dgch: command-line front end for the energy, sweep and flow routines.
//
// Exit codes: 0 ok, 2 configuration error, 3 singular energy, 4 tolerance
// failure, 5 solver failure.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "dgch/config.hpp"
#include "dgch/energy.hpp"
#include "dgch/field_io.hpp"
#include "dgch/flow.hpp"
#include "dgch/sweep.hpp"

namespace fs = std::filesystem;
using namespace dgch;

namespace {

enum Exit { kOk = 0, kConfig = 2, kSingular = 3, kTolerance = 4, kSolver = 5 };

std::ofstream open_output(const fs::path& path)
{
    std::ofstream os(path);
    if (!os) throw ConfigError("cannot write '" + path.string() + "'");
    return os;
}

fs::path output_dir(const std::string& flag, const RunConfig& cfg)
{
    const std::string dir = flag.empty() ? cfg.output_dir : flag;
    if (dir.empty()) throw ConfigError("no output directory (use --out or [output] dir)");
    fs::create_directories(dir);
    return dir;
}

int cmd_sigma(const std::vector<double>& ps, const ModelParamsd& m)
{
    for (double p : ps)
        if (!(p < 2.0)) throw ConfigError("sigma requires p < 2");
    if (!(m.u_minus < m.u_plus) || !(m.gamma >= 0.0)) throw ConfigError("need u_minus < u_plus and gamma >= 0");
    std::cout << "# sigma u_minus=" << format_double(m.u_minus) << " u_plus=" << format_double(m.u_plus)
              << " gamma=" << format_double(m.gamma) << "\n";
    std::cout << "p,sigma_quadrature,sigma_closed_form,rel_err\n";
    for (double p : ps) {
        const double q = surface_tension(p, m);
        const double c = surface_tension_closed_form(p, m);
        const double rel = c != 0.0 ? std::abs(q - c) / std::abs(c) : std::abs(q - c);
        std::cout << format_double(p) << ',' << format_double(q) << ',' << format_double(c) << ','
                  << format_double(rel) << '\n';
    }
    return kOk;
}

int cmd_gamma_sweep(const std::string& path, const std::string& out)
{
    const RunConfig cfg = load_config(path);
    if (!cfg.region) throw ConfigError("gamma-sweep needs [region] shape");
    if (cfg.eps_list.empty()) throw ConfigError("gamma-sweep needs [sweep] eps_list");
    const auto dir = output_dir(out, cfg);

    const auto rep = gamma_sweep(*cfg.region, cfg.policy, cfg.form, cfg.params, cfg.eps_list, cfg.sweep);

    auto os = open_output(dir / "sweep.csv");
    os << "# config " << cfg.describe() << "\n";
    write_sweep_csv(os, rep);

    auto es = open_output(dir / "energies.csv");
    es << "# config " << cfg.describe() << "\n" << energy_csv_header() << "\n";
    for (const auto& pt : rep.points) {
        ModelParamsd m = cfg.params;
        m.epsilon = pt.epsilon;
        es << energy_csv_row(m, cfg.form, pt.energy) << "\n";
    }

    std::printf("E0_fit=%.10g target=%.10g rel_gap=%.3e tolerance=%g gap_monotonicity_violations=%d\n", rep.fit.E0,
                rep.target, rep.rel_gap, cfg.tolerance, rep.gap_monotonicity_violations);
    if (rep.gap_monotonicity_violations > 1)
        std::printf("note: relative gap not decreasing at %d steps\n", rep.gap_monotonicity_violations);
    if (rep.singular) {
        std::fprintf(stderr, "singular energy at one or more sweep points\n");
        return kSingular;
    }
    return rep.rel_gap <= cfg.tolerance ? kOk : kTolerance;
}

int cmd_flow(const std::string& path, const std::string& out)
{
    const RunConfig cfg = load_config(path);
    if (!cfg.has_flow) throw ConfigError("flow needs a [flow] section");
    if (!cfg.region) throw ConfigError("flow needs [region] shape for the initial field");
    const auto dir = output_dir(out, cfg);

    const Grid grid = cfg.domain();
    const auto u0 = build_recovery_field(*cfg.region, grid, cfg.params, cfg.initial_profile);

    auto traj = open_output(dir / "trajectory.csv");
    traj << "# config " << cfg.describe() << "\n";
    traj << "t,dt,energy,mass,overshoot\n";
    int saves = 0;
    auto on_save = [&](const FlowState& s) {
        traj << format_double(s.t) << ',' << format_double(s.dt) << ',' << format_double(s.energy) << ','
             << format_double(s.mass) << ',' << format_double(s.overshoot) << '\n';
        char name[32];
        std::snprintf(name, sizeof name, "snapshot_%06d.bin", saves++);
        write_binary_file((dir / name).string(), s.u);
    };

    FlowRun r;
    try {
        r = run(u0, cfg.flow, on_save);
    } catch (const StepFailure& e) {
        on_save(e.last_state());
        std::fprintf(stderr, "step failure: %s\n", e.what());
        return kSolver;
    }
    std::printf("accepted=%lld rejected=%lld max_mass_drift=%.3e energy_non_increasing=%d energy_increases=%lld "
                "max_energy_increase=%.3e final_overshoot=%.3e\n",
                static_cast<long long>(r.stats.accepted), static_cast<long long>(r.stats.rejected),
                r.stats.max_mass_drift, r.stats.energy_non_increasing ? 1 : 0,
                static_cast<long long>(r.stats.energy_increases), r.stats.max_energy_increase,
                r.trajectory.back().overshoot);
    return r.stats.energy_non_increasing && r.stats.max_mass_drift <= 1e-12 ? kOk : kTolerance;
}

int cmd_profile(const ModelParamsd& m, Index samples, const std::string& kind_name)
{
    const auto kind = profile_kind_from_string(kind_name);
    const auto pr = build_profile(m, kind, samples);
    const double bound = std::sqrt(m.epsilon) * m.span();
    std::cout << "# profile kind=" << to_string(kind) << " epsilon=" << format_double(m.epsilon)
              << " u_minus=" << format_double(m.u_minus) << " u_plus=" << format_double(m.u_plus)
              << " gamma=" << format_double(m.gamma) << " samples=" << samples << "\n";
    std::cout << "t,phi,width,bound\n";
    const auto& t = pr.table_t();
    const auto& s = pr.table_s();
    for (std::size_t i = 0; i < t.size(); ++i)
        std::cout << format_double(t[i]) << ',' << format_double(s[i]) << ',' << format_double(pr.width()) << ','
                  << format_double(bound) << '\n';
    return kOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"de Gennes-Cahn-Hilliard energies, recovery sweeps and gradient flow"};
    app.require_subcommand(1);

    ModelParamsd sigma_params;
    std::vector<double> p_list;
    auto* sigma = app.add_subcommand("sigma", "surface tension by quadrature and closed form");
    sigma->add_option("--p-list", p_list, "values of p")->expected(0, -1);
    sigma->add_option("--u-minus", sigma_params.u_minus);
    sigma->add_option("--u-plus", sigma_params.u_plus);
    sigma->add_option("--gamma", sigma_params.gamma);

    std::string config_path, out_dir;
    auto* sweep = app.add_subcommand("gamma-sweep", "recovery-sequence energy sweep");
    sweep->add_option("--config", config_path)->required();
    sweep->add_option("--out", out_dir);

    auto* flow = app.add_subcommand("flow", "regularized gradient flow");
    flow->add_option("--config", config_path)->required();
    flow->add_option("--out", out_dir);

    ModelParamsd profile_params;
    Index samples = 4097;
    std::string kind = "shifted";
    auto* profile = app.add_subcommand("profile", "transition profile table");
    profile->add_option("--epsilon", profile_params.epsilon)->required();
    profile->add_option("--samples", samples);
    profile->add_option("--kind", kind, "shifted, shifted_literal or equipartition");
    profile->add_option("--u-minus", profile_params.u_minus);
    profile->add_option("--u-plus", profile_params.u_plus);
    profile->add_option("--gamma", profile_params.gamma);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        if (*sigma) return cmd_sigma(p_list, sigma_params);
        if (*sweep) return cmd_gamma_sweep(config_path, out_dir);
        if (*flow) return cmd_flow(config_path, out_dir);
        if (*profile) return cmd_profile(profile_params, samples, kind);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return kConfig;
    } catch (const DomainError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return kConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kSolver;
    }
    return kOk;
}
