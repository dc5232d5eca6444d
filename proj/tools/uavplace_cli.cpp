// uavplace: command-line front end for the placement library.
//
// Exit codes: 0 success, 1 failed reproduction verdict, 2 usage or input
// error, 3 infeasible placement region, 4 numerical failure.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <uavplace.hpp>

namespace {

using namespace uavplace;

constexpr int kExitOk = 0;
constexpr int kExitVerdict = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitNumerical = 4;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "250x250" or "W" (square).
AreaBounds parse_area(const std::string& text, double z_min, double z_max) {
    double w = 0.0, h = 0.0;
    char sep = 0;
    std::istringstream in(text);
    if (!(in >> w)) throw UsageError("--area: expected WIDTHxHEIGHT, got '" + text + "'");
    if (in >> sep) {
        if ((sep != 'x' && sep != 'X') || !(in >> h))
            throw UsageError("--area: expected WIDTHxHEIGHT, got '" + text + "'");
    } else {
        h = w;
    }
    if (!(w >= 0.0) || !(h >= 0.0)) throw UsageError("--area: dimensions must be non-negative");
    return {0.0, w, 0.0, h, z_min, z_max};
}

// "cx,cy,std,count[,elo,ehi];..."
std::vector<ClusterSpec> parse_clusters(const std::string& text, double elo, double ehi) {
    std::vector<ClusterSpec> out;
    std::istringstream all(text);
    std::string item;
    while (std::getline(all, item, ';')) {
        if (item.empty()) continue;
        std::vector<double> f;
        std::istringstream one(item);
        std::string tok;
        while (std::getline(one, tok, ',')) {
            try {
                f.push_back(std::stod(tok));
            } catch (const std::exception&) {
                throw UsageError("--clusters: bad number '" + tok + "'");
            }
        }
        if (f.size() != 4 && f.size() != 6)
            throw UsageError("--clusters: each cluster is cx,cy,std,count[,energy_low,energy_high]");
        if (!(f[3] >= 0.0)) throw UsageError("--clusters: count must be non-negative");
        ClusterSpec c{{f[0], f[1]}, f[2], static_cast<std::size_t>(f[3]), elo, ehi};
        if (f.size() == 6) {
            c.energy_low = f[4];
            c.energy_high = f[5];
        }
        out.push_back(c);
    }
    if (out.empty()) throw UsageError("--clusters: no clusters given");
    return out;
}

Scenario load_with_altitude(const std::string& path, std::optional<double> z) {
    Scenario s = load(path);
    if (z) {
        s.bounds.z_min = *z;
        s.bounds.z_max = std::max(s.bounds.z_max, *z);
        validate(s.bounds);
    }
    return s;
}

void print_certificate(const objective::ConcavityCertificate& c) {
    std::printf("concavity: d_max = %.2f m, sqrt(3)*d_max = %.2f m, z_min = %.2f m -> %s\n", c.d_max,
                c.threshold, c.z_min, c.holds ? "holds" : (c.marginal ? "marginal" : "fails"));
}

void print_region_table(const region::FeasibleRegion& r) {
    std::printf("%6s %12s %12s %12s %12s %8s\n", "user", "d_power", "d_energy", "d_i", "radius_2d", "binding");
    const double z2 = r.altitude * r.altitude;
    for (const auto& l : r.limits) {
        char radius[32] = "-";
        if (l.d_i > r.altitude) std::snprintf(radius, sizeof radius, "%.3f", std::sqrt(l.d_i * l.d_i - z2));
        std::printf("%6zu %12.3f %12.3f %12.3f %12s %8s\n", l.user_index, l.d_power, l.d_energy, l.d_i, radius,
                    region::to_string(l.binding()));
    }
}

solver::Mode parse_mode(const std::string& m) { return m == "region" ? solver::Mode::region : solver::Mode::box; }

void apply_init(solver::SolverConfig& config, const std::string& init) {
    if (init == "centroid") {
        config.init = solver::InitKind::centroid;
    } else if (init.rfind("random:", 0) == 0) {
        config.init = solver::InitKind::seeded_random;
        config.init_seed = std::stoull(init.substr(7));
    } else {
        double x = 0.0, y = 0.0;
        char comma = 0;
        std::istringstream in(init);
        if (!(in >> x >> comma >> y) || comma != ',')
            throw UsageError("--init: expected centroid, X,Y or random:SEED");
        config.init = solver::InitKind::point;
        config.init_point = {x, y};
    }
}

void print_verdicts(const std::vector<experiments::Verdict>& verdicts, bool& all_pass) {
    for (const auto& v : verdicts) {
        std::printf("%s  %-40s %s\n", v.pass ? "PASS" : "FAIL", v.name.c_str(), v.detail.c_str());
        all_pass = all_pass && v.pass;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fixed-altitude UAV placement maximizing the total uplink lifetime of ground devices"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Write a seeded scenario file");
    std::optional<std::size_t> gen_count;
    std::string gen_area = "250x250", gen_clusters, gen_out;
    double gen_elo = experiments::kEnergyLow, gen_ehi = experiments::kEnergyHigh;
    std::uint64_t gen_seed = 1;
    double gen_zmin = experiments::kAltitude;
    std::optional<double> gen_zmax;
    RfParams gen_rf = table_one_rf();
    gen->add_option("--count", gen_count, "Number of uniformly placed devices");
    gen->add_option("--area", gen_area, "Area WIDTHxHEIGHT in meters, origin at (0,0)");
    gen->add_option("--energy-low", gen_elo, "Lower bound of device energy (J)");
    gen->add_option("--energy-high", gen_ehi, "Upper bound of device energy (J)");
    gen->add_option("--seed", gen_seed, "Generator seed");
    gen->add_option("--clusters", gen_clusters, "Gaussian clusters cx,cy,std,count[,elo,ehi];...");
    gen->add_option("--z-min", gen_zmin, "UAV minimum altitude (m)");
    gen->add_option("--z-max", gen_zmax, "UAV maximum altitude (m), default z-min");
    gen->add_option("--rate", gen_rf.rate, "Required rate per device (bit/s)");
    gen->add_option("--bandwidth", gen_rf.bandwidth, "Total bandwidth (Hz)");
    gen->add_option("--noise", gen_rf.noise, "Noise power (W)");
    gen->add_option("--frequency", gen_rf.frequency, "Carrier frequency (Hz)");
    gen->add_option("--p-max", gen_rf.p_max, "Maximum device transmit power (W)");
    gen->add_option("--tau-th", gen_rf.tau_th, "Minimum uplink duration (s)");
    gen->add_option("--c", gen_rf.c, "Speed of light (m/s), e.g. 3e8");
    gen->add_option("--out", gen_out, "Output file (default stdout)");

    // check
    auto* chk = app.add_subcommand("check", "Feasible region and concavity report");
    std::string chk_path;
    std::optional<double> chk_z;
    chk->add_option("scenario", chk_path, "Scenario file")->required();
    chk->add_option("--z", chk_z, "Override the UAV altitude z_min (m)");

    // solve
    auto* slv = app.add_subcommand("solve", "Gradient projection placement");
    std::string slv_path, slv_mode = "box", slv_init = "centroid", slv_report, slv_traj;
    std::optional<double> slv_gamma, slv_z;
    double slv_eps = 1e-3;
    int slv_iters = 100;
    bool slv_no_ls = false, slv_refine = false;
    double slv_spacing = 1.0;
    slv->add_option("scenario", slv_path, "Scenario file")->required();
    slv->add_option("--mode", slv_mode, "Feasible set: box or region")->check(CLI::IsMember({"box", "region"}));
    slv->add_option("--gamma", slv_gamma, "Initial step size (m^3/J)")->check(CLI::PositiveNumber);
    slv->add_option("--eps", slv_eps, "Stop when an update moves less than this (m)")->check(CLI::PositiveNumber);
    slv->add_option("--max-iters", slv_iters, "Iteration cap")->check(CLI::PositiveNumber);
    slv->add_option("--init", slv_init, "Start point: centroid, X,Y or random:SEED");
    slv->add_flag("--no-line-search", slv_no_ls, "Fixed step size");
    slv->add_flag("--grid-refine", slv_refine, "Start from the best node of a grid search");
    slv->add_option("--spacing", slv_spacing, "Grid spacing for --grid-refine (m)")->check(CLI::PositiveNumber);
    slv->add_option("--z", slv_z, "Override the UAV altitude z_min (m)");
    slv->add_option("--report", slv_report, "Write the solve report (JSON)");
    slv->add_option("--trajectory", slv_traj, "Write the trajectory (CSV)");

    // grid
    auto* grd = app.add_subcommand("grid", "Brute-force grid optimum");
    std::string grd_path, grd_mode = "box";
    double grd_spacing = 1.0;
    std::optional<double> grd_z;
    grd->add_option("scenario", grd_path, "Scenario file")->required();
    grd->add_option("--spacing", grd_spacing, "Grid spacing (m)")->check(CLI::PositiveNumber);
    grd->add_option("--mode", grd_mode, "Feasible set: box or region")->check(CLI::IsMember({"box", "region"}));
    grd->add_option("--z", grd_z, "Override the UAV altitude z_min (m)");

    // surface
    auto* srf = app.add_subcommand("surface", "Objective surface as CSV or SVG heatmap");
    std::string srf_path, srf_out, srf_format;
    std::optional<double> srf_z;
    double srf_spacing = 5.0;
    srf->add_option("scenario", srf_path, "Scenario file")->required();
    srf->add_option("--z", srf_z, "UAV altitude (m), default the scenario's z_min");
    srf->add_option("--spacing", srf_spacing, "Grid spacing (m)")->check(CLI::PositiveNumber);
    srf->add_option("--out", srf_out, "Output file; .csv or .svg")->required();
    srf->add_option("--format", srf_format, "csv or svg (default from --out extension)")
        ->check(CLI::IsMember({"csv", "svg"}));

    // reproduce
    auto* rep = app.add_subcommand("reproduce", "Rerun a reference experiment and judge it");
    std::string rep_case;
    std::uint64_t rep_seed = 1;
    rep->add_option("--case", rep_case, "uniform, nonuniform or concavity")
        ->required()
        ->check(CLI::IsMember({"uniform", "nonuniform", "concavity"}));
    rep->add_option("--seed", rep_seed, "Scenario seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*gen) {
            Scenario s;
            const AreaBounds bounds = parse_area(gen_area, gen_zmin, gen_zmax.value_or(gen_zmin));
            if (!gen_clusters.empty()) {
                s = generate_clustered(parse_clusters(gen_clusters, gen_elo, gen_ehi), bounds, gen_seed, gen_rf);
            } else {
                if (!gen_count) throw UsageError("generate: --count is required (or --clusters)");
                s = generate_uniform(*gen_count, bounds, gen_elo, gen_ehi, gen_seed, gen_rf);
            }
            if (gen_out.empty()) {
                std::cout << to_json(s).dump(2) << "\n";
            } else {
                save(s, gen_out);
                std::fprintf(stderr, "wrote %zu users to %s (seed %llu)\n", s.users.size(), gen_out.c_str(),
                             static_cast<unsigned long long>(gen_seed));
            }
            std::fprintf(stderr, "seed: %llu\n", static_cast<unsigned long long>(gen_seed));
            return kExitOk;
        }

        if (*chk) {
            const Scenario s = load_with_altitude(chk_path, chk_z);
            const auto k = channel::system_constant(s.rf, s.users.size());
            const auto r = region::build(s);
            std::printf("users: %zu, K = %.6e W/m^2, z_min = %.2f m\n", s.users.size(), k.k, s.bounds.z_min);
            print_region_table(r);
            if (r.empty) {
                std::printf("region: INFEASIBLE (%s)\n", r.cause.c_str());
            } else {
                std::printf("region: feasible, witness (%.3f, %.3f)\n", r.witness->x, r.witness->y);
            }
            print_certificate(objective::concavity_certificate(s.bounds));
            return r.empty ? kExitInfeasible : kExitOk;
        }

        if (*slv) {
            const Scenario s = load_with_altitude(slv_path, slv_z);
            solver::SolverConfig config;
            config.mode = parse_mode(slv_mode);
            config.step_size = slv_gamma;
            config.tolerance = slv_eps;
            config.max_iters = slv_iters;
            config.line_search = !slv_no_ls;
            apply_init(config, slv_init);
            const auto report = slv_refine
                                    ? solver::solve_grid_refined(s, config, oracle::GridSpec::over(s.bounds, slv_spacing))
                                    : solver::solve(s, config);
            if (!slv_report.empty()) write_text_file(slv_report, solver::to_json(report).dump(2) + "\n");
            if (!slv_traj.empty()) write_text_file(slv_traj, solver::trajectory_csv(report));
            if (report.infeasible) {
                std::printf("infeasible (%s mode): %s\n", solver::to_string(config.mode), report.infeasible->c_str());
                return kExitInfeasible;
            }
            if (!report.certificate.holds)
                std::fprintf(stderr, "warning: z_min = %.2f m <= sqrt(3)*d_max = %.2f m, objective may not be concave\n",
                             report.certificate.z_min, report.certificate.threshold);
            std::printf("placement (%.3f, %.3f, %.3f) m, objective %.6f J/m^2, lifetime %.1f s, iterations %d, "
                        "converged %s\n",
                        report.placement.x, report.placement.y, report.altitude, report.objective,
                        report.lifetime_seconds, report.iterations, report.converged ? "true" : "false");
            return kExitOk;
        }

        if (*grd) {
            const Scenario s = load_with_altitude(grd_path, grd_z);
            const auto mode = parse_mode(grd_mode);
            if (mode == oracle::Mode::region) {
                const auto r = region::build(s);
                if (r.empty) {
                    std::printf("infeasible (region mode): %s\n", r.cause.c_str());
                    return kExitInfeasible;
                }
            }
            const auto g = oracle::grid_search(s, oracle::GridSpec::over(s.bounds, grd_spacing), mode);
            const double k = channel::system_constant(s.rf, s.users.size()).k;
            std::printf("grid optimum (%.3f, %.3f, %.3f) m, objective %.6f J/m^2, lifetime %.1f s, %zu nodes\n",
                        g.best.x, g.best.y, s.bounds.z_min, g.best_value, g.best_value / k, g.evaluated);
            return kExitOk;
        }

        if (*srf) {
            const Scenario s = load(srf_path);
            const double z = srf_z.value_or(s.bounds.z_min);
            std::string format = srf_format;
            if (format.empty()) {
                const auto dot = srf_out.rfind('.');
                format = dot == std::string::npos ? "" : srf_out.substr(dot + 1);
                if (format != "csv" && format != "svg")
                    throw UsageError("surface: cannot infer format from '" + srf_out + "', pass --format");
            }
            const auto surf = surface::sample(s.users, s.bounds, z, srf_spacing);
            char title[96];
            std::snprintf(title, sizeof title, "Objective (J/m^2) at z = %g m", z);
            write_text_file(srf_out, format == "csv" ? surface::to_csv(surf) : surface::to_svg(surf, title));
            std::printf("wrote %zu x %zu surface to %s; max Hessian eigenvalue %.3e\n", surf.xs.size(),
                        surf.ys.size(), srf_out.c_str(), surface::max_hessian_eigenvalue(s.users, surf));
            return kExitOk;
        }

        if (*rep) {
            bool all_pass = true;
            if (rep_case == "uniform") {
                const auto s = experiments::uniform_scenario(rep_seed);
                const auto r = solver::solve(s, experiments::box_config());
                std::printf("uniform: %zu users, seed %llu, z = %.0f m, box mode\n", s.users.size(),
                            static_cast<unsigned long long>(rep_seed), s.bounds.z_min);
                print_verdicts(experiments::judge_uniform(r), all_pass);
            } else if (rep_case == "nonuniform") {
                const auto s = experiments::nonuniform_scenario(rep_seed);
                const auto r = solver::solve(s, experiments::box_config());
                std::printf("nonuniform: %zu users, seed %llu, z = %.0f m, box mode\n", s.users.size(),
                            static_cast<unsigned long long>(rep_seed), s.bounds.z_min);
                print_verdicts(experiments::judge_nonuniform(s, r), all_pass);
            } else {
                print_verdicts(experiments::judge_concavity(rep_seed), all_pass);
            }
            return all_pass ? kExitOk : kExitVerdict;
        }
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const DomainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kExitNumerical;
    } catch (const ConfigurationError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumerical;
    }
    return kExitOk;
}
