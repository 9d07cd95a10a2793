// circlepack: construct circle packings invariant under Kleinian groups and
// measure their curvature statistics.

#include <CLI11.hpp>
#include <iostream>

#include "circlepack/packing_io.hpp"
#include "circlepack/svg.hpp"

namespace cp = circlepack;

namespace {

std::array<cp::Rat, 4> parse_root(const std::string& spec) {
    std::array<cp::Rat, 4> k;
    std::stringstream ss(spec);
    std::string tok;
    std::size_t i = 0;
    while (std::getline(ss, tok, ',')) {
        if (i >= 4) throw std::invalid_argument("root quadruple needs exactly 4 curvatures");
        k[i++] = cp::parse_rational(tok);
    }
    if (i != 4) throw std::invalid_argument("root quadruple needs exactly 4 curvatures");
    return k;
}

std::vector<double> parse_number_list(const std::string& spec) {
    std::vector<double> out;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(cp::parse_double(tok));
    return out;
}

cp::Region parse_region(const std::string& spec) {
    if (spec == "period") return cp::Region::period();
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("region must be kind:args or 'period'");
    const std::string kind = spec.substr(0, colon);
    const auto args = parse_number_list(spec.substr(colon + 1));
    if (kind == "disk" && args.size() == 3) return cp::Region::disk(args[0], args[1], args[2]);
    if (kind == "rect" && args.size() == 4) return cp::Region::rect(args[0], args[1], args[2], args[3]);
    if (kind == "cap" && args.size() == 4) return cp::Region::cap({args[0], args[1], args[2]}, args[3]);
    throw std::invalid_argument("unknown region '" + spec + "'");
}

// Whole-packing region: every circle of a bounded packing meets the closed
// outer disk; strips count the period.
template <class S>
cp::Region whole_region(const cp::Packing<S>& p) {
    if (p.is_strip()) return cp::Region::period();
    for (std::size_t i = 0; i < p.specials.size(); ++i) {
        if (p.special_kinds[i] != cp::SpecialKind::outer) continue;
        const auto cr = cp::center_radius(p.specials[i]);
        return cp::Region::disk(cp::to_double(cr->cx), cp::to_double(cr->cy), cp::to_double(cr->radius));
    }
    // no outer circle recorded: fall back to a box around the circles
    double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
    for (const auto& c : p.circles) {
        const auto cr = cp::center_radius(c);
        const double cx = cp::to_double(cr->cx), cy = cp::to_double(cr->cy), r = cp::to_double(cr->radius);
        x0 = std::min(x0, cx - r);
        y0 = std::min(y0, cy - r);
        x1 = std::max(x1, cx + r);
        y1 = std::max(y1, cy + r);
    }
    return cp::Region::rect(x0, y0, x1, y1);
}

cp::Packing<cp::Rat> build_rational(const std::array<cp::Rat, 4>& root_k, const cp::Rat& cutoff,
                                    const cp::GenerateOptions& opt) {
    const auto root = cp::reduce_to_root(cp::CurvatureQuadruple<cp::Rat>{root_k});
    return cp::generate(cp::realize_root(root), cutoff, opt);
}

cp::Packing<double> build_floating(const std::array<cp::Rat, 4>& root_k, double cutoff,
                                   const cp::GenerateOptions& opt) {
    std::array<double, 4> kd;
    for (std::size_t i = 0; i < 4; ++i) kd[i] = cp::to_double(root_k[i]);
    const auto root = cp::reduce_to_root(cp::CurvatureQuadruple<double>{kd});
    return cp::generate(cp::realize_root(root), cutoff, opt);
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-")
        std::cout << text;
    else
        cp::write_text_file(path, text);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"circle packings invariant under Kleinian groups: generation and statistics"};
    app.require_subcommand(1);

    std::string root_spec, packing_path, out_path, csv_path, config_path, region_spec = "whole";
    std::string backing = "rational", viewport_spec, ts_spec = "100,1000,10000";
    double max_curv = 100, big_t = 10, min_radius = 1e-3, window_lo = 100, window_hi = 10000;
    double stroke_width = 0, size_px = 800;
    int workers = 1, max_len = 12, grid_points = 17, modulus = 16;
    long long max_circles = 100000000;
    bool labels = true;

    auto add_workers = [&](CLI::App* cmd) {
        cmd->add_option("--workers", workers, "worker threads (env CIRCLEPACK_WORKERS overrides)");
    };

    auto* apo = app.add_subcommand("apollonian", "generate an Apollonian packing from a root quadruple");
    apo->add_option("--root", root_spec, "curvature quadruple a,b,c,d")->required();
    apo->add_option("--max-curv", max_curv, "curvature cutoff T")->required();
    apo->add_option("--out", out_path, "packing file to write")->required();
    apo->add_option("--backing", backing, "rational|double")->check(CLI::IsMember({"rational", "double"}));
    apo->add_option("--max-circles", max_circles, "memory guard");
    add_workers(apo);

    auto* sch = app.add_subcommand("schottky", "validate a Schottky group, generate its orbit packing, estimate delta");
    sch->add_option("--config", config_path, "group configuration file")->required();
    sch->add_option("--min-radius", min_radius, "smallest orbit circle kept");
    sch->add_option("--max-len", max_len, "word length for the Poincare series shells");
    sch->add_option("--out", out_path, "packing file to write");
    sch->add_option("--csv", csv_path, "orbit count series CSV");
    sch->add_option("--max-circles", max_circles, "memory guard");
    add_workers(sch);

    auto* sph = app.add_subcommand("sphere", "transfer a packing to the unit sphere");
    sph->add_option("--packing", packing_path, "planar packing file")->required();
    sph->add_option("--out", out_path, "spherical packing file to write");

    auto* cnt = app.add_subcommand("count", "count circles of curvature < T meeting a region");
    cnt->add_option("--packing", packing_path, "packing file")->required();
    cnt->add_option("--T", big_t, "curvature bound")->required();
    cnt->add_option("--region", region_spec, "whole | period | disk:cx,cy,r | rect:x0,y0,x1,y1");
    cnt->add_option("--grid", grid_points, "grid points for a (T/100, T) count series CSV");
    cnt->add_option("--csv", csv_path, "count series CSV output");
    add_workers(cnt);

    auto* expn = app.add_subcommand("exponent", "fit the curvature-count growth exponent");
    expn->add_option("--root", root_spec, "curvature quadruple a,b,c,d");
    expn->add_option("--packing", packing_path, "packing file (alternative to --root)");
    expn->add_option("--max-curv", max_curv, "curvature cutoff T when generating");
    expn->add_option("--window", window_lo, "fit window lower end");
    expn->add_option("--window-hi", window_hi, "fit window upper end");
    expn->add_option("--grid-points", grid_points, "count grid points");
    expn->add_option("--csv", csv_path, "fit report CSV output");
    add_workers(expn);

    auto* prm = app.add_subcommand("primes", "prime, twin-prime and distinct-curvature counts");
    prm->add_option("--packing", packing_path, "packing file")->required();
    prm->add_option("--ts", ts_spec, "comma list of thresholds T");
    prm->add_option("--csv", csv_path, "prime table CSV output");
    add_workers(prm);

    auto* res = app.add_subcommand("residues", "scan the Descartes form over (Z/m)^4");
    res->add_option("--mod", modulus, "modulus");

    auto* ren = app.add_subcommand("render", "render a packing to SVG");
    ren->add_option("--packing", packing_path, "packing file")->required();
    ren->add_option("--out", out_path, "SVG file to write")->required();
    ren->add_flag("--labels,!--no-labels", labels, "curvature labels");
    ren->add_option("--stroke-width", stroke_width, "stroke width in packing units");
    ren->add_option("--size", size_px, "image width in pixels");
    ren->add_option("--viewport", viewport_spec, "x0,y0,x1,y1 view box");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        cp::GenerateOptions gopt{max_circles, workers};

        if (apo->parsed()) {
            const auto k = parse_root(root_spec);
            cp::AnyPacking p = backing == "rational"
                                   ? cp::as_any(build_rational(k, cp::Rat(max_curv), gopt))
                                   : cp::as_any(build_floating(k, max_curv, gopt));
            cp::write_packing(p, out_path);
            std::visit([&](const auto& pk) {
                std::cout << "wrote " << out_path << ": " << pk.circles.size() << " circles, cutoff "
                          << cp::format_double(max_curv) << "\n";
            }, p);
        } else if (sch->parsed()) {
            const auto g = cp::read_schottky_config(config_path);
            const auto rep = cp::validate(g);
            std::cout << "validation: " << rep.to_string() << "\n";
            if (!rep.valid()) return 1;
            const auto orbit = cp::generate_orbit(g, min_radius, gopt);
            std::cout << "orbit: " << orbit.circles.size() << " circles of radius >= "
                      << cp::format_double(min_radius) << "\n";
            const auto est = cp::estimate_delta(g, max_len, workers);
            std::cout << "delta estimate (shell ratios to length " << max_len
                      << "): " << cp::format_double(est.delta) << "\n";
            if (!out_path.empty()) cp::write_packing(cp::as_any(orbit), out_path);
            if (!csv_path.empty()) {
                const auto grid = cp::log_grid(2.0, 1.0 / min_radius, 17);
                emit(cp::csv_count_series(cp::count_series(orbit, whole_region(orbit), grid, workers)),
                     csv_path);
            }
        } else if (sph->parsed()) {
            const auto any = cp::read_packing(packing_path);
            std::visit([&](const auto& pk) {
                std::vector<cp::SphericalCircle> sph_circles;
                double worst_identity = 0;
                for (const auto& c : pk.circles) {
                    const auto s = cp::to_sphere(cp::DCircle{cp::to_double(c.curv), cp::to_double(c.cocurv),
                                                             cp::to_double(c.mx), cp::to_double(c.my)});
                    worst_identity = std::max(worst_identity,
                                              std::fabs(std::cosh(cp::hyperbolic_depth(s)) * s.sin_theta - 1));
                    sph_circles.push_back(s);
                }
                double worst_soddy = 0;
                for (const auto& quad : pk.quadruples) {
                    std::array<double, 4> sc{};
                    for (std::size_t i = 0; i < 4; ++i) {
                        const auto& c = pk.at(static_cast<std::size_t>(quad[i]));
                        sc[i] = cp::spherical_curvature(
                            cp::to_sphere(cp::DCircle{cp::to_double(c.curv), cp::to_double(c.cocurv),
                                                      cp::to_double(c.mx), cp::to_double(c.my)}));
                    }
                    worst_soddy = std::max(
                        worst_soddy, std::fabs(cp::soddy_gossett_residual(sc[0], sc[1], sc[2], sc[3])));
                }
                std::cout << "transferred " << sph_circles.size() << " circles\n";
                std::cout << "max |cosh(depth)*sin(theta) - 1| = " << cp::format_double(worst_identity) << "\n";
                std::cout << "max |soddy-gossett residual| over " << pk.quadruples.size()
                          << " tangent quadruples = " << cp::format_double(worst_soddy) << "\n";
                if (!out_path.empty()) cp::write_spherical(sph_circles, pk.source, out_path);
            }, any);
        } else if (cnt->parsed()) {
            const auto any = cp::read_packing(packing_path);
            std::visit([&](const auto& pk) {
                const cp::Region region =
                    region_spec == "whole" ? whole_region(pk) : parse_region(region_spec);
                std::cout << cp::count(pk, region, big_t) << "\n";
                if (!csv_path.empty()) {
                    const auto grid = cp::log_grid(big_t / 100.0, big_t, static_cast<std::size_t>(grid_points));
                    emit(cp::csv_count_series(cp::count_series(pk, region, grid, workers)), csv_path);
                }
            }, any);
        } else if (expn->parsed()) {
            cp::AnyPacking any = packing_path.empty()
                                     ? cp::as_any(build_rational(parse_root(root_spec),
                                                                 cp::Rat(max_curv), gopt))
                                     : cp::read_packing(packing_path);
            std::visit([&](const auto& pk) {
                const double hi = std::min(window_hi, cp::to_double(pk.cutoff));
                const auto grid = cp::log_grid(window_lo, hi, static_cast<std::size_t>(grid_points));
                const auto series = cp::count_series(pk, whole_region(pk), grid, workers);
                const auto fit = cp::fit_exponent(series, window_lo, hi);
                std::cout << "exponent " << cp::format_double(fit.exponent) << " over ["
                          << cp::format_double(fit.t_lo) << ", " << cp::format_double(fit.t_hi) << "] ("
                          << fit.ts.size() << " points)\n";
                if (!csv_path.empty()) emit(cp::csv_fit(fit), csv_path);
            }, any);
        } else if (prm->parsed()) {
            const auto any = cp::read_packing(packing_path);
            std::visit([&](const auto& pk) {
                const auto ts = parse_number_list(ts_spec);
                std::vector<long long> prime, twin, distinct;
                for (const double t : ts) {
                    prime.push_back(cp::prime_pi(pk, t));
                    twin.push_back(cp::twin_prime_pi(pk, t));
                    distinct.push_back(cp::distinct_curvatures(pk, t));
                }
                const auto table = cp::csv_prime_table(ts, prime, twin, distinct);
                std::cout << table;
                if (!csv_path.empty()) emit(table, csv_path);
            }, any);
        } else if (res->parsed()) {
            const auto rep = cp::residue_scan(modulus);
            std::cout << rep.to_string() << "\n";
        } else if (ren->parsed()) {
            const auto any = cp::read_packing(packing_path);
            cp::RenderOptions opt;
            opt.labels = labels;
            opt.stroke_width = stroke_width;
            opt.size_px = size_px;
            if (!viewport_spec.empty()) {
                const auto v = parse_number_list(viewport_spec);
                if (v.size() != 4) throw std::invalid_argument("viewport needs x0,y0,x1,y1");
                opt.viewport = cp::RenderOptions::Box{v[0], v[1], v[2], v[3]};
            }
            cp::write_text_file(out_path, cp::render_svg(any, opt));
            std::cout << "wrote " << out_path << "\n";
        }
        return 0;
    } catch (const cp::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const cp::resource_limit_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
