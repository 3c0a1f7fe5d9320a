#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "charlier/curve.hpp"
#include "charlier/io.hpp"
#include "charlier/measure.hpp"
#include "charlier/poly.hpp"
#include "charlier/roots.hpp"
#include "charlier/saddle.hpp"
#include "charlier/verify.hpp"

namespace fs = std::filesystem;
using namespace charlier;

namespace {

constexpr int kExitFlags = 2;
constexpr int kExitConvergence = 3;
constexpr int kExitInvariant = 4;

void write_roots_csv(const std::string& path, const RootSet& rs) {
    std::vector<std::vector<double>> rows;
    rows.reserve(rs.n);
    for (int i = 0; i < rs.n; ++i)
        rows.push_back({rs.roots[i].real(), rs.roots[i].imag(), rs.residuals[i]});
    write_csv(path, {"re", "im", "residual"}, rows);
}

void write_curve_csv(const std::string& path, const TracedCurve& curve) {
    std::vector<std::vector<double>> rows;
    rows.reserve(curve.samples.size());
    for (const CurveSample& s : curve.samples)
        rows.push_back({s.t, s.x, s.y, s.rho_real, s.density});
    write_csv(path, {"t", "x", "y", "rho", "density"}, rows);
}

int cmd_roots(int n, double a, std::uint64_t seed, const std::string& out) {
    write_roots_csv(out, find_roots(n, a, seed));
    return 0;
}

int cmd_curve(double a, int samples, const std::string& out) {
    write_curve_csv(out, trace_curve(a, samples));
    return 0;
}

int cmd_verify(int n, double a, std::uint64_t seed, const std::string& out) {
    const VerificationReport rep = run_verification(n, a, seed);
    if (!out.empty()) {
        std::ofstream os(out, std::ios::binary);
        if (!os) throw std::runtime_error("cannot open " + out);
        write_report(os, rep);
    }
    write_report(std::cout, rep);
    return rep.all_ok() ? 0 : kExitInvariant;
}

void figure_curves(const fs::path& dir, int which,
                   const std::vector<double>& as) {
    SvgPlot plot;
    for (double a : as) {
        const TracedCurve curve = trace_curve(a, 513);
        std::vector<double> xs, ys, ys_conj;
        for (const CurveSample& s : curve.samples) {
            xs.push_back(s.x);
            ys.push_back(s.y);
            ys_conj.push_back(-s.y);
        }
        char label[32];
        std::snprintf(label, sizeof(label), "%g", a);
        write_curve_csv((dir / ("fig" + std::to_string(which) + "_a" + label +
                                ".csv")).string(),
                        curve);
        plot.add_line(xs, ys);
        plot.add_line(xs, ys_conj);
    }
    plot.write((dir / ("fig" + std::to_string(which) + ".svg")).string());
}

void figure_roots_overlay(const fs::path& dir, int which, double a,
                          std::uint64_t seed) {
    const TracedCurve curve = trace_curve(a, 513);
    // root-cloud figures always use the extended mode: the a=1/12 cluster is
    // not resolvable in binary64
    const RootSet rs = find_roots(100, a, seed, Exec::parallel, Precision::extended);
    write_roots_csv((dir / ("fig" + std::to_string(which) + "_roots.csv")).string(),
                    rs);
    write_curve_csv(
        (dir / ("fig" + std::to_string(which) + "_support.csv")).string(), curve);

    SvgPlot plot;
    std::vector<double> xs, ys, ys_conj;
    for (const CurveSample& s : curve.samples) {
        xs.push_back(s.x);
        ys.push_back(s.y);
        ys_conj.push_back(-s.y);
    }
    plot.add_line(xs, ys, "red");
    plot.add_line(xs, ys_conj, "red");
    if (curve.gamma1 > a) {
        // real interval [a, gamma1] carrying mu_2
        write_csv((dir / ("fig" + std::to_string(which) + "_interval.csv")).string(),
                  {"x", "y"}, {{a, 0.0}, {curve.gamma1, 0.0}});
        plot.add_line({a, curve.gamma1}, {0.0, 0.0}, "red");
    }
    std::vector<double> rx, ry;
    for (const Complex& r : rs.roots) {
        rx.push_back(r.real());
        ry.push_back(r.imag());
    }
    plot.add_scatter(rx, ry);
    plot.write((dir / ("fig" + std::to_string(which) + ".svg")).string());
}

void figure_g_raster(const fs::path& dir) {
    const double a = 1.0;
    const int grid = 101;
    const double ymax = 2.0 * std::sqrt(a);
    std::vector<std::vector<double>> rows;
    rows.reserve(static_cast<std::size_t>(grid) * grid);
    for (int iy = 0; iy < grid; ++iy)
        for (int ix = 0; ix < grid; ++ix) {
            const double x = static_cast<double>(ix) / (grid - 1);
            const double y = ymax * iy / (grid - 1);
            rows.push_back({x, y, g_value(Complex(x, y), a)});
        }
    write_csv((dir / "fig4_g_values.csv").string(), {"x", "y", "g"}, rows);

    const TracedCurve curve = trace_curve(a, 513);
    write_curve_csv((dir / "fig4_boundary.csv").string(), curve);
    SvgPlot plot;
    std::vector<double> xs, ys;
    for (const CurveSample& s : curve.samples) {
        xs.push_back(s.x);
        ys.push_back(s.y);
    }
    plot.add_line({0, 1, 1, 0, 0}, {0, 0, ymax, ymax, 0});
    plot.add_line(xs, ys, "red");
    plot.write((dir / "fig4.svg").string());
}

void figure_densities(const fs::path& dir) {
    SvgPlot plot;
    for (double a : {0.1, 0.25, 0.5, 10.0}) {
        const TracedCurve curve = trace_curve(a, 513);
        std::vector<std::vector<double>> rows;
        std::vector<double> ts, ds;
        for (const CurveSample& s : curve.samples) {
            rows.push_back({s.t, s.density});
            ts.push_back(s.t);
            ds.push_back(s.density);
        }
        char label[32];
        std::snprintf(label, sizeof(label), "%g", a);
        write_csv((dir / ("fig5_density_a" + std::string(label) + ".csv")).string(),
                  {"t", "density"}, rows);
        plot.add_line(ts, ds);
    }
    plot.write((dir / "fig5.svg").string());
}

int cmd_figure(int which, const std::string& out_dir, std::uint64_t seed) {
    const fs::path dir(out_dir);
    fs::create_directories(dir);
    switch (which) {
        case 1: figure_curves(dir, 1, {0.01, 0.1, 1.0, 10.0}); break;
        case 2: figure_roots_overlay(dir, 2, 1.0, seed); break;
        case 3: figure_roots_overlay(dir, 3, 1.0 / 12.0, seed); break;
        case 4: figure_g_raster(dir); break;
        case 5: figure_densities(dir); break;
        default: throw std::invalid_argument("figure: which must be 1..5");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Roots of rescaled Charlier polynomials with negative parameter "
                 "and their limiting distribution"};
    app.require_subcommand(1);

    int n = 100;
    double a = 1.0;
    std::uint64_t seed = 1;
    int samples = 513;
    int which = 1;
    std::string out;

    CLI::App* roots = app.add_subcommand("roots", "compute all n roots, write CSV");
    roots->add_option("--n", n, "polynomial degree")->required();
    roots->add_option("--a", a, "parameter a > 0")->required();
    roots->add_option("--seed", seed, "seed for the initial-guess jitter");
    roots->add_option("--out", out, "output CSV path")->required();

    CLI::App* curve = app.add_subcommand("curve", "trace the zero attractor, write CSV");
    curve->add_option("--a", a, "parameter a > 0")->required();
    curve->add_option("--samples", samples, "number of t samples");
    curve->add_option("--out", out, "output CSV path")->required();

    CLI::App* verify = app.add_subcommand("verify", "run the end-to-end verification");
    verify->add_option("--n", n, "polynomial degree")->required();
    verify->add_option("--a", a, "parameter a > 0")->required();
    verify->add_option("--seed", seed, "seed for the initial-guess jitter");
    verify->add_option("--out", out, "report output path (key=value lines)");

    CLI::App* figure = app.add_subcommand("figure", "emit figure data (CSV + SVG)");
    figure->add_option("--which", which, "figure number, 1..5")->required();
    figure->add_option("--seed", seed, "seed for root-cloud figures");
    figure->add_option("--out", out, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitFlags;
    }

    try {
        if (roots->parsed()) return cmd_roots(n, a, seed, out);
        if (curve->parsed()) return cmd_curve(a, samples, out);
        if (verify->parsed()) return cmd_verify(n, a, seed, out);
        if (figure->parsed()) return cmd_figure(which, out, seed);
    } catch (const ConvergenceError& e) {
        std::cerr << "convergence error: " << e.what() << "\n";
        return kExitConvergence;
    } catch (const InvariantError& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFlags;
    }
    return kExitFlags;
}
