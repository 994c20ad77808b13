#pragma once

/**
 * @file cli.hpp
 * @brief Command-line front end: detect, kernel, sweep, compare.
 *
 * Exit codes: 0 success, 2 parameter/usage errors, 3 I/O failures (missing
 * input, unwritable output, malformed PNM).  All file artifacts are
 * deterministic: identical inputs and flags produce byte-identical files.
 * CSV output uses '.' decimals, no locale, 17 significant digits.
 */

#include <charconv>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "edges.hpp"
#include "kernel.hpp"
#include "pnm.hpp"
#include "scene.hpp"

namespace qdog {
namespace cli {

/// Shortest-of-17-significant-digits decimal form, locale independent.
inline std::string fmt_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                   std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

inline BorderPolicy parse_border(const std::string& name) {
    if (name == "replicate") return BorderPolicy::replicate;
    if (name == "reflect") return BorderPolicy::reflect;
    if (name == "zero") return BorderPolicy::zero;
    throw std::invalid_argument("qdog: unknown border policy '" + name + "'");
}

inline std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    return out;
}

inline void finish_output(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out)
        throw IoError("write failure on '" + path + "'");
}

// ---------------------------------------------------------------------------
// detect
// ---------------------------------------------------------------------------

struct DetectOptions {
    std::string in;
    std::string out;
    double q = 1.0;
    double sigma1 = 0.2;
    double sigma2 = 0.1;
    double threshold = 0.0;
    std::string border = "replicate";
    int radius = 0; // 0 = automatic
    bool ascii = false;
};

inline int cmd_detect(const DetectOptions& o) {
    const GrayImage img = read_pnm(o.in);
    DetectParams p;
    p.q = o.q;
    p.sigma1 = o.sigma1;
    p.sigma2 = o.sigma2;
    p.threshold = o.threshold;
    p.border = parse_border(o.border);
    validate(p);
    const int radius = o.radius > 0 ? o.radius : support_radius({p.q, p.sigma1});
    p.radius = radius;
    const EdgeMap edges = detect_edges(img, p);
    write_pgm_file(edges, o.out, o.ascii);
    std::cout << img.width << "x" << img.height << " radius=" << radius
              << " edges=" << edges.edge_count() << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// kernel
// ---------------------------------------------------------------------------

struct KernelOptions {
    std::string out;
    std::string kind = "qgauss";
    double q = 1.0;
    double sigma = 1.0;
    double sigma1 = 0.2;
    double sigma2 = 0.1;
    int radius = 0; // 0 = automatic
};

inline int cmd_kernel(const KernelOptions& o) {
    Kernel k;
    if (o.kind == "qgauss") {
        const QParams p{o.q, o.sigma};
        const int radius = o.radius > 0 ? o.radius : support_radius(p);
        k = sample_qgauss_kernel(p, radius);
    } else if (o.kind == "dog") {
        const int radius = o.radius > 0 ? o.radius : support_radius({o.q, o.sigma1});
        k = dog_kernel(o.sigma1, o.sigma2, o.q, radius);
    } else if (o.kind == "log") {
        const int radius =
            o.radius > 0 ? o.radius : support_radius({1.0, o.sigma});
        k = log_kernel(o.sigma, radius);
    } else {
        throw std::invalid_argument("qdog: unknown kernel kind '" + o.kind + "'");
    }

    // Full kernel: one row of weights per line, no header.
    std::ofstream grid = open_output(o.out);
    for (int dy = -k.radius; dy <= k.radius; ++dy) {
        for (int dx = -k.radius; dx <= k.radius; ++dx) {
            if (dx > -k.radius)
                grid << ",";
            grid << fmt_double(k.at(dx, dy));
        }
        grid << "\n";
    }
    finish_output(grid, o.out);

    // Center-row profile for plotting.
    std::filesystem::path profile_path(o.out);
    profile_path.replace_extension();
    profile_path += ".profile.csv";
    std::ofstream profile = open_output(profile_path.string());
    profile << "x,weight\n";
    for (int dx = -k.radius; dx <= k.radius; ++dx)
        profile << dx << "," << fmt_double(k.at(dx, 0)) << "\n";
    finish_output(profile, profile_path.string());

    std::cout << "kernel " << o.kind << " radius=" << k.radius
              << " side=" << k.side() << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

struct SweepOptions {
    std::string in;
    std::string out_dir;
    std::string grid;
    double sigma1 = 0.2;
    double sigma2 = 0.1;
    double threshold = 0.0;
    std::string border = "replicate";
    int radius = 0; // 0 = automatic
    bool ascii = false;
};

inline std::vector<double> default_q_grid() {
    return {-2.5, -1.625, -0.75, -0.125, 1.0, 1.375, 1.75, 2.125, 2.5};
}

inline std::vector<double> parse_q_grid(const std::string& spec) {
    std::vector<double> grid;
    std::size_t start = 0;
    while (start <= spec.size()) {
        std::size_t comma = spec.find(',', start);
        if (comma == std::string::npos)
            comma = spec.size();
        const std::string item = spec.substr(start, comma - start);
        if (item.empty())
            throw std::invalid_argument("qdog: empty entry in --grid");
        try {
            std::size_t used = 0;
            const double q = std::stod(item, &used);
            if (used != item.size())
                throw std::invalid_argument("");
            grid.push_back(q);
        } catch (const std::exception&) {
            throw std::invalid_argument("qdog: cannot parse --grid entry '" + item + "'");
        }
        start = comma + 1;
    }
    if (grid.empty())
        throw std::invalid_argument("qdog: --grid is empty");
    return grid;
}

inline int cmd_sweep(const SweepOptions& o) {
    const std::vector<double> grid =
        o.grid.empty() ? default_q_grid() : parse_q_grid(o.grid);
    const GrayImage img = read_pnm(o.in);

    std::error_code ec;
    std::filesystem::create_directories(o.out_dir, ec);
    if (ec)
        throw IoError("cannot create output directory '" + o.out_dir + "': " + ec.message());

    const std::filesystem::path dir(o.out_dir);
    std::ofstream manifest = open_output((dir / "manifest.csv").string());
    manifest << "q,radius,edge_pixels\n";

    for (double q : grid) {
        DetectParams p;
        p.q = q;
        p.sigma1 = o.sigma1;
        p.sigma2 = o.sigma2;
        p.threshold = o.threshold;
        p.border = parse_border(o.border);
        validate(p);
        const int radius = o.radius > 0 ? o.radius : support_radius({q, o.sigma1});
        p.radius = radius;
        const EdgeMap edges = detect_edges(img, p);

        char name[48];
        std::snprintf(name, sizeof(name), "q_%.3f.pgm", q);
        write_pgm_file(edges, (dir / name).string(), o.ascii);

        manifest << fmt_double(q) << "," << radius << "," << edges.edge_count() << "\n";
        std::cout << "q=" << fmt_double(q) << " radius=" << radius
                  << " edges=" << edges.edge_count() << "\n";
    }
    finish_output(manifest, (dir / "manifest.csv").string());
    return 0;
}

// ---------------------------------------------------------------------------
// compare
// ---------------------------------------------------------------------------

struct CompareOptions {
    std::string out;
    double sigma = 2.5;
    double sigma1 = 2.5;
    double sigma2 = 2.15;
};

/// LoG profile vs DoG profile along the center row (y = 0), sampled on the
/// 0.01 grid spanning [-4 sigma, 4 sigma].  Both columns are slices of the
/// 2D surfaces so their shapes are directly comparable.
inline int cmd_compare(const CompareOptions& o) {
    if (!(o.sigma > 0.0) || !(o.sigma1 > 0.0) || !(o.sigma2 > 0.0))
        throw std::domain_error("qdog: sigma must be positive");

    const int half = static_cast<int>(std::floor(400.0 * o.sigma + 1e-9));
    std::vector<double> xs, logv, dogv;
    xs.reserve(2 * half + 1);
    for (int k = -half; k <= half; ++k) {
        const double x = 0.01 * k;
        xs.push_back(x);
        logv.push_back(log_2d(x, 0.0, o.sigma));
        dogv.push_back(gaussian_2d(x, 0.0, o.sigma1) - gaussian_2d(x, 0.0, o.sigma2));
    }

    std::ofstream csv = open_output(o.out);
    csv << "x,log,dog,diff\n";
    for (std::size_t i = 0; i < xs.size(); ++i)
        csv << fmt_double(xs[i]) << "," << fmt_double(logv[i]) << ","
            << fmt_double(dogv[i]) << "," << fmt_double(logv[i] - dogv[i]) << "\n";
    finish_output(csv, o.out);

    double ll = 0.0, dd = 0.0, ld = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        ll += logv[i] * logv[i];
        dd += dogv[i] * dogv[i];
        ld += logv[i] * dogv[i];
    }
    if (dd == 0.0 || ll == 0.0) {
        std::cerr << "warning: DoG profile is identically zero; correlation undefined\n";
        std::cout << "ncc=undefined\n";
    } else {
        std::cout << "ncc=" << fmt_double(ld / std::sqrt(ll * dd)) << "\n";
    }

    // Cost check on a synthetic scene: one dense LoG pass vs the separable
    // DoG route (two 1D-factored smoothing passes and a subtraction) at equal
    // kernel radius.
    const GrayImage scene = make_synthetic_scene(512, 512);
    const int radius = support_radius({1.0, o.sigma});
    using clock = std::chrono::steady_clock;

    const auto t0 = clock::now();
    const Kernel lk = log_kernel(o.sigma, radius);
    const ResponseMap lr = convolve(scene, lk, BorderPolicy::replicate);
    const auto t1 = clock::now();

    const ResponseMap wide = convolve_separable(scene, {1.0, o.sigma1}, radius,
                                                BorderPolicy::replicate);
    const ResponseMap narrow = convolve_separable(scene, {1.0, o.sigma2}, radius,
                                                  BorderPolicy::replicate);
    ResponseMap dr(scene.width, scene.height);
    for (std::size_t i = 0; i < dr.values.size(); ++i)
        dr.values[i] = wide.values[i] - narrow.values[i];
    const auto t2 = clock::now();

    // Fold the responses into the report so the passes cannot be elided.
    const double checksum = lr.values[lr.values.size() / 2] + dr.values[dr.values.size() / 2];
    const double log_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    const double dog_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
    char line[160];
    std::snprintf(line, sizeof(line),
                  "timing: image=512x512 radius=%d log_direct_ms=%.3f "
                  "dog_separable_ms=%.3f checksum=%.3e",
                  radius, log_ms, dog_ms, checksum);
    std::cout << line << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// entry point
// ---------------------------------------------------------------------------

inline int run(int argc, const char* const* argv) {
    CLI::App app{"Edge detection by difference of Gaussians with q-Gaussian kernels"};
    app.require_subcommand(1);
    const auto border_check = CLI::IsMember({"replicate", "reflect", "zero"});

    DetectOptions d;
    CLI::App* detect = app.add_subcommand("detect", "Detect edges in a PNM image");
    detect->add_option("--in", d.in, "input image (P2/P5 graymap or P3/P6 pixmap)")->required();
    detect->add_option("--out", d.out, "output edge map (8-bit PGM)")->required();
    detect->add_option("--q", d.q, "q-Gaussian shape parameter (q < 3)");
    detect->add_option("--sigma1", d.sigma1, "wider Gaussian sigma");
    detect->add_option("--sigma2", d.sigma2, "narrower Gaussian sigma (< sigma1)");
    detect->add_option("--threshold", d.threshold, "zero-crossing contrast threshold");
    detect->add_option("--border", d.border, "border policy")->check(border_check);
    detect->add_option("--radius", d.radius, "kernel radius override")->check(CLI::PositiveNumber);
    detect->add_flag("--ascii", d.ascii, "write plain (P2) instead of binary (P5)");

    KernelOptions k;
    CLI::App* kernel = app.add_subcommand("kernel", "Export a kernel as CSV");
    kernel->add_option("--out", k.out, "kernel CSV path (center-row profile lands "
                                       "next to it as *.profile.csv)")->required();
    kernel->add_option("--kind", k.kind, "kernel kind")
        ->check(CLI::IsMember({"qgauss", "dog", "log"}));
    kernel->add_option("--q", k.q, "q-Gaussian shape parameter (q < 3)");
    kernel->add_option("--sigma", k.sigma, "sigma for qgauss/log kinds");
    kernel->add_option("--sigma1", k.sigma1, "wider sigma for dog kind");
    kernel->add_option("--sigma2", k.sigma2, "narrower sigma for dog kind");
    kernel->add_option("--radius", k.radius, "kernel radius override")->check(CLI::PositiveNumber);

    SweepOptions s;
    CLI::App* sweep = app.add_subcommand("sweep", "Detect edges across a grid of q values");
    sweep->add_option("--in", s.in, "input image")->required();
    sweep->add_option("--out", s.out_dir, "output directory")->required();
    sweep->add_option("--grid", s.grid, "comma-separated q values "
                                        "(default: -2.5,-1.625,-0.75,-0.125,1,1.375,1.75,2.125,2.5)");
    sweep->add_option("--sigma1", s.sigma1, "wider Gaussian sigma");
    sweep->add_option("--sigma2", s.sigma2, "narrower Gaussian sigma (< sigma1)");
    sweep->add_option("--threshold", s.threshold, "zero-crossing contrast threshold");
    sweep->add_option("--border", s.border, "border policy")->check(border_check);
    sweep->add_option("--radius", s.radius, "kernel radius override")->check(CLI::PositiveNumber);
    sweep->add_flag("--ascii", s.ascii, "write plain (P2) instead of binary (P5)");

    CompareOptions c;
    CLI::App* compare = app.add_subcommand("compare",
                                           "Compare LoG and DoG profiles and runtime cost");
    compare->add_option("--out", c.out, "profile CSV path")->required();
    compare->add_option("--sigma", c.sigma, "LoG sigma");
    compare->add_option("--sigma1", c.sigma1, "wider DoG sigma");
    compare->add_option("--sigma2", c.sigma2, "narrower DoG sigma");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (detect->parsed())
            return cmd_detect(d);
        if (kernel->parsed())
            return cmd_kernel(k);
        if (sweep->parsed())
            return cmd_sweep(s);
        return cmd_compare(c);
    } catch (const PnmError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace cli
} // namespace qdog
