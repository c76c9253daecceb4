// Command-line front end: parses polynomial/matrix/graph documents,
// dispatches the library computations, and writes SVG figures, CSV
// rasters, and JSON reports.
//
// Exit codes: 0 success, 1 computation error (JSON error report on
// stdout), 2 usage error (message on stderr).

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "syz/amoeba.hpp"
#include "syz/common.hpp"
#include "syz/gamma.hpp"
#include "syz/io_json.hpp"
#include "syz/local_models.hpp"
#include "syz/moment.hpp"
#include "syz/monodromy.hpp"
#include "syz/ronkin.hpp"
#include "syz/spine.hpp"
#include "syz/svg.hpp"

namespace {

using namespace syz;

bool ends_with(const std::string& text, const std::string& suffix) {
    return text.size() >= suffix.size() &&
           text.compare(text.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void emit(const Json& doc, const std::string& out_path) {
    const std::string text = doc.dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        write_text_file(out_path, text);
}

Window window_from(const std::vector<double>& w, int res) {
    return Window(w[0], w[1], w[2], w[3], res);
}

Json component_to_json(const ComplementComponent& c) {
    Json item;
    item["pixels"] = c.pixels;
    item["bounded"] = c.bounded;
    item["order"] = c.order ? Json(*c.order) : Json(nullptr);
    item["constant"] = c.ronkin_constant;
    item["deep_pixel"] = Json::array({c.deep_pixel.first, c.deep_pixel.second});
    item["deep_distance"] = c.deep_distance;
    return item;
}

C3 parse_c3(const std::vector<double>& values) {
    if (values.size() == 3)
        return {Complex(values[0], 0), Complex(values[1], 0), Complex(values[2], 0)};
    return {Complex(values[0], values[1]), Complex(values[2], values[3]),
            Complex(values[4], values[5])};
}

int parse_sign(const std::string& text) {
    if (text == "+" || text == "+1" || text == "plus") return +1;
    if (text == "-" || text == "-1" || text == "minus") return -1;
    throw std::runtime_error("sign must be '+' or '-'");
}

struct AmoebaArgs {
    std::string poly, out;
    std::vector<double> window;
    int res = 256;
    int angular = 0;
};

struct SpineArgs {
    std::string poly, out;
    std::vector<double> window;
    int res = 256;
    int grid = 256;
};

struct RonkinArgs {
    std::string poly, out;
    std::vector<double> point;
    int grid = 512;
    bool order = false;
};

struct CompactifyArgs {
    std::string poly, out;
    int res = 128;
    int angular = 0;
    double range = 12.0;
};

struct GammaIoArgs {
    std::string in, out, dot;
    int degree = 1;
    int edge = 0;
};

struct MonodromyArgs {
    std::string in, out;
};

struct LocalArgs {
    std::vector<double> point{};
    std::vector<double> x{};
    std::vector<double> target{};
    std::string out, sign = "+", model = "hl";
    double tol = 1e-9;
    double step = 1e-5;
    int roundtrip = 1000;
    int samples = 100;
    std::uint64_t seed = 1;
};

void write_graph_outputs(const FibrationGraph& g, const std::string& out,
                         const std::string& dot) {
    write_text_file(out, graph_to_json(g).dump(2) + "\n");
    if (!dot.empty()) write_text_file(dot, graph_to_dot(g));
}

Json graph_stats(const FibrationGraph& g) {
    Json doc;
    doc["vertices"] = g.vertex_count();
    doc["edges"] = g.edge_count();
    doc["positive"] = g.count(VertexKind::Positive);
    doc["negative"] = g.count(VertexKind::Negative);
    doc["euler"] = euler_characteristic(g);
    doc["trivalent"] = g.is_trivalent();
    doc["connected"] = g.is_connected();
    return doc;
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* env = std::getenv("SYZ_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) set_worker_count(n);
    }

    CLI::App app{"Computational toolkit for amoebas, tropical spines, torus-"
                 "fibration monodromy, and local special-Lagrangian models"};
    app.set_help_all_flag("--help-all", "expanded help for every subcommand");

    AmoebaArgs amoeba_args;
    SpineArgs spine_args;
    RonkinArgs ronkin_args;
    SpineArgs components_args;
    CompactifyArgs compactify_args;
    GammaIoArgs gamma_build, gamma_stats_a, gamma_mirror, gamma_flop, gamma_coni;
    MonodromyArgs mono_fixed, mono_classify, mono_mirror, mono_k3;
    LocalArgs local_hl, local_classify, local_joyce, local_slag;

    // ---- amoeba ----
    CLI::App* amoeba = app.add_subcommand(
        "amoeba", "rasterize the amoeba of a Laurent polynomial");
    amoeba->add_option("--poly", amoeba_args.poly, "polynomial JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    amoeba->add_option("--window", amoeba_args.window, "xmin xmax ymin ymax")
        ->expected(4)
        ->required();
    amoeba->add_option("--res", amoeba_args.res, "pixels per side");
    amoeba->add_option("--angular", amoeba_args.angular, "phase samples per slice");
    amoeba->add_option("--out", amoeba_args.out, "output .csv or .svg")->required();
    amoeba->callback([&] {
        const LaurentPolynomial f = laurent_from_json(load_json_file(amoeba_args.poly));
        const AmoebaRaster raster = rasterize_amoeba(
            f, window_from(amoeba_args.window, amoeba_args.res), amoeba_args.angular);
        if (ends_with(amoeba_args.out, ".csv")) {
            write_text_file(amoeba_args.out, raster_to_csv(raster));
        } else if (ends_with(amoeba_args.out, ".svg")) {
            SvgScene scene;
            scene.raster = &raster;
            write_text_file(amoeba_args.out, render_svg(scene));
        } else {
            throw std::runtime_error("output must end in .csv or .svg");
        }
    });

    // ---- spine ----
    CLI::App* spine = app.add_subcommand(
        "spine", "amoeba raster, complement orders, and tropical spine");
    spine->add_option("--poly", spine_args.poly, "polynomial JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    spine->add_option("--window", spine_args.window, "xmin xmax ymin ymax")
        ->expected(4)
        ->required();
    spine->add_option("--res", spine_args.res, "pixels per side");
    spine->add_option("--grid", spine_args.grid, "torus quadrature grid");
    spine->add_option("--out", spine_args.out, "output .svg or .json")->required();
    spine->callback([&] {
        const LaurentPolynomial f = laurent_from_json(load_json_file(spine_args.poly));
        const AmoebaRaster raster =
            rasterize_amoeba(f, window_from(spine_args.window, spine_args.res));
        const std::vector<ComplementComponent> comps =
            complement_components(raster, f, spine_args.grid);
        const TropicalSpine sp = build_spine(comps);
        if (ends_with(spine_args.out, ".json")) {
            write_text_file(spine_args.out, spine_to_json(sp).dump(2) + "\n");
        } else if (ends_with(spine_args.out, ".svg")) {
            SvgScene scene;
            scene.raster = &raster;
            scene.spine = &sp;
            scene.components = &comps;
            write_text_file(spine_args.out, render_svg(scene));
        } else {
            throw std::runtime_error("output must end in .svg or .json");
        }
    });

    // ---- ronkin ----
    CLI::App* ronkin = app.add_subcommand(
        "ronkin", "Ronkin function value (and optionally the order) at a point");
    ronkin->add_option("--poly", ronkin_args.poly, "polynomial JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    ronkin->add_option("--point", ronkin_args.point, "coordinates of the base point")
        ->expected(-1)
        ->required();
    ronkin->add_option("--grid", ronkin_args.grid, "quadrature nodes per angle");
    ronkin->add_flag("--order", ronkin_args.order,
                     "also recover the complement-component order");
    ronkin->add_option("--out", ronkin_args.out, "write the JSON report here");
    ronkin->callback([&] {
        const LaurentPolynomial f = laurent_from_json(load_json_file(ronkin_args.poly));
        const RonkinValue v = ronkin_value(f, ronkin_args.point, ronkin_args.grid);
        Json doc;
        doc["value"] = v.value;
        doc["error_estimate"] = v.error_estimate;
        doc["excluded_nodes"] = v.excluded_nodes;
        doc["total_nodes"] = v.total_nodes;
        doc["low_confidence"] = v.low_confidence;
        if (ronkin_args.order)
            doc["order"] = ronkin_order(f, ronkin_args.point, ronkin_args.grid);
        emit(doc, ronkin_args.out);
    });

    // ---- components ----
    CLI::App* components = app.add_subcommand(
        "components", "complement components with orders and Ronkin constants");
    components->add_option("--poly", components_args.poly, "polynomial JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    components->add_option("--window", components_args.window, "xmin xmax ymin ymax")
        ->expected(4)
        ->required();
    components->add_option("--res", components_args.res, "pixels per side");
    components->add_option("--grid", components_args.grid, "torus quadrature grid");
    components->add_option("--out", components_args.out, "write the JSON report here");
    components->callback([&] {
        const LaurentPolynomial f =
            laurent_from_json(load_json_file(components_args.poly));
        const AmoebaRaster raster = rasterize_amoeba(
            f, window_from(components_args.window, components_args.res));
        const std::vector<ComplementComponent> comps =
            complement_components(raster, f, components_args.grid);
        Json doc = Json::array();
        for (const ComplementComponent& c : comps) doc.push_back(component_to_json(c));
        emit(doc, components_args.out);
    });

    // ---- compactify ----
    CLI::App* compactify = app.add_subcommand(
        "compactify", "moment-map image of the curve inside its Newton polytope");
    compactify->add_option("--poly", compactify_args.poly, "polynomial JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    compactify->add_option("--res", compactify_args.res, "pixels per side");
    compactify->add_option("--angular", compactify_args.angular,
                           "phase samples per slice");
    compactify->add_option("--range", compactify_args.range,
                           "log-coordinate slicing range");
    compactify->add_option("--out", compactify_args.out, "output .csv or .svg")
        ->required();
    compactify->callback([&] {
        const LaurentPolynomial f =
            laurent_from_json(load_json_file(compactify_args.poly));
        const CompactifiedAmoeba ca =
            compactified_amoeba(f, compactify_args.res, compactify_args.range,
                                compactify_args.angular);
        if (ends_with(compactify_args.out, ".csv")) {
            write_text_file(compactify_args.out, raster_to_csv(ca.raster));
        } else if (ends_with(compactify_args.out, ".svg")) {
            SvgScene scene;
            scene.raster = &ca.raster;
            write_text_file(compactify_args.out, render_svg(scene));
        } else {
            throw std::runtime_error("output must end in .csv or .svg");
        }
    });

    // ---- gamma ----
    CLI::App* gamma = app.add_subcommand(
        "gamma", "discriminant graphs: build, stats, mirror, flop, conifold");
    gamma->require_subcommand(1);

    CLI::App* gbuild = gamma->add_subcommand(
        "build", "trivalent graph dual to the triangulated simplex boundary");
    gbuild->add_option("--degree", gamma_build.degree, "triangulation degree")
        ->required()
        ->check(CLI::PositiveNumber);
    gbuild->add_option("--out", gamma_build.out, "graph JSON output")->required();
    gbuild->add_option("--dot", gamma_build.dot, "also write a DOT rendering");
    gbuild->callback([&] {
        write_graph_outputs(build_gamma_simplex(gamma_build.degree), gamma_build.out,
                            gamma_build.dot);
    });

    CLI::App* gstats = gamma->add_subcommand("stats", "vertex/edge counts and Euler number");
    gstats->add_option("input", gamma_stats_a.in, "graph JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    gstats->add_option("--out", gamma_stats_a.out, "write the JSON report here");
    gstats->callback([&] {
        emit(graph_stats(graph_from_json(load_json_file(gamma_stats_a.in))),
             gamma_stats_a.out);
    });

    CLI::App* gmirror = gamma->add_subcommand(
        "mirror", "swap vertex kinds and dualize monodromy labels");
    gmirror->add_option("--in", gamma_mirror.in, "graph JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    gmirror->add_option("--out", gamma_mirror.out, "graph JSON output")->required();
    gmirror->add_option("--dot", gamma_mirror.dot, "also write a DOT rendering");
    gmirror->callback([&] {
        write_graph_outputs(mirror_graph(graph_from_json(load_json_file(gamma_mirror.in))),
                            gamma_mirror.out, gamma_mirror.dot);
    });

    CLI::App* gflop = gamma->add_subcommand("flop", "flop rewrite at an edge");
    gflop->add_option("--in", gamma_flop.in, "graph JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    gflop->add_option("--edge", gamma_flop.edge, "edge id (index in the file)")
        ->required();
    gflop->add_option("--out", gamma_flop.out, "graph JSON output")->required();
    gflop->add_option("--dot", gamma_flop.dot, "also write a DOT rendering");
    gflop->callback([&] {
        FibrationGraph g = graph_from_json(load_json_file(gamma_flop.in));
        g.flop(gamma_flop.edge);
        write_graph_outputs(g, gamma_flop.out, gamma_flop.dot);
    });

    CLI::App* gconi = gamma->add_subcommand("conifold", "conifold rewrite at an edge");
    gconi->add_option("--in", gamma_coni.in, "graph JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    gconi->add_option("--edge", gamma_coni.edge, "edge id (index in the file)")
        ->required();
    gconi->add_option("--out", gamma_coni.out, "graph JSON output")->required();
    gconi->add_option("--dot", gamma_coni.dot, "also write a DOT rendering");
    gconi->callback([&] {
        FibrationGraph g = graph_from_json(load_json_file(gamma_coni.in));
        g.conifold(gamma_coni.edge);
        write_graph_outputs(g, gamma_coni.out, gamma_coni.dot);
    });

    // ---- monodromy ----
    CLI::App* monodromy = app.add_subcommand(
        "monodromy", "semistable invariants, vertex classification, mirror duals");
    monodromy->require_subcommand(1);

    CLI::App* mfixed = monodromy->add_subcommand(
        "fixed", "fixed space and semistable invariant of one matrix");
    mfixed->add_option("--in", mono_fixed.in, "matrix JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    mfixed->add_option("--out", mono_fixed.out, "write the JSON report here");
    mfixed->callback([&] {
        const IntMatrix m = matrix_from_json(load_json_file(mono_fixed.in));
        Json doc;
        try {
            doc["k"] = semistable_k(m);
            doc["semistable"] = true;
        } catch (const std::domain_error&) {
            doc["k"] = nullptr;
            doc["semistable"] = false;
        }
        doc["fixed_dimension"] = fixed_space(m).size();
        doc["fixed_basis"] = fixed_space(m);
        emit(doc, mono_fixed.out);
    });

    CLI::App* mclassify = monodromy->add_subcommand(
        "classify", "positive/negative classification of a monodromy triple");
    mclassify->add_option("--in", mono_classify.in, "triple JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    mclassify->add_option("--out", mono_classify.out, "write the JSON report here");
    mclassify->callback([&] {
        const std::vector<IntMatrix> triple =
            matrix_list_from_json(load_json_file(mono_classify.in));
        Json doc;
        doc["class"] = to_string(classify_vertex(triple));
        doc["common_fixed_dimension"] = common_fixed_dimension(triple);
        emit(doc, mono_classify.out);
    });

    CLI::App* mmirror = monodromy->add_subcommand(
        "mirror", "inverse-transpose dual of a matrix or matrix list");
    mmirror->add_option("--in", mono_mirror.in, "matrix or list JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    mmirror->add_option("--out", mono_mirror.out, "JSON output")->required();
    mmirror->callback([&] {
        const Json doc = load_json_file(mono_mirror.in);
        Json out;
        if (doc.contains("matrices")) {
            std::vector<IntMatrix> list = matrix_list_from_json(doc);
            for (IntMatrix& m : list) m = mirror_dual(m);
            out = matrix_list_to_json(list);
        } else {
            out = matrix_to_json(mirror_dual(matrix_from_json(doc)));
        }
        write_text_file(mono_mirror.out, out.dump(2) + "\n");
    });

    CLI::App* mk3 = monodromy->add_subcommand(
        "k3check", "validate a 24-term semistable elliptic monodromy list");
    mk3->add_option("--in", mono_k3.in, "matrix list JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    mk3->add_option("--out", mono_k3.out, "write the JSON report here");
    mk3->callback([&] {
        const K3ListReport r =
            validate_k3_list(matrix_list_from_json(load_json_file(mono_k3.in)));
        Json doc;
        doc["count"] = r.count;
        doc["count_is_24"] = r.count_is_24;
        doc["all_k_one"] = r.all_k_one;
        doc["product_is_identity"] = r.product_is_identity;
        doc["bad_k_indices"] = r.bad_k_indices;
        doc["pass"] = r.pass();
        emit(doc, mono_k3.out);
    });

    // ---- local ----
    CLI::App* local = app.add_subcommand(
        "local", "Harvey-Lawson / piecewise fibration local models");
    local->require_subcommand(1);

    CLI::App* lhl = local->add_subcommand(
        "hl", "evaluate the fibration map at a point of C^3");
    lhl->add_option("--point", local_hl.point,
                    "3 real coordinates, or 6 as re/im pairs")
        ->expected(3, 6)
        ->required();
    lhl->add_option("--out", local_hl.out, "write the JSON report here");
    lhl->callback([&] {
        if (local_hl.point.size() != 3 && local_hl.point.size() != 6)
            throw std::runtime_error("--point takes 3 or 6 values");
        const std::array<double, 3> v = hl_map(parse_c3(local_hl.point));
        Json doc;
        doc["value"] = v;
        doc["stratum"] = to_string(hl_discriminant_classify(v, 1e-9));
        emit(doc, local_hl.out);
    });

    CLI::App* lclassify = local->add_subcommand(
        "hl-classify", "classify a base point against the discriminant rays");
    lclassify->add_option("--x", local_classify.x, "base point coordinates")
        ->expected(3)
        ->required();
    lclassify->add_option("--tol", local_classify.tol, "classification tolerance");
    lclassify->add_option("--out", local_classify.out, "write the JSON report here");
    lclassify->callback([&] {
        const std::array<double, 3> x = {local_classify.x[0], local_classify.x[1],
                                         local_classify.x[2]};
        Json doc;
        doc["stratum"] = to_string(hl_discriminant_classify(x, local_classify.tol));
        doc["ribbon"] = ribbon_contains(x, local_classify.tol);
        emit(doc, local_classify.out);
    });

    CLI::App* ljoyce = local->add_subcommand(
        "joyce", "round-trip fibration check on seeded random points");
    ljoyce->add_option("--sign", local_joyce.sign, "+ or -")->required();
    ljoyce->add_option("--roundtrip", local_joyce.roundtrip, "number of trials");
    ljoyce->add_option("--seed", local_joyce.seed, "RNG seed");
    ljoyce->add_option("--tol", local_joyce.tol, "membership tolerance");
    ljoyce->add_option("--out", local_joyce.out, "write the JSON report here");
    ljoyce->callback([&] {
        const int sign = parse_sign(local_joyce.sign);
        if (local_joyce.roundtrip < 1)
            throw std::runtime_error("--roundtrip must be positive");
        SplitMix64 rng(local_joyce.seed);
        int passes = 0;
        for (int k = 0; k < local_joyce.roundtrip; ++k) {
            const C3 z = {Complex(rng.uniform(-3, 3), rng.uniform(-3, 3)),
                          Complex(rng.uniform(-3, 3), rng.uniform(-3, 3)),
                          Complex(rng.uniform(-3, 3), rng.uniform(-3, 3))};
            if (joyce_roundtrip(sign, z, local_joyce.tol)) ++passes;
        }
        Json doc;
        doc["sign"] = local_joyce.sign;
        doc["trials"] = local_joyce.roundtrip;
        doc["passes"] = passes;
        doc["all_pass"] = passes == local_joyce.roundtrip;
        emit(doc, local_joyce.out);
    });

    CLI::App* lslag = local->add_subcommand(
        "slag", "special-Lagrangian residuals on sampled fiber points");
    lslag->add_option("--model", local_slag.model, "hl or joyce")->required();
    lslag->add_option("--target", local_slag.target,
                      "hl: base point x1 x2 x3; joyce: a c_re c_im")
        ->expected(3)
        ->required();
    lslag->add_option("--sign", local_slag.sign, "+ or - (joyce model)");
    lslag->add_option("--samples", local_slag.samples, "number of fiber points");
    lslag->add_option("--seed", local_slag.seed, "RNG seed");
    lslag->add_option("--step", local_slag.step, "finite-difference step");
    lslag->add_option("--out", local_slag.out, "write the JSON report here");
    lslag->callback([&] {
        if (local_slag.samples < 1)
            throw std::runtime_error("--samples must be positive");
        FiberSample sample;
        SlagConstraints constraints;
        if (local_slag.model == "hl") {
            const std::array<double, 3> x = {local_slag.target[0],
                                             local_slag.target[1],
                                             local_slag.target[2]};
            sample = sample_hl_fiber(x, local_slag.samples, local_slag.seed);
            constraints = hl_constraints(x);
        } else if (local_slag.model == "joyce") {
            const int sign = parse_sign(local_slag.sign);
            const double a = local_slag.target[0];
            const Complex c(local_slag.target[1], local_slag.target[2]);
            sample = sample_joyce_fiber(sign, a, c, local_slag.samples,
                                        local_slag.seed);
            constraints = joyce_constraints(a, c);
        } else {
            throw std::runtime_error("--model must be 'hl' or 'joyce'");
        }
        const SlagReport r = slag_check(sample.points, constraints, local_slag.step);
        Json doc;
        doc["max_omega"] = r.max_omega;
        doc["max_im_ratio"] = r.max_im_ratio;
        doc["samples"] = r.samples;
        doc["flagged"] = r.flagged;
        doc["step"] = r.step;
        doc["sampler_failures"] = sample.failures;
        emit(doc, local_slag.out);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const syz::FileError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cout << Json{{"error", e.what()}}.dump(2) << "\n";
        return 1;
    }

    if (app.get_subcommands().empty()) {
        std::cerr << app.help();
        return 2;
    }
    return 0;
}
