// Acceptance suite: one criterion per test case, each printing a single
// pass/fail line.  Tolerances and time limits are pinned in the
// assertions below; the unit suites carry the fine-grained diagnostics.

#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "syz/amoeba.hpp"
#include "syz/common.hpp"
#include "syz/gamma.hpp"
#include "syz/io_json.hpp"
#include "syz/local_models.hpp"
#include "syz/monodromy.hpp"
#include "syz/polytope.hpp"
#include "syz/ronkin.hpp"
#include "syz/spine.hpp"

using namespace syz;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = 3.14159265358979323846;

class Criterion {
  public:
    Criterion(int number, std::string title)
        : number_(number), title_(std::move(title)),
          start_(std::chrono::steady_clock::now()) {}

    bool expect(bool condition, const char* label) {
        if (!condition) {
            ok_ = false;
            std::printf("  criterion %d check failed: %s\n", number_, label);
        }
        return condition;
    }

    void finish(double time_limit_seconds) {
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
                .count();
        expect(elapsed < time_limit_seconds, "time limit");
        std::printf("criterion %d: %s - %s (%.1fs)\n", number_,
                    ok_ ? "PASS" : "FAIL", title_.c_str(), elapsed);
        std::fflush(stdout);
        REQUIRE(ok_);
    }

  private:
    int number_;
    std::string title_;
    std::chrono::steady_clock::time_point start_;
    bool ok_ = true;
};

LaurentPolynomial standard_line() {
    return LaurentPolynomial(
        2, {Term{{0, 0}, Complex(1, 0)}, Term{{1, 0}, Complex(1, 0)},
            Term{{0, 1}, Complex(1, 0)}});
}

std::vector<IntMatrix> positive_triple() {
    return {IntMatrix(3, {1, 0, 1, 0, 1, 0, 0, 0, 1}),
            IntMatrix(3, {1, 0, 0, 0, 1, 1, 0, 0, 1}),
            IntMatrix(3, {1, 0, -1, 0, 1, -1, 0, 0, 1})};
}

std::vector<IntMatrix> negative_triple() {
    return {IntMatrix(3, {1, 0, 1, 0, 1, 0, 0, 0, 1}),
            IntMatrix(3, {1, 1, 0, 0, 1, 0, 0, 0, 1}),
            IntMatrix(3, {1, -1, -1, 0, 1, 0, 0, 0, 1})};
}

IntMatrix random_unimodular(SplitMix64& rng) {
    IntMatrix w = IntMatrix::identity(3);
    for (int step = 0; step < 10; ++step) {
        const int i = static_cast<int>(rng.next_below(3));
        int j = static_cast<int>(rng.next_below(3));
        if (j == i) j = (j + 1) % 3;
        IntMatrix shear = IntMatrix::identity(3);
        shear.at(i, j) = rng.next_below(2) == 0 ? 1 : -1;
        w = w * shear;
    }
    return w;
}

std::map<std::array<std::int64_t, 2>, int> ray_directions(const TropicalSpine& s) {
    std::map<std::array<std::int64_t, 2>, int> dirs;
    for (const SpineEdge& e : s.edges)
        if (e.kind == SpineEdge::Kind::Ray) ++dirs[e.direction];
    return dirs;
}

}  // namespace

TEST_CASE("criterion 1") {
    Criterion crit(1, "spine of the standard line equals the three-ray corner locus");

    // Measured pipeline: raster, component orders, spine.
    const LaurentPolynomial f = standard_line();
    const AmoebaRaster raster = rasterize_amoeba(f, Window(-3, 3, -3, 3, 160));
    const std::vector<ComplementComponent> comps =
        complement_components(raster, f, 256);
    const TropicalSpine spine = build_spine(comps);
    crit.expect(spine.vertices.size() == 1, "single trivalent vertex");
    crit.expect(spine.edges.size() == 3, "three edges");
    const auto dirs = ray_directions(spine);
    crit.expect(dirs.size() == 3, "three distinct ray directions");
    crit.expect(dirs.count({1, 1}) == 1, "ray along x = y >= 0");
    crit.expect(dirs.count({-1, 0}) == 1, "ray along y = 0, x <= 0");
    crit.expect(dirs.count({0, -1}) == 1, "ray along x = 0, y <= 0");
    if (!spine.vertices.empty()) {
        crit.expect(std::abs(spine.vertices[0].x.to_double()) < 5e-3,
                    "vertex x within measured-constant tolerance");
        crit.expect(std::abs(spine.vertices[0].y.to_double()) < 5e-3,
                    "vertex y within measured-constant tolerance");
    }

    // Exact corner locus of max(0, x, y) in rational arithmetic.
    const TropicalSpine exact = build_spine(std::vector<SpineFunction>{
        {{0, 0}, Rational(0)}, {{1, 0}, Rational(0)}, {{0, 1}, Rational(0)}});
    crit.expect(exact.vertices.size() == 1 &&
                    exact.vertices[0] == RationalPoint{Rational(0), Rational(0)},
                "exact vertex at the origin");
    crit.expect(ray_directions(exact) == dirs, "exact and measured rays agree");
    const BalanceReport balance = check_balancing(exact);
    crit.expect(balance.balanced, "exact balancing");

    // Correspondence with the local-model discriminant rays under
    // (x2, x3) <-> (x, y).
    std::set<HLStratum> strata;
    for (const SpineEdge& e : exact.edges) {
        const double t = 5.0;
        const std::array<double, 3> base = {
            0.0, t * static_cast<double>(e.direction[0]),
            t * static_cast<double>(e.direction[1])};
        strata.insert(hl_discriminant_classify(base, 1e-9));
    }
    crit.expect(strata == std::set<HLStratum>{HLStratum::RayI, HLStratum::RayII,
                                              HLStratum::RayIII},
                "rays hit the three discriminant strata exactly once each");

    crit.finish(30.0);
}

TEST_CASE("criterion 2") {
    Criterion crit(2, "Ronkin values, component orders, and convexity at grid 512");

    const LaurentPolynomial f = standard_line();
    const RonkinValue tentacle = ronkin_value(f, {10.0, 0.0}, 512);
    crit.expect(std::abs(tentacle.value - 10.0) < 1e-3, "N(10,0) = 10 within 1e-3");

    const AmoebaRaster raster = rasterize_amoeba(f, Window(-3, 3, -3, 3, 160));
    const std::vector<ComplementComponent> comps =
        complement_components(raster, f, 512);
    std::set<Exponent> orders;
    bool constants_small = true;
    for (const ComplementComponent& c : comps) {
        if (!c.order) continue;
        orders.insert(*c.order);
        constants_small = constants_small && std::abs(c.ronkin_constant) < 2e-3;
    }
    crit.expect(orders == std::set<Exponent>{{0, 0}, {1, 0}, {0, 1}},
                "component orders {(0,0),(1,0),(0,1)}");
    crit.expect(constants_small, "all |c_E| < 2e-3");

    SplitMix64 rng(2026);
    bool convex = true;
    for (int trial = 0; trial < 100 && convex; ++trial) {
        const std::vector<double> a = {rng.uniform(-3, 3), rng.uniform(-3, 3)};
        const std::vector<double> b = {rng.uniform(-3, 3), rng.uniform(-3, 3)};
        const std::vector<double> mid = {(a[0] + b[0]) / 2, (a[1] + b[1]) / 2};
        const RonkinValue va = ronkin_value(f, a, 512);
        const RonkinValue vb = ronkin_value(f, b, 512);
        const RonkinValue vm = ronkin_value(f, mid, 512);
        const double slack =
            3.0 * (va.error_estimate + vb.error_estimate + vm.error_estimate) + 1e-6;
        convex = vm.value <= 0.5 * (va.value + vb.value) + slack;
    }
    crit.expect(convex, "midpoint convexity on 100 random pairs");

    crit.finish(120.0);
}

TEST_CASE("criterion 3") {
    Criterion crit(3, "Viro quintic has exactly six amoeba holes, the Baker genus");

    const LaurentPolynomial f = viro_polynomial(5);
    crit.expect(baker_genus(f) == 6, "Baker genus of the quintic triangle is 6");
    crit.expect(newton_polytope(f).interior_lattice_points().size() == 6,
                "six interior lattice points by enumeration");

    const std::set<Exponent> expected_orders = {{1, 1}, {2, 1}, {3, 1},
                                                {1, 2}, {2, 2}, {1, 3}};
    for (const int res : {800, 1600}) {
        const AmoebaRaster raster =
            rasterize_amoeba(f, Window(-12, 16, -12, 16, res));
        const std::vector<ComplementComponent> comps =
            complement_components(raster, f, 256);
        std::size_t bounded = 0;
        std::set<Exponent> bounded_orders;
        for (const ComplementComponent& c : comps) {
            if (!c.bounded) continue;
            ++bounded;
            if (c.order) bounded_orders.insert(*c.order);
        }
        crit.expect(bounded == 6, "exactly six bounded components");
        crit.expect(bounded_orders == expected_orders,
                    "hole orders are the interior lattice points");
    }

    crit.finish(300.0);
}

TEST_CASE("criterion 4") {
    Criterion crit(4, "monodromy triples classify, dualize, and stay conjugation-invariant");

    const std::vector<IntMatrix> pos = positive_triple();
    const std::vector<IntMatrix> neg = negative_triple();
    crit.expect(classify_vertex(pos) == TripleClass::Positive, "positive triple");
    crit.expect(classify_vertex(neg) == TripleClass::Negative, "negative triple");
    crit.expect((pos[0] * pos[1] * pos[2]).is_identity(), "positive product identity");
    crit.expect((neg[0] * neg[1] * neg[2]).is_identity(), "negative product identity");
    crit.expect(common_fixed_dimension(pos) == 2, "positive fixed dimension 2");
    crit.expect(common_fixed_dimension(neg) == 1, "negative fixed dimension 1");
    crit.expect(classify_vertex(mirror_dual_triple(pos)) == TripleClass::Negative,
                "mirror dual swaps positive to negative");
    crit.expect(classify_vertex(mirror_dual_triple(neg)) == TripleClass::Positive,
                "mirror dual swaps negative to positive");

    bool all_k_one = true;
    for (const std::vector<IntMatrix>* triple : {&pos, &neg})
        for (const IntMatrix& m : *triple) all_k_one = all_k_one && semistable_k(m) == 1;
    crit.expect(all_k_one, "semistable k = 1 for all six matrices");

    SplitMix64 rng(40);
    bool invariant = true;
    for (int trial = 0; trial < 50 && invariant; ++trial) {
        const IntMatrix w = random_unimodular(rng);
        const IntMatrix w_inv = inverse(w);
        std::vector<IntMatrix> conj_pos, conj_neg;
        for (const IntMatrix& m : pos) conj_pos.push_back(w * m * w_inv);
        for (const IntMatrix& m : neg) conj_neg.push_back(w * m * w_inv);
        invariant = classify_vertex(conj_pos) == TripleClass::Positive &&
                    classify_vertex(conj_neg) == TripleClass::Negative;
        for (const IntMatrix& m : conj_pos)
            invariant = invariant && semistable_k(m) == 1;
        for (const IntMatrix& m : conj_neg)
            invariant = invariant && semistable_k(m) == 1;
    }
    crit.expect(invariant, "invariance under 50 random SL(3,Z) conjugations");

    crit.finish(1.0);
}

TEST_CASE("criterion 5") {
    Criterion crit(5, "quintic graph counts and Euler numbers match the closed forms");

    const FibrationGraph g = build_gamma_simplex(5);
    crit.expect(g.count(VertexKind::Negative) == 250, "250 negative vertices");
    crit.expect(g.count(VertexKind::Positive) == 50, "50 positive vertices");
    crit.expect(euler_characteristic(g) == -200, "Euler number -200");
    crit.expect(g.is_trivalent(), "trivalent");
    crit.expect(g.is_connected(), "connected");
    crit.expect(euler_characteristic(mirror_graph(g)) == 200, "mirror Euler +200");

    bool closed_forms = true;
    for (int d = 1; d <= 6; ++d) {
        const FibrationGraph gd = build_gamma_simplex(d);
        closed_forms = closed_forms &&
                       gd.count(VertexKind::Negative) ==
                           static_cast<std::size_t>(10 * d * d) &&
                       gd.count(VertexKind::Positive) ==
                           static_cast<std::size_t>(10 * d) &&
                       euler_characteristic(gd) == 10 * d - 10 * d * d &&
                       gd.is_trivalent() && gd.is_connected();
    }
    crit.expect(closed_forms, "closed forms 10d^2, 10d for d = 1..6");

    crit.finish(5.0);
}

TEST_CASE("criterion 6") {
    Criterion crit(6, "flop preserves the invariants and conifold tracks the sign rule");

    // Flops: a random walk of 100 valid moves on the degree-3 graph.
    FibrationGraph g = build_gamma_simplex(3);
    const std::size_t v0 = g.vertex_count(), e0 = g.edge_count();
    const long chi0 = euler_characteristic(g);
    SplitMix64 rng(60);
    int flops = 0;
    bool invariants = true;
    while (flops < 100) {
        std::vector<int> ids;
        for (const auto& [id, e] : g.edges()) ids.push_back(id);
        const int pick = ids[rng.next_below(ids.size())];
        try {
            g.flop(pick);
        } catch (const std::invalid_argument&) {
            continue;  // loop edge or loop arms; pick again
        }
        ++flops;
        invariants = invariants && g.vertex_count() == v0 && g.edge_count() == e0 &&
                     euler_characteristic(g) == chi0 && g.is_trivalent() &&
                     g.is_connected();
    }
    crit.expect(invariants, "100 flops preserve counts, Euler number, and shape");

    // Conifolds: fresh copies, one move each, including a forced
    // negative-negative case.
    const FibrationGraph base = build_gamma_simplex(3);
    int conifolds = 0;
    bool sign_rule = true;
    bool saw_negative_pair = false;
    auto sign_of = [](VertexKind k) { return k == VertexKind::Positive ? 1 : -1; };
    while (conifolds < 100) {
        std::vector<int> ids;
        for (const auto& [id, e] : base.edges()) ids.push_back(id);
        const int pick = conifolds == 0
                             ? [&] {  // force a negative-negative edge first
                                   for (const auto& [id, e] : base.edges())
                                       if (base.vertex(e.ends[0]).kind ==
                                               VertexKind::Negative &&
                                           base.vertex(e.ends[1]).kind ==
                                               VertexKind::Negative &&
                                           !base.is_loop(id))
                                           return id;
                                   return ids[0];
                               }()
                             : ids[rng.next_below(ids.size())];
        if (base.is_loop(pick)) continue;
        const GraphEdge& edge = base.edge(pick);
        const int expected_delta = -(sign_of(base.vertex(edge.ends[0]).kind) +
                                     sign_of(base.vertex(edge.ends[1]).kind));
        const bool negative_pair = expected_delta == 2;
        FibrationGraph copy = base;
        try {
            copy.conifold(pick);
        } catch (const std::invalid_argument&) {
            continue;  // loop edge or arm back into the pair; pick again
        }
        ++conifolds;
        saw_negative_pair = saw_negative_pair || negative_pair;
        sign_rule = sign_rule &&
                    copy.vertex_count() == base.vertex_count() - 2 &&
                    copy.edge_count() == base.edge_count() - 3 &&
                    euler_characteristic(copy) - euler_characteristic(base) ==
                        expected_delta;
    }
    crit.expect(sign_rule, "100 conifolds satisfy the sign rule");
    crit.expect(saw_negative_pair, "negative-negative case with delta +2 exercised");

    crit.finish(5.0);
}

TEST_CASE("criterion 7") {
    Criterion crit(7, "local fibers verify as special Lagrangian with the model disks");

    // 10^3 fiber points over a generic base point.
    const std::array<double, 3> x = {0.25, 0.31, -0.2};
    const FiberSample sample = sample_hl_fiber(x, 1000, 7);
    crit.expect(sample.failures == 0, "sampler produced every point");
    const SlagReport report = slag_check(sample.points, hl_constraints(x), 1e-5);
    crit.expect(report.flagged == 0, "all sampled points smooth");
    crit.expect(report.max_omega < 1e-5, "symplectic residual < 1e-5");
    crit.expect(report.max_im_ratio < 1e-5, "volume-phase residual < 1e-5");

    // Negative controls: a complex line and a Lagrangian-but-not-special torus.
    const C3 u = {Complex(1, 0), Complex(0, 0), Complex(0, 0)};
    const C3 iu = {Complex(0, 1), Complex(0, 0), Complex(0, 0)};
    crit.expect(std::abs(kahler_omega(u, iu) - 2.0) < 1e-12,
                "complex line rejected: omega(u, iu) = 2");
    const C3 z = {std::polar(1.0, 0.3), std::polar(1.0, 0.7), std::polar(1.0, 1.1)};
    const C3 v1 = {Complex(0, 1) * z[0], Complex(0, 0), Complex(0, 0)};
    const C3 v2 = {Complex(0, 0), Complex(0, 1) * z[1], Complex(0, 0)};
    const C3 v3 = {Complex(0, 0), Complex(0, 0), Complex(0, 1) * z[2]};
    const Complex vol = holomorphic_volume(v1, v2, v3);
    crit.expect(std::abs(kahler_omega(v1, v2)) < 1e-12 &&
                    std::abs(kahler_omega(v1, v3)) < 1e-12 &&
                    std::abs(kahler_omega(v2, v3)) < 1e-12,
                "torus is Lagrangian");
    crit.expect(std::abs(vol.imag()) / std::abs(vol) > 0.3,
                "torus rejected as special: volume phase is order one");

    // Round trips on 10^4 seeded points for both signs.
    SplitMix64 rng(71);
    bool round_trips = true;
    for (int trial = 0; trial < 10000 && round_trips; ++trial) {
        const C3 p = {Complex(rng.uniform(-3, 3), rng.uniform(-3, 3)),
                      Complex(rng.uniform(-3, 3), rng.uniform(-3, 3)),
                      Complex(rng.uniform(-3, 3), rng.uniform(-3, 3))};
        round_trips = joyce_roundtrip(+1, p, 1e-9) && joyce_roundtrip(-1, p, 1e-9);
    }
    crit.expect(round_trips, "10^4 round trips for both signs at tol 1e-9");

    // Disk boundary circles and areas for a in {0.1, 1, 10}.
    bool disks = true;
    for (const double a : {0.1, 1.0, 10.0}) {
        const double radius = std::sqrt(2.0 * a);
        const int segments = 4096;
        double area = 0.0;
        for (int k = 0; k < segments && disks; ++k) {
            const double t0 = 2.0 * kPi * k / segments;
            const double t1 = 2.0 * kPi * (k + 1) / segments;
            const Complex z1 = std::polar(radius, t0);
            const Complex z1n = std::polar(radius, t1);
            area += 0.5 * (z1.real() * z1n.imag() - z1n.real() * z1.imag());
            disks = disks &&
                    joyce_N_member(+1, a, Complex(0, 0), {z1, Complex(0, 0), Complex(0, 0)}) &&
                    joyce_N_member(-1, a, Complex(0, 0), {z1, Complex(0, 0), Complex(0, 0)});
        }
        disks = disks && std::abs(area - disk_area(a)) < 1e-3 * std::max(1.0, a);
    }
    crit.expect(disks, "boundary circles lie on both fibers with area 2*pi*|a|");

    // The a = 0 fiber exhibits its rank-deficient point.
    const SlagReport singular = slag_check({{Complex(0, 0), Complex(0, 0), Complex(0, 0)}},
                                           joyce_constraints(0.0, Complex(0, 0)));
    crit.expect(singular.flagged == 1, "a = 0 singular point flagged");

    crit.finish(120.0);
}

TEST_CASE("criterion 8") {
    Criterion crit(8, "24-term semistable list validates; single perturbations break one check");

    const std::vector<IntMatrix> list = k3_standard_list();
    const K3ListReport clean = validate_k3_list(list);
    crit.expect(clean.pass(), "standard list passes");
    crit.expect(clean.count == 24 && clean.all_k_one && clean.product_is_identity,
                "all three fields hold");

    // Conjugation by a generic unimodular matrix keeps each factor
    // semistable with k = 1 but moves the product off the identity.
    const IntMatrix c(2, {2, 1, 1, 1});
    const IntMatrix c_inv = inverse(c);
    bool exactly_one = true;
    for (std::size_t i = 0; i < list.size() && exactly_one; ++i) {
        std::vector<IntMatrix> perturbed = list;
        perturbed[i] = c * list[i] * c_inv;
        const K3ListReport r = validate_k3_list(perturbed);
        exactly_one = !r.pass() && r.all_k_one && !r.product_is_identity &&
                      r.count_is_24;
    }
    crit.expect(exactly_one,
                "each of the 24 perturbations breaks exactly the product check");

    crit.finish(1.0);
}

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

int run_cli(const std::string& args, int workers, const fs::path& stdout_path) {
    const std::string command = "SYZ_THREADS=" + std::to_string(workers) + " \"" +
                                SYZ_CLI_PATH "\" " + args + " > " +
                                stdout_path.string() + " 2> /dev/null";
    return WEXITSTATUS(std::system(command.c_str()));
}

}  // namespace

TEST_CASE("criterion 9") {
    Criterion crit(9, "CLI outputs are byte-identical across 1, 2, and 8 workers");

    const fs::path scratch = "acceptance_scratch";
    fs::remove_all(scratch);
    fs::create_directories(scratch);
    const fs::path poly = scratch / "line.json";
    write_text_file(poly.string(), laurent_to_json(standard_line()).dump() + "\n");

    const std::vector<std::pair<std::string, std::string>> golden = {
        {"spine", "spine --poly " + poly.string() +
                      " --window -3 3 -3 3 --res 64 --grid 64 --out {OUT}.svg"},
        {"amoeba", "amoeba --poly " + poly.string() +
                       " --window -4 4 -4 4 --res 48 --out {OUT}.csv"},
        {"compactify",
         "compactify --poly " + poly.string() + " --res 64 --out {OUT}.csv"},
        {"ronkin", "ronkin --poly " + poly.string() + " --point 10 0 --grid 256"},
        {"components", "components --poly " + poly.string() +
                           " --window -4 4 -4 4 --res 64 --grid 64"},
    };

    for (const auto& [name, templ] : golden) {
        std::vector<std::string> file_bytes, stdout_bytes;
        bool all_zero = true;
        for (const int workers : {1, 2, 8}) {
            const fs::path out_base =
                scratch / (name + "_w" + std::to_string(workers));
            std::string args = templ;
            const std::size_t slot = args.find("{OUT}");
            fs::path out_file;
            if (slot != std::string::npos) {
                args.replace(slot, 5, out_base.string());
                out_file = out_base.string() +
                           args.substr(args.rfind('.'));  // .svg or .csv
            }
            const fs::path captured = scratch / (name + "_stdout_" +
                                                 std::to_string(workers) + ".txt");
            all_zero = all_zero && run_cli(args, workers, captured) == 0;
            stdout_bytes.push_back(read_file(captured));
            if (!out_file.empty()) file_bytes.push_back(read_file(out_file));
        }
        crit.expect(all_zero, (name + " exits zero for every worker count").c_str());
        for (std::size_t k = 1; k < stdout_bytes.size(); ++k)
            crit.expect(stdout_bytes[k] == stdout_bytes[0],
                        (name + " stdout is byte-identical").c_str());
        for (std::size_t k = 1; k < file_bytes.size(); ++k)
            crit.expect(file_bytes[k] == file_bytes[0],
                        (name + " output file is byte-identical").c_str());
    }

    crit.finish(120.0);
}
