#include "a2b/io.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <random>

using namespace a2b;

namespace {

struct Common {
    std::string scene;
    std::string out;
    long p = 2;
    std::uint64_t seed = 1;
    long samples = 1000;
    std::string suite = "all";
    int grid = 0;
};

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-")
        std::cout << text;
    else
        write_text(path, text);
}

int cmd_gen(const Common& c, int n, int height, const std::string& shape) {
    require_prime(c.p);
    std::mt19937_64 rng(c.seed);
    std::optional<std::vector<Flag>> flags;
    if (shape == "sset") {
        flags = generate_sset(c.p, n, rng);
    } else if (shape == "symmetric") {
        if (n != 3) throw std::invalid_argument("symmetric shape needs 3 flags");
        flags = standard_triple();
    } else if (shape == "four-point") {
        flags = four_point_example(c.p, rng);
    } else if (shape == "duplicate") {
        flags = generate_sset(c.p, std::max(n - 1, 2), rng);
        if (flags) flags->push_back(flags->front());
    } else if (shape == "random") {
        flags = std::vector<Flag>{};
        for (int i = 0; i < n; ++i) flags->push_back(random_flag(rng, height));
    } else {
        throw std::invalid_argument("unknown shape " + shape);
    }
    if (!flags) {
        std::cerr << "generation budget exhausted\n";
        return 4;
    }
    Scene s{c.p, *flags, c.seed};
    auto v = is_sset(s.p, s.flags);
    json j = to_json(s);
    emit(c.out.empty() ? "-" : c.out, j.dump(2) + "\n");
    json summary = {{"is_sset", v.ok}, {"shifts", shift_table(s)}};
    if (!v.ok) summary["certificate"] = v.certificate;
    (c.out.empty() ? std::cerr : std::cout) << summary.dump(2) << "\n";
    return 0;
}

int cmd_tree(const Common& c) {
    Scene s = read_scene(c.scene);
    SSetData d = make_sset_data(s.p, s.flags);
    MetricTree t = build_tree(d);
    if (c.out.empty()) {
        std::cout << tree_dot(t);
    } else {
        write_text(c.out + ".dot", tree_dot(t));
        write_text(c.out + ".json", tree_json(d, t).dump(2) + "\n");
    }
    std::ostream& o = c.out.empty() ? std::cerr : std::cout;
    o << "ends:";
    for (int k = 0; k < t.ends; ++k) o << " eta" << k;
    o << "\n";
    for (const auto& e : t.edges)
        if (e.v >= 0) o << "edge v" << e.u << " - v" << e.v << " length " << to_string(e.len) << " (x sqrt 2)\n";
    int f = four_point_failures(t);
    o << "four-point condition: " << (f == 0 ? "exact pass" : std::to_string(f) + " failures") << "\n";
    return f == 0 ? 0 : 2;
}

int cmd_verify(const Common& c, const std::string& plant) {
    Scene s = read_scene(c.scene);
    VerifyOptions opt;
    opt.suite = c.suite;
    opt.samples = c.samples;
    opt.seed = c.seed;
    if (plant == "slab") {
        opt.plant = VerifyOptions::Plant::SlabPunch;
    } else if (plant == "balls") {
        opt.plant = VerifyOptions::Plant::TwoBalls;
    } else if (plant == "wide") {
        opt.plant = VerifyOptions::Plant::WideDprime;
    } else if (!plant.empty()) {
        throw std::invalid_argument("unknown plant " + plant);
    }
    VerifyResult r;
    try {
        r = run_verify(s.p, s.flags, opt);
    } catch (const std::invalid_argument& e) {
        r.code = 3;
        r.hypothesis_failures.push_back(e.what());
    }
    json j = verify_json(r);
    if (!c.out.empty()) write_text(c.out, j.dump(2) + "\n");
    for (const auto& rep : r.reports)
        std::cout << rep.name << " [" << rep.mode << "] pairs " << rep.pairs << " checks " << rep.checks
                  << " violations " << rep.violations.size() << " seconds " << rep.seconds << "\n";
    for (const auto& h : r.hypothesis_failures) std::cout << "hypothesis failure: " << h << "\n";
    std::cout << "exit " << r.code << "\n";
    return r.code;
}

int cmd_render(const Common& c, const std::string& flat_pair, bool tree) {
    Scene s = read_scene(c.scene);
    if (tree) {
        SSetData d = make_sset_data(s.p, s.flags);
        emit(c.out, render_tree_svg(build_tree(d)));
        return 0;
    }
    int i = 0, j = 1;
    if (!flat_pair.empty()) {
        auto comma = flat_pair.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("--flat expects i,j");
        i = std::stoi(flat_pair.substr(0, comma));
        j = std::stoi(flat_pair.substr(comma + 1));
    }
    RankOneSet r = build_rank_one(s.p, s.flags);
    emit(c.out, render_flat_svg(r, i, j, c.grid));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Convex rank 1 subsets of A2 Euclidean buildings"};
    app.require_subcommand(1);
    Common c;
    int n = 3, height = 4;
    std::string shape = "sset", plant, flat_pair;
    bool tree = false;

    auto* gen = app.add_subcommand("gen", "generate a scene");
    gen->add_option("--p", c.p, "prime")->check(CLI::Range(2, 97));
    gen->add_option("--n", n, "number of flags")->check(CLI::Range(1, 12));
    gen->add_option("--height", height, "entry height of random flags");
    gen->add_option("--seed", c.seed);
    gen->add_option("--shape", shape, "sset | symmetric | four-point | duplicate | random");
    gen->add_option("--out", c.out);

    auto* tr = app.add_subcommand("tree", "build the quotient tree");
    tr->add_option("--scene", c.scene)->required();
    tr->add_option("--out", c.out, "prefix for .dot and .json");

    auto* ver = app.add_subcommand("verify", "run verification suites");
    ver->add_option("--scene", c.scene)->required();
    ver->add_option("--suite", c.suite, "busemann | thicken | kset | cset | rank1 | all");
    ver->add_option("--samples", c.samples);
    ver->add_option("--seed", c.seed);
    ver->add_option("--out", c.out);
    ver->add_option("--plant", plant, "self-test: slab | balls | wide");

    auto* ren = app.add_subcommand("render", "draw a flat or the tree as SVG");
    ren->add_option("--scene", c.scene)->required();
    ren->add_option("--flat", flat_pair, "i,j");
    ren->add_flag("--tree", tree);
    ren->add_option("--render-grid", c.grid, "membership heatmap resolution");
    ren->add_option("--out", c.out);

    CLI11_PARSE(app, argc, argv);
    try {
        if (*gen) return cmd_gen(c, n, height, shape);
        if (*tr) return cmd_tree(c);
        if (*ver) return cmd_verify(c, plant);
        if (*ren) return cmd_render(c, flat_pair, tree);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
