#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "psrlab/psrlab.hpp"

namespace {

using namespace psrlab;

// A domain error tied to the file it came from.
struct file_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class T, class Reader>
T load(const std::string& path, Reader read)
{
    std::ifstream in(path);
    if (!in)
        throw file_error(path + ": cannot open file");
    try {
        return read(in);
    } catch (const error& e) {
        throw file_error(path + ": " + e.what());
    }
}

Graph load_graph(const std::string& path) { return load<Graph>(path, [](std::istream& is) { return read_graph(is); }); }
PlaneGraph load_plane(const std::string& path)
{
    return load<PlaneGraph>(path, [](std::istream& is) { return read_plane(is); });
}
Embedding load_map(const std::string& path)
{
    return load<Embedding>(path, [](std::istream& is) { return read_map(is); });
}

void save(const std::string& path, const std::string& text)
{
    std::ofstream out(path);
    out << text;
    if (!out)
        throw file_error(path + ": cannot write file");
}

std::string strip_suffix(const std::string& path, const std::string& suffix)
{
    if (path.size() >= suffix.size() && path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0)
        return path.substr(0, path.size() - suffix.size());
    return path;
}

struct Options {
    std::string family, out, graph, plane, map, mode = "twinfree";
    int n = 0, m = 0, k1 = 1, k2 = 1;
    bool naive = false;
    double max_seconds = 300;
    unsigned long long seed = 0;
};

int construct(const Options& o, CLI::App& cmd)
{
    auto need = [&](const char* flag) {
        if (cmd.count(flag) == 0)
            throw CLI::RequiredError(std::string(flag) + " is required for --family " + o.family);
    };
    FamilyInstance fi;
    if (o.family == "example11" || o.family == "example11p") {
        need("--n");
        fi = example_1_1(o.n, o.family == "example11p");
    } else if (o.family == "example12") {
        need("--n");
        fi = example_1_2(o.n);
    } else if (o.family == "ddw") {
        need("--m");
        fi = decorated_double_wheel(o.m);
    } else {
        need("--m");
        fi = general_family(o.m, o.k1, o.k2);
    }
    save(o.out + ".graph", to_graph_text(fi.host));
    save(o.out + ".plane", to_plane_text(fi.witness));
    save(o.out + ".map", to_map_text(fi.proof_map));
    std::cout << "e(G)=" << fi.predicted_host_edges << " e(H)=" << fi.predicted_witness_edges
              << " ratio=" << to_string(fi.predicted_ratio) << '\n';
    return 0;
}

int check(const Options& o)
{
    const Graph g = load_graph(o.graph);
    const PlaneGraph h = load_plane(o.plane);
    auto v = is_plane_saturated(g, h);
    if (v.saturated) {
        std::cout << "SATURATED\n";
        return 0;
    }
    std::cout << "ADDABLE " << v.pair.first << ' ' << v.pair.second << " face " << v.face << '\n';
    write_map(std::cout, v.witness);
    return 0;
}

int psr(const Options& o)
{
    const Graph g = load_graph(o.graph);
    PsrResult r;
    if (o.naive) {
        r = psr_naive(g);
    } else {
        PsrLimits lim;
        lim.max_seconds = o.max_seconds;
        r = psr_exact(g, lim);
    }
    const std::string out = o.out.empty() ? strip_suffix(o.graph, ".graph") + ".witness.plane" : o.out;
    save(out, to_plane_text(r.witness));
    std::cout << to_string(r.value) << '\n';
    return 0;
}

int classify(const Options& o)
{
    const Graph g = load_graph(o.graph);
    for (auto& cls : twins_partition(g).classes) {
        std::cout << "class";
        for (vertex v : cls)
            std::cout << ' ' << v;
        std::cout << '\n';
    }
    const KProfile k = classify_k(g);
    std::cout << "k1=" << k.k1 << " k2=" << k.k2 << '\n';
    return 0;
}

int audit(const Options& o)
{
    const Graph g = load_graph(o.graph);
    const PlaneGraph h = load_plane(o.plane);
    const Embedding phi = load_map(o.map);
    const KProfile k = classify_k(g);
    const AuditMode mode = o.mode == "general" ? AuditMode::general_k(k.k1, k.k2) : AuditMode::twin_free();
    int steps = 0;
    const Embedding normal = normalize_embedding(g, h, phi, k, &steps);
    const AuditReport rep = compute_bounds(g, h, normal, mode);
    std::cout << "mode " << o.mode << " k1=" << k.k1 << " k2=" << k.k2 << " swaps=" << steps
              << " strategy=" << rep.strategy << '\n';
    write_check_table(std::cout, rep);
    write_check_lines(std::cout, rep);
    std::cout << "floor " << (ratio_floor_check(rep) == FloorVerdict::consistent ? "CONSISTENT" : "COUNTEREXAMPLE")
              << '\n';
    std::cout << (rep.all_pass() ? "audit pass" : "audit fail") << '\n';
    return 0;
}

int saturate(const Options& o)
{
    const Graph g = load_graph(o.graph);
    const PlaneGraph h = load_plane(o.plane);
    const PlaneGraph s = saturate_greedily(g, h, o.seed);
    save(o.out, to_plane_text(s));
    std::cout << "e(H)=" << s.edge_count() << " ratio=" << to_string(rational(s.edge_count(), g.edge_count())) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"plane-saturation toolkit"};
    app.require_subcommand(1);
    Options o;

    auto* c_construct = app.add_subcommand("construct", "build a family instance and its saturated witness");
    c_construct->add_option("--family", o.family)
        ->required()
        ->check(CLI::IsMember({"example11", "example11p", "example12", "ddw", "general"}));
    c_construct->add_option("--n", o.n);
    c_construct->add_option("--m", o.m);
    c_construct->add_option("--k1", o.k1);
    c_construct->add_option("--k2", o.k2);
    c_construct->add_option("--out", o.out, "output prefix")->required();

    auto* c_check = app.add_subcommand("check", "decide whether a plane subgraph is saturated");
    c_check->add_option("--graph", o.graph)->required();
    c_check->add_option("--plane", o.plane)->required();

    auto* c_psr = app.add_subcommand("psr", "exact plane-saturation ratio");
    c_psr->add_option("--graph", o.graph)->required();
    c_psr->add_flag("--naive", o.naive, "unreduced reference search (at most 6 vertices)");
    c_psr->add_option("--max-seconds", o.max_seconds)->check(CLI::PositiveNumber);
    c_psr->add_option("--out", o.out, "witness file (default: <graph>.witness.plane)");

    auto* c_classify = app.add_subcommand("classify", "twin classes and the (k1,k2) profile");
    c_classify->add_option("--graph", o.graph)->required();

    auto* c_audit = app.add_subcommand("audit", "evaluate the lower-bound inequalities on an instance");
    c_audit->add_option("--graph", o.graph)->required();
    c_audit->add_option("--plane", o.plane)->required();
    c_audit->add_option("--map", o.map)->required();
    c_audit->add_option("--mode", o.mode)->check(CLI::IsMember({"twinfree", "general"}));

    auto* c_saturate = app.add_subcommand("saturate", "add edges greedily until saturated");
    c_saturate->add_option("--graph", o.graph)->required();
    c_saturate->add_option("--plane", o.plane)->required();
    c_saturate->add_option("--seed", o.seed)->required();
    c_saturate->add_option("--out", o.out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*c_construct)
            return construct(o, *c_construct);
        if (*c_check)
            return check(o);
        if (*c_psr)
            return psr(o);
        if (*c_classify)
            return classify(o);
        if (*c_audit)
            return audit(o);
        return saturate(o);
    } catch (const CLI::ParseError& e) {
        std::cerr << "psrlab: " << e.what() << '\n';
        return 2;
    } catch (const file_error& e) {
        std::cerr << "psrlab: " << e.what() << '\n';
        return 1;
    } catch (const error& e) {
        std::cerr << "psrlab: " << e.what() << '\n';
        return 1;
    }
}
