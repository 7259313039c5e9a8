#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <lampsep/cayley.hpp>
#include <lampsep/errors.hpp>
#include <lampsep/regmaps.hpp>
#include <lampsep/separation.hpp>

namespace {

using namespace lampsep;

constexpr const char* tool_version = "1.0.0";

struct CommonOpts {
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    std::size_t max_vertices = cayley::default_vertex_cap;
    std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--seed", c.seed, "Seed for every randomized step (default 0)");
    cmd->add_option("--jobs", c.jobs, "Worker threads for parallel verification")
        ->check(CLI::Range(1u, 256u));
    cmd->add_option("--max-vertices", c.max_vertices, "Vertex cap for graph enumeration");
    cmd->add_option("--out", c.out,
                    "Report file to write; a .manifest.json sibling records the parameters");
}

nlohmann::json common_to_json(const CommonOpts& c) {
    return {{"seed", c.seed}, {"jobs", c.jobs}, {"max_vertices", c.max_vertices}};
}

// Writes the report body to --out plus a replay manifest, or to stdout when
// no output file was requested. Nothing here depends on the clock, so a rerun
// with the manifest's parameters reproduces the bytes exactly.
void emit(const CommonOpts& c, const std::string& subcommand, nlohmann::json parameters,
          const std::string& body) {
    if (c.out.empty()) {
        std::cout << body;
        return;
    }
    const std::filesystem::path path(c.out);
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream file(path, std::ios::binary);
    if (!file) throw precondition_error("cannot open output file: " + c.out);
    file << body;
    parameters.update(common_to_json(c));
    const nlohmann::json manifest{
        {"schema", "run-manifest/1"},
        {"tool", "lampsep"},
        {"version", tool_version},
        {"subcommand", subcommand},
        {"parameters", parameters},
        {"outputs", nlohmann::json::array({path.filename().string()})},
    };
    std::ofstream mfile(path.string() + ".manifest.json", std::ios::binary);
    if (!mfile) throw precondition_error("cannot open manifest file: " + c.out + ".manifest.json");
    mfile << manifest.dump(2) << "\n";
}

std::string json_body(const nlohmann::json& j) { return j.dump(2) + "\n"; }

struct GroupOpts {
    std::string group = "lamplighter";
    int m = 2;
    long long p = 2;
    long long q = 1;
};

void add_group(CLI::App* cmd, GroupOpts& g) {
    cmd->add_option("--group", g.group, "Group kind: lamplighter | wreath-zz | mpq")
        ->check(CLI::IsMember({"lamplighter", "wreath-zz", "mpq"}));
    cmd->add_option("--m", g.m, "Lamp modulus (lamplighter)");
    cmd->add_option("--p", g.p, "Numerator of the scaling ratio (mpq)");
    cmd->add_option("--q", g.q, "Denominator of the scaling ratio (mpq)");
}

nlohmann::json group_to_json(const GroupOpts& g) {
    return {{"group", g.group}, {"m", g.m}, {"p", g.p}, {"q", g.q}};
}

std::string read_file(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw precondition_error("cannot read input file: " + path);
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

std::vector<long long> parse_int_list(const std::string& text, const std::string& what) {
    std::vector<long long> out;
    std::string item;
    std::istringstream stream(text);
    while (std::getline(stream, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(item, &used));
            if (used != item.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw precondition_error("malformed " + what + " entry: '" + item + "'");
        }
    }
    if (out.empty()) throw precondition_error(what + " list is empty");
    return out;
}

std::map<int, int> parse_perm_text(const std::string& text) {
    std::map<int, int> out;
    std::string item;
    std::istringstream stream(text);
    while (std::getline(stream, item, ',')) {
        const std::size_t colon = item.find(':');
        if (colon == std::string::npos)
            throw precondition_error("malformed permutation entry: '" + item + "'");
        try {
            out[std::stoi(item.substr(0, colon))] = std::stoi(item.substr(colon + 1));
        } catch (const std::exception&) {
            throw precondition_error("malformed permutation entry: '" + item + "'");
        }
    }
    return out;
}

std::string graph_body(const cayley::BoundedDegreeGraph& graph, const std::string& format,
                       nlohmann::json header) {
    if (format == "edgelist") return cayley::to_edgelist(graph);
    if (format == "dot") return cayley::to_dot(graph);
    header["graph"] = cayley::graph_to_json(graph);
    return json_body(header);
}

// ---------------------------------------------------------------------------
// Subcommands.
// ---------------------------------------------------------------------------

void run_ball(const CommonOpts& c, const GroupOpts& g, int radius, const std::string& format) {
    const cayley::GroupSpec spec = cayley::make_group_spec(g.group, g.m, g.p, g.q);
    const cayley::BallComputation ball = cayley::ball(spec, radius, c.max_vertices);
    std::vector<long long> layers(static_cast<std::size_t>(radius) + 1, 0);
    for (int d : ball.distance) ++layers[static_cast<std::size_t>(d)];
    while (!layers.empty() && layers.back() == 0) layers.pop_back();
    nlohmann::json header{
        {"schema", "ball-report/1"},
        {"group", cayley::group_spec_to_json(spec)},
        {"radius", radius},
        {"vertices", ball.graph.vertex_count()},
        {"edges", ball.graph.edge_count()},
        {"max_degree", ball.graph.max_degree()},
        {"layer_sizes", layers},
    };
    nlohmann::json params = group_to_json(g);
    params["radius"] = radius;
    params["format"] = format;
    emit(c, "ball", params, graph_body(ball.graph, format, header));
}

void run_tn(const CommonOpts& c, int n, int m, const std::string& format) {
    const separation::TnDescriptor desc{n, m};
    const cayley::BoundedDegreeGraph graph = separation::tn_graph(desc, c.max_vertices);
    nlohmann::json header{
        {"schema", "tn-report/1"},
        {"n", n},
        {"m", m},
        {"vertices", graph.vertex_count()},
        {"edges", graph.edge_count()},
        {"max_degree", graph.max_degree()},
    };
    emit(c, "tn", {{"n", n}, {"m", m}, {"format", format}}, graph_body(graph, format, header));
}

void run_cut(const CommonOpts& c, const std::string& input, int tn_n, int tn_m, bool force_exact,
             bool force_heuristic, int effort) {
    cayley::BoundedDegreeGraph graph;
    std::string source;
    if (!input.empty()) {
        graph = cayley::parse_edgelist(read_file(input));
        source = "edgelist";
    } else if (tn_n >= 0) {
        graph = separation::tn_graph({tn_n, tn_m}, c.max_vertices);
        source = "tn";
    } else {
        throw precondition_error("cut: provide --input FILE or --n N");
    }
    const bool exact = force_exact ||
                       (!force_heuristic && graph.vertex_count() <= separation::exact_cut_vertex_cap);
    const separation::CutCertificate cert =
        exact ? separation::cut_exact(graph)
              : separation::cut_heuristic_upper(graph, effort, c.seed);
    if (!cert.valid) throw validation_error("cut: certificate failed validation");
    const nlohmann::json body{
        {"schema", "cut-report/1"},
        {"source", source},
        {"vertices", graph.vertex_count()},
        {"certificate", separation::cut_certificate_to_json(cert)},
    };
    const nlohmann::json params{{"input", input},   {"n", tn_n},
                                {"m", tn_m},        {"exact", force_exact},
                                {"heuristic", force_heuristic}, {"effort", effort}};
    emit(c, "cut", params, json_body(body));
}

void run_separator(const CommonOpts& c, int radius, int m, int size,
                   const std::string& subset_file) {
    const cayley::GroupSpec spec = cayley::make_group_spec("lamplighter", m, 0, 0);
    const cayley::BallComputation ball = cayley::ball(spec, radius, c.max_vertices);
    cayley::VertexSubset subset;
    std::string source;
    if (!subset_file.empty()) {
        std::istringstream stream(read_file(subset_file));
        long long v = 0;
        while (stream >> v) subset.push_back(static_cast<int>(v));
        std::sort(subset.begin(), subset.end());
        subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
        source = "subset-file";
    } else if (size > 0) {
        subset = cayley::sample_connected_subgraph(ball.graph, size, c.seed);
        source = "sampled";
    } else {
        subset.resize(static_cast<std::size_t>(ball.graph.vertex_count()));
        std::iota(subset.begin(), subset.end(), 0);
        source = "full-ball";
    }
    const separation::CutCertificate cert = separation::lamplighter_separator(ball.graph, subset);
    if (!cert.valid) throw validation_error("separator: certificate failed validation");
    const nlohmann::json body{
        {"schema", "separator-report/1"},
        {"group", cayley::group_spec_to_json(spec)},
        {"radius", radius},
        {"source", source},
        {"subset_size", subset.size()},
        {"fiber_support", separation::fiber_support_count(ball.graph, subset)},
        {"subset", subset},
        {"certificate", separation::cut_certificate_to_json(cert)},
    };
    const nlohmann::json params{
        {"radius", radius}, {"m", m}, {"size", size}, {"subset_file", subset_file}};
    emit(c, "separator", params, json_body(body));
}

void run_paths(const CommonOpts& c, int n, int m) {
    const separation::TnDescriptor desc{n, m};
    const separation::PathFamilyStats stats = separation::congestion_stats(desc, c.jobs);
    const separation::CongestionBounds bounds = separation::congestion_lower_bound(desc, stats);
    const nlohmann::json body{
        {"schema", "paths-report/1"},
        {"stats", separation::path_family_stats_to_json(stats)},
        {"lower_bounds", separation::congestion_bounds_to_json(bounds)},
    };
    emit(c, "paths", {{"n", n}, {"m", m}}, json_body(body));
}

void run_crossing(const CommonOpts& c, int n, int m, const std::string& cutset_text) {
    const separation::TnDescriptor desc{n, m};
    cayley::VertexSubset cutset;
    std::string source;
    if (!cutset_text.empty()) {
        for (long long v : parse_int_list(cutset_text, "cutset"))
            cutset.push_back(static_cast<int>(v));
        std::sort(cutset.begin(), cutset.end());
        cutset.erase(std::unique(cutset.begin(), cutset.end()), cutset.end());
        source = "explicit";
    } else {
        cutset = separation::cut_exact(separation::tn_graph(desc, c.max_vertices)).cutset;
        source = "exact-minimum";
    }
    const exact::BigRational fraction = separation::verify_crossing(desc, cutset);
    const nlohmann::json body{
        {"schema", "crossing-report/1"},
        {"n", n},
        {"m", m},
        {"source", source},
        {"cutset", cutset},
        {"crossing_fraction", exact::encode_rational(fraction)},
        {"meets_half", fraction >= exact::BigRational(1, 2)},
    };
    emit(c, "crossing", {{"n", n}, {"m", m}, {"cutset", cutset_text}}, json_body(body));
}

struct MapOpts {
    std::string map = "affine";
    int radius = 6;
    std::string a = "2";
    std::string b = "1";
    std::string val = "arch";
    long long p = 2;
    long long q = 1;
    std::string sigma = "0:1,1:0";
    int big_shift = 2;
    bool gap_scan = false;
    int window_lo = -3;
    int window_hi = 3;
};

regmaps::MapSpec build_map_spec(const MapOpts& o) {
    if (o.map == "affine") {
        const exact::Valuation val = exact::parse_valuation(o.val);
        return regmaps::AffineMapSpec{regmaps::make_affine_params(
            exact::parse_scalar(o.a, val), exact::parse_scalar(o.b, val))};
    }
    if (o.map == "mpq") return regmaps::MpqMapSpec{o.p, o.q};
    if (o.map == "wreath-inclusion") return regmaps::WreathInclusionMapSpec{};
    if (o.map == "symshift")
        return regmaps::SymShiftMapSpec{parse_perm_text(o.sigma), o.big_shift};
    if (o.map == "identity") return regmaps::IdentityMapSpec{};
    return regmaps::ConstantMapSpec{};
}

void run_verify_map(const CommonOpts& c, const MapOpts& o) {
    const nlohmann::json params{{"map", o.map},         {"radius", o.radius},
                                {"a", o.a},             {"b", o.b},
                                {"val", o.val},         {"p", o.p},
                                {"q", o.q},             {"sigma", o.sigma},
                                {"big_shift", o.big_shift}, {"gap_scan", o.gap_scan},
                                {"window_lo", o.window_lo}, {"window_hi", o.window_hi}};
    if (o.gap_scan) {
        if (o.map != "affine")
            throw precondition_error("verify-map: --gap-scan applies to the affine map only");
        const exact::Valuation val = exact::parse_valuation(o.val);
        const regmaps::AffineEmbeddingParams embedding = regmaps::make_affine_params(
            exact::parse_scalar(o.a, val), exact::parse_scalar(o.b, val));
        const regmaps::GapScanReport report =
            regmaps::gap_scan(embedding, o.window_lo, o.window_hi);
        nlohmann::json body = regmaps::gap_scan_to_json(embedding, report);
        body["schema"] = "gap-report/1";
        emit(c, "verify-map", params, json_body(body));
        return;
    }
    const regmaps::MapSpec spec = build_map_spec(o);
    const regmaps::RegularMapReport report =
        regmaps::verify_map(spec, o.radius, c.jobs, c.max_vertices);
    nlohmann::json body = regmaps::report_to_json(report);
    body["schema"] = "map-report/1";
    emit(c, "verify-map", params, json_body(body));
}

void run_profile(const CommonOpts& c, const GroupOpts& g, const std::string& sizes_text,
                 int samples) {
    const cayley::GroupSpec spec = cayley::make_group_spec(g.group, g.m, g.p, g.q);
    std::vector<int> sizes;
    for (long long v : parse_int_list(sizes_text, "sizes")) sizes.push_back(static_cast<int>(v));
    const std::vector<separation::ProfileRow> rows =
        separation::sep_profile_table(spec, sizes, samples, c.seed);
    nlohmann::json params = group_to_json(g);
    params["sizes"] = sizes_text;
    params["samples"] = samples;
    emit(c, "profile", params, separation::profile_to_csv(rows));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cayley balls, verified regular maps, and balanced-separator certificates"};
    app.require_subcommand(1);

    CommonOpts common;

    GroupOpts ball_group;
    int ball_radius = 3;
    std::string ball_format = "json";
    CLI::App* ball = app.add_subcommand("ball", "Enumerate a Cayley-graph ball");
    add_common(ball, common);
    add_group(ball, ball_group);
    ball->add_option("--radius", ball_radius, "Ball radius")->check(CLI::NonNegativeNumber);
    ball->add_option("--format", ball_format, "Output format")
        ->check(CLI::IsMember({"json", "edgelist", "dot"}));
    ball->callback([&] { run_ball(common, ball_group, ball_radius, ball_format); });

    int tn_n = 1, tn_m = 2;
    std::string tn_format = "json";
    CLI::App* tn = app.add_subcommand("tn", "Build a position-bounded test graph");
    add_common(tn, common);
    tn->add_option("--n", tn_n, "Position range half-width")->check(CLI::NonNegativeNumber);
    tn->add_option("--m", tn_m, "Lamp modulus");
    tn->add_option("--format", tn_format, "Output format")
        ->check(CLI::IsMember({"json", "edgelist", "dot"}));
    tn->callback([&] { run_tn(common, tn_n, tn_m, tn_format); });

    std::string cut_input;
    int cut_n = -1, cut_m = 2, cut_effort = 8;
    bool cut_exact_flag = false, cut_heuristic_flag = false;
    CLI::App* cut = app.add_subcommand("cut", "Certify a balanced vertex cut");
    add_common(cut, common);
    cut->add_option("--input", cut_input, "Edge-list file to cut");
    cut->add_option("--n", cut_n, "Cut the test graph with this half-width");
    cut->add_option("--m", cut_m, "Lamp modulus for --n");
    cut->add_flag("--exact", cut_exact_flag, "Force the exhaustive minimum search");
    cut->add_flag("--heuristic", cut_heuristic_flag, "Force the sweep heuristic");
    cut->add_option("--effort", cut_effort, "Sweep restarts for the heuristic");
    cut->callback([&] {
        if (cut_exact_flag && cut_heuristic_flag)
            throw precondition_error("cut: --exact and --heuristic are mutually exclusive");
        run_cut(common, cut_input, cut_n, cut_m, cut_exact_flag, cut_heuristic_flag, cut_effort);
    });

    int sep_radius = 6, sep_m = 2, sep_size = 0;
    std::string sep_subset_file;
    CLI::App* separator =
        app.add_subcommand("separator", "Fiber separator for a lamplighter-ball subset");
    add_common(separator, common);
    separator->add_option("--radius", sep_radius, "Ball radius")->check(CLI::NonNegativeNumber);
    separator->add_option("--m", sep_m, "Lamp modulus");
    separator->add_option("--size", sep_size,
                          "Sample a connected subset of this size (0 = whole ball)");
    separator->add_option("--subset-file", sep_subset_file,
                          "File of ball vertex indices to separate");
    separator->callback([&] { run_separator(common, sep_radius, sep_m, sep_size, sep_subset_file); });

    int paths_n = 1, paths_m = 2;
    CLI::App* paths = app.add_subcommand("paths", "Canonical path family congestion statistics");
    add_common(paths, common);
    paths->add_option("--n", paths_n, "Position range half-width")->check(CLI::NonNegativeNumber);
    paths->add_option("--m", paths_m, "Lamp modulus");
    paths->callback([&] { run_paths(common, paths_n, paths_m); });

    int cross_n = 1, cross_m = 2;
    std::string cross_cutset;
    CLI::App* crossing =
        app.add_subcommand("crossing", "Fraction of canonical paths meeting a cutset");
    add_common(crossing, common);
    crossing->add_option("--n", cross_n, "Position range half-width")
        ->check(CLI::NonNegativeNumber);
    crossing->add_option("--m", cross_m, "Lamp modulus");
    crossing->add_option("--cutset", cross_cutset,
                         "Comma-separated vertex ids (default: the exact minimum cutset)");
    crossing->callback([&] { run_crossing(common, cross_n, cross_m, cross_cutset); });

    MapOpts map_opts;
    CLI::App* verify = app.add_subcommand("verify-map", "Verify a map out of the lamplighter");
    add_common(verify, common);
    verify->add_option("--map", map_opts.map, "Map to verify")
        ->check(CLI::IsMember(
            {"affine", "mpq", "wreath-inclusion", "symshift", "identity", "constant"}));
    verify->add_option("--radius", map_opts.radius, "Domain ball radius")
        ->check(CLI::NonNegativeNumber);
    verify->add_option("--a", map_opts.a, "Scaling unit (affine)");
    verify->add_option("--b", map_opts.b, "Translation seed (affine)");
    verify->add_option("--val", map_opts.val, "Valuation: arch | <p>adic | tadic");
    verify->add_option("--p", map_opts.p, "Scaling numerator (mpq)");
    verify->add_option("--q", map_opts.q, "Scaling denominator (mpq)");
    verify->add_option("--sigma", map_opts.sigma, "Seed permutation, e.g. 0:1,1:0 (symshift)");
    verify->add_option("--big-shift", map_opts.big_shift, "Conjugating block width (symshift)");
    verify->add_flag("--gap-scan", map_opts.gap_scan,
                     "Scan the injectivity gap over a support window instead");
    verify->add_option("--window-lo", map_opts.window_lo, "Gap-scan window start");
    verify->add_option("--window-hi", map_opts.window_hi, "Gap-scan window end");
    verify->callback([&] { run_verify_map(common, map_opts); });

    GroupOpts profile_group;
    std::string profile_sizes = "8,16,24";
    int profile_samples = 2;
    CLI::App* profile = app.add_subcommand("profile", "Separation profile bounds as CSV");
    add_common(profile, common);
    add_group(profile, profile_group);
    profile->add_option("--sizes", profile_sizes, "Comma-separated subset sizes");
    profile->add_option("--samples", profile_samples, "Sampled subsets per size");
    profile->callback([&] { run_profile(common, profile_group, profile_sizes, profile_samples); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const cap_exceeded_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
