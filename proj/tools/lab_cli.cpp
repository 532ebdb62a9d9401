#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "curvlab/degeneration.hpp"
#include "curvlab/polar_metric.hpp"
#include "curvlab/polyhedron.hpp"
#include "curvlab/schlafli.hpp"
#include "curvlab/simplex_gram.hpp"

#include "arg_lists.hpp"

using namespace curvlab;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kFailure = 1, kUsage = 2, kDomain = 3, kViolation = 4 };

// Thrown by a command that ran to completion but found a failed property.
struct Violation {
    std::string what;
};

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw InvalidInput("cannot open output file '" + path + "'");
        }
    }
    std::ostream& os() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

class CsvWriter {
public:
    CsvWriter(std::ostream& os, const std::vector<std::string>& header) : os_(os) {
        for (std::size_t i = 0; i < header.size(); ++i) os_ << (i ? "," : "") << header[i];
        os_ << '\n';
    }
    CsvWriter& operator<<(double x) { return put(fmt(x)); }
    CsvWriter& operator<<(int x) { return put(std::to_string(x)); }
    CsvWriter& operator<<(std::uint64_t x) { return put(std::to_string(x)); }
    CsvWriter& operator<<(bool x) { return put(x ? "1" : "0"); }
    CsvWriter& operator<<(const std::string& s) {
        std::string q = s;
        if (q.find_first_of(",\"\n") != std::string::npos) {
            std::string e = "\"";
            for (char c : q) e += (c == '"') ? std::string("\"\"") : std::string(1, c);
            q = e + "\"";
        }
        return put(q);
    }
    void end() {
        os_ << '\n';
        first_ = true;
    }

private:
    CsvWriter& put(const std::string& s) {
        os_ << (first_ ? "" : ",") << s;
        first_ = false;
        return *this;
    }
    std::ostream& os_;
    bool first_ = true;
};

json matrix_json(const Matrix& m) {
    json j = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
        j.push_back(row);
    }
    return j;
}

json volume_json(const VolumeEstimate& v) {
    return {{"value", v.value},
            {"error_bound", v.error_bound},
            {"method", to_string(v.method)},
            {"curvature", static_cast<int>(v.curvature)},
            {"samples", v.samples},
            {"evaluations", v.evaluations},
            {"truncated_tail", v.truncated_tail}};
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InvalidInput("'" + path + "': " + e.what());
    }
}

AngleVector parse_angles(const std::string& spec) { return AngleVector::from_values(cli::parse_repeat_list(spec)); }

// Compact class to curvature, or DomainError naming the class.
Curvature compact_curvature(const AngleVector& theta) {
    SimplexClass c = classify(gram_from_angles(theta));
    switch (c.kind) {
    case SimplexKind::Spherical:
        return Curvature::Spherical;
    case SimplexKind::HyperbolicCompact:
        return Curvature::Hyperbolic;
    case SimplexKind::EuclideanBoundary:
        throw DomainError("EuclideanBoundary: angles lie on the Euclidean boundary, where the volume vanishes");
    case SimplexKind::HyperbolicIdeal: {
        std::string idx;
        for (int i : c.ideal_vertices) idx += (idx.empty() ? "" : ",") + std::to_string(i);
        throw DomainError("HyperbolicIdeal: ideal vertices {" + idx +
                          "}; use compact approximants (see the regularity command)");
    }
    default:
        throw DomainError("Inadmissible: angles do not define a compact simplex");
    }
}

// ---- classify ----

struct ClassifyArgs {
    std::string angles;
};

void cmd_classify(const ClassifyArgs& a, std::ostream& os) {
    AngleVector theta = parse_angles(a.angles);
    GramDiagnostics d = diagnose(gram_from_angles(theta));
    json j;
    j["class"] = to_string(d.cls.kind);
    j["dimension"] = theta.dimension();
    j["ideal_vertices"] = d.cls.ideal_vertices;
    j["eigenvalues"] = std::vector<double>(d.eigenvalues.data(), d.eigenvalues.data() + d.eigenvalues.size());
    j["cofactors"] = matrix_json(d.cofactors);
    j["determinant"] = d.determinant;
    try {
        j["boundary_margin"] = boundary_margin(theta);
    } catch (const DomainError&) {
        j["boundary_margin"] = nullptr;
    }
    os << j.dump(2) << '\n';
}

// ---- volume ----

struct VolumeArgs {
    std::string angles;
    double tol = 1e-10;
    bool oracle = false;
    std::uint64_t samples = 10'000'000;
    std::uint64_t seed = 1;
    bool serial = false;
};

void cmd_volume(const VolumeArgs& a, std::ostream& os) {
    AngleVector theta = parse_angles(a.angles);
    if (theta.dimension() != 3) throw InvalidInput("volume: expected 6 angles (a tetrahedron)");
    if (!(a.tol > 0)) throw InvalidInput("volume: --tol must be positive");
    Curvature K = compact_curvature(theta);
    VolumeEstimate v = volume_tetra(theta, K, a.tol);
    json j;
    j["angles"] = theta.values();
    j["class"] = K == Curvature::Spherical ? "Spherical" : "HyperbolicCompact";
    j["schlafli"] = volume_json(v);
    if (a.oracle) {
        if (a.samples < 2) throw InvalidInput("volume: --samples must be at least 2");
        McOptions opt;
        opt.samples = a.samples;
        opt.seed = a.seed;
        opt.exec = a.serial ? Exec::Serial : Exec::Parallel;
        VolumeEstimate mc = mc_volume_oracle(vertices_from_gram(gram_from_angles(theta)), opt);
        j["oracle"] = volume_json(mc);
        j["seed"] = a.seed;
        double diff = std::fabs(v.value - mc.value);
        j["difference"] = diff;
        j["agree"] = diff <= v.error_bound + mc.error_bound;
    }
    os << j.dump(2) << '\n';
    if (a.oracle && !j["agree"].get<bool>())
        throw Violation{"Schlafli value and Monte Carlo oracle disagree beyond the combined bound"};
}

// ---- lengths ----

struct LengthsArgs {
    std::string angles;
};

void cmd_lengths(const LengthsArgs& a, std::ostream& os) {
    AngleVector theta = parse_angles(a.angles);
    Matrix G = gram_from_angles(theta);
    SimplexClass c = classify(G);
    json j;
    j["class"] = to_string(c.kind);
    j["lengths"] = matrix_json(edge_lengths(G));
    if (theta.dimension() == 3) {
        Curvature K = compact_curvature(theta);
        j["gradient"] = schlafli_gradient(theta, K);
    }
    os << j.dump(2) << '\n';
}

// ---- hull ----

struct HullArgs {
    std::string points;
    int random = 0;
    double radius = 0.9;
    int stretch = 0;
    double rho = 20.0;
    std::uint64_t seed = 1;
};

std::vector<HPoint> read_klein_points(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open '" + path + "'");
    std::vector<HPoint> pts;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        auto cells = cli::split(line, ',');
        if (cells.size() != 3) throw InvalidInput(path + ":" + std::to_string(lineno) + ": expected x,y,z");
        KleinPoint u{};
        try {
            for (int k = 0; k < 3; ++k) u[k] = cli::parse_real(cells[k]);
        } catch (const InvalidInput&) {
            if (pts.empty() && lineno == 1) continue;  // header row
            throw InvalidInput(path + ":" + std::to_string(lineno) + ": expected x,y,z");
        }
        if (u[0] * u[0] + u[1] * u[1] + u[2] * u[2] >= 1.0)
            throw DomainError(path + ":" + std::to_string(lineno) + ": point outside the open Klein ball");
        pts.push_back(klein_lift(u));
    }
    return pts;
}

void cmd_hull(const HullArgs& a, std::ostream& os) {
    int sources = !a.points.empty() + (a.random > 0) + (a.stretch > 0);
    if (sources != 1) throw InvalidInput("hull: give exactly one of --points, --random, --stretch");
    Polyhedron P;
    if (!a.points.empty())
        P = hull_klein(read_klein_points(a.points));
    else if (a.random > 0)
        P = random_klein_hull(a.random, a.radius, a.seed);
    else
        P = stretch_generator(a.stretch, a.rho, a.seed);
    os << to_json(P).dump(2) << '\n';
}

// ---- polar ----

struct PolarArgs {
    std::string polyhedron;
    bool serial = false;
};

void cmd_polar(const PolarArgs& a, std::ostream& os) {
    Polyhedron P = polyhedron_from_json(read_json_file(a.polyhedron));
    DualMetric D = dual_metric(P);
    AdmissibilityReport r = admissibility_report(P, D, a.serial ? Exec::Serial : Exec::Parallel);
    json j;
    j["dual"] = to_json(D);
    j["cone_margins"] = r.cone_margins;
    j["min_cone_margin"] = r.min_cone_margin;
    j["cone_ok"] = r.cone_ok;
    j["min_nonlink_cycle"] = to_json(r.witness);
    j["cycle_margin"] = r.cycle_margin;
    j["cycle_ok"] = r.cycle_ok;
    j["shortest_geodesic"] = r.shortest_geodesic ? to_json(*r.shortest_geodesic) : json(nullptr);
    j["geodesic_ok"] = r.geodesic_ok;
    j["pass"] = r.pass;
    j["proximity"] = std::min(r.min_cone_margin, r.cycle_margin);
    os << j.dump(2) << '\n';
    if (!r.pass) throw Violation{"admissibility conditions fail (see cone_ok / cycle_ok)"};
}

// ---- scan-degeneration ----

struct ScanArgs {
    int N = 4;
    std::string rho = "10:30:5";
    int trials = 20;
    std::uint64_t seed = 1;
    bool relaxed = false;
    bool serial = false;
};

void cmd_scan(const ScanArgs& a, std::ostream& os) {
    if (a.N < 4) throw InvalidInput("scan-degeneration: N must be at least 4");
    auto rhos = cli::parse_range_list(a.rho);
    for (double r : rhos)
        if (!(r > 0)) throw InvalidInput("scan-degeneration: rho values must be positive");
    auto rows = scan_degeneration(a.N, rhos, a.trials, a.seed, a.relaxed, a.serial ? Exec::Serial : Exec::Parallel);
    CsvWriter w(os, {"N", "rho", "trial", "seed", "status", "diameter", "cycle_length", "cycle_total", "bound",
                     "dihedral_total", "curvature_total", "curvature_bound", "intersecting", "max_edge", "proximity",
                     "log_bound", "degenthm", "quasig", "loggrowth"});
    int generated = 0, errors = 0, degen = 0, quasig = 0, loggrowth = 0;
    for (const auto& r : rows) {
        std::string status = r.generated ? (r.error.empty() ? "ok" : "precondition") : "generator";
        w << r.N << r.rho << r.trial << r.seed << status << r.diameter << r.cycle_length << r.cycle_total
          << r.cycle_bound << r.dihedral_total << r.curvature_total << r.curvature_bound << r.intersecting
          << r.max_edge << r.proximity << r.log_bound << r.degen_pass << r.quasig_pass << r.log_pass;
        w.end();
        if (!r.generated) {
            ++errors;
            std::cerr << "row N=" << r.N << " rho=" << fmt(r.rho) << " trial=" << r.trial << ": " << r.error << '\n';
            continue;
        }
        ++generated;
        if (!r.error.empty()) {
            ++errors;
            std::cerr << "row N=" << r.N << " rho=" << fmt(r.rho) << " trial=" << r.trial << ": " << r.error << '\n';
            continue;
        }
        degen += !r.degen_pass;
        quasig += !r.quasig_pass;
        loggrowth += !r.log_pass;
    }
    int violations = degen + quasig + loggrowth;
    std::cerr << "summary: rows=" << rows.size() << " generated=" << generated << " excluded=" << errors
              << " violations=" << violations << " (degenthm=" << degen << " quasig=" << quasig
              << " loggrowth=" << loggrowth << ")\n";
    if (violations > 0) throw Violation{std::to_string(violations) + " violations"};
}

// ---- regularity ----

struct RegularityArgs {
    std::string start = "1.2x6";
    std::string end = "1.0471975511965976x6";
    int steps = 12;
    double tol = 1e-10;
    std::string fit_out;
};

void cmd_regularity(const RegularityArgs& a, std::ostream& os) {
    AngleVector s = parse_angles(a.start), e = parse_angles(a.end);
    if (s.dimension() != 3 || e.dimension() != 3) throw InvalidInput("regularity: expected 6 angles per endpoint");
    if (a.steps < 3) throw InvalidInput("regularity: --steps must be at least 3");
    Curvature K = compact_curvature(s);
    auto rows = holder_probe(s, e, K, a.steps, a.tol);
    CsvWriter w(os, {"margin", "volume", "grad_norm", "grad_max", "step"});
    for (const auto& r : rows) {
        w << r.margin << r.volume << r.grad_norm << r.grad_max << r.step;
        w.end();
    }
    HolderFit f = fit_holder(rows);
    json j = {{"curvature", static_cast<int>(K)},
              {"holder_exponent", f.holder_exponent},
              {"log_slope", f.log_slope},
              {"log_r2", f.log_r2},
              {"grad_sup", f.grad_sup}};
    if (!a.fit_out.empty()) {
        std::ofstream fo(a.fit_out);
        if (!fo) throw InvalidInput("cannot open '" + a.fit_out + "'");
        fo << j.dump(2) << '\n';
    }
    std::cerr << "fit: " << j.dump() << '\n';
}

// ---- verify-lemmas ----

struct LemmaArgs {
    int trials = 10000;
    int sep_trials = 1000;
    std::uint64_t seed = 1;
    std::string t = "1,2,5";
    std::string eps = "0.01,0.05,0.1";
    std::string r = "1,2";
    std::string csv_dir;
    std::string replay;
    bool serial = false;
};

void write_suite_csv(const SuiteResult& res, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw InvalidInput("cannot open '" + path + "'");
    CsvWriter w(f, {"trial", "seed", "param", "measured", "bound", "margin", "pass", "aux", "aux_event"});
    for (const auto& r : res.rows) {
        w << r.trial << r.seed << r.param << r.measured << r.bound << r.margin << r.pass << r.aux << r.aux_event;
        w.end();
    }
}

void cmd_verify_lemmas(const LemmaArgs& a, std::ostream& os) {
    if (!a.replay.empty()) {
        auto parts = cli::split(a.replay, ':');
        if (parts.size() != 3) throw InvalidInput("--replay expects suite:param:seed");
        std::uint64_t seed = 0;
        try {
            std::size_t pos = 0;
            seed = std::stoull(parts[2], &pos);
            if (pos != parts[2].size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw InvalidInput("--replay: bad seed '" + parts[2] + "'");
        }
        SuiteRow r = run_trial(parts[0], cli::parse_real(parts[1]), seed);
        CsvWriter w(os, {"suite", "seed", "param", "measured", "bound", "margin", "pass", "aux", "aux_event"});
        w << parts[0] << r.seed << r.param << r.measured << r.bound << r.margin << r.pass << r.aux << r.aux_event;
        w.end();
        if (!r.pass) throw Violation{"replayed trial violates its bound"};
        return;
    }
    if (a.trials < 1 || a.sep_trials < 1) throw InvalidInput("trial counts must be positive");
    std::vector<std::pair<std::string, double>> plan;
    auto ts = cli::parse_repeat_list(a.t), es = cli::parse_repeat_list(a.eps), rs = cli::parse_repeat_list(a.r);
    for (double t : ts) plan.push_back({"anglemma", t});
    for (double t : ts) plan.push_back({"distlem", t});
    for (double e : es) plan.push_back({"spherical", e});
    for (double r : rs) plan.push_back({"circleest", r});
    plan.push_back({"seplemma", 0.0});
    for (const auto& [name, p] : plan) check_suite_param(name, p);  // refuse before running anything
    if (!a.csv_dir.empty()) std::filesystem::create_directories(a.csv_dir);

    CsvWriter w(os, {"suite", "param", "trials", "violations", "aux_events", "min_margin", "first_violation_seed"});
    int total = 0;
    for (const auto& [name, p] : plan) {
        int n = name == "seplemma" ? a.sep_trials : a.trials;
        SuiteResult res = run_suite(name, p, n, a.seed, a.serial ? Exec::Serial : Exec::Parallel);
        std::string first;
        for (const auto& r : res.rows)
            if (!r.pass) {
                if (first.empty()) first = std::to_string(r.seed);
                std::cerr << "violation: " << name << " param=" << fmt(p) << " trial=" << r.trial
                          << " replay with --replay " << name << ":" << fmt(p) << ":" << r.seed << '\n';
            }
        w << name << p << n << res.violations << res.aux_events << res.min_margin << first;
        w.end();
        total += res.violations;
        if (!a.csv_dir.empty()) {
            std::ostringstream fn;
            fn << name << "_" << p << ".csv";
            write_suite_csv(res, (std::filesystem::path(a.csv_dir) / fn.str()).string());
        }
    }
    if (total > 0) throw Violation{std::to_string(total) + " lemma violations"};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Constant-curvature simplices and polyhedra: volumes, polar metrics, degeneration checks"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a TOML/INI file");
    std::string out, save_config;
    app.add_option("-o,--out", out, "Output file (default stdout)");
    app.add_option("--save-config", save_config, "Write the effective configuration to this file");

    ClassifyArgs ca;
    auto* classify_cmd = app.add_subcommand("classify", "Classify the angle Gram matrix");
    classify_cmd->add_option("--angles", ca.angles, "Angles, e.g. 1.2x6 or a comma list")->required();

    VolumeArgs va;
    auto* volume_cmd = app.add_subcommand("volume", "Volume of a tetrahedron from its dihedral angles");
    volume_cmd->add_option("--angles", va.angles)->required();
    volume_cmd->add_option("--tol", va.tol, "Quadrature tolerance")->capture_default_str();
    volume_cmd->add_flag("--oracle", va.oracle, "Also run the Monte Carlo oracle");
    volume_cmd->add_option("--samples", va.samples)->capture_default_str();
    volume_cmd->add_option("--seed", va.seed)->capture_default_str();
    volume_cmd->add_flag("--serial", va.serial, "Use the serial reference kernel");

    LengthsArgs la;
    auto* lengths_cmd = app.add_subcommand("lengths", "Edge lengths and Schlafli gradient");
    lengths_cmd->add_option("--angles", la.angles)->required();

    HullArgs ha;
    auto* hull_cmd = app.add_subcommand("hull", "Convex hull as polyhedron JSON");
    hull_cmd->add_option("--points", ha.points, "CSV of Klein coordinates x,y,z");
    hull_cmd->add_option("--random", ha.random, "Hull of this many uniform Klein points");
    hull_cmd->add_option("--radius", ha.radius, "Klein radius for --random")->capture_default_str();
    hull_cmd->add_option("--stretch", ha.stretch, "Stretched polyhedron with this many vertices");
    hull_cmd->add_option("--rho", ha.rho, "Diameter for --stretch")->capture_default_str();
    hull_cmd->add_option("--seed", ha.seed)->capture_default_str();

    PolarArgs pa;
    auto* polar_cmd = app.add_subcommand("polar", "Polar metric and admissibility of a polyhedron");
    polar_cmd->add_option("--polyhedron", pa.polyhedron, "Polyhedron JSON file")->required();
    polar_cmd->add_flag("--serial", pa.serial);

    ScanArgs sa;
    auto* scan_cmd = app.add_subcommand("scan-degeneration", "Short face cycles on stretched polyhedra");
    scan_cmd->add_option("-N,--vertices", sa.N)->capture_default_str();
    scan_cmd->add_option("--rho", sa.rho, "List or start:stop:step")->capture_default_str();
    scan_cmd->add_option("--trials", sa.trials)->capture_default_str();
    scan_cmd->add_option("--seed", sa.seed)->capture_default_str();
    scan_cmd->add_flag("--relaxed", sa.relaxed, "Allow rho < 2N");
    scan_cmd->add_flag("--serial", sa.serial);

    RegularityArgs ra;
    auto* reg_cmd = app.add_subcommand("regularity", "Volume and gradient along a family approaching the boundary");
    reg_cmd->add_option("--start", ra.start)->capture_default_str();
    reg_cmd->add_option("--end", ra.end)->capture_default_str();
    reg_cmd->add_option("--steps", ra.steps)->capture_default_str();
    reg_cmd->add_option("--tol", ra.tol)->capture_default_str();
    reg_cmd->add_option("--fit-out", ra.fit_out, "Write the fit summary as JSON");

    LemmaArgs lm;
    auto* lem_cmd = app.add_subcommand("verify-lemmas", "Seeded property suites for the degeneration lemmas");
    lem_cmd->add_option("--trials", lm.trials)->capture_default_str();
    lem_cmd->add_option("--sep-trials", lm.sep_trials)->capture_default_str();
    lem_cmd->add_option("--seed", lm.seed)->capture_default_str();
    lem_cmd->add_option("--t", lm.t)->capture_default_str();
    lem_cmd->add_option("--eps", lm.eps)->capture_default_str();
    lem_cmd->add_option("--r", lm.r)->capture_default_str();
    lem_cmd->add_option("--csv-dir", lm.csv_dir, "Write one CSV per suite here");
    lem_cmd->add_option("--replay", lm.replay, "suite:param:seed");
    lem_cmd->add_flag("--serial", lm.serial);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (!save_config.empty()) {
            std::ofstream f(save_config);
            if (!f) throw InvalidInput("cannot open '" + save_config + "'");
            f << app.config_to_str(true, false);
        }
        Output o(out);
        std::ostream& os = o.os();
        if (*classify_cmd) cmd_classify(ca, os);
        else if (*volume_cmd) cmd_volume(va, os);
        else if (*lengths_cmd) cmd_lengths(la, os);
        else if (*hull_cmd) cmd_hull(ha, os);
        else if (*polar_cmd) cmd_polar(pa, os);
        else if (*scan_cmd) cmd_scan(sa, os);
        else if (*reg_cmd) cmd_regularity(ra, os);
        else if (*lem_cmd) cmd_verify_lemmas(lm, os);
        os.flush();
    } catch (const Violation& v) {
        std::cerr << "property violation: " << v.what << '\n';
        return kViolation;
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return kDomain;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kFailure;
    }
    return kOk;
}
