// fourbody: command-line front end for the four-body central configuration
// library. Exit status 0 on success, 1 on a domain failure, 2 on a usage error.

#include "fourbody/fourbody.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace fourbody;
using record::fmt17;
using record::json;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Writes to --out when given, stdout otherwise.
class Output {
public:
    explicit Output(const std::string& path) {
        if (path.empty() || path == "-") return;
        file_.open(path);
        if (!file_) throw UsageError("cannot open output file '" + path + "'");
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

WeightedAreas areas_from(const std::vector<double>& v) {
    if (v.size() != 4) throw UsageError("--areas needs exactly four comma-separated values");
    return {{v[0], v[1], v[2], v[3]}};
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
    return out;
}

std::string list17(const std::array<double, 4>& v) {
    return join({fmt17(v[0]), fmt17(v[1]), fmt17(v[2]), fmt17(v[3])}, ",");
}

void print_table(std::ostream& os, const std::vector<std::pair<std::string, std::string>>& rows) {
    std::size_t w = 0;
    for (const auto& [k, v] : rows) w = std::max(w, k.size());
    for (const auto& [k, v] : rows) os << k << std::string(w + 2 - k.size(), ' ') << v << '\n';
}

// ---------------------------------------------------------------------------
// solve

struct SolveArgs {
    std::vector<double> areas;
    std::string residual = "auto";
    double tol = SolverOptions{}.tol_root;
    double margin = SolverOptions{}.bracket_margin;
    bool json = false;
    std::string out;
};

SolverOptions options_from(const SolveArgs& a) {
    SolverOptions o;
    o.residual_for_root = record::parse_root_residual(a.residual);
    o.tol_root = a.tol;
    o.bracket_margin = a.margin;
    return o;
}

void print_config(std::ostream& os, const CentralConfig& c) {
    std::vector<std::pair<std::string, std::string>> rows;
    rows.emplace_back("hull", std::string(to_string(c.classification.hull)));
    rows.emplace_back("symmetries", join(c.classification.symmetries.names(), ","));
    rows.emplace_back("sign_flipped", c.sign_flipped ? "yes" : "no");
    rows.emplace_back("lambda", fmt17(c.lambda));
    for (std::size_t k = 0; k < kPairNames.size(); ++k) rows.emplace_back(std::string(kPairNames[k]), fmt17(c.distances.r[k]));
    for (std::size_t j = 0; j < 4; ++j) rows.emplace_back("m" + std::to_string(j + 1), fmt17(c.masses[j]));
    for (std::size_t j = 0; j < 4; ++j) rows.emplace_back("S" + std::to_string(j + 1), fmt17(c.signed_areas.s[j]));
    for (std::size_t j = 0; j < 4; ++j)
        rows.emplace_back("x" + std::to_string(j + 1), fmt17(c.coords[j].x) + " " + fmt17(c.coords[j].y));
    const auto& r = c.diagnostics;
    rows.emplace_back("plane_sum", fmt17(r.plane_sum));
    rows.emplace_back("quad_constraint", fmt17(r.quad_constraint));
    rows.emplace_back("laura_andoyer", fmt17(r.laura_andoyer));
    rows.emplace_back("central_eq", fmt17(r.central_eq));
    rows.emplace_back("sigma_identity", fmt17(r.sigma_identity));
    print_table(os, rows);
}

int cmd_solve(const SolveArgs& a) {
    const auto input = areas_from(a.areas);
    const auto opts = options_from(a);
    const auto c = solve(input, opts);
    Output out(a.out);
    if (a.json)
        out.stream() << record::to_json(record::make_record(input, opts, c)).dump(2) << '\n';
    else
        print_config(out.stream(), c);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// classify

int cmd_classify(const std::vector<double>& areas, bool as_json) {
    const auto input = areas_from(areas);
    const auto cls = validate_areas(input);
    json j = record::to_json(cls);
    j["canonical_areas"] = canonical(input).a;
    try {
        const auto c = solve(input);
        json checks = {{"ordering", ordering_check(c)}};
        const auto& sym = cls.symmetries;
        if (sym.contains(Symmetry::Kite)) checks["kite"] = symmetry::check_kite(c);
        if (sym.contains(Symmetry::EquilateralCenter)) checks["equilateral_center"] = symmetry::check_equilateral_center(c);
        if (sym.contains(Symmetry::Rhombus))
            checks["rhombus"] = std::string(to_string(symmetry::check_rhombus_square(c)));
        if (sym.contains(Symmetry::IsoscelesTrapezium))
            checks["isosceles_trapezium"] = symmetry::check_isosceles_trapezium(c);
        j["solution_checks"] = checks;
    } catch (const Error& e) {
        j["solution_checks"] = {{"error", std::string(to_string(e.code()))}};
    }
    if (as_json) {
        std::cout << j.dump(2) << '\n';
        return kExitOk;
    }
    std::vector<std::pair<std::string, std::string>> rows;
    rows.emplace_back("hull", std::string(to_string(cls.hull)));
    rows.emplace_back("symmetries", join(cls.symmetries.names(), ","));
    for (const auto& [k, v] : j["solution_checks"].items()) rows.emplace_back(k, v.is_string() ? v.get<std::string>() : v.dump());
    print_table(std::cout, rows);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(const std::string& path, double threshold) {
    std::string text;
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else {
        std::ifstream in(path);
        if (!in) throw UsageError("cannot read record file '" + path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    record::ConfigRecord r;
    try {
        r = record::parse_record(text);
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    const auto& c = r.config;
    const auto rep = verify_parts(c.coords, c.masses, c.distances, c.signed_areas);
    json j = record::to_json(rep);
    json failed = json::array();
    for (const auto& [k, v] : j.items())
        if (!(v.is_number() && v.get<double>() < threshold)) failed.push_back(k);
    const bool ok = failed.empty();
    std::cout << json{{"residuals", j}, {"threshold", threshold}, {"failed", failed}, {"ok", ok}}.dump(2) << '\n';
    return ok ? kExitOk : kExitDomain;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepArgs {
    std::vector<double> areas;
    std::string vary = "a2";
    double from = 0.0;
    double to = 0.0;
    double step = 0.0;
    int count = 0;
    bool log = false;
    std::string out;
};

std::vector<double> sweep_grid(const SweepArgs& a) {
    if (!std::isfinite(a.from) || !std::isfinite(a.to)) throw UsageError("--from/--to must be finite");
    std::vector<double> grid;
    if (a.count > 0) {
        if (a.count == 1) return {a.from};
        if (a.log) {
            if (!(a.from * a.to > 0.0)) throw UsageError("--log needs --from and --to nonzero with equal signs");
            const double sgn = a.from < 0 ? -1.0 : 1.0;
            const double l0 = std::log10(std::abs(a.from)), l1 = std::log10(std::abs(a.to));
            for (int k = 0; k < a.count; ++k)
                grid.push_back(sgn * std::pow(10.0, l0 + (l1 - l0) * k / (a.count - 1)));
        } else {
            for (int k = 0; k < a.count; ++k) grid.push_back(a.from + (a.to - a.from) * k / (a.count - 1));
        }
        return grid;
    }
    if (!(a.step > 0.0) || !std::isfinite(a.step)) throw UsageError("sweep needs --step > 0 or --count >= 1");
    const double span = a.to - a.from;
    const auto n = static_cast<long long>(std::floor(std::abs(span) / a.step * (1.0 + 1e-12)));
    if (n > 10'000'000) throw UsageError("sweep grid too large");
    const double dir = span < 0 ? -1.0 : 1.0;
    for (long long k = 0; k <= n; ++k) grid.push_back(a.from + dir * a.step * static_cast<double>(k));
    return grid;
}

int cmd_sweep(const SweepArgs& a) {
    auto base = areas_from(a.areas);
    if (a.vary.size() != 2 || a.vary[0] != 'a' || a.vary[1] < '1' || a.vary[1] > '4')
        throw UsageError("--vary must be one of a1, a2, a3, a4");
    const int vi = a.vary[1] - '1';
    const auto grid = sweep_grid(a);

    Output out(a.out);
    auto& os = out.stream();
    os << "# fourbody sweep " << record::kToolVersion << '\n';
    os << "# areas " << list17(base.a) << " vary " << a.vary << '\n';
    os << "# points " << grid.size() << '\n';
    std::vector<std::string> header{"index", "a1", "a2", "a3", "a4", "lambda", "lambda_x_vary"};
    for (auto n : kPairNames) header.emplace_back(n);
    for (int j = 1; j <= 4; ++j) header.push_back("m" + std::to_string(j));
    header.insert(header.end(), {"max_residual", "status"});
    os << record::csv_row(header) << '\n';

    for (std::size_t k = 0; k < grid.size(); ++k) {
        WeightedAreas w = base;
        w.a[static_cast<std::size_t>(vi)] = grid[k];
        std::vector<std::string> row{std::to_string(k)};
        for (double v : w.a) row.push_back(fmt17(v));
        try {
            const auto c = solve(w);
            // report in the caller's orientation: lambda and distances are flip invariant
            row.push_back(fmt17(c.lambda));
            row.push_back(fmt17(c.lambda * grid[k]));
            for (double r : c.distances.r) row.push_back(fmt17(r));
            for (double m : c.masses) row.push_back(fmt17(m));
            row.push_back(fmt17(c.diagnostics.max()));
            row.emplace_back("OK");
        } catch (const Error& e) {
            row.resize(row.size() + 2 + 6 + 4 + 1);
            row.emplace_back(to_string(e.code()));
        }
        os << record::csv_row(row) << '\n';
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// limit

void print_limit(std::ostream& os, const LimitSolution& s, bool as_json) {
    if (as_json) {
        os << record::to_json(s).dump(2) << '\n';
        return;
    }
    std::vector<std::pair<std::string, std::string>> rows;
    rows.emplace_back("kind", std::string(to_string(s.kind)));
    rows.emplace_back("lambda_or_product", fmt17(s.lambda_or_product));
    if (s.distances)
        for (std::size_t k = 0; k < kPairNames.size(); ++k)
            rows.emplace_back(std::string(kPairNames[k]), fmt17(s.distances->r[k]));
    for (const auto& [k, v] : s.aux) rows.emplace_back(k, fmt17(v));
    print_table(os, rows);
}

std::array<double, 3> triple_from(const std::vector<double>& v, const char* flag) {
    if (v.size() != 3) throw UsageError(std::string(flag) + " needs exactly three comma-separated values");
    return {v[0], v[1], v[2]};
}

int label_from(int label) {
    if (label < 1 || label > 4) throw UsageError("--index must be a particle label 1..4");
    return label - 1;
}

int sign_from(int s) {
    if (s != 1 && s != -1) throw UsageError("--sign must be 1 or -1");
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Planar four-body central configurations from weighted directed areas"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(record::kToolVersion));

    SolveArgs solve_args;
    auto* solve_cmd = app.add_subcommand("solve", "Solve for lambda, distances, masses and coordinates");
    solve_cmd->add_option("--areas", solve_args.areas, "A1,A2,A3,A4")->delimiter(',')->required();
    solve_cmd->add_option("--residual", solve_args.residual, "root residual: auto, quad, plane or kite")
        ->check(CLI::IsMember({"auto", "quad", "plane", "kite"}));
    solve_cmd->add_option("--tol", solve_args.tol, "root tolerance relative to the lambda bracket");
    solve_cmd->add_option("--margin", solve_args.margin, "bracket margin relative to the lambda bracket");
    solve_cmd->add_flag("--json", solve_args.json, "emit a JSON record");
    solve_cmd->add_option("--out", solve_args.out, "output file");

    std::vector<double> classify_areas;
    bool classify_json = false;
    auto* classify_cmd = app.add_subcommand("classify", "Hull, symmetry tags and solution checks");
    classify_cmd->add_option("--areas", classify_areas, "A1,A2,A3,A4")->delimiter(',')->required();
    classify_cmd->add_flag("--json", classify_json, "emit JSON");

    std::string verify_path;
    double verify_threshold = 1e-8;
    auto* verify_cmd = app.add_subcommand("verify", "Recompute the residual report of a JSON record");
    verify_cmd->add_option("record", verify_path, "record file, or - for stdin")->required();
    verify_cmd->add_option("--threshold", verify_threshold, "pass threshold for every residual");

    SweepArgs sweep_args;
    auto* sweep_cmd = app.add_subcommand("sweep", "Tabulate solutions while one constant varies");
    sweep_cmd->add_option("--areas", sweep_args.areas, "A1,A2,A3,A4 (the varied entry is overwritten)")
        ->delimiter(',')
        ->required();
    sweep_cmd->add_option("--vary", sweep_args.vary, "a1, a2, a3 or a4");
    sweep_cmd->add_option("--from", sweep_args.from)->required();
    sweep_cmd->add_option("--to", sweep_args.to)->required();
    auto* step_opt = sweep_cmd->add_option("--step", sweep_args.step, "grid spacing");
    auto* count_opt = sweep_cmd->add_option("--count", sweep_args.count, "number of grid points");
    step_opt->excludes(count_opt);
    sweep_cmd->add_flag("--log", sweep_args.log, "logarithmic spacing (with --count)")->needs(count_opt);
    sweep_cmd->add_option("--out", sweep_args.out, "output CSV file");

    std::vector<double> orbit_areas;
    orbits::OrbitParams orbit_params;
    std::string orbit_out;
    auto* orbit_cmd = app.add_subcommand("orbit", "Sample the homographic elliptic motion as CSV");
    orbit_cmd->add_option("--areas", orbit_areas, "A1,A2,A3,A4")->delimiter(',')->required();
    orbit_cmd->add_option("--ecc", orbit_params.eccentricity, "eccentricity in [0, 1)")->required();
    orbit_cmd->add_option("--samples", orbit_params.samples, "samples per period");
    orbit_cmd->add_option("--periods", orbit_params.periods, "number of periods");
    orbit_cmd->add_flag("--mirror", orbit_params.mirror, "emit the mirror-image arrangement");
    orbit_cmd->add_option("--out", orbit_out, "output CSV file");

    auto* limit_cmd = app.add_subcommand("limit", "Asymptotic limiting configurations");
    limit_cmd->require_subcommand(1);
    bool limit_json = false;
    double la1 = 1.0, la2 = 0.0, la4 = 0.0;
    std::vector<double> triple;
    int index = 0, sign = 0;
    std::string branch = "convex";
    bool equal_masses = false;

    auto* l_maxwell = limit_cmd->add_subcommand("maxwell", "Equal-mass 1+3 coorbital angles");
    auto* l_euler = limit_cmd->add_subcommand("euler-convex", "Kite, A2 at its lower bound");
    l_euler->add_option("--a1", la1)->required();
    l_euler->add_option("--a4", la4)->required();
    auto* l_lconc = limit_cmd->add_subcommand("lagrange-concave", "Kite, A2 -> +infinity");
    l_lconc->add_option("--a1", la1)->required();
    l_lconc->add_option("--a4", la4)->required();
    auto* l_lconv = limit_cmd->add_subcommand("lagrange-convex", "Kite, A4 -> -infinity");
    l_lconv->add_option("--a1", la1)->required();
    l_lconv->add_option("--a2", la2)->required();
    auto* l_coorb = limit_cmd->add_subcommand("coorbital", "Kite, A4 -> 0");
    l_coorb->add_option("--a1", la1, "A1 = A3");
    auto* a2_opt = l_coorb->add_option("--a2", la2);
    auto* eq_opt = l_coorb->add_flag("--equal-masses", equal_masses, "choose A2 so the satellites have equal masses");
    a2_opt->excludes(eq_opt);
    l_coorb->add_option("--branch", branch, "convex or concave (with --equal-masses)")
        ->check(CLI::IsMember({"convex", "concave"}));
    auto* l_glag = limit_cmd->add_subcommand("general-lagrange", "One constant -> +-infinity");
    l_glag->add_option("--retained", triple, "the three finite constants in label order")->delimiter(',')->required();
    l_glag->add_option("--index", index, "label of the diverging constant")->required();
    l_glag->add_option("--sign", sign, "sign of the diverging constant")->required();
    auto* l_geul = limit_cmd->add_subcommand("general-euler", "A mass vanishes on a collinear trio");
    l_geul->add_option("--trio", triple, "weighted distances of the trio in label order")->delimiter(',')->required();
    l_geul->add_option("--index", index, "label of the vanishing particle")->required();
    auto* l_gcoo = limit_cmd->add_subcommand("general-coorbital", "One constant -> 0");
    l_gcoo->add_option("--satellites", triple, "the three satellite constants in label order")
        ->delimiter(',')
        ->required();
    l_gcoo->add_option("--index", index, "label of the dominant particle")->required();
    l_gcoo->add_option("--sign", sign, "sign of the vanishing constant")->required();
    for (auto* sub : limit_cmd->get_subcommands({}))
        sub->add_flag("--json", limit_json, "emit JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (solve_cmd->parsed()) return cmd_solve(solve_args);
        if (classify_cmd->parsed()) return cmd_classify(classify_areas, classify_json);
        if (verify_cmd->parsed()) return cmd_verify(verify_path, verify_threshold);
        if (sweep_cmd->parsed()) return cmd_sweep(sweep_args);
        if (orbit_cmd->parsed()) {
            const auto input = areas_from(orbit_areas);
            orbits::validate(orbit_params);
            const auto c = solve(input);
            const auto k = orbits::kepler_elements(c, orbit_params.eccentricity);
            const auto samples = orbits::generate_orbit(c, orbit_params);
            Output out(orbit_out);
            auto& os = out.stream();
            os << "# fourbody orbit " << record::kToolVersion << '\n';
            os << "# areas " << list17(input.a) << '\n';
            os << "# eccentricity " << fmt17(k.eccentricity) << " mu " << fmt17(k.mu) << " semi_major "
               << fmt17(k.semi_major) << " period " << fmt17(k.period) << '\n';
            os << "# masses " << list17(c.masses) << " lambda " << fmt17(c.lambda) << '\n';
            os << "# scale |f| = 1 at periapsis, t = 0 at periapsis, focus at the center of mass, G = 1, sigma = 1\n";
            os << "# rotation counterclockwise; arrangement " << (orbit_params.mirror ? "mirror" : "direct") << '\n';
            os << "t,x1,y1,x2,y2,x3,y3,x4,y4\n";
            for (const auto& s : samples) {
                std::vector<std::string> row{fmt17(s.time)};
                for (const auto& p : s.positions) {
                    row.push_back(fmt17(p.x));
                    row.push_back(fmt17(p.y));
                }
                os << record::csv_row(row) << '\n';
            }
            return kExitOk;
        }
        if (limit_cmd->parsed()) {
            LimitSolution s;
            if (l_maxwell->parsed()) {
                s = limits::maxwell_1p3_solution();
            } else if (l_euler->parsed()) {
                s = limits::euler_convex_limit(la1, la4);
            } else if (l_lconc->parsed()) {
                s = limits::lagrange_concave_limit(la1, la4);
            } else if (l_lconv->parsed()) {
                s = limits::lagrange_convex_limit(la1, la2);
            } else if (l_coorb->parsed()) {
                if (equal_masses) la2 = limits::coorbital_equal_mass_a2(la1, branch == "convex");
                else if (a2_opt->count() == 0) throw UsageError("coorbital needs --a2 or --equal-masses");
                s = limits::coorbital_limit(la1, la2);
                s.aux["a2"] = la2;
            } else if (l_glag->parsed()) {
                s = limits::general_lagrange_limit(triple_from(triple, "--retained"), label_from(index), sign_from(sign));
            } else if (l_geul->parsed()) {
                s = limits::general_euler_limit(triple_from(triple, "--trio"), label_from(index));
            } else if (l_gcoo->parsed()) {
                s = limits::general_coorbital_limit(triple_from(triple, "--satellites"), label_from(index),
                                                    sign_from(sign));
            }
            print_limit(std::cout, s, limit_json);
            return kExitOk;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        std::cout << record::error_json(e).dump(2) << '\n';
        std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
        return kExitDomain;
    }
    return kExitUsage;
}
