// Command-line surface for the D0-D6 invariant computations: BPS/DT tables,
// verification suites, series utilities, machine-readable output and a
// content-addressed result cache.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "tropvert/serialize.hpp"
#include "tropvert/verify.hpp"

using namespace tropvert;
namespace fs = std::filesystem;

namespace {

struct Options {
    std::string chi = "1";
    int amax = 6;
    int rmax = 2;
    std::string method = "factorization";
    std::string order = "desc";
    std::string format = "json";
    std::string out;
    std::string cache_dir;
    bool no_cache = false;
    int jobs = 1;
    unsigned long seed = 20101013;
    // series
    int n = 7;
    int rank = 2;
    std::string sign = "plus";
    // gw
    int gw_a = 1, gw_r = 1, hmax = 2;
    int mod = 0;
};

Method parse_method(const std::string &m)
{
    if (m == "factorization")
        return Method::factorization;
    if (m == "liepath")
        return Method::liepath;
    if (m == "closedform")
        return Method::closedform;
    throw CLI::ValidationError("--method", "unknown method '" + m + "'");
}

std::string default_cache_dir()
{
    if (const char *env = std::getenv("D0D6_CACHE_DIR"))
        return env;
    return "";
}

std::optional<std::string> cache_load(const Options &opt, const std::string &key)
{
    if (opt.no_cache || opt.cache_dir.empty())
        return std::nullopt;
    fs::path p = fs::path(opt.cache_dir) / (key + ".json");
    std::ifstream in(p, std::ios::binary);
    if (!in)
        return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void cache_store(const Options &opt, const std::string &key, const std::string &content)
{
    if (opt.no_cache || opt.cache_dir.empty())
        return;
    atomic_write(fs::path(opt.cache_dir) / (key + ".json"), content);
}

void emit(const Options &opt, const std::string &content)
{
    if (opt.out.empty())
        std::cout << content;
    else
        atomic_write(opt.out, content);
}

std::string value_string(const json &v)
{
    if (v.is_string())
        return v.get<std::string>();
    return multipoly_from_json(v).str();
}

std::string table_csv(const json &result, const std::string &column)
{
    std::ostringstream out;
    out << "# " << canonical_dump(result.at("config")) << "\n";
    out << "a,r," << column << "\n";
    for (auto &entry : result.at("table").at("entries"))
        out << entry.at("a").get<int>() << "," << entry.at("r").get<int>() << ",\""
            << value_string(entry.at(column)) << "\"\n";
    return out.str();
}

int cmd_table(const Options &opt, const std::string &command)
{
    json config = {{"command", command}, {"chi", opt.chi},       {"amax", opt.amax},
                   {"rmax", opt.rmax},   {"method", opt.method}, {"order", opt.order},
                   {"format", opt.format}};
    std::string key = config_hash(config);

    std::string payload;
    if (auto hit = cache_load(opt, key)) {
        payload = *hit;
    } else {
        if (opt.order != "desc")
            throw CLI::ValidationError("--order",
                                       "tables are defined by the desc slope order; asc is "
                                       "available through the factorization API only");
        Cap cap = Cap::box(opt.amax, opt.rmax);
        Method method = parse_method(opt.method);
        json table;
        if (opt.chi == "sym")
            table = to_json(omega_table(MultiPoly::variable(VarName::chi()), cap, method));
        else
            table = to_json(omega_table(Rational::parse(opt.chi), cap, method));
        json result = {{"version", artifact_version}, {"config", config}, {"table", table}};
        payload = result.dump(2) + "\n";
        cache_store(opt, key, payload);
    }

    if (opt.format == "csv")
        emit(opt, table_csv(json::parse(payload), command == "bps" ? "omega" : "dtbar"));
    else
        emit(opt, payload);
    return 0;
}

int cmd_series(const Options &opt, const std::string &which)
{
    json config = {{"command", "series"}, {"which", which}, {"n", opt.n},
                   {"r", opt.rank},       {"chi", opt.chi}, {"sign", opt.sign}};
    Cap cap = Cap::box(opt.n, 0);
    GradedSeries<Rational> series = GradedSeries<Rational>::one(cap);
    Rational chi = opt.chi == "sym" ? Rational(1) : Rational::parse(opt.chi);
    if (which == "macmahon")
        series = macmahon(opt.sign == "minus" ? MacmahonSign::minus : MacmahonSign::plus,
                          chi, cap);
    else if (which == "coulomb")
        series = coulomb_partition(opt.rank, chi, cap);
    else if (which == "degenerate")
        series = degenerate_partition(opt.rank, chi, cap);
    else
        throw CLI::ValidationError("which", "unknown series '" + which + "'");

    std::string line;
    for (int a = 0; a <= opt.n; ++a)
        line += (a ? "," : "") + series.coeff(a, 0).str();
    std::cout << line << "\n";

    if (!opt.out.empty()) {
        json result = {{"version", artifact_version},
                       {"config", config},
                       {"series", to_json(series)}};
        atomic_write(opt.out, result.dump(2) + "\n");
    }
    return 0;
}

int cmd_verify(const Options &opt, const std::string &suite)
{
    SuiteReport rep;
    if (suite == "ks")
        rep = verify_ks(opt.chi, opt.amax, opt.rmax, opt.jobs);
    else if (suite == "js")
        rep = verify_js(opt.amax);
    else if (suite == "congruence")
        rep = verify_congruence(opt.mod, opt.amax);
    else if (suite == "gw")
        rep = verify_gw(opt.gw_a, opt.gw_r, opt.chi, opt.hmax);
    else if (suite == "properties")
        rep = verify_properties(opt.seed);
    else
        throw CLI::ValidationError("suite", "unknown suite '" + suite + "'");

    std::string text = render_report(rep);
    std::cout << text;
    if (!opt.out.empty())
        atomic_write(opt.out, text);
    return rep.all_pass() ? 0 : 1;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"exact D0-D6 wall-crossing invariants in the tropical vertex group"};
    app.require_subcommand(1);

    Options opt;
    opt.cache_dir = default_cache_dir();

    auto add_common = [&](CLI::App *cmd) {
        cmd->add_option("--chi", opt.chi, "Euler characteristic: an integer or 'sym'");
        cmd->add_option("--amax", opt.amax, "largest D0 charge a");
        cmd->add_option("--rmax", opt.rmax, "largest rank r");
        cmd->add_option("--order", opt.order, "slope order: desc|asc");
        cmd->add_option("--format", opt.format, "output format: json|csv");
        cmd->add_option("--out", opt.out, "output file (default stdout)");
        cmd->add_option("--cache-dir", opt.cache_dir,
                        "result cache directory (default $D0D6_CACHE_DIR)");
        cmd->add_flag("--no-cache", opt.no_cache, "bypass the cache");
        cmd->add_option("--jobs", opt.jobs, "parallel jobs for independent sweeps");
        cmd->add_option("--seed", opt.seed, "seed for randomized property sweeps");
    };

    auto *bps = app.add_subcommand("bps", "BPS invariant table Omega(a, r)");
    bps->add_option("--method", opt.method, "factorization|liepath|closedform");
    add_common(bps);

    auto *dt = app.add_subcommand("dt", "generalized DT invariant table DT-bar(a, r)");
    dt->add_option("--method", opt.method, "factorization|liepath|closedform");
    add_common(dt);

    std::string series_which;
    auto *series = app.add_subcommand("series", "named generating series");
    series->add_option("which", series_which, "macmahon|coulomb|degenerate")->required();
    series->add_option("--n", opt.n, "highest degree");
    series->add_option("--r", opt.rank, "rank parameter");
    series->add_option("--sign", opt.sign, "plus|minus (macmahon)");
    add_common(series);

    std::string verify_suite;
    auto *verify = app.add_subcommand("verify", "verification suites");
    verify->add_option("suite", verify_suite, "ks|js|congruence|gw|properties")->required();
    verify->add_option("--mod", opt.mod, "congruence modulus: 4, 9 or 0 for both");
    verify->add_option("--a", opt.gw_a, "ray component a");
    verify->add_option("--r", opt.gw_r, "ray component r");
    verify->add_option("--hmax", opt.hmax, "largest multiple h");
    add_common(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    try {
        if (bps->parsed())
            return cmd_table(opt, "bps");
        if (dt->parsed())
            return cmd_table(opt, "dt");
        if (series->parsed())
            return cmd_series(opt, series_which);
        if (verify->parsed())
            return cmd_verify(opt, verify_suite);
    } catch (const CLI::ValidationError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
