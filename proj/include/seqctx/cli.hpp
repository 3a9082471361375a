#pragma once

#include <algorithm>
#include <array>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "seqctx/json_io.hpp"

namespace seqctx::cli {

struct Config {
    SnapOpts snap;
    uint64_t seed = 0;  // reserved for randomized diagnostics
};

inline io::Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file '" + path + "'");
    try {
        return io::Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("malformed JSON in '" + path + "': " + e.what());
    }
}

inline std::vector<int> parse_index_list(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            size_t used = 0;
            int v = std::stoi(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ParseError("invalid index '" + item + "' in list");
        }
    }
    return out;
}

inline std::vector<Rational> parse_rational_list(const std::string& csv) {
    std::vector<Rational> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(parse_rational(item));
    }
    if (out.empty()) throw ParseError("empty rational list");
    return out;
}

inline std::array<int, 4> parse_target_quadruple(const std::string& bits) {
    if (bits.size() != 4 || bits.find_first_not_of("01") != std::string::npos)
        throw ParseError("target must be 4 bits, e.g. 0111");
    std::array<int, 4> out{};
    for (size_t i = 0; i < 4; ++i) out[i] = bits[i] - '0';
    return out;
}

inline std::string run_report_csv(const RunReport& report) {
    std::string out = "i,k,p0,p1,fail\n";
    for (const auto& row : report.rows) {
        out += row.input.to_string() + "," + row.k.to_string() + "," + to_string(row.dist.p0) +
               "," + to_string(row.dist.p1) + "," + to_string(row.fail) + "\n";
    }
    out += "epsilon," + to_string(report.epsilon) + "\n";
    return out;
}

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "q,epsilon,ncf,rhs,slack\n";
    for (const auto& row : rows) {
        out += to_string(row.q) + "," + to_string(row.epsilon) + "," + to_string(row.ncf_value) +
               "," + to_string(row.rhs) + "," + to_string(row.slack) + "\n";
    }
    return out;
}

// Exit policy for bound verification: 0 when the inequality holds, 2 when it
// is violated (which would signal an implementation bug, never valid input).
inline int bound_exit_code(const BoundReport& report) { return report.holds ? 0 : 2; }

inline Config config_from_env() {
    Config cfg;
    if (const char* env = std::getenv("SEQCTX_MAX_DEN")) {
        try {
            size_t used = 0;
            unsigned long long v = std::stoull(env, &used);
            if (used != std::string(env).size() || v == 0) throw std::invalid_argument(env);
            cfg.snap.max_den = v;
        } catch (const std::exception&) {
            throw ParseError("SEQCTX_MAX_DEN must be a positive integer");
        }
    }
    return cfg;
}

// Parses and dispatches one invocation; args excludes the program name.
// Output is fully assembled before anything is written, so failures never
// leave partial output behind.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact-arithmetic toolkit for sequential-transformation contextuality"};
    app.require_subcommand(1);

    uint64_t seed = 0;
    app.add_option("--seed", seed, "Seed for randomized diagnostics (reserved)");

    std::string protocol_path;
    std::string format = "json";
    auto* simulate = app.add_subcommand("simulate", "Run a protocol and report per-input statistics");
    simulate->add_option("--protocol", protocol_path, "Protocol JSON file")->required();
    simulate->add_option("--format", format, "Output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    std::string function_path;
    std::string family = "affine";
    std::string method = "fwht";
    auto* nu_cmd = app.add_subcommand("nu", "Nonlinearity of a Boolean function");
    nu_cmd->add_option("--function", function_path, "Function JSON file")->required();
    nu_cmd->add_option("--family", family, "Candidate family: affine or linear")
        ->check(CLI::IsMember({"affine", "linear"}));
    nu_cmd->add_option("--method", method, "fwht or bruteforce")
        ->check(CLI::IsMember({"fwht", "bruteforce"}));

    std::string model_path;
    auto* ncf_cmd = app.add_subcommand("ncf", "Non-contextual fraction of an empirical model");
    ncf_cmd->add_option("--model", model_path, "Empirical model JSON file")->required();

    std::string bound_path;
    auto* bound_cmd = app.add_subcommand("bound", "Verify epsilon >= NCF * nu for a protocol");
    bound_cmd->add_option("--protocol", bound_path, "Protocol JSON file")->required();

    std::string sweep_path;
    std::string qs_list;
    std::string sweep_format = "csv";
    auto* sweep_cmd = app.add_subcommand("sweep", "Bound verification across noise levels");
    sweep_cmd->add_option("--protocol", sweep_path, "Protocol JSON file")->required();
    sweep_cmd->add_option("--qs", qs_list, "Comma-separated noise levels, e.g. 0,1/10,1/5")
        ->required();
    sweep_cmd->add_option("--format", sweep_format, "Output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    int search_s = 0;
    std::string controls_list;
    std::string targets_list;
    std::string target_bits;
    bool relax_measurement = false;
    auto* search_cmd =
        app.add_subcommand("search-ontology", "Exhaustive non-contextual assignment search");
    search_cmd->add_option("--s", search_s, "Ontic space dimension (1..4)")->required();
    search_cmd->add_option("--controls", controls_list, "Comma-separated control bit indices");
    search_cmd->add_option("--targets", targets_list, "Comma-separated target bit indices");
    search_cmd->add_option("--target", target_bits, "Four outcome bits indexed by (a,b), e.g. 0111")
        ->required();
    search_cmd->add_flag("--relax-measurement", relax_measurement,
                         "Allow the measurement map outside the commutative class");

    std::string maps_path;
    auto* commute_cmd = app.add_subcommand("commute-check", "Pairwise commutation of ontic maps");
    commute_cmd->add_option("--maps", maps_path, "Map list JSON file")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        Config cfg = config_from_env();
        cfg.seed = seed;

        std::string payload;
        int exit_code = 0;

        if (*simulate) {
            Protocol p = io::parse_protocol(load_json(protocol_path));
            RunReport report = run(p, cfg.snap);
            payload = format == "csv" ? run_report_csv(report)
                                      : io::run_report_json(report).dump() + "\n";
        } else if (*nu_cmd) {
            BoolFn g = io::parse_boolfn(load_json(function_path));
            AffineFamily fam = family == "linear" ? AffineFamily::linear : AffineFamily::affine;
            Rational value = method == "bruteforce" ? nu_bruteforce(g, fam) : nu_fwht(g, fam);
            io::Json j;
            j["r"] = g.arity();
            j["family"] = family;
            j["method"] = method;
            j["nu"] = to_string(value);
            payload = j.dump() + "\n";
        } else if (*ncf_cmd) {
            EmpiricalModel model = io::parse_model(load_json(model_path));
            payload = io::ncf_result_json(ncf(model)).dump() + "\n";
        } else if (*bound_cmd) {
            Protocol p = io::parse_protocol(load_json(bound_path));
            BoundReport report = verify_bound(p, cfg.snap);
            payload = io::bound_report_json(report).dump() + "\n";
            exit_code = bound_exit_code(report);
        } else if (*sweep_cmd) {
            Protocol p = io::parse_protocol(load_json(sweep_path));
            auto rows = sweep_noise(p, parse_rational_list(qs_list), cfg.snap);
            payload = sweep_format == "csv" ? sweep_csv(rows) : io::sweep_json(rows).dump() + "\n";
        } else if (*search_cmd) {
            Partition part(search_s, parse_index_list(controls_list),
                           parse_index_list(targets_list));
            auto target = parse_target_quadruple(target_bits);
            SearchResult result = exhaustive_search(search_s, part, target, relax_measurement);
            payload = io::search_result_json(search_s, part, target, result).dump() + "\n";
        } else if (*commute_cmd) {
            io::Json j = load_json(maps_path);
            int s = io::parse_int(io::field(j, "s"), "s");
            check_gf2_dim(s);
            std::vector<GF2AffineMap> maps;
            for (const auto& m : io::field(j, "maps")) maps.push_back(io::parse_map(m, s));
            io::Json report;
            report["s"] = s;
            io::Json pairs = io::Json::array();
            bool all = true;
            for (size_t a = 0; a < maps.size(); ++a)
                for (size_t b = a + 1; b < maps.size(); ++b) {
                    bool comm = commutes(maps[a], maps[b]);
                    all = all && comm;
                    io::Json pair;
                    pair["i"] = a;
                    pair["j"] = b;
                    pair["commute"] = comm;
                    pairs.push_back(std::move(pair));
                }
            report["all_commute"] = all;
            report["pairs"] = pairs;
            if (j.contains("controls") || j.contains("targets")) {
                Partition part(s, io::parse_int_list(io::field(j, "controls"), "controls"),
                               io::parse_int_list(io::field(j, "targets"), "targets"));
                report["class_valid"] =
                    validate_commutative_class(std::span<const GF2AffineMap>(maps), part);
            }
            payload = report.dump() + "\n";
        }

        out << payload;
        return exit_code;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace seqctx::cli
