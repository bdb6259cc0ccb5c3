// tsplab: generate adversarial TSP instances, run the greedy and savings
// heuristics, verify certificates, compute exact optima and ratio tables.
//
// Exit codes: 0 success, 2 assertion failure, 3 verification failure,
// 4 I/O or parse error, 1 any other error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tsplab/tsplab.hpp"

namespace {

using namespace tsplab;

constexpr int kExitAssertion = 2;
constexpr int kExitVerification = 3;
constexpr int kExitIo = 4;

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::Assertion: return kExitAssertion;
        case ErrorCode::Verification: return kExitVerification;
        case ErrorCode::Io:
        case ErrorCode::Parse: return kExitIo;
        default: return 1;
    }
}

GkKind parse_metric(const std::string& text) {
    if (text == "l1") return GkKind::l1();
    if (text == "l2") return GkKind::l2();
    if (text == "graphic") return GkKind::graphic();
    if (text.starts_with("lp:")) {
        const int p = std::stoi(text.substr(3));
        if (p < 1) throw Error(ErrorCode::InvalidArgument, "lp:P needs P >= 1");
        return GkKind::lp(p);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown metric '" + text + "' (expected l1, l2, lp:P or graphic)");
}

TieBreak parse_tiebreak(const std::string& text) {
    if (text == "lex") return Lexicographic{};
    if (text.starts_with("cert:")) return CertificateFirst(read_certificate(read_text_file(text.substr(5))));
    if (text.starts_with("seed:")) return SeededRandom{std::stoull(text.substr(5))};
    throw Error(ErrorCode::InvalidArgument, "unknown tie-break '" + text + "' (expected lex, cert:FILE or seed:N)");
}

std::string describe(const Length& len) {
    std::ostringstream out;
    if (len.exact) {
        out << len.scaled;
        if (len.scale != 1) out << " (scale " << len.scale << ", true length " << len.value() << ")";
    } else {
        out << len.value() << " (inexact)";
    }
    return out.str();
}

void print_verdict(const Verdict& v) {
    if (v.pass) {
        std::cout << "PASS edges=" << v.stats.edge_count << " total=" << describe(v.stats.total) << "\n";
        std::cout << "lengths:";
        for (const auto& [len, count] : v.stats.length_histogram) std::cout << " " << len << "x" << count;
        std::cout << "\n";
        return;
    }
    std::cout << "FAIL step=" << v.fail_step.value_or(0) << " reason=\"" << v.reason << "\"";
    if (v.witness) std::cout << " witness=" << v.witness->u << "," << v.witness->v;
    std::cout << "\n";
}

std::vector<std::int64_t> parse_list(const std::string& text) {
    std::vector<std::int64_t> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(std::stoll(item));
    }
    return out;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        write_text_file(out_path, text);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"TSP heuristics laboratory: greedy and Clarke-Wright worst cases"};
    app.require_subcommand(1);

    // generate
    std::string family = "gk";
    std::int64_t param = 0;
    std::string metric = "graphic";
    std::string out_path;
    std::string cert_out;
    auto* generate = app.add_subcommand("generate", "Write an adversarial instance (and its certificate)");
    generate->add_option("--family", family, "gk, cwgk or onetwo")->check(CLI::IsMember({"gk", "cwgk", "onetwo"}));
    generate->add_option("--param", param, "Level k (gk, cwgk) or city count n (onetwo)")->required();
    generate->add_option("--metric", metric, "l1, l2, lp:P or graphic (gk only)");
    generate->add_option("--out", out_path, "Instance file (TSPLIB)")->required();
    generate->add_option("--cert", cert_out, "Certificate file");

    // run
    std::string algo = "greedy";
    std::string in_path;
    std::string tiebreak = "lex";
    std::optional<CityId> hub;
    bool show_trace = false;
    auto* run = app.add_subcommand("run", "Run a heuristic on an instance");
    run->add_option("--algo", algo, "greedy or cw")->check(CLI::IsMember({"greedy", "cw"}));
    run->add_option("--in", in_path, "Instance file")->required();
    run->add_option("--tiebreak", tiebreak, "lex, cert:FILE or seed:N");
    run->add_option("--hub", hub, "Hub city for cw (default: last city)");
    run->add_flag("--trace", show_trace, "Print accepted edges");

    // verify
    std::string cert_in;
    auto* verify = app.add_subcommand("verify", "Check a certificate against a heuristic's selection rule");
    verify->add_option("--in", in_path, "Instance file")->required();
    verify->add_option("--cert", cert_in, "Certificate file")->required();
    verify->add_option("--algo", algo, "greedy or cw")->check(CLI::IsMember({"greedy", "cw"}));
    verify->add_option("--hub", hub, "Hub city for cw (default: last city)");

    // exact
    std::string method = "hk";
    auto* exact = app.add_subcommand("exact", "Exact optimum of a small instance");
    exact->add_option("--in", in_path, "Instance file")->required();
    exact->add_option("--method", method, "hk or brute")->check(CLI::IsMember({"hk", "brute"}));

    // experiment
    std::string suite;
    std::optional<int> kmax;
    std::string nlist;
    std::size_t trials = 200;
    std::uint64_t seed = 42;
    std::string format = "csv";
    auto* experiment = app.add_subcommand("experiment", "Produce a ratio table");
    experiment->add_option("--suite", suite, "gk, cw, onetwo or onetwo-random")
        ->required()
        ->check(CLI::IsMember({"gk", "cw", "onetwo", "onetwo-random"}));
    auto* kmax_opt = experiment->add_option("--kmax", kmax, "Largest level (gk: 4, cw: 3)");
    experiment->add_option("--nlist", nlist, "Comma-separated city counts")->excludes(kmax_opt);
    experiment->add_option("--trials", trials, "Trials per n (onetwo-random)");
    experiment->add_option("--seed", seed, "Seed (onetwo-random)");
    experiment->add_option("--metric", metric, "Metric for the gk suite");
    experiment->add_option("--format", format, "csv or svg")->check(CLI::IsMember({"csv", "svg"}));
    experiment->add_option("--out", out_path, "Output file (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*generate) {
            Certificate cert;
            std::string text;
            if (family == "gk") {
                const auto gk = gen_gk(static_cast<int>(param), parse_metric(metric));
                text = write_tsplib(gk.instance);
                cert = gk_certificate(static_cast<int>(param));
            } else if (family == "cwgk") {
                text = write_tsplib(gen_cw_instance(static_cast<int>(param)).instance);
                cert = cw_certificate(static_cast<int>(param));
            } else {
                text = write_tsplib(gen_one_two(param));
                cert = one_two_certificate(param);
            }
            write_text_file(out_path, text);
            if (!cert_out.empty()) write_text_file(cert_out, write_certificate(cert));
            return 0;
        }

        if (*run) {
            const Instance instance = read_tsplib(read_text_file(in_path));
            const TieBreak tie = parse_tiebreak(tiebreak);
            const CityId hub_id = hub.value_or(instance.size() - 1);
            const Tour tour = algo == "greedy" ? greedy_tour(instance, tie) : clarke_wright(instance, hub_id, tie);
            std::cout << "algo=" << algo << " n=" << instance.size() << " length=" << describe(tour.length) << "\n";
            std::cout << "tour:";
            for (CityId c : tour.order) std::cout << " " << c;
            std::cout << "\n";
            if (show_trace) {
                for (const auto& ev : tour.trace) std::cout << ev.edge.u << " " << ev.edge.v << " " << ev.value << "\n";
            }
            return 0;
        }

        if (*verify) {
            const Instance instance = read_tsplib(read_text_file(in_path));
            const Certificate cert = read_certificate(read_text_file(cert_in));
            const Verdict verdict = algo == "greedy"
                                        ? verify_greedy_run(instance, cert)
                                        : verify_cw_run(instance, hub.value_or(instance.size() - 1), cert);
            print_verdict(verdict);
            if (!verdict) return kExitVerification;
            const CertificateAudit audit = certificate_stats(instance, cert);
            if (!audit.ok()) {
                for (const auto& f : audit.failures) std::cout << "AUDIT " << f << "\n";
                return kExitVerification;
            }
            std::cout << "audit: ok";
            if (audit.endpoints.size() == 2) std::cout << " endpoints=" << audit.endpoints[0] << "," << audit.endpoints[1];
            std::cout << "\n";
            return 0;
        }

        if (*exact) {
            const Instance instance = read_tsplib(read_text_file(in_path));
            const OptResult opt = method == "hk" ? held_karp(instance) : brute_force(instance);
            std::cout << "method=" << method << " n=" << instance.size() << " length=" << opt.length_scaled;
            if (opt.scale != 1) std::cout << " (scale " << opt.scale << ")";
            std::cout << "\ntour:";
            for (CityId c : opt.tour) std::cout << " " << c;
            std::cout << "\n";
            return 0;
        }

        if (*experiment) {
            std::vector<ExperimentRow> rows;
            bool ok = true;
            if (suite == "gk") {
                rows = run_gk_experiment(kmax.value_or(4), parse_metric(metric));
            } else if (suite == "cw") {
                rows = run_cw_experiment(kmax.value_or(3));
            } else if (suite == "onetwo") {
                rows = run_onetwo_experiment(nlist.empty() ? std::vector<std::int64_t>{5, 7, 9, 11, 13} : parse_list(nlist));
            } else {
                for (auto n : nlist.empty() ? std::vector<std::int64_t>{6, 8, 10} : parse_list(nlist)) {
                    const auto report = random_onetwo_check(n, trials, seed);
                    if (!report.ok()) {
                        std::cerr << "n=" << n << ": " << report.ratio_violations << " ratio violations, "
                                  << report.structure_violations << " unit-edge count violations\n";
                        ok = false;
                    }
                    rows.push_back(onetwo_random_row(report));
                }
            }
            emit(emit_report(rows, format == "csv" ? ReportFormat::Csv : ReportFormat::Svg), out_path);
            return ok ? 0 : kExitAssertion;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
