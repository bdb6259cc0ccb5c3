#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include "tsplab/certificates.hpp"
#include "tsplab/common.hpp"
#include "tsplab/exact.hpp"
#include "tsplab/heuristics.hpp"
#include "tsplab/instances.hpp"
#include "tsplab/metrics.hpp"

namespace tsplab {

using Ratio = boost::rational<std::int64_t>;

/// One line of a ratio table. Lengths are scaled integers (see `scale`).
struct ExperimentRow {
    std::int64_t param = 0;
    std::size_t n = 0;
    Length heuristic_len;                    // full tour produced by the heuristic
    std::optional<std::int64_t> partial_len;  // certificate-based length the bound is stated for
    std::int64_t opt = 0;
    std::string opt_tag;
    std::int64_t scale = 1;
    Ratio ratio;
    Ratio paper_bound;
    bool bound_applies = false;  // bound claims start at k >= 1 for the grid families
    std::optional<std::int64_t> exact_opt;     // Held-Karp value when the instance is small enough
    std::optional<std::int64_t> constructive;  // hub family: constructive upper bound on the optimum
};

/// Exact check of  ratio >= log_3(x) / divisor,  i.e.  3^(divisor * ratio) >= x.
inline bool ratio_at_least_log3(Ratio ratio, std::int64_t divisor, std::int64_t x) {
    using boost::multiprecision::cpp_int;
    if (ratio <= 0) return x <= 1;
    const auto num = static_cast<unsigned>(ratio.numerator() * divisor);
    const auto den = static_cast<unsigned>(ratio.denominator());
    const cpp_int lhs = boost::multiprecision::pow(cpp_int(3), num);
    const cpp_int rhs = boost::multiprecision::pow(cpp_int(x), den);
    return lhs >= rhs;
}

namespace detail {

[[noreturn]] inline void verification_failed(const std::string& what, const Verdict& v) {
    std::string msg = what + ": verification failed at step " + std::to_string(v.fail_step.value_or(0)) + " (" +
                      v.reason + ")";
    if (v.witness) msg += ", witness {" + std::to_string(v.witness->u) + ", " + std::to_string(v.witness->v) + "}";
    throw Error(ErrorCode::Verification, msg);
}

inline void check(bool cond, const std::string& what) {
    if (!cond) throw Error(ErrorCode::Assertion, "assertion failed: " + what);
}

inline bool trace_starts_with(const std::vector<TraceEvent>& trace, const std::vector<Edge>& edges) {
    if (trace.size() < edges.size()) return false;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (!(trace[i].edge == edges[i])) return false;
    }
    return true;
}

inline std::string ratio_str(Ratio r) { return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator()); }

}  // namespace detail

/// Greedy on the grid family for k = 0..k_max.
///
/// Per level: verify the certificate, run greedy with the certificate first,
/// and check  partial/opt > (2k+8)/9  and  partial/opt >= (2/9) log_3(n+1)
/// for k >= 1, exactly.
inline std::vector<ExperimentRow> run_gk_experiment(int k_max, GkKind kind = GkKind::graphic()) {
    check_level(k_max);
    std::vector<ExperimentRow> rows;
    for (int k = 0; k <= k_max; ++k) {
        const auto [instance, meta] = gen_gk(k, kind);
        const Certificate cert = gk_certificate(k);
        const Verdict verdict = verify_greedy_run(instance, cert);
        const std::string label = "G" + std::to_string(k) + " (" + kind.label() + ")";
        if (!verdict) detail::verification_failed(label, verdict);

        const Tour tour = greedy_tour(instance, CertificateFirst(cert));
        detail::check(detail::trace_starts_with(tour.trace, cert.edges), label + ": greedy trace starts with certificate");

        ExperimentRow row;
        row.param = k;
        row.n = instance.size();
        row.heuristic_len = tour.length;
        row.partial_len = verdict.stats.total.scaled;
        detail::check(verdict.stats.total.exact, label + ": certificate length is an integer");
        const OptValue opt = family_opt(Family::Gk, k).front();
        row.opt = opt.length_scaled;
        row.opt_tag = opt.tag;
        row.scale = instance.scale();
        row.ratio = Ratio(*row.partial_len, row.opt);
        row.paper_bound = Ratio(2 * k + 8, 9);
        row.bound_applies = k >= 1;

        if (k == 0 && instance.exact_lengths()) {
            row.exact_opt = held_karp(instance).length_scaled;
            detail::check(*row.exact_opt == row.opt, label + ": Held-Karp optimum equals n");
        }
        if (row.bound_applies) {
            detail::check(row.ratio > row.paper_bound,
                          label + ": " + detail::ratio_str(row.ratio) + " > " + detail::ratio_str(row.paper_bound));
            detail::check(ratio_at_least_log3(row.ratio * Ratio(9, 2), 1, static_cast<std::int64_t>(row.n) + 1),
                          label + ": ratio >= (2/9) log_3(n+1)");
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Clarke-Wright on the hub family for k = 0..k_max.
///
/// `partial_len` is the certificate length plus the two hub edges, `opt` the
/// bound n + 3^{k+2}; for k >= 1 their ratio must reach (2k+17)/18 and
/// log_3(n)/9. At k = 0 the measured tour must equal the Held-Karp optimum.
inline std::vector<ExperimentRow> run_cw_experiment(int k_max) {
    check_level(k_max);
    std::vector<ExperimentRow> rows;
    for (int k = 0; k <= k_max; ++k) {
        const auto [instance, meta, hub] = gen_cw_instance(k);
        const Certificate cert = cw_certificate(k);
        const Verdict verdict = verify_cw_run(instance, hub.hub_id, cert);
        const std::string label = "CW" + std::to_string(k);
        if (!verdict) detail::verification_failed(label, verdict);

        const Tour tour = clarke_wright(instance, hub.hub_id, CertificateFirst(cert));
        detail::check(detail::trace_starts_with(tour.trace, cert.edges),
                      label + ": savings trace starts with certificate");

        const auto opts = family_opt(Family::CwGk, k);
        ExperimentRow row;
        row.param = k;
        row.n = instance.size();
        row.heuristic_len = tour.length;
        row.partial_len = verdict.stats.total.scaled + 2 * hub.hub_len_scaled;
        row.opt = opts[0].length_scaled;
        row.opt_tag = opts[0].tag;
        row.constructive = opts[1].length_scaled;
        row.scale = instance.scale();
        row.ratio = Ratio(*row.partial_len, row.opt);
        row.paper_bound = Ratio(2 * k + 17, 18);
        row.bound_applies = k >= 1;

        if (instance.size() <= kHeldKarpCap) {
            row.exact_opt = held_karp(instance).length_scaled;
            detail::check(tour.length.scaled == *row.exact_opt, label + ": measured tour equals Held-Karp optimum");
        }
        if (row.bound_applies) {
            detail::check(row.ratio >= row.paper_bound,
                          label + ": " + detail::ratio_str(row.ratio) + " >= " + detail::ratio_str(row.paper_bound));
            detail::check(ratio_at_least_log3(row.ratio, 9, static_cast<std::int64_t>(row.n)),
                          label + ": ratio >= log_3(n)/9");
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline void check_one_two_experiment_size(std::int64_t n) {
    check_one_two_size(n);
    if (n > static_cast<std::int64_t>(kHeldKarpCap)) {
        throw Error(ErrorCode::OutOfRange, "1-2 experiment needs n <= " + std::to_string(kHeldKarpCap));
    }
}

/// Certified greedy on the 1-2 family: length (3n-1)/2, optimum n, ratio
/// exactly 3/2 - 1/(2n).
inline std::vector<ExperimentRow> run_onetwo_experiment(const std::vector<std::int64_t>& n_list) {
    for (auto n : n_list) check_one_two_experiment_size(n);
    std::vector<ExperimentRow> rows;
    for (auto n : n_list) {
        const Instance instance = gen_one_two(n);
        const Certificate cert = one_two_certificate(n);
        const std::string label = "onetwo" + std::to_string(n);
        const Verdict verdict = verify_greedy_run(instance, cert);
        if (!verdict) detail::verification_failed(label, verdict);

        const Tour tour = greedy_tour(instance, CertificateFirst(cert));
        const OptResult opt = held_karp(instance);

        ExperimentRow row;
        row.param = n;
        row.n = instance.size();
        row.heuristic_len = tour.length;
        row.partial_len = verdict.stats.total.scaled;
        row.opt = opt.length_scaled;
        row.opt_tag = "exact";
        row.exact_opt = opt.length_scaled;
        row.ratio = Ratio(tour.length.scaled, opt.length_scaled);
        row.paper_bound = Ratio(3, 2) - Ratio(1, 2 * n);
        row.bound_applies = true;

        detail::check(detail::trace_starts_with(tour.trace, cert.edges), label + ": greedy trace starts with certificate");
        detail::check(tour.length.scaled == (3 * n - 1) / 2, label + ": greedy length is (3n-1)/2");
        detail::check(opt.length_scaled == n, label + ": optimum is n");
        detail::check(row.ratio == row.paper_bound, label + ": ratio equals 3/2 - 1/(2n)");
        rows.push_back(std::move(row));
    }
    return rows;
}

struct OneTwoRandomReport {
    std::int64_t n = 0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    Ratio max_ratio{1};
    std::int64_t worst_greedy = 0;
    std::int64_t worst_opt = 0;
    std::size_t nonoptimal = 0;
    std::size_t ratio_violations = 0;
    std::size_t structure_violations = 0;  // trials with k > 2m - 1

    [[nodiscard]] bool ok() const noexcept { return ratio_violations == 0 && structure_violations == 0; }
};

/// Random {1,2} instances: greedy with seeded tie-breaks against Held-Karp.
///
/// Counts trials whose ratio exceeds 3/2 - 1/(2n), and non-optimal trials where
/// the optimum uses more than 2m - 1 unit edges, m being the greedy tour's.
inline OneTwoRandomReport random_onetwo_check(std::int64_t n, std::size_t trials, std::uint64_t seed) {
    if (n < 5 || n > 12) throw Error(ErrorCode::OutOfRange, "random 1-2 check supports 5 <= n <= 12");
    if (trials < 1) throw Error(ErrorCode::InvalidArgument, "random 1-2 check needs at least one trial");

    OneTwoRandomReport report;
    report.n = n;
    report.trials = trials;
    report.seed = seed;
    const Ratio bound = Ratio(3, 2) - Ratio(1, 2 * n);
    const auto count = static_cast<std::size_t>(n);
    std::mt19937_64 rng(seed);

    auto unit_edges = [](const Instance& inst, const std::vector<CityId>& order) {
        std::int64_t m = 0;
        for (std::size_t i = 0; i < order.size(); ++i) m += inst.key(order[i], order[(i + 1) % order.size()]).value == 1;
        return m;
    };

    for (std::size_t t = 0; t < trials; ++t) {
        DistanceMatrix d(count);
        for (std::size_t i = 0; i < count; ++i) {
            for (std::size_t j = i + 1; j < count; ++j) d.set_symmetric(i, j, (rng() & 1) ? 1 : 2);
        }
        const Instance inst = Instance::explicit_matrix("random12", std::move(d));
        const Tour tour = greedy_tour(inst, SeededRandom{rng()});
        const OptResult opt = held_karp(inst);
        const Ratio ratio(tour.length.scaled, opt.length_scaled);
        if (ratio > report.max_ratio) {
            report.max_ratio = ratio;
            report.worst_greedy = tour.length.scaled;
            report.worst_opt = opt.length_scaled;
        }
        if (ratio > bound) ++report.ratio_violations;
        if (tour.length.scaled > opt.length_scaled) {
            ++report.nonoptimal;
            const std::int64_t m = unit_edges(inst, tour.order);
            const std::int64_t k = unit_edges(inst, opt.tour);
            if (k > 2 * m - 1) ++report.structure_violations;
        }
    }
    if (report.worst_opt == 0) {
        report.worst_greedy = report.worst_opt = n;  // every trial optimal
    }
    return report;
}

inline ExperimentRow onetwo_random_row(const OneTwoRandomReport& report) {
    ExperimentRow row;
    row.param = report.n;
    row.n = static_cast<std::size_t>(report.n);
    row.heuristic_len.scaled = report.worst_greedy;
    row.heuristic_len.approx_scaled = static_cast<double>(report.worst_greedy);
    row.opt = report.worst_opt;
    row.opt_tag = "exact";
    row.ratio = report.max_ratio;
    row.paper_bound = Ratio(3, 2) - Ratio(1, 2 * report.n);
    row.bound_applies = true;
    return row;
}

enum class ReportFormat { Csv, Svg };

inline constexpr const char* kCsvHeader =
    "param,n,heuristic_len,partial_len,opt,opt_tag,ratio_num,ratio_den,paper_bound_num,paper_bound_den";

namespace detail {

inline std::string format_length(const Length& len) {
    if (len.exact) return std::to_string(len.scaled);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", len.approx_scaled);
    return buf;
}

inline double ratio_value(Ratio r) { return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator()); }

inline std::string emit_csv(const std::vector<ExperimentRow>& rows) {
    std::ostringstream out;
    out << kCsvHeader << "\n";
    for (const auto& r : rows) {
        out << r.param << "," << r.n << "," << format_length(r.heuristic_len) << ","
            << (r.partial_len ? std::to_string(*r.partial_len) : std::string()) << "," << r.opt << "," << r.opt_tag
            << "," << r.ratio.numerator() << "," << r.ratio.denominator() << "," << r.paper_bound.numerator() << ","
            << r.paper_bound.denominator() << "\n";
    }
    return out.str();
}

inline std::string emit_svg(const std::vector<ExperimentRow>& rows) {
    constexpr double kW = 640, kH = 400, kPad = 50;
    double x_min = 1e300, x_max = -1e300, y_min = 1e300, y_max = -1e300;
    for (const auto& r : rows) {
        const double x = std::log(static_cast<double>(r.n)) / std::log(3.0);
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
        for (double y : {ratio_value(r.ratio), ratio_value(r.paper_bound)}) {
            y_min = std::min(y_min, y);
            y_max = std::max(y_max, y);
        }
    }
    if (x_max - x_min < 1e-9) x_max = x_min + 1;
    if (y_max - y_min < 1e-9) y_max = y_min + 1;
    auto px = [&](double x) { return kPad + (x - x_min) / (x_max - x_min) * (kW - 2 * kPad); };
    auto py = [&](double y) { return kH - kPad - (y - y_min) / (y_max - y_min) * (kH - 2 * kPad); };
    char buf[96];
    auto polyline = [&](const char* cls, const char* color, auto value) {
        std::string pts;
        for (const auto& r : rows) {
            const double x = std::log(static_cast<double>(r.n)) / std::log(3.0);
            std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", pts.empty() ? "" : " ", px(x), py(value(r)));
            pts += buf;
        }
        return std::string("  <polyline class=\"") + cls + "\" fill=\"none\" stroke=\"" + color + "\" points=\"" + pts +
               "\"/>\n";
    };

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\" viewBox=\"0 0 "
        << kW << " " << kH << "\">\n";
    out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "  <line x1=\"" << kPad << "\" y1=\"" << kH - kPad << "\" x2=\"" << kW - kPad << "\" y2=\"" << kH - kPad
        << "\" stroke=\"black\"/>\n";
    out << "  <line x1=\"" << kPad << "\" y1=\"" << kPad << "\" x2=\"" << kPad << "\" y2=\"" << kH - kPad
        << "\" stroke=\"black\"/>\n";
    out << "  <text x=\"" << kW / 2 << "\" y=\"" << kH - 10 << "\" text-anchor=\"middle\">log3(n)</text>\n";
    out << "  <text x=\"15\" y=\"" << kH / 2 << "\" transform=\"rotate(-90 15 " << kH / 2
        << ")\" text-anchor=\"middle\">ratio</text>\n";
    out << polyline("ratio", "steelblue", [](const ExperimentRow& r) { return ratio_value(r.ratio); });
    out << polyline("bound", "firebrick", [](const ExperimentRow& r) { return ratio_value(r.paper_bound); });
    out << "</svg>\n";
    return out.str();
}

}  // namespace detail

inline std::string emit_report(const std::vector<ExperimentRow>& rows, ReportFormat format) {
    if (rows.empty()) throw Error(ErrorCode::InvalidArgument, "emit_report needs at least one row");
    return format == ReportFormat::Csv ? detail::emit_csv(rows) : detail::emit_svg(rows);
}

}  // namespace tsplab
