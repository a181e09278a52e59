#include "goldbach/buchstab.hpp"
#include "goldbach/circle.hpp"
#include "goldbach/expsum.hpp"
#include "goldbach/harness.hpp"
#include "goldbach/regions.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

using json = nlohmann::ordered_json;
using namespace gb;

namespace {

constexpr int kPass = 0;
constexpr int kUsage = 1;
constexpr int kFail = 2;

std::string num(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Compact JSON with every float at 17 significant digits.
void emit(std::ostream &os, const json &j) {
    switch (j.type()) {
    case json::value_t::object: {
        os << '{';
        bool first = true;
        for (const auto &[k, v] : j.items()) {
            if (!first) os << ',';
            first = false;
            os << json(k).dump() << ':';
            emit(os, v);
        }
        os << '}';
        break;
    }
    case json::value_t::array: {
        os << '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) os << ',';
            emit(os, j[i]);
        }
        os << ']';
        break;
    }
    case json::value_t::number_float:
        os << num(j.get<double>());
        break;
    default:
        os << j.dump();
    }
}

std::string cell(const json &v) {
    if (v.is_number_float()) return num(v.get<double>());
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

/// A report: the JSON object, plus the rows its CSV form prints.
struct Report {
    json body = json::object();
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;
    int status = kPass;
};

void print(const Report &r, const std::string &fmt) {
    if (fmt == "json") {
        emit(std::cout, r.body);
        std::cout << '\n';
        return;
    }
    if (!r.columns.empty()) {
        for (std::size_t i = 0; i < r.columns.size(); ++i) std::cout << (i ? "," : "") << r.columns[i];
        std::cout << '\n';
        for (const auto &row : r.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) std::cout << (i ? "," : "") << cell(row[i]);
            std::cout << '\n';
        }
        return;
    }
    std::cout << "key,value\n";
    for (const auto &[k, v] : r.body.items())
        if (!v.is_structured()) std::cout << k << ',' << cell(v) << '\n';
}

struct Common {
    u64 seed = 42;
    int threads = 0;
    std::string out = "json";
    std::string config;

    InstanceConstants constants() const {
        if (config.empty()) return {};
        return InstanceConstants::from_map(parse_config_file(config));
    }
};

void add_common(CLI::App *sub, Common &c) {
    sub->add_option("--seed", c.seed, "random seed");
    sub->add_option("--threads", c.threads, "OpenMP threads (0 keeps the runtime default)")->check(CLI::NonNegativeNumber);
    sub->add_option("--out", c.out, "output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--config", c.config, "key=value file overriding C1..C5")->check(CLI::ExistingFile);
}

json constants_json(const InstanceConstants &C) {
    return {{"C1", C.C1}, {"C2", C.C2}, {"C3", C.C3}, {"C4", C.C4}, {"C5", C.C5}};
}

json instance_json(const GoldbachInstance &inst) {
    return {{"N0", inst.N0},
            {"k", inst.k},
            {"X", inst.X},
            {"a0", inst.sys.a0},
            {"int_lo", inst.int_lo},
            {"int_hi", inst.int_hi},
            {"b_star_lo", inst.anchor.b_star_lo},
            {"b_star_hi", inst.anchor.b_star_hi},
            {"constants", constants_json(inst.C)}};
}

// verify

struct VerifyArgs {
    i64 n0 = 100003;
    int a0 = 7;
    double gamma0 = 0.95;
    bool exhaustive = false;
    bool strict = false;
};

Report run_verify(const VerifyArgs &a, const Common &c) {
    VerifyOptions opt;
    opt.exhaustive = a.exhaustive;
    opt.strict_window = a.strict;
    opt.C = c.constants();
    VerifyResult r = verify_hybrid(a.n0, a.a0, a.gamma0, opt);
    Report rep;
    rep.body["N0"] = a.n0;
    rep.body["a0"] = a.a0;
    rep.body["gamma0"] = a.gamma0;
    rep.body["mode"] = a.strict ? "window" : "full";
    rep.body["found"] = r.found;
    if (a.exhaustive) {
        rep.body["count"] = r.count;
        rep.body["weighted"] = r.weighted;
    }
    if (r.found)
        rep.body["sample"] = {{"p1", r.sample.p1}, {"p2", r.sample.p2}, {"p3", r.sample.p3}, {"weight", r.sample.weight}};
    else
        rep.body["sample"] = nullptr;
    rep.body["instance"] = instance_json(r.inst);
    rep.columns = {"N0", "found", "p1", "p2", "p3", "weight"};
    if (r.found)
        rep.rows.push_back({a.n0, true, r.sample.p1, r.sample.p2, r.sample.p3, r.sample.weight});
    else
        rep.rows.push_back({a.n0, false, nullptr, nullptr, nullptr, nullptr});
    rep.status = r.found ? kPass : kFail;
    return rep;
}

// ratio

Report run_ratio(i64 n0, u64 pcut) {
    double v = vinogradov_ratio(n0, pcut);
    Report rep;
    rep.body["N0"] = n0;
    rep.body["P_cut"] = pcut;
    rep.body["ratio"] = v;
    // tiny N0 is reported without a tolerance
    if (n0 >= 10000) {
        bool pass = v >= 0.7 && v <= 1.3;
        rep.body["pass"] = pass;
        rep.status = pass ? kPass : kFail;
    } else {
        rep.body["pass"] = nullptr;
    }
    return rep;
}

// integrals

struct IntegralArgs {
    double eps = 1e-4;
    double samples = 1e6;
    bool discard_all = false;
    bool verbatim = false;
};

Report run_integrals(const IntegralArgs &a, const Common &c) {
    RegionOptions opt;
    opt.discard_all_type2 = a.discard_all;
    if (a.verbatim) {
        opt.i1_order_repair = false;
        opt.i4_lower_repair = false;
    }
    if (!(a.samples >= 1) || a.samples > 1e12) throw RangeError("--samples must lie in [1, 1e12]");
    u64 n = static_cast<u64>(std::llround(a.samples));
    IntegralSum s = integral_sum(a.eps, n, c.seed, opt);
    Report rep;
    rep.body["eps"] = a.eps;
    rep.body["samples"] = n;
    rep.body["seed"] = c.seed;
    json per = json::array();
    rep.columns = {"j", "value", "stderr"};
    for (std::size_t j = 0; j < s.per_j.size(); ++j) {
        per.push_back({{"j", j + 1}, {"value", s.per_j[j].value}, {"stderr", s.per_j[j].stderr_}});
        rep.rows.push_back({j + 1, s.per_j[j].value, s.per_j[j].stderr_});
    }
    rep.rows.push_back({"total", s.total, s.stderr_});
    rep.body["per_j"] = per;
    rep.body["total"] = s.total;
    rep.body["stderr"] = s.stderr_;
    bool pass = s.total + 3 * s.stderr_ < 0.996 && s.total > 0.5;
    rep.body["pass"] = pass;
    rep.status = pass ? kPass : kFail;
    return rep;
}

// omega and its export share one grid

Report omega_grid(double umax, double step, double h) {
    if (!(step > 0)) throw RangeError("--step must be positive");
    double table_max = std::max(2.0, std::ceil(umax));
    OmegaTable t = build_omega_table(table_max, h);
    Report rep;
    rep.columns = {"u", "omega"};
    json pts = json::array();
    long steps = std::lround(std::floor((umax - 1) / step + 1e-9));
    for (long i = 0; i <= steps; ++i) {
        double u = 1 + static_cast<double>(i) * step;
        double w = omega_eval(t, u);
        pts.push_back({{"u", u}, {"omega", w}});
        rep.rows.push_back({u, w});
    }
    rep.body["h"] = h;
    rep.body["umax"] = umax;
    rep.body["points"] = pts;
    return rep;
}

Report run_omega(const std::vector<double> &us, double umax, double h) {
    if (us.empty()) return omega_grid(umax, 0.25, h);
    double hi = 2;
    for (double u : us) hi = std::max(hi, u);
    OmegaTable t = build_omega_table(std::ceil(hi), h);
    Report rep;
    rep.columns = {"u", "omega"};
    json pts = json::array();
    for (double u : us) {
        double w = omega_eval(t, u);
        pts.push_back({{"u", u}, {"omega", w}});
        rep.rows.push_back({u, w});
    }
    rep.body["h"] = h;
    rep.body["points"] = pts;
    return rep;
}

// fy-stats

int log10_of(u64 Y) {
    int k = 0;
    for (u64 v = 1; v < Y; v *= 10) ++k;
    if (pow10u(k) != Y) throw RangeError("Y must be a power of 10");
    return k;
}

Report run_fy(int a0, u64 Y, int bins, int oversample) {
    int k = log10_of(Y);
    Report rep;
    rep.body["a0"] = a0;
    rep.body["Y"] = Y;
    rep.body["l1"] = fy_l1(a0, Y, oversample);
    rep.body["l1_oversample"] = oversample;
    auto counts = fy_level_sets(a0, Y, bins);
    rep.columns = {"bin", "lower", "upper", "count"};
    json lv = json::array();
    for (std::size_t j = 0; j < counts.size(); ++j) {
        double up = std::ldexp(1.0, -static_cast<int>(j));
        double lo = j + 1 == counts.size() ? 0.0 : up / 2;
        lv.push_back({{"bin", j}, {"lower", lo}, {"upper", up}, {"count", counts[j]}});
        rep.rows.push_back({j, lo, up, counts[j]});
    }
    rep.body["level_sets"] = lv;
    if (k >= 1 && k <= 7) {
        auto E = exceptional_set(a0, k);
        rep.body["exceptional_count"] = E.size();
        rep.body["exceptional_ratio"] = static_cast<double>(E.size()) / std::pow(10.0, 0.575 * k);
    }
    return rep;
}

// arcs

Report run_arcs(i64 n0, int a0, const std::vector<double> &thetas, int random_thetas, const Common &c,
                bool list) {
    auto inst = make_instance(n0, a0, c.constants());
    Report rep;
    rep.body["instance"] = instance_json(inst);
    rep.body["Q0"] = inst.Q0;
    rep.body["L0"] = inst.L0;
    rep.body["arc_count"] = major_arc_count(inst);
    auto arcs = major_arcs(inst);
    rep.body["pairwise_disjoint"] = arcs_pairwise_disjoint(arcs);
    if (list) {
        json a = json::array();
        for (const auto &arc : arcs) a.push_back({{"c", arc.c}, {"q", arc.q}, {"lo", arc.center() - arc.halfwidth()}, {"hi", arc.center() + arc.halfwidth()}});
        rep.body["arcs"] = a;
    }
    std::vector<double> pts = thetas;
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> U(0, 1);
    for (int i = 0; i < random_thetas; ++i) pts.push_back(U(rng));
    rep.columns = {"theta", "major", "c", "q", "witness_c", "witness_q", "witness_N"};
    json cl = json::array();
    for (double t : pts) {
        auto r = classify(inst, t);
        cl.push_back({{"theta", t}, {"major", r.major}, {"c", r.c}, {"q", r.q},
                      {"witness", {{"c", r.witness.c}, {"q", r.witness.q}, {"N", r.witness_N}}}});
        rep.rows.push_back({t, r.major, r.c, r.q, r.witness.c, r.witness.q, r.witness_N});
    }
    rep.body["classified"] = cl;
    return rep;
}

// exceptional

Report run_exceptional(int a0, int k, bool list) {
    auto E = exceptional_set(a0, k);
    double ratio = static_cast<double>(E.size()) / std::pow(10.0, 0.575 * k);
    Report rep;
    rep.body["a0"] = a0;
    rep.body["k"] = k;
    rep.body["count"] = E.size();
    rep.body["bound"] = std::pow(10.0, 23.0 * k / 40);
    rep.body["ratio"] = ratio;
    rep.body["pass"] = ratio <= 10;
    rep.columns = {"b", "F"};
    u64 Y = pow10u(k);
    if (list) rep.body["members"] = E;
    for (u64 b : E) rep.rows.push_back({b, fy_eval_grid(a0, Y, b)});
    rep.status = ratio <= 10 ? kPass : kFail;
    return rep;
}

// export

Report run_export(const std::string &what, double umax, double step, int a0, u64 Y, i64 n0, double gamma0,
                  u64 lo, u64 hi) {
    if (what == "omega") return omega_grid(umax, step, 1.0 / 4096);
    Report rep;
    if (what == "fy") {
        log10_of(Y);
        if (Y > 10000000) throw RangeError("fy export is limited to Y <= 10^7");
        rep.columns = {"b", "theta", "F"};
        for (u64 b = 0; b < Y; ++b) rep.rows.push_back({b, static_cast<double>(b) / static_cast<double>(Y), fy_eval_grid(a0, Y, b)});
    } else if (what == "arcs") {
        auto inst = make_instance(n0, a0);
        rep.columns = {"c", "q", "lo", "hi"};
        for (const auto &arc : major_arcs(inst))
            rep.rows.push_back({arc.c, arc.q, arc.center() - arc.halfwidth(), arc.center() + arc.halfwidth()});
    } else if (what == "exceptional") {
        int k = log10_of(Y);
        rep.columns = {"b", "F"};
        for (u64 b : exceptional_set(a0, k)) rep.rows.push_back({b, fy_eval_grid(a0, Y, b)});
    } else if (what == "ps") {
        auto cfg = make_ps_config(gamma0, 0, 64, false);
        if (hi < lo || hi - lo > 100000000ULL) throw RangeError("ps export needs lo <= hi and hi - lo <= 10^8");
        rep.columns = {"p", "weight"};
        for (u64 p : enumerate_ps(cfg, lo, hi)) rep.rows.push_back({p, ps_weight(cfg, p)});
    }
    json rows = json::array();
    for (const auto &r : rep.rows) {
        json o = json::object();
        for (std::size_t i = 0; i < rep.columns.size(); ++i) o[rep.columns[i]] = r[i];
        rows.push_back(o);
    }
    rep.body["what"] = what;
    rep.body["rows"] = rows;
    return rep;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Hybrid ternary Goldbach toolkit: circle-method diagnostics and desk-scale verification"};
    app.require_subcommand(1);

    Common common;
    std::optional<Report> report;
    auto guard = [&](auto &&fn) {
        return [&, fn]() {
            if (common.threads > 0) set_worker_threads(common.threads);
            report = fn();
        };
    };

    VerifyArgs va;
    auto *verify = app.add_subcommand("verify", "find p1 + p2 + p3 = N0 with PS-primes p1, p2 and p3 in the digit set");
    verify->add_option("--n0", va.n0, "odd target")->required();
    verify->add_option("--a0", va.a0, "excluded digit")->check(CLI::Range(0, 9));
    verify->add_option("--gamma0", va.gamma0, "PS exponent gamma0 = 1/c0");
    verify->add_flag("--exhaustive", va.exhaustive, "count every ordered representation");
    verify->add_flag("--strict-window", va.strict, "restrict p3 to the anchor window");
    add_common(verify, common);
    verify->callback(guard([&] { return run_verify(va, common); }));

    i64 r_n0 = 100001;
    u64 r_pcut = 100000;
    auto *ratio = app.add_subcommand("ratio", "log-weighted prime-triple count over the Vinogradov main term");
    ratio->add_option("--n0", r_n0, "odd target, at most 10^6")->required();
    ratio->add_option("--pcut", r_pcut, "singular series truncation");
    add_common(ratio, common);
    ratio->callback(guard([&] { return run_ratio(r_n0, r_pcut); }));

    IntegralArgs ia;
    auto *integrals = app.add_subcommand("integrals", "Monte Carlo estimate of the nine discarded-region integrals");
    integrals->add_option("--eps", ia.eps, "region margin epsilon");
    integrals->add_option("--samples", ia.samples, "samples per integral (accepts 1e8)");
    integrals->add_flag("--discard-all-type2", ia.discard_all, "every subset sum avoids the type II ranges");
    integrals->add_flag("--verbatim-regions", ia.verbatim, "drop the I_1 order and R_2 lower-bound repairs");
    add_common(integrals, common);
    integrals->callback(guard([&] { return run_integrals(ia, common); }));

    std::vector<double> o_u;
    double o_umax = 10, o_h = 1.0 / 4096;
    auto *omega = app.add_subcommand("omega", "Buchstab function values");
    omega->add_option("--u", o_u, "points to evaluate (default: grid of step 1/4 up to --umax)");
    omega->add_option("--umax", o_umax, "grid end");
    omega->add_option("--step-h", o_h, "solver step, 1/h an integer");
    add_common(omega, common);
    omega->callback(guard([&] { return run_omega(o_u, o_umax, o_h); }));

    int f_a0 = 7, f_bins = 30, f_over = 4;
    u64 f_y = 1000;
    auto *fy = app.add_subcommand("fy-stats", "L1 norm, level sets and exceptional count of F_Y");
    fy->add_option("--a0", f_a0, "excluded digit")->check(CLI::Range(0, 9));
    fy->add_option("--y", f_y, "scale Y, a power of 10");
    fy->add_option("--bins", f_bins, "dyadic level-set bins");
    fy->add_option("--oversample", f_over, "L1 quadrature points per 1/Y");
    add_common(fy, common);
    fy->callback(guard([&] { return run_fy(f_a0, f_y, f_bins, f_over); }));

    i64 a_n0 = 2001;
    int a_a0 = 7, a_random = 0;
    bool a_list = false;
    std::vector<double> a_theta;
    auto *arcs = app.add_subcommand("arcs", "major arcs of an instance and classification of frequencies");
    arcs->add_option("--n0", a_n0, "odd target");
    arcs->add_option("--a0", a_a0, "excluded digit")->check(CLI::Range(0, 9));
    arcs->add_option("--theta", a_theta, "frequencies in [0,1) to classify");
    arcs->add_option("--random", a_random, "additional seeded random frequencies")->check(CLI::NonNegativeNumber);
    arcs->add_flag("--list", a_list, "include every arc in the JSON report");
    add_common(arcs, common);
    arcs->callback(guard([&] { return run_arcs(a_n0, a_a0, a_theta, a_random, common, a_list); }));

    int e_a0 = 7, e_k = 4;
    bool e_list = false;
    auto *exc = app.add_subcommand("exceptional", "grid points where F_Y exceeds Y^{-23/80}");
    exc->add_option("--a0", e_a0, "excluded digit")->check(CLI::Range(0, 9));
    exc->add_option("--k", e_k, "Y = 10^k, k in 1..7")->check(CLI::Range(1, 7));
    exc->add_flag("--list", e_list, "include the members in the JSON report");
    add_common(exc, common);
    exc->callback(guard([&] { return run_exceptional(e_a0, e_k, e_list); }));

    std::string x_what = "omega";
    double x_umax = 10, x_step = 1.0 / 64, x_gamma = 0.95;
    int x_a0 = 7;
    u64 x_y = 1000, x_lo = 2, x_hi = 10000;
    i64 x_n0 = 2001;
    auto *exp = app.add_subcommand("export", "tabular data for plotting");
    exp->add_option("--what", x_what, "table to export")->check(CLI::IsMember({"omega", "fy", "arcs", "exceptional", "ps"}));
    exp->add_option("--umax", x_umax, "omega grid end");
    exp->add_option("--step", x_step, "omega grid step");
    exp->add_option("--a0", x_a0, "excluded digit")->check(CLI::Range(0, 9));
    exp->add_option("--y", x_y, "scale Y for fy and exceptional");
    exp->add_option("--n0", x_n0, "odd target for arcs");
    exp->add_option("--gamma0", x_gamma, "PS exponent for ps");
    exp->add_option("--lo", x_lo, "ps range start");
    exp->add_option("--hi", x_hi, "ps range end (inclusive)");
    add_common(exp, common);
    exp->callback(guard([&] { return run_export(x_what, x_umax, x_step, x_a0, x_y, x_n0, x_gamma, x_lo, x_hi); }));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        std::cerr << app.help();
        return kUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    if (!report) return kUsage;
    print(*report, common.out);
    return report->status;
}
