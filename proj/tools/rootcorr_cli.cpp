// rootcorr command-line front end.
//
// Exit codes: 0 success, 2 parse error, 3 invalid triple, 4 standard form
// required, 5 arc construction failure, 6 numeric tolerance failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rootcorr/arcmap.hpp"
#include "rootcorr/closedform.hpp"
#include "rootcorr/genseq.hpp"
#include "rootcorr/io.hpp"
#include "rootcorr/paircorr.hpp"
#include "rootcorr/parse.hpp"
#include "rootcorr/rootfind.hpp"
#include "rootcorr/triple.hpp"

using namespace rootcorr;

namespace {

const int kExitParse = 2;
const int kExitTriple = 3;
const int kExitStandard = 4;
const int kExitArc = 5;
const int kExitTolerance = 6;

struct StandardRequired : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ToleranceFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_maybe_file(const std::string& text) {
    if (text.empty() || text[0] != '@') return text;
    std::ifstream is(text.substr(1));
    if (!is) throw ParseError("cannot read triple file: " + text.substr(1), 0);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

// "A ; B ; C" in the expression grammar; '@path' loads the text from a file
GenTriple parse_triple_text(const std::string& raw) {
    std::string text = read_maybe_file(raw);
    std::vector<std::string> parts;
    size_t start = 0;
    for (size_t i = 0; i <= text.size(); ++i)
        if (i == text.size() || text[i] == ';') {
            parts.push_back(text.substr(start, i - start));
            start = i + 1;
        }
    if (parts.size() != 3)
        throw ParseError("triple must have exactly three ';'-separated parts", 0);
    return make_triple(parse_expression(parts[0]), parse_expression(parts[1]),
                       parse_expression(parts[2]));
}

GenTriple require_standard(const GenTriple& t, bool auto_reduce) {
    if (t.standard) return t;
    if (!auto_reduce)
        throw StandardRequired(
            "triple is not in standard form (pass --auto-reduce to reduce it)");
    return to_standard_form(t).triple;
}

std::pair<double, double> parse_range(const std::string& text, const char* what) {
    double a, b;
    char comma;
    std::istringstream is(text);
    if (!(is >> a >> comma >> b) || comma != ',')
        throw ParseError(std::string(what) + ": expected \"a,b\"", 0);
    if (!(0.0 < a && a < b && b < 1.0))
        throw ParseError(std::string(what) + ": need 0 < a < b < 1", 0);
    return {a, b};
}

Json tolerance_block() {
    return Json{{"tau_curve", 1e-8}, {"tau_seed", 1e-6}, {"eps_deriv", 1e-6},
                {"tau_pole", 1e-12}, {"tau_root", kTauRoot}};
}

Json base_meta(const std::string& command, const std::string& triple_text) {
    Json meta;
    meta["command"] = command;
    meta["triple"] = triple_text.empty() ? Json(nullptr) : Json(triple_text);
    meta["params"] = Json::object();
    meta["tolerances"] = tolerance_block();
    meta["counts"] = Json::object();
    return meta;
}

void emit(const std::string& path, const std::string& content, const Json& meta) {
    write_text_file(path, content);
    write_meta(path, meta);
    std::cout << "wrote " << path << "\n";
}

// Default sheet seed: smallest root (in the record order) of B^2 - c(t0) A.
ArcSpec make_arc(const GenTriple& t, double a, double b,
                 const std::string& seed_text, int n_grid) {
    Complex seed;
    if (!seed_text.empty()) {
        double re, im = 0.0;
        char comma;
        std::istringstream is(seed_text);
        if (!(is >> re)) throw ParseError("--seed: expected \"re[,im]\"", 0);
        if (is >> comma >> im && comma != ',')
            throw ParseError("--seed: expected \"re[,im]\"", 0);
        seed = {re, im};
    } else {
        std::vector<Complex> fiber = roots_direct(
            detail::level_poly(t.A.as_poly(), t.B.as_poly(), arc_level(a)));
        if (fiber.empty()) throw ArcError("empty fiber over the left endpoint");
        seed = fiber.front();
    }
    return build_arc(t, a, b, seed, n_grid);
}

std::vector<double> lambda_grid(double lam_max, double step) {
    if (!(lam_max > 0.0) || !(step > 0.0))
        throw ParseError("lambda grid: need positive --lambda-max and --lambda-step", 0);
    std::vector<double> out{0.0};
    for (double lam = step; lam <= lam_max + 1e-12; lam += step) out.push_back(lam);
    return out;
}

PairCorrCurve closed_curve_from_g(const std::vector<double>& lambdas,
                                  const std::function<double(double)>& g,
                                  const std::string& kind) {
    PairCorrCurve c;
    c.kind = kind;
    c.lambdas = lambdas;
    for (double lam : lambdas) c.values.push_back(lam == 0.0 ? 0.0 : g(lam));
    return c;
}

// ---- subcommand bodies ------------------------------------------------------

int cmd_reduce(const std::string& triple_text) {
    GenTriple t = parse_triple_text(triple_text);
    StandardFormResult r = to_standard_form(t);
    std::cout << "standard: " << to_string(r.triple) << "\n";
    std::cout << "multiplier: " << to_string(r.multiplier) << "\n";
    std::cout << "invariant: " << to_string(class_invariant(r.triple)) << "\n";
    return 0;
}

int cmd_curve(const std::string& triple_text, bool auto_reduce, int n_c,
              const std::string& out, const std::string& svg,
              const std::string& cmdline) {
    GenTriple t = require_standard(parse_triple_text(triple_text), auto_reduce);
    std::vector<CurveSample> samples = sample_curve(t, n_c);
    Json meta = base_meta(cmdline, triple_text);
    meta["params"]["n_c"] = n_c;
    size_t n_pts = 0;
    for (const CurveSample& s : samples) n_pts += s.points.size();
    meta["counts"]["points"] = n_pts;
    emit(out, csv_curve(samples), meta);
    if (!svg.empty()) {
        std::vector<Complex> pts;
        for (const CurveSample& s : samples)
            pts.insert(pts.end(), s.points.begin(), s.points.end());
        emit(svg, svg_scatter(pts, "carrier curve: " + to_string(t)), meta);
    }
    return 0;
}

int cmd_roots(const std::string& triple_text, bool auto_reduce, int m,
              const std::string& method, const std::string& out,
              const std::string& svg, const std::string& cmdline) {
    GenTriple t = require_standard(parse_triple_text(triple_text), auto_reduce);
    std::vector<RootRecord> recs;
    if (m > 0) {
        if (method == "curve") {
            recs = roots_curve(t, m);
        } else {
            PolySequence seq = generate(t, m);
            for (Complex z : roots_direct(seq.items[m]))
                recs.push_back({z, m, -1, m + 1, 1, false, "direct"});
            sort_records(recs);
        }
    }
    Json meta = base_meta(cmdline, triple_text);
    meta["params"]["m"] = m;
    meta["params"]["method"] = method;
    meta["counts"]["roots"] = recs.size();
    emit(out, csv_roots(recs), meta);
    if (!svg.empty()) {
        std::vector<Complex> pts;
        for (const RootRecord& r : recs)
            if (!r.degenerate) pts.push_back(r.z);
        emit(svg, svg_scatter(pts, "roots of H_" + std::to_string(m)), meta);
    }
    return 0;
}

int cmd_gen(const std::string& triple_text, bool auto_reduce, int m,
            const std::string& out, const std::string& cmdline) {
    GenTriple t = require_standard(parse_triple_text(triple_text), auto_reduce);
    if (m < 0) throw ParseError("--m must be >= 0", 0);
    PolySequence seq = generate(t, m);
    Json meta = base_meta(cmdline, triple_text);
    meta["params"]["m"] = m;
    meta["counts"]["polynomials"] = seq.items.size();
    emit(out, csv_gen(seq), meta);
    return 0;
}

int cmd_paircorr_farey(int Q, const std::string& window, double lam_max,
                       double step, const std::string& out,
                       const std::string& cmdline) {
    auto [a, b] = parse_range(window, "--window");
    PointSet1D s = farey_like(Q);
    std::vector<double> lambdas = lambda_grid(lam_max, step);
    PairCorrCurve r;
    r.kind = "empirical_R";
    r.lambdas = lambdas;
    for (double lam : lambdas)
        r.values.push_back(lam == 0.0 ? 0.0 : empirical_R_interval(s, a, b, lam));
    PairCorrCurve g = estimate_g(r);
    Json meta = base_meta(cmdline, "");
    meta["params"] = {{"Q", Q}, {"window", {a, b}},
                      {"lambda_max", lam_max}, {"lambda_step", step}};
    meta["counts"]["N"] = s.n_total;
    emit(out, csv_paircorr({r, g}), meta);
    return 0;
}

int cmd_paircorr_empirical(const std::string& triple_text, bool auto_reduce,
                           int n, const std::string& interval,
                           const std::string& seed, int n_grid, double lam_max,
                           double step, const std::string& out,
                           const std::string& cmdline) {
    auto [a, b] = parse_range(interval, "--interval");
    if (a < 0.02 || b > 0.98)
        std::cerr << "warning: interval endpoints near 0 or 1; the pair "
                     "correlation diverges toward the curve endpoints and the "
                     "statistic will not stabilize\n";
    GenTriple t = require_standard(parse_triple_text(triple_text), auto_reduce);
    ArcSpec spec = make_arc(t, a, b, seed, n_grid);
    std::vector<RootRecord> recs = product_roots(t, n, &spec);
    std::vector<double> lambdas = lambda_grid(lam_max, step);
    PairCorrCurve r;
    r.kind = "empirical_R";
    r.lambdas = lambdas;
    for (double lam : lambdas)
        r.values.push_back(lam == 0.0 ? 0.0 : empirical_R_arc(recs, spec, lam));
    PairCorrCurve g = estimate_g(r);
    Json meta = base_meta(cmdline, triple_text);
    meta["params"] = {{"n", n}, {"interval", {a, b}}, {"n_grid", n_grid},
                      {"lambda_max", lam_max}, {"lambda_step", step}};
    meta["counts"]["N_J"] = recs.size();
    emit(out, csv_paircorr({r, g}), meta);
    return 0;
}

int cmd_paircorr_closed(const std::string& triple_text, bool auto_reduce,
                        const std::string& interval, const std::string& seed,
                        int n_grid, double lam_max, double step,
                        const std::string& out, const std::string& cmdline) {
    std::vector<double> lambdas = lambda_grid(lam_max, step);
    Json meta = base_meta(cmdline, triple_text);
    meta["params"] = {{"lambda_max", lam_max}, {"lambda_step", step}};
    PairCorrCurve g, r;
    if (triple_text.empty()) {
        // interval statistic: g_I and its integral
        g = closed_curve_from_g(lambdas, [](double x) { return g_I(x); }, "closed_g");
        r = closed_curve_from_g(lambdas, [](double x) { return R_I(x); }, "closed_R");
    } else {
        auto [a, b] = parse_range(interval, "--interval");
        GenTriple t = require_standard(parse_triple_text(triple_text), auto_reduce);
        ArcSpec spec = make_arc(t, a, b, seed, n_grid);
        g = closed_curve_from_g(lambdas, [&](double x) { return g_J(spec, x); },
                                "closed_g");
        // closed R by trapezoidal accumulation of the g grid
        r.kind = "closed_R";
        r.lambdas = lambdas;
        double acc = 0.0;
        r.values.push_back(0.0);
        for (size_t i = 1; i < lambdas.size(); ++i) {
            acc += 0.5 * (g.values[i] + g.values[i - 1]) *
                   (lambdas[i] - lambdas[i - 1]);
            r.values.push_back(acc);
        }
        meta["params"]["interval"] = {a, b};
        meta["params"]["n_grid"] = n_grid;
    }
    meta["counts"]["nodes"] = lambdas.size();
    emit(out, csv_paircorr({r, g}), meta);
    return 0;
}

int cmd_paircorr_example4(double a, bool literal, double lam_max, double step,
                          const std::string& out, const std::string& cmdline) {
    if (!(0.0 < a && a < 0.5))
        throw ParseError("--a: need 0 < a < 1/2", 0);
    std::vector<double> lambdas = lambda_grid(lam_max, step);
    PairCorrCurve g = closed_curve_from_g(
        lambdas, [&](double x) { return example_gJ(a, x, literal); }, "closed_g");
    Json meta = base_meta(cmdline, "");
    meta["params"] = {{"a", a}, {"literal", literal},
                      {"lambda_max", lam_max}, {"lambda_step", step}};
    meta["counts"]["nodes"] = lambdas.size();
    emit(out, csv_paircorr({g}), meta);
    return 0;
}

std::vector<PairCorrCurve> load_paircorr_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ParseError("cannot read result file: " + path, 0);
    std::string line;
    if (!std::getline(is, line) || line != "lambda,value,kind")
        throw ParseError("not a paircorr CSV: " + path, 0);
    std::vector<PairCorrCurve> curves;
    while (std::getline(is, line)) {
        std::istringstream row(line);
        std::string lam, val, kind;
        if (!std::getline(row, lam, ',') || !std::getline(row, val, ',') ||
            !std::getline(row, kind))
            throw ParseError("malformed row in " + path, 0);
        if (curves.empty() || curves.back().kind != kind) {
            curves.push_back({});
            curves.back().kind = kind;
        }
        curves.back().lambdas.push_back(std::stod(lam));
        curves.back().values.push_back(std::stod(val));
    }
    if (curves.empty()) throw ParseError("no rows in " + path, 0);
    return curves;
}

const PairCorrCurve& pick_curve(const std::vector<PairCorrCurve>& cs,
                                const std::string& kind) {
    if (!kind.empty()) {
        for (const PairCorrCurve& c : cs)
            if (c.kind == kind) return c;
        throw ParseError("kind not present in file: " + kind, 0);
    }
    // default preference: a g curve if there is one
    for (const PairCorrCurve& c : cs)
        if (c.kind == "empirical_g" || c.kind == "closed_g") return c;
    return cs.front();
}

int cmd_paircorr_compare(const std::string& file1, const std::string& file2,
                         const std::string& kind1, const std::string& kind2,
                         double lam_min, double tol) {
    const PairCorrCurve c1 = pick_curve(load_paircorr_csv(file1), kind1);
    const PairCorrCurve c2 = pick_curve(load_paircorr_csv(file2), kind2);
    std::printf("%-10s %-22s %-22s %s\n", "lambda", c1.kind.c_str(),
                c2.kind.c_str(), "rel_dev");
    double max_dev = 0.0;
    size_t matched = 0;
    for (size_t i = 0; i < c1.lambdas.size(); ++i) {
        double lam = c1.lambdas[i];
        if (lam < lam_min) continue;
        for (size_t j = 0; j < c2.lambdas.size(); ++j) {
            if (std::abs(c2.lambdas[j] - lam) > 1e-9) continue;
            double v1 = c1.values[i], v2 = c2.values[j];
            double denom = std::max(std::abs(v2), 1e-12);
            double dev = std::abs(v1 - v2) / denom;
            max_dev = std::max(max_dev, dev);
            ++matched;
            std::printf("%-10g %-22.17g %-22.17g %.6g\n", lam, v1, v2, dev);
            break;
        }
    }
    if (matched == 0) throw ParseError("no common lambda nodes", 0);
    std::printf("max relative deviation: %.6g over %zu nodes\n", max_dev, matched);
    if (tol > 0.0 && max_dev > tol)
        throw ToleranceFailure("max relative deviation exceeds tolerance");
    return 0;
}

int cmd_divergence(long long K, const std::string& a_sequence,
                   const std::string& triple_text, const std::string& q_sequence,
                   double lambda, int n_grid) {
    std::printf("partial sums of sum_k sigma(k)/k^2:\n");
    for (long long k : {1LL, 2LL, 10LL, 100LL, 1000LL, K})
        if (k <= K) std::printf("  K = %-10lld %.12f\n", k, divergence_partial(k));
    if (a_sequence.empty()) return 0;

    GenTriple t = require_standard(parse_triple_text(triple_text), true);
    std::vector<double> as;
    std::vector<int> qs;
    {
        std::istringstream is(a_sequence);
        std::string tok;
        while (std::getline(is, tok, ',')) as.push_back(std::stod(tok));
        std::istringstream iq(q_sequence);
        while (std::getline(iq, tok, ',')) qs.push_back(std::stoi(tok));
    }
    std::printf("\nempirical R(lambda = %g) on J(a) = f((a, 1-a)):\n", lambda);
    std::printf("%-8s", "a \\ Q");
    for (int q : qs) std::printf(" %-12d", q);
    std::printf("\n");
    for (double a : as) {
        std::printf("%-8g", a);
        ArcSpec spec = make_arc(t, a, 1.0 - a, "", n_grid);
        for (int q : qs) {
            std::vector<RootRecord> recs = product_roots(t, q - 1, &spec);
            std::printf(" %-12.6f", empirical_R_arc(recs, spec, lambda));
        }
        std::printf("\n");
    }
    return 0;
}

std::string joined_cmdline(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"root distributions and pair correlation on carrier curves"};
    app.require_subcommand(1);
    int threads = 1;
    app.add_option("--threads", threads, "cap worker parallelism");

    std::string triple, out = "out.csv", svg, method = "curve";
    std::string window = "0.2,0.8", interval, seed;
    std::string file1, file2, kind1, kind2, a_sequence;
    std::string q_sequence = "100,200,400,800";
    bool auto_reduce = false, literal = false;
    int m = 0, Q = 0, n = 0, n_c = 129, n_grid = 2048;
    double lam_max = 4.0, lam_step = 0.1, a_param = 0.25, tol = 0.0;
    double lam_min = 0.0, lambda_fixed = 2.0;
    long long K = 100;

    CLI::App* reduce = app.add_subcommand("reduce", "print the standard form");
    reduce->fallthrough();
    reduce->add_option("triple", triple, "triple \"A ; B ; C\" or @file")->required();

    CLI::App* curve = app.add_subcommand("curve", "sample the carrier curve");
    curve->fallthrough();
    curve->add_option("--triple", triple)->required();
    curve->add_flag("--auto-reduce", auto_reduce);
    curve->add_option("--n-c", n_c, "number of level-set samples");
    curve->add_option("--out", out);
    curve->add_option("--svg", svg, "also write an SVG scatter");

    CLI::App* roots = app.add_subcommand("roots", "roots of H_m");
    roots->fallthrough();
    roots->add_option("--triple", triple)->required();
    roots->add_flag("--auto-reduce", auto_reduce);
    roots->add_option("--m", m)->required();
    roots->add_option("--method", method)->check(CLI::IsMember({"direct", "curve"}));
    roots->add_option("--out", out);
    roots->add_option("--svg", svg);

    CLI::App* gen = app.add_subcommand("gen", "coefficients of H_0..H_m");
    gen->fallthrough();
    gen->add_option("--triple", triple)->required();
    gen->add_flag("--auto-reduce", auto_reduce);
    gen->add_option("--m", m)->required();
    gen->add_option("--out", out);

    CLI::App* pc = app.add_subcommand("paircorr", "pair correlation statistics");
    pc->fallthrough();
    pc->require_subcommand(1);
    CLI::App* farey = pc->add_subcommand("farey", "empirical R on the Farey-like set");
    farey->fallthrough();
    farey->add_option("--Q", Q)->required();
    farey->add_option("--window", window);
    farey->add_option("--lambda-max", lam_max);
    farey->add_option("--lambda-step", lam_step);
    farey->add_option("--out", out);

    CLI::App* emp = pc->add_subcommand("empirical", "empirical R on an arc");
    emp->fallthrough();
    emp->add_option("--triple", triple)->required();
    emp->add_flag("--auto-reduce", auto_reduce);
    emp->add_option("--n", n, "product over H_1..H_n")->required();
    emp->add_option("--interval", interval)->required();
    emp->add_option("--seed", seed, "sheet seed \"re[,im]\"");
    emp->add_option("--n-grid", n_grid);
    emp->add_option("--lambda-max", lam_max);
    emp->add_option("--lambda-step", lam_step);
    emp->add_option("--out", out);

    CLI::App* closed = pc->add_subcommand("closed", "closed-form g and R");
    closed->fallthrough();
    closed->add_option("--triple", triple, "omit for the interval statistic g_I");
    closed->add_flag("--auto-reduce", auto_reduce);
    closed->add_option("--interval", interval);
    closed->add_option("--seed", seed);
    closed->add_option("--n-grid", n_grid);
    closed->add_option("--lambda-max", lam_max);
    closed->add_option("--lambda-step", lam_step);
    closed->add_option("--out", out);

    CLI::App* ex4 = pc->add_subcommand("example4", "explicit g_J for (1, z-2, 1)");
    ex4->fallthrough();
    ex4->add_option("--a", a_param)->required();
    ex4->add_flag("--literal", literal, "printed-formula variant");
    ex4->add_option("--lambda-max", lam_max);
    ex4->add_option("--lambda-step", lam_step);
    ex4->add_option("--out", out);

    CLI::App* cmp = pc->add_subcommand("compare", "deviation table of two results");
    cmp->fallthrough();
    cmp->add_option("file1", file1)->required();
    cmp->add_option("file2", file2)->required();
    cmp->add_option("--kind1", kind1);
    cmp->add_option("--kind2", kind2);
    cmp->add_option("--lambda-min", lam_min, "skip nodes below this lambda");
    cmp->add_option("--tol", tol, "exit 6 if max relative deviation exceeds this");

    CLI::App* div = app.add_subcommand("divergence", "partial sums and endpoint table");
    div->fallthrough();
    div->add_option("--K", K)->check(CLI::PositiveNumber);
    div->add_option("--a-sequence", a_sequence, "comma list of shrinking a");
    div->add_option("--Q-sequence", q_sequence);
    div->add_option("--triple", triple);
    div->add_option("--lambda", lambda_fixed);
    div->add_option("--n-grid", n_grid);

    std::string cmdline = joined_cmdline(argc, argv);
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    }

    try {
        if (*reduce) return cmd_reduce(triple);
        if (*curve) return cmd_curve(triple, auto_reduce, n_c, out, svg, cmdline);
        if (*roots) return cmd_roots(triple, auto_reduce, m, method, out, svg, cmdline);
        if (*gen) return cmd_gen(triple, auto_reduce, m, out, cmdline);
        if (*farey) return cmd_paircorr_farey(Q, window, lam_max, lam_step, out, cmdline);
        if (*emp)
            return cmd_paircorr_empirical(triple, auto_reduce, n, interval, seed,
                                          n_grid, lam_max, lam_step, out, cmdline);
        if (*closed)
            return cmd_paircorr_closed(triple, auto_reduce, interval, seed,
                                       n_grid, lam_max, lam_step, out, cmdline);
        if (*ex4)
            return cmd_paircorr_example4(a_param, literal, lam_max, lam_step, out,
                                         cmdline);
        if (*cmp)
            return cmd_paircorr_compare(file1, file2, kind1, kind2, lam_min, tol);
        if (*div)
            return cmd_divergence(K, a_sequence,
                                  triple.empty() ? "1 ; z-2 ; 1" : triple,
                                  q_sequence, lambda_fixed, n_grid);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const InvalidTriple& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitTriple;
    } catch (const StandardRequired& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitStandard;
    } catch (const ArcError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitArc;
    } catch (const ToleranceFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitTolerance;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
