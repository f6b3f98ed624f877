#include "dynlab/corr.hpp"
#include "dynlab/counting.hpp"
#include "dynlab/cyclelattice.hpp"
#include "dynlab/dyndeg.hpp"
#include "dynlab/error.hpp"
#include "dynlab/io.hpp"
#include "dynlab/zeta.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

using namespace dynlab;
using io::Json;

namespace {

constexpr int kInputError = 2;

struct Config {
    std::string variety, counts, zeta, monomial, pairing, matrix, tuple, frobenius, out, betti;
    std::vector<std::string> models;
    int n_max = 6;
    int iters = 12;
    double eps = 0.1;
    std::uint64_t k_max = 10000;
    double tol = dyndeg::kLimsupTol;
    int threads = 0;
    bool dual_basis = false;
};

int emit_error(const std::string& kind, const std::string& module, const std::string& message, int code) {
    std::cerr << Json{{"error", kind}, {"module", module}, {"message", message}}.dump() << "\n";
    return code;
}

counting::CountOptions count_options(const Config& c) {
    counting::CountOptions o;
    o.threads = c.threads;
    return o;
}

// Exhaustive count where the guard allows it, the character-sum count for
// curves declared hyperelliptic otherwise.
counting::CountSequence count_variety(const io::Variety& v, int n_max, const counting::CountOptions& options) {
    if (n_max < 1) throw DomainError("cli", "--n-max must be at least 1");
    counting::CountSequence seq;
    seq.q = v.system.p();
    for (int n = 1; n <= n_max; ++n) {
        const bool brute = counting::candidate_count(v.system, n) <= counting::kCandidateGuard;
        if (!brute && v.curve) seq.counts.emplace_back(counting::hyperelliptic_count(*v.curve, n, options));
        else seq.counts.emplace_back(counting::count_points(v.system, n, options));
    }
    return seq;
}

std::optional<std::vector<int>> parse_betti(const std::string& text) {
    if (text.empty()) return std::nullopt;
    std::vector<int> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const std::string cell = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        const Rational r = parse_rational(cell);
        if (denominator(r) != 1 || r < 0) throw ParseError("cli", "--betti entries must be non-negative integers");
        out.push_back(numerator(r).convert_to<int>());
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

zeta::ZetaData load_zeta(const Config& c) {
    if (!c.zeta.empty()) return io::zeta_from_json(io::read_json(c.zeta));
    if (!c.counts.empty()) return zeta::zeta_from_counts(io::counts_from_csv(io::read_text(c.counts)), parse_betti(c.betti));
    throw ParseError("cli", "need --zeta or --counts");
}

int cmd_count(const Config& c) {
    const auto v = io::variety_from_json(io::read_json(c.variety));
    io::write_text(c.out, io::counts_to_csv(count_variety(v, c.n_max, count_options(c))));
    return 0;
}

int cmd_zeta(const Config& c) {
    if (c.counts.empty()) throw ParseError("cli", "zeta needs --counts");
    const auto z = zeta::zeta_from_counts(io::counts_from_csv(io::read_text(c.counts)), parse_betti(c.betti));
    io::write_text(c.out, io::dump(io::zeta_to_json(z)));
    return z.fully_weighted() ? 0 : exit_code(Verdict::indeterminate);
}

int cmd_weil(const Config& c) {
    const auto z = load_zeta(c);
    const auto report = zeta::weil_check(z);
    Json j = io::weil_to_json(report);
    if (z.genus_hint) {
        poly::IntPoly numerator{1};
        for (const auto& f : z.factors)
            if (f.side == zeta::Side::numerator && f.weight == 1)
                for (int m = 0; m < f.multiplicity; ++m) numerator = poly::mul(numerator, f.poly);
        j["functional_equation"] = std::string(to_string(zeta::functional_equation_check(numerator, z.q, *z.genus_hint)));
    }
    if (z.weil_violating) j["weil_violating"] = true;
    io::write_text(c.out, io::dump(j));
    return exit_code(report.overall);
}

int cmd_lefschetz(const Config& c) {
    const auto z = load_zeta(c);
    if (!z.fully_weighted()) {
        io::write_text(c.out, io::dump(Json{{"verdict", "INDETERMINATE"}, {"reason", "zeta data has mixed factors"}}));
        return exit_code(Verdict::indeterminate);
    }
    counting::CountSequence reference;
    if (!c.variety.empty()) reference = count_variety(io::variety_from_json(io::read_json(c.variety)), c.n_max, count_options(c));
    else if (!c.counts.empty()) reference = io::counts_from_csv(io::read_text(c.counts));
    else throw ParseError("cli", "lefschetz needs --variety or --counts to compare against");
    if (reference.q != z.q) throw DomainError("cli", "counts and zeta data use different q");
    Json rows = Json::array();
    bool all = true;
    for (std::size_t n = 1; n <= reference.counts.size(); ++n) {
        const BigInt predicted = zeta::lefschetz_reconstruct(z, static_cast<int>(n));
        const bool match = predicted == reference.counts[n - 1];
        all = all && match;
        rows.push_back(Json{{"n", n}, {"reconstructed", io::integer(predicted)}, {"counted", io::integer(reference.counts[n - 1])},
                            {"match", match}});
    }
    const Verdict v = verdict_of(all);
    io::write_text(c.out, io::dump(Json{{"verdict", std::string(to_string(v))}, {"rows", rows}}));
    return exit_code(v);
}

int cmd_dyndeg(const Config& c) {
    Json j;
    Verdict v = Verdict::pass;
    if (!c.monomial.empty()) {
        const auto f = io::monomial_from_json(io::read_json(c.monomial));
        j = io::monomial_report_to_json(dyndeg::monomial_report(f, c.iters));
    } else if (!c.models.empty()) {
        j = io::report_to_json(dyndeg::model_report(io::model_from_json(io::read_json(c.models.front()))));
    } else if (!c.matrix.empty()) {
        const auto m = io::matrix_from_json(io::read_json(c.matrix).at("matrix"));
        const auto t = dyndeg::trace_limsup(m, c.n_max, c.tol);
        Json roots = Json::array();
        for (double r : t.roots) roots.push_back(io::number(r));
        v = t.verdict;
        j = Json{{"estimate", io::number(t.estimate)}, {"best_n", t.best_n}, {"spectral_radius", io::number(t.spectral_radius)},
                 {"verdict", std::string(to_string(v))}, {"roots", roots}};
    } else if (!c.tuple.empty()) {
        const Json tj = io::read_json(c.tuple);
        std::vector<zeta::Complex> mus;
        // Either explicit [re, im] pairs or angles as fractions of a full turn.
        if (tj.contains("turns"))
            for (const auto& t : tj.at("turns")) mus.push_back(std::polar(1.0, 2.0 * std::numbers::pi * t.get<double>()));
        else
            for (const auto& m : tj.at("mus")) mus.emplace_back(m.at(0).get<double>(), m.at(1).get<double>());
        const auto r = dyndeg::near_identity_powers(mus, c.eps, c.k_max);
        j = Json{{"ks", r.ks}, {"count", r.ks.size()}, {"bound_reached", r.bound_reached}};
        if (r.ks.empty()) {
            j["status"] = r.bound_reached ? "no k found despite the pigeonhole bound" : "bound not reached";
            if (r.bound_reached) v = Verdict::fail;
        }
    } else {
        throw ParseError("cli", "dyndeg needs --monomial, --model, --matrix or --tuple");
    }
    io::write_text(c.out, io::dump(j));
    return exit_code(v);
}

struct Row {
    std::string quantity;
    double value;
    std::optional<double> reference;
    double tolerance;
    Verdict verdict;
};

void add_suite(std::vector<Row>& rows, const std::string& label, const corr::GradedMatrixCorr& model,
               const dyndeg::DyndegReport& report) {
    const auto add_check = [&](const dyndeg::CheckResult& r) {
        rows.push_back({label + r.name, r.excess, 0.0, r.tolerance, r.verdict});
    };
    add_check(dyndeg::check_log_concavity(report.lambdas));
    add_check(dyndeg::check_dinh(report.chis, report.lambdas));
    add_check(dyndeg::check_q4prime(report.chis, report.lambdas));
    add_check(dyndeg::check_chi_dominates(report.chis, report.lambdas));
    add_check(dyndeg::check_adjointness(model));
    for (int i = 0; i <= model.lattice.k; ++i) {
        const int rank = model.lattice.ranks[i];
        std::vector<RatVector> alpha, beta;
        for (int a = 0; a < rank; ++a) {
            RatVector e(static_cast<std::size_t>(rank));
            e[a] = 1;
            alpha.push_back(e);
            beta.push_back(e);
        }
        const auto consts = dyndeg::eq3_norm_constants(alpha, beta, model.lattice.pairings[i]);
        const auto val = dyndeg::eq3_validate(consts, 100, 20261016 + static_cast<std::uint64_t>(i));
        rows.push_back({label + "sandwich_violations_N" + std::to_string(i), static_cast<double>(val.violations), 0.0, 0.0,
                        verdict_of(val.violations == 0)});
    }
}

int cmd_props(const Config& c) {
    std::vector<Row> rows;
    if (!c.frobenius.empty()) {
        BigInt q = 0;
        int k = 0;
        std::size_t start = 0;
        while (start < c.frobenius.size()) {
            const auto comma = c.frobenius.find(',', start);
            const std::string item = c.frobenius.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            const auto eq = item.find('=');
            if (eq == std::string::npos) throw ParseError("cli", "--frobenius expects q=<q>,k=<k>");
            const Rational value = parse_rational(item.substr(eq + 1));
            if (denominator(value) != 1) throw ParseError("cli", "--frobenius values must be integers");
            if (item.substr(0, eq) == "q") q = numerator(value);
            else if (item.substr(0, eq) == "k") k = numerator(value).convert_to<int>();
            else throw ParseError("cli", "unknown --frobenius key '" + item.substr(0, eq) + "'");
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        const auto model = corr::frobenius_model(q, k);
        const auto report = dyndeg::model_report(model);
        BigInt qi = 1;
        for (int i = 0; i <= k; ++i, qi *= q) {
            const double ref = to_double(qi);
            rows.push_back({"lambda_" + std::to_string(i), report.lambdas[i], ref, 0.0, verdict_of(report.lambdas[i] == ref)});
            rows.push_back({"chi_" + std::to_string(2 * i), *report.chis[2 * i], ref, 0.0, verdict_of(*report.chis[2 * i] == ref)});
        }
        const double entropy_ref = k * std::log(to_double(q));
        rows.push_back({"entropy", report.entropy, entropy_ref, 1e-12,
                        verdict_of(std::abs(report.entropy - entropy_ref) <= 1e-12 * std::max(1.0, entropy_ref))});
        add_suite(rows, "", model, report);
        const auto w = dyndeg::weil_from_dyndeg(q, k);
        rows.push_back({"weil_from_dyndeg", static_cast<double>(w.witnesses.size()), 0.0, 0.0, w.verdict});
    } else if (!c.models.empty()) {
        if (c.models.size() > 2) throw ParseError("cli", "props takes at most two --model files");
        std::vector<corr::GradedMatrixCorr> models;
        std::vector<dyndeg::DyndegReport> reports;
        for (const auto& path : c.models) {
            models.push_back(io::model_from_json(io::read_json(path)));
            reports.push_back(dyndeg::model_report(models.back()));
        }
        const bool product = models.size() == 2;
        for (std::size_t m = 0; m < models.size(); ++m)
            add_suite(rows, product ? (m == 0 ? "g:" : "h:") : "", models[m], reports[m]);
        if (product) {
            const auto f = corr::product_model(models[0], models[1]);
            const auto fr = dyndeg::model_report(f);
            add_suite(rows, "gxh:", f, fr);
            const auto r = dyndeg::check_product_formula(reports[0].lambdas, reports[1].lambdas, fr.lambdas);
            rows.push_back({"gxh:" + r.name, r.excess, 0.0, r.tolerance, r.verdict});
        }
    } else {
        throw ParseError("cli", "props needs --frobenius or --model");
    }
    std::string csv = "quantity,value,reference,tolerance,verdict\n";
    bool failed = false;
    for (const auto& r : rows) {
        failed = failed || r.verdict == Verdict::fail;
        csv += r.quantity + "," + format_double(r.value) + "," + (r.reference ? format_double(*r.reference) : "") + "," +
               format_double(r.tolerance) + "," + std::string(to_string(r.verdict)) + "\n";
    }
    io::write_text(c.out, csv);
    return failed ? exit_code(Verdict::fail) : 0;
}

int cmd_lattice(const Config& c) {
    const Json pj = io::read_json(c.pairing);
    const auto mp = io::pairing_from_json(pj);
    std::vector<RatVector> span = mp.alg_span;
    if (span.empty())
        for (std::size_t a = 0; a < mp.gram.rows(); ++a) {
            RatVector e(mp.gram.rows());
            e[a] = 1;
            span.push_back(e);
        }
    const Verdict nondeg = cyclelattice::nondegeneracy_check(mp.gram, span);
    Json j{{"nondegenerate", std::string(to_string(nondeg))}};
    if (nondeg == Verdict::fail) {
        Json combos = Json::array();
        for (const auto& v : nullspace(cyclelattice::restricted_gram(mp.gram, span))) combos.push_back(io::vector_json(v));
        j["null_combinations"] = combos;
        io::write_text(c.out, io::dump(j));
        return exit_code(nondeg);
    }
    Json ortho = Json::array();
    for (const auto& a : cyclelattice::orthogonalize(span, mp.gram)) ortho.push_back(io::vector_json(a));
    j["orthogonal_basis"] = ortho;
    if (c.dual_basis) {
        Json ys = Json::array();
        for (const auto& y : cyclelattice::dual_basis(mp.gram, span)) ys.push_back(io::vector_json(y));
        j["dual_basis"] = ys;
    }
    if (pj.contains("vectors")) {
        Json decs = Json::array();
        for (const auto& vj : pj["vectors"]) {
            const RatVector x = io::vector_from_json(vj);
            const auto d = cyclelattice::decompose(x, mp);
            decs.push_back(Json{{"x", io::vector_json(x)}, {"x_alg", io::vector_json(d.x_alg)}, {"x_tr", io::vector_json(d.x_tr)}});
        }
        j["decompositions"] = decs;
    }
    io::write_text(c.out, io::dump(j));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dynlab: point counts, zeta functions and dynamical degrees"};
    app.require_subcommand(1);
    Config cfg;

    auto* count = app.add_subcommand("count", "count points over F_{p^n}, n = 1..n_max (CSV)");
    count->add_option("--variety", cfg.variety)->required();
    count->add_option("--n-max", cfg.n_max);
    count->add_option("--threads", cfg.threads);
    count->add_option("--out", cfg.out);

    auto* zeta = app.add_subcommand("zeta", "zeta function from a counts CSV (JSON)");
    zeta->add_option("--counts", cfg.counts)->required();
    zeta->add_option("--betti", cfg.betti, "comma-separated degree budget per weight");
    zeta->add_option("--out", cfg.out);

    auto* weil = app.add_subcommand("weil", "Riemann hypothesis check on zeta data");
    weil->add_option("--zeta", cfg.zeta);
    weil->add_option("--counts", cfg.counts);
    weil->add_option("--betti", cfg.betti);
    weil->add_option("--out", cfg.out);

    auto* lefschetz = app.add_subcommand("lefschetz", "trace-formula reconstruction against counts");
    lefschetz->add_option("--zeta", cfg.zeta);
    lefschetz->add_option("--counts", cfg.counts);
    lefschetz->add_option("--variety", cfg.variety);
    lefschetz->add_option("--n-max", cfg.n_max);
    lefschetz->add_option("--threads", cfg.threads);
    lefschetz->add_option("--out", cfg.out);

    auto* dyn = app.add_subcommand("dyndeg", "degree growth, spectral and trace estimates (JSON)");
    dyn->add_option("--monomial", cfg.monomial);
    dyn->add_option("--model", cfg.models);
    dyn->add_option("--matrix", cfg.matrix);
    dyn->add_option("--tuple", cfg.tuple);
    dyn->add_option("--iters", cfg.iters);
    dyn->add_option("--n-max", cfg.n_max);
    dyn->add_option("--tol", cfg.tol);
    dyn->add_option("--eps", cfg.eps);
    dyn->add_option("--k-max", cfg.k_max);
    dyn->add_option("--out", cfg.out);

    auto* props = app.add_subcommand("props", "property suite summary (CSV)");
    props->add_option("--frobenius", cfg.frobenius, "q=<q>,k=<k>");
    props->add_option("--model", cfg.models);
    props->add_option("--threads", cfg.threads);
    props->add_option("--out", cfg.out);

    auto* lattice = app.add_subcommand("lattice", "dual basis and algebraic decomposition (JSON)");
    lattice->add_option("--pairing", cfg.pairing)->required();
    lattice->add_flag("--dual-basis", cfg.dual_basis);
    lattice->add_option("--out", cfg.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return emit_error("parse", "cli", e.what(), kInputError);
    }

    try {
        if (count->parsed()) return cmd_count(cfg);
        if (zeta->parsed()) return cmd_zeta(cfg);
        if (weil->parsed()) return cmd_weil(cfg);
        if (lefschetz->parsed()) return cmd_lefschetz(cfg);
        if (dyn->parsed()) return cmd_dyndeg(cfg);
        if (props->parsed()) return cmd_props(cfg);
        if (lattice->parsed()) return cmd_lattice(cfg);
    } catch (const Error& e) {
        return emit_error(e.kind(), e.module(), e.what(), e.kind() == "indeterminate" ? exit_code(Verdict::indeterminate) : kInputError);
    } catch (const Json::exception& e) {
        return emit_error("parse", "io", e.what(), kInputError);
    } catch (const std::exception& e) {
        return emit_error("internal", "cli", e.what(), kInputError);
    }
    return kInputError;
}
