#include "dynlab/io.hpp"

#include "dynlab/error.hpp"

#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

namespace dynlab::io {

namespace {

constexpr const char* kModule = "io";

[[noreturn]] void bad(const std::string& message) { throw ParseError(kModule, message); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) bad("expected a JSON object");
    const auto it = j.find(key);
    if (it == j.end()) bad(std::string("missing field '") + key + "'");
    return *it;
}

const Json& array_field(const Json& j, const char* key) {
    const Json& a = field(j, key);
    if (!a.is_array()) bad(std::string("field '") + key + "' must be an array");
    return a;
}

int small_int(const Json& j, const char* what) {
    if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
    const auto v = j.get<long long>();
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) bad(std::string(what) + " out of range");
    return static_cast<int>(v);
}

// Runs a parser and turns library-level JSON type errors into ParseError.
template <class F>
auto guarded(F&& parse) -> decltype(parse()) {
    try {
        return parse();
    } catch (const Json::exception& e) {
        bad(e.what());
    }
}

Json root_json(const zeta::Complex& r) {
    return Json{{"re", number(r.real())}, {"im", number(r.imag())}, {"modulus", number(std::abs(r))}};
}

Json poly_json(const poly::IntPoly& p) {
    Json out = Json::array();
    for (const auto& c : p) out.push_back(integer(c));
    return out;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, sep)) out.push_back(cell);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

std::vector<RatMatrix> matrices_from_json(const Json& j) {
    if (!j.is_array()) bad("expected an array of matrices");
    std::vector<RatMatrix> out;
    for (const auto& m : j) out.push_back(matrix_from_json(m));
    return out;
}

Json matrices_json(const std::vector<RatMatrix>& ms) {
    Json out = Json::array();
    for (const auto& m : ms) out.push_back(matrix_json(m));
    return out;
}

} // namespace

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) bad("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::exception& e) {
        bad(std::string("malformed JSON: ") + e.what());
    }
}

Json read_json(const std::string& path) { return parse_json(read_text(path)); }

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(kModule, "io", "cannot write '" + path + "'");
    out << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json number(double x) {
    if (!std::isfinite(x)) return nullptr;
    return round15(x);
}

Json integer(const BigInt& x) {
    if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
        return x.convert_to<long long>();
    return x.str();
}

BigInt to_integer(const Json& j) {
    if (j.is_number_integer()) return BigInt(j.get<long long>());
    if (j.is_string()) {
        const Rational r = parse_rational(j.get<std::string>());
        if (denominator(r) != 1) bad("expected an integer, got '" + j.get<std::string>() + "'");
        return numerator(r);
    }
    bad("expected an integer");
}

Rational to_rational(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    bad("expected an integer or a rational string");
}

Json rational(const Rational& x) { return to_string(x); }

Json vector_json(const RatVector& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(rational(x));
    return out;
}

Json matrix_json(const RatMatrix& m) {
    Json out = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(rational(m(r, c)));
        out.push_back(std::move(row));
    }
    return out;
}

RatVector vector_from_json(const Json& j) {
    if (!j.is_array()) bad("expected a vector");
    RatVector v;
    for (const auto& x : j) v.push_back(to_rational(x));
    return v;
}

RatMatrix matrix_from_json(const Json& j) {
    if (!j.is_array()) bad("expected a matrix (array of rows)");
    const std::size_t rows = j.size();
    const std::size_t cols = rows == 0 ? 0 : (j[0].is_array() ? j[0].size() : 0);
    RatMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols) bad("matrix rows must be arrays of equal length");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = to_rational(j[r][c]);
    }
    return m;
}

Variety variety_from_json(const Json& j) {
    return guarded([&]() -> Variety {
        const std::string name = j.contains("name") ? field(j, "name").get<std::string>() : std::string();
        const Json& pj = field(j, "p");
        if (!pj.is_number_unsigned()) bad("p must be a positive integer");
        const auto p = pj.get<std::uint64_t>();
        const Json& amb = field(j, "ambient");
        counting::Ambient ambient;
        const auto kind = field(amb, "kind").get<std::string>();
        if (kind == "projective") ambient.kind = counting::AmbientKind::projective;
        else if (kind == "affine") ambient.kind = counting::AmbientKind::affine;
        else bad("ambient kind must be 'projective' or 'affine'");
        ambient.dim = small_int(field(amb, "dim"), "ambient dim");
        if (ambient.dim < 0) bad("ambient dim must be non-negative");

        std::vector<std::vector<std::pair<long long, std::vector<long long>>>> polys;
        for (const auto& pol : array_field(j, "polys")) {
            if (!pol.is_array()) bad("each polynomial must be an array of terms");
            std::vector<std::pair<long long, std::vector<long long>>> terms;
            for (const auto& term : pol) {
                if (!term.is_array() || term.size() != 2 || !term[0].is_number_integer() || !term[1].is_array())
                    bad("each term must be [coeff, [exponents]]");
                terms.emplace_back(term[0].get<long long>(), term[1].get<std::vector<long long>>());
            }
            polys.push_back(std::move(terms));
        }
        Variety v{counting::PolySystem(name, p, ambient, polys), std::nullopt};
        if (j.contains("hyperelliptic")) {
            std::vector<ffield::u64> f;
            for (const auto& c : array_field(j, "hyperelliptic")) {
                if (!c.is_number_integer()) bad("hyperelliptic coefficients must be integers");
                const long long x = c.get<long long>() % static_cast<long long>(p);
                f.push_back(static_cast<ffield::u64>(x < 0 ? x + static_cast<long long>(p) : x));
            }
            v.curve.emplace(p, std::move(f));
        }
        return v;
    });
}

std::string counts_to_csv(const counting::CountSequence& counts) {
    std::string out = "n,q_n,N_n\n";
    BigInt qn = 1;
    for (std::size_t n = 1; n <= counts.counts.size(); ++n) {
        qn *= counts.q;
        out += std::to_string(n) + "," + qn.str() + "," + counts.counts[n - 1].str() + "\n";
    }
    return out;
}

counting::CountSequence counts_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) bad("empty counts file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "n,q_n,N_n") bad("counts header must be 'n,q_n,N_n'");
    counting::CountSequence seq;
    BigInt expected_qn = 1;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split(line, ',');
        if (cells.size() != 3) bad("counts row must have 3 columns: '" + line + "'");
        const Rational rn = parse_rational(cells[0]);
        const Rational rq = parse_rational(cells[1]);
        const Rational rc = parse_rational(cells[2]);
        ++n;
        if (rn != static_cast<long long>(n)) bad("counts rows must list n = 1, 2, ... in order");
        if (denominator(rq) != 1 || denominator(rc) != 1) bad("counts must be integers");
        if (n == 1) {
            seq.q = numerator(rq);
            if (seq.q < 2) bad("q must be at least 2");
        }
        expected_qn *= seq.q;
        if (numerator(rq) != expected_qn) bad("q_n column is not q^n at n = " + std::to_string(n));
        seq.counts.push_back(numerator(rc));
    }
    if (seq.counts.empty()) bad("counts file has no rows");
    return seq;
}

Json zeta_to_json(const zeta::ZetaData& z) {
    Json factors = Json::array();
    for (const auto& f : z.factors) {
        Json roots = Json::array();
        for (const auto& r : zeta::find_roots(zeta::eigen_polynomial(f)).roots) roots.push_back(root_json(r));
        factors.push_back(Json{{"side", f.side == zeta::Side::numerator ? "numerator" : "denominator"},
                               {"poly", poly_json(f.poly)},
                               {"weight", f.weight ? Json(*f.weight) : Json("mixed")},
                               {"multiplicity", f.multiplicity},
                               {"eigenvalues", roots}});
    }
    return Json{{"q", integer(z.q)},
                {"factors", factors},
                {"genus_hint", z.genus_hint ? Json(*z.genus_hint) : Json(nullptr)},
                {"weil_violating", z.weil_violating},
                {"smoothness_verified", z.smoothness_verified},
                {"diagnostics", z.diagnostics}};
}

zeta::ZetaData zeta_from_json(const Json& j) {
    return guarded([&]() -> zeta::ZetaData {
        zeta::ZetaData z;
        z.q = to_integer(field(j, "q"));
        if (z.q < 2) bad("q must be at least 2");
        for (const auto& fj : array_field(j, "factors")) {
            zeta::ZetaFactor f;
            const auto side = field(fj, "side").get<std::string>();
            if (side == "numerator") f.side = zeta::Side::numerator;
            else if (side == "denominator") f.side = zeta::Side::denominator;
            else bad("factor side must be 'numerator' or 'denominator'");
            for (const auto& c : array_field(fj, "poly")) f.poly.push_back(to_integer(c));
            poly::trim(f.poly);
            if (f.poly.empty() || f.poly[0] != 1) bad("zeta factor must have constant term 1");
            const Json& w = field(fj, "weight");
            if (w.is_string() && w.get<std::string>() == "mixed") f.weight = std::nullopt;
            else f.weight = small_int(w, "weight");
            f.multiplicity = fj.contains("multiplicity") ? small_int(fj["multiplicity"], "multiplicity") : 1;
            if (f.multiplicity < 1) bad("multiplicity must be positive");
            z.factors.push_back(std::move(f));
        }
        if (j.contains("genus_hint") && !j["genus_hint"].is_null()) z.genus_hint = small_int(j["genus_hint"], "genus_hint");
        if (j.contains("weil_violating")) z.weil_violating = j["weil_violating"].get<bool>();
        if (j.contains("smoothness_verified")) z.smoothness_verified = j["smoothness_verified"].get<bool>();
        if (j.contains("diagnostics")) z.diagnostics = j["diagnostics"].get<std::vector<std::string>>();
        return z;
    });
}

Json weil_to_json(const zeta::WeilReport& report) {
    Json factors = Json::array();
    for (const auto& f : report.factors) {
        Json fj{{"factor", f.factor},
                {"verdict", std::string(to_string(f.verdict))},
                {"worst_relative_error", number(f.worst_relative_error)}};
        if (f.offending_root) fj["offending_root"] = root_json(*f.offending_root);
        factors.push_back(std::move(fj));
    }
    return Json{{"overall", std::string(to_string(report.overall))},
                {"smoothness_not_verified", report.smoothness_not_verified},
                {"factors", factors}};
}

corr::MonomialMap monomial_from_json(const Json& j) {
    return guarded([&]() -> corr::MonomialMap {
        const int k = small_int(field(j, "k"), "k");
        std::vector<std::vector<BigInt>> exps;
        for (const auto& row : array_field(j, "monomials")) {
            if (!row.is_array()) bad("each monomial must be an exponent array");
            std::vector<BigInt> e;
            for (const auto& x : row) e.push_back(to_integer(x));
            exps.push_back(std::move(e));
        }
        return corr::MonomialMap::make(k, std::move(exps));
    });
}

Json monomial_to_json(const corr::MonomialMap& f) {
    Json rows = Json::array();
    for (const auto& e : f.exps) {
        Json row = Json::array();
        for (const auto& x : e) row.push_back(integer(x));
        rows.push_back(std::move(row));
    }
    return Json{{"k", f.k}, {"monomials", rows}, {"degree", integer(f.degree)}, {"dominant", f.dominant}};
}

cyclelattice::GradedLattice lattice_from_json(const Json& j) {
    return guarded([&]() -> cyclelattice::GradedLattice {
        cyclelattice::GradedLattice l;
        if (j.contains("k")) l.k = small_int(j["k"], "k");
        else l.k = small_int(field(j, "dimension"), "dimension");
        for (const auto& r : array_field(j, "ranks")) l.ranks.push_back(small_int(r, "rank"));
        l.pairings = matrices_from_json(field(j, "pairings"));
        l.validate();
        return l;
    });
}

Json lattice_to_json(const cyclelattice::GradedLattice& lattice) {
    return Json{{"k", lattice.k}, {"ranks", lattice.ranks}, {"pairings", matrices_json(lattice.pairings)}};
}

cyclelattice::MiddlePairing pairing_from_json(const Json& j) {
    return guarded([&]() -> cyclelattice::MiddlePairing {
        cyclelattice::MiddlePairing mp;
        mp.dim = small_int(field(j, "dim"), "dim");
        mp.gram = matrix_from_json(field(j, "gram"));
        if (j.contains("alg_span"))
            for (const auto& v : j["alg_span"]) mp.alg_span.push_back(vector_from_json(v));
        mp.validate();
        return mp;
    });
}

corr::GradedMatrixCorr model_from_json(const Json& j) {
    return guarded([&]() -> corr::GradedMatrixCorr {
        corr::GradedMatrixCorr c;
        c.lattice = lattice_from_json(j);
        c.action = matrices_from_json(field(j, "actions"));
        c.functorial = j.contains("functorial") ? j["functorial"].get<bool>() : true;
        if (j.contains("per_n"))
            for (const auto& step : j["per_n"]) c.per_n.push_back(matrices_from_json(step));
        c.validate();
        return c;
    });
}

Json model_to_json(const corr::GradedMatrixCorr& c) {
    Json j = lattice_to_json(c.lattice);
    j["actions"] = matrices_json(c.action);
    j["functorial"] = c.functorial;
    if (!c.per_n.empty()) {
        Json steps = Json::array();
        for (const auto& s : c.per_n) steps.push_back(matrices_json(s));
        j["per_n"] = steps;
    }
    return j;
}

Json trace_to_json(const dyndeg::ConvergenceTrace& t) {
    Json ratios = Json::array();
    for (double r : t.ratios) ratios.push_back(number(r));
    Json roots = Json::array();
    for (double r : t.roots) roots.push_back(number(r));
    Json j{{"estimator", t.estimator},
           {"final", number(t.final)},
           {"window", Json::array({t.window_begin, t.window_end})},
           {"ratios", ratios},
           {"roots", roots}};
    if (t.period) j["period"] = *t.period;
    if (t.window_sensitivity) j["window_sensitivity"] = number(*t.window_sensitivity);
    return j;
}

Json report_to_json(const dyndeg::DyndegReport& r) {
    Json lambdas = Json::array();
    for (double x : r.lambdas) lambdas.push_back(number(x));
    Json chis = Json::array();
    for (const auto& c : r.chis) chis.push_back(c ? number(*c) : Json(nullptr));
    Json diagnostics = Json::object();
    for (const auto& [name, trace] : r.diagnostics) diagnostics[name] = trace_to_json(trace);
    return Json{{"lambdas", lambdas}, {"chis", chis}, {"entropy", number(r.entropy)}, {"diagnostics", diagnostics}};
}

Json monomial_report_to_json(const dyndeg::MonomialReport& r) {
    Json degs = Json::array();
    for (const auto& d : r.degs) degs.push_back(integer(d));
    Json closed = Json::array();
    for (double x : r.lambdas_closed_form) closed.push_back(number(x));
    Json j{{"degs", degs},
           {"failed_at", r.failed_at ? Json(*r.failed_at) : Json(nullptr)},
           {"lambda1", r.lambda1 ? number(r.lambda1->value) : Json(nullptr)},
           {"lambdas_closed_form", closed},
           {"algebraically_unstable", r.algebraically_unstable}};
    if (r.lambda1) j["lambda1_trace"] = trace_to_json(r.lambda1->trace);
    return j;
}

Json check_to_json(const dyndeg::CheckResult& c) {
    return Json{{"name", c.name},
                {"verdict", std::string(to_string(c.verdict))},
                {"excess", number(c.excess)},
                {"tolerance", number(c.tolerance)},
                {"witnesses", c.witnesses}};
}

} // namespace dynlab::io
