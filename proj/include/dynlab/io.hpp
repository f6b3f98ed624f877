#pragma once

#include "dynlab/corr.hpp"
#include "dynlab/counting.hpp"
#include "dynlab/cyclelattice.hpp"
#include "dynlab/dyndeg.hpp"
#include "dynlab/zeta.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

// File formats. Every parse failure throws ParseError with module "io"; every
// float is written with 15 significant digits.
namespace dynlab::io {

using Json = nlohmann::json;

std::string read_text(const std::string& path);
Json read_json(const std::string& path);
Json parse_json(const std::string& text);
// Empty path or "-" writes to stdout.
void write_text(const std::string& path, const std::string& text);
std::string dump(const Json& j);

Json number(double x);
Json integer(const BigInt& x);          // number when it fits in 64 bits, else decimal string
BigInt to_integer(const Json& j);       // accepts numbers and decimal strings
Rational to_rational(const Json& j);    // accepts integers and "p/q" strings
Json rational(const Rational& x);       // "p/q" string (or "p")
Json vector_json(const RatVector& v);
Json matrix_json(const RatMatrix& m);
RatVector vector_from_json(const Json& j);
RatMatrix matrix_from_json(const Json& j);

// {name, p, ambient: {kind, dim}, polys: [[[coeff, [e...]], ...], ...],
//  hyperelliptic: [f_0, ..., f_d]?}. The optional hyperelliptic field names
// y^2 = f(x) when the polynomials describe the plane model of that curve.
struct Variety {
    counting::PolySystem system;
    std::optional<counting::HyperellipticCurve> curve;
};

Variety variety_from_json(const Json& j);

// Header n,q_n,N_n; rows n = 1..n_max in order.
std::string counts_to_csv(const counting::CountSequence& counts);
counting::CountSequence counts_from_csv(const std::string& text);

Json zeta_to_json(const zeta::ZetaData& z);
zeta::ZetaData zeta_from_json(const Json& j);
Json weil_to_json(const zeta::WeilReport& report);

// {k, monomials: [[e_0, ..., e_k], ...]}
corr::MonomialMap monomial_from_json(const Json& j);
Json monomial_to_json(const corr::MonomialMap& f);

// {k (or dimension), ranks, pairings}
cyclelattice::GradedLattice lattice_from_json(const Json& j);
Json lattice_to_json(const cyclelattice::GradedLattice& lattice);
// {dim, gram, alg_span, vectors?}
cyclelattice::MiddlePairing pairing_from_json(const Json& j);
// lattice fields plus {actions, functorial, per_n?}
corr::GradedMatrixCorr model_from_json(const Json& j);
Json model_to_json(const corr::GradedMatrixCorr& c);

Json trace_to_json(const dyndeg::ConvergenceTrace& t);
Json report_to_json(const dyndeg::DyndegReport& r);
Json monomial_report_to_json(const dyndeg::MonomialReport& r);
Json check_to_json(const dyndeg::CheckResult& c);

} // namespace dynlab::io
