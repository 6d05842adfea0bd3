#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "primerace/lattice.hpp"
#include "primerace/zeros.hpp"

namespace primerace {

// A real number carried at full source precision: the decimal string is
// authoritative when present, the double is a convenience materialization.
struct PreciseReal {
    std::string decimal;  // empty when only double precision is available
    double value = 0.0;

    static PreciseReal from_double(double v);
    static PreciseReal from_decimal(const std::string& s);
};

// Exact scaled integer round(10^p * x).
mpz_class scaled_integer(const PreciseReal& x, int p);

struct RelationLattice {
    std::size_t dimension = 0;                     // k = #xi
    std::vector<std::vector<std::int64_t>> basis;  // independent integer relations
    std::int64_t coeff_bound = 0;                  // H
    int precision_digits = 0;                      // p

    bool empty() const { return basis.empty(); }
    std::size_t rank() const { return basis.size(); }
};

// All independent integer relations sum_i m_i xi_i = 0 with |m_i| <= H that
// lattice reduction exposes at precision p.  An empty basis means "none
// found at (H, p)", never a certificate of independence.  Requires
// p >= 10 + k log10(H); basis vectors are sign-normalized (first nonzero
// coefficient positive) and ordered as the reduction produced them.
RelationLattice find_relations(const std::vector<PreciseReal>& xi, std::int64_t H, int p);

enum class OrdinateStatus { relation_found, presumed_self_sufficient };

struct OrdinateClassification {
    std::int64_t q = 0, label = 0;
    PreciseReal ordinate;
    OrdinateStatus status = OrdinateStatus::presumed_self_sufficient;
    std::vector<std::int64_t> witness;  // a relation with nonzero coefficient here
};

struct CharacterSufficiency {
    std::int64_t q = 0, label = 0;
    std::vector<double> self_sufficient;  // Gamma^S(chi), ascending
    std::size_t sturdy_k = 0;             // #Gamma^S(chi)
    double robust_sum = 0.0;              // sum over Gamma^S of 1/gamma
};

struct SufficiencyReport {
    std::int64_t q = 1;
    double T = 0.0;
    std::int64_t H = 0;
    int p = 0;
    bool grh_assumed = true;  // the finder takes all zeros to lie on the line
    std::vector<OrdinateClassification> ordinates;
    std::vector<CharacterSufficiency> characters;
    RelationLattice relations;

    std::string to_json() const;
};

// Classifies every ordinate of Gamma(q) up to T (the zeta entry when q = 1):
// an ordinate is relation_found iff some discovered relation gives it a
// nonzero coefficient; the remainder are presumed self-sufficient at (H, p).
SufficiencyReport classify(const ZeroTable& table, std::int64_t q, double T,
                           std::int64_t H, int p);

struct RelativeIndependence {
    bool violated = false;
    std::vector<std::int64_t> witness;  // mixing relation when violated
    std::int64_t H = 0;
    int p = 0;
};

// Two multisets are relatively independent when every relation across the
// union splits into two vanishing halves; any discovered relation that
// mixes the halves without splitting is a violation witness.
RelativeIndependence relative_independence(const std::vector<PreciseReal>& A,
                                           const std::vector<PreciseReal>& B,
                                           std::int64_t H, int p);

// The closure of the ray {t xi mod 1} in T^k: generators of the subtorus
// are a primitive basis of the integer orthogonal complement of the
// relation lattice.
struct SubtorusSpec {
    std::size_t ambient = 0;  // k
    RelationLattice lattice;
    std::vector<std::vector<std::int64_t>> generators;  // d rows in Z^k

    std::size_t dim() const { return generators.size(); }
};

SubtorusSpec torus_closure(const std::vector<PreciseReal>& xi, std::int64_t H, int p);

// n independent Haar samples from the subtorus: zeta = sum_i phi_i g_i mod 1
// with phi uniform on T^d.  Deterministic given seed; chunked philox streams.
std::vector<std::vector<double>> sample_torus(const SubtorusSpec& spec, std::size_t n,
                                              std::uint64_t seed);

}  // namespace primerace
