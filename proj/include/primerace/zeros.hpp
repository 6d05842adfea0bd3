#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "primerace/characters.hpp"

namespace primerace {

struct ZeroRecord {
    std::string decimal;  // ordinate as written in the source (full precision)
    double ordinate = 0.0;
    double abs_error = 0.0;
    enum class Source { ingested, computed } source = Source::computed;
};

struct CharacterZeros {
    std::int64_t q = 1;
    std::int64_t label = 1;
    std::vector<ZeroRecord> records;  // ascending ordinates, multiset semantics
    double height_complete = 0.0;

    std::string conrey() const { return std::to_string(q) + "." + std::to_string(label); }
    std::size_t count_below(double T) const;
};

// Positive zero ordinates grouped by Conrey label.  Only gamma > 0 is stored;
// negative ordinates belong to the conjugate character.
class ZeroTable {
public:
    void add(std::int64_t q, std::int64_t label, ZeroRecord rec);
    void set_height_complete(std::int64_t q, std::int64_t label, double T);

    bool has(std::int64_t q, std::int64_t label) const;
    const CharacterZeros& of(std::int64_t q, std::int64_t label) const;
    std::vector<const CharacterZeros*> all() const;
    std::vector<const CharacterZeros*> for_modulus(std::int64_t q) const;
    std::size_t total_records() const;

    void merge(const ZeroTable& other);

private:
    std::map<std::pair<std::int64_t, std::int64_t>, CharacterZeros> entries_;
};

// Line format: "<q.n> <ordinate> <abs_error>", '#' starts a comment.  The
// directive "# height_complete <q.n> <T>" certifies completeness; otherwise
// the largest ingested ordinate is assumed.  Malformed lines and labels that
// are not units mod q raise DataError with the line number.
ZeroTable ingest_zeros(const std::string& path);
ZeroTable ingest_zeros_stream(std::istream& in, const std::string& name);
void write_zeros(const ZeroTable& table, const std::string& path);

// Locates every sign change of the rotated completed L-function on (0, T]
// by scan + bisection, to abs_error <= 1e-8.  Envelope: modulus <= 20,
// T <= 200, chi primitive or principal (principal means the zeta zeros).
// The count is validated against the zero-counting estimate; a mismatch
// beyond 2 + log T raises DataError after one rescan at finer step.
std::vector<ZeroRecord> compute_zeros(const Character& chi, double T);

// Cached wrapper keyed by (q, label, T, algorithm version) under cache_dir.
std::vector<ZeroRecord> compute_zeros_cached(const Character& chi, double T,
                                             const std::string& cache_dir);

struct CountCheck {
    double T = 0.0;
    std::int64_t observed = 0;
    double predicted = 0.0;          // sum over characters of (T/2pi) log(cond T / 2 pi e)
    double leading_asymptotic = 0.0; // phi(q) T log(qT) / 2pi
};

// Counts ordinates <= T of the table's nonprincipal characters mod q (the
// principal/zeta entry when q = 1) against the counting formula.  Requires
// height_complete >= T for every contributing character.
CountCheck count_check(const ZeroTable& table, std::int64_t q, double T);

// arg(1/2 + i gamma) = arctan(2 gamma)
double theta_gamma(double gamma);

// Default cache root: $PRIMERACE_CACHE or ".primerace_cache".
std::string default_cache_dir();

}  // namespace primerace
