#include "primerace/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "primerace/errors.hpp"
#include "primerace/lfunction.hpp"
#include "primerace/parallel.hpp"

namespace primerace {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr const char* kZeroAlgoVersion = "v1";

bool parse_label(const std::string& tok, std::int64_t& q, std::int64_t& n) {
    auto dot = tok.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 >= tok.size()) return false;
    try {
        std::size_t used = 0;
        q = std::stoll(tok.substr(0, dot), &used);
        if (used != dot) return false;
        n = std::stoll(tok.substr(dot + 1), &used);
        if (used != tok.size() - dot - 1) return false;
    } catch (...) {
        return false;
    }
    return q >= 1 && n >= 1;
}

void validate_label(std::int64_t q, std::int64_t n, const std::string& where) {
    if (q == 1) {
        if (n != 1) throw DataError(where + ": unknown character label");
        return;
    }
    if (n >= q || std::gcd(n, q) != 1)
        throw DataError(where + ": unknown character label");
}

// per-character Riemann-von Mangoldt style estimate for 0 < gamma <= T
double predicted_per_character(std::int64_t conductor, double T) {
    double c = static_cast<double>(std::max<std::int64_t>(conductor, 1));
    double arg = c * T / kTwoPi;
    if (arg <= 1.0) return 0.0;
    return T / kTwoPi * (std::log(arg) - 1.0);
}

}  // namespace

std::size_t CharacterZeros::count_below(double T) const {
    std::size_t n = 0;
    for (const ZeroRecord& r : records)
        if (r.ordinate <= T) ++n;
    return n;
}

void ZeroTable::add(std::int64_t q, std::int64_t label, ZeroRecord rec) {
    CharacterZeros& cz = entries_[{q, label}];
    cz.q = q;
    cz.label = label;
    auto pos = std::lower_bound(cz.records.begin(), cz.records.end(), rec.ordinate,
                                [](const ZeroRecord& a, double b) { return a.ordinate < b; });
    cz.records.insert(pos, std::move(rec));
    cz.height_complete = std::max(cz.height_complete, cz.records.back().ordinate);
}

void ZeroTable::set_height_complete(std::int64_t q, std::int64_t label, double T) {
    CharacterZeros& cz = entries_[{q, label}];
    cz.q = q;
    cz.label = label;
    cz.height_complete = T;
}

bool ZeroTable::has(std::int64_t q, std::int64_t label) const {
    return entries_.count({q, label}) > 0;
}

const CharacterZeros& ZeroTable::of(std::int64_t q, std::int64_t label) const {
    auto it = entries_.find({q, label});
    if (it == entries_.end())
        throw DataError("zero table has no entry for " + std::to_string(q) + "." +
                        std::to_string(label));
    return it->second;
}

std::vector<const CharacterZeros*> ZeroTable::all() const {
    std::vector<const CharacterZeros*> out;
    for (const auto& [k, v] : entries_) out.push_back(&v);
    return out;
}

std::vector<const CharacterZeros*> ZeroTable::for_modulus(std::int64_t q) const {
    std::vector<const CharacterZeros*> out;
    for (const auto& [k, v] : entries_)
        if (k.first == q) out.push_back(&v);
    return out;
}

std::size_t ZeroTable::total_records() const {
    std::size_t n = 0;
    for (const auto& [k, v] : entries_) n += v.records.size();
    return n;
}

void ZeroTable::merge(const ZeroTable& other) {
    for (const auto& [k, v] : other.entries_) {
        for (const ZeroRecord& r : v.records) add(k.first, k.second, r);
        CharacterZeros& mine = entries_[{k.first, k.second}];
        mine.height_complete = std::max(mine.height_complete, v.height_complete);
    }
}

ZeroTable ingest_zeros_stream(std::istream& in, const std::string& name) {
    ZeroTable table;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string where = name + ":" + std::to_string(lineno);
        // directive comments
        if (!line.empty() && line[0] == '#') {
            std::istringstream ss(line.substr(1));
            std::string kw, lab;
            double T;
            if (ss >> kw >> lab >> T && kw == "height_complete") {
                std::int64_t q, n;
                if (!parse_label(lab, q, n)) throw DataError(where + ": bad label in directive");
                validate_label(q, n, where);
                table.set_height_complete(q, n, T);
            }
            continue;
        }
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::string lab, ord;
        double err;
        if (!(ss >> lab)) continue;  // blank line
        if (!(ss >> ord >> err)) throw DataError(where + ": malformed line");
        std::string trailing;
        if (ss >> trailing) throw DataError(where + ": trailing tokens");
        std::int64_t q, n;
        if (!parse_label(lab, q, n)) throw DataError(where + ": bad character label");
        validate_label(q, n, where);
        ZeroRecord rec;
        rec.decimal = ord;
        try {
            std::size_t used = 0;
            rec.ordinate = std::stod(ord, &used);
            if (used != ord.size()) throw std::invalid_argument("");
        } catch (...) {
            throw DataError(where + ": bad ordinate");
        }
        rec.abs_error = err;
        rec.source = ZeroRecord::Source::ingested;
        if (!(rec.ordinate > 0.0)) throw DataError(where + ": ordinate must be positive");
        if (!(rec.abs_error >= 0.0) || rec.abs_error >= 1e-3)
            throw DataError(where + ": abs_error out of range");
        table.add(q, n, std::move(rec));
    }
    return table;
}

ZeroTable ingest_zeros(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open zero file: " + path);
    return ingest_zeros_stream(in, path);
}

void write_zeros(const ZeroTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write zero file: " + path);
    out << "# format: <conrey_label q.n> <ordinate> <abs_error>\n";
    for (const CharacterZeros* cz : table.all()) {
        out << "# height_complete " << cz->conrey() << " " << cz->height_complete << "\n";
        for (const ZeroRecord& r : cz->records) {
            char buf[64];
            if (r.decimal.empty()) {
                std::snprintf(buf, sizeof buf, "%.17g", r.ordinate);
                out << cz->conrey() << " " << buf << " " << r.abs_error << "\n";
            } else {
                out << cz->conrey() << " " << r.decimal << " " << r.abs_error << "\n";
            }
        }
    }
}

namespace {


// bisect a bracketed sign change to width 2e-10
double bisect(const HardyZ& Z, double lo, double hi, double flo) {
    for (int i = 0; i < 64 && hi - lo > 2e-10; ++i) {
        double mid = 0.5 * (lo + hi);
        double fm = Z(mid);
        if (fm == 0.0) return mid;
        if ((flo < 0) != (fm < 0)) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<double> scan_zeros(const HardyZ& Z, double T, double step) {
    std::size_t npts = static_cast<std::size_t>(std::ceil(T / step));
    // chunked scan: each chunk evaluates its grid range plus its left edge
    std::size_t chunk = 512;
    std::size_t nchunks = (npts + chunk - 1) / chunk;
    std::vector<std::vector<double>> found(nchunks);
    parallel_chunks(nchunks, [&](std::size_t ci) {
        std::size_t begin = ci * chunk, end = std::min(npts, begin + chunk);
        double prev_t = static_cast<double>(begin) * step;
        if (prev_t == 0.0) prev_t = step * 1e-3;  // stay off t = 0
        double prev_f = Z(prev_t);
        for (std::size_t j = begin + 1; j <= end; ++j) {
            double t = static_cast<double>(j) * step;
            if (t > T + 0.5 * step) break;
            double f = Z(t);
            if ((prev_f < 0) != (f < 0)) {
                double root = bisect(Z, prev_t, t, prev_f);
                if (root <= T) found[ci].push_back(root);
            }
            prev_t = t;
            prev_f = f;
        }
    });
    std::vector<double> roots;
    for (auto& v : found)
        for (double r : v) roots.push_back(r);
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace

std::vector<ZeroRecord> compute_zeros(const Character& chi, double T) {
    if (!(T > 0.0)) throw std::invalid_argument("compute_zeros: T must be positive");
    if (T > 200.0) throw EnvelopeError("compute_zeros: T above supported height 200");
    if (chi.modulus() > 20) throw EnvelopeError("compute_zeros: modulus above supported bound 20");
    if (!chi.is_principal() && chi.conductor() != chi.modulus())
        throw EnvelopeError("compute_zeros: character must be primitive or principal");

    HardyZ Z(chi);
    std::int64_t cond = chi.is_principal() ? 1 : chi.conductor();
    double predicted = predicted_per_character(cond, T);
    double slack = 2.0 + std::log(std::max(T, 3.0));

    std::vector<double> roots = scan_zeros(Z, T, 1.0 / 16.0);
    if (std::fabs(static_cast<double>(roots.size()) - predicted) > slack) {
        roots = scan_zeros(Z, T, 1.0 / 128.0);
        if (std::fabs(static_cast<double>(roots.size()) - predicted) > slack)
            throw DataError("compute_zeros: count " + std::to_string(roots.size()) +
                            " disagrees with estimate " + std::to_string(predicted) +
                            " for " + chi.conrey() + ", suspected missed zero");
    }
    std::vector<ZeroRecord> out;
    out.reserve(roots.size());
    for (double r : roots) {
        ZeroRecord rec;
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12f", r);
        rec.decimal = buf;
        rec.ordinate = r;
        rec.abs_error = 1e-9;
        rec.source = ZeroRecord::Source::computed;
        out.push_back(std::move(rec));
    }
    return out;
}

std::string default_cache_dir() {
    const char* env = std::getenv("PRIMERACE_CACHE");
    if (env && *env) return env;
    return ".primerace_cache";
}

std::vector<ZeroRecord> compute_zeros_cached(const Character& chi, double T,
                                             const std::string& cache_dir) {
    namespace fs = std::filesystem;
    std::ostringstream name;
    name << "zeros_q" << chi.modulus() << "_n" << chi.label() << "_T" << T << "_"
         << kZeroAlgoVersion << ".txt";
    fs::path path = fs::path(cache_dir) / name.str();
    if (fs::exists(path)) {
        ZeroTable t = ingest_zeros(path.string());
        std::int64_t q = chi.modulus(), n = chi.label();
        if (t.has(q, n)) {
            std::vector<ZeroRecord> recs = t.of(q, n).records;
            for (ZeroRecord& r : recs) r.source = ZeroRecord::Source::computed;
            return recs;
        }
    }
    std::vector<ZeroRecord> recs = compute_zeros(chi, T);
    fs::create_directories(fs::path(cache_dir));
    ZeroTable t;
    for (const ZeroRecord& r : recs) t.add(chi.modulus(), chi.label(), r);
    t.set_height_complete(chi.modulus(), chi.label(), T);
    write_zeros(t, path.string());
    return recs;
}

CountCheck count_check(const ZeroTable& table, std::int64_t q, double T) {
    CountCheck out;
    out.T = T;
    std::vector<const CharacterZeros*> entries = table.for_modulus(q);
    if (entries.empty()) throw DataError("count_check: table has no entries for modulus");
    for (const CharacterZeros* cz : entries) {
        bool counts = (q == 1) ? true : cz->label != 1;
        if (!counts) continue;
        if (cz->height_complete + 1e-12 < T)
            throw DataError("count_check: table incomplete for " + cz->conrey() +
                            " (complete to " + std::to_string(cz->height_complete) + ")");
        out.observed += static_cast<std::int64_t>(cz->count_below(T));
        std::int64_t cond = q == 1 ? 1 : character(q, cz->label).conductor();
        out.predicted += predicted_per_character(cond, T);
    }
    double phi = static_cast<double>(euler_phi(q));
    out.leading_asymptotic = phi * T * std::log(static_cast<double>(q) * T) / kTwoPi;
    return out;
}

double theta_gamma(double gamma) {
    return std::atan(2.0 * gamma);
}

}  // namespace primerace
