#include "primerace/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "json.hpp"
#include "primerace/errors.hpp"
#include "primerace/parallel.hpp"

namespace primerace {
namespace {

constexpr std::uint64_t kMaxLimit = 1000000000ULL;
constexpr std::uint64_t kSegment = 1ULL << 20;
constexpr int kManifestVersion = 1;

struct Kahan {
    double sum = 0.0, c = 0.0;
    void add(double v) {
        double y = v - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

std::vector<std::uint32_t> simple_sieve(std::uint64_t bound) {
    std::vector<bool> comp(bound + 1, false);
    std::vector<std::uint32_t> primes;
    for (std::uint64_t i = 2; i <= bound; ++i) {
        if (comp[i]) continue;
        primes.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= bound; j += i) comp[j] = true;
    }
    return primes;
}

// prime power events (x = p^e, e >= 2) in ascending order of x
struct PowerEvent {
    std::uint64_t x;
    double logp;
};

std::vector<PowerEvent> power_events(const std::vector<std::uint32_t>& base,
                                     std::uint64_t lo, std::uint64_t hi) {
    std::vector<PowerEvent> ev;
    for (std::uint32_t p : base) {
        std::uint64_t pe = static_cast<std::uint64_t>(p) * p;
        if (pe > hi) break;
        double lp = std::log(static_cast<double>(p));
        while (pe <= hi) {
            if (pe >= lo) ev.push_back({pe, lp});
            if (pe > hi / p) break;
            pe *= p;
        }
    }
    std::sort(ev.begin(), ev.end(), [](const PowerEvent& a, const PowerEvent& b) { return a.x < b.x; });
    return ev;
}

// sieve the segment [lo, hi], setting flags[i] for composite lo+i
void flag_segment(const std::vector<std::uint32_t>& base, std::uint64_t lo, std::uint64_t hi,
                  std::vector<bool>& comp) {
    comp.assign(static_cast<std::size_t>(hi - lo + 1), false);
    for (std::uint32_t p : base) {
        std::uint64_t pp = static_cast<std::uint64_t>(p) * p;
        if (pp > hi) break;
        std::uint64_t start = std::max<std::uint64_t>(pp, ((lo + p - 1) / p) * p);
        for (std::uint64_t n = start; n <= hi; n += p) comp[static_cast<std::size_t>(n - lo)] = true;
    }
    if (lo <= 1) {
        for (std::uint64_t n = lo; n <= std::min<std::uint64_t>(hi, 1); ++n)
            comp[static_cast<std::size_t>(n - lo)] = true;
    }
}

}  // namespace

std::size_t PrimeCounts::residue_slot(std::int64_t a) const {
    a %= cfg_.q;
    if (a < 0) a += cfg_.q;
    auto it = std::lower_bound(residues_.begin(), residues_.end(), a);
    if (it == residues_.end() || *it != a)
        throw std::invalid_argument("residue not coprime to modulus");
    return static_cast<std::size_t>(it - residues_.begin());
}

double PrimeCounts::t_of(std::size_t j) const {
    return static_cast<double>(j0_ + static_cast<std::int64_t>(j)) * cfg_.dt;
}

PrimeCounts::Counters PrimeCounts::at_checkpoint(std::size_t j) const {
    Counters c;
    const std::size_t s = residues_.size();
    c.pi = pi_[j];
    c.theta = theta_[j];
    c.psi = psi_[j];
    c.pi_r.assign(pi_r_.begin() + j * s, pi_r_.begin() + (j + 1) * s);
    c.theta_r.assign(theta_r_.begin() + j * s, theta_r_.begin() + (j + 1) * s);
    c.psi_r.assign(psi_r_.begin() + j * s, psi_r_.begin() + (j + 1) * s);
    return c;
}

PrimeCounts::Counters PrimeCounts::at(std::uint64_t x) const {
    if (x > cfg_.limit) throw EnvelopeError("query beyond sieved limit");
    const std::size_t s = residues_.size();
    Counters c;
    c.pi_r.assign(s, 0);
    c.theta_r.assign(s, 0.0);
    c.psi_r.assign(s, 0.0);
    std::uint64_t from = 2;
    if (!xs_.empty() && x >= xs_.front()) {
        // nearest checkpoint at or below x
        double t = std::log(static_cast<double>(x));
        std::size_t j = std::min(xs_.size() - 1,
                                 static_cast<std::size_t>(std::max<std::int64_t>(
                                     0, static_cast<std::int64_t>(t / cfg_.dt) - j0_)));
        while (j > 0 && xs_[j] > x) --j;
        while (j + 1 < xs_.size() && xs_[j + 1] <= x) ++j;
        c = at_checkpoint(j);
        from = xs_[j] + 1;
    }
    if (from > x) return c;
    // short recount over (checkpoint, x]
    std::vector<bool> comp;
    flag_segment(base_primes_, from, x, comp);
    for (std::uint64_t n = from; n <= x; ++n) {
        if (comp[static_cast<std::size_t>(n - from)]) continue;
        double ln = std::log(static_cast<double>(n));
        c.pi += 1;
        c.theta += ln;
        c.psi += ln;
        std::int64_t rem = static_cast<std::int64_t>(n % static_cast<std::uint64_t>(cfg_.q));
        auto it = std::lower_bound(residues_.begin(), residues_.end(), rem);
        if (it != residues_.end() && *it == rem) {
            std::size_t slot = static_cast<std::size_t>(it - residues_.begin());
            c.pi_r[slot] += 1;
            c.theta_r[slot] += ln;
            c.psi_r[slot] += ln;
        }
    }
    for (const PowerEvent& ev : power_events(base_primes_, from, x)) {
        c.psi += ev.logp;
        std::int64_t rem = static_cast<std::int64_t>(ev.x % static_cast<std::uint64_t>(cfg_.q));
        auto it = std::lower_bound(residues_.begin(), residues_.end(), rem);
        if (it != residues_.end() && *it == rem)
            c.psi_r[static_cast<std::size_t>(it - residues_.begin())] += ev.logp;
    }
    return c;
}

namespace {

struct SegmentTally {
    std::uint64_t pi = 0;
    double theta = 0.0, psi = 0.0;
    std::vector<std::uint64_t> pi_r;
    std::vector<double> theta_r, psi_r;
};

}  // namespace

class SieveBuilder {
public:
    // builds checkpoints over (start, limit], beginning from `state`
    static void run(PrimeCounts& pc, std::uint64_t start, PrimeCounts::Counters state) {
        const SieveConfig& cfg = pc.cfg_;
        const std::size_t s = pc.residues_.size();
        const std::int64_t q = cfg.q;

        // rows already present (from a prior sieve) stay as they are; rows at
        // or below `start` take the starting state; the rest are filled below
        std::size_t first_new = pc.pi_.size();
        pc.pi_.resize(pc.xs_.size());
        pc.theta_.resize(pc.xs_.size());
        pc.psi_.resize(pc.xs_.size());
        pc.pi_r_.resize(pc.xs_.size() * s);
        pc.theta_r_.resize(pc.xs_.size() * s);
        pc.psi_r_.resize(pc.xs_.size() * s);

        // checkpoints whose x <= start take the starting state
        std::size_t j = first_new;
        for (; j < pc.xs_.size() && pc.xs_[j] <= start; ++j) write_row(pc, j, state);

        std::uint64_t lo = start + 1;
        if (lo < 2) lo = 2;
        if (lo > cfg.limit) return;

        // segment boundaries
        std::vector<std::pair<std::uint64_t, std::uint64_t>> segs;
        for (std::uint64_t a = lo; a <= cfg.limit; a += kSegment)
            segs.push_back({a, std::min(cfg.limit, a + kSegment - 1)});

        // pass A: per-segment tallies, parallel
        std::vector<SegmentTally> tally(segs.size());
        parallel_chunks(segs.size(), [&](std::size_t si) {
            auto [a, b] = segs[si];
            SegmentTally& t = tally[si];
            t.pi_r.assign(s, 0);
            t.theta_r.assign(s, 0.0);
            t.psi_r.assign(s, 0.0);
            std::vector<bool> comp;
            flag_segment(pc.base_primes_, a, b, comp);
            Kahan th, ps;
            std::vector<Kahan> th_r(s), ps_r(s);
            for (std::uint64_t n = a; n <= b; ++n) {
                if (comp[static_cast<std::size_t>(n - a)]) continue;
                double ln = std::log(static_cast<double>(n));
                t.pi += 1;
                th.add(ln);
                ps.add(ln);
                std::int64_t rem = static_cast<std::int64_t>(n % static_cast<std::uint64_t>(q));
                auto it = std::lower_bound(pc.residues_.begin(), pc.residues_.end(), rem);
                if (it != pc.residues_.end() && *it == rem) {
                    std::size_t slot = static_cast<std::size_t>(it - pc.residues_.begin());
                    t.pi_r[slot] += 1;
                    th_r[slot].add(ln);
                    ps_r[slot].add(ln);
                }
            }
            for (const PowerEvent& ev : power_events(pc.base_primes_, a, b)) {
                ps.add(ev.logp);
                std::int64_t rem = static_cast<std::int64_t>(ev.x % static_cast<std::uint64_t>(q));
                auto it = std::lower_bound(pc.residues_.begin(), pc.residues_.end(), rem);
                if (it != pc.residues_.end() && *it == rem) ps_r[static_cast<std::size_t>(it - pc.residues_.begin())].add(ev.logp);
            }
            t.theta = th.sum;
            t.psi = ps.sum;
            for (std::size_t i = 0; i < s; ++i) {
                t.theta_r[i] = th_r[i].sum;
                t.psi_r[i] = ps_r[i].sum;
            }
        });

        // pass B: prefix states at segment starts
        std::vector<PrimeCounts::Counters> seg_start(segs.size());
        PrimeCounts::Counters run = state;
        for (std::size_t si = 0; si < segs.size(); ++si) {
            seg_start[si] = run;
            run.pi += tally[si].pi;
            run.theta += tally[si].theta;
            run.psi += tally[si].psi;
            for (std::size_t i = 0; i < s; ++i) {
                run.pi_r[i] += tally[si].pi_r[i];
                run.theta_r[i] += tally[si].theta_r[i];
                run.psi_r[i] += tally[si].psi_r[i];
            }
        }

        // pass C: fill checkpoints inside each segment, parallel
        // first new checkpoint index per segment
        std::vector<std::size_t> seg_first_row(segs.size(), pc.xs_.size());
        {
            std::size_t row = j;
            for (std::size_t si = 0; si < segs.size(); ++si) {
                while (row < pc.xs_.size() && pc.xs_[row] < segs[si].first) ++row;
                seg_first_row[si] = row;
                while (row < pc.xs_.size() && pc.xs_[row] <= segs[si].second) ++row;
            }
        }
        parallel_chunks(segs.size(), [&](std::size_t si) {
            auto [a, b] = segs[si];
            std::size_t row = seg_first_row[si];
            if (row >= pc.xs_.size() || pc.xs_[row] > b) return;
            PrimeCounts::Counters c = seg_start[si];
            std::vector<bool> comp;
            flag_segment(pc.base_primes_, a, b, comp);
            std::vector<PowerEvent> evs = power_events(pc.base_primes_, a, b);
            std::size_t ei = 0;
            for (std::uint64_t n = a; n <= b; ++n) {
                if (!comp[static_cast<std::size_t>(n - a)]) {
                    double ln = std::log(static_cast<double>(n));
                    c.pi += 1;
                    c.theta += ln;
                    c.psi += ln;
                    std::int64_t rem = static_cast<std::int64_t>(n % static_cast<std::uint64_t>(q));
                    auto it = std::lower_bound(pc.residues_.begin(), pc.residues_.end(), rem);
                    if (it != pc.residues_.end() && *it == rem) {
                        std::size_t slot = static_cast<std::size_t>(it - pc.residues_.begin());
                        c.pi_r[slot] += 1;
                        c.theta_r[slot] += ln;
                        c.psi_r[slot] += ln;
                    }
                }
                while (ei < evs.size() && evs[ei].x == n) {
                    c.psi += evs[ei].logp;
                    std::int64_t rem = static_cast<std::int64_t>(n % static_cast<std::uint64_t>(q));
                    auto it = std::lower_bound(pc.residues_.begin(), pc.residues_.end(), rem);
                    if (it != pc.residues_.end() && *it == rem)
                        c.psi_r[static_cast<std::size_t>(it - pc.residues_.begin())] += evs[ei].logp;
                    ++ei;
                }
                while (row < pc.xs_.size() && pc.xs_[row] == n) {
                    write_row(pc, row, c);
                    ++row;
                }
            }
        });
    }

    static void write_row(PrimeCounts& pc, std::size_t j, const PrimeCounts::Counters& c) {
        const std::size_t s = pc.residues_.size();
        pc.pi_[j] = c.pi;
        pc.theta_[j] = c.theta;
        pc.psi_[j] = c.psi;
        for (std::size_t i = 0; i < s; ++i) {
            pc.pi_r_[j * s + i] = c.pi_r[i];
            pc.theta_r_[j * s + i] = c.theta_r[i];
            pc.psi_r_[j * s + i] = c.psi_r[i];
        }
    }
};

PrimeCounts PrimeCounts::build(const SieveConfig& cfg) {
    if (cfg.limit < 2) throw std::invalid_argument("sieve limit must be >= 2");
    if (cfg.limit > kMaxLimit) throw EnvelopeError("sieve limit above 1e9");
    if (cfg.q < 1) throw std::invalid_argument("modulus must be positive");
    if (!(cfg.dt > 0.0 && cfg.dt <= 1.0)) throw std::invalid_argument("dt out of range");

    PrimeCounts pc;
    pc.cfg_ = cfg;
    for (std::int64_t a = 0; a < cfg.q; ++a)
        if (std::gcd(a == 0 ? cfg.q : a, cfg.q) == 1) pc.residues_.push_back(a);
    if (cfg.q == 1) pc.residues_ = {0};

    pc.base_primes_ = simple_sieve(static_cast<std::uint64_t>(std::sqrt(static_cast<double>(cfg.limit))) + 2);
    pc.j0_ = static_cast<std::int64_t>(std::ceil(std::log(2.0) / cfg.dt - 1e-9));
    std::int64_t j1 = static_cast<std::int64_t>(std::floor(std::log(static_cast<double>(cfg.limit)) / cfg.dt + 1e-9));
    for (std::int64_t j = pc.j0_; j <= j1; ++j) {
        double x = std::exp(static_cast<double>(j) * cfg.dt);
        std::uint64_t xi = static_cast<std::uint64_t>(std::floor(x));
        if (xi < 2) xi = 2;
        if (xi > cfg.limit) xi = cfg.limit;
        pc.xs_.push_back(xi);
    }

    Counters zero;
    zero.pi_r.assign(pc.residues_.size(), 0);
    zero.theta_r.assign(pc.residues_.size(), 0.0);
    zero.psi_r.assign(pc.residues_.size(), 0.0);
    SieveBuilder::run(pc, 1, zero);
    return pc;
}

PrimeCounts PrimeCounts::extend(const PrimeCounts& prior, std::uint64_t new_limit) {
    PrimeCounts pc;
    pc.cfg_ = prior.cfg_;
    pc.cfg_.limit = new_limit;
    pc.residues_ = prior.residues_;
    pc.j0_ = prior.j0_;
    pc.base_primes_ = simple_sieve(static_cast<std::uint64_t>(std::sqrt(static_cast<double>(new_limit))) + 2);
    std::int64_t j1 = static_cast<std::int64_t>(std::floor(std::log(static_cast<double>(new_limit)) / pc.cfg_.dt + 1e-9));
    pc.xs_ = prior.xs_;
    for (std::int64_t j = pc.j0_ + static_cast<std::int64_t>(prior.xs_.size()); j <= j1; ++j) {
        double x = std::exp(static_cast<double>(j) * pc.cfg_.dt);
        std::uint64_t xi = static_cast<std::uint64_t>(std::floor(x));
        if (xi < 2) xi = 2;
        if (xi > new_limit) xi = new_limit;
        pc.xs_.push_back(xi);
    }
    pc.pi_ = prior.pi_;
    pc.theta_ = prior.theta_;
    pc.psi_ = prior.psi_;
    pc.pi_r_ = prior.pi_r_;
    pc.theta_r_ = prior.theta_r_;
    pc.psi_r_ = prior.psi_r_;
    SieveBuilder::run(pc, prior.cfg_.limit, prior.at(prior.cfg_.limit));
    return pc;
}

namespace {

std::string cache_stub(const SieveConfig& cfg) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "sieve_q%lld_dt%g_v%d", static_cast<long long>(cfg.q), cfg.dt,
                  kManifestVersion);
    return buf;
}

template <class T>
void write_vec(std::ofstream& out, const std::vector<T>& v) {
    out.write(reinterpret_cast<const char*>(v.data()),
              static_cast<std::streamsize>(v.size() * sizeof(T)));
}

template <class T>
void read_vec(std::ifstream& in, std::vector<T>& v, std::size_t n) {
    v.resize(n);
    in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(n * sizeof(T)));
}

}  // namespace

void PrimeCounts::save(const std::string& cache_dir) const {
    namespace fs = std::filesystem;
    fs::create_directories(cache_dir);
    std::string stub = cache_stub(cfg_);
    fs::path bin = fs::path(cache_dir) / (stub + ".bin");
    fs::path man = fs::path(cache_dir) / (stub + ".json");
    std::ofstream out(bin, std::ios::binary);
    if (!out) throw DataError("cannot write sieve cache: " + bin.string());
    write_vec(out, xs_);
    write_vec(out, pi_);
    write_vec(out, theta_);
    write_vec(out, psi_);
    write_vec(out, pi_r_);
    write_vec(out, theta_r_);
    write_vec(out, psi_r_);
    out.close();

    nlohmann::json j;
    j["version"] = kManifestVersion;
    j["q"] = cfg_.q;
    j["dt"] = cfg_.dt;
    j["limit"] = cfg_.limit;
    j["j0"] = j0_;
    j["checkpoints"] = xs_.size();
    j["residues"] = residues_;
    j["data_file"] = bin.filename().string();
    std::ofstream mout(man);
    mout << j.dump(2) << "\n";
}

PrimeCounts PrimeCounts::load_or_build(const SieveConfig& cfg, const std::string& cache_dir) {
    namespace fs = std::filesystem;
    std::string stub = cache_stub(cfg);
    fs::path man = fs::path(cache_dir) / (stub + ".json");
    fs::path bin = fs::path(cache_dir) / (stub + ".bin");
    if (fs::exists(man) && fs::exists(bin)) {
        std::ifstream min(man);
        nlohmann::json j = nlohmann::json::parse(min, nullptr, false);
        if (!j.is_discarded() && j.value("version", 0) == kManifestVersion &&
            j.value("q", std::int64_t{-1}) == cfg.q && j.value("dt", 0.0) == cfg.dt) {
            PrimeCounts pc;
            pc.cfg_ = cfg;
            pc.cfg_.limit = j["limit"].get<std::uint64_t>();
            pc.j0_ = j["j0"].get<std::int64_t>();
            pc.residues_ = j["residues"].get<std::vector<std::int64_t>>();
            std::size_t n = j["checkpoints"].get<std::size_t>();
            std::size_t s = pc.residues_.size();
            std::ifstream in(bin, std::ios::binary);
            read_vec(in, pc.xs_, n);
            read_vec(in, pc.pi_, n);
            read_vec(in, pc.theta_, n);
            read_vec(in, pc.psi_, n);
            read_vec(in, pc.pi_r_, n * s);
            read_vec(in, pc.theta_r_, n * s);
            read_vec(in, pc.psi_r_, n * s);
            if (in) {
                pc.base_primes_ = simple_sieve(
                    static_cast<std::uint64_t>(std::sqrt(static_cast<double>(pc.cfg_.limit))) + 2);
                if (pc.cfg_.limit >= cfg.limit) return pc;
                PrimeCounts grown = extend(pc, cfg.limit);
                grown.save(cache_dir);
                return grown;
            }
        }
    }
    PrimeCounts pc = build(cfg);
    pc.save(cache_dir);
    return pc;
}

}  // namespace primerace
