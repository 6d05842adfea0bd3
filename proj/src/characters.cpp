#include "primerace/characters.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace primerace {
namespace {

constexpr std::int64_t kMaxModulus = 1000000;
constexpr double kTwoPi = 6.283185307179586476925286766559;

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t mod) {
    if (mod == 1) return 0;
    unsigned __int128 acc = 1, b = static_cast<unsigned __int128>(base % mod);
    while (exp > 0) {
        if (exp & 1) acc = acc * b % static_cast<unsigned __int128>(mod);
        b = b * b % static_cast<unsigned __int128>(mod);
        exp >>= 1;
    }
    return static_cast<std::int64_t>(acc);
}

std::int64_t inv_mod(std::int64_t a, std::int64_t m) {
    std::int64_t t = 0, nt = 1, r = m, nr = a % m;
    if (nr < 0) nr += m;
    while (nr != 0) {
        std::int64_t qu = r / nr;
        std::swap(t -= qu * nt, nt);
        std::swap(r -= qu * nr, nr);
    }
    if (r != 1) throw std::invalid_argument("inv_mod: not invertible");
    return t < 0 ? t + m : t;
}

}  // namespace

namespace detail {

struct OddFactor {
    std::int64_t p = 0, pe = 0, phi = 0, g = 0;
    std::vector<std::int32_t> dlog;  // index by residue mod pe; -1 on non-units
};

// Precomputed structure of (Z/q)*: factorization, generators, and discrete
// log tables, shared by every character mod q.
struct GroupContext {
    std::int64_t q = 1, phi = 1;
    int e2 = 0;               // exponent of 2 in q
    std::int64_t q2 = 1;      // 2^e2
    std::vector<std::int32_t> dlog2_sign;  // epsilon: n = (-1)^eps 5^a mod 2^e2
    std::vector<std::int32_t> dlog2_five;
    std::vector<OddFactor> odd;
};

}  // namespace detail

namespace {

using detail::GroupContext;
using detail::OddFactor;

std::int64_t primitive_root_mod_pe(std::int64_t p, std::int64_t pe, std::int64_t phi) {
    // factor p-1 to test generator candidates
    std::vector<std::int64_t> prime_factors;
    std::int64_t m = phi;
    for (std::int64_t d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            prime_factors.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) prime_factors.push_back(m);
    for (std::int64_t g = 2; g < pe; ++g) {
        if (g % p == 0) continue;
        bool ok = true;
        for (std::int64_t f : prime_factors) {
            if (pow_mod(g, phi / f, pe) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw std::logic_error("primitive root not found");
}

std::shared_ptr<const GroupContext> build_context(std::int64_t q) {
    if (q < 1) throw std::invalid_argument("modulus must be positive");
    if (q > kMaxModulus) throw std::invalid_argument("modulus above supported bound");
    auto ctx = std::make_shared<GroupContext>();
    ctx->q = q;
    std::int64_t m = q;
    while (m % 2 == 0) {
        ++ctx->e2;
        m /= 2;
    }
    ctx->q2 = q == 1 ? 1 : (std::int64_t{1} << ctx->e2);
    for (std::int64_t p = 3; p * p <= m; p += 2) {
        if (m % p != 0) continue;
        OddFactor f;
        f.p = p;
        f.pe = 1;
        while (m % p == 0) {
            m /= p;
            f.pe *= p;
        }
        ctx->odd.push_back(std::move(f));
    }
    if (m > 1) {
        OddFactor f;
        f.p = m;
        f.pe = m;
        ctx->odd.push_back(std::move(f));
    }
    ctx->phi = 1;
    for (OddFactor& f : ctx->odd) {
        f.phi = f.pe / f.p * (f.p - 1);
        ctx->phi *= f.phi;
        // smallest primitive root valid for every power of p
        f.g = primitive_root_mod_pe(f.p, f.p == f.pe ? f.p : f.p * f.p, (f.p - 1) * (f.pe == f.p ? 1 : f.p));
        if (f.pe > f.p && pow_mod(f.g, f.p - 1, f.p * f.p) == 1)
            throw std::logic_error("bad generator");
        f.dlog.assign(static_cast<std::size_t>(f.pe), -1);
        std::int64_t acc = 1;
        for (std::int64_t k = 0; k < f.phi; ++k) {
            f.dlog[static_cast<std::size_t>(acc)] = static_cast<std::int32_t>(k);
            acc = acc * f.g % f.pe;
        }
    }
    if (ctx->e2 >= 2) ctx->phi *= ctx->q2 / 2;
    if (ctx->e2 >= 2) {
        std::int64_t q2 = ctx->q2;
        ctx->dlog2_sign.assign(static_cast<std::size_t>(q2), -1);
        ctx->dlog2_five.assign(static_cast<std::size_t>(q2), -1);
        std::int64_t half = ctx->e2 >= 3 ? (q2 >> 2) : 1;  // order of 5 mod 2^e
        std::int64_t acc = 1;
        for (std::int64_t k = 0; k < half; ++k) {
            for (int sign = 0; sign < 2; ++sign) {
                std::int64_t val = sign == 0 ? acc : (q2 - acc) % q2;
                ctx->dlog2_sign[static_cast<std::size_t>(val)] = sign;
                ctx->dlog2_five[static_cast<std::size_t>(val)] = static_cast<std::int32_t>(k);
            }
            acc = acc * 5 % q2;
        }
    }
    return ctx;
}

// angle = a(n)a(m)/phi summed over factors, as an exact rational mod 1
void add_fraction(std::int64_t& num, std::int64_t& den, std::int64_t n2, std::int64_t d2) {
    if (d2 <= 0) throw std::logic_error("bad denominator");
    std::int64_t g = gcd64(den, d2);
    std::int64_t lcm = den / g * d2;
    num = num * (lcm / den) + n2 * (lcm / d2);
    den = lcm;
    g = gcd64(std::llabs(num), den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    num %= den;
    if (num < 0) num += den;
}

}  // namespace

std::complex<double> RootOfUnity::value() const {
    double theta = kTwoPi * static_cast<double>(num) / static_cast<double>(den);
    return {std::cos(theta), std::sin(theta)};
}

RootOfUnity RootOfUnity::normalized() const {
    RootOfUnity r = *this;
    std::int64_t g = gcd64(std::llabs(r.num), r.den);
    if (g > 1) {
        r.num /= g;
        r.den /= g;
    }
    r.num %= r.den;
    if (r.num < 0) r.num += r.den;
    return r;
}

Character::Character(std::shared_ptr<const detail::GroupContext> ctx, std::int64_t label)
    : ctx_(std::move(ctx)), q_(ctx_->q), label_(label) {}

std::string Character::conrey() const {
    return std::to_string(q_) + "." + std::to_string(label_);
}

bool Character::vanishes_at(std::int64_t a) const {
    a %= q_;
    if (a < 0) a += q_;
    return gcd64(a == 0 ? q_ : a, q_) != 1;
}

RootOfUnity Character::angle(std::int64_t a) const {
    a %= q_;
    if (a < 0) a += q_;
    if (q_ == 1) return {0, 1};
    if (vanishes_at(a)) throw std::invalid_argument("character angle at non-unit residue");
    std::int64_t num = 0, den = 1;
    for (const OddFactor& f : ctx_->odd) {
        std::int64_t an = f.dlog[static_cast<std::size_t>(label_ % f.pe)];
        std::int64_t am = f.dlog[static_cast<std::size_t>(a % f.pe)];
        add_fraction(num, den, an * am % f.phi, f.phi);
    }
    if (ctx_->e2 >= 2) {
        std::int64_t q2 = ctx_->q2;
        std::int64_t en = ctx_->dlog2_sign[static_cast<std::size_t>(label_ % q2)];
        std::int64_t em = ctx_->dlog2_sign[static_cast<std::size_t>(a % q2)];
        add_fraction(num, den, en * em % 2, 2);
        if (ctx_->e2 >= 3) {
            std::int64_t half = q2 >> 2;
            std::int64_t an = ctx_->dlog2_five[static_cast<std::size_t>(label_ % q2)];
            std::int64_t am = ctx_->dlog2_five[static_cast<std::size_t>(a % q2)];
            add_fraction(num, den, an * am % half, half);
        }
    }
    return RootOfUnity{num, den};
}

std::complex<double> Character::value(std::int64_t a) const {
    if (q_ == 1) return {1.0, 0.0};
    if (vanishes_at(a)) return {0.0, 0.0};
    return angle(a).value();
}

std::vector<std::complex<double>> Character::value_table() const {
    std::vector<std::complex<double>> t(static_cast<std::size_t>(q_));
    for (std::int64_t a = 0; a < q_; ++a) t[static_cast<std::size_t>(a)] = value(a);
    return t;
}

bool Character::is_real() const {
    return label_ * label_ % q_ == 1 % q_ || q_ == 1;
}

std::int64_t Character::order() const {
    if (q_ == 1) return 1;
    std::int64_t k = 1, acc = label_ % q_;
    while (acc != 1) {
        acc = acc * (label_ % q_) % q_;
        ++k;
        if (k > ctx_->phi) throw std::logic_error("order: label not a unit");
    }
    return k;
}

int Character::parity() const {
    if (q_ <= 2) return 1;
    RootOfUnity w = angle(q_ - 1);
    // chi(-1) is +-1
    return (2 * w.num) % w.den == 0 && w.num != 0 ? -1 : 1;
}

std::int64_t Character::conductor() const {
    if (q_ == 1) return 1;
    for (std::int64_t d = 1; d <= q_; ++d) {
        if (q_ % d != 0) continue;
        bool trivial_on_kernel = true;
        for (std::int64_t a = 1; a < q_ && trivial_on_kernel; ++a) {
            if (a % d != 1 % d || vanishes_at(a)) continue;
            RootOfUnity w = angle(a);
            if (w.num != 0) trivial_on_kernel = false;
        }
        if (trivial_on_kernel) return d;
    }
    return q_;
}

std::int64_t Character::conjugate_label() const {
    if (q_ == 1) return 1;
    return inv_mod(label_, q_);
}

std::vector<Character> enumerate_characters(std::int64_t q) {
    auto ctx = build_context(q);
    std::vector<Character> out;
    if (q == 1) {
        out.push_back(Character(ctx, 1));
        return out;
    }
    for (std::int64_t n = 1; n < q; ++n)
        if (gcd64(n, q) == 1) out.push_back(Character(ctx, n));
    // already principal-first since label 1 is principal
    return out;
}

Character character(std::int64_t q, std::int64_t label) {
    auto ctx = build_context(q);
    if (q == 1) return Character(ctx, 1);
    label %= q;
    if (label < 0) label += q;
    if (label == 0 || gcd64(label, q) != 1)
        throw std::invalid_argument("character label must be a unit mod q");
    return Character(ctx, label);
}

int c_count(std::int64_t q, std::int64_t a) {
    if (q < 1) throw std::invalid_argument("modulus must be positive");
    a %= q;
    if (a < 0) a += q;
    if (gcd64(a == 0 ? q : a, q) != 1)
        throw std::invalid_argument("c_count: residue not coprime to modulus");
    int cnt = 0;
    for (std::int64_t b = 0; b < q; ++b)
        if (b * b % q == a) ++cnt;
    return cnt - 1;
}

std::int64_t euler_phi(std::int64_t q) {
    std::int64_t result = q, m = q;
    for (std::int64_t p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            result -= result / p;
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

RaceSpec::RaceSpec(std::int64_t q_, std::vector<std::int64_t> residues_)
    : q(q_), residues(std::move(residues_)) {
    if (q < 1) throw std::invalid_argument("RaceSpec: modulus must be positive");
    for (std::int64_t& a : residues) {
        a %= q;
        if (a < 0) a += q;
        if (gcd64(a == 0 ? q : a, q) != 1)
            throw std::invalid_argument("RaceSpec: residues must be coprime to q");
    }
    std::vector<std::int64_t> s = residues;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw std::invalid_argument("RaceSpec: residues must be distinct mod q");
    if (residues.size() < 2 || static_cast<std::int64_t>(residues.size()) > euler_phi(q))
        throw std::invalid_argument("RaceSpec: need 2 <= r <= phi(q)");
}

RaceVectors race_vectors(const RaceSpec& spec,
                         const std::map<std::int64_t, int>& ord_half) {
    RaceVectors rv{spec, enumerate_characters(spec.q), {}, {}, {}, {}, {}, {}};
    std::size_t r = spec.r();
    for (const Character& chi : rv.characters) {
        std::vector<std::complex<double>> row(r);
        std::vector<double> xr(r), yr(r);
        for (std::size_t j = 0; j < r; ++j) {
            row[j] = chi.value(spec.residues[j]);
            xr[j] = row[j].real();
            yr[j] = row[j].imag();
        }
        rv.v.push_back(std::move(row));
        rv.x.push_back(std::move(xr));
        rv.y.push_back(std::move(yr));
    }
    for (std::int64_t a : spec.residues) rv.c_counts.push_back(c_count(spec.q, a));

    for (const auto& [label, mult] : ord_half) {
        if (mult < 0) throw std::invalid_argument("ord_half multiplicities must be >= 0");
        Character chi = character(spec.q, label);
        auto other = ord_half.find(chi.conjugate_label());
        int conj_mult = other == ord_half.end() ? 0 : other->second;
        if (conj_mult != mult)
            throw std::invalid_argument("ord_half must be symmetric under conjugation");
        rv.ord_half[chi.label()] = mult;
    }

    rv.b.assign(r, 0.0);
    for (std::size_t j = 0; j < r; ++j) rv.b[j] = -static_cast<double>(rv.c_counts[j]);
    for (std::size_t c = 0; c < rv.characters.size(); ++c) {
        const Character& chi = rv.characters[c];
        if (chi.is_principal()) continue;
        auto it = rv.ord_half.find(chi.label());
        if (it == rv.ord_half.end() || it->second == 0) continue;
        for (std::size_t j = 0; j < r; ++j)
            rv.b[j] -= 2.0 * it->second * std::conj(rv.v[c][j]).real();
    }
    return rv;
}

}  // namespace primerace
