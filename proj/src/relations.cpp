#include "primerace/relations.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "json.hpp"
#include "primerace/errors.hpp"
#include "primerace/parallel.hpp"
#include "primerace/rng.hpp"

namespace primerace {
namespace {

mpz_class pow10_z(int p) {
    mpz_class t;
    mpz_ui_pow_ui(t.get_mpz_t(), 10, static_cast<unsigned long>(p));
    return t;
}

std::vector<std::int64_t> to_i64(const ZVec& v) {
    std::vector<std::int64_t> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].fits_slong_p()) throw DataError("relation coefficient overflows int64");
        out[i] = v[i].get_si();
    }
    return out;
}

void normalize_sign(std::vector<std::int64_t>& m) {
    for (std::int64_t c : m) {
        if (c > 0) return;
        if (c < 0) {
            for (std::int64_t& x : m) x = -x;
            return;
        }
    }
}

mpz_class l1_norm(const ZVec& v, std::size_t upto) {
    mpz_class s = 0;
    for (std::size_t i = 0; i < upto; ++i) s += abs(v[i]);
    return s;
}

}  // namespace

PreciseReal PreciseReal::from_double(double v) {
    PreciseReal r;
    r.value = v;
    return r;
}

PreciseReal PreciseReal::from_decimal(const std::string& s) {
    PreciseReal r;
    r.decimal = s;
    try {
        std::size_t used = 0;
        r.value = std::stod(s, &used);
        while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used]))) ++used;
        if (used != s.size()) throw std::invalid_argument("");
    } catch (...) {
        throw DataError("bad decimal literal: " + s);
    }
    return r;
}

mpz_class scaled_integer(const PreciseReal& x, int p) {
    if (p < 0) throw std::invalid_argument("scaled_integer: negative precision");
    if (x.decimal.empty()) {
        // a double is an exact binary rational; scale it exactly in floats
        // wide enough to hold every bit, then round once
        mpf_class f(0, static_cast<unsigned>(64 + p * 4 + 64));
        f = x.value;
        mpf_class scale(pow10_z(p), static_cast<unsigned>(64 + p * 4 + 64));
        f *= scale;
        mpf_class half = f >= 0 ? mpf_class(0.5) : mpf_class(-0.5);
        mpf_class fl = floor(f + half);
        mpz_class out;
        mpz_set_f(out.get_mpz_t(), fl.get_mpf_t());
        return out;
    }
    // decimal string: shift the decimal point by p digits exactly
    const std::string& s = x.decimal;
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
    std::string digits;
    int frac_digits = -1;
    int exponent = 0;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits += c;
            if (frac_digits >= 0) ++frac_digits;
        } else if (c == '.' && frac_digits < 0) {
            frac_digits = 0;
        } else if (c == 'e' || c == 'E') {
            exponent = std::stoi(s.substr(i + 1));
            break;
        } else {
            throw DataError("bad decimal literal: " + s);
        }
    }
    if (frac_digits < 0) frac_digits = 0;
    if (digits.empty()) throw DataError("bad decimal literal: " + s);
    // value = digits * 10^(exponent - frac_digits); want round(value * 10^p)
    int shift = p + exponent - frac_digits;
    mpz_class mant(digits, 10);
    if (neg) mant = -mant;
    if (shift >= 0) return mant * pow10_z(shift);
    mpz_class div = pow10_z(-shift);
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), mant.get_mpz_t(), div.get_mpz_t());
    if (2 * r >= div) q += 1;
    return q;
}

RelationLattice find_relations(const std::vector<PreciseReal>& xi, std::int64_t H, int p) {
    const std::size_t k = xi.size();
    if (k == 0) throw std::invalid_argument("find_relations: empty input");
    if (H < 1) throw std::invalid_argument("find_relations: coefficient bound must be >= 1");
    if (H > 1000) throw EnvelopeError("find_relations: coefficient bound above 1000");
    if (p > 100) throw EnvelopeError("find_relations: precision above 100 digits");
    double needed = 10.0 + static_cast<double>(k) * std::log10(static_cast<double>(H));
    if (static_cast<double>(p) < needed)
        throw DataError("find_relations: insufficient precision p=" + std::to_string(p) +
                        ", need at least " + std::to_string(static_cast<int>(std::ceil(needed))) +
                        " digits for k=" + std::to_string(k) + ", H=" + std::to_string(H));

    RelationLattice out;
    out.dimension = k;
    out.coeff_bound = H;
    out.precision_digits = p;
    if (k == 1) {
        // a single nonzero real has no relations; a zero has the trivial one
        if (scaled_integer(xi[0], p) == 0) out.basis.push_back({1});
        return out;
    }

    // standard embedding: rows (e_i | round(10^p xi_i))
    ZMat b(k, ZVec(k + 1, 0));
    for (std::size_t i = 0; i < k; ++i) {
        b[i][i] = 1;
        b[i][k] = scaled_integer(xi[i], p);
    }
    lll_reduce(b);

    // accept rows whose residual is explained by the +-1/2 rounding of each
    // scaled input: |sum m_i X_i| <= max(4, ||m||_1), with coefficients <= H
    ZMat accepted;
    for (const ZVec& row : b) {
        mpz_class l1 = l1_norm(row, k);
        if (l1 == 0) continue;
        bool small = true;
        for (std::size_t i = 0; i < k; ++i)
            if (abs(row[i]) > H) small = false;
        if (!small) continue;
        mpz_class bound = l1 < 4 ? mpz_class(4) : l1;
        if (abs(row[k]) > bound) continue;
        ZVec m(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(k));
        accepted.push_back(std::move(m));
    }
    for (std::size_t idx : independent_subset(accepted)) {
        std::vector<std::int64_t> m = to_i64(accepted[idx]);
        normalize_sign(m);
        out.basis.push_back(std::move(m));
    }
    return out;
}

SufficiencyReport classify(const ZeroTable& table, std::int64_t q, double T,
                           std::int64_t H, int p) {
    SufficiencyReport rep;
    rep.q = q;
    rep.T = T;
    rep.H = H;
    rep.p = p;

    std::vector<const CharacterZeros*> entries = table.for_modulus(q);
    if (entries.empty()) throw DataError("classify: no zeros for modulus " + std::to_string(q));
    std::vector<PreciseReal> xi;
    for (const CharacterZeros* cz : entries) {
        bool counts = (q == 1) ? true : cz->label != 1;
        if (!counts) continue;
        if (cz->height_complete + 1e-12 < T)
            throw DataError("classify: table incomplete to T for " + cz->conrey());
        for (const ZeroRecord& r : cz->records) {
            if (r.ordinate > T) break;
            OrdinateClassification oc;
            oc.q = cz->q;
            oc.label = cz->label;
            oc.ordinate = r.decimal.empty() ? PreciseReal::from_double(r.ordinate)
                                            : PreciseReal::from_decimal(r.decimal);
            rep.ordinates.push_back(std::move(oc));
            xi.push_back(rep.ordinates.back().ordinate);
        }
    }
    if (xi.empty()) throw DataError("classify: no ordinates below T");

    rep.relations = find_relations(xi, H, p);
    for (const auto& m : rep.relations.basis) {
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] != 0 && rep.ordinates[i].status == OrdinateStatus::presumed_self_sufficient) {
                rep.ordinates[i].status = OrdinateStatus::relation_found;
                rep.ordinates[i].witness = m;
            }
        }
    }

    // per-character Gamma^S summaries
    std::map<std::int64_t, CharacterSufficiency> per;
    for (const OrdinateClassification& oc : rep.ordinates) {
        CharacterSufficiency& cs = per[oc.label];
        cs.q = oc.q;
        cs.label = oc.label;
        if (oc.status == OrdinateStatus::presumed_self_sufficient) {
            cs.self_sufficient.push_back(oc.ordinate.value);
            cs.robust_sum += 1.0 / oc.ordinate.value;
        }
    }
    for (auto& [label, cs] : per) {
        std::sort(cs.self_sufficient.begin(), cs.self_sufficient.end());
        cs.sturdy_k = cs.self_sufficient.size();
        rep.characters.push_back(cs);
    }
    return rep;
}

std::string SufficiencyReport::to_json() const {
    nlohmann::json j;
    j["q"] = q;
    j["T"] = T;
    j["H"] = H;
    j["p"] = p;
    j["assumptions"] = {"GRH"};
    j["ordinates"] = nlohmann::json::array();
    for (const OrdinateClassification& oc : ordinates) {
        nlohmann::json o;
        o["label"] = std::to_string(oc.q) + "." + std::to_string(oc.label);
        o["ordinate"] = oc.ordinate.value;
        if (!oc.ordinate.decimal.empty()) o["decimal"] = oc.ordinate.decimal;
        o["status"] = oc.status == OrdinateStatus::relation_found
                          ? "relation_found"
                          : "presumed_self_sufficient";
        if (!oc.witness.empty()) o["witness"] = oc.witness;
        j["ordinates"].push_back(std::move(o));
    }
    j["characters"] = nlohmann::json::array();
    for (const CharacterSufficiency& cs : characters) {
        nlohmann::json c;
        c["label"] = std::to_string(cs.q) + "." + std::to_string(cs.label);
        c["gamma_s"] = cs.self_sufficient;
        c["sturdy_k"] = cs.sturdy_k;
        c["robust_sum"] = cs.robust_sum;
        j["characters"].push_back(std::move(c));
    }
    j["relations"] = nlohmann::json::array();
    for (const auto& m : relations.basis) j["relations"].push_back(m);
    return j.dump(2);
}

RelativeIndependence relative_independence(const std::vector<PreciseReal>& A,
                                           const std::vector<PreciseReal>& B,
                                           std::int64_t H, int p) {
    RelativeIndependence out;
    out.H = H;
    out.p = p;
    std::vector<PreciseReal> joint = A;
    joint.insert(joint.end(), B.begin(), B.end());
    RelationLattice rel = find_relations(joint, H, p);
    const std::size_t ka = A.size();
    for (const auto& m : rel.basis) {
        // the halves split iff each one is itself a relation
        mpz_class sa = 0, l1a = 0, sb = 0, l1b = 0;
        for (std::size_t i = 0; i < m.size(); ++i) {
            mpz_class x = scaled_integer(joint[i], p) * m[i];
            if (i < ka) {
                sa += x;
                l1a += std::abs(m[i]);
            } else {
                sb += x;
                l1b += std::abs(m[i]);
            }
        }
        mpz_class ba = l1a < 4 ? mpz_class(4) : l1a;
        mpz_class bb = l1b < 4 ? mpz_class(4) : l1b;
        if (abs(sa) > ba || abs(sb) > bb) {
            out.violated = true;
            out.witness = m;
            return out;
        }
    }
    return out;
}

SubtorusSpec torus_closure(const std::vector<PreciseReal>& xi, std::int64_t H, int p) {
    SubtorusSpec spec;
    spec.ambient = xi.size();
    spec.lattice = find_relations(xi, H, p);
    ZMat rel;
    for (const auto& m : spec.lattice.basis) {
        ZVec row(m.size());
        for (std::size_t i = 0; i < m.size(); ++i) row[i] = m[i];
        rel.push_back(std::move(row));
    }
    ZMat gen = rel.empty() ? ZMat() : integer_kernel(rel, spec.ambient);
    if (rel.empty()) {
        for (std::size_t i = 0; i < spec.ambient; ++i) {
            ZVec e(spec.ambient, 0);
            e[i] = 1;
            gen.push_back(std::move(e));
        }
    }
    for (const ZVec& g : gen) {
        for (const auto& m : spec.lattice.basis) {
            mpz_class dot = 0;
            for (std::size_t i = 0; i < g.size(); ++i) dot += g[i] * m[i];
            if (dot != 0) throw std::logic_error("torus_closure: generator not orthogonal");
        }
        spec.generators.push_back(to_i64(g));
    }
    return spec;
}

std::vector<std::vector<double>> sample_torus(const SubtorusSpec& spec, std::size_t n,
                                              std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("sample_torus: need n >= 1");
    const std::size_t k = spec.ambient;
    const std::size_t d = spec.dim();
    std::vector<std::vector<double>> pts(n, std::vector<double>(k, 0.0));
    const std::size_t chunk = 1 << 14;
    const std::size_t nchunks = (n + chunk - 1) / chunk;
    parallel_chunks(nchunks, [&](std::size_t ci) {
        Philox rng(seed, ci);
        std::size_t begin = ci * chunk, end = std::min(n, begin + chunk);
        for (std::size_t s = begin; s < end; ++s) {
            for (std::size_t i = 0; i < d; ++i) {
                double phi = rng.next_double();
                for (std::size_t j = 0; j < k; ++j) {
                    double gij = static_cast<double>(spec.generators[i][j]);
                    pts[s][j] += gij * phi;
                }
            }
            for (std::size_t j = 0; j < k; ++j) {
                pts[s][j] -= std::floor(pts[s][j]);
            }
        }
    });
    return pts;
}

}  // namespace primerace
