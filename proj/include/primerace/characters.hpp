#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace primerace {

// exp(2*pi*i*num/den), stored reduced with 0 <= num < den.
struct RootOfUnity {
    std::int64_t num = 0;
    std::int64_t den = 1;
    std::complex<double> value() const;
    RootOfUnity normalized() const;
};

namespace detail {
struct GroupContext;
}

// A Dirichlet character mod q under the Conrey labeling: the character
// group is parametrized by the units n mod q themselves, and chi_q(n, .)
// is multiplicative in both arguments.  Values are exact roots of unity
// (rational angles), materialized to complex on demand.
class Character {
public:
    std::int64_t modulus() const { return q_; }
    std::int64_t label() const { return label_; }
    std::string conrey() const;  // "q.n"

    bool is_principal() const { return label_ == 1 || q_ == 1; }
    bool is_real() const;
    std::int64_t order() const;
    int parity() const;  // chi(-1): +1 even, -1 odd

    bool vanishes_at(std::int64_t a) const;            // gcd(a, q) > 1
    RootOfUnity angle(std::int64_t a) const;           // requires gcd(a, q) = 1
    std::complex<double> value(std::int64_t a) const;  // 0 on non-units
    std::vector<std::complex<double>> value_table() const;  // residues 0..q-1

    std::int64_t conductor() const;
    std::int64_t conjugate_label() const;

private:
    friend std::vector<Character> enumerate_characters(std::int64_t q);
    friend Character character(std::int64_t q, std::int64_t label);
    Character(std::shared_ptr<const detail::GroupContext> ctx, std::int64_t label);

    std::shared_ptr<const detail::GroupContext> ctx_;
    std::int64_t q_ = 1;
    std::int64_t label_ = 1;
};

// All phi(q) characters mod q, principal first, then by ascending label.
// The multiset is closed under conjugation.
std::vector<Character> enumerate_characters(std::int64_t q);

// Single character by Conrey label (gcd(label, q) = 1 required).
Character character(std::int64_t q, std::int64_t label);

// c(q,a) = -1 + #{0 <= b < q : b^2 = a mod q}; requires gcd(a,q) = 1.
int c_count(std::int64_t q, std::int64_t a);

std::int64_t euler_phi(std::int64_t q);

// The tuple (q; a_1,...,a_r) naming a prime number race.
struct RaceSpec {
    std::int64_t q = 1;
    std::vector<std::int64_t> residues;

    RaceSpec(std::int64_t q_, std::vector<std::int64_t> residues_);
    std::size_t r() const { return residues.size(); }
};

// Derived per-character vectors: v_chi = (chi(a_1),...,chi(a_r)), its real
// and imaginary parts, the bias vector b, and the c(q,a_j) counts.  Central
// zero multiplicities fold into b and default to zero everywhere.
struct RaceVectors {
    RaceSpec spec;
    std::vector<Character> characters;  // all characters mod q, principal first
    std::vector<std::vector<std::complex<double>>> v;  // v[c][j]
    std::vector<std::vector<double>> x, y;             // Re v, Im v
    std::vector<double> b;
    std::vector<int> c_counts;
    std::map<std::int64_t, int> ord_half;  // by Conrey label

    std::size_t r() const { return spec.r(); }
};

RaceVectors race_vectors(const RaceSpec& spec,
                         const std::map<std::int64_t, int>& ord_half = {});

}  // namespace primerace
