#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace helminv {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Multi-index alpha = (alpha_1 .. alpha_l), non-negative entries.
using MultiIndex = std::vector<int>;

inline int multi_index_degree(const MultiIndex& alpha) {
    int a = 0;
    for (int e : alpha) a += e;
    return a;
}

inline BigInt big_factorial(int n) {
    BigInt r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

/// All alpha in N_0^l with |alpha| = a; first component varies slowest,
/// largest first, so (l=2, a=1) -> [(1,0), (0,1)].
inline std::vector<MultiIndex> enumerate_multi_indices(int l, int a) {
    if (l < 1) throw std::invalid_argument("enumerate_multi_indices: l must be >= 1");
    if (a < 0) throw std::invalid_argument("enumerate_multi_indices: a must be >= 0");
    std::vector<MultiIndex> out;
    MultiIndex cur(static_cast<std::size_t>(l), 0);
    // recursive descent, iterative via explicit stack would be overkill here
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == l - 1) {
            cur[static_cast<std::size_t>(pos)] = remaining;
            out.push_back(cur);
            return;
        }
        for (int v = remaining; v >= 0; --v) {
            cur[static_cast<std::size_t>(pos)] = v;
            self(self, pos + 1, remaining - v);
        }
    };
    rec(rec, 0, a);
    return out;
}

/// binom(l+a; 1+alpha) / l!  as an exact rational.
inline Rational multinomial_weight(int l, int a, const MultiIndex& alpha) {
    if (static_cast<int>(alpha.size()) != l)
        throw std::invalid_argument("multinomial_weight: alpha has wrong length");
    if (multi_index_degree(alpha) != a)
        throw std::invalid_argument("multinomial_weight: |alpha| != a");
    BigInt num = big_factorial(l + a);
    BigInt den = 1;
    for (int e : alpha) den *= big_factorial(1 + e);
    den *= big_factorial(l);
    return Rational(num, den);
}

/// Q_{l,a}(w_1..w_l) = sum over |alpha| = a of binom(l+a; 1+alpha)/l! * w^alpha.
struct QPolynomial {
    int l = 0;
    int a = 0;
    std::vector<std::pair<MultiIndex, Rational>> terms;

    std::complex<double> evaluate(const std::vector<std::complex<double>>& w) const {
        if (static_cast<int>(w.size()) != l)
            throw std::invalid_argument("QPolynomial::evaluate: wrong arity");
        std::complex<double> sum(0.0, 0.0);
        for (const auto& [alpha, coeff] : terms) {
            std::complex<double> mono(1.0, 0.0);
            for (int j = 0; j < l; ++j)
                for (int e = 0; e < alpha[static_cast<std::size_t>(j)]; ++e)
                    mono *= w[static_cast<std::size_t>(j)];
            sum += static_cast<double>(coeff) * mono;
        }
        return sum;
    }
};

inline QPolynomial q_polynomial(int l, int a) {
    QPolynomial q;
    q.l = l;
    q.a = a;
    for (MultiIndex& alpha : enumerate_multi_indices(l, a)) {
        Rational c = multinomial_weight(l, a, alpha);
        q.terms.emplace_back(std::move(alpha), std::move(c));
    }
    return q;
}

/// Non-empty S subset of {1..l} with sign (-1)^{l - |S|}.
struct SignedSubset {
    std::vector<int> members;  // 1-based, ascending
    int sign = 1;
};

inline constexpr int kSignedSubsetCap = 20;

/// All 2^l - 1 non-empty subsets, ordered by size then lexicographically.
inline std::vector<SignedSubset> signed_subsets(int l) {
    if (l < 1) throw std::invalid_argument("signed_subsets: l must be >= 1");
    if (l > kSignedSubsetCap)
        throw std::invalid_argument("signed_subsets: refusing l > 20 (exponential blowup)");
    std::vector<SignedSubset> out;
    for (int size = 1; size <= l; ++size) {
        // lexicographically ordered size-combinations of {1..l}
        std::vector<int> comb(static_cast<std::size_t>(size));
        for (int i = 0; i < size; ++i) comb[static_cast<std::size_t>(i)] = i + 1;
        while (true) {
            SignedSubset s;
            s.members = comb;
            s.sign = ((l - size) % 2 == 0) ? 1 : -1;
            out.push_back(std::move(s));
            int i = size - 1;
            while (i >= 0 && comb[static_cast<std::size_t>(i)] == l - (size - 1 - i)) --i;
            if (i < 0) break;
            ++comb[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < size; ++j)
                comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return out;
}

/// (1/l!) sum over non-empty S of (-1)^{l-|S|} (sum_{j in S} w_j)^{l'}.
inline std::complex<double> pie_evaluate(int l, int lprime,
                                         const std::vector<std::complex<double>>& w) {
    if (lprime < 1) throw std::invalid_argument("pie_evaluate: l' must be >= 1");
    if (static_cast<int>(w.size()) != l)
        throw std::invalid_argument("pie_evaluate: w has wrong length");
    std::complex<double> acc(0.0, 0.0);
    for (const SignedSubset& s : signed_subsets(l)) {
        std::complex<double> sum(0.0, 0.0);
        for (int j : s.members) sum += w[static_cast<std::size_t>(j - 1)];
        std::complex<double> pow(1.0, 0.0);
        for (int e = 0; e < lprime; ++e) pow *= sum;
        acc += static_cast<double>(s.sign) * pow;
    }
    return acc / static_cast<double>(big_factorial(l));
}

}  // namespace helminv
