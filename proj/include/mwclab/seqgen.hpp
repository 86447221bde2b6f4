// SPDX-License-Identifier: Apache-2.0
//
// Binary sign-pattern families (m-sequences, Gold, small-set Kasami,
// Sylvester-Hadamard, i.i.d. random) and the sign-matrix container that the
// rest of the library consumes.
#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mwclab {

/// A +/-1 sequence of length M >= 2, treated as one period of a cyclic signal.
class BinarySequence {
public:
    explicit BinarySequence(std::vector<std::int8_t> signs);

    /// Maps bit b to 1 - 2b (0 -> +1, 1 -> -1).
    static BinarySequence from_bits(std::span<const std::uint8_t> bits);

    std::size_t size() const noexcept { return signs_.size(); }
    int operator[](std::size_t i) const noexcept { return signs_[i]; }
    std::span<const std::int8_t> signs() const noexcept { return signs_; }
    std::vector<std::uint8_t> bits() const;

    /// out[n] = in[(n + k) mod M]
    BinarySequence shifted(std::size_t k) const;
    /// out[n] = in[-n mod M]
    BinarySequence reversed() const;
    /// Elementwise product, i.e. XOR of the underlying bits.
    BinarySequence operator*(const BinarySequence& other) const;

    /// Smallest p > 0 with in[n] = in[(n + p) mod M] for all n.
    std::size_t period() const;

    friend bool operator==(const BinarySequence&, const BinarySequence&) = default;

private:
    std::vector<std::int8_t> signs_;
};

/// Polynomial over GF(2); bit i of `coefficients` is the coefficient of x^i.
/// The LFSR built from x^n + c_{n-1} x^{n-1} + ... + c_0 obeys
/// s[k + n] = sum_i c_i s[k + i] (mod 2).
struct Gf2Polynomial {
    std::uint32_t coefficients = 0;

    static Gf2Polynomial from_exponents(std::initializer_list<int> exponents);
    int degree() const noexcept;
    std::string to_string() const;

    friend bool operator==(Gf2Polynomial, Gf2Polynomial) = default;
};

/// Number of LFSR steps until `initial_state` recurs. State bit i holds s[i].
std::uint64_t lfsr_period(Gf2Polynomial poly, std::uint32_t initial_state);

/// One full period of the m-sequence generated by a primitive polynomial.
/// Throws ValidationError for a zero state or when the period check fails.
BinarySequence lfsr_msequence(Gf2Polynomial poly, std::uint32_t initial_state);
BinarySequence lfsr_msequence(Gf2Polynomial poly); // all-ones start state

/// Every primitive polynomial of the given degree (3..13), ascending by
/// coefficient mask. Each degree's table is period-checked on first use.
std::span<const std::uint32_t> primitive_polynomials(int degree);

struct PreferredPair {
    Gf2Polynomial first;
    Gf2Polynomial second;
};

/// Published preferred pairs for n in {5, 7, 9, 11}.
std::optional<PreferredPair> gold_preferred_pair(int n);

/// 2^n + 1 Gold sequences: the two base m-sequences, then first * shift_j(second)
/// for j = 0 .. M-1. Rejects pairs whose cross-correlation is not three-valued.
std::vector<BinarySequence> gold_family(int n, const PreferredPair& pair);
std::vector<BinarySequence> gold_family(int n);

/// 2^(n/2) small-set Kasami sequences: the base m-sequence u, then
/// u * shift_j(w) for j = 0 .. 2^(n/2) - 2, where w is u decimated by
/// 2^(n/2) + 1.
std::vector<BinarySequence> kasami_small_family(int n);

/// Rows of the M x M Sylvester-Hadamard matrix in natural order.
std::vector<BinarySequence> hadamard_family(std::size_t M);

/// c[l] = sum_n a[n] b[(l - n) mod M]
std::vector<std::int64_t> cyclic_convolution(const BinarySequence& a, const BinarySequence& b);
/// c[l] = sum_n a[n] b[(n + l) mod M]
std::vector<std::int64_t> periodic_correlation(const BinarySequence& a, const BinarySequence& b);

enum class Family { maximal, gold, kasami_small, hadamard, random };

std::string_view to_string(Family family);
Family parse_family(std::string_view name);

/// Describes one sign matrix. For LFSR families `register_length` fixes
/// M = 2^n - 1; hadamard accepts either n (M = 2^n) or an explicit length;
/// random requires an explicit length or n (M = 2^n - 1).
/// Rows are always taken in the family's enumeration order:
///   maximal      one m-sequence per primitive polynomial (table order), then
///                cyclic shifts by 1, 2, ... of those in round-robin
///   gold         base pair, then shift index ascending
///   kasami_small base, then shift index ascending
///   hadamard     Sylvester rows 1..m (the all-ones row 0 is skipped)
///   random       i.i.d. equiprobable signs from `seed`, duplicates redrawn
struct FamilySpec {
    Family family = Family::random;
    int register_length = 0;
    std::size_t length = 0;
    std::size_t channels = 0;
    std::uint64_t seed = 0;

    /// Resolved M; throws ValidationError if the combination is invalid.
    std::size_t resolved_length() const;
};

/// Number of distinct rows the family can supply under its selection policy.
std::size_t family_population(const FamilySpec& spec);

/// m x M matrix of +/-1 entries, one BinarySequence per channel.
class SignMatrix {
public:
    SignMatrix(std::vector<BinarySequence> rows, std::string family_tag,
               std::optional<std::uint64_t> seed = std::nullopt);

    std::size_t channels() const noexcept { return rows_.size(); }
    std::size_t length() const noexcept { return rows_.front().size(); }
    const BinarySequence& row(std::size_t i) const { return rows_.at(i); }
    const std::vector<BinarySequence>& rows() const noexcept { return rows_; }
    int operator()(std::size_t i, std::size_t k) const noexcept { return rows_[i][k]; }
    const std::string& family_tag() const noexcept { return family_tag_; }
    std::optional<std::uint64_t> seed() const noexcept { return seed_; }

    friend bool operator==(const SignMatrix&, const SignMatrix&) = default;

private:
    std::vector<BinarySequence> rows_;
    std::string family_tag_;
    std::optional<std::uint64_t> seed_;
};

/// Pure function of `spec`; throws ValidationError when m exceeds the population.
SignMatrix build_sign_matrix(const FamilySpec& spec);

// Pattern file: header "m M family seed" (seed "-" when absent), then m lines
// of M space-separated entries from {-1, 1}, each line ending in '\n'.
void write_patterns(std::ostream& out, const SignMatrix& S);
SignMatrix read_patterns(std::istream& in);
void save_patterns(const std::string& path, const SignMatrix& S);
SignMatrix load_patterns(const std::string& path);

} // namespace mwclab
