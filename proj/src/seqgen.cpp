// SPDX-License-Identifier: Apache-2.0
#include "mwclab/seqgen.hpp"

#include "mwclab/error.hpp"
#include "mwclab/rng.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <fstream>
#include <istream>
#include <limits>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>

namespace mwclab {

namespace {

#include "mwclab/primitive_polynomials.inc"

bool is_power_of_two(std::size_t v) { return v >= 1 && (v & (v - 1)) == 0; }

std::size_t mersenne_length(int n) { return (std::size_t{1} << n) - 1; }

} // namespace

// --- BinarySequence -------------------------------------------------------

BinarySequence::BinarySequence(std::vector<std::int8_t> signs) : signs_(std::move(signs))
{
    require(signs_.size() >= 2, "binary sequence needs length >= 2");
    for (std::size_t i = 0; i < signs_.size(); ++i)
        if (signs_[i] != 1 && signs_[i] != -1)
            throw ValidationError("binary sequence entry " + std::to_string(i) + " is not +/-1");
}

BinarySequence BinarySequence::from_bits(std::span<const std::uint8_t> bits)
{
    std::vector<std::int8_t> signs(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        require(bits[i] <= 1, "bit value must be 0 or 1");
        signs[i] = static_cast<std::int8_t>(1 - 2 * bits[i]);
    }
    return BinarySequence(std::move(signs));
}

std::vector<std::uint8_t> BinarySequence::bits() const
{
    std::vector<std::uint8_t> out(signs_.size());
    std::transform(signs_.begin(), signs_.end(), out.begin(),
                   [](std::int8_t s) { return static_cast<std::uint8_t>(s < 0); });
    return out;
}

BinarySequence BinarySequence::shifted(std::size_t k) const
{
    const std::size_t M = size();
    std::vector<std::int8_t> out(M);
    for (std::size_t n = 0; n < M; ++n)
        out[n] = signs_[(n + k) % M];
    return BinarySequence(std::move(out));
}

BinarySequence BinarySequence::reversed() const
{
    const std::size_t M = size();
    std::vector<std::int8_t> out(M);
    for (std::size_t n = 0; n < M; ++n)
        out[n] = signs_[(M - n) % M];
    return BinarySequence(std::move(out));
}

BinarySequence BinarySequence::operator*(const BinarySequence& other) const
{
    require(size() == other.size(), "sequence length mismatch");
    std::vector<std::int8_t> out(size());
    for (std::size_t n = 0; n < size(); ++n)
        out[n] = static_cast<std::int8_t>(signs_[n] * other.signs_[n]);
    return BinarySequence(std::move(out));
}

std::size_t BinarySequence::period() const
{
    const std::size_t M = size();
    for (std::size_t p = 1; p < M; ++p) {
        if (M % p != 0)
            continue;
        bool same = true;
        for (std::size_t n = 0; n < M && same; ++n)
            same = signs_[n] == signs_[(n + p) % M];
        if (same)
            return p;
    }
    return M;
}

// --- LFSR -----------------------------------------------------------------

Gf2Polynomial Gf2Polynomial::from_exponents(std::initializer_list<int> exponents)
{
    Gf2Polynomial p;
    for (int e : exponents) {
        require(e >= 0 && e < 32, "polynomial exponent out of range");
        p.coefficients |= std::uint32_t{1} << e;
    }
    return p;
}

int Gf2Polynomial::degree() const noexcept
{
    return static_cast<int>(std::bit_width(coefficients)) - 1;
}

std::string Gf2Polynomial::to_string() const
{
    std::string out;
    for (int e = degree(); e >= 0; --e) {
        if (!(coefficients >> e & 1u))
            continue;
        if (!out.empty())
            out += " + ";
        out += e == 0 ? "1" : e == 1 ? "x" : "x^" + std::to_string(e);
    }
    return out.empty() ? "0" : out;
}

namespace {

struct Lfsr {
    std::uint32_t taps; // c_0 .. c_{n-1}
    int n;
    std::uint32_t state;

    std::uint8_t step()
    {
        const auto out = static_cast<std::uint8_t>(state & 1u);
        const auto feedback = static_cast<std::uint32_t>(std::popcount(state & taps) & 1);
        state = (state >> 1) | (feedback << (n - 1));
        return out;
    }
};

Lfsr make_lfsr(Gf2Polynomial poly, std::uint32_t initial_state)
{
    const int n = poly.degree();
    require(n >= 2 && n <= 31, "LFSR degree must be in [2, 31], got " + std::to_string(n));
    const std::uint32_t mask = (std::uint32_t{1} << n) - 1;
    require((initial_state & mask) != 0 && (initial_state & ~mask) == 0,
            "LFSR initial state must be a nonzero " + std::to_string(n) + "-bit value");
    return Lfsr{poly.coefficients & mask, n, initial_state};
}

} // namespace

std::uint64_t lfsr_period(Gf2Polynomial poly, std::uint32_t initial_state)
{
    Lfsr reg = make_lfsr(poly, initial_state);
    const std::uint64_t limit = std::uint64_t{1} << reg.n;
    std::uint64_t steps = 0;
    do {
        reg.step();
        ++steps;
    } while (reg.state != initial_state && steps <= limit);
    // A polynomial without constant term never returns to some states.
    return steps > limit ? 0 : steps;
}

BinarySequence lfsr_msequence(Gf2Polynomial poly, std::uint32_t initial_state)
{
    const int n = poly.degree();
    const std::uint64_t period = lfsr_period(poly, initial_state);
    const std::uint64_t full = mersenne_length(n);
    if (period != full)
        throw ValidationError("polynomial " + poly.to_string() + " is not primitive: period " +
                              std::to_string(period) + " != " + std::to_string(full));
    Lfsr reg = make_lfsr(poly, initial_state);
    std::vector<std::uint8_t> bits(full);
    for (auto& b : bits)
        b = reg.step();
    return BinarySequence::from_bits(bits);
}

BinarySequence lfsr_msequence(Gf2Polynomial poly)
{
    const int n = poly.degree();
    require(n >= 2 && n <= 31, "LFSR degree must be in [2, 31]");
    return lfsr_msequence(poly, static_cast<std::uint32_t>(mersenne_length(n)));
}

std::span<const std::uint32_t> primitive_polynomials(int degree)
{
    static constexpr std::span<const std::uint32_t> tables[] = {
        kPrimitiveDegree3,  kPrimitiveDegree4,  kPrimitiveDegree5, kPrimitiveDegree6,
        kPrimitiveDegree7,  kPrimitiveDegree8,  kPrimitiveDegree9, kPrimitiveDegree10,
        kPrimitiveDegree11, kPrimitiveDegree12, kPrimitiveDegree13,
    };
    require(degree >= 3 && degree <= 13,
            "primitive polynomial table covers degrees 3..13, got " + std::to_string(degree));
    const auto table = tables[degree - 3];

    static std::once_flag checked[std::size(tables)];
    std::call_once(checked[degree - 3], [&] {
        for (std::uint32_t c : table) {
            const Gf2Polynomial p{c};
            if (p.degree() != degree ||
                lfsr_period(p, static_cast<std::uint32_t>(mersenne_length(degree))) !=
                    mersenne_length(degree))
                throw std::logic_error("corrupt primitive polynomial table entry " + p.to_string());
        }
    });
    return table;
}

// --- families -------------------------------------------------------------

std::optional<PreferredPair> gold_preferred_pair(int n)
{
    using P = Gf2Polynomial;
    switch (n) {
    case 5: return PreferredPair{P::from_exponents({5, 2, 0}), P::from_exponents({5, 4, 3, 2, 0})};
    case 7: return PreferredPair{P::from_exponents({7, 3, 0}), P::from_exponents({7, 3, 2, 1, 0})};
    case 9: return PreferredPair{P::from_exponents({9, 4, 0}), P::from_exponents({9, 6, 4, 3, 0})};
    case 11:
        return PreferredPair{P::from_exponents({11, 2, 0}), P::from_exponents({11, 8, 5, 2, 0})};
    default: return std::nullopt;
    }
}

std::vector<BinarySequence> gold_family(int n, const PreferredPair& pair)
{
    require(n >= 5 && n % 2 == 1, "Gold family needs odd n >= 5, got " + std::to_string(n));
    require(pair.first.degree() == n && pair.second.degree() == n,
            "preferred pair polynomials must have degree " + std::to_string(n));
    const BinarySequence u = lfsr_msequence(pair.first);
    const BinarySequence v = lfsr_msequence(pair.second);

    const std::int64_t t = (std::int64_t{1} << ((n + 1) / 2)) + 1;
    for (std::int64_t c : periodic_correlation(u, v)) {
        if (c != -1 && c != -t && c != t - 2)
            throw ValidationError("not a preferred pair: cross-correlation value " +
                                  std::to_string(c) + " outside {-1, " + std::to_string(-t) +
                                  ", " + std::to_string(t - 2) + "}");
    }

    const std::size_t M = u.size();
    std::vector<BinarySequence> family;
    family.reserve(M + 2);
    family.push_back(u);
    family.push_back(v);
    for (std::size_t j = 0; j < M; ++j)
        family.push_back(u * v.shifted(j));
    return family;
}

std::vector<BinarySequence> gold_family(int n)
{
    const auto pair = gold_preferred_pair(n);
    require(pair.has_value(),
            "no preferred pair shipped for n = " + std::to_string(n) + " (have 5, 7, 9, 11)");
    return gold_family(n, *pair);
}

std::vector<BinarySequence> kasami_small_family(int n)
{
    require(n >= 4 && n % 2 == 0, "small Kasami set needs even n >= 4, got " + std::to_string(n));
    const BinarySequence u = lfsr_msequence(Gf2Polynomial{primitive_polynomials(n).front()});
    const std::size_t M = u.size();
    const std::size_t q = (std::size_t{1} << (n / 2)) + 1;

    std::vector<std::int8_t> decimated(M);
    for (std::size_t k = 0; k < M; ++k)
        decimated[k] = static_cast<std::int8_t>(u[(k * q) % M]);
    const BinarySequence w(std::move(decimated));

    const std::size_t shifts = (std::size_t{1} << (n / 2)) - 1;
    std::vector<BinarySequence> family;
    family.reserve(shifts + 1);
    family.push_back(u);
    for (std::size_t j = 0; j < shifts; ++j)
        family.push_back(u * w.shifted(j));
    return family;
}

std::vector<BinarySequence> hadamard_family(std::size_t M)
{
    require(M >= 2 && is_power_of_two(M),
            "Hadamard length must be a power of two >= 2, got " + std::to_string(M));
    std::vector<BinarySequence> rows;
    rows.reserve(M);
    for (std::size_t r = 0; r < M; ++r) {
        std::vector<std::int8_t> signs(M);
        for (std::size_t k = 0; k < M; ++k)
            signs[k] = (std::popcount(r & k) & 1) ? -1 : 1;
        rows.emplace_back(std::move(signs));
    }
    return rows;
}

std::vector<std::int64_t> cyclic_convolution(const BinarySequence& a, const BinarySequence& b)
{
    require(a.size() == b.size(), "cyclic convolution needs equal lengths (" +
                                      std::to_string(a.size()) + " vs " + std::to_string(b.size()) +
                                      ")");
    const std::size_t M = a.size();
    std::vector<std::int64_t> c(M, 0);
    for (std::size_t l = 0; l < M; ++l) {
        std::int64_t acc = 0;
        for (std::size_t n = 0; n < M; ++n)
            acc += a[n] * b[(l + M - n) % M];
        c[l] = acc;
    }
    return c;
}

std::vector<std::int64_t> periodic_correlation(const BinarySequence& a, const BinarySequence& b)
{
    require(a.size() == b.size(), "periodic correlation needs equal lengths");
    const std::size_t M = a.size();
    std::vector<std::int64_t> c(M, 0);
    for (std::size_t l = 0; l < M; ++l) {
        std::int64_t acc = 0;
        for (std::size_t n = 0; n < M; ++n)
            acc += a[n] * b[(n + l) % M];
        c[l] = acc;
    }
    return c;
}

// --- family specs and sign matrices ---------------------------------------

std::string_view to_string(Family family)
{
    switch (family) {
    case Family::maximal: return "maximal";
    case Family::gold: return "gold";
    case Family::kasami_small: return "kasami_small";
    case Family::hadamard: return "hadamard";
    case Family::random: return "random";
    }
    return "unknown";
}

Family parse_family(std::string_view name)
{
    std::string key(name);
    std::replace(key.begin(), key.end(), '-', '_');
    if (key == "maximal") return Family::maximal;
    if (key == "gold") return Family::gold;
    if (key == "kasami_small" || key == "kasami") return Family::kasami_small;
    if (key == "hadamard") return Family::hadamard;
    if (key == "random") return Family::random;
    throw ValidationError("unknown family '" + std::string(name) + "'");
}

std::size_t FamilySpec::resolved_length() const
{
    const int n = register_length;
    require(n >= 0 && n <= 24, "register length out of range");
    switch (family) {
    case Family::maximal:
    case Family::gold:
    case Family::kasami_small: {
        require(n > 0, std::string(to_string(family)) + " family needs a register length n");
        const std::size_t M = mersenne_length(n);
        require(length == 0 || length == M, std::string(to_string(family)) + " requires M = 2^n - 1 = " +
                                                std::to_string(M) + ", got " +
                                                std::to_string(length));
        if (family == Family::kasami_small)
            require(n % 2 == 0, "kasami_small requires even n");
        if (family == Family::gold)
            require(n % 4 != 0, "gold requires n not divisible by 4");
        return M;
    }
    case Family::hadamard: {
        const std::size_t M = n > 0 ? std::size_t{1} << n : length;
        require(M >= 2 && is_power_of_two(M), "hadamard requires M = 2^n");
        require(length == 0 || length == M, "hadamard: n and M disagree");
        return M;
    }
    case Family::random: {
        const std::size_t M = length > 0 ? length : (n > 0 ? mersenne_length(n) : 0);
        require(M >= 2, "random family needs M >= 2");
        return M;
    }
    }
    throw ValidationError("unknown family");
}

std::size_t family_population(const FamilySpec& spec)
{
    const std::size_t M = spec.resolved_length();
    const int n = spec.register_length;
    switch (spec.family) {
    case Family::maximal: return primitive_polynomials(n).size() * M;
    case Family::gold:
        require(gold_preferred_pair(n).has_value(),
                "no preferred pair shipped for n = " + std::to_string(n) + " (have 5, 7, 9, 11)");
        return M + 2;
    case Family::kasami_small: return std::size_t{1} << (n / 2);
    case Family::hadamard: return M - 1;
    case Family::random:
        return M < 63 ? std::size_t{1} << M : std::numeric_limits<std::size_t>::max();
    }
    return 0;
}

SignMatrix::SignMatrix(std::vector<BinarySequence> rows, std::string family_tag,
                       std::optional<std::uint64_t> seed)
    : rows_(std::move(rows)), family_tag_(std::move(family_tag)), seed_(seed)
{
    require(!rows_.empty(), "sign matrix needs at least one row");
    for (const auto& r : rows_)
        require(r.size() == rows_.front().size(), "sign matrix rows must share one length");
    require(!family_tag_.empty() &&
                std::none_of(family_tag_.begin(), family_tag_.end(),
                             [](char c) { return std::isspace(static_cast<unsigned char>(c)); }),
            "family tag must be a single non-empty token");
}

namespace {

std::vector<BinarySequence> random_rows(std::size_t m, std::size_t M, std::uint64_t seed)
{
    Engine rng = make_stream(seed, stream::kSignMatrix);
    std::set<std::vector<std::int8_t>> seen;
    std::vector<BinarySequence> rows;
    rows.reserve(m);
    while (rows.size() < m) {
        std::vector<std::int8_t> signs(M);
        std::uint64_t word = 0;
        for (std::size_t k = 0; k < M; ++k) {
            if (k % 64 == 0)
                word = rng();
            signs[k] = (word >> (k % 64) & 1u) ? -1 : 1;
        }
        if (seen.insert(signs).second)
            rows.emplace_back(std::move(signs));
    }
    return rows;
}

} // namespace

SignMatrix build_sign_matrix(const FamilySpec& spec)
{
    const std::size_t M = spec.resolved_length();
    const std::size_t m = spec.channels;
    require(m >= 1, "channel count m must be >= 1");
    const std::size_t population = family_population(spec);
    require(m <= population, "m = " + std::to_string(m) + " exceeds the " +
                                 std::string(to_string(spec.family)) + " population of " +
                                 std::to_string(population));

    const std::string tag(to_string(spec.family));
    std::vector<BinarySequence> rows;
    rows.reserve(m);
    switch (spec.family) {
    case Family::maximal: {
        const auto polys = primitive_polynomials(spec.register_length);
        std::vector<BinarySequence> base;
        base.reserve(std::min(m, polys.size()));
        for (std::size_t i = 0; i < std::min(m, polys.size()); ++i)
            base.push_back(lfsr_msequence(Gf2Polynomial{polys[i]}));
        for (std::size_t j = 0; j < m; ++j)
            rows.push_back(base[j % polys.size()].shifted(j / polys.size()));
        break;
    }
    case Family::gold: {
        auto family = gold_family(spec.register_length);
        rows.assign(family.begin(), family.begin() + static_cast<std::ptrdiff_t>(m));
        break;
    }
    case Family::kasami_small: {
        auto family = kasami_small_family(spec.register_length);
        rows.assign(family.begin(), family.begin() + static_cast<std::ptrdiff_t>(m));
        break;
    }
    case Family::hadamard: {
        auto family = hadamard_family(M);
        rows.assign(family.begin() + 1, family.begin() + 1 + static_cast<std::ptrdiff_t>(m));
        break;
    }
    case Family::random:
        return SignMatrix(random_rows(m, M, spec.seed), tag, spec.seed);
    }
    return SignMatrix(std::move(rows), tag);
}

// --- pattern files --------------------------------------------------------

void write_patterns(std::ostream& out, const SignMatrix& S)
{
    out << S.channels() << ' ' << S.length() << ' ' << S.family_tag() << ' ';
    if (S.seed())
        out << *S.seed();
    else
        out << '-';
    out << '\n';
    for (const auto& row : S.rows()) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k)
                out << ' ';
            out << (row[k] > 0 ? "1" : "-1");
        }
        out << '\n';
    }
}

SignMatrix read_patterns(std::istream& in)
{
    std::string header;
    require(static_cast<bool>(std::getline(in, header)), "pattern file is empty");
    std::istringstream hs(header);
    long long m = 0, M = 0;
    std::string family, seed_token, extra;
    require(static_cast<bool>(hs >> m >> M >> family >> seed_token) && !(hs >> extra),
            "pattern header must read 'm M family seed'");
    require(m >= 1 && M >= 2, "pattern header has invalid dimensions");

    std::optional<std::uint64_t> seed;
    if (seed_token != "-") {
        try {
            std::size_t used = 0;
            seed = std::stoull(seed_token, &used);
            require(used == seed_token.size(), "bad seed");
        } catch (const std::exception&) {
            throw ValidationError("pattern header seed must be an integer or '-'");
        }
    }

    std::vector<BinarySequence> rows;
    rows.reserve(static_cast<std::size_t>(m));
    std::string line;
    for (long long i = 0; i < m; ++i) {
        require(static_cast<bool>(std::getline(in, line)),
                "pattern file ends after " + std::to_string(i) + " of " + std::to_string(m) + " rows");
        std::istringstream ls(line);
        std::vector<std::int8_t> signs;
        signs.reserve(static_cast<std::size_t>(M));
        std::string tok;
        while (ls >> tok) {
            if (tok != "1" && tok != "-1")
                throw ValidationError("pattern entry '" + tok + "' is not -1 or 1");
            signs.push_back(tok == "1" ? 1 : -1);
        }
        require(static_cast<long long>(signs.size()) == M,
                "pattern row " + std::to_string(i) + " has " + std::to_string(signs.size()) +
                    " entries, expected " + std::to_string(M));
        rows.emplace_back(std::move(signs));
    }
    while (std::getline(in, line))
        require(line.find_first_not_of(" \t\r") == std::string::npos,
                "trailing data after the last pattern row");
    return SignMatrix(std::move(rows), family, seed);
}

void save_patterns(const std::string& path, const SignMatrix& S)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    write_patterns(out, S);
}

SignMatrix load_patterns(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), "cannot open pattern file '" + path + "'");
    return read_patterns(in);
}

} // namespace mwclab
