#include "arboreal/chain.hpp"

#include <algorithm>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace arboreal {

Rational parse_rational(std::string_view text) {
    std::string s(text);
    const auto slash = s.find('/');
    auto is_int = [](const std::string& part, bool allow_sign) {
        std::size_t start = (allow_sign && !part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
        return part.size() > start &&
               std::all_of(part.begin() + static_cast<std::ptrdiff_t>(start), part.end(),
                           [](unsigned char ch) { return std::isdigit(ch); });
    };
    const std::string num = s.substr(0, slash);
    const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!is_int(num, true) || !is_int(den, false)) throw std::invalid_argument("malformed rational '" + s + "'");
    if (std::all_of(den.begin(), den.end(), [](char ch) { return ch == '0'; })) {
        throw std::invalid_argument("zero denominator in '" + s + "'");
    }
    using boost::multiprecision::mpz_int;
    const std::string signless = (num[0] == '+') ? num.substr(1) : num;
    return Rational(mpz_int(signless), mpz_int(den));
}

CanonicalTuple canonicalize_tuple(std::span<const Vertex> x) {
    CanonicalTuple out{VertexTuple(x.begin(), x.end()), 1};
    // Insertion sort: tuples are short and each swap flips the sign.
    auto& t = out.tuple;
    for (std::size_t i = 1; i < t.size(); ++i) {
        for (std::size_t k = i; k > 0 && t[k - 1] >= t[k]; --k) {
            if (t[k - 1] == t[k]) {
                out.sign = 0;
                std::sort(t.begin(), t.end());
                return out;
            }
            std::swap(t[k - 1], t[k]);
            out.sign = -out.sign;
        }
    }
    return out;
}

VertexTuple face_tuple(std::span<const Vertex> x, std::size_t j) {
    if (j >= x.size()) throw std::out_of_range("face index out of range");
    VertexTuple out;
    out.reserve(x.size() - 1);
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (k != j) out.push_back(x[k]);
    }
    return out;
}

AltChain::AltChain(int degree) : degree_(degree) {
    if (degree < 0) throw std::invalid_argument("chain degree must be non-negative");
}

AltChain AltChain::basis(std::span<const Vertex> x, const Rational& coeff) {
    if (x.empty()) throw std::invalid_argument("basis tuple must be non-empty");
    AltChain c(static_cast<int>(x.size()) - 1);
    c.add_term(x, coeff);
    return c;
}

Rational AltChain::coefficient(std::span<const Vertex> canonical) const {
    auto it = terms_.find(VertexTuple(canonical.begin(), canonical.end()));
    return it == terms_.end() ? Rational(0) : it->second;
}

void AltChain::add_term(std::span<const Vertex> x, const Rational& coeff) {
    if (x.size() != static_cast<std::size_t>(degree_) + 1) {
        throw std::invalid_argument("tuple of length " + std::to_string(x.size()) + " in a degree " +
                                    std::to_string(degree_) + " chain");
    }
    if (coeff == 0) return;
    auto canon = canonicalize_tuple(x);
    if (canon.sign == 0) return;
    auto [it, fresh] = terms_.try_emplace(std::move(canon.tuple), 0);
    if (canon.sign > 0)
        it->second += coeff;
    else
        it->second -= coeff;
    if (it->second == 0) terms_.erase(it);
}

void AltChain::check_degree(const AltChain& other) const {
    if (other.degree_ != degree_) {
        throw std::invalid_argument("degree mismatch: " + std::to_string(degree_) + " vs " +
                                    std::to_string(other.degree_));
    }
}

void AltChain::add(const AltChain& other, const Rational& scale) {
    check_degree(other);
    if (scale == 0) return;
    for (const auto& [key, coeff] : other.terms_) {
        auto [it, fresh] = terms_.try_emplace(key, 0);
        it->second += scale * coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

AltChain& AltChain::operator+=(const AltChain& other) {
    add(other, 1);
    return *this;
}

AltChain& AltChain::operator-=(const AltChain& other) {
    add(other, -1);
    return *this;
}

AltChain& AltChain::operator*=(const Rational& scale) {
    if (scale == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [key, coeff] : terms_) coeff *= scale;
    return *this;
}

AltChain AltChain::operator-() const {
    AltChain out = *this;
    out *= -1;
    return out;
}

AltChain chain_from_tuples(std::span<const std::pair<VertexTuple, Rational>> pairs) {
    if (pairs.empty()) throw std::invalid_argument("chain_from_tuples needs at least one tuple to fix the degree");
    const std::size_t length = pairs.front().first.size();
    if (length == 0) throw std::invalid_argument("empty tuple");
    AltChain c(static_cast<int>(length) - 1);
    for (const auto& [tuple, coeff] : pairs) {
        if (tuple.size() != length) throw std::invalid_argument("mixed degrees in chain_from_tuples");
        c.add_term(tuple, coeff);
    }
    return c;
}

AltChain face(const AltChain& c, int j) {
    if (c.degree() == 0) throw std::invalid_argument("degree-0 chains have no faces");
    if (j < 0 || j > c.degree()) throw std::out_of_range("face index " + std::to_string(j) + " out of range");
    AltChain out(c.degree() - 1);
    for (const auto& [key, coeff] : c.terms()) out.add_term(face_tuple(key, static_cast<std::size_t>(j)), coeff);
    return out;
}

AltChain boundary(const AltChain& c) {
    if (c.degree() == 0) throw std::invalid_argument("boundary of a degree-0 chain; use augmentation");
    AltChain out(c.degree() - 1);
    for (const auto& [key, coeff] : c.terms()) {
        for (std::size_t j = 0; j < key.size(); ++j) out.add_term(face_tuple(key, j), (j % 2 == 0) ? coeff : -coeff);
    }
    return out;
}

Rational augmentation(const AltChain& c) {
    if (c.degree() != 0) throw std::invalid_argument("augmentation is defined on degree-0 chains only");
    Rational sum = 0;
    for (const auto& [key, coeff] : c.terms()) sum += coeff;
    return sum;
}

Rational l1_norm(const AltChain& c) {
    Rational sum = 0;
    for (const auto& [key, coeff] : c.terms()) sum += abs(coeff);
    return sum;
}

bool is_integral(const AltChain& c) {
    return std::all_of(c.terms().begin(), c.terms().end(), [](const auto& kv) { return is_integer(kv.second); });
}

AltChain push_forward(const AltChain& c, const PartialIsometry& g) {
    AltChain out(c.degree());
    for (const auto& [key, coeff] : c.terms()) out.add_term(g.apply(key), coeff);
    return out;
}

std::string format_chain(const AltChain& c) {
    std::ostringstream out;
    for (const auto& [key, coeff] : c.terms()) {
        out << coeff.str();
        for (Vertex v : key) out << ' ' << v;
        out << '\n';
    }
    return out.str();
}

AltChain parse_chain(std::istream& in, int degree_if_empty) {
    std::vector<std::pair<VertexTuple, Rational>> pairs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string coeff;
        if (!(fields >> coeff)) continue;
        VertexTuple tuple;
        long long v;
        while (fields >> v) tuple.push_back(static_cast<Vertex>(v));
        if (!fields.eof() || tuple.empty()) {
            throw std::invalid_argument("chain line " + std::to_string(line_no) + ": expected 'coeff v0 ... vn'");
        }
        pairs.emplace_back(std::move(tuple), parse_rational(coeff));
    }
    if (pairs.empty()) {
        if (degree_if_empty < 0) throw std::invalid_argument("empty chain text without a degree");
        return AltChain(degree_if_empty);
    }
    return chain_from_tuples(pairs);
}

}  // namespace arboreal
