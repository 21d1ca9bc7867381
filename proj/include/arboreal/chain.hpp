#pragma once

#include "arboreal/rational.hpp"
#include "arboreal/tree.hpp"

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace arboreal {

struct CanonicalTuple {
    VertexTuple tuple;  // strictly increasing unless sign == 0
    int sign = 0;       // parity of the sorting permutation; 0 on repeated entries
};

/// Sorts the tuple and records the sign of the sorting permutation. A tuple
/// with a repeated entry is the zero chain and gets sign 0.
CanonicalTuple canonicalize_tuple(std::span<const Vertex> x);

/// Deletes the j-th coordinate of an ordered tuple.
VertexTuple face_tuple(std::span<const Vertex> x, std::size_t j);

/**
 * Sparse alternating chain of a fixed degree n: a map from strictly
 * increasing (n+1)-tuples to non-zero rationals. Keys are ordered
 * lexicographically, so equal chains compare equal and iterate identically.
 */
class AltChain {
public:
    using Terms = std::map<VertexTuple, Rational>;

    explicit AltChain(int degree);
    static AltChain basis(std::span<const Vertex> x, const Rational& coeff = 1);

    int degree() const { return degree_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    Rational coefficient(std::span<const Vertex> canonical) const;

    /// Adds coeff * x for an arbitrary ordered tuple of length degree()+1.
    void add_term(std::span<const Vertex> x, const Rational& coeff);
    void add(const AltChain& other, const Rational& scale = 1);

    AltChain& operator+=(const AltChain& other);
    AltChain& operator-=(const AltChain& other);
    AltChain& operator*=(const Rational& scale);
    friend AltChain operator+(AltChain a, const AltChain& b) { return a += b; }
    friend AltChain operator-(AltChain a, const AltChain& b) { return a -= b; }
    friend AltChain operator*(const Rational& s, AltChain a) { return a *= s; }
    AltChain operator-() const;

    friend bool operator==(const AltChain& a, const AltChain& b) {
        return a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }

private:
    void check_degree(const AltChain& other) const;

    int degree_;
    Terms terms_;
};

/// Builds a chain from (tuple, coefficient) pairs. All tuples must share one
/// length; throws std::invalid_argument on mixed degrees or an empty input.
AltChain chain_from_tuples(std::span<const std::pair<VertexTuple, Rational>> pairs);

AltChain face(const AltChain& c, int j);
AltChain boundary(const AltChain& c);
Rational augmentation(const AltChain& c);
Rational l1_norm(const AltChain& c);
bool is_integral(const AltChain& c);

// Applies a vertex map termwise (the map must be defined on the support).
AltChain push_forward(const AltChain& c, const PartialIsometry& g);

// Text form: one `coeff v0 v1 ... vn` line per term, coefficients as p/q.
std::string format_chain(const AltChain& c);
/// Parses the text form; blank lines and '#' comments are skipped. A chain
/// with no terms needs its degree supplied explicitly.
AltChain parse_chain(std::istream& in, int degree_if_empty = -1);

}  // namespace arboreal
