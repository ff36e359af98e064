#ifndef RIGIDITY_MULTIPOLY_HPP
#define RIGIDITY_MULTIPOLY_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "rigidity/numeric.hpp"

namespace rigidity::excluder {

// Sparse multivariate polynomial over Q with a fixed, shared symbol table.
// Just enough ring arithmetic to state and certify the contradiction chain:
// add/sub/mul, substitution of a symbol by a polynomial, canonical printing,
// and the two certificate shapes (zero, non-negative monomial combination).
class MultiPoly {
  public:
    using Symbols = std::shared_ptr<const std::vector<std::string>>;

    MultiPoly() = default;
    explicit MultiPoly(Symbols symbols) : symbols_(std::move(symbols)) {}

    static MultiPoly constant(const Symbols& symbols, const Rat& c);
    static MultiPoly var(const Symbols& symbols, const std::string& name, int power = 1);

    MultiPoly operator+(const MultiPoly& other) const;
    MultiPoly operator-(const MultiPoly& other) const;
    MultiPoly operator*(const MultiPoly& other) const;
    MultiPoly operator-() const;
    MultiPoly scaled(const Rat& c) const;
    MultiPoly pow(unsigned exponent) const;

    bool operator==(const MultiPoly& other) const { return terms_ == other.terms_; }

    // Replace one symbol by a polynomial (exact elimination).
    MultiPoly substitute(const std::string& name, const MultiPoly& replacement) const;

    bool is_zero() const { return terms_.empty(); }
    bool nonneg_combination() const;  // every coefficient >= 0
    std::string str() const;          // canonical: graded, then lex on exponents

    const Symbols& symbols() const { return symbols_; }

  private:
    struct GradedLex {
        bool operator()(const std::vector<unsigned>& a, const std::vector<unsigned>& b) const;
    };

    int symbol_index(const std::string& name) const;
    void add_term(const std::vector<unsigned>& exps, const Rat& coeff);

    Symbols symbols_;
    std::map<std::vector<unsigned>, Rat, GradedLex> terms_;
};

}  // namespace rigidity::excluder

#endif
