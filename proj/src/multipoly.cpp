#include "rigidity/multipoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace rigidity::excluder {

bool MultiPoly::GradedLex::operator()(const std::vector<unsigned>& a,
                                      const std::vector<unsigned>& b) const {
    unsigned da = 0, db = 0;
    for (unsigned e : a) da += e;
    for (unsigned e : b) db += e;
    if (da != db) return da > db;  // higher total degree prints first
    return a > b;
}

int MultiPoly::symbol_index(const std::string& name) const {
    if (!symbols_) throw std::logic_error("MultiPoly: no symbol table");
    for (std::size_t i = 0; i < symbols_->size(); ++i)
        if ((*symbols_)[i] == name) return static_cast<int>(i);
    throw std::invalid_argument("MultiPoly: unknown symbol '" + name + "'");
}

void MultiPoly::add_term(const std::vector<unsigned>& exps, const Rat& coeff) {
    if (coeff == 0) return;
    auto it = terms_.find(exps);
    if (it == terms_.end()) {
        terms_.emplace(exps, coeff);
        return;
    }
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
}

MultiPoly MultiPoly::constant(const Symbols& symbols, const Rat& c) {
    MultiPoly p(symbols);
    p.add_term(std::vector<unsigned>(symbols->size(), 0), c);
    return p;
}

MultiPoly MultiPoly::var(const Symbols& symbols, const std::string& name, int power) {
    MultiPoly p(symbols);
    std::vector<unsigned> exps(symbols->size(), 0);
    exps[p.symbol_index(name)] = static_cast<unsigned>(power);
    p.add_term(exps, 1);
    return p;
}

MultiPoly MultiPoly::operator+(const MultiPoly& other) const {
    MultiPoly result = *this;
    for (const auto& [exps, coeff] : other.terms_) result.add_term(exps, coeff);
    return result;
}

MultiPoly MultiPoly::operator-(const MultiPoly& other) const {
    MultiPoly result = *this;
    for (const auto& [exps, coeff] : other.terms_) result.add_term(exps, -coeff);
    return result;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly result(symbols_);
    for (const auto& [exps, coeff] : terms_) result.terms_.emplace(exps, -coeff);
    return result;
}

MultiPoly MultiPoly::scaled(const Rat& c) const {
    MultiPoly result(symbols_);
    if (c == 0) return result;
    for (const auto& [exps, coeff] : terms_) result.terms_.emplace(exps, coeff * c);
    return result;
}

MultiPoly MultiPoly::operator*(const MultiPoly& other) const {
    MultiPoly result(symbols_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : other.terms_) {
            std::vector<unsigned> exps(ea.size());
            for (std::size_t i = 0; i < exps.size(); ++i) exps[i] = ea[i] + eb[i];
            result.add_term(exps, ca * cb);
        }
    }
    return result;
}

MultiPoly MultiPoly::pow(unsigned exponent) const {
    MultiPoly result = constant(symbols_, 1);
    for (unsigned i = 0; i < exponent; ++i) result = result * *this;
    return result;
}

MultiPoly MultiPoly::substitute(const std::string& name, const MultiPoly& replacement) const {
    const int idx = symbol_index(name);
    MultiPoly result(symbols_);
    for (const auto& [exps, coeff] : terms_) {
        std::vector<unsigned> rest = exps;
        unsigned power = rest[idx];
        rest[idx] = 0;
        MultiPoly term(symbols_);
        term.add_term(rest, coeff);
        result = result + term * replacement.pow(power);
    }
    return result;
}

bool MultiPoly::nonneg_combination() const {
    for (const auto& [exps, coeff] : terms_)
        if (coeff < 0) return false;
    return true;
}

std::string MultiPoly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [exps, coeff] : terms_) {
        Rat c = coeff;
        if (out.empty()) {
            if (c < 0) {
                out += "-";
                c = -c;
            }
        } else {
            out += c < 0 ? " - " : " + ";
            if (c < 0) c = -c;
        }
        std::string monomial;
        for (std::size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] == 0) continue;
            if (!monomial.empty()) monomial += "*";
            monomial += (*symbols_)[i];
            if (exps[i] > 1) monomial += "^" + std::to_string(exps[i]);
        }
        if (monomial.empty()) {
            out += to_string(c);
        } else if (c == 1) {
            out += monomial;
        } else {
            out += to_string(c) + "*" + monomial;
        }
    }
    return out;
}

}  // namespace rigidity::excluder
