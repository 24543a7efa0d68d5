#pragma once

// Deterministic finite automata with output in F_q, their generating
// Laurent series, and a search for Frobenius-linear relations.

#include "lcf/field.hpp"
#include "lcf/laurent.hpp"
#include "lcf/poly.hpp"
#include "lcf/xpoly.hpp"

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

namespace lcf {

class Automaton {
public:
    /// delta[s][digit], tau[s] a field code, states indexed from 0.
    Automaton(FieldPtr f, unsigned k, std::vector<std::vector<std::size_t>> delta, std::vector<std::uint32_t> tau,
              std::size_t init = 0, std::vector<std::string> names = {});

    /// Text format, one item per line, '#' starts a comment:
    ///   base k
    ///   init s            (optional; default: first state mentioned)
    ///   s d -> t
    ///   out s = element
    /// Throws ParseError with the line number.
    static Automaton parse(FieldPtr f, std::istream& in);
    static Automaton parse(FieldPtr f, const std::string& text);
    /// {"base": k, "init": s, "delta": {s: [t_0, ..., t_{k-1}]}, "out": {s: element}}.
    static Automaton parse_json(FieldPtr f, const std::string& text);
    static Automaton load(FieldPtr f, const std::string& path);

    const FieldPtr& field() const { return f_; }
    unsigned base() const { return k_; }
    std::size_t states() const { return delta_.size(); }
    std::size_t init() const { return init_; }
    const std::vector<std::string>& names() const { return names_; }
    std::size_t next(std::size_t s, unsigned digit) const { return delta_[s][digit]; }
    std::uint32_t output(std::size_t s) const { return tau_[s]; }
    /// reachable()[s] is true when s can be reached from init.
    const std::vector<bool>& reachable() const { return reachable_; }

    /// tau(delta(q0, W_n)) with W_n the base-k digits of n, most significant
    /// first; n = 0 reads the single digit 0.
    std::uint32_t run(std::uint64_t n) const;

    std::string to_text() const;

private:
    FieldPtr f_;
    unsigned k_;
    std::vector<std::vector<std::size_t>> delta_;
    std::vector<std::uint32_t> tau_;
    std::size_t init_;
    std::vector<std::string> names_;
    std::vector<bool> reachable_;
};

/// Sum_{n<N} run(n) T^{-n}, known to absolute precision N.
LaurentSeries series_from_automaton(const Automaton& a, std::size_t N);

struct ChristolRelation {
    /// Frobenius depth and coefficient degree bound at which it was found.
    unsigned depth = 0;
    unsigned degree_bound = 0;
    /// B_{-1}, B_0, ..., B_D: B_{-1} + sum_i B_i xi^{p^i} = 0.
    std::vector<Poly> coeffs;
    /// Precision of the linear system and of the substitution check.
    std::int64_t search_precision = 0;
    std::int64_t verified_precision = 0;

    /// B_{-1} + sum_i B_i X^{p^i}.
    XPoly as_xpoly() const;
};

/// Tries (D', H') = (0, 0), (0, 1), ..., (D, H) in order and returns the
/// first relation that survives substitution at twice the search precision.
/// Throws NotFound when none exists within the bounds, InsufficientPrecision
/// when xi is too short for the system or a candidate cannot be confirmed.
ChristolRelation christol_relation_search(const LaurentSeries& xi, unsigned D, unsigned H);

/// Residual B_{-1} + sum_i B_i xi^{p^i} at the precision xi allows.
LaurentSeries relation_residual(const ChristolRelation& r, const LaurentSeries& xi);

} // namespace lcf
