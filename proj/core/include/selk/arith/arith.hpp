#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "selk/kernel/derivation.hpp"
#include "selk/kernel/text.hpp"
#include "selk/loop/program.hpp"
#include "selk/natural.hpp"

namespace selk::arith {

using kernel::Derivation;
using kernel::Formula;
using kernel::Term;
using kernel::TheorySpec;

class CodeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class TheoryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Goedel numbers: the byte 0x01 followed by the canonical serialization,
// read as a big-endian natural. The first serialization byte is a category
// tag, so codes of different categories never collide.
Natural godel(const Term& t);
Natural godel(const Formula& f);
Natural godel(const Derivation& d);
Natural godel(const loop::Program& p);
Natural godel(const TheorySpec& t);

/// Each throws CodeError("not a valid code for category ...").
Term ungodel_term(const Natural& g);
Formula ungodel_formula(const Natural& g);
Derivation ungodel_derivation(const Natural& g);
loop::Program ungodel_program(const Natural& g);
TheorySpec ungodel_theory(const Natural& g);

/// The numeral of the Goedel number.
template <typename Node>
Term quote(const Node& x) {
  return kernel::numeral(godel(x));
}

inline constexpr const char* kCheckerName = "PRF";
inline constexpr const char* kLeqName = "LEQ";

/// The theory code e: the Goedel number of the theory's extras and whitelist.
Natural theory_code(const TheorySpec& t);

/// The formula 0 = 1 and its code c.
Formula contradiction();
Natural contradiction_code();

/// Base theory: no extra axioms; whitelist PRF and LEQ, both with K=64, k=3.
const TheorySpec& t0();
/// T0 + {0 = 1}.
TheorySpec t_bad();
/// Appends closed axioms; whitelist inherited. Throws TheoryError on open formulas.
TheorySpec extend_theory(const TheorySpec& t, const std::vector<Formula>& axioms, std::string name = "");

/// (= (ap PRF e p x) #1)
Formula sentence_proof(const TheorySpec& t, const Term& p, const Term& x);
/// (ex ?q Proof(?q, x)), with the bound variable chosen fresh for x.
Formula sentence_prov(const TheorySpec& t, const Term& x);
/// (not Proof(n, c))
Formula sentence_con_n(const TheorySpec& t, const Natural& n);
/// (all ?p (not Proof(?p, c)))
Formula sentence_con(const TheorySpec& t);
/// (all ?p (-> (= (ap LEQ ?p m) #1) (not Proof(?p, c))))
Formula sentence_con_bd(const TheorySpec& t, const Natural& m);
/// (and Prov(x) (not (= x c)))
Formula sentence_prov_star(const TheorySpec& t, const Term& x);

inline constexpr kernel::Var kProofVar = 15;  // ?p
inline constexpr kernel::Var kProvVar = 16;   // ?q

/// Text context naming e (this theory's code) and c (the code of 0 = 1),
/// and checking `ap` symbols against the theory's whitelist.
kernel::TextContext text_context(const TheorySpec& t);

}  // namespace selk::arith
