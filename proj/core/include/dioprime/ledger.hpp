#pragma once

// Exact re-derivation of the exponent bookkeeping behind the c < 26088036/12301745
// result. Every check is an exact rational relation; η is treated as an
// infinitesimal and dropped, so inequalities are non-strict and the exact
// slack is reported next to each row.

#include <string>
#include <vector>

#include "dioprime/exppair.hpp"
#include "dioprime/monomial.hpp"
#include "dioprime/rational.hpp"

namespace dioprime::ledger {

enum class Relation { Equal, NotEqual, Less, LessEqual, GreaterEqual, Greater };

std::string to_string(Relation rel);
bool holds(const Rational& lhs, Relation rel, const Rational& rhs);

struct LedgerRow {
  std::string check;
  Rational lhs;
  Relation rel = Relation::Equal;
  Rational rhs;
  bool pass = false;
  /// rhs - lhs for <, <=; lhs - rhs for >, >=; |lhs - rhs| for = and !=.
  Rational slack;
  /// Reported but excluded from the overall verdict.
  bool informational = false;
};

struct LedgerReport {
  std::string name;
  std::vector<LedgerRow> rows;

  void add(std::string check, Rational lhs, Relation rel, Rational rhs, bool informational = false);
  /// True iff every non-informational row passes.
  bool passed() const;
  void append(const LedgerReport& other);
};

/// Constants quoted by the exponent ledger.
namespace constants {
Rational c_threshold();          // 26088036/12301745
Rational sup_exponent();         // 12195706/12301745, the minor-arc exponent of S(x)
Rational hb_u();                 // 212078/12301745
Rational hb_v();                 // 28846271/49206980
Rational hb_z();                 // 12089667/24603490
Rational typeI2_m_range();       // 12513823/24603490
Rational typeI2_ab_m_range();    // 3393655/12301745
ExponentPair long_chain_pair();  // (156989/1244758, 875691/1244758)
const char* long_chain_word();   // "ABA^2BABABABABABABA^2BA^2BA^2BA^2B"
}  // namespace constants

/// Exponents (of X) for Heath-Brown's U, V, Z.
struct HBParams {
  Rational u;
  Rational v;
  Rational z;

  static HBParams standard();
};

/// Solves (1/2)·(3393655/12301745) + c/6 + 1/2 = 12195706/12301745 for c.
Rational derive_c_threshold();

LedgerReport verify_heathbrown_params(const HBParams& p);

/// Type I checks for the L-range exponent z (defaults to the published one).
LedgerReport verify_typeI_thresholds(const Rational& z = constants::hb_z());

/// (2 - q)/2 for the Type II choice Q = X^q, compared with the target exponent.
LedgerReport verify_typeII_exponent(const Rational& q_exponent = constants::hb_u());

struct BilinearReproduction {
  BoundExpr optimized;                 // gk_optimize output, 16th power scale
  std::vector<DominatedTerm> pruned;   // removed by prune_dominated
  BoundExpr derived;                   // after pruning and the 16th root
  BoundExpr expected;                  // the 21 published terms
  std::vector<Monomial> matched;
  std::vector<Monomial> missing;
  std::vector<Monomial> extra;
  LedgerReport report;
};

/// The ten-term 16th-power bound for the bilinear sum, with Q free.
BoundExpr bilinear_16th_power_terms();
/// The optimized 16th-power display (21 terms).
BoundExpr bilinear_16th_power_optimized();
/// The final 21-term bound after taking 16th roots.
BoundExpr bilinear_statement_terms();

BilinearReproduction reproduce_bilinear_16th_terms();
LedgerReport verify_bilinear_16th_terms();

/// Long exponent-pair chain bookkeeping at a given c (defaults to the
/// threshold). Requires 2 < c < threshold only for the dominance rows to be
/// meaningful; other c are evaluated anyway.
LedgerReport verify_longchain_usage(const Rational& c = constants::c_threshold());

/// Threshold derivation rows (value, > 2, > 37/18).
LedgerReport verify_c_threshold();

/// Every check above with default arguments.
LedgerReport run_all();

/// Names accepted by run_check: threshold, heathbrown, typeI, typeII, bilinear, longchain.
std::vector<std::string> check_names();
LedgerReport run_check(const std::string& name);

/// JSON array of {"check","lhs","rel","rhs","pass","slack"} rows.
std::string to_json(const LedgerReport& report);

}  // namespace dioprime::ledger
