#include "dioprime/ledger.hpp"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"

namespace dioprime::ledger {

std::string to_string(Relation rel) {
  switch (rel) {
    case Relation::Equal: return "=";
    case Relation::NotEqual: return "!=";
    case Relation::Less: return "<";
    case Relation::LessEqual: return "<=";
    case Relation::GreaterEqual: return ">=";
    case Relation::Greater: return ">";
  }
  return "?";
}

bool holds(const Rational& lhs, Relation rel, const Rational& rhs) {
  switch (rel) {
    case Relation::Equal: return lhs == rhs;
    case Relation::NotEqual: return lhs != rhs;
    case Relation::Less: return lhs < rhs;
    case Relation::LessEqual: return lhs <= rhs;
    case Relation::GreaterEqual: return lhs >= rhs;
    case Relation::Greater: return lhs > rhs;
  }
  return false;
}

void LedgerReport::add(std::string check, Rational lhs, Relation rel, Rational rhs, bool informational) {
  LedgerRow row;
  row.check = std::move(check);
  row.pass = holds(lhs, rel, rhs);
  switch (rel) {
    case Relation::Less:
    case Relation::LessEqual: row.slack = rhs - lhs; break;
    case Relation::Greater:
    case Relation::GreaterEqual: row.slack = lhs - rhs; break;
    default: row.slack = (lhs - rhs).abs(); break;
  }
  row.lhs = std::move(lhs);
  row.rel = rel;
  row.rhs = std::move(rhs);
  row.informational = informational;
  rows.push_back(std::move(row));
}

bool LedgerReport::passed() const {
  return std::all_of(rows.begin(), rows.end(), [](const LedgerRow& r) { return r.informational || r.pass; });
}

void LedgerReport::append(const LedgerReport& other) { rows.insert(rows.end(), other.rows.begin(), other.rows.end()); }

namespace constants {
Rational c_threshold() { return {26088036, 12301745}; }
Rational sup_exponent() { return {12195706, 12301745}; }
Rational hb_u() { return {212078, 12301745}; }
Rational hb_v() { return {28846271, 49206980}; }
Rational hb_z() { return {12089667, 24603490}; }
Rational typeI2_m_range() { return {12513823, 24603490}; }
Rational typeI2_ab_m_range() { return {3393655, 12301745}; }
ExponentPair long_chain_pair() { return {Rational(156989, 1244758), Rational(875691, 1244758)}; }
const char* long_chain_word() { return "ABA^2BABABABABABABA^2BA^2BA^2BA^2B"; }
}  // namespace constants

HBParams HBParams::standard() { return {constants::hb_u(), constants::hb_v(), constants::hb_z()}; }

Rational derive_c_threshold() {
  // c/6 = target - 1/2 - (1/2)·m, with m the AB-pair M-range exponent
  const Rational half(1, 2);
  return Rational(6) * (constants::sup_exponent() - half - half * constants::typeI2_ab_m_range());
}

LedgerReport verify_c_threshold() {
  LedgerReport r{"threshold", {}};
  const Rational c = derive_c_threshold();
  r.add("derived c threshold = 26088036/12301745", c, Relation::Equal, constants::c_threshold());
  r.add("c threshold > 2", c, Relation::Greater, Rational(2));
  r.add("c threshold > 37/18 (previous range)", c, Relation::Greater, Rational(37, 18));
  return r;
}

LedgerReport verify_heathbrown_params(const HBParams& p) {
  LedgerReport r{"heathbrown", {}};
  r.add("X >> Z^2 U: 2z + u <= 1", Rational(2) * p.z + p.u, Relation::LessEqual, Rational(1));
  r.add("Z >> U^2: z >= 2u", p.z, Relation::GreaterEqual, Rational(2) * p.u);
  r.add("V^3 >> X: 3v >= 1", Rational(3) * p.v, Relation::GreaterEqual, Rational(1));
  r.add("U < V: u < v", p.u, Relation::Less, p.v);
  r.add("3 < U: u > 0", p.u, Relation::Greater, Rational(0));
  r.add("V < X: v < 1", p.v, Relation::Less, Rational(1));
  r.add("Z < X: z < 1", p.z, Relation::Less, Rational(1));
  r.add("type II window closure: v <= 1 - z", p.v, Relation::LessEqual, Rational(1) - p.z, true);
  return r;
}

LedgerReport verify_typeI_thresholds(const Rational& z) {
  LedgerReport r{"typeI", {}};
  const Rational target = constants::sup_exponent();
  // A^2B pair bound gives X^{15/14} L^{-3/14}; worst case L = X^z.
  r.add("type I-1 (A^2B pair): 15/14 - (3/14) z <= target", Rational(15, 14) - Rational(3, 14) * z,
        Relation::LessEqual, target);
  const Rational c = derive_c_threshold();
  r.add("type I-2 (AB pair): m/2 + c/6 + 1/2 <= target at c threshold",
        Rational(1, 2) * constants::typeI2_ab_m_range() + c / Rational(6) + Rational(1, 2), Relation::LessEqual,
        target);
  r.add("type I-2 M-range is complement of type I-1 L-range: 1 - z = 12513823/24603490", Rational(1) - z,
        Relation::Equal, constants::typeI2_m_range());
  r.add("AB branch sits inside the type I-2 M-range: 3393655/12301745 <= 1 - z",
        constants::typeI2_ab_m_range(), Relation::LessEqual, Rational(1) - z);
  return r;
}

LedgerReport verify_typeII_exponent(const Rational& q_exponent) {
  LedgerReport r{"typeII", {}};
  const Rational target = constants::sup_exponent();
  const Rational typeII = (Rational(2) - q_exponent) / Rational(2);
  r.add("type II: (2 - q)/2 = target", typeII, Relation::Equal, target);
  r.add("type II Q-exponent equals Heath-Brown u", q_exponent, Relation::Equal, constants::hb_u());
  const Rational c = derive_c_threshold();
  const Rational typeI2 = Rational(1, 2) * constants::typeI2_ab_m_range() + c / Rational(6) + Rational(1, 2);
  r.add("consistency: type I-2 exponent at threshold = type II exponent", typeI2, Relation::Equal, typeII);
  r.add("consistency: minor-arc sup exponent = type II exponent", target, Relation::Equal, typeII);
  return r;
}

// Bilinear-sum fixtures. The ten-term bound is the 16th power of the double
// sum before choosing Q; the 21-term lists are the optimized bound at 16th
// power scale and after the 16th root.

BoundExpr bilinear_16th_power_terms() {
  return BoundExpr::parse(
      "M^{14}*L^{13}*F + M^{14}*L^{12}*Q^{13/3}*F + M^{53/4}*L^{12}*Q^{28/3}*F + M^{53/4}*L^{13}*Q^{5}*F"
      " + M^{16}*L^{14}*Q^{4/3} + M^{57/4}*L^{16}*Q + M^{17}*L^{18}*F^{-1}*Q^{-7} + M^{16}*L^{16}*Q^{-8}"
      " + M^{15}*L^{16}*Q^{-4} + M^{16}*L^{15}*Q^{-3}");
}

BoundExpr bilinear_16th_power_optimized() {
  return BoundExpr::parse(
      "M^{14}*L^{13}*F + M^{515/34}*L^{243/17}*F^{4/17} + M^{544/37}*L^{496/37}*F^{24/37}"
      " + M^{363/25}*L^{352/25}*F^{12/25} + M^{167/11}*L^{303/22}*F^{9/22} + M^{383/26}*L^{184/13}*F^{6/13}"
      " + M^{579/40}*L^{74/5}*F^{3/10} + M^{2269/148}*L^{528/37}*F^{9/37} + M^{711/48}*L^{181/12}*F^{1/6}"
      " + M^{186/13}*L^{184/13}*F^{8/13} + M^{128/9}*L^{44/3}*F^{4/9} + M^{479/32}*L^{57/4}*F^{3/8}"
      " + M^{61/4}*L^{18}*F^{-1} + M^{431/28}*L^{108/7}*F^{-1/7} + M^{404/25}*L^{366/25}*F^{-4/25}"
      " + M^{467/32}*L^{65/4}*F^{-1/8} + M^{61/4}*L^{15} + M^{63/4}*L^{29/2} + M^{16}*L^{186/13}"
      " + M^{130/9}*L^{16} + M^{235/16}*L^{63/4}");
}

BoundExpr bilinear_statement_terms() {
  return BoundExpr::parse(
      "M^{7/8}*L^{13/16}*F^{1/16} + M^{515/544}*L^{243/272}*F^{1/68} + M^{34/37}*L^{31/37}*F^{3/74}"
      " + M^{363/400}*L^{22/25}*F^{3/100} + M^{167/176}*L^{303/352}*F^{9/352}"
      " + M^{383/416}*L^{23/26}*F^{3/104} + M^{579/640}*L^{37/40}*F^{3/160}"
      " + M^{2269/2368}*L^{33/37}*F^{9/592} + M^{711/768}*L^{181/192}*F^{1/96}"
      " + M^{93/104}*L^{23/26}*F^{1/26} + M^{8/9}*L^{11/12}*F^{1/36} + M^{479/512}*L^{57/64}*F^{3/128}"
      " + M^{61/64}*L^{9/8}*F^{-1/16} + M^{431/448}*L^{27/28}*F^{-1/112}"
      " + M^{101/100}*L^{183/200}*F^{-1/100} + M^{467/512}*L^{65/64}*F^{-1/128}"
      " + M^{61/64}*L^{15/16} + M^{63/64}*L^{29/32} + M*L^{93/104} + M^{65/72}*L + M^{235/256}*L^{63/64}");
}

BilinearReproduction reproduce_bilinear_16th_terms() {
  BilinearReproduction out;
  out.optimized = gk_optimize(bilinear_16th_power_terms(), Monomial{}, Monomial::symbol("M", Rational(1, 4)));
  const BoundExpr pruned = prune_dominated(out.optimized, &out.pruned);
  out.derived = bound_root(pruned, 16);
  out.expected = bilinear_statement_terms();

  for (const auto& t : out.expected) {
    (out.derived.contains(t) ? out.matched : out.missing).push_back(t);
  }
  for (const auto& t : out.derived) {
    if (!out.expected.contains(t)) out.extra.push_back(t);
  }

  auto& r = out.report;
  r.name = "bilinear";
  r.add("optimized 16th-power terms, before pruning (count)", Rational(static_cast<long>(out.optimized.size())),
        Relation::GreaterEqual, Rational(static_cast<long>(out.expected.size())), true);
  r.add("pruned 16th-power set equals the published 21-term display",
        Rational(pruned == bilinear_16th_power_optimized() ? 1 : 0), Relation::Equal, Rational(1));
  r.add("matched terms", Rational(static_cast<long>(out.matched.size())), Relation::Equal,
        Rational(static_cast<long>(out.expected.size())));
  r.add("missing terms", Rational(static_cast<long>(out.missing.size())), Relation::Equal, Rational(0));
  r.add("extra terms", Rational(static_cast<long>(out.extra.size())), Relation::Equal, Rational(0));

  // Spot terms.
  const Monomial cross = monomial_cross(Monomial::parse("M^{14}*L^{12}*Q^{13/3}*F"), Monomial::parse("M^{16}*L^{16}*Q^{-8}"));
  const Monomial spot = cross.pow(Rational(1, 16));
  r.add("cross term rooted: M exponent 34/37", spot.exponent("M"), Relation::Equal, Rational(34, 37));
  r.add("cross term rooted: L exponent 31/37", spot.exponent("L"), Relation::Equal, Rational(31, 37));
  r.add("cross term rooted: F exponent 3/74", spot.exponent("F"), Relation::Equal, Rational(3, 74));
  for (const auto& d : out.pruned) {
    r.add("pruned " + d.term.str() + " (dominated by " + d.dominated_by.str() + ")", Rational(1),
          Relation::Equal, Rational(1), true);
  }
  return out;
}

LedgerReport verify_bilinear_16th_terms() { return reproduce_bilinear_16th_terms().report; }

LedgerReport verify_longchain_usage(const Rational& c) {
  LedgerReport r{"longchain", {}};
  const ExponentPair pair = apply_word(constants::long_chain_word());
  const Rational target = constants::sup_exponent();
  r.add("long chain applied to (0,1): kappa = 156989/1244758", pair.kappa, Relation::Equal,
        constants::long_chain_pair().kappa);
  r.add("long chain applied to (0,1): lambda = 875691/1244758", pair.lambda, Relation::Equal,
        constants::long_chain_pair().lambda);
  r.add("(i) lambda - kappa = 359351/622379", pair.lambda - pair.kappa, Relation::Equal, Rational(359351, 622379));

  const Rational four = Rational(4) * target;
  r.add("(ii) 4 * sup exponent = 48782824/12301745", four, Relation::Equal, Rational(48782824, 12301745));
  const Rational e4 = Rational(1) + four;
  r.add("(ii) 1 + 4 * sup exponent = 61084569/12301745", e4, Relation::Equal, Rational(61084569, 12301745));
  r.add("(ii) 2 + (lambda - kappa) = 1604109/622379", Rational(2) + pair.lambda - pair.kappa, Relation::Equal,
        Rational(1604109, 622379));

  r.add("(iii) kappa*c + 1604109/622379 <= 61084569/12301745 - c", pair.kappa * c + Rational(1604109, 622379),
        Relation::LessEqual, e4 - c);

  const Rational five = Rational(5) * target;
  r.add("5 * sup exponent = 60978530/12301745", five, Relation::Equal, Rational(60978530, 12301745));
  const Rational e5 = Rational(1) + five;
  r.add("1 + 5 * sup exponent = 73280275/12301745", e5, Relation::Equal, Rational(73280275, 12301745));

  // fifth moment: X^{1/2} (X^2 · X^{e4 - c})^{1/2}
  const Rational m5 = Rational(1, 2) + (Rational(2) + e4) / Rational(2);
  r.add("(iv) fifth-moment exponent 1/2 + (2 + 61084569/12301745)/2 = 48994902/12301745", m5, Relation::Equal,
        Rational(48994902, 12301745));
  // sixth moment: X^{1/2} (X^{m5 - c/2} · X^{e5 - c})^{1/2}
  const Rational m6 = Rational(1, 2) + (m5 + e5) / Rational(2);
  r.add("(iv) sixth-moment exponent 1/2 + (48994902 + 73280275)/(2*12301745) = 134576922/24603490", m6,
        Relation::Equal, Rational(134576922, 24603490));

  const Rational mixed = (pair.lambda - pair.kappa) + m5;
  r.add("mixed fifth-moment constant = 34914042479353/7656347751355", mixed, Relation::Equal,
        Rational(34914042479353, 7656347751355));
  r.add("mixed fifth-moment c-coefficient kappa - 1/2 = -465390/1244758", pair.kappa - Rational(1, 2),
        Relation::Equal, Rational(-465390, 1244758));
  r.add("mixed term dominated: const + (kappa - 1/2) c <= 73280275/12301745 - c",
        mixed + (pair.kappa - Rational(1, 2)) * c, Relation::LessEqual, e5 - c);
  return r;
}

LedgerReport run_all() {
  LedgerReport all{"all", {}};
  for (const auto& name : check_names()) all.append(run_check(name));
  return all;
}

std::vector<std::string> check_names() { return {"threshold", "heathbrown", "typeI", "typeII", "bilinear", "longchain"}; }

LedgerReport run_check(const std::string& name) {
  if (name == "threshold") return verify_c_threshold();
  if (name == "heathbrown") return verify_heathbrown_params(HBParams::standard());
  if (name == "typeI") return verify_typeI_thresholds();
  if (name == "typeII") return verify_typeII_exponent();
  if (name == "bilinear") return verify_bilinear_16th_terms();
  if (name == "longchain") return verify_longchain_usage();
  throw std::invalid_argument("unknown ledger check '" + name + "'");
}

std::string to_json(const LedgerReport& report) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    nlohmann::ordered_json j;
    j["check"] = row.check;
    j["lhs"] = row.lhs.fraction_str();
    j["rel"] = to_string(row.rel);
    j["rhs"] = row.rhs.fraction_str();
    j["pass"] = row.pass;
    j["slack"] = row.slack.fraction_str();
    if (row.informational) j["informational"] = true;
    rows.push_back(std::move(j));
  }
  return rows.dump();
}

}  // namespace dioprime::ledger
