#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cubext/field_params.hpp"
#include "cubext/forms.hpp"
#include "cubext/linalg.hpp"

namespace cubext {

// Where a stabilized locus must meet reduced forms for its matrix to be kept.
//  ReducedClosure: z in the closed planar region F_K, |z|^2 + t^2 >= 1, Delta > 0 (used by the enumerator).
//  LemmaBox: |Re z| <= 1/2, -1/2 <= Im z / sqrt(D) <= 0, |z|^2 + t^2 >= 1, Delta > 0.
enum class AutRegion { ReducedClosure, LemmaBox };
const char* to_string(AutRegion r);
AutRegion parse_region(const std::string& s);

struct AutoMatrix {
  GL2Mat M;
  // Rational RREF rows c with c . (P, Re Q, Im Q / sqrt(D), R) = 0 on the stabilized locus.
  QMatrix conditions;
  int rank_class = 0;
};

// Rows ((|A|^2-1, conj(A)C, A conj(C), |C|^2), (conj(A)B, conj(A)D-1, B conj(C), conj(C)D),
// (A conj(B), C conj(B), A conj(D)-1, C conj(D)), (|B|^2, conj(B)D, B conj(D), |D|^2-1)) acting on (P, Q, conj Q, R).
KMatrix build_W(const Order& o, const GL2Mat& m);

// The real linear conditions on (P, Re Q, Im Q / sqrt(D), R) equivalent to W(M) (P, Q, conj Q, R)^t = 0, as RREF.
QMatrix real_conditions(const Order& o, const KMatrix& W);

// True iff the locus cut out by the conditions meets the region.
bool locus_meets_region(const FieldParams& params, const QMatrix& conditions, AutRegion region);

// Every matrix of GL2(O_K) within the coefficient bounds whose stabilized locus meets the region,
// one per class modulo unit scaling. Sorted by (rank, conditions, matrix).
std::vector<AutoMatrix> enumerate_automorphs(const FieldParams& params, AutRegion region);

// Cached ReducedClosure table per field.
const std::vector<AutoMatrix>& automorphism_table(const FieldParams& params);

// Integer predicate proportional to a rational condition row.
LinearPredicate condition_predicate(const std::vector<mpq_class>& row);

// Table entries whose conditions all hold on the form answered by the decider.
std::vector<GL2Mat> stabilizer_of(const std::vector<AutoMatrix>& table, BoundaryDecider& decider);

// The representative of M modulo units, minimal in the (norm, Re, Im) order on (A, B, C, D).
GL2Mat canonical_mod_units(const Order& o, const GL2Mat& m);

// Versioned text format, one record per matrix.
void write_table(std::ostream& os, const FieldParams& params, AutRegion region, const std::vector<AutoMatrix>& t);
struct AutTableFile {
  int format_version = 0;
  int d_K = 0;
  AutRegion region = AutRegion::ReducedClosure;
  std::vector<AutoMatrix> entries;
};
AutTableFile read_table(std::istream& is);

struct TableDiff {
  std::vector<GL2Mat> missing;        // in expected, not in actual
  std::vector<GL2Mat> extra;          // in actual, not in expected
  std::vector<GL2Mat> wrong_conditions;
  bool empty() const { return missing.empty() && extra.empty() && wrong_conditions.empty(); }
};
// Comparison modulo unit scaling and condition-set equality.
TableDiff diff_tables(const Order& o, const std::vector<AutoMatrix>& expected, const std::vector<AutoMatrix>& actual);

}  // namespace cubext
