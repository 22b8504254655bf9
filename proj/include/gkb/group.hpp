// Conjugacy classes of GL_n(F_q), subspace and flag tables, unipotent radicals.
#pragma once

#include <gmpxx.h>

#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "gkb/field.hpp"
#include "gkb/matrix.hpp"

namespace gkb {

struct Budgets {
  uint64_t max_flag_chains = 10'000'000;
  uint64_t max_unipotent = 10'000'000;
  uint64_t max_kloosterman_terms = 100'000'000;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LabelPart {
  int deg = 0;
  int64_t code = 0;                 // integer code of the monic irreducible f
  std::vector<uint8_t> partition;   // decreasing parts

  bool operator==(const LabelPart& o) const {
    return deg == o.deg && code == o.code && partition == o.partition;
  }
  bool operator<(const LabelPart& o) const;
};

// Multiset of (f, partition) with f != x, sorted by (deg f, code f).
struct ClassLabel {
  std::vector<LabelPart> parts;

  bool operator==(const ClassLabel& o) const { return parts == o.parts; }
  bool operator<(const ClassLabel& o) const { return parts < o.parts; }
  int degree() const;
  std::string key() const;
  std::string to_string(const FieldContext& F) const;
};

PolyFq poly_from_code(const FieldContext& F, int deg, int64_t code);

// Canonical label of an invertible matrix; throws std::domain_error if singular.
ClassLabel class_label(const FieldContext& F, const Mat& g);
Mat class_representative(const FieldContext& F, const ClassLabel& L);
mpz_class centralizer_order(const FieldContext& F, const ClassLabel& L);
mpz_class gl_order(int q, int n);
std::vector<std::vector<uint8_t>> partitions_of(int s);

// Reduced row echelon basis of a subspace of row vectors F_q^n.
struct Subspace {
  Mat basis;                    // d x n
  std::array<uint8_t, kMaxN> pivots{};
  int dim() const { return basis.rows; }
};

mpz_class gaussian_binomial(int q, int n, int d);
std::vector<Subspace> enumerate_subspaces(const FieldContext& F, int n, int d);
// Visits every flag V_1 < V_2 < ... of the given composition; bases are of the cumulative subspaces.
void for_each_flag_chain(const FieldContext& F, int n, const std::vector<int>& composition,
                         const std::function<void(const std::vector<Mat>&)>& visit,
                         uint64_t budget = Budgets{}.max_flag_chains);
uint64_t count_flag_chains(const FieldContext& F, int n, const std::vector<int>& composition);
// All block upper unitriangular matrices of the composition, in lexicographic order of entries.
std::vector<Mat> enumerate_unipotent_radical(const FieldContext& F,
                                             const std::vector<int>& composition,
                                             uint64_t budget = Budgets{}.max_unipotent);
// Entry positions (row, col) above the block diagonal, in enumeration order.
std::vector<std::pair<int, int>> unipotent_positions(const std::vector<int>& composition);

// For column-vector action: if span(V) (rows of V taken as column vectors) is g-stable, returns
// the action on V and on the quotient in the adapted basis.
bool stable_blocks(const FieldContext& F, const Mat& g, const Subspace& V, Mat& on_sub,
                   Mat& on_quotient);

struct ClassInfo {
  ClassLabel label;
  std::string key;
  Mat rep;
  mpz_class size;
  mpz_class centralizer;
};

class GroupContext;
using GroupPtr = std::shared_ptr<const GroupContext>;

class GroupContext {
 public:
  static GroupPtr build(FieldPtr F, int n);

  int n() const { return n_; }
  const FieldContext& field() const { return *F_; }
  const FieldPtr& field_ptr() const { return F_; }
  const mpz_class& order() const { return order_; }
  size_t num_classes() const { return classes_.size(); }
  const ClassInfo& cls(size_t i) const { return classes_[i]; }
  const std::vector<ClassInfo>& classes() const { return classes_; }
  int identity_index() const { return identity_; }

  int index_of(const ClassLabel& L) const;
  int index_of(const Mat& g) const { return class_index(g); }
  // Class of an invertible matrix through a characteristic-polynomial table; nullities are
  // computed only when the polynomial has repeated factors.
  int class_index(const Mat& g) const;
  // For each characteristic polynomial, a class to report when every class sharing it is equivalent
  // under `same`, else -1. class_index_resolved may then return any equivalent class.
  std::vector<int32_t> value_resolver(const std::function<bool(int, int)>& same) const;
  int class_index_resolved(const Mat& g, const std::vector<int32_t>& resolver) const;

  // Subspace tables are built on first use and then shared.
  const std::vector<Subspace>& subspaces(int d) const;

 private:
  FieldPtr F_;
  int n_ = 0;
  mpz_class order_;
  std::vector<ClassInfo> classes_;
  std::unordered_map<std::string, int> index_;
  int identity_ = 0;
  struct CharpolyEntry {
    std::vector<std::pair<PolyFq, int>> repeated;  // repeated irreducible factors
    std::vector<std::pair<std::vector<std::vector<uint8_t>>, int>> candidates;
  };
  std::vector<CharpolyEntry> by_charpoly_;
  mutable std::mutex sub_mu_;
  mutable std::vector<std::unique_ptr<std::vector<Subspace>>> subspaces_;
};

}  // namespace gkb
