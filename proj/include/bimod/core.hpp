#pragma once

// Exact combinatorial ground types: index sets over a fixed universe,
// bipartite patterns (supports of diagonal-bimodule subspaces), canonically
// ordered projection families, and membership-profile partitions.

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bimod {

// Malformed caller input. The CLI maps this to exit code 2.
class input_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A structural identity the library guarantees did not hold. Exit code 1.
class invariant_violation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Subset of {0, ..., universe-1}, bit packed.
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(int universe);
  static IndexSet full(int universe);
  static IndexSet of(int universe, std::initializer_list<int> members);
  static IndexSet from_members(int universe, const std::vector<int>& members);

  int universe() const { return universe_; }
  bool contains(int i) const;
  void insert(int i);
  void erase(int i);
  int count() const;
  bool empty() const { return count() == 0; }
  bool is_full() const { return count() == universe_; }

  IndexSet operator|(const IndexSet& o) const;
  IndexSet operator&(const IndexSet& o) const;
  IndexSet operator-(const IndexSet& o) const;
  IndexSet& operator|=(const IndexSet& o);
  IndexSet& operator&=(const IndexSet& o);
  IndexSet complement() const;
  bool subset_of(const IndexSet& o) const;
  bool intersects(const IndexSet& o) const;
  bool operator==(const IndexSet& o) const;
  bool operator!=(const IndexSet& o) const { return !(*this == o); }

  std::vector<int> members() const;

  // Canonical report order: by cardinality, ties by lexicographic member list.
  static bool canonical_less(const IndexSet& a, const IndexSet& b);

  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  void check_same_universe(const IndexSet& o) const;
  int universe_ = 0;
  std::vector<std::uint64_t> words_;
};

// Bipartite relation on rows x cols; entry (i, j) means row i, column j.
// Set semantics: equality is entrywise, no duplicates by construction.
class Pattern {
 public:
  Pattern() = default;
  Pattern(int rows, int cols);
  static Pattern from_entries(int rows, int cols,
                              const std::vector<std::pair<int, int>>& entries);
  static Pattern from_grid(const std::vector<std::string>& grid);
  static Pattern full(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool at(int i, int j) const;
  void set(int i, int j, bool value = true);
  int count() const;
  bool empty() const { return count() == 0; }

  std::vector<std::pair<int, int>> entries() const;  // sorted (i, j)
  IndexSet row_set(int i) const;                     // over cols
  IndexSet row_support() const;                      // over rows
  IndexSet col_support() const;                      // over cols
  void set_row(int i, const IndexSet& cols);

  Pattern transpose() const;
  bool subset_of(const Pattern& o) const;
  bool operator==(const Pattern& o) const;
  bool operator!=(const Pattern& o) const { return !(*this == o); }
  Pattern operator|(const Pattern& o) const;
  Pattern operator&(const Pattern& o) const;
  Pattern operator-(const Pattern& o) const;

 private:
  void check_same_shape(const Pattern& o) const;
  int rows_ = 0, cols_ = 0, stride_ = 0;
  std::vector<std::uint64_t> words_;
};

// Boolean relational product: supports compose exactly like operator products
// of the spanned subspaces, since matrix units generate pattern spaces.
Pattern compose(const Pattern& a, const Pattern& b);
Pattern compose(const Pattern& a, const Pattern& b, const Pattern& c);

enum class FamilyKind {
  JoinClosedWithZero,      // closed under pairwise union, contains the empty set
  MeetClosedWithIdentity,  // closed under pairwise intersection, contains the full set
  Lattice,                 // closed under both, contains empty and full
};

const char* to_string(FamilyKind kind);

// Finite family of diagonal projections, deduplicated and canonically sorted.
// The constructor validates the closure discipline announced by `kind`.
class ProjectionFamily {
 public:
  ProjectionFamily(int universe, FamilyKind kind, std::vector<IndexSet> sets);

  int universe() const { return universe_; }
  FamilyKind kind() const { return kind_; }
  const std::vector<IndexSet>& sets() const { return sets_; }
  bool contains(const IndexSet& s) const;
  bool operator==(const ProjectionFamily& o) const;

 private:
  int universe_ = 0;
  FamilyKind kind_ = FamilyKind::Lattice;
  std::vector<IndexSet> sets_;
};

// Disjoint nonempty cells covering {0, ..., universe-1}.
class Partition {
 public:
  Partition() = default;
  Partition(int universe, std::vector<IndexSet> cells);

  int universe() const { return universe_; }
  const std::vector<IndexSet>& cells() const { return cells_; }
  int cell_of(int i) const;
  Pattern as_pattern() const;  // union of cell x cell diagonal blocks
  bool operator==(const Partition& o) const;

 private:
  int universe_ = 0;
  std::vector<IndexSet> cells_;
  std::vector<int> cell_index_;
};

// Groups indices by their membership profile across `sets`; the cells are the
// minimal projections of the bicommutant of the family.
Partition profile_partition(int universe, const std::vector<IndexSet>& sets);

// "RxC:<fnv1a64 hex>" over dimensions and entry bits.
std::string digest(const Pattern& p);

std::string to_string(const IndexSet& s);
std::string to_string(const Pattern& p);
std::vector<std::string> grid_lines(const Pattern& p);

}  // namespace bimod
