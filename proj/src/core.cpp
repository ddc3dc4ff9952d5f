#include "bimod/core.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <set>
#include <sstream>

namespace bimod {

namespace {

constexpr int kWordBits = 64;

int word_count(int universe) { return (universe + kWordBits - 1) / kWordBits; }

std::uint64_t tail_mask(int universe) {
  const int rem = universe % kWordBits;
  return rem == 0 ? ~std::uint64_t{0} : ((std::uint64_t{1} << rem) - 1);
}

}  // namespace

IndexSet::IndexSet(int universe) : universe_(universe) {
  if (universe < 0) throw input_error("IndexSet universe must be nonnegative");
  words_.assign(word_count(universe), 0);
}

IndexSet IndexSet::full(int universe) {
  IndexSet s(universe);
  if (universe == 0) return s;
  for (auto& w : s.words_) w = ~std::uint64_t{0};
  s.words_.back() &= tail_mask(universe);
  return s;
}

IndexSet IndexSet::of(int universe, std::initializer_list<int> members) {
  IndexSet s(universe);
  for (int m : members) s.insert(m);
  return s;
}

IndexSet IndexSet::from_members(int universe, const std::vector<int>& members) {
  IndexSet s(universe);
  for (int m : members) s.insert(m);
  return s;
}

bool IndexSet::contains(int i) const {
  if (i < 0 || i >= universe_) return false;
  return (words_[i / kWordBits] >> (i % kWordBits)) & 1u;
}

void IndexSet::insert(int i) {
  if (i < 0 || i >= universe_)
    throw input_error("IndexSet member " + std::to_string(i) +
                      " out of range for universe " + std::to_string(universe_));
  words_[i / kWordBits] |= std::uint64_t{1} << (i % kWordBits);
}

void IndexSet::erase(int i) {
  if (i < 0 || i >= universe_) return;
  words_[i / kWordBits] &= ~(std::uint64_t{1} << (i % kWordBits));
}

int IndexSet::count() const {
  int n = 0;
  for (auto w : words_) n += std::popcount(w);
  return n;
}

void IndexSet::check_same_universe(const IndexSet& o) const {
  if (universe_ != o.universe_)
    throw input_error("IndexSet universe mismatch: " + std::to_string(universe_) +
                      " vs " + std::to_string(o.universe_));
}

IndexSet IndexSet::operator|(const IndexSet& o) const {
  IndexSet r = *this;
  r |= o;
  return r;
}

IndexSet IndexSet::operator&(const IndexSet& o) const {
  IndexSet r = *this;
  r &= o;
  return r;
}

IndexSet IndexSet::operator-(const IndexSet& o) const {
  check_same_universe(o);
  IndexSet r = *this;
  for (std::size_t k = 0; k < words_.size(); ++k) r.words_[k] &= ~o.words_[k];
  return r;
}

IndexSet& IndexSet::operator|=(const IndexSet& o) {
  check_same_universe(o);
  for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
  return *this;
}

IndexSet& IndexSet::operator&=(const IndexSet& o) {
  check_same_universe(o);
  for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
  return *this;
}

IndexSet IndexSet::complement() const {
  IndexSet r(universe_);
  for (std::size_t k = 0; k < words_.size(); ++k) r.words_[k] = ~words_[k];
  if (!r.words_.empty()) r.words_.back() &= tail_mask(universe_);
  return r;
}

bool IndexSet::subset_of(const IndexSet& o) const {
  check_same_universe(o);
  for (std::size_t k = 0; k < words_.size(); ++k)
    if (words_[k] & ~o.words_[k]) return false;
  return true;
}

bool IndexSet::intersects(const IndexSet& o) const {
  check_same_universe(o);
  for (std::size_t k = 0; k < words_.size(); ++k)
    if (words_[k] & o.words_[k]) return true;
  return false;
}

bool IndexSet::operator==(const IndexSet& o) const {
  return universe_ == o.universe_ && words_ == o.words_;
}

std::vector<int> IndexSet::members() const {
  std::vector<int> out;
  out.reserve(count());
  for (int i = 0; i < universe_; ++i)
    if (contains(i)) out.push_back(i);
  return out;
}

bool IndexSet::canonical_less(const IndexSet& a, const IndexSet& b) {
  const int ca = a.count(), cb = b.count();
  if (ca != cb) return ca < cb;
  // Equal cardinality: the set owning the lowest differing index comes first,
  // which matches lexicographic order of the sorted member lists.
  const std::size_t n = std::min(a.words_.size(), b.words_.size());
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint64_t d = a.words_[k] ^ b.words_[k];
    if (d) {
      const int bit = std::countr_zero(d);
      return (a.words_[k] >> bit) & 1u;
    }
  }
  return false;
}

Pattern::Pattern(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw input_error("Pattern dimensions must be nonnegative");
  stride_ = word_count(cols);
  words_.assign(static_cast<std::size_t>(rows) * stride_, 0);
}

Pattern Pattern::from_entries(int rows, int cols,
                              const std::vector<std::pair<int, int>>& entries) {
  Pattern p(rows, cols);
  for (auto [i, j] : entries) {
    if (i < 0 || i >= rows || j < 0 || j >= cols)
      throw input_error("pattern entry (" + std::to_string(i) + "," +
                        std::to_string(j) + ") out of range for " +
                        std::to_string(rows) + "x" + std::to_string(cols));
    p.set(i, j);
  }
  return p;
}

Pattern Pattern::from_grid(const std::vector<std::string>& grid) {
  const int rows = static_cast<int>(grid.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(grid[0].size());
  Pattern p(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(grid[i].size()) != cols)
      throw input_error("grid rows must have equal length");
    for (int j = 0; j < cols; ++j) {
      const char ch = grid[i][j];
      if (ch == '1')
        p.set(i, j);
      else if (ch != '0')
        throw input_error(std::string("grid character must be '0' or '1', got '") +
                          ch + "'");
    }
  }
  return p;
}

Pattern Pattern::full(int rows, int cols) {
  Pattern p(rows, cols);
  for (int i = 0; i < rows; ++i) p.set_row(i, IndexSet::full(cols));
  return p;
}

bool Pattern::at(int i, int j) const {
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_) return false;
  return (words_[static_cast<std::size_t>(i) * stride_ + j / kWordBits] >>
          (j % kWordBits)) &
         1u;
}

void Pattern::set(int i, int j, bool value) {
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
    throw input_error("pattern index out of range");
  auto& w = words_[static_cast<std::size_t>(i) * stride_ + j / kWordBits];
  const std::uint64_t bit = std::uint64_t{1} << (j % kWordBits);
  if (value)
    w |= bit;
  else
    w &= ~bit;
}

int Pattern::count() const {
  int n = 0;
  for (auto w : words_) n += std::popcount(w);
  return n;
}

std::vector<std::pair<int, int>> Pattern::entries() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(count());
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (at(i, j)) out.emplace_back(i, j);
  return out;
}

IndexSet Pattern::row_set(int i) const {
  IndexSet out(cols_);
  if (i < 0 || i >= rows_) return out;
  for (int j = 0; j < cols_; ++j)
    if (at(i, j)) out.insert(j);
  return out;
}

IndexSet Pattern::row_support() const {
  IndexSet s(rows_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < stride_; ++k)
      if (words_[static_cast<std::size_t>(i) * stride_ + k]) {
        s.insert(i);
        break;
      }
  }
  return s;
}

IndexSet Pattern::col_support() const {
  IndexSet s(cols_);
  for (int j = 0; j < cols_; ++j)
    for (int i = 0; i < rows_; ++i)
      if (at(i, j)) {
        s.insert(j);
        break;
      }
  return s;
}

void Pattern::set_row(int i, const IndexSet& cols) {
  if (cols.universe() != cols_) throw input_error("row assignment width mismatch");
  if (i < 0 || i >= rows_) throw input_error("row index out of range");
  const auto& w = cols.words();
  for (int k = 0; k < stride_; ++k)
    words_[static_cast<std::size_t>(i) * stride_ + k] = w[k];
}

Pattern Pattern::transpose() const {
  Pattern t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (at(i, j)) t.set(j, i);
  return t;
}

void Pattern::check_same_shape(const Pattern& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw input_error("pattern shape mismatch: " + std::to_string(rows_) + "x" +
                      std::to_string(cols_) + " vs " + std::to_string(o.rows_) + "x" +
                      std::to_string(o.cols_));
}

bool Pattern::subset_of(const Pattern& o) const {
  check_same_shape(o);
  for (std::size_t k = 0; k < words_.size(); ++k)
    if (words_[k] & ~o.words_[k]) return false;
  return true;
}

bool Pattern::operator==(const Pattern& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && words_ == o.words_;
}

Pattern Pattern::operator|(const Pattern& o) const {
  check_same_shape(o);
  Pattern r = *this;
  for (std::size_t k = 0; k < words_.size(); ++k) r.words_[k] |= o.words_[k];
  return r;
}

Pattern Pattern::operator&(const Pattern& o) const {
  check_same_shape(o);
  Pattern r = *this;
  for (std::size_t k = 0; k < words_.size(); ++k) r.words_[k] &= o.words_[k];
  return r;
}

Pattern Pattern::operator-(const Pattern& o) const {
  check_same_shape(o);
  Pattern r = *this;
  for (std::size_t k = 0; k < words_.size(); ++k) r.words_[k] &= ~o.words_[k];
  return r;
}

Pattern compose(const Pattern& a, const Pattern& b) {
  if (a.cols() != b.rows())
    throw input_error("compose: inner dimensions differ (" + std::to_string(a.cols()) +
                      " vs " + std::to_string(b.rows()) + ")");
  Pattern r(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    IndexSet acc(b.cols());
    for (int j : a.row_set(i).members()) acc |= b.row_set(j);
    r.set_row(i, acc);
  }
  return r;
}

Pattern compose(const Pattern& a, const Pattern& b, const Pattern& c) {
  return compose(compose(a, b), c);
}

const char* to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::JoinClosedWithZero:
      return "join-closed-with-zero";
    case FamilyKind::MeetClosedWithIdentity:
      return "meet-closed-with-identity";
    case FamilyKind::Lattice:
      return "lattice";
  }
  return "?";
}

ProjectionFamily::ProjectionFamily(int universe, FamilyKind kind,
                                   std::vector<IndexSet> sets)
    : universe_(universe), kind_(kind), sets_(std::move(sets)) {
  for (const auto& s : sets_)
    if (s.universe() != universe_)
      throw input_error("projection family member universe mismatch");
  std::sort(sets_.begin(), sets_.end(), IndexSet::canonical_less);
  sets_.erase(std::unique(sets_.begin(), sets_.end()), sets_.end());

  const bool need_join = kind_ != FamilyKind::MeetClosedWithIdentity;
  const bool need_meet = kind_ != FamilyKind::JoinClosedWithZero;
  std::set<std::vector<std::uint64_t>> member_words;
  for (const auto& s : sets_) member_words.insert(s.words());
  auto has = [&member_words](const IndexSet& s) {
    return member_words.count(s.words()) > 0;
  };
  if (need_join && !has(IndexSet(universe_)))
    throw invariant_violation("family tagged " + std::string(to_string(kind_)) +
                              " lacks the zero projection");
  if (need_meet && !has(IndexSet::full(universe_)))
    throw invariant_violation("family tagged " + std::string(to_string(kind_)) +
                              " lacks the identity projection");
  for (std::size_t x = 0; x < sets_.size(); ++x)
    for (std::size_t y = x + 1; y < sets_.size(); ++y) {
      if (need_join && !has(sets_[x] | sets_[y]))
        throw invariant_violation("family not closed under union: " +
                                  bimod::to_string(sets_[x]) + " | " +
                                  bimod::to_string(sets_[y]));
      if (need_meet && !has(sets_[x] & sets_[y]))
        throw invariant_violation("family not closed under intersection: " +
                                  bimod::to_string(sets_[x]) + " & " +
                                  bimod::to_string(sets_[y]));
    }
}

bool ProjectionFamily::contains(const IndexSet& s) const {
  for (const auto& m : sets_)
    if (m == s) return true;
  return false;
}

bool ProjectionFamily::operator==(const ProjectionFamily& o) const {
  return universe_ == o.universe_ && kind_ == o.kind_ && sets_ == o.sets_;
}

Partition::Partition(int universe, std::vector<IndexSet> cells)
    : universe_(universe), cells_(std::move(cells)) {
  std::sort(cells_.begin(), cells_.end(), IndexSet::canonical_less);
  cell_index_.assign(universe_, -1);
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    if (cells_[c].universe() != universe_)
      throw invariant_violation("partition cell universe mismatch");
    if (cells_[c].empty()) throw invariant_violation("partition cell is empty");
    for (int i : cells_[c].members()) {
      if (cell_index_[i] != -1)
        throw invariant_violation("partition cells overlap at index " +
                                  std::to_string(i));
      cell_index_[i] = static_cast<int>(c);
    }
  }
  for (int i = 0; i < universe_; ++i)
    if (cell_index_[i] == -1)
      throw invariant_violation("partition does not cover index " + std::to_string(i));
}

int Partition::cell_of(int i) const {
  if (i < 0 || i >= universe_) throw input_error("partition index out of range");
  return cell_index_[i];
}

Pattern Partition::as_pattern() const {
  Pattern p(universe_, universe_);
  for (const auto& cell : cells_)
    for (int i : cell.members()) p.set_row(i, cell);
  return p;
}

bool Partition::operator==(const Partition& o) const {
  return universe_ == o.universe_ && cells_ == o.cells_;
}

Partition profile_partition(int universe, const std::vector<IndexSet>& sets) {
  std::vector<IndexSet> profiles;
  profiles.reserve(universe);
  for (int i = 0; i < universe; ++i) {
    IndexSet prof(static_cast<int>(sets.size()));
    for (std::size_t k = 0; k < sets.size(); ++k)
      if (sets[k].contains(i)) prof.insert(static_cast<int>(k));
    profiles.push_back(std::move(prof));
  }
  std::vector<IndexSet> cells;
  std::vector<bool> assigned(universe, false);
  for (int i = 0; i < universe; ++i) {
    if (assigned[i]) continue;
    IndexSet cell(universe);
    for (int j = i; j < universe; ++j)
      if (!assigned[j] && profiles[j] == profiles[i]) {
        cell.insert(j);
        assigned[j] = true;
      }
    cells.push_back(std::move(cell));
  }
  return Partition(universe, std::move(cells));
}

std::string digest(const Pattern& p) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a 64
  auto mix = [&h](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  mix(static_cast<std::uint64_t>(p.rows()));
  mix(static_cast<std::uint64_t>(p.cols()));
  for (int i = 0; i < p.rows(); ++i)
    for (int k = 0; k < (p.cols() + kWordBits - 1) / kWordBits; ++k) {
      std::uint64_t w = 0;
      for (int j = k * kWordBits; j < std::min(p.cols(), (k + 1) * kWordBits); ++j)
        if (p.at(i, j)) w |= std::uint64_t{1} << (j % kWordBits);
      mix(w);
    }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%dx%d:%016llx", p.rows(), p.cols(),
                static_cast<unsigned long long>(h));
  return buf;
}

std::string to_string(const IndexSet& s) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int m : s.members()) {
    if (!first) os << ',';
    os << m;
    first = false;
  }
  os << '}';
  return os.str();
}

std::string to_string(const Pattern& p) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (auto [i, j] : p.entries()) {
    if (!first) os << ',';
    os << '(' << i << ',' << j << ')';
    first = false;
  }
  os << '}';
  return os.str();
}

std::vector<std::string> grid_lines(const Pattern& p) {
  std::vector<std::string> lines;
  lines.reserve(p.rows());
  for (int i = 0; i < p.rows(); ++i) {
    std::string line(p.cols(), '0');
    for (int j = 0; j < p.cols(); ++j)
      if (p.at(i, j)) line[j] = '1';
    lines.push_back(std::move(line));
  }
  return lines;
}

}  // namespace bimod
