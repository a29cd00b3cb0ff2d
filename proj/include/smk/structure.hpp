#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "smk/syntax.hpp"

namespace smk {

using Tuple = std::vector<int>;

/// Number of k-tuples over n elements, saturating at UINT64_MAX.
uint64_t tuple_count(size_t n, int k);
/// Position of a tuple in the lexicographic order of all k-tuples over n elements.
size_t tuple_index(const Tuple& t, size_t n);
Tuple tuple_at(size_t index, size_t n, int k);

/// Finite structure with element names in declaration order. Relations are
/// stored as membership tables over the lexicographic tuple order, functions
/// as value tables over the same order.
class FiniteStructure {
 public:
  FiniteStructure() = default;
  explicit FiniteStructure(std::vector<std::string> domain);

  size_t size() const { return domain_.size(); }
  const std::vector<std::string>& domain() const { return domain_; }
  int element(const std::string& name) const;
  const std::string& element_name(int e) const { return domain_.at(e); }

  const Vocabulary& vocabulary() const { return vocabulary_; }
  bool interprets(const std::string& name) const { return vocabulary_.contains(name); }

  /// Adds an all-false relation / a constant-first-element function.
  void add_relation(const std::string& name, int arity);
  void add_function(const std::string& name, int arity);

  bool holds(const std::string& pred, const Tuple& args) const;
  void set(const std::string& pred, const Tuple& args, bool value = true);
  int value(const std::string& fun, const Tuple& args) const;
  void set_value(const std::string& fun, const Tuple& args, int v);

  /// Tuples in the relation, in lexicographic order.
  std::vector<Tuple> tuples(const std::string& pred) const;
  const std::vector<char>& relation_table(const std::string& pred) const;
  const std::vector<int>& function_table(const std::string& fun) const;
  std::vector<char>& relation_table(const std::string& pred);
  std::vector<int>& function_table(const std::string& fun);

  /// Keeps only the symbols of v (which must be interpreted).
  FiniteStructure restrict(const Vocabulary& v) const;
  /// Copies in every symbol of other not interpreted here. Domains must agree.
  void absorb(const FiniteStructure& other);

  bool operator==(const FiniteStructure& other) const;

 private:
  std::vector<std::string> domain_;
  std::map<std::string, int> index_;
  Vocabulary vocabulary_;
  std::map<std::string, std::vector<char>> relations_;
  std::map<std::string, std::vector<int>> functions_;
};

struct GroundAtom {
  std::string predicate;
  Tuple args;

  auto operator<=>(const GroundAtom&) const = default;
  bool operator==(const GroundAtom&) const = default;
};

std::string to_string(const GroundAtom& a, const FiniteStructure& s);

/// Ins(s, preds).
std::set<GroundAtom> instances(const FiniteStructure& s, const std::set<std::string>& preds);

/// Number of expansions of a structure of the given size by the vocabulary.
/// Saturates at UINT64_MAX.
uint64_t expansion_count(size_t domain_size, const Vocabulary& extra);

/// All expansions of base by extra, in lexicographic order of the
/// concatenated tables (symbols sorted by kind then name, cells in tuple
/// order, last cell fastest). Restartable.
class ExpansionStream {
 public:
  ExpansionStream(FiniteStructure base, const Vocabulary& extra, uint64_t cap = uint64_t(1) << 24);

  uint64_t count() const { return count_; }
  void restart();
  /// Next expansion, or nullopt when exhausted.
  std::optional<FiniteStructure> next();

 private:
  struct Cell {
    std::string symbol;
    bool function;
    size_t index;
  };
  FiniteStructure base_;
  std::vector<Cell> cells_;
  std::vector<int> digits_;
  uint64_t count_ = 1;
  bool started_ = false;
  bool done_ = false;
};

std::vector<FiniteStructure> expansions(const FiniteStructure& s, const Vocabulary& extra,
                                        uint64_t cap = uint64_t(1) << 24);

/// Structure file format:
///   domain: a b c
///   rel e/2:
///     a b
///   rel p/0:
///     ()
///   fun f/1:
///     a b
/// One tuple per line; function lines list arguments then the value.
/// Missing function entries are an error. "%" starts a comment.
FiniteStructure parse_structure(std::string_view text);
/// Canonical form: symbols sorted by name within each kind, tuples in
/// lexicographic order, two-space indentation.
std::string to_string(const FiniteStructure& s);

/// succ/first/last form a successor structure: the transitive closure of
/// succ is a strict total order, succ is a partial injection in both
/// directions, first/last hold exactly the least/greatest element.
bool is_successor_structure(const FiniteStructure& s);

}  // namespace smk
