#include "smk/structure.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

namespace smk {

uint64_t tuple_count(size_t n, int k) {
  uint64_t c = 1;
  for (int i = 0; i < k; ++i) {
    if (n != 0 && c > std::numeric_limits<uint64_t>::max() / n) return std::numeric_limits<uint64_t>::max();
    c *= n;
  }
  return c;
}

size_t tuple_index(const Tuple& t, size_t n) {
  size_t idx = 0;
  for (int e : t) idx = idx * n + static_cast<size_t>(e);
  return idx;
}

Tuple tuple_at(size_t index, size_t n, int k) {
  Tuple t(k);
  for (int i = k - 1; i >= 0; --i) {
    t[i] = static_cast<int>(index % n);
    index /= n;
  }
  return t;
}

namespace {

size_t table_size(size_t n, int k) {
  uint64_t c = tuple_count(n, k);
  if (c > (uint64_t(1) << 26)) throw ResourceLimit("table of arity " + std::to_string(k) + " too large");
  return static_cast<size_t>(c);
}

}  // namespace

FiniteStructure::FiniteStructure(std::vector<std::string> domain) : domain_(std::move(domain)) {
  if (domain_.empty()) throw SyntaxError("structure domain must be nonempty");
  for (size_t i = 0; i < domain_.size(); ++i) {
    if (!index_.emplace(domain_[i], static_cast<int>(i)).second) {
      throw SyntaxError("duplicate domain element '" + domain_[i] + "'");
    }
  }
}

int FiniteStructure::element(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw SyntaxError("unknown domain element '" + name + "'");
  return it->second;
}

void FiniteStructure::add_relation(const std::string& name, int arity) {
  vocabulary_.add_predicate(name, arity);
  relations_.try_emplace(name, table_size(size(), arity), 0);
}

void FiniteStructure::add_function(const std::string& name, int arity) {
  vocabulary_.add_function(name, arity);
  functions_.try_emplace(name, table_size(size(), arity), 0);
}

const std::vector<char>& FiniteStructure::relation_table(const std::string& pred) const {
  auto it = relations_.find(pred);
  if (it == relations_.end()) throw SyntaxError("structure does not interpret predicate '" + pred + "'");
  return it->second;
}

std::vector<char>& FiniteStructure::relation_table(const std::string& pred) {
  auto it = relations_.find(pred);
  if (it == relations_.end()) throw SyntaxError("structure does not interpret predicate '" + pred + "'");
  return it->second;
}

const std::vector<int>& FiniteStructure::function_table(const std::string& fun) const {
  auto it = functions_.find(fun);
  if (it == functions_.end()) throw SyntaxError("structure does not interpret function '" + fun + "'");
  return it->second;
}

std::vector<int>& FiniteStructure::function_table(const std::string& fun) {
  auto it = functions_.find(fun);
  if (it == functions_.end()) throw SyntaxError("structure does not interpret function '" + fun + "'");
  return it->second;
}

bool FiniteStructure::holds(const std::string& pred, const Tuple& args) const {
  return relation_table(pred)[tuple_index(args, size())] != 0;
}

void FiniteStructure::set(const std::string& pred, const Tuple& args, bool value) {
  if (static_cast<int>(args.size()) != vocabulary_.predicate_arity(pred)) {
    throw SyntaxError("arity mismatch for '" + pred + "'");
  }
  relation_table(pred)[tuple_index(args, size())] = value ? 1 : 0;
}

int FiniteStructure::value(const std::string& fun, const Tuple& args) const {
  return function_table(fun)[tuple_index(args, size())];
}

void FiniteStructure::set_value(const std::string& fun, const Tuple& args, int v) {
  if (static_cast<int>(args.size()) != vocabulary_.function_arity(fun)) {
    throw SyntaxError("arity mismatch for '" + fun + "'");
  }
  if (v < 0 || static_cast<size_t>(v) >= size()) throw SyntaxError("function value out of domain");
  function_table(fun)[tuple_index(args, size())] = v;
}

std::vector<Tuple> FiniteStructure::tuples(const std::string& pred) const {
  const auto& table = relation_table(pred);
  int k = vocabulary_.predicate_arity(pred);
  std::vector<Tuple> out;
  for (size_t i = 0; i < table.size(); ++i) {
    if (table[i]) out.push_back(tuple_at(i, size(), k));
  }
  return out;
}

FiniteStructure FiniteStructure::restrict(const Vocabulary& v) const {
  FiniteStructure out(domain_);
  for (const auto& [name, k] : v.predicates()) {
    out.vocabulary_.add_predicate(name, k);
    out.relations_[name] = relation_table(name);
  }
  for (const auto& [name, k] : v.functions()) {
    out.vocabulary_.add_function(name, k);
    out.functions_[name] = function_table(name);
  }
  return out;
}

void FiniteStructure::absorb(const FiniteStructure& other) {
  if (other.domain_ != domain_) throw SyntaxError("structures over different domains");
  for (const auto& [name, k] : other.vocabulary_.predicates()) {
    if (vocabulary_.has_predicate(name)) continue;
    vocabulary_.add_predicate(name, k);
    relations_[name] = other.relations_.at(name);
  }
  for (const auto& [name, k] : other.vocabulary_.functions()) {
    if (vocabulary_.has_function(name)) continue;
    vocabulary_.add_function(name, k);
    functions_[name] = other.functions_.at(name);
  }
}

bool FiniteStructure::operator==(const FiniteStructure& other) const {
  return domain_ == other.domain_ && vocabulary_ == other.vocabulary_ && relations_ == other.relations_ &&
         functions_ == other.functions_;
}

// ---------------------------------------------------------------------------

std::string to_string(const GroundAtom& a, const FiniteStructure& s) {
  if (a.args.empty()) return a.predicate;
  std::string out = a.predicate + "(";
  for (size_t i = 0; i < a.args.size(); ++i) {
    if (i) out += ",";
    out += s.element_name(a.args[i]);
  }
  return out + ")";
}

std::set<GroundAtom> instances(const FiniteStructure& s, const std::set<std::string>& preds) {
  std::set<GroundAtom> out;
  for (const auto& p : preds) {
    if (!s.vocabulary().has_predicate(p)) throw SyntaxError("unknown predicate '" + p + "'");
    for (auto& t : s.tuples(p)) out.insert(GroundAtom{p, std::move(t)});
  }
  return out;
}

uint64_t expansion_count(size_t n, const Vocabulary& extra) {
  constexpr uint64_t kMax = std::numeric_limits<uint64_t>::max();
  uint64_t total = 1;
  auto mul = [&](uint64_t base, uint64_t exponent) {
    for (uint64_t i = 0; i < exponent; ++i) {
      if (base != 0 && total > kMax / base) {
        total = kMax;
        return;
      }
      total *= base;
    }
  };
  for (const auto& [name, k] : extra.predicates()) mul(2, tuple_count(n, k));
  for (const auto& [name, k] : extra.functions()) mul(n, tuple_count(n, k));
  return total;
}

ExpansionStream::ExpansionStream(FiniteStructure base, const Vocabulary& extra, uint64_t cap)
    : base_(std::move(base)) {
  for (const auto& name : extra.names()) {
    if (base_.interprets(name)) throw PreconditionError("expansion symbol '" + name + "' already interpreted");
  }
  count_ = expansion_count(base_.size(), extra);
  if (count_ > cap) {
    throw ResourceLimit("expansion count " + std::to_string(count_) + " exceeds cap " + std::to_string(cap));
  }
  for (const auto& [name, k] : extra.predicates()) {
    base_.add_relation(name, k);
    for (size_t i = 0; i < tuple_count(base_.size(), k); ++i) cells_.push_back({name, false, i});
  }
  for (const auto& [name, k] : extra.functions()) {
    base_.add_function(name, k);
    for (size_t i = 0; i < tuple_count(base_.size(), k); ++i) cells_.push_back({name, true, i});
  }
  digits_.assign(cells_.size(), 0);
}

void ExpansionStream::restart() {
  digits_.assign(cells_.size(), 0);
  started_ = false;
  done_ = false;
}

std::optional<FiniteStructure> ExpansionStream::next() {
  if (done_) return std::nullopt;
  if (started_) {
    size_t i = cells_.size();
    for (;;) {
      if (i == 0) {
        done_ = true;
        return std::nullopt;
      }
      --i;
      int radix = cells_[i].function ? static_cast<int>(base_.size()) : 2;
      if (++digits_[i] < radix) break;
      digits_[i] = 0;
    }
  }
  started_ = true;
  FiniteStructure out = base_;
  for (size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i].function) {
      out.function_table(cells_[i].symbol)[cells_[i].index] = digits_[i];
    } else {
      out.relation_table(cells_[i].symbol)[cells_[i].index] = static_cast<char>(digits_[i]);
    }
  }
  return out;
}

std::vector<FiniteStructure> expansions(const FiniteStructure& s, const Vocabulary& extra, uint64_t cap) {
  ExpansionStream stream(s, extra, cap);
  std::vector<FiniteStructure> out;
  while (auto e = stream.next()) out.push_back(std::move(*e));
  return out;
}

// ---------------------------------------------------------------------------
// File format

namespace {

std::vector<std::string> split_words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

[[noreturn]] void structure_error(int line, const std::string& msg) {
  throw SyntaxError("structure line " + std::to_string(line) + ": " + msg);
}

}  // namespace

FiniteStructure parse_structure(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  std::optional<FiniteStructure> s;
  std::string section;
  bool section_function = false;
  int section_arity = 0;
  std::map<std::string, std::vector<char>> assigned;

  auto finish_section = [&](int line) {
    if (!section_function || section.empty()) return;
    const auto& seen = assigned[section];
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
      structure_error(line, "function '" + section + "' is not total");
    }
  };

  while (std::getline(in, raw)) {
    ++lineno;
    if (auto pct = raw.find('%'); pct != std::string::npos) raw.erase(pct);
    auto words = split_words(raw);
    if (words.empty()) continue;

    if (words[0] == "domain:") {
      if (s) structure_error(lineno, "duplicate domain line");
      std::vector<std::string> elems(words.begin() + 1, words.end());
      try {
        s.emplace(elems);
      } catch (const SyntaxError& e) {
        structure_error(lineno, e.what());
      }
      continue;
    }
    if (words[0] == "rel" || words[0] == "fun") {
      if (!s) structure_error(lineno, "section before domain line");
      if (words.size() != 2 || words[1].back() != ':') structure_error(lineno, "expected '" + words[0] + " name/arity:'");
      std::string decl = words[1].substr(0, words[1].size() - 1);
      auto slash = decl.find('/');
      if (slash == std::string::npos || slash == 0) structure_error(lineno, "expected name/arity");
      std::string arity = decl.substr(slash + 1);
      if (arity.empty() || arity.find_first_not_of("0123456789") != std::string::npos) {
        structure_error(lineno, "bad arity '" + arity + "'");
      }
      finish_section(lineno);
      section = decl.substr(0, slash);
      section_function = words[0] == "fun";
      section_arity = std::stoi(arity);
      if (s->interprets(section)) structure_error(lineno, "duplicate symbol '" + section + "'");
      try {
        if (section_function) {
          s->add_function(section, section_arity);
          assigned[section].assign(tuple_count(s->size(), section_arity), 0);
        } else {
          s->add_relation(section, section_arity);
        }
      } catch (const Error& e) {
        structure_error(lineno, e.what());
      }
      continue;
    }
    if (section.empty()) structure_error(lineno, "tuple outside a section");

    Tuple t;
    if (!(words.size() == 1 && words[0] == "()")) {
      for (const auto& w : words) {
        try {
          t.push_back(s->element(w));
        } catch (const SyntaxError& e) {
          structure_error(lineno, e.what());
        }
      }
    }
    if (section_function) {
      if (static_cast<int>(t.size()) != section_arity + 1) {
        structure_error(lineno, "function '" + section + "' expects " + std::to_string(section_arity) +
                                    " arguments and a value");
      }
      int v = t.back();
      t.pop_back();
      auto& seen = assigned[section][tuple_index(t, s->size())];
      if (seen) structure_error(lineno, "function '" + section + "' defined twice on the same arguments");
      seen = 1;
      s->set_value(section, t, v);
    } else {
      if (static_cast<int>(t.size()) != section_arity) {
        structure_error(lineno, "relation '" + section + "' has arity " + std::to_string(section_arity));
      }
      s->set(section, t);
    }
  }
  finish_section(lineno);
  if (!s) throw SyntaxError("structure has no domain line");
  return *s;
}

std::string to_string(const FiniteStructure& s) {
  std::string out = "domain:";
  for (const auto& e : s.domain()) out += " " + e;
  out += "\n";
  for (const auto& [name, k] : s.vocabulary().predicates()) {
    out += "rel " + name + "/" + std::to_string(k) + ":\n";
    for (const auto& t : s.tuples(name)) {
      if (t.empty()) {
        out += "  ()\n";
        continue;
      }
      out += " ";
      for (int e : t) out += " " + s.element_name(e);
      out += "\n";
    }
  }
  for (const auto& [name, k] : s.vocabulary().functions()) {
    out += "fun " + name + "/" + std::to_string(k) + ":\n";
    const auto& table = s.function_table(name);
    for (size_t i = 0; i < table.size(); ++i) {
      out += " ";
      for (int e : tuple_at(i, s.size(), k)) out += " " + s.element_name(e);
      out += " " + s.element_name(table[i]) + "\n";
    }
  }
  return out;
}

bool is_successor_structure(const FiniteStructure& s) {
  const auto& v = s.vocabulary();
  if (!v.has_predicate("succ") || !v.has_predicate("first") || !v.has_predicate("last")) return false;
  if (v.predicate_arity("succ") != 2 || v.predicate_arity("first") != 1 || v.predicate_arity("last") != 1) {
    return false;
  }
  size_t n = s.size();
  std::vector<int> out_deg(n, 0), in_deg(n, 0);
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (const auto& t : s.tuples("succ")) {
    ++out_deg[t[0]];
    ++in_deg[t[1]];
    reach[t[0]][t[1]] = 1;
  }
  for (size_t i = 0; i < n; ++i) {
    if (out_deg[i] > 1 || in_deg[i] > 1) return false;
  }
  for (size_t k = 0; k < n; ++k) {
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) {
        if (reach[i][k] && reach[k][j]) reach[i][j] = 1;
      }
    }
  }
  for (size_t i = 0; i < n; ++i) {
    if (reach[i][i]) return false;
    for (size_t j = 0; j < n; ++j) {
      if (i != j && !reach[i][j] && !reach[j][i]) return false;
    }
  }
  for (size_t i = 0; i < n; ++i) {
    bool least = true, greatest = true;
    for (size_t j = 0; j < n; ++j) {
      if (reach[j][i]) least = false;
      if (reach[i][j]) greatest = false;
    }
    if (s.holds("first", {static_cast<int>(i)}) != least) return false;
    if (s.holds("last", {static_cast<int>(i)}) != greatest) return false;
  }
  return true;
}

}  // namespace smk
