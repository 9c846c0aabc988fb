#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

namespace ppq {

struct Variable {
  int id = -1;
  std::string name;
  std::vector<std::string> values;  // length >= 2

  int value_index(const std::string& v) const;
  bool is_binary_tf() const { return values.size() == 2 && values[0] == "t" && values[1] == "f"; }
};

// Full joint distribution, row-major over `order` (each variable's values
// cycle fastest at the rightmost position of `order`).
struct JointTable {
  std::vector<int> order;      // permutation of variable ids
  std::vector<double> probs;   // length = product of domain sizes
};

struct BayesNode {
  int var = -1;
  std::vector<int> parents;
  // One row per parent-value combination (row-major over parents in listed
  // order); each row is a distribution over the variable's values.
  std::vector<std::vector<double>> cpt;
};

struct BayesNet {
  std::vector<BayesNode> nodes;  // indexed by variable id
};

// Immutable probability model. Safe to share across concurrent queries.
class KnowledgeBase {
 public:
  KnowledgeBase(std::string name, std::vector<Variable> variables,
                std::variant<JointTable, BayesNet> body);

  const std::string& name() const { return name_; }
  const std::vector<Variable>& variables() const { return variables_; }
  const Variable& variable(int id) const { return variables_.at(static_cast<std::size_t>(id)); }
  int num_variables() const { return static_cast<int>(variables_.size()); }
  std::optional<int> find_variable(const std::string& name) const;

  bool is_joint_table() const { return std::holds_alternative<JointTable>(body_); }
  const JointTable& joint_table() const { return std::get<JointTable>(body_); }
  const BayesNet& bayes_net() const { return std::get<BayesNet>(body_); }

  // P(full assignment); `assignment[id]` is a value index for variable `id`.
  double joint_probability(const std::vector<int>& assignment) const;

  // Number of full assignments (product of domain sizes); throws if it
  // exceeds 2^62.
  std::uint64_t assignment_count() const;

 private:
  std::string name_;
  std::vector<Variable> variables_;
  std::variant<JointTable, BayesNet> body_;
  std::unordered_map<std::string, int> index_;
};

// Parse and validate a KB document (see README for the JSON schema).
KnowledgeBase load_kb(const std::string& text);
KnowledgeBase load_kb_file(const std::string& path);

// Calls fn(assignment) for every full assignment, in row-major order over
// declared variable order. Intended for desk-scale models only.
template <typename Fn>
void for_each_assignment(const KnowledgeBase& kb, Fn&& fn) {
  const int n = kb.num_variables();
  std::vector<int> a(static_cast<std::size_t>(n), 0);
  for (;;) {
    fn(const_cast<const std::vector<int>&>(a));
    int i = n - 1;
    while (i >= 0) {
      if (++a[static_cast<std::size_t>(i)] <
          static_cast<int>(kb.variable(i).values.size()))
        break;
      a[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
  }
}

}  // namespace ppq
