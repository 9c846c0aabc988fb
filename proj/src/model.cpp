#include "ppq/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ppq/errors.hpp"

namespace ppq {

namespace {

constexpr double kSumTolerance = 1e-9;

void check_distribution(const std::vector<double>& probs, const std::string& what) {
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0))
      throw ValidationError(what + ": negative or non-finite probability " + std::to_string(p));
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSumTolerance)
    throw ValidationError(what + ": probabilities sum to " + std::to_string(sum) + ", expected 1");
}

}  // namespace

int Variable::value_index(const std::string& v) const {
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] == v) return static_cast<int>(i);
  return -1;
}

KnowledgeBase::KnowledgeBase(std::string name, std::vector<Variable> variables,
                             std::variant<JointTable, BayesNet> body)
    : name_(std::move(name)), variables_(std::move(variables)), body_(std::move(body)) {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    Variable& v = variables_[i];
    v.id = static_cast<int>(i);
    if (v.values.size() < 2)
      throw ValidationError("variable '" + v.name + "': domain must have at least 2 values");
    for (std::size_t a = 0; a < v.values.size(); ++a)
      for (std::size_t b = a + 1; b < v.values.size(); ++b)
        if (v.values[a] == v.values[b])
          throw ValidationError("variable '" + v.name + "': duplicate value '" + v.values[a] + "'");
    if (!index_.emplace(v.name, v.id).second)
      throw ValidationError("duplicate variable name '" + v.name + "'");
  }

  if (is_joint_table()) {
    const JointTable& jt = std::get<JointTable>(body_);
    if (jt.order.size() != variables_.size())
      throw ValidationError("joint order must list every variable exactly once");
    std::vector<bool> seen(variables_.size(), false);
    std::uint64_t cells = 1;
    for (int id : jt.order) {
      if (id < 0 || id >= num_variables() || seen[static_cast<std::size_t>(id)])
        throw ValidationError("joint order must list every variable exactly once");
      seen[static_cast<std::size_t>(id)] = true;
      cells *= variables_[static_cast<std::size_t>(id)].values.size();
    }
    if (jt.probs.size() != cells)
      throw ValidationError("joint table has " + std::to_string(jt.probs.size()) +
                            " entries, expected " + std::to_string(cells));
    check_distribution(jt.probs, "joint table");
  } else {
    const BayesNet& bn = std::get<BayesNet>(body_);
    if (bn.nodes.size() != variables_.size())
      throw ValidationError("network must define every variable exactly once");
    for (std::size_t i = 0; i < bn.nodes.size(); ++i) {
      const BayesNode& node = bn.nodes[i];
      const Variable& var = variables_[i];
      if (node.var != static_cast<int>(i))
        throw ValidationError("network nodes must be indexed by variable id");
      std::size_t rows = 1;
      for (int p : node.parents) {
        if (p < 0 || p >= num_variables() || p == node.var)
          throw ValidationError("variable '" + var.name + "': invalid parent");
        rows *= variables_[static_cast<std::size_t>(p)].values.size();
      }
      if (node.cpt.size() != rows)
        throw ValidationError("variable '" + var.name + "': CPT has " +
                              std::to_string(node.cpt.size()) + " rows, expected " +
                              std::to_string(rows));
      for (const auto& row : node.cpt) {
        if (row.size() != var.values.size())
          throw ValidationError("variable '" + var.name + "': CPT row width mismatch");
        check_distribution(row, "variable '" + var.name + "' CPT row");
      }
    }
    // Acyclicity by iterated removal of parent-free nodes.
    std::vector<int> remaining_parents(bn.nodes.size());
    std::vector<std::vector<int>> children(bn.nodes.size());
    for (const BayesNode& node : bn.nodes) {
      remaining_parents[static_cast<std::size_t>(node.var)] =
          static_cast<int>(node.parents.size());
      for (int p : node.parents) children[static_cast<std::size_t>(p)].push_back(node.var);
    }
    std::vector<int> queue;
    for (std::size_t i = 0; i < bn.nodes.size(); ++i)
      if (remaining_parents[i] == 0) queue.push_back(static_cast<int>(i));
    std::size_t removed = 0;
    while (!queue.empty()) {
      int v = queue.back();
      queue.pop_back();
      ++removed;
      for (int c : children[static_cast<std::size_t>(v)])
        if (--remaining_parents[static_cast<std::size_t>(c)] == 0) queue.push_back(c);
    }
    if (removed != bn.nodes.size())
      throw ValidationError("network parent graph contains a cycle");
  }
}

std::optional<int> KnowledgeBase::find_variable(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint64_t KnowledgeBase::assignment_count() const {
  std::uint64_t count = 1;
  for (const Variable& v : variables_) {
    if (count > (std::uint64_t{1} << 62) / v.values.size())
      throw ValidationError("assignment space too large to enumerate");
    count *= v.values.size();
  }
  return count;
}

double KnowledgeBase::joint_probability(const std::vector<int>& assignment) const {
  if (assignment.size() != variables_.size())
    throw ValidationError("assignment must cover every variable");
  for (std::size_t i = 0; i < assignment.size(); ++i)
    if (assignment[i] < 0 || assignment[i] >= static_cast<int>(variables_[i].values.size()))
      throw ValidationError("assignment value out of range for variable '" + variables_[i].name +
                            "'");
  if (is_joint_table()) {
    const JointTable& jt = std::get<JointTable>(body_);
    std::size_t idx = 0;
    for (int id : jt.order) {
      idx = idx * variables_[static_cast<std::size_t>(id)].values.size() +
            static_cast<std::size_t>(assignment[static_cast<std::size_t>(id)]);
    }
    return jt.probs[idx];
  }
  const BayesNet& bn = std::get<BayesNet>(body_);
  double p = 1.0;
  for (const BayesNode& node : bn.nodes) {
    std::size_t row = 0;
    for (int parent : node.parents)
      row = row * variables_[static_cast<std::size_t>(parent)].values.size() +
            static_cast<std::size_t>(assignment[static_cast<std::size_t>(parent)]);
    p *= node.cpt[row][static_cast<std::size_t>(assignment[static_cast<std::size_t>(node.var)])];
  }
  return p;
}

KnowledgeBase load_kb(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("KB document: ") + e.what());
  }

  try {
    if (!doc.is_object() || !doc.contains("variables"))
      throw ValidationError("KB document must be an object with a 'variables' array");

    std::vector<Variable> vars;
    for (const auto& jv : doc.at("variables")) {
      Variable v;
      v.name = jv.at("name").get<std::string>();
      v.values = jv.at("values").get<std::vector<std::string>>();
      vars.push_back(std::move(v));
    }
    std::unordered_map<std::string, int> ids;
    for (std::size_t i = 0; i < vars.size(); ++i) ids.emplace(vars[i].name, static_cast<int>(i));
    auto resolve = [&](const std::string& name) {
      auto it = ids.find(name);
      if (it == ids.end()) throw ValidationError("unknown variable '" + name + "'");
      return it->second;
    };

    std::string name = doc.value("name", std::string("kb"));

    if (doc.contains("joint")) {
      JointTable jt;
      for (const auto& jn : doc.at("joint").at("order"))
        jt.order.push_back(resolve(jn.get<std::string>()));
      jt.probs = doc.at("joint").at("probs").get<std::vector<double>>();
      return KnowledgeBase(std::move(name), std::move(vars), std::move(jt));
    }
    if (doc.contains("network")) {
      BayesNet bn;
      bn.nodes.resize(vars.size());
      std::vector<bool> defined(vars.size(), false);
      for (const auto& jn : doc.at("network")) {
        BayesNode node;
        node.var = resolve(jn.at("var").get<std::string>());
        if (defined[static_cast<std::size_t>(node.var)])
          throw ValidationError("variable '" + vars[static_cast<std::size_t>(node.var)].name +
                                "' defined twice in network");
        defined[static_cast<std::size_t>(node.var)] = true;
        if (jn.contains("parents"))
          for (const auto& jp : jn.at("parents")) node.parents.push_back(resolve(jp.get<std::string>()));
        node.cpt = jn.at("cpt").get<std::vector<std::vector<double>>>();
        bn.nodes[static_cast<std::size_t>(node.var)] = std::move(node);
      }
      for (std::size_t i = 0; i < vars.size(); ++i)
        if (!defined[i])
          throw ValidationError("variable '" + vars[i].name + "' missing from network");
      return KnowledgeBase(std::move(name), std::move(vars), std::move(bn));
    }
    throw ValidationError("KB document must contain 'joint' or 'network'");
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("KB document: ") + e.what());
  }
}

KnowledgeBase load_kb_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open KB file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_kb(buf.str());
}

}  // namespace ppq
