#pragma once

#include <map>
#include <string>
#include <vector>

#include "ustad/support/errors.hpp"

namespace ustad {

// Shared ordered variable table. Every polynomial, constraint system and
// template row refers to variables by dense index into one such table.
class VarTable {
 public:
  VarTable() = default;
  explicit VarTable(std::vector<std::string> names) {
    for (auto& n : names) add(n);
  }

  int add(const std::string& name) {
    auto it = index_.find(name);
    if (it != index_.end()) return it->second;
    names_.push_back(name);
    index_[name] = static_cast<int>(names_.size()) - 1;
    return static_cast<int>(names_.size()) - 1;
  }

  // -1 when absent.
  int find(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
  }

  const std::string& name(int i) const { return names_.at(i); }
  int size() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
  std::map<std::string, int> index_;
};

}  // namespace ustad
