#pragma once
// Named pass/fail records shared by all verification routines.

#include <string>
#include <vector>

namespace sv {

struct CheckItem {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct CheckReport {
  std::string subject;
  std::vector<CheckItem> items;

  void add(std::string name, bool pass, std::string detail = {}) {
    items.push_back({std::move(name), pass, std::move(detail)});
  }
  bool ok() const {
    for (auto& i : items)
      if (!i.pass) return false;
    return true;
  }
  const CheckItem* first_failure() const {
    for (auto& i : items)
      if (!i.pass) return &i;
    return nullptr;
  }
  bool passed(const std::string& name) const {
    for (auto& i : items)
      if (i.name == name) return i.pass;
    return false;
  }
};

}  // namespace sv
