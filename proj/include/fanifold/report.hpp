// Clause-structured check reports. A report passes iff no clause failed;
// failing clauses carry witnesses naming the offending objects.

#pragma once

#include <deque>
#include <string>
#include <vector>

namespace fanifold {

struct Clause {
  std::string name;
  bool pass = true;
  std::vector<std::string> witnesses;
};

struct Report {
  // deque: clause references handed out by add() stay valid as clauses accrue
  std::deque<Clause> clauses;

  Clause& add(const std::string& name) {
    clauses.push_back({name, true, {}});
    return clauses.back();
  }

  void fail(Clause& c, std::string witness) {
    c.pass = false;
    c.witnesses.push_back(std::move(witness));
  }

  bool pass() const {
    for (const Clause& c : clauses)
      if (!c.pass) return false;
    return true;
  }

  const Clause* find(const std::string& name) const {
    for (const Clause& c : clauses)
      if (c.name == name) return &c;
    return nullptr;
  }
};

}  // namespace fanifold
