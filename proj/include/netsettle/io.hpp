#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "netsettle/core.hpp"

namespace netsettle {

// Malformed input. `line` is 1-based, or 0 when no line applies.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

// Header: id,debtor,creditor,amount_minor,indate,duedate,life_days
std::vector<Receivable> read_receivables_csv(const std::string& path);
// Header: id,bl_r_minor,bl_a_minor,cap_minor,floor_minor (empty cap = INFINITE)
std::vector<CustomerAccount> read_accounts_csv(const std::string& path);

void write_receivables_csv(const std::string& path, const std::vector<Receivable>& receivables);
void write_accounts_csv(const std::string& path, const std::vector<CustomerAccount>& accounts);

struct Instance {
  std::string name;
  std::optional<Date> today;
  std::vector<CustomerAccount> accounts;
  std::vector<Receivable> receivables;
};

// JSON instance documents: either one instance object or {"instances": [...]}.
std::vector<Instance> read_instances_json(const std::string& path);

}  // namespace netsettle
