#include "netsettle/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace netsettle {

ParseError::ParseError(const std::string& source, int line, const std::string& what)
    : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " +
                         what),
      line_(line) {}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && s[i] == ' ') ++i;
  return s.substr(i);
}

Money parse_integer(const std::string& text, const char* what) {
  Money value = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || text.empty()) {
    throw IngestionError(std::string("bad ") + what + " '" + text + "'");
  }
  return value;
}

// Reads a CSV file, checks the header and hands each data row to `row`.
template <class Row>
void read_csv(const std::string& path, const std::vector<std::string>& header, Row row) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  std::string line;
  int number = 0;
  bool seen_header = false;
  while (std::getline(in, line)) {
    ++number;
    line = trim(line);
    if (line.empty()) continue;
    std::vector<std::string> fields = split_csv(line);
    for (std::string& f : fields) f = trim(f);
    if (!seen_header) {
      if (fields != header) throw ParseError(path, number, "unexpected header");
      seen_header = true;
      continue;
    }
    if (fields.size() != header.size()) {
      throw ParseError(path, number,
                       "expected " + std::to_string(header.size()) + " fields, got " +
                           std::to_string(fields.size()));
    }
    try {
      row(fields);
    } catch (const std::exception& e) {
      throw ParseError(path, number, e.what());
    }
  }
  if (!seen_header) throw ParseError(path, 0, "missing header");
}

std::string cap_text(const Cap& cap) { return cap ? std::to_string(*cap) : std::string(); }

using nlohmann::json;

Money money_field(const json& j, const std::string& key) {
  if (j.contains(key + "_minor")) return j.at(key + "_minor").get<Money>();
  if (j.contains(key)) {
    const json& v = j.at(key);
    if (v.is_string()) return parse_decimal_money(v.get<std::string>());
    return v.get<Money>();
  }
  throw IngestionError("missing field '" + key + "'");
}

Instance instance_from_json(const json& j) {
  Instance inst;
  inst.name = j.value("name", std::string());
  if (j.contains("today")) inst.today = parse_date(j.at("today").get<std::string>());
  for (const json& a : j.at("accounts")) {
    CustomerAccount acc;
    acc.id = a.at("id").get<std::string>();
    acc.bl_a = money_field(a, "bl_a");
    acc.bl_r = a.contains("bl_r_minor") || a.contains("bl_r") ? money_field(a, "bl_r") : acc.bl_a;
    acc.floor = money_field(a, "floor");
    const char* cap_key = a.contains("cap_minor") ? "cap_minor" : "cap";
    if (!a.contains(cap_key) || a.at(cap_key).is_null()) {
      acc.cap = kInfinite;
    } else {
      acc.cap = money_field(a, "cap");
    }
    inst.accounts.push_back(std::move(acc));
  }
  for (const json& r : j.at("receivables")) {
    Receivable rec;
    rec.id = r.at("id").get<std::string>();
    rec.debtor = r.at("debtor").get<std::string>();
    rec.creditor = r.at("creditor").get<std::string>();
    rec.amount = money_field(r, "amount");
    rec.indate = parse_date(r.at("indate").get<std::string>());
    rec.duedate = parse_date(r.at("duedate").get<std::string>());
    rec.life = r.at("life_days").get<int>();
    inst.receivables.push_back(std::move(rec));
  }
  return inst;
}

}  // namespace

std::vector<Receivable> read_receivables_csv(const std::string& path) {
  std::vector<Receivable> out;
  read_csv(path, {"id", "debtor", "creditor", "amount_minor", "indate", "duedate", "life_days"},
           [&](const std::vector<std::string>& f) {
             Receivable r;
             r.id = f[0];
             r.debtor = f[1];
             r.creditor = f[2];
             r.amount = parse_integer(f[3], "amount_minor");
             r.indate = parse_date(f[4]);
             r.duedate = parse_date(f[5]);
             r.life = static_cast<int>(parse_integer(f[6], "life_days"));
             if (r.id.empty() || r.debtor.empty() || r.creditor.empty()) {
               throw IngestionError("empty identifier");
             }
             if (r.debtor == r.creditor) throw IngestionError("debtor equals creditor");
             if (r.amount <= 0) throw IngestionError("amount must be positive");
             out.push_back(std::move(r));
           });
  return out;
}

std::vector<CustomerAccount> read_accounts_csv(const std::string& path) {
  std::vector<CustomerAccount> out;
  read_csv(path, {"id", "bl_r_minor", "bl_a_minor", "cap_minor", "floor_minor"},
           [&](const std::vector<std::string>& f) {
             CustomerAccount a;
             a.id = f[0];
             if (a.id.empty()) throw IngestionError("empty identifier");
             a.bl_r = parse_integer(f[1], "bl_r_minor");
             a.bl_a = parse_integer(f[2], "bl_a_minor");
             if (!f[3].empty()) a.cap = parse_integer(f[3], "cap_minor");
             a.floor = parse_integer(f[4], "floor_minor");
             out.push_back(std::move(a));
           });
  return out;
}

void write_receivables_csv(const std::string& path, const std::vector<Receivable>& receivables) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "id,debtor,creditor,amount_minor,indate,duedate,life_days\n";
  for (const Receivable& r : receivables) {
    out << r.id << ',' << r.debtor << ',' << r.creditor << ',' << r.amount << ','
        << format_date(r.indate) << ',' << format_date(r.duedate) << ',' << r.life << '\n';
  }
}

void write_accounts_csv(const std::string& path, const std::vector<CustomerAccount>& accounts) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "id,bl_r_minor,bl_a_minor,cap_minor,floor_minor\n";
  for (const CustomerAccount& a : accounts) {
    out << a.id << ',' << a.bl_r << ',' << a.bl_a << ',' << cap_text(a.cap) << ',' << a.floor
        << '\n';
  }
}

std::vector<Instance> read_instances_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    // byte offset only; count lines up to it
    std::ifstream again(path);
    std::string text((std::istreambuf_iterator<char>(again)), std::istreambuf_iterator<char>());
    int line = 1;
    for (std::size_t i = 0; i < std::min(e.byte, text.size()); ++i) line += text[i] == '\n';
    throw ParseError(path, line, "invalid JSON");
  }
  std::vector<Instance> out;
  try {
    if (doc.contains("instances")) {
      for (const json& j : doc.at("instances")) out.push_back(instance_from_json(j));
    } else {
      out.push_back(instance_from_json(doc));
    }
  } catch (const json::exception& e) {
    throw ParseError(path, 0, e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(path, 0, e.what());
  } catch (const IngestionError& e) {
    throw ParseError(path, 0, e.what());
  }
  return out;
}

}  // namespace netsettle
