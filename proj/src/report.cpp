#include "gaudin/report.hpp"

#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace gaudin {

namespace {

using nlohmann::ordered_json;

ordered_json element_json(const NOElement& e) {
  ordered_json terms = ordered_json::array();
  const Layout& l = e.layout();
  for (const Term& t : e.terms()) {
    ordered_json word = ordered_json::array();
    for (int g = 0; g < l.generators(); ++g)
      if (t.word.x[g]) word.push_back({"x", l.row_of(g), l.col_of(g), t.word.x[g]});
    for (int g = 0; g < l.generators(); ++g)
      if (t.word.d[g]) word.push_back({"d", l.row_of(g), l.col_of(g), t.word.d[g]});
    terms.push_back({{"word", word}, {"coeff", t.coeff.to_string()}});
  }
  return terms;
}

ordered_json bound_json(int b) {
  if (b <= kNegInf) return "-inf";
  if (b >= kPosInf) return "+inf";
  return b;
}

ordered_json table_json(const CoeffTable& t) {
  ordered_json entries = ordered_json::array();
  for (const auto& [key, value] : t.entries)
    entries.push_back({{"r", key.first}, {"s", key.second}, {"text", value.to_string()}, {"value", element_json(value)}});
  return {{"first_floor", bound_json(t.first_floor)}, {"second_floor", bound_json(t.second_floor)}, {"entries", entries}};
}

ordered_json params_json(const ModelParams& p) {
  ordered_json z = ordered_json::array(), lambda = ordered_json::array();
  for (const Rational& c : p.z) z.push_back(c.to_string());
  for (const Rational& c : p.lambda) lambda.push_back(c.to_string());
  return {{"m", p.m},
          {"n", p.n},
          {"k", p.k},
          {"z", z},
          {"lambda", lambda},
          {"v_floor", bound_json(p.trunc.v_floor)},
          {"d_floor", bound_json(p.trunc.d_floor)},
          {"w_top", p.trunc.w_top}};
}

std::string verdict(const IdentityReport& r) {
  if (r.passed()) return "PASS";
  return r.count("fail") ? "FAIL" : "UNCERTIFIED";
}

}  // namespace

std::string render_json(const std::string& command, const ModelParams& p, const ReportList& reports,
                        const RenderOptions& opts) {
  ordered_json list = ordered_json::array();
  for (const IdentityReport& r : reports) {
    ordered_json slots = ordered_json::array();
    for (const Slot& s : r.slots) slots.push_back({{"index", s.index}, {"status", s.status}});
    ordered_json item = {{"identity", r.identity},
                         {"window", r.window},
                         {"slots", slots},
                         {"elapsed_ms", opts.timing ? r.elapsed_ms : 0.0}};
    if (opts.tables && !r.tables.empty()) {
      ordered_json tables = ordered_json::object();
      for (const auto& [name, t] : r.tables) tables[name] = table_json(t);
      item["tables"] = tables;
    }
    list.push_back(item);
  }
  ordered_json doc = {{"command", command}, {"params", params_json(p)}};
  if (command.rfind("verify", 0) == 0) doc["passed"] = all_passed(reports);
  doc["reports"] = list;
  return doc.dump(2) + "\n";
}

std::string render_text(const std::string& command, const ModelParams& p, const ReportList& reports,
                        const RenderOptions& opts) {
  std::ostringstream os;
  os << command << "  m=" << p.m << " n=" << p.n << " k=" << p.k << "\n";
  for (const IdentityReport& r : reports) {
    os << '[' << verdict(r) << "] " << r.identity << "\n";
    os << "  window: " << r.window << "\n";
    os << "  slots: " << r.count("pass") << " pass, " << r.count("fail") << " fail, " << r.count("uncertified")
       << " uncertified";
    if (opts.timing) os << ", " << std::fixed << std::setprecision(1) << r.elapsed_ms << " ms";
    os << "\n";
    for (const Slot& s : r.slots)
      if (s.status != "pass") os << "    " << s.status << ": " << s.index << "\n";
    if (!opts.tables) continue;
    for (const auto& [name, t] : r.tables) {
      os << "  table " << name << ":\n";
      for (const auto& [key, value] : t.entries)
        os << "    " << name << '[' << key.first << ',' << key.second << "] = " << value.to_string() << "\n";
    }
  }
  if (command.rfind("verify", 0) == 0) os << (all_passed(reports) ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace gaudin
