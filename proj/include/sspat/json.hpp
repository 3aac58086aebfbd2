#pragma once

// JSON (de)serialization of reports. Witness entries are exact rationals
// written as strings ("3/2"), never floats.

#include <json.hpp>

#include <string>

#include "sspat/oracle.hpp"
#include "sspat/pattern.hpp"
#include "sspat/rank.hpp"
#include "sspat/systems.hpp"

namespace sspat {

inline constexpr const char* kJsonSchemaVersion = "1";

inline nlohmann::json pattern_to_json(const PatternMatrix& p) {
  auto rows = nlohmann::json::array();
  for (std::size_t r = 0; r < p.rows(); ++r) {
    std::string s;
    for (std::size_t c = 0; c < p.cols(); ++c) s += to_char(p(r, c));
    rows.push_back(s);
  }
  return {{"rows", p.rows()}, {"cols", p.cols()}, {"entries", rows}};
}

inline PatternMatrix pattern_from_json(const nlohmann::json& j) {
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  PatternMatrix p(rows, cols);
  const auto& entries = j.at("entries");
  if (entries.size() != rows) throw ParseError("pattern json: row count mismatch", 0);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto s = entries[r].get<std::string>();
    if (s.size() != cols) throw ParseError("pattern json: column count mismatch", 0);
    for (std::size_t c = 0; c < cols; ++c) {
      auto sym = symbol_from_char(s[c]);
      if (!sym) throw ParseError("pattern json: invalid symbol", 0);
      p(r, c) = *sym;
    }
  }
  return p;
}

inline nlohmann::json rational_matrix_to_json(const Matrix<Rational>& m) {
  auto rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = nlohmann::json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    rows.push_back(row);
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

inline Matrix<Rational> rational_matrix_from_json(const nlohmann::json& j) {
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  Matrix<Rational> m(rows, cols, Rational(0));
  const auto& entries = j.at("entries");
  if (entries.size() != rows) throw ParseError("matrix json: row count mismatch", 0);
  for (std::size_t r = 0; r < rows; ++r) {
    if (entries[r].size() != cols) throw ParseError("matrix json: column count mismatch", 0);
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = parse_rational(entries[r][c].get<std::string>());
  }
  return m;
}

inline nlohmann::json to_json(const RankVerdict& v) {
  nlohmann::json j;
  j["full_rank"] = v.full_rank;
  auto pivots = nlohmann::json::array();
  for (const auto& pv : v.pivots) pivots.push_back({pv.row, pv.col});
  j["pivots"] = pivots;
  if (v.stall) {
    j["stall"] = {{"reason", v.stall->reason},
                  {"rows", v.stall->rows},
                  {"cols", v.stall->cols},
                  {"residual", pattern_to_json(v.stall->residual)}};
  } else {
    j["stall"] = nullptr;
  }
  j["witness"] = v.witness ? rational_matrix_to_json(*v.witness) : nlohmann::json(nullptr);
  return j;
}

inline RankVerdict rank_verdict_from_json(const nlohmann::json& j) {
  RankVerdict v;
  v.full_rank = j.at("full_rank").get<bool>();
  for (const auto& pv : j.at("pivots")) v.pivots.push_back({pv.at(0).get<std::size_t>(), pv.at(1).get<std::size_t>()});
  if (const auto& s = j.at("stall"); !s.is_null()) {
    StallReport st;
    st.reason = s.at("reason").get<std::string>();
    st.rows = s.at("rows").get<std::vector<std::size_t>>();
    st.cols = s.at("cols").get<std::vector<std::size_t>>();
    st.residual = pattern_from_json(s.at("residual"));
    v.stall = std::move(st);
  }
  if (const auto& w = j.at("witness"); !w.is_null()) v.witness = rational_matrix_from_json(w);
  return v;
}

inline nlohmann::json to_json(const AnalysisReport& rep) {
  nlohmann::json j;
  j["property"] = to_string(rep.property);
  j["verdict"] = to_string(rep.verdict);
  auto conds = nlohmann::json::array();
  for (const auto& c : rep.conditions) {
    conds.push_back({{"name", c.name},
                     {"rank", c.kind == RankKind::Row ? "row" : "column"},
                     {"rows", c.rows},
                     {"cols", c.cols},
                     {"result", to_json(c.verdict)}});
  }
  j["conditions"] = conds;
  j["rank_conditions_hold"] =
      rep.rank_conditions_hold ? nlohmann::json(*rep.rank_conditions_hold) : nlohmann::json(nullptr);
  j["notes"] = rep.notes;
  return j;
}

inline AnalysisReport analysis_report_from_json(const nlohmann::json& j) {
  AnalysisReport rep;
  const auto prop = j.at("property").get<std::string>();
  bool known = false;
  for (Property p : {Property::SSC, Property::RegularSSC, Property::ISO, Property::OutputControllability})
    if (prop == to_string(p)) {
      rep.property = p;
      known = true;
    }
  if (!known) throw ParseError("unknown property '" + prop + "'", 0);
  const auto verdict = j.at("verdict").get<std::string>();
  known = false;
  for (Verdict v : {Verdict::Holds, Verdict::Fails, Verdict::Inconclusive})
    if (verdict == to_string(v)) {
      rep.verdict = v;
      known = true;
    }
  if (!known) throw ParseError("unknown verdict '" + verdict + "'", 0);
  for (const auto& c : j.at("conditions")) {
    Condition cond;
    cond.name = c.at("name").get<std::string>();
    cond.kind = c.at("rank").get<std::string>() == "row" ? RankKind::Row : RankKind::Column;
    cond.rows = c.at("rows").get<std::size_t>();
    cond.cols = c.at("cols").get<std::size_t>();
    cond.verdict = rank_verdict_from_json(c.at("result"));
    rep.conditions.push_back(std::move(cond));
  }
  if (const auto& r = j.at("rank_conditions_hold"); !r.is_null()) rep.rank_conditions_hold = r.get<bool>();
  rep.notes = j.at("notes").get<std::string>();
  return rep;
}

inline nlohmann::json to_json(const OracleResult& r) {
  return {{"property", r.property},
          {"trials", r.trials},
          {"passed", r.passed},
          {"counterexample", r.counterexample ? nlohmann::json(*r.counterexample) : nlohmann::json(nullptr)},
          {"detail", r.detail}};
}

}  // namespace sspat
