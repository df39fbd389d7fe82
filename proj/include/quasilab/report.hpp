#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace quasilab {

using json = nlohmann::json;

enum class Answer { yes, no, unknown, error };

std::string to_string(Answer a);

// Verdict of a decision procedure. A yes/no carries a witness that can be
// replayed independently; unknown names the tripped cap in `budget`.
struct Report {
  std::string question;
  json inputs = json::object();
  Answer answer = Answer::unknown;
  json witness = json::object();
  std::vector<std::string> assumptions;
  std::string budget;
  std::string note;
  double seconds = 0.0;

  bool yes() const { return answer == Answer::yes; }
  bool no() const { return answer == Answer::no; }
  bool unknown() const { return answer == Answer::unknown; }
  json to_json() const;
};

class BudgetExceeded;
// Turns r into an unknown verdict naming the tripped cap.
Report budget_report(Report r, const BudgetExceeded& e);

inline constexpr const char* kSchema = "quasilab/1";

// Assumption ids attached to reports that rely on them.
inline constexpr const char* kFreeRankBound = "D1 free-rank bound";
inline constexpr const char* kWitnessGeneratorBound = "D3 witness-generator bound";
inline constexpr const char* kCloneCriterion = "D4 reduct separation criterion";
inline constexpr const char* kIdealsFromSubtraction = "D5 ideals as 0-classes";
inline constexpr const char* kImproperFilter = "improper filter allowed";
inline constexpr const char* kTdReading = "TD clause read as t(x,x,z) = z";

}  // namespace quasilab
