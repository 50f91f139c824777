#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace stabcat {

using Json = nlohmann::ordered_json;

// One line of a verification report. Passing checks are aggregated per
// (check, subject) with a count; failures are kept individually with a
// witness that names objects and gives morphism tables by name.
struct CheckRecord {
  std::string check;
  std::string subject;
  bool pass = true;
  long count = 0;
  Json witness;
};

class Report {
 public:
  explicit Report(std::string suite, std::size_t max_failures_per_check = 25);

  Json& config() { return config_; }
  const Json& config() const { return config_; }
  const std::string& suite() const { return suite_; }

  void pass(const std::string& check, const std::string& subject, long n = 1);
  void fail(const std::string& check, const std::string& subject, Json witness);
  void note(std::string text) { notes_.push_back(std::move(text)); }
  void check(bool ok, const std::string& check, const std::string& subject, Json witness) {
    if (ok) {
      pass(check, subject);
    } else {
      fail(check, subject, std::move(witness));
    }
  }
  // Appends another report's records and notes.
  void merge(const Report& other);

  bool ok() const { return failures_ == 0; }
  long failures() const { return failures_; }
  long passes() const { return passes_; }
  long failures_of(const std::string& check) const;
  long passes_of(const std::string& check) const;
  const std::vector<CheckRecord>& records() const { return records_; }
  const std::vector<std::string>& notes() const { return notes_; }

  Json to_json() const;

 private:
  std::string suite_;
  std::size_t max_failures_;
  Json config_ = Json::object();
  std::vector<CheckRecord> records_;
  std::map<std::pair<std::string, std::string>, std::size_t> pass_index_;
  std::map<std::string, long> failures_by_check_;
  std::map<std::string, long> passes_by_check_;
  std::vector<std::string> notes_;
  long failures_ = 0;
  long passes_ = 0;
};

}  // namespace stabcat
