#include "stabcat/report.hpp"

#include <algorithm>

namespace stabcat {

Report::Report(std::string suite, std::size_t max_failures_per_check)
    : suite_(std::move(suite)), max_failures_(max_failures_per_check) {}

void Report::pass(const std::string& check, const std::string& subject, long n) {
  passes_ += n;
  passes_by_check_[check] += n;
  auto key = std::make_pair(check, subject);
  auto it = pass_index_.find(key);
  if (it == pass_index_.end()) {
    pass_index_.emplace(key, records_.size());
    records_.push_back(CheckRecord{check, subject, true, n, Json()});
  } else {
    records_[it->second].count += n;
  }
}

void Report::fail(const std::string& check, const std::string& subject, Json witness) {
  ++failures_;
  const long seen = ++failures_by_check_[check];
  if (static_cast<std::size_t>(seen) <= max_failures_) {
    records_.push_back(CheckRecord{check, subject, false, 1, std::move(witness)});
  }
}

void Report::merge(const Report& other) {
  for (const auto& r : other.records_) {
    if (r.pass) {
      pass(r.check, r.subject, r.count);
    } else {
      fail(r.check, r.subject, r.witness);
    }
  }
  // Failures beyond the other report's cap are counted, not listed.
  const long hidden = other.failures_ - static_cast<long>(std::count_if(
                                            other.records_.begin(), other.records_.end(),
                                            [](const CheckRecord& r) { return !r.pass; }));
  failures_ += hidden;
  for (const auto& n : other.notes_) notes_.push_back(n);
}

long Report::failures_of(const std::string& check) const {
  auto it = failures_by_check_.find(check);
  return it == failures_by_check_.end() ? 0 : it->second;
}

long Report::passes_of(const std::string& check) const {
  auto it = passes_by_check_.find(check);
  return it == passes_by_check_.end() ? 0 : it->second;
}

Json Report::to_json() const {
  Json out;
  out["suite"] = suite_;
  out["config"] = config_;
  Json summary;
  summary["verdict"] = ok() ? "pass" : "fail";
  summary["checks_passed"] = passes_;
  summary["checks_failed"] = failures_;
  Json per_check = Json::object();
  for (const auto& r : records_) {
    auto& entry = per_check[r.check];
    if (entry.is_null()) entry = Json{{"passed", 0}, {"failed", 0}};
  }
  for (auto& [check, entry] : per_check.items()) {
    entry["passed"] = passes_of(check);
    entry["failed"] = failures_of(check);
  }
  summary["by_check"] = per_check;
  out["summary"] = summary;
  Json records = Json::array();
  for (const auto& r : records_) {
    Json rec;
    rec["check"] = r.check;
    rec["subject"] = r.subject;
    rec["verdict"] = r.pass ? "pass" : "fail";
    if (r.pass) {
      rec["count"] = r.count;
    } else {
      rec["witness"] = r.witness;
    }
    records.push_back(std::move(rec));
  }
  out["records"] = records;
  if (!notes_.empty()) out["notes"] = notes_;
  return out;
}

}  // namespace stabcat
