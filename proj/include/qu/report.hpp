#pragma once

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "findings.hpp"
#include "space.hpp"

namespace qu {

inline std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) throw error("sha256: digest failed");
  std::string out;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    out += buf;
  }
  return out;
}

/// Thrown by a check whose precondition the input does not meet; reported as skipped.
class not_applicable : public error {
 public:
  using error::error;
};

enum class Verdict { pass, fail, skipped };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::skipped: return "skipped";
  }
  return "unknown";
}

struct CheckReport {
  std::string check;
  std::string space_hash;
  Verdict verdict = Verdict::pass;
  std::vector<json> witnesses;
  json bounds = json::object();
  std::int64_t runtime_ms = 0;

  json to_json(bool with_runtime = true) const {
    json j;
    j["check"] = check;
    j["space_hash"] = space_hash;
    j["verdict"] = to_string(verdict);
    j["witnesses"] = witnesses;
    j["bounds"] = bounds;
    j["runtime_ms"] = with_runtime ? runtime_ms : 0;
    return j;
  }
};

/// Turns findings into a report. Notes travel inside `bounds` under "notes",
/// next to the case count, so that the top-level schema stays fixed.
inline CheckReport make_report(const std::string& check, const std::string& space_hash, const Findings& f,
                               json bounds = json::object()) {
  CheckReport r;
  r.check = check;
  r.space_hash = space_hash;
  r.verdict = f.pass() ? Verdict::pass : Verdict::fail;
  r.witnesses = f.witnesses;
  if (!f.pass() && r.witnesses.empty()) r.witnesses.push_back(json{{"violations", f.violations}});
  bounds["cases"] = f.cases;
  if (f.violations > f.witnesses.size()) bounds["violations"] = f.violations;
  if (!f.notes.empty()) bounds["notes"] = f.notes;
  r.bounds = std::move(bounds);
  return r;
}

/// Runs `body`, timing it; qu::error becomes fail, cap overruns and unmet preconditions skipped.
inline CheckReport run_check(const std::string& check, const std::string& space_hash, json bounds,
                             const std::function<Findings()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckReport r;
  try {
    r = make_report(check, space_hash, body(), bounds);
  } catch (const cap_exceeded& e) {
    r = CheckReport{check, space_hash, Verdict::skipped, {}, bounds, 0};
    r.bounds["skipped"] = e.what();
  } catch (const not_applicable& e) {
    r = CheckReport{check, space_hash, Verdict::skipped, {}, bounds, 0};
    r.bounds["skipped"] = e.what();
  } catch (const error& e) {
    r = CheckReport{check, space_hash, Verdict::fail, {json{{"error", e.what()}}}, bounds, 0};
  }
  r.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

/// Canonical order: by check id, then space hash.
inline void sort_reports(std::vector<CheckReport>& rs) {
  std::stable_sort(rs.begin(), rs.end(), [](const CheckReport& a, const CheckReport& b) {
    return a.check != b.check ? a.check < b.check : a.space_hash < b.space_hash;
  });
}

inline bool any_failed(const std::vector<CheckReport>& rs) {
  return std::any_of(rs.begin(), rs.end(), [](const CheckReport& r) { return r.verdict == Verdict::fail; });
}

enum class Format { json, table };

inline std::string emit_report(const std::vector<CheckReport>& rs, Format fmt, bool with_runtime = true) {
  if (fmt == Format::json) {
    json arr = json::array();
    for (const auto& r : rs) arr.push_back(r.to_json(with_runtime));
    return (rs.empty() ? std::string("[]") : arr.dump(2)) + "\n";
  }
  std::size_t w = 5;
  for (const auto& r : rs) w = std::max(w, r.check.size());
  auto pad = [](std::string s, std::size_t n) {
    s.resize(std::max(n, s.size()), ' ');
    return s;
  };
  std::string out = pad("check", w) + "  " + pad("verdict", 7) + "  " + pad("space", 12) + "  " + pad("witnesses", 9) + "  ms\n";
  for (const auto& r : rs) {
    out += pad(r.check, w) + "  " + pad(to_string(r.verdict), 7) + "  " + pad(r.space_hash.substr(0, 12), 12) + "  " +
           pad(std::to_string(r.witnesses.size()), 9) + "  " + std::to_string(with_runtime ? r.runtime_ms : 0) + "\n";
  }
  return out;
}

}  // namespace qu
