#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace qu {

using json = nlohmann::ordered_json;

/// Outcome of one check: counterexamples plus free-form notes.
/// Only the first `keep` witnesses are stored; `violations` counts all of them.
struct Findings {
  std::vector<json> witnesses;
  std::vector<std::string> notes;
  std::size_t violations = 0;
  std::size_t cases = 0;
  std::size_t keep = 16;

  bool pass() const { return violations == 0; }

  void fail(json w) {
    ++violations;
    if (witnesses.size() < keep) witnesses.push_back(std::move(w));
  }

  /// Records one evaluated case; on `ok == false` the witness built by `make` is kept.
  template <class Make>
  void expect(bool ok, Make&& make) {
    ++cases;
    if (!ok) fail(make());
  }

  void note(std::string s) { notes.push_back(std::move(s)); }

  void merge(const Findings& o, const std::string& context = {}) {
    cases += o.cases;
    for (const auto& w : o.witnesses) {
      if (witnesses.size() >= keep) break;
      if (context.empty()) {
        witnesses.push_back(w);
      } else {
        json c = w;
        if (c.is_object()) c["context"] = context;
        else c = json{{"context", context}, {"witness", w}};
        witnesses.push_back(std::move(c));
      }
    }
    violations += o.violations;
    for (const auto& n : o.notes)
      if (std::find(notes.begin(), notes.end(), n) == notes.end()) notes.push_back(n);
  }
};

}  // namespace qu
