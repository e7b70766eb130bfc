#ifndef GROUPALG_CORE_HPP_
#define GROUPALG_CORE_HPP_

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace groupalg {

using Arrow = int;
// A sorted, duplicate-free list of arrow ids.
using ArrowSet = std::vector<Arrow>;

inline ArrowSet make_set(std::vector<Arrow> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline bool set_contains(ArrowSet const& s, Arrow a) {
  return std::binary_search(s.begin(), s.end(), a);
}

inline ArrowSet set_union(ArrowSet const& a, ArrowSet const& b) {
  ArrowSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

inline ArrowSet set_intersection(ArrowSet const& a, ArrowSet const& b) {
  ArrowSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

inline ArrowSet set_difference(ArrowSet const& a, ArrowSet const& b) {
  ArrowSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

inline bool set_subset(ArrowSet const& a, ArrowSet const& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

struct ValidationIssue {
  std::string rule;
  std::vector<Arrow> witness;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  void add(std::string rule, std::vector<Arrow> witness = {}) {
    issues.push_back({std::move(rule), std::move(witness)});
  }
  std::string summary() const {
    std::ostringstream os;
    for (auto const& i : issues) {
      os << i.rule;
      if (!i.witness.empty()) {
        os << " [";
        for (size_t k = 0; k < i.witness.size(); ++k)
          os << (k ? "," : "") << i.witness[k];
        os << "]";
      }
      os << "\n";
    }
    return os.str();
  }
};

// Verdict of a yes/no dynamical check together with a witness (set of
// arrow ids backing the answer) and a human-readable reason.
struct Verdict {
  bool value = false;
  std::string reason;
  std::vector<Arrow> witness;
  explicit operator bool() const { return value; }
};

inline Verdict yes(std::string reason = "", std::vector<Arrow> w = {}) {
  return {true, std::move(reason), std::move(w)};
}
inline Verdict no(std::string reason, std::vector<Arrow> w = {}) {
  return {false, std::move(reason), std::move(w)};
}

}  // namespace groupalg

#endif  // GROUPALG_CORE_HPP_
