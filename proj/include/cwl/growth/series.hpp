#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cwl {

enum class SeriesSource { GroupBall, SchreierBall, SubgroupBall, IntersectionBall, Synthetic };

inline std::string to_string(SeriesSource s) {
  switch (s) {
    case SeriesSource::GroupBall: return "group";
    case SeriesSource::SchreierBall: return "schreier";
    case SeriesSource::SubgroupBall: return "subgroup";
    case SeriesSource::IntersectionBall: return "intersection";
    case SeriesSource::Synthetic: return "synthetic";
  }
  return "?";
}

/// Ball counts c_0 <= c_1 <= ... <= c_R.
struct GrowthSeries {
  std::vector<std::uint64_t> counts;
  SeriesSource source = SeriesSource::Synthetic;

  std::size_t radius() const { return counts.empty() ? 0 : counts.size() - 1; }

  /// Non-decreasing with c_0 = 1.
  bool well_formed() const {
    if (counts.empty() || counts[0] != 1) return false;
    for (std::size_t i = 1; i < counts.size(); ++i)
      if (counts[i] < counts[i - 1]) return false;
    return true;
  }

  std::vector<std::uint64_t> spheres() const {
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < counts.size(); ++i) out.push_back(counts[i] - (i ? counts[i - 1] : 0));
    return out;
  }

  std::string to_csv() const {
    std::string out = "radius,count,source\n";
    for (std::size_t r = 0; r < counts.size(); ++r)
      out += std::to_string(r) + "," + std::to_string(counts[r]) + "," + to_string(source) + "\n";
    return out;
  }
};

}  // namespace cwl
