#pragma once

// Line-oriented instance files.
//
//   # comment
//   GROUPOID
//   elements 6
//   units 0
//   range 0 0 0 0 0 0        (optional when there is one unit)
//   source 0 0 0 0 0 0       (optional when there is one unit)
//   mul                      (followed by one row per element; '.' where undefined)
//   COCYCLE
//   modulus 4
//   c 1 1 2                  (c(g,h) = exp(2 pi i * 2/4); unlisted pairs are 0)
//   SUBGROUPOID A3
//   members 0 1 2
//   ROTATION
//   theta 1/4
//   generator 2 0
//   generator 1 2

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cartan/groupoid.hpp"
#include "cartan/rotation.hpp"
#include "cartan/twist.hpp"

namespace cartan {

struct CocycleEntry {
  Id g = 0, h = 0;
  std::int64_t exponent = 0;
  friend bool operator==(const CocycleEntry&, const CocycleEntry&) = default;
};

struct NamedSubgroupoid {
  std::string name;
  std::vector<Id> members;
  friend bool operator==(const NamedSubgroupoid&, const NamedSubgroupoid&) = default;
};

struct RotationBlock {
  Theta theta;
  std::vector<Vec2> generators;
  friend bool operator==(const RotationBlock& a, const RotationBlock& b) {
    return a.theta.irrational == b.theta.irrational && a.theta.p == b.theta.p && a.theta.q == b.theta.q &&
           a.generators == b.generators;
  }
};

struct InstanceData {
  bool has_groupoid = false;
  RawGroupoid groupoid;
  std::int64_t modulus = 1;
  std::vector<CocycleEntry> cocycle;  // sorted by (g, h), exponents in (0, modulus)
  std::vector<NamedSubgroupoid> subgroupoids;
  std::optional<RotationBlock> rotation;
  // Header lines, for diagnostics raised after parsing.
  int groupoid_line = 0, cocycle_line = 0;
  std::vector<int> subgroupoid_lines;

  friend bool operator==(const InstanceData& a, const InstanceData& b) {
    auto raw_eq = [](const RawGroupoid& x, const RawGroupoid& y) {
      return x.element_count == y.element_count && x.units == y.units && x.range == y.range && x.source == y.source &&
             x.compose == y.compose;
    };
    return a.has_groupoid == b.has_groupoid && raw_eq(a.groupoid, b.groupoid) && a.modulus == b.modulus &&
           a.cocycle == b.cocycle && a.subgroupoids == b.subgroupoids && a.rotation == b.rotation;
  }
};

// Validated objects with units relabelled first.
struct LoadedInstance {
  FiniteGroupoid groupoid;
  Cocycle cocycle;
  std::vector<std::pair<std::string, Subgroupoid>> subgroupoids;
  std::vector<Id> relabel;  // file id -> groupoid id
  std::optional<RotationBlock> rotation;
};

namespace detail {

[[noreturn]] inline void parse_error(int line, const std::string& msg) {
  fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + msg);
}

inline std::vector<std::string> tokens(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

inline std::int64_t parse_int(const std::string& t, int line) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(t, &used);
  } catch (const std::logic_error&) {
    parse_error(line, "expected an integer, got '" + t + "'");
  }
  if (used != t.size()) parse_error(line, "expected an integer, got '" + t + "'");
  return v;
}

inline Id parse_id(const std::string& t, int line, std::size_t n) {
  const std::int64_t v = parse_int(t, line);
  if (v < 0 || static_cast<std::size_t>(v) >= n) parse_error(line, "element id " + t + " out of range");
  return static_cast<Id>(v);
}

}  // namespace detail

inline InstanceData parse_instance(const std::string& text) {
  using detail::parse_error;
  InstanceData d;
  enum class Section { None, Groupoid, Cocycle, Subgroupoid, Rotation } section = Section::None;
  std::size_t n = 0;
  std::size_t mul_rows = 0;
  bool in_mul = false, seen_modulus = false;
  std::vector<std::vector<std::string>> cocycle_lines;
  std::vector<int> cocycle_line_numbers;
  std::istringstream is(text);
  std::string raw_line;
  int line = 0;
  while (std::getline(is, raw_line)) {
    ++line;
    if (auto hash = raw_line.find('#'); hash != std::string::npos) raw_line.erase(hash);
    const auto t = detail::tokens(raw_line);
    if (t.empty()) continue;
    if (in_mul) {
      if (t.size() != n) parse_error(line, "mul row needs " + std::to_string(n) + " entries");
      for (std::size_t j = 0; j < n; ++j)
        d.groupoid.compose[mul_rows * n + j] = t[j] == "." ? kNone : detail::parse_id(t[j], line, n);
      if (++mul_rows == n) in_mul = false;
      continue;
    }
    const std::string& key = t[0];
    if (key == "GROUPOID") {
      if (d.has_groupoid) parse_error(line, "duplicate GROUPOID section");
      d.has_groupoid = true;
      d.groupoid_line = line;
      section = Section::Groupoid;
      continue;
    }
    if (key == "COCYCLE") {
      if (d.cocycle_line) parse_error(line, "duplicate COCYCLE section");
      d.cocycle_line = line;
      section = Section::Cocycle;
      continue;
    }
    if (key == "SUBGROUPOID") {
      if (t.size() != 2) parse_error(line, "SUBGROUPOID needs a name");
      for (const auto& s : d.subgroupoids)
        if (s.name == t[1]) parse_error(line, "duplicate subgroupoid name " + t[1]);
      d.subgroupoids.push_back({t[1], {}});
      d.subgroupoid_lines.push_back(line);
      section = Section::Subgroupoid;
      continue;
    }
    if (key == "ROTATION") {
      if (d.rotation) parse_error(line, "duplicate ROTATION section");
      d.rotation = RotationBlock{};
      section = Section::Rotation;
      continue;
    }
    switch (section) {
      case Section::None:
        parse_error(line, "expected a section header, got '" + key + "'");
      case Section::Groupoid:
        if (key == "elements") {
          if (t.size() != 2) parse_error(line, "elements takes one count");
          const std::int64_t v = detail::parse_int(t[1], line);
          if (v <= 0) parse_error(line, "groupoid must have at least one element");
          if (v > 4096) parse_error(line, "too many elements");
          n = static_cast<std::size_t>(v);
          d.groupoid.element_count = n;
          d.groupoid.range.assign(n, kNone);
          d.groupoid.source.assign(n, kNone);
          d.groupoid.compose.assign(n * n, kNone);
        } else if (n == 0) {
          parse_error(line, "elements must come first");
        } else if (key == "units") {
          d.groupoid.units.clear();
          for (std::size_t i = 1; i < t.size(); ++i) d.groupoid.units.push_back(detail::parse_id(t[i], line, n));
        } else if (key == "range" || key == "source") {
          if (t.size() != n + 1) parse_error(line, key + " needs " + std::to_string(n) + " entries");
          auto& target = key == "range" ? d.groupoid.range : d.groupoid.source;
          for (std::size_t i = 0; i < n; ++i) target[i] = detail::parse_id(t[i + 1], line, n);
        } else if (key == "mul") {
          if (t.size() != 1) parse_error(line, "mul rows start on the next line");
          in_mul = true;
          mul_rows = 0;
        } else {
          parse_error(line, "unknown GROUPOID key '" + key + "'");
        }
        break;
      case Section::Cocycle:
        if (key == "modulus") {
          if (t.size() != 2) parse_error(line, "modulus takes one value");
          d.modulus = detail::parse_int(t[1], line);
          if (d.modulus < 1) parse_error(line, "modulus must be positive");
          seen_modulus = true;
        } else if (key == "c") {
          if (t.size() != 4) parse_error(line, "expected 'c g h exponent'");
          cocycle_lines.push_back(t);
          cocycle_line_numbers.push_back(line);
        } else {
          parse_error(line, "unknown COCYCLE key '" + key + "'");
        }
        break;
      case Section::Subgroupoid:
        if (key != "members") parse_error(line, "unknown SUBGROUPOID key '" + key + "'");
        if (n == 0) parse_error(line, "SUBGROUPOID needs a GROUPOID section first");
        for (std::size_t i = 1; i < t.size(); ++i) d.subgroupoids.back().members.push_back(detail::parse_id(t[i], line, n));
        break;
      case Section::Rotation:
        if (key == "theta") {
          if (t.size() != 2) parse_error(line, "theta takes one value");
          try {
            d.rotation->theta = Theta::parse(t[1]);
          } catch (const Error& e) {
            parse_error(line, e.detail());
          }
        } else if (key == "generator") {
          if (t.size() != 3) parse_error(line, "generator takes two integers");
          d.rotation->generators.push_back({detail::parse_int(t[1], line), detail::parse_int(t[2], line)});
        } else {
          parse_error(line, "unknown ROTATION key '" + key + "'");
        }
        break;
    }
  }
  if (in_mul) parse_error(line, "mul table ended early");
  if (d.has_groupoid) {
    if (n == 0) parse_error(d.groupoid_line, "empty groupoid");
    if (d.groupoid.units.empty()) parse_error(d.groupoid_line, "no units listed");
    if (d.groupoid.units.size() == 1) {
      for (auto& r : d.groupoid.range)
        if (r == kNone) r = d.groupoid.units[0];
      for (auto& s : d.groupoid.source)
        if (s == kNone) s = d.groupoid.units[0];
    }
    for (std::size_t i = 0; i < n; ++i)
      if (d.groupoid.range[i] == kNone || d.groupoid.source[i] == kNone)
        parse_error(d.groupoid_line, "range/source missing for a groupoid with several units");
  } else if (!d.subgroupoids.empty() || d.cocycle_line) {
    parse_error(d.cocycle_line ? d.cocycle_line : d.subgroupoid_lines[0], "section needs a GROUPOID");
  } else if (!d.rotation) {
    parse_error(line, "empty instance");
  }
  if (d.cocycle_line && !seen_modulus) parse_error(d.cocycle_line, "COCYCLE needs a modulus");
  for (std::size_t i = 0; i < cocycle_lines.size(); ++i) {
    const auto& t = cocycle_lines[i];
    const int ln = cocycle_line_numbers[i];
    CocycleEntry e{detail::parse_id(t[1], ln, n), detail::parse_id(t[2], ln, n), floor_mod(detail::parse_int(t[3], ln), d.modulus)};
    for (const auto& o : d.cocycle)
      if (o.g == e.g && o.h == e.h) parse_error(ln, "duplicate cocycle entry");
    d.cocycle.push_back(e);
  }
  std::erase_if(d.cocycle, [](const CocycleEntry& e) { return e.exponent == 0; });
  std::sort(d.cocycle.begin(), d.cocycle.end(), [](const CocycleEntry& a, const CocycleEntry& b) {
    return std::tie(a.g, a.h) < std::tie(b.g, b.h);
  });
  for (auto& s : d.subgroupoids) {
    std::sort(s.members.begin(), s.members.end());
    s.members.erase(std::unique(s.members.begin(), s.members.end()), s.members.end());
  }
  if (d.rotation && d.rotation->generators.empty()) d.rotation->generators.push_back({0, 0});
  return d;
}

// Validation failures keep their error code and gain the line of the offending section.
inline LoadedInstance load_instance(const InstanceData& d) {
  LoadedInstance out;
  out.rotation = d.rotation;
  if (!d.has_groupoid) return out;
  auto anchored = [](int line, auto&& fn) {
    try {
      return fn();
    } catch (const Error& e) {
      fail(e.code(), "line " + std::to_string(line) + ": " + e.detail());
    }
  };
  out.groupoid = anchored(d.groupoid_line, [&] { return validate_groupoid(d.groupoid, &out.relabel); });
  const FiniteGroupoid& g = out.groupoid;
  std::vector<std::int64_t> table(g.size() * g.size(), 0);
  for (const auto& e : d.cocycle) {
    const Id x = out.relabel[static_cast<std::size_t>(e.g)], y = out.relabel[static_cast<std::size_t>(e.h)];
    if (!g.composable(x, y)) fail(ErrorCode::NotComposable, "line " + std::to_string(d.cocycle_line) + ": cocycle entry on a non-composable pair");
    table[static_cast<std::size_t>(x) * g.size() + static_cast<std::size_t>(y)] = e.exponent;
  }
  out.cocycle = anchored(d.cocycle_line ? d.cocycle_line : d.groupoid_line, [&] {
    return Cocycle::from_exponents(g, d.modulus, [&](Id x, Id y) { return table[static_cast<std::size_t>(x) * g.size() + static_cast<std::size_t>(y)]; });
  });
  for (std::size_t i = 0; i < d.subgroupoids.size(); ++i) {
    std::vector<Id> members;
    for (Id x : d.subgroupoids[i].members) members.push_back(out.relabel[static_cast<std::size_t>(x)]);
    out.subgroupoids.emplace_back(d.subgroupoids[i].name,
                                  anchored(d.subgroupoid_lines[i], [&] { return Subgroupoid::make(g, members); }));
  }
  return out;
}

inline std::string emit_instance(const InstanceData& d) {
  std::ostringstream os;
  if (d.has_groupoid) {
    const RawGroupoid& r = d.groupoid;
    const std::size_t n = r.element_count;
    os << "GROUPOID\nelements " << n << "\nunits";
    for (Id u : r.units) os << ' ' << u;
    os << "\nrange";
    for (Id x : r.range) os << ' ' << x;
    os << "\nsource";
    for (Id x : r.source) os << ' ' << x;
    os << "\nmul\n";
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const Id v = r.compose[i * n + j];
        os << (j ? " " : "");
        if (v == kNone) os << '.';
        else os << v;
      }
      os << '\n';
    }
    if (d.modulus != 1 || !d.cocycle.empty()) {
      os << "COCYCLE\nmodulus " << d.modulus << '\n';
      for (const auto& e : d.cocycle) os << "c " << e.g << ' ' << e.h << ' ' << e.exponent << '\n';
    }
    for (const auto& s : d.subgroupoids) {
      os << "SUBGROUPOID " << s.name << "\nmembers";
      for (Id x : s.members) os << ' ' << x;
      os << '\n';
    }
  }
  if (d.rotation) {
    os << "ROTATION\ntheta " << d.rotation->theta.str() << '\n';
    for (const auto& v : d.rotation->generators) os << "generator " << v[0] << ' ' << v[1] << '\n';
  }
  return os.str();
}

// Serializable form of validated objects.
inline InstanceData instance_from(const Cocycle& c, const std::vector<std::pair<std::string, Subgroupoid>>& subs = {}) {
  InstanceData d;
  const FiniteGroupoid& g = c.groupoid();
  d.has_groupoid = true;
  d.groupoid = g.raw();
  d.modulus = c.modulus();
  for (Id x = 0; x < static_cast<Id>(g.size()); ++x)
    for (Id y = 0; y < static_cast<Id>(g.size()); ++y)
      if (g.composable(x, y) && !c(x, y).is_one()) d.cocycle.push_back({x, y, c(x, y).exponent_in(c.modulus())});
  for (const auto& [name, s] : subs) d.subgroupoids.push_back({name, s.members()});
  return d;
}

}  // namespace cartan
