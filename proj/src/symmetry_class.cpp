#include "symrmt/symmetry_class.hpp"

#include <charconv>
#include <map>
#include <sstream>

#include "symrmt/errors.hpp"

namespace symrmt {

std::string to_string(SymmetryTag tag) {
  switch (tag) {
    case SymmetryTag::A: return "A";
    case SymmetryTag::AI: return "AI";
    case SymmetryTag::AII: return "AII";
    case SymmetryTag::AIII: return "AIII";
    case SymmetryTag::BD: return "BD";
    case SymmetryTag::BDI: return "BDI";
    case SymmetryTag::DIII: return "DIII";
    case SymmetryTag::C: return "C";
    case SymmetryTag::CI: return "CI";
    case SymmetryTag::CII: return "CII";
  }
  return "?";
}

SymmetryTag parse_tag(const std::string& text) {
  for (SymmetryTag tag : kAllTags)
    if (to_string(tag) == text) return tag;
  if (text == "B/D") return SymmetryTag::BD;
  throw ArgumentError("unknown symmetry class '" + text + "' (expected one of A, AI, AII, AIII, BD, BDI, DIII, C, CI, CII)");
}

std::string to_string(GroupKind group) {
  switch (group) {
    case GroupKind::U: return "U";
    case GroupKind::O: return "O";
    case GroupKind::Sp: return "Sp";
  }
  return "?";
}

std::string to_string(Structure structure) {
  switch (structure) {
    case Structure::complex: return "complex";
    case Structure::real: return "real";
    case Structure::quaternion: return "quaternion";
  }
  return "?";
}

bool is_chiral(SymmetryTag tag) {
  return tag == SymmetryTag::AIII || tag == SymmetryTag::BDI || tag == SymmetryTag::CII;
}

SymmetryClass SymmetryClass::make(SymmetryTag tag, int n, int p, int q) {
  if (n < 1) throw ArgumentError("class size n must be >= 1");
  if (is_chiral(tag)) {
    if (p < 1 || q < 1 || p + q != n)
      throw ArgumentError("chiral class " + symrmt::to_string(tag) + " needs p, q >= 1 with p + q = n (got n=" +
                          std::to_string(n) + ", p=" + std::to_string(p) + ", q=" + std::to_string(q) + ")");
  } else if (p != 0 || q != 0) {
    throw ArgumentError("class " + symrmt::to_string(tag) + " takes no p, q");
  }
  return SymmetryClass{tag, n, p, q};
}

SymmetryClass SymmetryClass::parse(const std::string& text) {
  const auto colon = text.find(':');
  const SymmetryTag tag = parse_tag(text.substr(0, colon));
  std::map<std::string, int> fields;
  if (colon != std::string::npos) {
    std::stringstream list(text.substr(colon + 1));
    std::string item;
    while (std::getline(list, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw ArgumentError("malformed class field '" + item + "' in '" + text + "'");
      const std::string key = item.substr(0, eq);
      const std::string value = item.substr(eq + 1);
      if (key != "n" && key != "p" && key != "q")
        throw ArgumentError("unknown class field '" + key + "' in '" + text + "'");
      int parsed = 0;
      const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
      if (ec != std::errc() || end != value.data() + value.size())
        throw ArgumentError("class field '" + key + "' is not an integer in '" + text + "'");
      if (!fields.emplace(key, parsed).second) throw ArgumentError("repeated class field '" + key + "'");
    }
  }
  const int p = fields.count("p") ? fields["p"] : 0;
  const int q = fields.count("q") ? fields["q"] : 0;
  int n = 0;
  if (fields.count("n"))
    n = fields["n"];
  else if (is_chiral(tag))
    n = p + q;
  else
    throw ArgumentError("class descriptor '" + text + "' lacks n");
  return make(tag, n, p, q);
}

std::string SymmetryClass::to_string() const {
  std::string out = symrmt::to_string(tag) + ":n=" + std::to_string(n);
  if (chiral()) out += ",p=" + std::to_string(p) + ",q=" + std::to_string(q);
  return out;
}

GroupKind SymmetryClass::group() const {
  switch (tag) {
    case SymmetryTag::A:
    case SymmetryTag::AI:
    case SymmetryTag::AII:
    case SymmetryTag::AIII: return GroupKind::U;
    case SymmetryTag::BD:
    case SymmetryTag::BDI:
    case SymmetryTag::DIII: return GroupKind::O;
    default: return GroupKind::Sp;
  }
}

Structure SymmetryClass::structure() const {
  switch (group()) {
    case GroupKind::U: return Structure::complex;
    case GroupKind::O: return Structure::real;
    case GroupKind::Sp: return Structure::quaternion;
  }
  return Structure::complex;
}

int SymmetryClass::ambient_size() const { return group() == GroupKind::Sp ? 2 * n : delta() * n; }

int SymmetryClass::group_parameter() const { return group() == GroupKind::Sp ? n : delta() * n; }

}  // namespace symrmt
