#pragma once

#include <charconv>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "jacwb/parser.hpp"
#include "jacwb/presentation.hpp"

namespace jacwb {

/// Metadata declared by `expect` lines; each key appears at most once.
struct Expectations {
  std::optional<int> edd;
  std::optional<int> dim;
  std::optional<std::vector<Ideal>> minprimes;
  std::optional<Ideal> sing;
  std::map<int, Ideal> jn;
  std::map<int, bool> cond_ii;
  std::map<int, bool> cond_iii;

  bool empty() const {
    return !edd && !dim && !minprimes && !sing && jn.empty() && cond_ii.empty() && cond_iii.empty();
  }
};

struct PresentationFile {
  RingPtr ring;
  std::vector<Polynomial> relations;
  Expectations expect;

  Presentation presentation() const { return Presentation(ring, relations); }
};

namespace detail {

inline std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

inline int parse_int(const std::string& text, std::size_t line, std::size_t column) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ParseError(line, column, "expected an integer, got '" + text + "'");
  return v;
}

inline bool parse_bool(const std::string& text, std::size_t line, std::size_t column) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw ParseError(line, column, "expected true or false, got '" + text + "'");
}

}  // namespace detail

/// Parses the presentation file grammar. Blank lines and lines starting with
/// '#' are ignored; everything else must follow field, vars, rel*, expect*.
inline PresentationFile parse_presentation(const std::string& text,
                                           MonomialOrder order = MonomialOrder::degrevlex()) {
  enum class Stage { field, vars, rels, expects };
  Stage stage = Stage::field;
  std::optional<CoeffField> field;
  PresentationFile out;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = detail::trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const std::size_t indent = raw.find_first_not_of(" \t");
    auto space = line.find_first_of(" \t");
    std::string keyword = line.substr(0, space);
    std::string rest = space == std::string::npos ? "" : detail::trim(line.substr(space));
    const std::size_t rest_column = indent + (space == std::string::npos ? line.size() : line.find(rest, space));

    if (stage == Stage::field) {
      if (keyword != "field") throw ParseError(lineno, indent + 1, "expected 'field Q' or 'field GF <p>'");
      auto words = detail::split_words(rest);
      if (words.size() == 1 && words[0] == "Q") {
        field = CoeffField::rationals();
      } else if (words.size() == 2 && words[0] == "GF") {
        std::uint64_t p = 0;
        auto [ptr, ec] = std::from_chars(words[1].data(), words[1].data() + words[1].size(), p);
        if (ec != std::errc() || ptr != words[1].data() + words[1].size())
          throw ParseError(lineno, rest_column + 4, "field modulus must be a positive integer");
        if (!CoeffField::is_prime(p) || p >= (1ull << 31))
          throw ParseError(lineno, rest_column + 4, words[1] + " is not a prime below 2^31");
        field = CoeffField::prime(p);
      } else {
        throw ParseError(lineno, rest_column + 1, "expected 'Q' or 'GF <p>'");
      }
      stage = Stage::vars;
      continue;
    }
    if (stage == Stage::vars) {
      if (keyword != "vars") throw ParseError(lineno, indent + 1, "expected 'vars <name> ...'");
      try {
        out.ring = make_ring(*field, detail::split_words(rest), order);
      } catch (const Error& e) {
        throw ParseError(lineno, rest_column + 1, e.what());
      }
      stage = Stage::rels;
      continue;
    }
    if (keyword == "rel") {
      if (stage != Stage::rels) throw ParseError(lineno, indent + 1, "'rel' lines must precede 'expect' lines");
      out.relations.push_back(PolyParser(out.ring, rest, lineno, rest_column).parse_all());
      continue;
    }
    if (keyword != "expect") throw ParseError(lineno, indent + 1, "expected 'rel' or 'expect', got '" + keyword + "'");
    stage = Stage::expects;

    auto eq = rest.find('=');
    if (eq == std::string::npos) throw ParseError(lineno, rest_column + 1, "expected 'expect <key> = <value>'");
    std::string key = detail::trim(rest.substr(0, eq));
    std::string value = detail::trim(rest.substr(eq + 1));
    const std::size_t value_column = rest_column + rest.find(value, eq + 1);
    std::optional<int> index;
    std::string name = key;
    if (auto open = key.find('('); open != std::string::npos) {
      if (key.back() != ')') throw ParseError(lineno, rest_column + 1, "malformed key '" + key + "'");
      name = key.substr(0, open);
      index = detail::parse_int(key.substr(open + 1, key.size() - open - 2), lineno, rest_column + open + 2);
    }
    auto& e = out.expect;
    auto once = [&](bool present) {
      if (present) throw ParseError(lineno, rest_column + 1, "duplicate expectation '" + key + "'");
    };
    auto ideal = [&] { return Ideal(out.ring, PolyParser(out.ring, value, lineno, value_column).parse_ideal()); };
    const bool indexed = name == "jn" || name == "cond_ii" || name == "cond_iii";
    if (indexed != index.has_value())
      throw ParseError(lineno, rest_column + 1, indexed ? "key '" + name + "' needs an index" : "key '" + name + "' takes no index");
    if (name == "edd") {
      once(e.edd.has_value());
      e.edd = detail::parse_int(value, lineno, value_column + 1);
    } else if (name == "dim") {
      once(e.dim.has_value());
      e.dim = detail::parse_int(value, lineno, value_column + 1);
    } else if (name == "minprimes") {
      once(e.minprimes.has_value());
      std::vector<Ideal> primes;
      for (auto& gens : PolyParser(out.ring, value, lineno, value_column).parse_ideal_list())
        primes.emplace_back(out.ring, std::move(gens));
      e.minprimes = std::move(primes);
    } else if (name == "sing") {
      once(e.sing.has_value());
      e.sing = ideal();
    } else if (name == "jn") {
      once(e.jn.count(*index) > 0);
      e.jn.emplace(*index, ideal());
    } else if (name == "cond_ii") {
      once(e.cond_ii.count(*index) > 0);
      e.cond_ii[*index] = detail::parse_bool(value, lineno, value_column + 1);
    } else if (name == "cond_iii") {
      once(e.cond_iii.count(*index) > 0);
      e.cond_iii[*index] = detail::parse_bool(value, lineno, value_column + 1);
    } else {
      throw ParseError(lineno, rest_column + 1, "unknown expectation key '" + name + "'");
    }
  }
  if (stage == Stage::field) throw ParseError(lineno + 1, 1, "missing 'field' line");
  if (stage == Stage::vars) throw ParseError(lineno + 1, 1, "missing 'vars' line");
  return out;
}

/// Canonical text form; reparses to an equal file.
inline std::string serialize_presentation(const PresentationFile& f) {
  std::ostringstream out;
  const auto& k = f.ring->field();
  out << "field " << (k.is_rational() ? std::string("Q") : "GF " + std::to_string(k.characteristic())) << "\n";
  out << "vars";
  for (const auto& v : f.ring->variables()) out << " " << v;
  out << "\n";
  for (const auto& r : f.relations) out << "rel " << r.to_string() << "\n";
  const auto& e = f.expect;
  if (e.edd) out << "expect edd = " << *e.edd << "\n";
  if (e.dim) out << "expect dim = " << *e.dim << "\n";
  if (e.minprimes) {
    out << "expect minprimes = ";
    for (std::size_t i = 0; i < e.minprimes->size(); ++i) out << (i ? ", " : "") << (*e.minprimes)[i].to_string();
    out << "\n";
  }
  if (e.sing) out << "expect sing = " << e.sing->to_string() << "\n";
  for (const auto& [n, I] : e.jn) out << "expect jn(" << n << ") = " << I.to_string() << "\n";
  for (const auto& [n, b] : e.cond_ii) out << "expect cond_ii(" << n << ") = " << (b ? "true" : "false") << "\n";
  for (const auto& [n, b] : e.cond_iii) out << "expect cond_iii(" << n << ") = " << (b ? "true" : "false") << "\n";
  return out.str();
}

inline PresentationFile presentation_file(const Presentation& p) {
  return PresentationFile{p.ring(), p.generators(), {}};
}

/// Structural equality: same field, variables, relation list and expectations
/// (expected ideals compared by their generator lists).
inline bool operator==(const PresentationFile& a, const PresentationFile& b) {
  return serialize_presentation(a) == serialize_presentation(b) && *a.ring == *b.ring;
}

}  // namespace jacwb
