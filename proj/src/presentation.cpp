#include "operad/presentation.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

namespace operad {

bool Presentation::is_monomial() const {
  return std::all_of(relations.begin(), relations.end(),
                     [](const OperadElement& r) { return r.size() == 1; });
}

std::vector<TreeMonomial> Presentation::monomials() const {
  std::vector<TreeMonomial> out;
  for (const auto& r : relations) {
    if (r.size() != 1) throw HypothesisError("presentation is not monomial");
    out.push_back(r.terms().begin()->first);
  }
  return out;
}

int Presentation::max_relation_arity() const {
  int a = 0;
  for (const auto& r : relations) a = std::max(a, r.arity());
  return a;
}

MonomialOrder Presentation::order(const std::vector<std::string>& override_names) const {
  return MonomialOrder::from_names(signature,
                                   override_names.empty() ? precedence : override_names);
}

Presentation monomial_presentation(Mode mode, const Signature& sig,
                                   const std::vector<TreeMonomial>& monomials) {
  Presentation p;
  p.mode = mode;
  p.signature = sig;
  for (const auto& m : monomials) p.relations.emplace_back(m);
  return p;
}

namespace {

std::vector<std::string> split_words(std::string_view s, bool commas) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c)) || (commas && c == ',')) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

}  // namespace

Presentation parse_presentation(std::string_view text) {
  Presentation p;
  std::optional<Mode> mode;
  bool have_generators = false, in_relations = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto words = split_words(line, false);
    if (words.empty()) continue;
    try {
      if (in_relations) {
        if (!have_generators) throw ParseError("relations before generators");
        OperadElement r = parse_element(line, p.signature, *mode);
        if (r.is_zero()) throw ParseError("relation is zero");
        p.relations.push_back(std::move(r));
        continue;
      }
      const std::string& key = words[0];
      if (key == "mode") {
        if (words.size() != 2) throw ParseError("expected 'mode planar' or 'mode shuffle'");
        if (words[1] == "planar") {
          mode = Mode::planar;
        } else if (words[1] == "shuffle") {
          mode = Mode::shuffle;
        } else {
          throw ParseError("unknown mode '" + words[1] + "'");
        }
      } else if (key == "generators") {
        std::vector<Generator> gens;
        for (std::size_t i = 1; i < words.size(); ++i) {
          auto colon = words[i].find(':');
          if (colon == std::string::npos) {
            throw ParseError("generator '" + words[i] + "' needs the form name:arity");
          }
          std::string name = words[i].substr(0, colon);
          std::string ar = words[i].substr(colon + 1);
          if (ar.empty() || !std::all_of(ar.begin(), ar.end(), ::isdigit) || ar.size() > 3) {
            throw ParseError("bad arity in '" + words[i] + "'");
          }
          if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_') ||
              !std::all_of(name.begin(), name.end(), [](char c) {
                return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
              })) {
            throw ParseError("bad generator name '" + name + "'");
          }
          gens.push_back({name, std::stoi(ar)});
        }
        if (gens.empty()) throw ParseError("no generators declared");
        try {
          p.signature = Signature(std::move(gens));
        } catch (const ParseError&) {
          throw;
        } catch (const Error& e) {
          throw ParseError(e.what());
        }
        have_generators = true;
      } else if (key == "precedence") {
        p.precedence = split_words(line.substr(line.find("precedence") + 10), true);
      } else if (key == "relations") {
        if (words.size() != 1) throw ParseError("'relations' must stand on its own line");
        if (!mode) throw ParseError("mode must be declared before relations");
        if (!have_generators) throw ParseError("generators must be declared before relations");
        in_relations = true;
      } else {
        throw ParseError("unknown section '" + key + "'");
      }
    } catch (const ParseError& e) {
      if (e.line() > 0) throw;
      throw ParseError(e.what(), line_no);
    }
  }
  if (!mode) throw ParseError("missing 'mode' line");
  if (!have_generators) throw ParseError("missing 'generators' line");
  p.mode = *mode;
  try {
    (void)p.order();
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
  return p;
}

Presentation load_presentation(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_presentation(ss.str());
}

std::string format_presentation(const Presentation& p) {
  std::string out = "mode " + std::string(to_string(p.mode)) + "\ngenerators";
  for (const auto& g : p.signature.generators()) out += " " + g.name + ":" + std::to_string(g.arity);
  out += "\n";
  if (!p.precedence.empty()) {
    out += "precedence ";
    for (std::size_t i = 0; i < p.precedence.size(); ++i) out += (i ? "," : "") + p.precedence[i];
    out += "\n";
  }
  out += "relations\n";
  MonomialOrder order = p.order();
  for (const auto& r : p.relations) out += format_element(r, p.signature, order) + "\n";
  return out;
}

}  // namespace operad
