#include "crn/parser.hpp"

#include <charconv>
#include <cctype>
#include <map>
#include <set>
#include <utility>

namespace crn {

namespace {

enum class Tok { Ident, Int, Decimal, Plus, Minus, Arrow, RevArrow, Semicolon, Equals, Comma, Slash, End, Bad };

struct Token {
  Tok kind;
  std::string_view text;
  std::size_t column;  // 1-based
};

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of line";
  return "'" + std::string(t.text) + "'";
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return c >= '0' && c <= '9'; }

std::vector<Token> lex(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    std::size_t start = i;
    auto push = [&](Tok kind, std::size_t len) {
      out.push_back({kind, line.substr(start, len), start + 1});
      i = start + len;
    };
    if (ident_start(c)) {
      std::size_t j = i + 1;
      while (j < line.size() && ident_char(line[j])) ++j;
      push(Tok::Ident, j - i);
    } else if (digit(c) || (c == '.' && i + 1 < line.size() && digit(line[i + 1]))) {
      std::size_t j = i;
      while (j < line.size() && digit(line[j])) ++j;
      bool decimal = false;
      if (j < line.size() && line[j] == '.') {
        decimal = true;
        ++j;
        while (j < line.size() && digit(line[j])) ++j;
      }
      if (j < line.size() && (line[j] == 'e' || line[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < line.size() && (line[k] == '+' || line[k] == '-')) ++k;
        if (k < line.size() && digit(line[k])) {
          decimal = true;
          j = k;
          while (j < line.size() && digit(line[j])) ++j;
        }
      }
      push(decimal ? Tok::Decimal : Tok::Int, j - i);
    } else if (line.substr(i, 3) == "<->") {
      push(Tok::RevArrow, 3);
    } else if (line.substr(i, 2) == "->") {
      push(Tok::Arrow, 2);
    } else if (c == '+') {
      push(Tok::Plus, 1);
    } else if (c == '-') {
      push(Tok::Minus, 1);
    } else if (c == ';') {
      push(Tok::Semicolon, 1);
    } else if (c == '=') {
      push(Tok::Equals, 1);
    } else if (c == ',') {
      push(Tok::Comma, 1);
    } else if (c == '/') {
      push(Tok::Slash, 1);
    } else {
      push(Tok::Bad, 1);
    }
  }
  out.push_back({Tok::End, {}, line.size() + 1});
  return out;
}

struct SyntaxFailure {
  std::size_t column;
  std::string message;
};

using Term = std::pair<std::string, int>;

struct ReactionLine {
  std::size_t line;
  std::vector<Term> source;
  std::vector<Term> target;
  bool reversible = false;
  std::vector<std::pair<double, std::size_t>> rates;  // value, column
};

class LineParser {
 public:
  explicit LineParser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  std::vector<std::string> species_header() {
    ++pos_;  // keyword
    std::vector<std::string> names;
    while (peek().kind != Tok::End) {
      if (peek().kind == Tok::Comma && !names.empty()) {
        ++pos_;
        continue;
      }
      if (peek().kind != Tok::Ident) fail("expected species name, found " + describe(peek()));
      names.emplace_back(next().text);
    }
    if (names.empty()) fail("species header lists no species");
    return names;
  }

  ReactionLine reaction(std::size_t line_no) {
    ReactionLine r;
    r.line = line_no;
    r.source = complex();
    if (peek().kind == Tok::RevArrow) {
      r.reversible = true;
    } else if (peek().kind != Tok::Arrow) {
      fail("expected '->' or '<->', found " + describe(peek()));
    }
    ++pos_;
    r.target = complex();
    if (peek().kind == Tok::Semicolon) {
      ++pos_;
      if (peek().kind != Tok::Ident || peek().text != "k") fail("expected 'k', found " + describe(peek()));
      ++pos_;
      expect(Tok::Equals, "'='");
      r.rates.push_back(number());
      while (peek().kind == Tok::Comma) {
        ++pos_;
        r.rates.push_back(number());
      }
      std::size_t allowed = r.reversible ? 2 : 1;
      if (r.rates.size() > allowed)
        throw SyntaxFailure{r.rates[allowed].second,
                            r.reversible ? "reversible reaction takes at most two rates"
                                         : "irreversible reaction takes one rate"};
    }
    if (peek().kind != Tok::End) fail("unexpected " + describe(peek()));
    return r;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  [[noreturn]] void fail(std::string message) const { throw SyntaxFailure{peek().column, std::move(message)}; }

  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what + ", found " + describe(peek()));
    ++pos_;
  }

  std::vector<Term> complex() {
    std::vector<Term> terms;
    if (peek().kind == Tok::Int && peek().text == "0" && toks_[pos_ + 1].kind != Tok::Ident) {
      ++pos_;
      return terms;
    }
    terms.push_back(term());
    while (peek().kind == Tok::Plus) {
      ++pos_;
      terms.push_back(term());
    }
    return terms;
  }

  Term term() {
    int coeff = 1;
    if (peek().kind == Tok::Int) {
      const Token& t = next();
      int value = 0;
      auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
      if (ec != std::errc() || p != t.text.data() + t.text.size())
        throw SyntaxFailure{t.column, "coefficient out of range"};
      if (value == 0) throw SyntaxFailure{t.column, "zero coefficient on a species term"};
      coeff = value;
    }
    if (peek().kind != Tok::Ident) fail("expected species term, found " + describe(peek()));
    return {std::string(next().text), coeff};
  }

  std::pair<double, std::size_t> number() {
    std::size_t column = peek().column;
    bool negative = false;
    if (peek().kind == Tok::Minus) {
      negative = true;
      ++pos_;
    }
    if (peek().kind != Tok::Int && peek().kind != Tok::Decimal)
      fail("expected number, found " + describe(peek()));
    double value = to_double(next());
    if (peek().kind == Tok::Slash) {
      ++pos_;
      if (peek().kind != Tok::Int) fail("expected integer denominator, found " + describe(peek()));
      double den = to_double(next());
      if (den == 0.0) throw SyntaxFailure{column, "zero denominator"};
      value /= den;
    }
    return {negative ? -value : value, column};
  }

  static double to_double(const Token& t) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || p != t.text.data() + t.text.size())
      throw SyntaxFailure{t.column, "malformed number"};
    return v;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

ParseError::ParseError(ParseErrorKind kind, std::vector<ParseDiagnostic> diagnostics)
    : std::runtime_error([&] {
        std::string msg;
        for (const auto& d : diagnostics) {
          if (!msg.empty()) msg += "\n";
          msg += "line " + std::to_string(d.line) + ", column " + std::to_string(d.column) + ": " +
                 d.message;
        }
        return msg;
      }()),
      kind_(kind),
      diagnostics_(std::move(diagnostics)) {}

ParsedNetwork parse_network(std::string_view text) {
  std::vector<std::string> species;
  std::map<std::string, std::size_t> species_index;
  auto register_species = [&](const std::string& name) {
    auto [it, inserted] = species_index.try_emplace(name, species.size());
    if (inserted) species.push_back(name);
    return it->second;
  };

  std::vector<ReactionLine> lines;
  std::vector<ParseDiagnostic> syntax;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    auto tokens = lex(line);
    if (tokens.front().kind == Tok::End) {
      if (end == text.size()) break;
      continue;
    }
    try {
      LineParser p(tokens);
      if (tokens.front().kind == Tok::Ident && tokens.front().text == "species" &&
          tokens[1].kind != Tok::Plus && tokens[1].kind != Tok::Arrow &&
          tokens[1].kind != Tok::RevArrow) {
        if (!lines.empty())
          throw SyntaxFailure{tokens.front().column, "species header must precede reactions"};
        for (const auto& name : p.species_header()) {
          if (species_index.count(name))
            throw SyntaxFailure{tokens.front().column, "species '" + name + "' declared twice"};
          register_species(name);
        }
      } else {
        lines.push_back(p.reaction(line_no));
      }
    } catch (const SyntaxFailure& f) {
      syntax.push_back({line_no, f.column, f.message});
    }
    if (end == text.size()) break;
  }
  if (!syntax.empty()) throw ParseError(ParseErrorKind::Syntax, std::move(syntax));
  if (lines.empty()) throw ParseError(ParseErrorKind::Syntax, {{1, 1, "no reactions found"}});

  for (const auto& r : lines) {
    for (const auto& [name, c] : r.source) register_species(name);
    for (const auto& [name, c] : r.target) register_species(name);
  }

  auto to_complex = [&](const std::vector<Term>& terms) {
    Complex c{std::vector<int>(species.size(), 0)};
    for (const auto& [name, coeff] : terms) c.coeffs[species_index.at(name)] += coeff;
    return c;
  };

  bool any_rates = false, all_rates = true;
  for (const auto& r : lines) {
    any_rates |= !r.rates.empty();
    all_rates &= !r.rates.empty();
  }
  if (any_rates && !all_rates) {
    std::vector<ParseDiagnostic> diags;
    for (const auto& r : lines)
      if (r.rates.empty()) diags.push_back({r.line, 1, "reaction has no rate while others do"});
    throw ParseError(ParseErrorKind::MixedRates, std::move(diags));
  }

  std::vector<ReactionSpec> specs;
  std::vector<double> k;
  std::vector<ParseDiagnostic> nonpositive;
  std::vector<ParseDiagnostic> duplicates;
  std::set<std::pair<Complex, Complex>> seen;
  for (const auto& r : lines) {
    Complex src = to_complex(r.source);
    Complex tgt = to_complex(r.target);
    for (const auto& [value, column] : r.rates)
      if (!(value > 0.0)) nonpositive.push_back({r.line, column, "rate constant must be positive"});

    auto add = [&](const Complex& a, const Complex& b, double rate) {
      if (!seen.insert({a, b}).second) {
        duplicates.push_back({r.line, 1, "reaction repeats an earlier source/target pair"});
        return;
      }
      specs.push_back({a, b});
      if (any_rates) k.push_back(rate);
    };
    double forward = r.rates.empty() ? 0.0 : r.rates[0].first;
    add(src, tgt, forward);
    if (r.reversible) add(tgt, src, r.rates.size() > 1 ? r.rates[1].first : forward);
  }
  if (!nonpositive.empty()) throw ParseError(ParseErrorKind::NonpositiveRate, std::move(nonpositive));
  if (!duplicates.empty()) throw ParseError(ParseErrorKind::DuplicateEdge, std::move(duplicates));

  ParsedNetwork out{ReactionNetwork::from_reactions(species, specs), std::nullopt};
  if (any_rates) out.rates = RateAssignment(std::move(k));
  return out;
}

std::string format_network(const ReactionNetwork& net, const std::optional<RateAssignment>& rates) {
  // The header is only needed when re-parsing would not recover the species
  // order by first appearance.
  std::vector<std::size_t> appearance;
  std::vector<bool> seen(net.num_species(), false);
  auto note = [&](const Complex& c) {
    for (std::size_t i = 0; i < c.coeffs.size(); ++i)
      if (c.coeffs[i] != 0 && !seen[i]) {
        seen[i] = true;
        appearance.push_back(i);
      }
  };
  for (const auto& e : net.edges()) {
    note(net.vertices()[e.source]);
    note(net.vertices()[e.target]);
  }
  bool need_header = appearance.size() != net.num_species();
  for (std::size_t i = 0; !need_header && i < appearance.size(); ++i) need_header = appearance[i] != i;

  std::string out;
  if (need_header) {
    out += "species";
    for (const auto& s : net.species()) out += " " + s.name;
    out += "\n";
  }
  for (std::size_t e = 0; e < net.num_edges(); ++e) {
    const auto& r = net.edges()[e];
    out += format_complex(net, net.vertices()[r.source]);
    out += " -> ";
    out += format_complex(net, net.vertices()[r.target]);
    if (rates) out += " ; k = " + format_number((*rates)[e]);
    out += "\n";
  }
  return out;
}

}  // namespace crn
