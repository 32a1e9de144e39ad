#include "codequiv/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string_view>

#include "codequiv/errors.hpp"

namespace codequiv {
namespace {

struct Line {
  std::size_t number = 0;
  std::vector<std::string> tokens;
};

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  std::optional<Line> next() {
    std::string text;
    while (std::getline(in_, text)) {
      ++number_;
      if (const auto hash = text.find('#'); hash != std::string::npos) text.resize(hash);
      std::istringstream words(text);
      Line line{number_, {}};
      for (std::string w; words >> w;) line.tokens.push_back(w);
      if (!line.tokens.empty()) return line;
    }
    return std::nullopt;
  }

  Line require(const std::string& what) {
    auto line = next();
    if (!line) throw ParseError(number_ + 1, "unexpected end of input, expected " + what);
    return *line;
  }

 private:
  std::istream& in_;
  std::size_t number_ = 0;
};

std::uint64_t parse_uint(const Line& line, std::string_view text, const std::string& what) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError(line.number, "invalid " + what + " '" + std::string(text) + "'");
  }
  return v;
}

// "key=value" tokens after the first word.
std::map<std::string, std::string> parse_keys(const Line& line, std::size_t first,
                                              std::initializer_list<std::string_view> allowed) {
  std::map<std::string, std::string> out;
  for (std::size_t i = first; i < line.tokens.size(); ++i) {
    const auto& tok = line.tokens[i];
    const auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ParseError(line.number, "expected key=value, got '" + tok + "'");
    }
    const std::string key = tok.substr(0, eq);
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ParseError(line.number, "unknown key '" + key + "'");
    }
    if (!out.emplace(key, tok.substr(eq + 1)).second) {
      throw ParseError(line.number, "duplicate key '" + key + "'");
    }
  }
  return out;
}

std::uint64_t required_uint(const Line& line, const std::map<std::string, std::string>& keys,
                            const std::string& key) {
  const auto it = keys.find(key);
  if (it == keys.end()) throw ParseError(line.number, "missing " + key + "=");
  return parse_uint(line, it->second, key);
}

Elem parse_element(const Field& f, const Line& line, const std::string& token) {
  try {
    return f.parse(token);
  } catch (const ParseError& e) {
    throw ParseError(line.number, e.what());
  }
}

std::vector<Elem> parse_row(const Field& f, const Line& line, std::size_t first,
                            std::size_t expected) {
  if (line.tokens.size() - first != expected) {
    throw ParseError(line.number, "expected " + std::to_string(expected) + " entries, got " +
                                      std::to_string(line.tokens.size() - first));
  }
  std::vector<Elem> row;
  for (std::size_t i = first; i < line.tokens.size(); ++i) {
    row.push_back(parse_element(f, line, line.tokens[i]));
  }
  return row;
}

void expect_word(const Line& line, std::string_view word) {
  if (line.tokens.front() != word) {
    throw ParseError(line.number, "expected '" + std::string(word) + "', got '" +
                                      line.tokens.front() + "'");
  }
}

template <class T>
T with_line(const Line& line, auto&& build) {
  try {
    return build();
  } catch (const CodeError& e) {
    throw ParseError(line.number, e.what());
  } catch (const FieldError& e) {
    throw ParseError(line.number, e.what());
  }
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  return in;
}

// Line label of the form "<prefix><i>:" with 1 <= i <= n.
std::size_t labelled_index(const Line& line, std::string_view prefix, std::size_t n) {
  std::string_view tok = line.tokens.front();
  if (!tok.starts_with(prefix) || !tok.ends_with(':')) {
    throw ParseError(line.number, "expected '" + std::string(prefix) + "<i>:', got '" +
                                      std::string(tok) + "'");
  }
  tok.remove_prefix(prefix.size());
  tok.remove_suffix(1);
  const auto i = parse_uint(line, tok, "index");
  if (i < 1 || i > n) throw ParseError(line.number, "index out of range");
  return static_cast<std::size_t>(i - 1);
}

}  // namespace

AnyCode read_code(std::istream& in) {
  LineReader reader(in);
  const Line head = reader.require("field line");
  expect_word(head, "field");
  const auto fkeys = parse_keys(head, 1, {"p", "h"});
  const auto field = with_line<FieldPtr>(head, [&] {
    return Field::make(static_cast<std::uint32_t>(required_uint(head, fkeys, "p")),
                       static_cast<std::uint32_t>(required_uint(head, fkeys, "h")));
  });

  const Line kind = reader.require("kind line");
  expect_word(kind, "kind");
  if (kind.tokens.size() < 2) throw ParseError(kind.number, "missing code kind");
  const std::string& name = kind.tokens[1];
  if (name == "linear") {
    const auto keys = parse_keys(kind, 2, {"k", "n"});
    const auto k = required_uint(kind, keys, "k");
    const auto n = required_uint(kind, keys, "n");
    if (k == 0 || n == 0 || k > n) throw ParseError(kind.number, "need 1 <= k <= n");
    Matrix g(field, k, n);
    for (std::size_t r = 0; r < k; ++r) {
      const Line row = reader.require("generator row");
      const auto values = parse_row(*field, row, 0, n);
      std::copy(values.begin(), values.end(), g.row(r).begin());
    }
    if (const auto extra = reader.next()) throw ParseError(extra->number, "unexpected extra row");
    return with_line<AnyCode>(kind, [&] { return AnyCode(LinearCode(std::move(g))); });
  }
  if (name == "additive") {
    const auto keys = parse_keys(kind, 2, {"k", "h-rows", "n", "expanded"});
    const auto k = required_uint(kind, keys, "k");
    const auto rows = required_uint(kind, keys, "h-rows");
    const auto n = required_uint(kind, keys, "n");
    bool expanded = false;
    if (const auto it = keys.find("expanded"); it != keys.end()) {
      if (it->second != "true" && it->second != "false") {
        throw ParseError(kind.number, "expanded must be true or false");
      }
      expanded = it->second == "true";
    }
    if (rows != k * field->h()) throw ParseError(kind.number, "h-rows must equal k * h");
    if (n == 0 || rows == 0) throw ParseError(kind.number, "empty code");
    if (expanded) {
      const FieldPtr fp = field->prime_field();
      Matrix m(fp, rows, n * field->h());
      for (std::size_t r = 0; r < rows; ++r) {
        const Line row = reader.require("generator row");
        const auto values = parse_row(*fp, row, 0, n * field->h());
        std::copy(values.begin(), values.end(), m.row(r).begin());
      }
      if (const auto extra = reader.next()) throw ParseError(extra->number, "unexpected extra row");
      return with_line<AnyCode>(kind,
                                [&] { return AnyCode(AdditiveCode::from_expanded(field, m)); });
    }
    Matrix g(field, rows, n);
    for (std::size_t r = 0; r < rows; ++r) {
      const Line row = reader.require("generator row");
      const auto values = parse_row(*field, row, 0, n);
      std::copy(values.begin(), values.end(), g.row(r).begin());
    }
    if (const auto extra = reader.next()) throw ParseError(extra->number, "unexpected extra row");
    return with_line<AnyCode>(kind, [&] { return AnyCode(AdditiveCode(std::move(g))); });
  }
  throw ParseError(kind.number, "unknown code kind '" + name + "'");
}

AnyCode read_code_file(const std::string& path) {
  auto in = open(path);
  return read_code(in);
}

const Code& as_code(const AnyCode& code) {
  return std::visit([](const auto& c) -> const Code& { return c; }, code);
}

AdditiveCode as_additive(const AnyCode& code) {
  if (const auto* linear = std::get_if<LinearCode>(&code)) return AdditiveCode::from_linear(*linear);
  return std::get<AdditiveCode>(code);
}

std::string format_code(const LinearCode& code) {
  const Field& f = *code.field();
  const Matrix& g = code.generator().matrix();
  std::ostringstream out;
  out << "field p=" << f.p() << " h=" << f.h() << "\n";
  out << "kind linear k=" << g.rows() << " n=" << g.cols() << "\n";
  for (std::size_t r = 0; r < g.rows(); ++r) {
    for (std::size_t c = 0; c < g.cols(); ++c) out << (c ? " " : "") << f.format(g(r, c));
    out << "\n";
  }
  return out.str();
}

std::string format_code(const AdditiveCode& code, bool expanded) {
  const Field& f = *code.field();
  const Matrix& g = expanded ? code.expanded() : code.generators();
  std::ostringstream out;
  out << "field p=" << f.p() << " h=" << f.h() << "\n";
  out << "kind additive k=" << code.k() << " h-rows=" << g.rows() << " n=" << code.length()
      << (expanded ? " expanded=true" : "") << "\n";
  for (std::size_t r = 0; r < g.rows(); ++r) {
    for (std::size_t c = 0; c < g.cols(); ++c) {
      out << (c ? " " : "");
      if (expanded) {
        out << g(r, c);
      } else {
        out << f.format(g(r, c));
      }
    }
    out << "\n";
  }
  return out.str();
}

AnyWitness read_witness(std::istream& in, const FieldPtr& field) {
  const Field& f = *field;
  LineReader reader(in);
  const Line head = reader.require("witness header");
  expect_word(head, "witness");
  const auto keys = parse_keys(head, 1, {"kind", "n", "p", "h"});
  const auto kind_it = keys.find("kind");
  if (kind_it == keys.end()) throw ParseError(head.number, "missing kind=");
  const std::size_t n = required_uint(head, keys, "n");
  if (n == 0) throw ParseError(head.number, "n must be positive");
  if (keys.contains("p") && required_uint(head, keys, "p") != f.p()) {
    throw ParseError(head.number, "witness is over a different field");
  }
  if (keys.contains("h") && required_uint(head, keys, "h") != f.h()) {
    throw ParseError(head.number, "witness is over a different field");
  }

  const Line alpha_line = reader.require("alpha line");
  expect_word(alpha_line, "alpha:");
  if (alpha_line.tokens.size() != n + 1) {
    throw ParseError(alpha_line.number, "alpha needs " + std::to_string(n) + " entries");
  }
  std::vector<std::size_t> alpha;
  for (std::size_t i = 1; i <= n; ++i) {
    const auto v = parse_uint(alpha_line, alpha_line.tokens[i], "coordinate");
    if (v < 1 || v > n) throw ParseError(alpha_line.number, "alpha entry out of range");
    alpha.push_back(static_cast<std::size_t>(v - 1));
  }
  if (!is_permutation(alpha, n)) throw ParseError(alpha_line.number, "alpha is not a permutation");

  AnyWitness out;
  const std::string& kind = kind_it->second;
  if (kind == "general") {
    GeneralWitness w{alpha, std::vector<std::vector<Elem>>(n)};
    const auto& order = f.canonical_order();
    for (std::size_t seen = 0; seen < n; ++seen) {
      const Line line = reader.require("sigma line");
      const std::size_t i = labelled_index(line, "sigma", n);
      if (!w.sigmas[i].empty()) throw ParseError(line.number, "duplicate sigma line");
      const auto images = parse_row(f, line, 1, f.q());
      w.sigmas[i].assign(f.q(), 0);
      for (std::size_t x = 0; x < f.q(); ++x) w.sigmas[i][order[x]] = images[x];
      std::vector<bool> hit(f.q(), false);
      for (Elem y : images) {
        if (hit[y]) throw ParseError(line.number, "sigma is not a permutation of the field");
        hit[y] = true;
      }
    }
    out = std::move(w);
  } else if (kind == "semilinear") {
    const Line t_line = reader.require("t line");
    const auto& tok = t_line.tokens.front();
    if (t_line.tokens.size() != 1 || !tok.starts_with("t=")) {
      throw ParseError(t_line.number, "expected t=<t>");
    }
    const auto t = parse_uint(t_line, std::string_view(tok).substr(2), "exponent");
    if (t >= f.h()) throw ParseError(t_line.number, "Frobenius exponent out of range");
    const Line l_line = reader.require("lambda line");
    expect_word(l_line, "lambda:");
    auto lambdas = parse_row(f, l_line, 1, n);
    for (Elem l : lambdas) {
      if (l == 0) throw ParseError(l_line.number, "lambda entries must be nonzero");
    }
    out = SemiLinearWitness{alpha, std::move(lambdas), static_cast<std::uint32_t>(t)};
  } else if (kind == "additive") {
    std::vector<std::optional<LinearizedMap>> maps(n);
    for (std::size_t seen = 0; seen < n; ++seen) {
      const Line line = reader.require("map line");
      const std::size_t i = labelled_index(line, "c", n);
      if (maps[i]) throw ParseError(line.number, "duplicate map line");
      maps[i] = LinearizedMap(field, parse_row(f, line, 1, f.h()));
      if (!maps[i]->is_permutation()) throw ParseError(line.number, "map is not invertible");
    }
    AdditiveWitness w{alpha, {}};
    for (auto& m : maps) w.maps.push_back(std::move(*m));
    out = std::move(w);
  } else {
    throw ParseError(head.number, "unknown witness kind '" + kind + "'");
  }
  if (const auto extra = reader.next()) throw ParseError(extra->number, "unexpected extra line");
  return out;
}

AnyWitness read_witness_file(const std::string& path, const FieldPtr& field) {
  auto in = open(path);
  return read_witness(in, field);
}

std::string format_witness(const Field& field, const AnyWitness& w,
                           const std::vector<std::string>& comments) {
  std::ostringstream out;
  auto alpha_line = [&](const std::vector<std::size_t>& alpha) {
    out << "alpha:";
    for (auto a : alpha) out << " " << a + 1;
    out << "\n";
  };
  auto header = [&](const char* kind, std::size_t n) {
    out << "witness kind=" << kind << " n=" << n << " p=" << field.p() << " h=" << field.h()
        << "\n";
    for (const auto& c : comments) out << "# " << c << "\n";
  };
  if (const auto* g = std::get_if<GeneralWitness>(&w)) {
    header("general", g->alpha.size());
    alpha_line(g->alpha);
    for (std::size_t i = 0; i < g->sigmas.size(); ++i) {
      out << "sigma" << i + 1 << ":";
      for (Elem x : field.canonical_order()) out << " " << field.format(g->sigmas[i][x]);
      out << "\n";
    }
  } else if (const auto* s = std::get_if<SemiLinearWitness>(&w)) {
    header("semilinear", s->alpha.size());
    alpha_line(s->alpha);
    out << "t=" << s->t << "\n";
    out << "lambda:";
    for (Elem l : s->lambdas) out << " " << field.format(l);
    out << "\n";
  } else {
    const auto& a = std::get<AdditiveWitness>(w);
    header("additive", a.alpha.size());
    alpha_line(a.alpha);
    for (std::size_t i = 0; i < a.maps.size(); ++i) {
      out << "c" << i + 1 << ":";
      for (Elem c : a.maps[i].coeffs()) out << " " << field.format(c);
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace codequiv
