#include "codequiv/code_core.hpp"

#include <algorithm>
#include <limits>

#include "codequiv/errors.hpp"

namespace codequiv {
namespace {

void check_budget(const Code& code, std::uint64_t budget) {
  const std::uint64_t p = code.field()->p();
  std::uint64_t size = 1;
  for (std::size_t i = 0; i < code.prime_dimension(); ++i) {
    size *= p;
    if (size > budget) {
      throw BudgetExceeded("code has more than " + std::to_string(budget) + " codewords");
    }
  }
}

}  // namespace

GeneratorMatrix::GeneratorMatrix(Matrix m) : m_(std::move(m)) {
  if (!m_.field()) throw CodeError("generator matrix without a field");
  if (m_.rows() == 0) throw CodeError("generator matrix needs at least one row");
  if (m_.rows() > m_.cols()) throw CodeError("generator matrix has more rows than columns");
  if (rank(m_) != m_.rows()) throw CodeError("generator matrix rows are linearly dependent");
}

std::uint64_t Code::size() const {
  const std::uint64_t p = field()->p();
  std::uint64_t size = 1;
  for (std::size_t i = 0; i < prime_dimension(); ++i) {
    if (size > std::numeric_limits<std::uint64_t>::max() / 2 / p) {
      throw CodeError("code size does not fit in 63 bits");
    }
    size *= p;
  }
  return size;
}

std::vector<Word> Code::codewords(std::uint64_t budget) const {
  std::vector<Word> out;
  for_each_codeword([&](std::span<const Elem> w) { out.emplace_back(w.begin(), w.end()); }, budget);
  return out;
}

LinearCode::LinearCode(GeneratorMatrix generator)
    : generator_(std::move(generator)), reduced_(generator_.matrix()) {
  pivots_ = row_reduce(reduced_);
}

bool LinearCode::contains(std::span<const Elem> word) const {
  if (word.size() != length()) throw CodeError("word length does not match the code");
  const Field& f = *field();
  std::vector<Elem> message(pivots_.size());
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    if (!f.contains(word[pivots_[i]])) throw CodeError("word symbol outside the field");
    message[i] = word[pivots_[i]];
  }
  return reduced_.left_multiply(message) == Word(word.begin(), word.end());
}

Word LinearCode::encode(std::span<const Elem> message) const {
  return generator_.matrix().left_multiply(message);
}

void LinearCode::for_each_codeword(const std::function<void(std::span<const Elem>)>& visit,
                                   std::uint64_t budget) const {
  check_budget(*this, budget);
  const std::uint32_t q = field()->q();
  const std::size_t k = dimension();
  std::vector<Elem> message(k, 0);
  for (;;) {
    const Word w = encode(message);
    visit(w);
    std::size_t i = 0;
    while (i < k && message[i] == q - 1) message[i++] = 0;
    if (i == k) break;
    ++message[i];
  }
}

StandardForm standard_form(const Matrix& g) {
  Matrix reduced = g;
  const auto pivots = row_reduce(reduced);
  if (pivots.size() != g.rows()) throw CodeError("generator matrix is rank deficient");
  std::vector<std::size_t> perm(pivots.begin(), pivots.end());
  std::vector<bool> used(g.cols(), false);
  for (auto c : pivots) used[c] = true;
  for (std::size_t c = 0; c < g.cols(); ++c) {
    if (!used[c]) perm.push_back(c);
  }
  return {reduced.select_columns(perm), perm};
}

std::size_t hamming_weight(std::span<const Elem> u) {
  return static_cast<std::size_t>(std::count_if(u.begin(), u.end(), [](Elem x) { return x != 0; }));
}

std::size_t hamming_distance(std::span<const Elem> u, std::span<const Elem> v) {
  if (u.size() != v.size()) throw CodeError("words have different lengths");
  std::size_t d = 0;
  for (std::size_t i = 0; i < u.size(); ++i) d += (u[i] != v[i]);
  return d;
}

std::size_t minimum_distance(const Code& code, std::uint64_t budget) {
  std::size_t best = code.length() + 1;
  code.for_each_codeword(
      [&](std::span<const Elem> w) {
        const std::size_t wt = hamming_weight(w);
        if (wt != 0) best = std::min(best, wt);
      },
      budget);
  if (best > code.length()) throw CodeError("code has no nonzero codeword");
  return best;
}

std::vector<std::uint64_t> weight_distribution(const Code& code, std::uint64_t budget) {
  std::vector<std::uint64_t> dist(code.length() + 1, 0);
  code.for_each_codeword([&](std::span<const Elem> w) { ++dist[hamming_weight(w)]; }, budget);
  return dist;
}

bool is_mds(std::uint64_t code_size, std::size_t n, std::size_t d, std::uint64_t alphabet) {
  if (d == 0 || d > n + 1) return false;
  std::uint64_t bound = 1;
  for (std::size_t i = 0; i < n - d + 1; ++i) {
    if (bound > code_size / alphabet) return false;
    bound *= alphabet;
  }
  return bound == code_size;
}

MdsReport mds_report(const Code& code, std::uint64_t budget) {
  const std::size_t d = minimum_distance(code, budget);
  const std::uint64_t size = code.size();
  return {is_mds(size, code.length(), d, code.field()->q()), d, size};
}

Elem Conic::evaluate(std::span<const Elem> x) const {
  if (x.size() != 3) throw CodeError("conic points have three coordinates");
  const Field& f = *field;
  const std::array<Elem, 6> monomials = {f.mul(x[0], x[0]), f.mul(x[1], x[1]), f.mul(x[2], x[2]),
                                         f.mul(x[0], x[1]), f.mul(x[0], x[2]), f.mul(x[1], x[2])};
  Elem acc = 0;
  for (std::size_t i = 0; i < 6; ++i) acc = f.add(acc, f.mul(coeffs[i], monomials[i]));
  return acc;
}

Conic Conic::normalized() const {
  Conic out = *this;
  const auto lead = std::find_if(coeffs.begin(), coeffs.end(), [](Elem c) { return c != 0; });
  if (lead == coeffs.end()) return out;
  const Elem scale = field->inv(*lead);
  for (auto& c : out.coeffs) c = field->mul(c, scale);
  return out;
}

bool Conic::proportional_to(const Conic& other) const {
  require_same_field(*field, *other.field);
  return normalized().coeffs == other.normalized().coeffs;
}

std::string Conic::to_string() const {
  static constexpr std::array<const char*, 6> kNames = {"x1^2", "x2^2", "x3^2",
                                                        "x1x2", "x1x3", "x2x3"};
  std::string out;
  for (std::size_t i = 0; i < 6; ++i) {
    if (coeffs[i] == 0) continue;
    if (!out.empty()) out += " + ";
    if (coeffs[i] != 1) out += field->format(coeffs[i]);
    out += kNames[i];
  }
  return out.empty() ? "0" : out;
}

std::vector<Conic> conic_space(const FieldPtr& field, std::span<const std::vector<Elem>> points) {
  const Field& f = *field;
  Matrix system(field, points.size(), 6);
  for (std::size_t r = 0; r < points.size(); ++r) {
    const auto& x = points[r];
    if (x.size() != 3) throw CodeError("conic points have three coordinates");
    system(r, 0) = f.mul(x[0], x[0]);
    system(r, 1) = f.mul(x[1], x[1]);
    system(r, 2) = f.mul(x[2], x[2]);
    system(r, 3) = f.mul(x[0], x[1]);
    system(r, 4) = f.mul(x[0], x[2]);
    system(r, 5) = f.mul(x[1], x[2]);
  }
  const Matrix basis = nullspace(system);
  std::vector<Conic> out;
  for (std::size_t i = 0; i < basis.rows(); ++i) {
    Conic c{field, {}};
    std::copy(basis.row(i).begin(), basis.row(i).end(), c.coeffs.begin());
    out.push_back(c);
  }
  return out;
}

std::vector<std::vector<Elem>> columns_as_points(const Matrix& g) {
  if (g.rows() != 3) throw CodeError("conic machinery needs a 3-row generator matrix");
  std::vector<std::vector<Elem>> out;
  for (std::size_t c = 0; c < g.cols(); ++c) out.push_back(g.column(c));
  return out;
}

std::vector<std::size_t> column_weights(const Matrix& g) {
  std::vector<std::size_t> out(g.cols(), 0);
  for (std::size_t r = 0; r < g.rows(); ++r) {
    for (std::size_t c = 0; c < g.cols(); ++c) out[c] += (g(r, c) != 0);
  }
  return out;
}

bool all_columns_weight_one(const Matrix& a, const Matrix& b) {
  const auto one = [](std::size_t w) { return w == 1; };
  const auto wa = column_weights(a);
  const auto wb = column_weights(b);
  return std::all_of(wa.begin(), wa.end(), one) && std::all_of(wb.begin(), wb.end(), one);
}

Matrix frobenius_matrix(const Matrix& g, std::uint32_t t) {
  Matrix out = g;
  for (std::size_t r = 0; r < g.rows(); ++r) {
    for (std::size_t c = 0; c < g.cols(); ++c) out(r, c) = g.field()->frobenius(g(r, c), t);
  }
  return out;
}

LinearCode permute_coordinates(const LinearCode& code, std::span<const std::size_t> perm) {
  const Matrix& g = code.generator().matrix();
  if (!is_permutation(perm, g.cols())) throw CodeError("not a permutation of the coordinates");
  Matrix out(g.field(), g.rows(), g.cols());
  for (std::size_t c = 0; c < g.cols(); ++c) {
    for (std::size_t r = 0; r < g.rows(); ++r) out(r, perm[c]) = g(r, c);
  }
  return LinearCode(std::move(out));
}

bool is_permutation(std::span<const std::size_t> perm, std::size_t n) {
  if (perm.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (auto i : perm) {
    if (i >= n || seen[i]) return false;
    seen[i] = true;
  }
  return true;
}

}  // namespace codequiv
