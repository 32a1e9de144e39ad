#include "codequiv/additive_codes.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

#include "codequiv/detail/invariants.hpp"
#include "codequiv/detail/normalization.hpp"
#include "codequiv/errors.hpp"
#include "codequiv/linearized.hpp"

namespace codequiv {
namespace {

using Kind = ExtractionError::Kind;

Matrix expand(const Matrix& g) {
  const Field& f = *g.field();
  const std::size_t h = f.h();
  Matrix out(f.prime_field(), g.rows(), g.cols() * h);
  for (std::size_t i = 0; i < g.rows(); ++i) {
    for (std::size_t c = 0; c < g.cols(); ++c) {
      const auto d = f.digits(g(i, c));
      for (std::size_t j = 0; j < h; ++j) out(i, c * h + j) = d[j];
    }
  }
  return out;
}

Word regroup(const Field& f, std::span<const Elem> digits) {
  const std::size_t h = f.h();
  Word out(digits.size() / h);
  for (std::size_t c = 0; c < out.size(); ++c) out[c] = f.from_digits(digits.subspan(c * h, h));
  return out;
}

std::vector<Elem> digit_vector(const Field& f, std::span<const Elem> word) {
  std::vector<Elem> out;
  out.reserve(word.size() * f.h());
  for (Elem x : word) {
    if (!f.contains(x)) throw CodeError("word symbol outside the field");
    const auto d = f.digits(x);
    out.insert(out.end(), d.begin(), d.end());
  }
  return out;
}

std::vector<std::size_t> expanded_columns(std::span<const std::size_t> coords, std::size_t h) {
  std::vector<std::size_t> cols;
  for (auto c : coords) {
    for (std::size_t d = 0; d < h; ++d) cols.push_back(c * h + d);
  }
  return cols;
}

Matrix block_of(const Matrix& expanded, std::size_t h, std::size_t i, std::size_t c) {
  Matrix out(expanded.field(), h, h);
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t d = 0; d < h; ++d) out(r, d) = expanded(i * h + r, c * h + d);
  }
  return out;
}

bool is_zero(const Matrix& m) {
  return std::all_of(m.data().begin(), m.data().end(), [](Elem x) { return x == 0; });
}

// First k-subset of coordinates, in lexicographic order, whose expanded
// columns have full rank.
std::optional<std::vector<std::size_t>> first_information_set(const Matrix& expanded,
                                                             std::size_t n, std::size_t k,
                                                             std::size_t h) {
  if (k > n) return std::nullopt;
  std::vector<std::size_t> comb(k);
  std::iota(comb.begin(), comb.end(), 0);
  for (;;) {
    if (rank(expanded.select_columns(expanded_columns(comb, h))) == k * h) return comb;
    std::size_t i = k;
    while (i > 0 && comb[i - 1] == n - k + i - 1) --i;
    if (i == 0) return std::nullopt;
    ++comb[i - 1];
    for (std::size_t j = i; j < k; ++j) comb[j] = comb[j - 1] + 1;
  }
}

std::vector<std::size_t> with_rest(std::vector<std::size_t> head, std::size_t n) {
  std::vector<bool> used(n, false);
  for (auto c : head) used[c] = true;
  for (std::size_t c = 0; c < n; ++c) {
    if (!used[c]) head.push_back(c);
  }
  return head;
}

std::vector<LinearizedMap> identity_maps(const FieldPtr& field, std::size_t n) {
  return std::vector<LinearizedMap>(n, LinearizedMap::identity(field));
}

}  // namespace

AdditiveCode::AdditiveCode(Matrix generators)
    : generators_(std::move(generators)), expanded_(expand(generators_)), reduced_(expanded_) {
  if (generators_.rows() == 0 || generators_.cols() == 0) {
    throw CodeError("additive code needs at least one row and one column");
  }
  pivots_ = row_reduce(reduced_);
}

AdditiveCode AdditiveCode::from_expanded(const FieldPtr& field, const Matrix& expanded) {
  const std::size_t h = field->h();
  if (expanded.cols() % h != 0) {
    throw CodeError("expanded matrix width is not a multiple of h = " + std::to_string(h));
  }
  Matrix g(field, expanded.rows(), expanded.cols() / h);
  for (std::size_t i = 0; i < expanded.rows(); ++i) {
    for (std::size_t c = 0; c < g.cols(); ++c) {
      std::vector<Elem> d(h);
      for (std::size_t j = 0; j < h; ++j) {
        d[j] = expanded(i, c * h + j);
        if (d[j] >= field->p()) throw CodeError("expanded entry outside the prime field");
      }
      g(i, c) = field->from_digits(d);
    }
  }
  return AdditiveCode(std::move(g));
}

AdditiveCode AdditiveCode::from_linear(const LinearCode& code) {
  const Field& f = *code.field();
  const Matrix& g = code.generator().matrix();
  Matrix out(code.field(), g.rows() * f.h(), g.cols());
  for (std::size_t j = 0; j < g.rows(); ++j) {
    for (std::uint32_t i = 0; i < f.h(); ++i) {
      const Elem scale = f.from_digits([&] {
        std::vector<Elem> d(f.h(), 0);
        d[i] = 1;
        return d;
      }());
      for (std::size_t c = 0; c < g.cols(); ++c) out(j * f.h() + i, c) = f.mul(scale, g(j, c));
    }
  }
  return AdditiveCode(std::move(out));
}

bool AdditiveCode::contains(std::span<const Elem> word) const {
  if (word.size() != length()) throw CodeError("word length does not match the code");
  const auto v = digit_vector(*field(), word);
  std::vector<Elem> message(pivots_.size());
  for (std::size_t i = 0; i < pivots_.size(); ++i) message[i] = v[pivots_[i]];
  Matrix basis = reduced_.select_rows([&] {
    std::vector<std::size_t> rows(pivots_.size());
    std::iota(rows.begin(), rows.end(), 0);
    return rows;
  }());
  return basis.left_multiply(message) == v;
}

void AdditiveCode::for_each_codeword(const std::function<void(std::span<const Elem>)>& visit,
                                     std::uint64_t budget) const {
  const Field& f = *field();
  const std::size_t r = pivots_.size();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < r; ++i) {
    total *= f.p();
    if (total > budget) {
      throw BudgetExceeded("code has more than " + std::to_string(budget) + " words");
    }
  }
  const Field& fp = *reduced_.field();
  const std::size_t width = reduced_.cols();
  std::vector<Elem> message(r, 0);
  std::vector<Elem> acc(width, 0);
  for (;;) {
    visit(regroup(f, acc));
    // Odometer over F_p^r; the running sum is updated by one row per step.
    std::size_t i = 0;
    while (i < r && message[i] == f.p() - 1) {
      message[i] = 0;
      for (std::size_t c = 0; c < width; ++c) acc[c] = fp.add(acc[c], reduced_(i, c));
      ++i;
    }
    if (i == r) break;
    ++message[i];
    for (std::size_t c = 0; c < width; ++c) acc[c] = fp.add(acc[c], reduced_(i, c));
  }
}

Matrix expand_to_prime(const AdditiveCode& code) { return code.expanded(); }

Matrix AdditiveStandardForm::block(std::size_t i, std::size_t c) const {
  return block_of(expanded, code.field()->h(), i, c);
}

AdditiveStandardForm additive_standard_form(const AdditiveCode& code) {
  const FieldPtr& field = code.field();
  const std::size_t h = field->h();
  const std::size_t rows = code.generators().rows();
  const std::size_t n = code.length();
  if (rows % h != 0) throw CodeError("number of generator rows is not a multiple of h");
  if (code.prime_dimension() != rows) throw CodeError("generator rows are dependent over F_p");
  const std::size_t k = rows / h;
  const auto info = first_information_set(code.expanded(), n, k, h);
  if (!info) throw CodeError("no information set of whole coordinates");

  const auto perm = with_rest(*info, n);
  const Matrix moved = code.expanded().select_columns(expanded_columns(perm, h));
  std::vector<std::size_t> head(rows);
  std::iota(head.begin(), head.end(), 0);
  const Matrix expanded = *inverse(moved.select_columns(head)) * moved;

  AdditiveWitness witness{std::vector<std::size_t>(n), identity_maps(field, n)};
  for (std::size_t m = 0; m < n; ++m) witness.alpha[perm[m]] = m;
  AdditiveStandardForm out{AdditiveCode::from_expanded(field, expanded), expanded, perm,
                           std::move(witness), true};
  for (std::size_t c = k; c < n && out.blocks_invertible; ++c) {
    for (std::size_t i = 0; i < k; ++i) {
      if (!inverse(out.block(i, c))) {
        out.blocks_invertible = false;
        break;
      }
    }
  }
  return out;
}

bool is_additive_mds(const AdditiveCode& code, std::uint64_t budget) {
  return mds_report(code, budget).mds;
}

std::optional<std::size_t> fq_linearity_violation(const AdditiveCode& code) {
  const Field& f = *code.field();
  const Matrix& g = code.generators();
  for (std::size_t i = 0; i < g.rows(); ++i) {
    Word w(g.cols());
    for (std::size_t c = 0; c < g.cols(); ++c) w[c] = f.mul(f.primitive(), g(i, c));
    if (!code.contains(w)) return i;
  }
  return std::nullopt;
}

bool is_fq_linear(const AdditiveCode& code) { return !fq_linearity_violation(code); }

AdditiveCode apply_to_code(const AdditiveCode& a, const AdditiveWitness& w) {
  validate_witness(w, a.length());
  const Matrix& g = a.generators();
  Matrix out(a.field(), g.rows(), g.cols());
  for (std::size_t j = 0; j < g.cols(); ++j) {
    const std::size_t i = w.alpha[j];
    for (std::size_t r = 0; r < g.rows(); ++r) out(r, i) = w.maps[i](g(r, j));
  }
  return AdditiveCode(std::move(out));
}

AdditiveWitness extract_additive(const GeneralWitness& w, const AdditiveCode& a,
                                 const AdditiveCode& b) {
  require_same_field(*a.field(), *b.field());
  const FieldPtr& field = a.field();
  const std::size_t n = a.length();
  const std::size_t h = field->h();
  if (b.length() != n) throw CodeError("codes have different lengths");
  if (a.prime_dimension() != b.prime_dimension()) {
    throw ExtractionError(Kind::kInvalidWitness, "codes have different sizes");
  }
  try {
    validate_witness(*field, w, n);
  } catch (const WitnessError& e) {
    throw ExtractionError(Kind::kInvalidWitness, e.what());
  }

  AdditiveWitness moving{w.alpha, identity_maps(field, n)};
  const AdditiveStandardForm sf = additive_standard_form(apply_to_code(a, moving));
  const std::size_t k = sf.code.k();
  const Matrix b_moved = b.expanded().select_columns(expanded_columns(sf.permutation, h));
  std::vector<std::size_t> head(k * h);
  std::iota(head.begin(), head.end(), 0);
  if (b.prime_dimension() != k * h) {
    throw ExtractionError(Kind::kInvalidWitness, "target generator rows are dependent");
  }
  const Matrix b_basis = [&] {
    Matrix reduced = b_moved;
    const auto pivots = row_reduce(reduced);
    std::vector<std::size_t> rows(pivots.size());
    std::iota(rows.begin(), rows.end(), 0);
    return reduced.select_rows(rows);
  }();
  const auto inv = inverse(b_basis.select_columns(head));
  if (!inv) {
    throw ExtractionError(Kind::kInvalidWitness,
                          "information set of the source is not one of the target");
  }
  const Matrix b_std = *inv * b_basis;

  detail::Systematic<Matrix> as{k, n, {}};
  detail::Systematic<Matrix> bs{k, n, {}};
  bool all_weight_one = true;
  for (std::size_t r = 0; r < n; ++r) {
    std::size_t wa = 0;
    std::size_t wb = 0;
    for (std::size_t j = 0; j < k; ++j) {
      const Matrix x = block_of(sf.expanded, h, j, r);
      const Matrix y = block_of(b_std, h, j, r);
      if (is_zero(x) != is_zero(y)) {
        throw ExtractionError(Kind::kInvalidWitness,
                              "standard forms have different supports at row " +
                                  std::to_string(j + 1) + ", column " + std::to_string(r + 1));
      }
      wa += !is_zero(x);
      wb += !is_zero(y);
    }
    all_weight_one = all_weight_one && wa == 1 && wb == 1;
  }
  if (all_weight_one) {
    throw HypothesisViolation(
        "every column of both standard-form generators has weight one; "
        "the repetition-code route is needed");
  }
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t r = 0; r < n; ++r) {
      as.entries.push_back(block_of(sf.expanded, h, j, r));
      bs.entries.push_back(block_of(b_std, h, j, r));
    }
  }

  std::vector<std::vector<Elem>> sigmas;
  for (auto pos : sf.permutation) sigmas.push_back(w.sigmas[pos]);
  const detail::BlockAction act{field.get()};
  const auto normalized =
      detail::normalize_translation(act, as, bs, sigmas, kDefaultEnumerationBudget);

  AdditiveWitness out{w.alpha, identity_maps(field, n)};
  for (std::size_t m = 0; m < n; ++m) {
    out.maps[sf.permutation[m]] = LinearizedMap::from_table(field, normalized.taus[m]);
  }
  if (!is_equivalence(out, a, b)) {
    throw ExtractionError(Kind::kInvalidWitness, "normalized witness does not map the codes");
  }
  return out;
}

namespace {

class AdditiveSearch {
 public:
  AdditiveSearch(const AdditiveCode& a, const AdditiveCode& b, std::uint64_t budget)
      : a_(a), b_(b), field_(a.field()), n_(a.length()), h_(field_->h()), budget_(budget) {
    for (const auto& m : additive_permutations(field_)) group_.push_back(m.matrix());
  }

  SearchResult<AdditiveWitness> run() {
    SearchResult<AdditiveWitness> out;
    if (a_.prime_dimension() != b_.prime_dimension()) return out;
    try {
      sig_a_ = detail::coordinate_signatures(a_);
      sig_b_ = detail::coordinate_signatures(b_);
      if (!detail::invariants_match(sig_a_, sig_b_, a_, b_)) return out;
    } catch (const BudgetExceeded&) {
      out.status = SearchStatus::kBudgetExceeded;
      return out;
    }
    const std::size_t dim = a_.prime_dimension();
    std::optional<std::vector<std::size_t>> info;
    if (dim % h_ == 0) info = first_information_set(basis(a_), n_, dim / h_, h_);
    if (info) {
      run_information_set(*info, dim / h_);
    } else {
      run_projections();
    }
    out.nodes = nodes_;
    if (found_) {
      out.status = SearchStatus::kFound;
      out.witness = std::move(found_);
    } else if (exhausted_) {
      out.status = SearchStatus::kBudgetExceeded;
    }
    return out;
  }

 private:
  static Matrix basis(const AdditiveCode& c) {
    Matrix reduced = c.expanded();
    const auto pivots = row_reduce(reduced);
    std::vector<std::size_t> rows(pivots.size());
    std::iota(rows.begin(), rows.end(), 0);
    return reduced.select_rows(rows);
  }

  bool tick() {
    if (++nodes_ > budget_) exhausted_ = true;
    return !exhausted_;
  }

  bool verify(AdditiveWitness w) {
    if (!is_equivalence(w, a_, b_)) return false;
    found_ = std::move(w);
    return true;
  }

  // Information-set method. With values b_i = L_{T_i}(a_i) on the image T of
  // the source information set, column c of the source and its image s obey
  //   alpha_{ic} M_s = M_{T_i} beta_{is}
  // for every message symbol i, M being the F_p matrices of the maps.
  void run_information_set(const std::vector<std::size_t>& info, std::size_t k) {
    k_ = k;
    order_ = with_rest(info, n_);
    const Matrix a_basis = basis(a_);
    const Matrix moved = a_basis.select_columns(expanded_columns(order_, h_));
    std::vector<std::size_t> head(k * h_);
    std::iota(head.begin(), head.end(), 0);
    a_std_ = *inverse(moved.select_columns(head)) * moved;
    b_basis_ = basis(b_);
    image_.assign(n_, 0);
    used_.assign(n_, false);
    maps_.assign(n_, std::nullopt);
    choose_info(0);
  }

  bool signature_match(std::size_t m, std::size_t s) const {
    return sig_a_[order_[m]] == sig_b_[s];
  }

  bool choose_info(std::size_t m) {
    if (m == k_) {
      std::vector<std::size_t> coords(image_.begin(), image_.begin() + k_);
      const auto inv = inverse(b_basis_.select_columns(expanded_columns(coords, h_)));
      if (!inv) return false;
      b_std_ = *inv * b_basis_;
      return match_column(k_);
    }
    for (std::size_t s = 0; s < n_ && !exhausted_; ++s) {
      if (used_[s] || !signature_match(m, s)) continue;
      image_[m] = s;
      std::vector<std::size_t> coords(image_.begin(), image_.begin() + m + 1);
      if (rank(b_basis_.select_columns(expanded_columns(coords, h_))) != (m + 1) * h_) continue;
      if (!tick()) return false;
      used_[s] = true;
      if (choose_info(m + 1)) return true;
      used_[s] = false;
    }
    return false;
  }

  Matrix a_block(std::size_t i, std::size_t m) const { return block_of(a_std_, h_, i, m); }
  Matrix b_block(std::size_t i, std::size_t s) const { return block_of(b_std_, h_, i, s); }

  bool match_column(std::size_t m) {
    if (exhausted_) return false;
    if (m == n_) return finish();
    for (std::size_t s = 0; s < n_; ++s) {
      if (used_[s] || !signature_match(m, s)) continue;
      bool same_support = true;
      for (std::size_t i = 0; i < k_ && same_support; ++i) {
        same_support = is_zero(a_block(i, m)) == is_zero(b_block(i, s));
      }
      if (!same_support) continue;
      image_[m] = s;
      used_[s] = true;
      if (settle(m, s)) return true;
      used_[s] = false;
      if (exhausted_) return false;
    }
    return false;
  }

  void set_map(std::size_t coord, Matrix value) {
    maps_[coord] = std::move(value);
    trail_.push_back(coord);
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      maps_[trail_.back()].reset();
      trail_.pop_back();
    }
  }

  // Fixes M_s and the maps of the rows of column m, branching over GL(h, p)
  // whenever a map cannot be derived.
  bool settle(std::size_t m, std::size_t s) {
    if (!tick()) return false;
    const std::size_t mark = trail_.size();
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < k_; ++i) {
      if (!is_zero(a_block(i, m))) rows.push_back(i);
    }
    if (rows.empty()) {
      if (!maps_[s]) set_map(s, Matrix::identity(field_->prime_field(), h_));
      if (match_column(m + 1)) return true;
      undo_to(mark);
      return false;
    }
    if (!maps_[s]) {
      for (auto i : rows) {
        const auto& known = maps_[image_[i]];
        if (!known) continue;
        if (const auto inv = inverse(a_block(i, m))) {
          set_map(s, *inv * *known * b_block(i, s));
          break;
        }
      }
    }
    if (!maps_[s]) {
      for (auto i : rows) {
        if (!maps_[image_[i]]) return branch(image_[i], m, s);
      }
      return branch(s, m, s);
    }
    if (!inverse(*maps_[s])) {
      undo_to(mark);
      return false;
    }
    for (auto i : rows) {
      const Matrix lhs = a_block(i, m) * *maps_[s];
      const std::size_t t = image_[i];
      if (!maps_[t]) {
        const auto b_inv = inverse(b_block(i, s));
        if (!b_inv) {
          undo_to(mark);
          return branch(t, m, s);
        }
        Matrix derived = lhs * *b_inv;
        if (!inverse(derived)) {
          undo_to(mark);
          return false;
        }
        set_map(t, std::move(derived));
      } else if (!(lhs == *maps_[t] * b_block(i, s))) {
        undo_to(mark);
        return false;
      }
    }
    if (match_column(m + 1)) return true;
    undo_to(mark);
    return false;
  }

  bool branch(std::size_t coord, std::size_t m, std::size_t s) {
    for (const auto& g : group_) {
      const std::size_t mark = trail_.size();
      set_map(coord, g);
      if (settle(m, s)) return true;
      undo_to(mark);
      if (exhausted_) return false;
    }
    return false;
  }

  bool finish() {
    AdditiveWitness w{std::vector<std::size_t>(n_), identity_maps(field_, n_)};
    for (std::size_t m = 0; m < n_; ++m) w.alpha[order_[m]] = image_[m];
    for (std::size_t s = 0; s < n_; ++s) {
      if (maps_[s]) w.maps[s] = LinearizedMap::from_matrix(field_, *maps_[s]);
    }
    return verify(std::move(w));
  }

  // Fallback: coordinates of the source are matched in order, each with an
  // additive map, keeping the projections of both codes onto the matched
  // coordinates equal as sets.
  void run_projections() {
    words_a_ = a_.codewords();
    words_b_ = b_.codewords();
    image_.assign(n_, 0);
    used_.assign(n_, false);
    chosen_maps_.assign(n_, std::nullopt);
    project(0);
  }

  std::vector<std::vector<Elem>> projection(const std::vector<Word>& words,
                                            std::span<const std::size_t> coords,
                                            const std::vector<LinearizedMap>* maps) const {
    std::vector<std::vector<Elem>> out;
    out.reserve(words.size());
    for (const auto& u : words) {
      std::vector<Elem> v(coords.size());
      for (std::size_t i = 0; i < coords.size(); ++i) {
        v[i] = maps ? (*maps)[i](u[coords[i]]) : u[coords[i]];
      }
      out.push_back(std::move(v));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  bool project(std::size_t m) {
    if (m == n_) {
      AdditiveWitness w{std::vector<std::size_t>(n_), identity_maps(field_, n_)};
      for (std::size_t c = 0; c < n_; ++c) {
        w.alpha[c] = image_[c];
        w.maps[image_[c]] = *chosen_maps_[c];
      }
      return verify(std::move(w));
    }
    const auto perms = additive_permutations(field_);
    std::vector<std::size_t> source(m + 1);
    std::iota(source.begin(), source.end(), 0);
    for (std::size_t s = 0; s < n_; ++s) {
      if (used_[s] || sig_a_[m] != sig_b_[s]) continue;
      image_[m] = s;
      used_[s] = true;
      std::vector<std::size_t> target(image_.begin(), image_.begin() + m + 1);
      const auto b_proj = projection(words_b_, target, nullptr);
      for (const auto& g : perms) {
        if (!tick()) return false;
        chosen_maps_[m] = g;
        std::vector<LinearizedMap> maps;
        for (std::size_t c = 0; c <= m; ++c) maps.push_back(*chosen_maps_[c]);
        if (projection(words_a_, source, &maps) == b_proj && project(m + 1)) return true;
        if (exhausted_) return false;
      }
      chosen_maps_[m].reset();
      used_[s] = false;
    }
    return false;
  }

  const AdditiveCode& a_;
  const AdditiveCode& b_;
  FieldPtr field_;
  std::size_t n_;
  std::size_t h_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
  std::vector<Matrix> group_;
  std::vector<std::vector<std::uint64_t>> sig_a_;
  std::vector<std::vector<std::uint64_t>> sig_b_;
  std::optional<AdditiveWitness> found_;

  std::size_t k_ = 0;
  std::vector<std::size_t> order_;
  Matrix a_std_;
  Matrix b_basis_;
  Matrix b_std_;
  std::vector<std::size_t> image_;
  std::vector<bool> used_;
  std::vector<std::optional<Matrix>> maps_;
  std::vector<std::size_t> trail_;

  std::vector<Word> words_a_;
  std::vector<Word> words_b_;
  std::vector<std::optional<LinearizedMap>> chosen_maps_;
};

}  // namespace

SearchResult<AdditiveWitness> search_additive(const AdditiveCode& a, const AdditiveCode& b,
                                              std::uint64_t budget) {
  require_same_field(*a.field(), *b.field());
  if (a.length() != b.length()) return {};
  return AdditiveSearch(a, b, budget).run();
}

}  // namespace codequiv
