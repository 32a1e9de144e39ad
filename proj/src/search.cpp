#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "codequiv/detail/invariants.hpp"
#include "codequiv/equivalence.hpp"
#include "codequiv/errors.hpp"
#include "codequiv/linalg.hpp"

namespace codequiv {
namespace detail {

std::vector<std::vector<std::uint64_t>> coordinate_signatures(const Code& code) {
  const std::size_t n = code.length();
  std::vector<std::vector<std::uint64_t>> sig(n, std::vector<std::uint64_t>(n + 1, 0));
  code.for_each_codeword(
      [&](std::span<const Elem> u) {
        const std::size_t w = hamming_weight(u);
        for (std::size_t c = 0; c < n; ++c) {
          if (u[c] != 0) ++sig[c][w];
        }
      },
      kDefaultEnumerationBudget);
  return sig;
}

bool invariants_match(const std::vector<std::vector<std::uint64_t>>& sig_a,
                      const std::vector<std::vector<std::uint64_t>>& sig_b, const Code& a,
                      const Code& b) {
  if (weight_distribution(a) != weight_distribution(b)) return false;
  auto sorted_a = sig_a;
  auto sorted_b = sig_b;
  std::sort(sorted_a.begin(), sorted_a.end());
  std::sort(sorted_b.begin(), sorted_b.end());
  return sorted_a == sorted_b;
}

}  // namespace detail

namespace {

std::vector<std::size_t> support_rows(const Matrix& g, std::size_t col) {
  std::vector<std::size_t> rows;
  for (std::size_t j = 0; j < g.rows(); ++j) {
    if (g(j, col) != 0) rows.push_back(j);
  }
  return rows;
}

class GeneralSearch {
 public:
  GeneralSearch(const LinearCode& a, const LinearCode& b, std::uint64_t budget)
      : a_(a), b_(b), f_(*a.field()), n_(a.length()), k_(a.dimension()), budget_(budget) {}

  SearchResult<GeneralWitness> run() {
    SearchResult<GeneralWitness> out;
    if (a_.dimension() != b_.dimension()) return out;
    try {
      sig_a_raw_ = detail::coordinate_signatures(a_);
      sig_b_ = detail::coordinate_signatures(b_);
      if (!detail::invariants_match(sig_a_raw_, sig_b_, a_, b_)) return out;
    } catch (const BudgetExceeded&) {
      out.status = SearchStatus::kBudgetExceeded;
      return out;
    }

    StandardForm sf = standard_form(a_.generator().matrix());
    am_ = std::move(sf.matrix);
    a_order_ = std::move(sf.permutation);
    bg_ = b_.generator().matrix();
    image_.assign(n_, 0);
    b_used_.assign(n_, false);
    sigma_.assign(n_, std::nullopt);

    choose_info(0);
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
  bool tick() {
    if (++nodes_ > budget_) exhausted_ = true;
    return !exhausted_;
  }

  bool signature_match(std::size_t m, std::size_t s) const {
    return sig_a_raw_[a_order_[m]] == sig_b_[s];
  }

  bool choose_info(std::size_t m) {
    if (m == k_) {
      std::vector<std::size_t> cols(image_.begin(), image_.begin() + k_);
      const auto inv = inverse(bg_.select_columns(cols));
      if (!inv) return false;
      bp_ = *inv * bg_;
      return match_column(k_);
    }
    for (std::size_t s = 0; s < n_ && !exhausted_; ++s) {
      if (b_used_[s] || !signature_match(m, s)) continue;
      image_[m] = s;
      std::vector<std::size_t> cols(image_.begin(), image_.begin() + m + 1);
      if (rank(bg_.select_columns(cols)) != m + 1) continue;
      if (!tick()) return false;
      b_used_[s] = true;
      if (choose_info(m + 1)) return true;
      b_used_[s] = false;
    }
    return false;
  }

  void undo(const std::vector<std::size_t>& changed) {
    for (auto s : changed) sigma_[s].reset();
  }

  // sigma_s from row j, then every other row of the column checked or filled.
  bool propagate(std::size_t m, std::size_t s, std::size_t j, const std::vector<std::size_t>& rows,
                 std::vector<std::size_t>& changed) {
    const auto& known = *sigma_[image_[j]];
    std::vector<Elem> table(f_.q());
    const Elem a_inv = f_.inv(am_(j, m));
    for (Elem y = 0; y < f_.q(); ++y) table[y] = f_.mul(bp_(j, s), known[f_.mul(y, a_inv)]);
    sigma_[s] = std::move(table);
    changed.push_back(s);
    const auto& sig_s = *sigma_[s];
    for (auto l : rows) {
      if (l == j) continue;
      std::vector<Elem> req(f_.q());
      const Elem b_inv = f_.inv(bp_(l, s));
      for (Elem x = 0; x < f_.q(); ++x) req[x] = f_.mul(sig_s[f_.mul(am_(l, m), x)], b_inv);
      auto& slot = sigma_[image_[l]];
      if (slot) {
        if (*slot != req) return false;
      } else {
        slot = std::move(req);
        changed.push_back(image_[l]);
      }
    }
    return true;
  }

  bool match_column(std::size_t m) {
    if (exhausted_) return false;
    if (m == n_) return finish();
    const auto rows = support_rows(am_, m);
    for (std::size_t s = 0; s < n_; ++s) {
      if (b_used_[s] || !signature_match(m, s)) continue;
      if (support_rows(bp_, s) != rows) continue;
      if (!tick()) return false;
      image_[m] = s;
      b_used_[s] = true;
      if (rows.empty()) {
        std::vector<Elem> id(f_.q());
        std::iota(id.begin(), id.end(), 0);
        sigma_[s] = std::move(id);
        if (match_column(m + 1)) return true;
        sigma_[s].reset();
      } else {
        std::optional<std::size_t> known_row;
        for (auto j : rows) {
          if (sigma_[image_[j]]) {
            known_row = j;
            break;
          }
        }
        if (known_row) {
          std::vector<std::size_t> changed;
          const bool ok = propagate(m, s, *known_row, rows, changed);
          if (ok && match_column(m + 1)) return true;
          undo(changed);
        } else if (branch_row(m, s, rows)) {
          return true;
        }
      }
      b_used_[s] = false;
      if (exhausted_) return false;
    }
    return false;
  }

  // No symbol map of the column's rows is known: try every bijection fixing 0
  // on the first one.
  bool branch_row(std::size_t m, std::size_t s, const std::vector<std::size_t>& rows) {
    const std::size_t j = rows.front();
    std::vector<Elem> nonzero(f_.q() - 1);
    std::iota(nonzero.begin(), nonzero.end(), 1);
    do {
      if (!tick()) return false;
      std::vector<Elem> table(f_.q(), 0);
      std::copy(nonzero.begin(), nonzero.end(), table.begin() + 1);
      sigma_[image_[j]] = std::move(table);
      std::vector<std::size_t> changed{image_[j]};
      const bool ok = propagate(m, s, j, rows, changed);
      if (ok && match_column(m + 1)) return true;
      undo(changed);
    } while (std::next_permutation(nonzero.begin(), nonzero.end()));
    return false;
  }

  bool finish() {
    std::vector<std::size_t> filled;
    std::vector<Elem> id(f_.q());
    std::iota(id.begin(), id.end(), 0);
    for (std::size_t s = 0; s < n_; ++s) {
      if (!sigma_[s]) {
        sigma_[s] = id;
        filled.push_back(s);
      }
    }
    GeneralWitness w;
    w.alpha.resize(n_);
    for (std::size_t m = 0; m < n_; ++m) w.alpha[a_order_[m]] = image_[m];
    for (auto& s : sigma_) w.sigmas.push_back(*s);
    undo(filled);
    if (!is_equivalence(w, a_, b_)) return false;
    found_ = std::move(w);
    return true;
  }

  const LinearCode& a_;
  const LinearCode& b_;
  const Field& f_;
  std::size_t n_;
  std::size_t k_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;

  Matrix am_;
  std::vector<std::size_t> a_order_;
  Matrix bg_;
  Matrix bp_;
  std::vector<std::vector<std::uint64_t>> sig_a_raw_;
  std::vector<std::vector<std::uint64_t>> sig_b_;
  std::vector<std::size_t> image_;
  std::vector<bool> b_used_;
  std::vector<std::optional<std::vector<Elem>>> sigma_;
  std::optional<GeneralWitness> found_;
};

// Column scaled so its first nonzero entry is 1.
std::vector<Elem> projective_key(const Field& f, std::vector<Elem> v) {
  for (Elem x : v) {
    if (x != 0) {
      const Elem inv = f.inv(x);
      for (auto& y : v) y = f.mul(y, inv);
      break;
    }
  }
  return v;
}

Elem first_ratio(const Field& f, const std::vector<Elem>& from, const std::vector<Elem>& to) {
  for (std::size_t i = 0; i < from.size(); ++i) {
    if (from[i] != 0) return f.div(to[i], from[i]);
  }
  return 1;
}

class SemiLinearSearch {
 public:
  SemiLinearSearch(const LinearCode& a, const LinearCode& b, std::uint64_t budget)
      : a_(a), b_(b), f_(*a.field()), n_(a.length()), k_(a.dimension()), budget_(budget) {
    StandardForm sf = standard_form(b.generator().matrix());
    bs_ = std::move(sf.matrix);
    b_order_ = std::move(sf.permutation);
    for (std::size_t m = k_; m < n_; ++m) {
      const auto col = bs_.column(m);
      b_keys_.emplace_back(projective_key(f_, col), m);
    }
    std::sort(b_keys_.begin(), b_keys_.end());
  }

  bool exhausted() const { return exhausted_; }
  std::uint64_t nodes() const { return nodes_; }

  std::optional<SemiLinearWitness> run(std::uint32_t t) {
    t_ = t;
    at_ = frobenius_matrix(a_.generator().matrix(), t);
    chosen_.clear();
    used_.assign(n_, false);
    return choose(0);
  }

 private:
  std::optional<SemiLinearWitness> choose(std::size_t m) {
    if (m == k_) return try_scalings();
    for (std::size_t c = 0; c < n_ && !exhausted_; ++c) {
      if (used_[c]) continue;
      chosen_.push_back(c);
      if (rank(at_.select_columns(chosen_)) == m + 1) {
        used_[c] = true;
        if (auto w = choose(m + 1)) return w;
        used_[c] = false;
      }
      chosen_.pop_back();
    }
    return std::nullopt;
  }

  std::optional<SemiLinearWitness> try_scalings() {
    const auto inv = inverse(at_.select_columns(chosen_));
    if (!inv) return std::nullopt;
    const Matrix z = *inv * at_;
    std::vector<std::size_t> rest;
    for (std::size_t c = 0; c < n_; ++c) {
      if (!used_[c]) rest.push_back(c);
    }
    std::vector<Elem> delta(k_, 1);
    for (;;) {
      if (++nodes_ > budget_) {
        exhausted_ = true;
        return std::nullopt;
      }
      std::vector<std::pair<std::vector<Elem>, std::size_t>> keys;
      std::vector<std::vector<Elem>> columns(n_);
      for (auto c : rest) {
        std::vector<Elem> v(k_);
        for (std::size_t i = 0; i < k_; ++i) v[i] = f_.mul(delta[i], z(i, c));
        keys.emplace_back(projective_key(f_, v), c);
        columns[c] = std::move(v);
      }
      std::sort(keys.begin(), keys.end());
      bool match = true;
      for (std::size_t i = 0; i < keys.size() && match; ++i) {
        match = keys[i].first == b_keys_[i].first;
      }
      if (match) {
        SemiLinearWitness w{std::vector<std::size_t>(n_), std::vector<Elem>(n_), t_};
        for (std::size_t i = 0; i < k_; ++i) {
          w.alpha[chosen_[i]] = b_order_[i];
          w.lambdas[b_order_[i]] = f_.inv(delta[i]);
        }
        for (std::size_t i = 0; i < keys.size(); ++i) {
          const std::size_t c = keys[i].second;
          const std::size_t m = b_keys_[i].second;
          w.alpha[c] = b_order_[m];
          w.lambdas[b_order_[m]] = first_ratio(f_, columns[c], bs_.column(m));
        }
        if (is_equivalence(w, a_, b_)) return w;
      }
      // Next delta with delta[0] == 1, counting in exponents.
      std::size_t i = 1;
      while (i < k_ && delta[i] == f_.exp(f_.q() - 2)) delta[i++] = 1;
      if (i >= k_) return std::nullopt;
      delta[i] = f_.mul(delta[i], f_.primitive());
    }
  }

  const LinearCode& a_;
  const LinearCode& b_;
  const Field& f_;
  std::size_t n_;
  std::size_t k_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
  std::uint32_t t_ = 0;

  Matrix bs_;
  std::vector<std::size_t> b_order_;
  std::vector<std::pair<std::vector<Elem>, std::size_t>> b_keys_;
  Matrix at_;
  std::vector<std::size_t> chosen_;
  std::vector<bool> used_;
};

}  // namespace

SearchResult<GeneralWitness> search_general(const LinearCode& a, const LinearCode& b,
                                            std::uint64_t budget) {
  require_same_field(*a.field(), *b.field());
  if (a.length() != b.length()) return {};
  return GeneralSearch(a, b, budget).run();
}

SearchResult<SemiLinearWitness> search_semilinear(const LinearCode& a, const LinearCode& b,
                                                  std::uint64_t budget, bool linear_only) {
  require_same_field(*a.field(), *b.field());
  SearchResult<SemiLinearWitness> out;
  if (a.length() != b.length() || a.dimension() != b.dimension()) return out;
  SemiLinearSearch search(a, b, budget);
  const std::uint32_t exponents = linear_only ? 1 : a.field()->h();
  for (std::uint32_t t = 0; t < exponents; ++t) {
    if (auto w = search.run(t)) {
      out.status = SearchStatus::kFound;
      out.witness = std::move(w);
      break;
    }
    if (search.exhausted()) {
      out.status = SearchStatus::kBudgetExceeded;
      break;
    }
  }
  out.nodes = search.nodes();
  return out;
}

}  // namespace codequiv
