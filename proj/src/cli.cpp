#include "codequiv/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <utility>

#include "codequiv/additive_codes.hpp"
#include "codequiv/code_core.hpp"
#include "codequiv/equivalence.hpp"
#include "codequiv/errors.hpp"
#include "codequiv/io.hpp"
#include "codequiv/linearized.hpp"
#include "codequiv/planting.hpp"

#ifndef CODEQUIV_DATA_DIR
#define CODEQUIV_DATA_DIR "data"
#endif

namespace codequiv::cli {
namespace {

using Fields = std::vector<std::pair<std::string, std::string>>;

class Reporter {
 public:
  Reporter(std::ostream& out, bool machine) : out_(out), machine_(machine) {}

  // One line of key=value pairs, or one pair per line in machine mode.
  void report(const Fields& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      out_ << fields[i].first << "=" << fields[i].second;
      out_ << (machine_ || i + 1 == fields.size() ? "\n" : " ");
    }
  }

  void text(const std::string& s) { out_ << s; }
  bool machine() const { return machine_; }
  std::ostream& stream() { return out_; }

 private:
  std::ostream& out_;
  bool machine_;
};

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::string join(const std::vector<std::size_t>& v, std::size_t offset = 1) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i] + offset);
  return s;
}

const LinearCode& require_linear(const AnyCode& code, const std::string& path) {
  const auto* linear = std::get_if<LinearCode>(&code);
  if (!linear) throw CodeError("'" + path + "' is not a linear code");
  return *linear;
}

// Writes to `path`, or to the report stream when empty.
void emit(Reporter& rep, const std::string& path, const std::string& text) {
  if (path.empty()) {
    rep.text(text);
    return;
  }
  std::ofstream f(path);
  if (!f) throw ParseError(0, "cannot write '" + path + "'");
  f << text;
}

int cmd_mindist(Reporter& rep, const std::string& path) {
  const auto code = read_code_file(path);
  rep.report({{"d", std::to_string(minimum_distance(as_code(code)))}});
  return kOk;
}

int cmd_mds(Reporter& rep, const std::string& path) {
  const auto code = read_code_file(path);
  const auto r = mds_report(as_code(code));
  rep.report({{"mds", yes_no(r.mds)}, {"d", std::to_string(r.d)}, {"size", std::to_string(r.size)}});
  return kOk;
}

int cmd_standard_form(Reporter& rep, const std::string& path, const std::string& out_path) {
  const auto code = read_code_file(path);
  std::ostringstream text;
  if (const auto* linear = std::get_if<LinearCode>(&code)) {
    const auto sf = standard_form(linear->generator().matrix());
    text << "# permutation: " << join(sf.permutation) << "\n";
    text << format_code(LinearCode(sf.matrix));
  } else {
    const auto sf = additive_standard_form(std::get<AdditiveCode>(code));
    text << "# permutation: " << join(sf.permutation) << "\n";
    text << "# blocks_invertible: " << yes_no(sf.blocks_invertible) << "\n";
    text << format_code(sf.code, true);
  }
  emit(rep, out_path, text.str());
  return kOk;
}

template <class W>
int finish_search(Reporter& rep, const Field& field, const SearchResult<W>& r,
                  const std::string& out_path, Fields found_extra) {
  Fields fields;
  switch (r.status) {
    case SearchStatus::kFound:
      fields.emplace_back("equivalent", "true");
      for (auto& f : found_extra) fields.push_back(std::move(f));
      break;
    case SearchStatus::kNotFound:
      fields.emplace_back("equivalent", "false");
      break;
    case SearchStatus::kBudgetExceeded:
      fields.emplace_back("equivalent", "undecided");
      break;
  }
  if (rep.machine()) fields.emplace_back("nodes", std::to_string(r.nodes));
  rep.report(fields);
  if (r.witness) emit(rep, out_path, format_witness(field, AnyWitness(*r.witness)));
  return r.status == SearchStatus::kBudgetExceeded ? kUndecided : kOk;
}

int cmd_equiv(Reporter& rep, const std::string& pa, const std::string& pb, const std::string& mode,
              std::uint64_t budget, const std::string& out_path) {
  const auto a = read_code_file(pa);
  const auto b = read_code_file(pb);
  const Field& field = *as_code(a).field();
  require_same_field(field, *as_code(b).field());
  if (mode == "additive") {
    const auto r = search_additive(as_additive(a), as_additive(b), budget);
    return finish_search(rep, field, r, out_path, {});
  }
  const LinearCode& la = require_linear(a, pa);
  const LinearCode& lb = require_linear(b, pb);
  if (mode == "general") {
    const auto r = search_general(la, lb, budget);
    return finish_search(rep, field, r, out_path, {});
  }
  const auto r = search_semilinear(la, lb, budget, mode == "linear");
  Fields extra;
  if (r.witness) extra.emplace_back("t", std::to_string(r.witness->t));
  return finish_search(rep, field, r, out_path, std::move(extra));
}

GeneralWitness general_from(const Field& field, const AnyWitness& w) {
  if (const auto* g = std::get_if<GeneralWitness>(&w)) return *g;
  if (const auto* s = std::get_if<SemiLinearWitness>(&w)) return to_general(field, *s);
  return to_general(std::get<AdditiveWitness>(w));
}

int cmd_extract(Reporter& rep, const std::string& pw, const std::string& pa, const std::string& pb,
                const std::string& out_path) {
  const auto a = read_code_file(pa);
  const auto b = read_code_file(pb);
  const FieldPtr& field = as_code(a).field();
  require_same_field(*field, *as_code(b).field());
  const auto w = general_from(*field, read_witness_file(pw, field));
  const auto* la = std::get_if<LinearCode>(&a);
  const auto* lb = std::get_if<LinearCode>(&b);
  if (la && lb) {
    const auto ex = extract_semilinear(w, *la, *lb);
    const bool weight_one = ex.branch == SemiLinearExtraction::Branch::kWeightOne;
    rep.report({{"extracted", "semilinear"},
                {"t", std::to_string(ex.witness.t)},
                {"branch", weight_one ? "weight-one" : "additive"}});
    emit(rep, out_path,
         format_witness(*field, AnyWitness(ex.witness), {"reordering: " + join(ex.reordering)}));
    return kOk;
  }
  const auto ex = extract_additive(w, as_additive(a), as_additive(b));
  rep.report({{"extracted", "additive"}});
  emit(rep, out_path, format_witness(*field, AnyWitness(ex)));
  return kOk;
}

int cmd_verify(Reporter& rep, const std::string& pw, const std::string& pa, const std::string& pb) {
  const auto a = read_code_file(pa);
  const auto b = read_code_file(pb);
  const FieldPtr& field = as_code(a).field();
  require_same_field(*field, *as_code(b).field());
  const auto w = read_witness_file(pw, field);
  const bool ok = std::visit(
      [&](const auto& x) { return is_equivalence(x, as_code(a), as_code(b)); }, w);
  rep.report({{"valid", yes_no(ok)}});
  return ok ? kOk : kInputError;
}

int cmd_count(Reporter& rep, std::uint32_t p, std::uint32_t h) {
  const FieldPtr field = Field::make(p, h);
  const std::uint64_t maps = all_linearized_maps(field).size();
  std::uint64_t perms = 0;
  std::string method;
  if (field->q() <= 9) {
    // Every permutation of the field, tested for additivity.
    std::vector<Elem> table(field->q());
    std::iota(table.begin(), table.end(), 0);
    do {
      perms += !additivity_violation(*field, table).has_value();
    } while (std::next_permutation(table.begin(), table.end()));
    method = "brute-force";
  } else {
    perms = additive_permutations(field).size();
    method = "linearized";
  }
  Fields fields{{"additive_maps", std::to_string(maps)},
                {"additive_permutations", std::to_string(perms)}};
  if (rep.machine()) fields.emplace_back("method", method);
  rep.report(fields);
  return kOk;
}


int cmd_demo(Reporter& rep, const std::string& data_dir, bool skip_search) {
  const auto c1_any = read_code_file(data_dir + "/G1.code");
  const auto c2_any = read_code_file(data_dir + "/G2.code");
  const auto c3_any = read_code_file(data_dir + "/C3.code");
  const LinearCode& c1 = require_linear(c1_any, "G1.code");
  const LinearCode& c2 = require_linear(c2_any, "G2.code");
  const AdditiveCode c3 = as_additive(c3_any);
  const FieldPtr& field = c1.field();
  const Field& f = *field;

  struct Outcome {
    bool pass;
    std::string detail;
  };
  std::vector<std::pair<std::pair<int, std::string>, std::function<Outcome()>>> items;

  items.push_back({{1, "mds"}, [&] {
                     std::string detail;
                     bool pass = true;
                     const std::pair<const char*, const Code*> codes[] = {
                         {"C1", &c1}, {"C2", &c2}, {"C3", &c3}};
                     for (const auto& [name, code] : codes) {
                       const auto r = mds_report(*code);
                       pass = pass && r.mds && r.d == 6 && r.size == 729;
                       detail += std::string(detail.empty() ? "" : ", ") + name +
                                 " d=" + std::to_string(r.d) + " size=" + std::to_string(r.size);
                     }
                     return Outcome{pass, detail};
                   }});
  items.push_back({{2, "conic"}, [&] {
                     const auto g2 = conic_space(field, columns_as_points(c2.generator().matrix()));
                     const auto g1 = conic_space(field, columns_as_points(c1.generator().matrix()));
                     Conic expected{field, {0, 0, 0, 1, f.exp(3), 1}};
                     const bool pass =
                         g2.size() == 1 && g2[0].proportional_to(expected) && g1.empty();
                     std::string detail = "G2 spans " + std::to_string(g2.size());
                     if (!g2.empty()) detail += " (" + g2[0].normalized().to_string() + ")";
                     detail += ", G1 spans " + std::to_string(g1.size());
                     return Outcome{pass, detail};
                   }});
  if (!skip_search) {
    items.push_back({{3, "semilinear-search"}, [&] {
                       const auto r = search_semilinear(c1, c2);
                       const char* status = r.status == SearchStatus::kNotFound  ? "not-found"
                                            : r.status == SearchStatus::kFound ? "found"
                                                                               : "undecided";
                       return Outcome{r.status == SearchStatus::kNotFound,
                                      std::string("C1 vs C2 ") + status +
                                          " nodes=" + std::to_string(r.nodes)};
                     }});
  }
  items.push_back({{4, "c3-not-linear"}, [&] {
                     const auto row = fq_linearity_violation(c3);
                     if (!row) return Outcome{false, "C3 is closed under multiplication by e"};
                     return Outcome{true, "e * generator " + std::to_string(*row + 1) +
                                              " lies outside C3"};
                   }});
  items.push_back({{5, "roundtrips"}, [&] {
                     Rng rng(20240607);
                     const auto planted = random_semilinear_witness(f, c1.length(), 1, rng);
                     const LinearCode image = apply_to_code(c1, planted);
                     const auto shift = random_codeword(image, rng);
                     const auto general = compose_translation(f, to_general(f, planted), shift);
                     const auto ex = extract_semilinear(general, c1, image);
                     const bool linear_ok = ex.witness.t == 1 && is_equivalence(ex.witness, c1, image);

                     const auto planted_add = random_additive_witness(field, c3.length(), rng);
                     const AdditiveCode image3 = apply_to_code(c3, planted_add);
                     const auto shift3 = random_codeword(image3, rng);
                     const auto general3 = compose_translation(f, to_general(planted_add), shift3);
                     const auto ex3 = extract_additive(general3, c3, image3);
                     const bool additive_ok = is_equivalence(ex3, c3, image3);
                     return Outcome{linear_ok && additive_ok,
                                    "C1 t=" + std::to_string(ex.witness.t) + " " +
                                        (linear_ok ? "verified" : "failed") + ", C3 " +
                                        (additive_ok ? "verified" : "failed")};
                   }});

  int passed = 0;
  std::vector<std::string> failed;
  for (const auto& [id, check] : items) {
    Outcome o;
    try {
      o = check();
    } catch (const Error& e) {
      o = {false, e.what()};
    }
    passed += o.pass;
    if (!o.pass) failed.push_back(id.second);
    if (rep.machine()) {
      rep.report({{"item" + std::to_string(id.first), o.pass ? "pass" : "fail"}});
    } else {
      rep.text("[" + std::string(o.pass ? "pass" : "FAIL") + "] " + std::to_string(id.first) +
               " " + id.second + ": " + o.detail + "\n");
    }
  }
  Fields summary{{"passed", std::to_string(passed) + "/" + std::to_string(items.size())}};
  if (!failed.empty()) {
    std::string names;
    for (const auto& n : failed) names += (names.empty() ? "" : ",") + n;
    summary.emplace_back("failed", names);
  }
  rep.report(summary);
  return failed.empty() ? kOk : kInputError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equivalence of codes over finite fields", "codequiv"};
  app.require_subcommand(1);
  app.fallthrough();
  bool machine = false;
  app.add_flag("--machine", machine, "One key=value pair per line");

  std::string path_a;
  std::string path_b;
  std::string path_w;
  std::string out_path;
  std::string mode = "semilinear";
  std::uint64_t budget = kDefaultSearchBudget;
  std::uint32_t p = 0;
  std::uint32_t h = 0;
  std::string data_dir = CODEQUIV_DATA_DIR;
  bool skip_search = false;

  auto* mindist = app.add_subcommand("mindist", "Minimum distance of a code");
  mindist->add_option("code", path_a)->required();
  auto* mds = app.add_subcommand("mds", "Singleton test");
  mds->add_option("code", path_a)->required();
  auto* sform = app.add_subcommand("standard-form", "Generator in standard form");
  sform->add_option("code", path_a)->required();
  sform->add_option("--out", out_path);
  auto* equiv = app.add_subcommand("equiv", "Search for an equivalence");
  equiv->add_option("a", path_a)->required();
  equiv->add_option("b", path_b)->required();
  equiv->add_option("--mode", mode)
      ->check(CLI::IsMember({"general", "linear", "semilinear", "additive"}));
  equiv->add_option("--budget", budget, "Node-expansion limit");
  equiv->add_option("--out", out_path, "Witness file");
  auto* extract = app.add_subcommand("extract", "Reduce a general witness");
  extract->add_option("witness", path_w)->required();
  extract->add_option("a", path_a)->required();
  extract->add_option("b", path_b)->required();
  extract->add_option("--out", out_path, "Witness file");
  auto* verify = app.add_subcommand("verify-witness", "Check a witness by enumeration");
  verify->add_option("witness", path_w)->required();
  verify->add_option("a", path_a)->required();
  verify->add_option("b", path_b)->required();
  auto* count = app.add_subcommand("count-additive-perms", "Count additive maps of F_{p^h}");
  count->add_option("prime", p, "Characteristic")->required();
  count->add_option("degree", h, "Extension degree")->required();
  auto* demo = app.add_subcommand("paper-demo", "Run the bundled F_9 example");
  demo->add_option("--data-dir", data_dir);
  demo->add_flag("--skip-search", skip_search);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  Reporter rep(out, machine);
  try {
    if (*mindist) return cmd_mindist(rep, path_a);
    if (*mds) return cmd_mds(rep, path_a);
    if (*sform) return cmd_standard_form(rep, path_a, out_path);
    if (*equiv) return cmd_equiv(rep, path_a, path_b, mode, budget, out_path);
    if (*extract) return cmd_extract(rep, path_w, path_a, path_b, out_path);
    if (*verify) return cmd_verify(rep, path_w, path_a, path_b);
    if (*count) return cmd_count(rep, p, h);
    if (*demo) return cmd_demo(rep, data_dir, skip_search);
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kUndecided;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace codequiv::cli
