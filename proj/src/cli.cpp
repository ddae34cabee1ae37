#include "revzeta/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "revzeta/group.hpp"
#include "revzeta/system_io.hpp"
#include "revzeta/zeta.hpp"

namespace revzeta::cli {

namespace {

using exact::TruncatedSeries;
using nlohmann::json;

std::uint64_t env_budget_limit() {
  const char* v = std::getenv("REVZETA_BUDGET");
  if (!v || !*v) return WorkBudget::kDefaultLimit;
  char* end = nullptr;
  unsigned long long parsed = std::strtoull(v, &end, 10);
  if (end == v || *end != '\0' || parsed == 0)
    throw Error("REVZETA_BUDGET must be a positive integer, got '" +
                std::string(v) + "'");
  return parsed;
}

json series_json(const TruncatedSeries& s) {
  json a = json::array();
  for (const auto& c : s.c) a.push_back(rat_string(c));
  return a;
}

std::string series_row(const TruncatedSeries& s) {
  std::string out;
  for (int i = 0; i <= s.order; ++i) {
    if (i) out += ", ";
    out += rat_pretty(s.c[i]);
  }
  return out;
}

json factor_json(const zeta::ZetaFactor& f) {
  json j;
  j["provenance"] = f.provenance;
  if (f.kind == zeta::ZetaFactor::Kind::RationalPower) {
    j["kind"] = "rational_power";
    json base;
    base["num"] = json::array();
    for (const auto& c : f.base.num) base["num"].push_back(c.get_str());
    base["den"] = json::array();
    for (const auto& c : f.base.den) base["den"].push_back(c.get_str());
    j["base"] = base;
    j["exponent"] = rat_string(f.exponent);
    j["substitution_power"] = f.subst_power;
  } else {
    j["kind"] = "exp_series";
    j["arg"] = series_json(f.arg);
  }
  return j;
}

std::string factor_string(const zeta::ZetaFactor& f) {
  if (f.kind == zeta::ZetaFactor::Kind::RationalPower) {
    std::string s = f.provenance + ": (" + f.base.to_string("u") + ")^(" +
                    rat_pretty(f.exponent) + ")";
    s += ", u = t";
    if (f.subst_power != 1) s += "^" + std::to_string(f.subst_power);
    return s;
  }
  return f.provenance + ": exp(" + f.arg.to_string() + ")";
}

struct Loaded {
  io::SystemDocument doc;
  bool is_sft = false;
  sft::ReversalSFT sft_sys;
  sofic::LabeledPresentation sofic_sys;
};

Loaded load_system(const std::string& src) {
  Loaded L;
  L.doc = io::parse_system_source(src);
  L.is_sft = L.doc.kind == "sft";
  if (L.is_sft)
    L.sft_sys = io::to_sft(L.doc);
  else
    L.sofic_sys = io::to_sofic(L.doc);
  return L;
}

int cmd_validate(const std::string& src, bool as_json, std::ostream& out) {
  Loaded L = load_system(src);
  json j;
  j["valid"] = true;
  j["kind"] = L.doc.kind;
  j["order"] = L.doc.order;
  if (L.is_sft) {
    j["alphabet_size"] = L.sft_sys.size();
    if (!as_json)
      out << "valid shift-reversal system of finite type: " << L.sft_sys.size()
          << " symbols, order " << 2 * L.sft_sys.r << "\n";
  } else {
    auto trimmed = sofic::trim_essential(L.sofic_sys);
    WorkBudget budget(env_budget_limit());
    std::string witness;
    bool closed = sofic::check_tau_closure(trimmed, 6, budget, &witness);
    j["states"] = trimmed.nstates();
    j["tau_closed_probe"] = closed;
    if (!closed) {
      j["valid"] = false;
      j["witness"] = witness;
      if (as_json)
        out << j.dump(2) << "\n";
      else
        out << "INVALID: language not closed under the tau-reversal, witness "
            << witness << "\n";
      return kValidationFailure;
    }
    if (!as_json)
      out << "valid sofic presentation: " << trimmed.nstates()
          << " essential states, order " << 2 * trimmed.r
          << ", tau-closure probe passed\n";
  }
  if (as_json) out << j.dump(2) << "\n";
  return kOk;
}

int cmd_counts(const std::string& src, long m_max, bool as_json,
               std::ostream& out) {
  Loaded L = load_system(src);
  WorkBudget budget(env_budget_limit());
  int r = L.is_sft ? L.sft_sys.r : L.sofic_sys.r;
  json rows = json::array();
  bool mismatch = false;
  std::vector<sofic::SignedSubsetMatrices> family;
  if (!L.is_sft) {
    auto chain = sofic::build_joint_state_chain(L.sofic_sys, budget);
    family = sofic::build_signed_family(chain);
  }
  std::ostringstream table;
  table << "m";
  for (int l = 0; l < r; ++l) table << "\tl=" << l << " (formula/oracle)";
  table << "\n";
  for (long m = 1; m <= m_max; ++m) {
    json row;
    row["m"] = m;
    table << m;
    for (int l = 0; l < r; ++l) {
      Int formula = L.is_sft ? sft::fixed_count_trace(L.sft_sys, m, l)
                             : sofic::fixed_count_theoremC(family, m, l);
      Int oracle = L.is_sft ? sft::fixed_count_bruteforce(L.sft_sys, m, l,
                                                          budget)
                            : sofic::sofic_fixed_count_bruteforce(
                                  L.sofic_sys, m, l, budget);
      if (formula != oracle) mismatch = true;
      row["l=" + std::to_string(l)] = {{"formula", formula.get_str()},
                                       {"oracle", oracle.get_str()}};
      table << "\t" << formula.get_str() << "/" << oracle.get_str();
    }
    table << "\n";
    rows.push_back(row);
  }
  if (as_json) {
    json j;
    j["counts"] = rows;
    j["backends_agree"] = !mismatch;
    out << j.dump(2) << "\n";
  } else {
    out << table.str();
    out << (mismatch ? "BACKENDS DISAGREE\n" : "all backends agree\n");
  }
  return mismatch ? kConsistencyFailure : kOk;
}

int cmd_gf(const std::string& src, const std::string& convention, int order,
           bool rational, bool as_json, std::ostream& out) {
  if (convention != "log" && convention != "ordinary")
    throw CLI::ValidationError("--convention must be log or ordinary");
  if (rational && convention != "ordinary")
    throw CLI::ValidationError(
        "--rational applies to the ordinary convention only");
  Loaded L = load_system(src);
  WorkBudget budget(env_budget_limit());
  zeta::GConvention conv = convention == "log" ? zeta::GConvention::Log
                                               : zeta::GConvention::Ordinary;
  zeta::CountProvider cp;
  std::vector<sofic::SignedSubsetMatrices> family;
  if (L.is_sft) {
    cp = zeta::trace_provider(L.sft_sys);
  } else {
    auto chain = sofic::build_joint_state_chain(L.sofic_sys, budget);
    family = sofic::build_signed_family(chain);
    cp.l_range = L.sofic_sys.r;
    cp.f = [&family](long m, int l) {
      return sofic::fixed_count_theoremC(family, m, l);
    };
  }
  TruncatedSeries g = zeta::generating_g(cp, order, conv);
  json j;
  j["convention"] = convention;
  j["series"] = series_json(g);
  if (!as_json)
    out << "g (" << convention << " convention), coefficients 0.."
        << order << ":\n  " << series_row(g) << "\n";
  if (rational) {
    json closed = json::array();
    int r = cp.l_range;
    exact::RationalFunction total;
    for (int l = 0; l < r; ++l) {
      exact::RationalFunction rf =
          L.is_sft ? zeta::ordinary_gf_rational(L.sft_sys, l)
                   : zeta::ordinary_gf_rational_sofic(family, l);
      total = l == 0 ? rf : exact::rf_add(total, rf);
      closed.push_back(rf.to_string());
      if (!as_json) out << "  l=" << l << ": " << rf.to_string() << "\n";
    }
    j["rational_per_l"] = closed;
    j["rational_total"] = total.to_string();
    if (!as_json) out << "  total: " << total.to_string() << "\n";
  }
  if (as_json) out << j.dump(2) << "\n";
  return kOk;
}

int cmd_zeta(const std::string& src, const std::string& method, int order,
             bool as_json, std::ostream& out) {
  if (method != "direct" && method != "product" && method != "both")
    throw CLI::ValidationError("--method must be direct, product or both");
  Loaded L = load_system(src);
  WorkBudget budget(env_budget_limit());
  json j;
  j["order"] = order;
  j["method"] = method;
  bool have_product = method != "direct";
  bool have_direct = method != "product";
  zeta::ZetaResult product;
  TruncatedSeries direct;
  if (have_product)
    product = L.is_sft ? zeta::lind_zeta_product(L.sft_sys, order)
                       : zeta::lind_zeta_product(L.sofic_sys, order, budget);
  if (have_direct)
    direct = L.is_sft ? zeta::lind_zeta_direct(L.sft_sys, order, budget)
                      : zeta::lind_zeta_direct(L.sofic_sys, order, budget);
  if (have_product) {
    json factors = json::array();
    for (const auto& f : product.factors) factors.push_back(factor_json(f));
    j["factors"] = factors;
    j["product_series"] = series_json(product.series);
    if (!as_json) {
      out << "product decomposition:\n";
      for (const auto& f : product.factors)
        out << "  " << factor_string(f) << "\n";
      out << "product series:\n  " << series_row(product.series) << "\n";
    }
  }
  if (have_direct) {
    j["direct_series"] = series_json(direct);
    if (!as_json)
      out << "direct series:\n  " << series_row(direct) << "\n";
  }
  if (method == "both") {
    bool agree = product.series == direct;
    j["agree"] = agree;
    if (!agree) {
      for (int i = 0; i <= order; ++i)
        if (product.series.c[i] != direct.c[i]) {
          j["first_mismatch"] = {{"power", i},
                                 {"product", rat_string(product.series.c[i])},
                                 {"direct", rat_string(direct.c[i])}};
          if (!as_json)
            out << "MISMATCH at t^" << i << ": product "
                << rat_string(product.series.c[i]) << " vs direct "
                << rat_string(direct.c[i]) << "\n";
          break;
        }
      if (as_json) out << j.dump(2) << "\n";
      return kConsistencyFailure;
    }
    if (!as_json) out << "all agree\n";
  }
  if (as_json) out << j.dump(2) << "\n";
  return kOk;
}

int cmd_subgroups(int r, long index_max, bool as_json, std::ostream& out) {
  auto descs = grp::enumerate_subgroups(r, index_max);
  json arr = json::array();
  for (const auto& d : descs) {
    arr.push_back({{"descriptor", d.text()}, {"index", d.index()}});
    if (!as_json) out << d.text() << "  index " << d.index() << "\n";
  }
  if (as_json) {
    json j;
    j["r"] = r;
    j["index_max"] = index_max;
    j["count"] = descs.size();
    j["subgroups"] = arr;
    out << j.dump(2) << "\n";
  } else {
    out << descs.size() << " subgroups of index <= " << index_max << "\n";
  }
  return kOk;
}

int cmd_jsc(const std::string& src, bool as_json, std::ostream& out) {
  Loaded L = load_system(src);
  if (L.is_sft)
    throw ValidationError("jsc needs a sofic presentation");
  WorkBudget budget(env_budget_limit());
  auto chain = sofic::build_joint_state_chain(L.sofic_sys, budget);
  json j;
  j["symbols"] = chain.size();
  json syms = json::array(), amat = json::array(), jmat = json::array();
  for (int i = 0; i < chain.size(); ++i) {
    json s;
    s["label"] = L.sofic_sys.label_alphabet[chain.labels[i]];
    s["future_mask"] = chain.symbols[i].future;
    s["past_mask"] = chain.symbols[i].past;
    syms.push_back(s);
  }
  for (int i = 0; i < chain.size(); ++i) {
    json ra = json::array(), rj = json::array();
    for (int k = 0; k < chain.size(); ++k) {
      ra.push_back(chain.A.at(i, k).get_si());
      rj.push_back(chain.J.at(i, k).get_si());
    }
    amat.push_back(ra);
    jmat.push_back(rj);
  }
  j["joint_states"] = syms;
  j["A"] = amat;
  j["J"] = jmat;
  j["certificate"] = {{"P1", chain.certificate.p1_ok},
                      {"P2", chain.certificate.p2_ok},
                      {"P3", chain.certificate.p3_ok}};
  if (as_json) {
    out << j.dump(2) << "\n";
  } else {
    out << "joint state chain with " << chain.size() << " symbols\n";
    out << "certificate: " << chain.certificate.summary() << "\n";
  }
  return kOk;
}

int cmd_crosscheck(const std::string& src, int order, bool as_json,
                   std::ostream& out) {
  Loaded L = load_system(src);
  WorkBudget budget(env_budget_limit());
  json checks = json::array();
  bool all_ok = true;
  auto record = [&](const std::string& name, bool ok,
                    const std::string& detail) {
    checks.push_back({{"check", name}, {"ok", ok}, {"detail", detail}});
    if (!as_json)
      out << (ok ? "  ok   " : "  FAIL ") << name
          << (detail.empty() ? "" : ": " + detail) << "\n";
    all_ok = all_ok && ok;
  };
  if (!as_json) out << "crosscheck to order " << order << ":\n";

  long m_cap = std::min<long>(order, 6);
  int r = L.is_sft ? L.sft_sys.r : L.sofic_sys.r;

  std::vector<sofic::SignedSubsetMatrices> family;
  if (!L.is_sft) {
    auto chain = sofic::build_joint_state_chain(L.sofic_sys, budget);
    record("joint state chain properties (P1)-(P3)", chain.certificate.ok(),
           chain.certificate.summary());
    family = sofic::build_signed_family(chain);
  }

  {
    bool ok = true;
    std::string detail;
    for (long m = 1; m <= m_cap && ok; ++m)
      for (int l = 0; l < r && ok; ++l) {
        Int a = L.is_sft ? sft::fixed_count_trace(L.sft_sys, m, l)
                         : sofic::fixed_count_theoremC(family, m, l);
        Int b = L.is_sft
                    ? sft::fixed_count_bruteforce(L.sft_sys, m, l, budget)
                    : sofic::sofic_fixed_count_bruteforce(L.sofic_sys, m, l,
                                                          budget);
        if (a != b) {
          ok = false;
          detail = "m=" + std::to_string(m) + ", l=" + std::to_string(l) +
                   ": formula " + a.get_str() + " vs oracle " + b.get_str();
        }
      }
    record("fixed-point counts, formula vs window oracle (m <= " +
               std::to_string(m_cap) + ")",
           ok, detail);
  }

  {
    bool ok = true;
    std::string detail;
    for (int l = 0; l < r && ok; ++l) {
      exact::RationalFunction rf =
          L.is_sft ? zeta::ordinary_gf_rational(L.sft_sys, l)
                   : zeta::ordinary_gf_rational_sofic(family, l);
      TruncatedSeries s = exact::expand_rational(rf, order);
      for (long m = 1; m <= order && ok; ++m) {
        Int c = L.is_sft ? sft::fixed_count_trace(L.sft_sys, m, l)
                         : sofic::fixed_count_theoremC(family, m, l);
        if (s.c[m] != Rat(c)) {
          ok = false;
          detail = "l=" + std::to_string(l) + ", m=" + std::to_string(m);
        }
      }
    }
    record("ordinary generating function: rational form vs counts", ok,
           detail);
  }

  {
    zeta::ZetaResult product =
        L.is_sft ? zeta::lind_zeta_product(L.sft_sys, order)
                 : zeta::lind_zeta_product(L.sofic_sys, order, budget);
    TruncatedSeries direct =
        L.is_sft ? zeta::lind_zeta_direct(L.sft_sys, order, budget)
                 : zeta::lind_zeta_direct(L.sofic_sys, order, budget);
    bool ok = product.series == direct;
    std::string detail;
    if (!ok)
      for (int i = 0; i <= order; ++i)
        if (product.series.c[i] != direct.c[i]) {
          detail = "t^" + std::to_string(i) + ": product " +
                   rat_string(product.series.c[i]) + " vs direct " +
                   rat_string(direct.c[i]);
          break;
        }
    record("zeta: product decomposition vs direct definition", ok, detail);
    bool fx = product.series == zeta::expand_factors(product.factors, order);
    record("zeta: factor expansion reproduces the series", fx, "");
  }

  if (as_json) {
    json j;
    j["order"] = order;
    j["checks"] = checks;
    j["all_agree"] = all_ok;
    out << j.dump(2) << "\n";
  } else {
    out << (all_ok ? "all agree\n" : "MISMATCH FOUND\n");
  }
  return all_ok ? kOk : kConsistencyFailure;
}

int cmd_example(const std::string& out_path, std::ostream& out) {
  json j = io::emit_system(io::paper_example_6());
  if (out_path.empty()) {
    out << j.dump(2) << "\n";
  } else {
    std::ofstream f(out_path);
    if (!f) throw Error("cannot write '" + out_path + "'");
    f << j.dump(2) << "\n";
    out << "wrote " << out_path << "\n";
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"exact fixed-point counts, generating functions and zeta "
               "functions of shift-reversal systems"};
  app.require_subcommand(1);

  std::string system_src, convention = "ordinary", method = "both",
              out_path;
  int order = 12;
  long m_max = 8, index_max = 12;
  int r = 1;
  bool as_json = false, rational = false;

  auto add_system = [&](CLI::App* cmd) {
    cmd->add_option("--system", system_src,
                    "system file or the built-in name paper-example-6")
        ->required();
  };
  auto add_json = [&](CLI::App* cmd) {
    cmd->add_flag("--json", as_json, "machine-readable output");
  };

  CLI::App* c_validate = app.add_subcommand("validate", "check invariants");
  add_system(c_validate);
  add_json(c_validate);

  CLI::App* c_counts =
      app.add_subcommand("counts", "fixed-point counts from all backends");
  add_system(c_counts);
  c_counts->add_option("--m-max", m_max, "largest power of the shift")
      ->required();
  add_json(c_counts);

  CLI::App* c_gf = app.add_subcommand("gf", "generating function g");
  add_system(c_gf);
  c_gf->add_option("--convention", convention, "log | ordinary");
  c_gf->add_option("--order", order, "truncation order");
  c_gf->add_flag("--rational", rational, "also print closed forms");
  add_json(c_gf);

  CLI::App* c_zeta = app.add_subcommand("zeta", "Lind zeta function");
  add_system(c_zeta);
  c_zeta->add_option("--method", method, "direct | product | both");
  c_zeta->add_option("--order", order, "truncation order");
  add_json(c_zeta);

  CLI::App* c_sub =
      app.add_subcommand("subgroups", "finite-index subgroups of G_{2r}");
  c_sub->add_option("--r", r, "half-order r")->required();
  c_sub->add_option("--index-max", index_max, "largest index")->required();
  add_json(c_sub);

  CLI::App* c_jsc = app.add_subcommand("jsc", "Krieger joint state chain");
  add_system(c_jsc);
  add_json(c_jsc);

  CLI::App* c_cross =
      app.add_subcommand("crosscheck", "run every backend pair");
  add_system(c_cross);
  c_cross->add_option("--order", order, "truncation order");
  add_json(c_cross);

  CLI::App* c_example =
      app.add_subcommand("example", "write the built-in fixture");
  c_example->add_option("--out", out_path, "output path (default stdout)");
  add_json(c_example);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help
      out << app.help() << "\n";
      return kOk;
    }
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (app.got_subcommand(c_validate))
      return cmd_validate(system_src, as_json, out);
    if (app.got_subcommand(c_counts))
      return cmd_counts(system_src, m_max, as_json, out);
    if (app.got_subcommand(c_gf))
      return cmd_gf(system_src, convention, order, rational, as_json, out);
    if (app.got_subcommand(c_zeta))
      return cmd_zeta(system_src, method, order, as_json, out);
    if (app.got_subcommand(c_sub))
      return cmd_subgroups(r, index_max, as_json, out);
    if (app.got_subcommand(c_jsc)) return cmd_jsc(system_src, as_json, out);
    if (app.got_subcommand(c_cross))
      return cmd_crosscheck(system_src, order, as_json, out);
    if (app.got_subcommand(c_example)) return cmd_example(out_path, out);
    err << "no subcommand\n";
    return kUsage;
  } catch (const CLI::ValidationError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "invalid system document:\n";
    for (const auto& v : e.violations()) err << "  - " << v << "\n";
    return kValidationFailure;
  } catch (const BudgetError& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudgetExceeded;
  } catch (const ConsistencyError& e) {
    err << "internal consistency failure: " << e.what() << "\n";
    return kConsistencyFailure;
  } catch (const ValidationError& e) {
    err << "validation failure: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const DimensionError& e) {
    err << "validation failure: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace revzeta::cli
