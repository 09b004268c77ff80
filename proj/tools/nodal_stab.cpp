// nodal-stab: command-line front end over the nodal_stab headers.
//
//   nodal-stab <validate|order|check|balance|gpb|dvr> [--curve F] [--bundle F] [--pol F] [--out F]
//
// Exit codes: 0 success/pass, 1 semantic failure, 2 input error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nodal_stab.hpp"

namespace ns = nodal_stab;
using ns::io::json;

namespace {

enum Exit : int { kPass = 0, kFail = 1, kInputError = 2 };

struct Outcome {
  json report;
  int code = kPass;
};

bool is_semantic(ns::ErrorCode code) {
  switch (code) {
    case ns::ErrorCode::SingularProjection:
    case ns::ErrorCode::NoRoot:
    case ns::ErrorCode::PreconditionViolated:
      return true;
    default:
      return false;
  }
}

Outcome error_outcome(const ns::Error& e) {
  return {{{"error", std::string(ns::to_string(e.code()))}, {"message", e.what()}},
          is_semantic(e.code()) ? kFail : kInputError};
}

ns::TreeLikeCurve load_curve(const std::string& path) {
  return ns::TreeLikeCurve(ns::io::curve_from_json(ns::io::load_json(path)));
}

ns::Polarization load_polarization(const std::string& pol_path, const std::string& ample_path,
                                   const ns::TreeLikeCurve& c) {
  if (!pol_path.empty()) return ns::io::polarization_from_json(ns::io::load_json(pol_path));
  if (!ample_path.empty()) return ns::polarization_from_ample(ns::io::ample_from_json(ns::io::load_json(ample_path)));
  // Uniform weights when nothing is given.
  ns::Polarization pol;
  for (auto id : c.ids()) pol.weights[id] = ns::make_rational(1, static_cast<ns::Int>(c.size()));
  return pol;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, sep);)
    if (!item.empty()) out.push_back(item);
  return out;
}

// --- gpb ----------------------------------------------------------------------

struct GpbOptions {
  std::string flag_path;
  ns::Int rank = 0;
  ns::Int degree = 0;
  ns::Int nodes = 0;
  ns::Int genus = 0;
  std::string field;
  std::optional<ns::Int> a;
  std::string roots;
};

template <class Field>
json flag_report(const ns::GluingFlag<Field>& flag, int& code) {
  auto proj = ns::check_projections(flag);
  auto kernel = ns::check_no_kernel_section(flag);
  if (!proj.locally_free() || !kernel.pass()) code = kFail;
  return {{"flag", ns::io::to_json(flag)},
          {"projections", ns::io::to_json(proj)},
          {"no_kernel_section", ns::io::to_json(kernel)}};
}

Outcome run_gpb(const GpbOptions& opt) {
  Outcome out;
  if (!opt.flag_path.empty()) {
    auto flag = ns::io::flag_from_json(ns::io::load_json(opt.flag_path));
    out.report = std::visit([&](const auto& f) { return flag_report(f, out.code); }, flag);
    return out;
  }
  if (opt.rank < 1) throw ns::Error(ns::ErrorCode::ParseError, "gpb needs --flag or --rank/--degree/--nodes");

  auto g = ns::GpbClass::canonical(opt.rank, opt.degree, opt.nodes);
  out.report["class"] = {{"rank", g.rank}, {"degree", g.degree}, {"nodes", g.nodes()}};
  out.report["parabolic_weight"] = ns::parabolic_weight(g);
  out.report["parabolic_degree"] = ns::parabolic_degree(g);
  out.report["parabolic_slope"] = ns::to_string(ns::parabolic_slope(g));
  auto phi = ns::phi_rank_degree(g, opt.genus);
  out.report["phi"] = ns::io::to_json(phi);
  if (phi.degree != g.degree || phi.rank != g.rank) out.code = kFail;

  if (opt.field.empty()) return out;
  auto field = ns::parse_field(opt.field);
  std::visit(
      [&](const auto& f) {
        if (!opt.roots.empty()) {
          std::vector<typename std::decay_t<decltype(f)>::Element> scalars;
          for (const auto& s : split(opt.roots, ',')) scalars.push_back(f.parse(s));
          try {
            auto roots = ns::picard_rth_root(f, g.rank, scalars);
            json arr = json::array();
            for (const auto& b : roots) arr.push_back(f.format(b));
            out.report["roots"] = arr;
          } catch (const ns::Error& e) {
            if (e.code() != ns::ErrorCode::NoRoot) throw;
            out.report["roots"] = {{"error", "NoRoot"}, {"message", e.what()}};
            out.code = kFail;
          }
        }
        if (opt.genus == 0 && opt.nodes >= 1) {
          // One [I | J - I] flag serves every node.
          ns::Int a = opt.a ? *opt.a : ns::floor(ns::make_rational(g.degree, g.rank));
          try {
            auto flag = ns::build_rational_flag(f, static_cast<std::size_t>(g.rank), g.degree, a);
            out.report["rational_flag"] = flag_report(flag, out.code);
            out.report["rational_flag"]["a"] = a;
          } catch (const ns::Error& e) {
            if (e.code() != ns::ErrorCode::SingularProjection && e.code() != ns::ErrorCode::DegreeBound) throw;
            out.report["rational_flag"] = {{"error", std::string(ns::to_string(e.code()))}, {"message", e.what()}};
            out.code = kFail;
          }
        }
      },
      field);
  return out;
}

// --- dvr ----------------------------------------------------------------------

struct DvrOptions {
  std::string matrix_path;
  std::string field = "F5";
  ns::Int n = 1;
  std::string entries;
};

Outcome run_dvr(const DvrOptions& opt) {
  json doc;
  if (!opt.matrix_path.empty()) {
    doc = ns::io::load_json(opt.matrix_path);
  } else {
    if (opt.entries.empty()) throw ns::Error(ns::ErrorCode::ParseError, "dvr needs --matrix or --entries");
    json a = json::array();
    for (const auto& row : split(opt.entries, ';')) {
      json r = json::array();
      for (const auto& e : split(row, ',')) r.push_back(ns::parse_int(e));
      a.push_back(r);
    }
    doc = {{"field", opt.field}, {"n", opt.n}, {"A", a}};
  }

  const auto& fj = ns::io::detail::field(doc, "field", "dvr");
  if (!fj.is_string()) throw ns::Error(ns::ErrorCode::ParseError, "dvr.field: expected a string");
  auto any = ns::parse_field(fj.get<std::string>());
  if (!std::holds_alternative<ns::PrimeField>(any))
    throw ns::Error(ns::ErrorCode::ParseError, "dvr.field: truncated rings need a prime field");
  const auto f = std::get<ns::PrimeField>(any);
  const auto n_raw = ns::io::detail::as_int(ns::io::detail::field(doc, "n", "dvr"), "dvr.n");
  if (n_raw < 1) throw ns::Error(ns::ErrorCode::ParseError, "dvr.n: must be >= 1");
  const auto n = static_cast<std::size_t>(n_raw);

  Outcome out;
  out.report["field"] = f.name();
  out.report["n"] = n;

  if (doc.contains("A")) {
    auto a = ns::io::int_matrix_from_json(doc.at("A"), "dvr.A");
    auto id = ns::det_trace_identity(f, a, n);
    out.report["det_trace"] = {
        {"det", ns::io::to_json(id.det)}, {"one_plus_trace", ns::io::to_json(id.trace)}, {"holds", id.holds()}};
    if (!id.holds()) out.code = kFail;
  }

  std::optional<ns::TruncatedMatrix> m;
  if (doc.contains("M")) {
    m = ns::io::truncated_from_json(doc.at("M"), f, n, "dvr.M");
  } else if (doc.contains("A")) {
    m = ns::TruncatedMatrix::perturbed_identity(f, n, ns::io::int_matrix_from_json(doc.at("A"), "dvr.A"), n);
  }
  if (m) {
    auto k = ns::sl_kernel_check(*m);
    out.report["sl_kernel"] = {{"det_is_one", k.det_is_one},
                               {"reduces_to_identity", k.reduces_to_identity},
                               {"trace_form", k.trace_form},
                               {"in_kernel", k.in_kernel()},
                               {"consistent", k.consistent()}};
    if (!k.consistent()) out.code = kFail;
  }

  if (doc.contains("cocycle") || doc.contains("gamma")) {
    const auto& cj = ns::io::detail::field(doc, "cocycle", "dvr");
    const auto& gj = ns::io::detail::field(doc, "gamma", "dvr");
    if (!cj.is_array() || !gj.is_array()) throw ns::Error(ns::ErrorCode::ParseError, "dvr.cocycle/gamma: expected arrays");
    std::vector<ns::TruncatedMatrix> cocycle;
    std::vector<ns::TruncatedScalar> gammas;
    for (std::size_t j = 0; j < cj.size(); ++j)
      cocycle.push_back(ns::io::truncated_from_json(cj[j], f, n, "dvr.cocycle[" + std::to_string(j) + "]"));
    for (std::size_t j = 0; j < gj.size(); ++j)
      gammas.push_back(ns::io::scalar_from_json(gj[j], f, n, "dvr.gamma[" + std::to_string(j) + "]"));
    auto t = ns::torsor_correct(cocycle, gammas);
    json corrected = json::array(), dets = json::array();
    for (const auto& c : t.corrected) {
      corrected.push_back(ns::io::to_json(c));
      dets.push_back(ns::io::to_json(c.det()));
    }
    out.report["torsor"] = {{"corrected", corrected}, {"determinants", dets}, {"holds", t.holds()}};
    if (!t.holds()) out.code = kFail;
  }
  return out;
}

void emit(const Outcome& out, const std::string& path) {
  std::string text = out.report.dump(2) + "\n";
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(path);
  if (!file) {
    std::cerr << "nodal-stab: cannot write '" << path << "'\n";
    std::exit(kInputError);
  }
  file << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semistability checks and twist balancing for tree-like nodal curves", "nodal-stab"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::string curve, bundle, pol, ample, out_path;
  auto add_common = [&](CLI::App* sub, bool needs_bundle) {
    sub->add_option("--curve", curve, "curve JSON")->required();
    if (needs_bundle) {
      sub->add_option("--bundle", bundle, "bundle class JSON")->required();
      sub->add_option("--pol", pol, "polarization JSON (default: uniform)");
      sub->add_option("--ample", ample, "ample degrees JSON, used when --pol is absent");
    }
  };
  app.add_option("--out", out_path, "write the report here instead of standard output");

  auto* validate = app.add_subcommand("validate", "check that the dual graph is a tree");
  add_common(validate, false);
  auto* order = app.add_subcommand("order", "leaf-pruning ordering with G(i), B(i), nu(i)");
  add_common(order, false);
  auto* check = app.add_subcommand("check", "lambda-semistability windows per order index");
  add_common(check, true);
  std::string det_path;
  check->add_option("--det", det_path, "determinant multidegree JSON ({\"multidegree\":{...}})");
  auto* balance = app.add_subcommand("balance", "find a twist making the class lambda-semistable");
  add_common(balance, true);

  GpbOptions gpb_opt;
  auto* gpb = app.add_subcommand("gpb", "parabolic numerics and gluing-flag checks");
  gpb->add_option("--flag", gpb_opt.flag_path, "gluing flag JSON");
  gpb->add_option("--rank", gpb_opt.rank, "rank r");
  gpb->add_option("--degree", gpb_opt.degree, "degree d on the normalization");
  gpb->add_option("--nodes", gpb_opt.nodes, "number of nodes");
  gpb->add_option("--genus", gpb_opt.genus, "genus of the normalization");
  gpb->add_option("--field", gpb_opt.field, "Q or F<p>: build the rational flag / extract roots");
  ns::Int a_value = 0;
  auto* a_opt = gpb->add_option("--a", a_value, "line-bundle degree a with r*a <= d (default floor(d/r))");
  gpb->add_option("--roots", gpb_opt.roots, "comma-separated gluing scalars to take r-th roots of");

  DvrOptions dvr_opt;
  auto* dvr = app.add_subcommand("dvr", "identities over k[pi]/(pi^(n+1))");
  dvr->add_option("--matrix", dvr_opt.matrix_path, "JSON with field, n, A and optional M, cocycle, gamma");
  dvr->add_option("--field", dvr_opt.field, "prime field, e.g. F5");
  dvr->add_option("--n", dvr_opt.n, "truncation order n");
  dvr->add_option("--entries", dvr_opt.entries, "matrix A as \"a,b;c,d\"");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kInputError;
  }
  if (a_opt->count() > 0) gpb_opt.a = a_value;

  Outcome out;
  try {
    if (validate->parsed()) {
      auto desc = ns::io::curve_from_json(ns::io::load_json(curve));
      out.report = ns::io::to_json(ns::validate_curve(desc));
    } else if (order->parsed()) {
      auto c = load_curve(curve);
      out.report = ns::io::to_json(ns::prune_ordering(c));
    } else if (check->parsed() || balance->parsed()) {
      auto c = load_curve(curve);
      auto bc = ns::io::class_from_json(ns::io::load_json(bundle));
      auto p = load_polarization(pol, ample, c);
      ns::validate_class(c, bc);
      ns::validate_polarization(c, p);
      if (check->parsed()) {
        auto ord = ns::prune_ordering(c);
        auto report = ns::lambda_check(c, ord, bc, p);
        out.report = ns::io::to_json(report);
        out.report["ordering"] = ord.perm;
        out.report["chi"] = ns::euler_char_total(c, bc);
        out.report["seshadri_slope"] = ns::to_string(ns::seshadri_slope(c, bc, p));
        out.report["distances"] = ns::io::to_json(ns::unbalance_report(c, bc, p));
        if (!report.pass()) out.code = kFail;
        if (!det_path.empty()) {
          auto det = ns::io::detail::int_map(
              ns::io::detail::field(ns::io::load_json(det_path), "multidegree", "det"), "det.multidegree");
          auto verdict = ns::det_compatibility(c, bc, det);
          out.report["det_compatibility"] = ns::io::to_json(verdict);
          if (!verdict.pass()) out.code = kFail;
        }
      } else {
        auto result = ns::balance(c, bc, p);
        out.report = ns::io::to_json(result);
        out.report["chi"] = ns::euler_char_total(c, result.balanced);
        out.report["pass"] = ns::lambda_check(c, result.ordering, result.balanced, p).pass();
        if (!out.report["pass"].get<bool>()) out.code = kFail;
      }
    } else if (gpb->parsed()) {
      out = run_gpb(gpb_opt);
    } else if (dvr->parsed()) {
      out = run_dvr(dvr_opt);
    }
  } catch (const ns::Error& e) {
    std::cerr << "nodal-stab: " << e.what() << "\n";
    out = error_outcome(e);
  } catch (const json::exception& e) {
    std::cerr << "nodal-stab: " << e.what() << "\n";
    out = error_outcome(ns::Error(ns::ErrorCode::ParseError, e.what()));
  }
  emit(out, out_path);
  return out.code;
}
