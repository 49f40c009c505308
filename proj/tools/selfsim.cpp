#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "selfsim/config.hpp"
#include "selfsim/expand.hpp"
#include "selfsim/render.hpp"
#include "selfsim/scenarios.hpp"
#include "selfsim/subst_io.hpp"
#include "selfsim/substitution.hpp"
#include "selfsim/tiling.hpp"

using namespace selfsim;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

class Report {
 public:
  explicit Report(std::string command) { j_["command"] = std::move(command); j_["config"] = nullptr; j_["checks"] = ordered_json::array(); }

  void set_config(ordered_json c) { j_["config"] = std::move(c); }
  void set_prefix(std::string prefix) { prefix_ = std::move(prefix); }
  void add(const std::string& name, bool ok, const std::string& detail) {
    j_["checks"].push_back({{"name", prefix_ + name}, {"ok", ok}, {"detail", detail}});
    ok_ = ok_ && ok;
  }
  // Per-preset results nest under the preset name while a prefix is set.
  ordered_json& result() {
    if (!j_.contains("result")) j_["result"] = ordered_json::object();
    if (prefix_.empty()) return j_["result"];
    return j_["result"][prefix_.substr(0, prefix_.size() - 1)];
  }
  void set_error(const Error& e) {
    j_["error"] = {{"code", std::string(error_code_name(e.code()))}, {"message", e.what()}};
  }
  bool ok() const { return ok_; }
  void print() const { std::cout << j_.dump(2) << std::endl; }

 private:
  ordered_json j_;
  std::string prefix_;
  bool ok_ = true;
};

// Errors in the input, as opposed to failed verifications.
bool is_input_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::SyntaxError:
    case ErrorCode::NotAUnit:
    case ErrorCode::NotPrime:
    case ErrorCode::BoxTooLarge:
    case ErrorCode::IOError:
    case ErrorCode::InvalidArgument:
    case ErrorCode::UnknownPreset:
    case ErrorCode::KindMismatch:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::NotDivisible:
      return true;
    default:
      return false;
  }
}

struct ConfigFlags {
  std::string config_path;
  std::string preset;
  std::optional<std::uint32_t> p;
  std::size_t d = 1;
  std::size_t n = 2;
  std::string P = "1";
  std::string Q;
  std::string side = "right";
  std::vector<int> box;

  void attach(CLI::App* app) {
    app->add_option("--config", config_path, "JSON config file");
    app->add_option("--preset", preset, "named preset (see 'preset list')");
    app->add_option("--p", p, "prime modulus");
    app->add_option("--d", d, "matrix size of the coefficients (1 = scalar)");
    app->add_option("--n", n, "number of variables");
    app->add_option("--P", P, "numerator polynomial");
    app->add_option("--Q", Q, "denominator polynomial");
    app->add_option("--side", side, "right: P Q^-1, left: Q^-1 P")->check(CLI::IsMember({"right", "left"}));
    app->add_option("--box", box, "box side, or one extent per variable");
  }

  bool given() const { return !config_path.empty() || !preset.empty() || !Q.empty(); }

  RunConfig resolve() const {
    int sources = int(!config_path.empty()) + int(!preset.empty()) + int(!Q.empty());
    if (sources != 1) throw Error(ErrorCode::InvalidArgument, "give exactly one of --config, --preset or --Q");
    RunConfig cfg;
    if (!config_path.empty()) {
      cfg = load_config(config_path);
    } else if (!preset.empty()) {
      cfg = config_from_preset(preset);
    } else {
      if (!p) throw Error(ErrorCode::InvalidArgument, "--p is required with --Q");
      cfg.p = *p;
      cfg.d = d;
      cfg.n = n;
      cfg.P_text = P;
      cfg.Q_text = Q;
      cfg.side = parse_side(side);
    }
    if (!box.empty()) {
      cfg.box = box.size() == 1 ? std::vector<int>(cfg.n, box[0]) : box;
    }
    validate(cfg);
    return cfg;
  }
};

int round_up(int v, int m) { return (v + m - 1) / m * m; }

std::vector<int> divisible_box(const RunConfig& cfg, int length) {
  std::vector<int> out = cfg.box;
  for (auto& e : out) e = std::max(length, e / length * length);
  return out;
}

std::string extents_text(const std::vector<int>& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "x" : "") + std::to_string(e[i]);
  return s;
}

std::string dims_text(const std::vector<std::size_t>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::size_t int_pow(std::size_t b, std::size_t e) {
  std::size_t v = 1;
  while (e--) v *= b;
  return v;
}

// ---------------------------------------------------------------------------
// Check suites shared by several subcommands

void check_invariance(Report& rep, const RunConfig& cfg, const Synthesis& syn, const std::vector<int>& box) {
  TilingBox T = base_tiling(syn, box);
  TilingBox Tb = tbar(T, syn.tau.D);
  InvarianceReport inv = verify_invariance(Tb, syn.S);
  rep.add("invariance", inv.ok, "Tbar on " + extents_text(box) + " under sigma o Phi_1: " + inv.summary());
  TilingBox M = expand_quotient(cfg.P(), cfg.Q(), cfg.side, box);
  TauReport tr = verify_tau(M, Tb, syn.tau.tau);
  rep.add("tau", tr.ok, "M = tau(Tbar) on " + extents_text(box) + ": " + tr.summary());
}

void check_block_substitution(Report& rep, const RunConfig& cfg, const Synthesis& syn, unsigned s_max,
                              int blocks, const std::string& out_path) {
  BlockSubstitution bs = find_block_substitution(syn.tau.tau, syn.S, s_max);
  const std::size_t p = cfg.p;
  const int block = static_cast<int>(int_pow(p, bs.r));
  const int side = static_cast<int>(int_pow(p, bs.r + bs.t)) * blocks;
  std::vector<int> box(cfg.n, side);
  TilingBox M = expand_quotient(cfg.P(), cfg.Q(), cfg.side, box);
  TilingBox Mb = block_tiling(M, block);
  InvarianceReport inv = verify_invariance(Mb, bs.substitution);
  const std::size_t bound = int_pow(static_cast<std::size_t>(syn.tau.D), cfg.n);
  auto& res = rep.result();
  res["r"] = bs.r;
  res["t"] = bs.t;
  res["rho_rank"] = bs.rho_rank;
  res["rank_bound"] = bound;
  res["kernel_dims"] = bs.kernel_dims;
  rep.add("block-search", true,
          "r=" + std::to_string(bs.r) + " t=" + std::to_string(bs.t) + " kernel dims " + dims_text(bs.kernel_dims));
  rep.add("block-invariance", inv.ok,
          "M^" + std::to_string(block) + " on " + extents_text(box) + " under S': " + inv.summary());
  rep.add("rho-rank", bs.rho_rank <= bound,
          "rank(rho)=" + std::to_string(bs.rho_rank) + " <= D^n=" + std::to_string(bound));
  if (!out_path.empty()) {
    write_text_file(out_path, dump_substitution(bs.substitution));
    res["substitution_file"] = out_path;
  }
}

void check_series_vs_frobenius(Report& rep, const Synthesis& syn, const std::vector<int>& box) {
  TilingBox a = base_tiling(syn, box);
  TilingBox b = scalar_reciprocal(syn.tau.Q0, box);
  rep.add("frobenius", a == b, "1/Q0 by Frobenius recursion vs series division on " + extents_text(box));
}

void check_recurrence(Report& rep, const PresetConfig& pc, const std::vector<int>& box) {
  if (!pc.recurrence) return;
  TilingBox direct = recurrence_tiling(*pc.recurrence, box, pc.d > 1);
  TilingBox series = expand_quotient(pc.P(), pc.Q(), Side::Left, box);
  rep.add("recurrence", direct == series, "recurrence fill vs (I - (ax+by+cxy))^-1 on " + extents_text(box));
}

void run_suite(Report& rep, const RunConfig& cfg, int target_side, unsigned s_max, int blocks) {
  Synthesis syn = synthesize(cfg.P(), cfg.Q(), cfg.side);
  std::vector<int> box(cfg.n, round_up(target_side, static_cast<int>(cfg.p)));
  check_series_vs_frobenius(rep, syn, box);
  check_invariance(rep, cfg, syn, box);
  check_block_substitution(rep, cfg, syn, s_max, blocks, "");
  if (cfg.d == 1) {
    KernelChain kc = kernel_chain(syn.tau.tau, syn.S, std::min(s_max, 4u));
    std::string nested;
    for (bool b : kc.nested) nested += b ? '1' : '0';
    rep.add("kernel-chain", true, "dims " + dims_text(kc.dims) + " nested " + nested + " (observational)");
  }
  if (cfg.preset && cfg.n == 2) check_recurrence(rep, figure_preset(*cfg.preset), box);
}

// ---------------------------------------------------------------------------

int finish(Report& rep) {
  rep.print();
  return rep.ok() ? kExitOk : kExitFailed;
}

template <typename Fn>
int guarded(const std::string& command, Fn&& body) {
  Report rep(command);
  try {
    body(rep);
    return finish(rep);
  } catch (const Error& e) {
    rep.set_error(e);
    std::cerr << "selfsim " << command << ": " << e.what() << "\n";
    const bool input = is_input_error(e.code());
    if (!input) rep.add(std::string(error_code_name(e.code())), false, e.what());
    rep.print();
    return input ? kExitUsage : kExitFailed;
  } catch (const std::exception& e) {
    std::cerr << "selfsim " << command << ": " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-similar tilings from rational power series over finite fields"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::function<int()> action;

  // expand
  ConfigFlags expand_cfg;
  std::string expand_render;
  auto* expand = app.add_subcommand("expand", "expand P Q^-1 (or Q^-1 P) on the box");
  expand_cfg.attach(expand);
  expand->add_option("--render", expand_render, "write a PPM image of the box");
  expand->callback([&] {
    action = [&] {
      return guarded("expand", [&](Report& rep) {
        RunConfig cfg = expand_cfg.resolve();
        rep.set_config(cfg.to_json());
        auto t0 = std::chrono::steady_clock::now();
        TilingBox M = expand_quotient(cfg.P(), cfg.Q(), cfg.side, cfg.box);
        std::size_t colors = count_colors(M);
        rep.result()["colors"] = colors;
        rep.add("expansion", true,
                extents_text(cfg.box) + " box, " + std::to_string(colors) + " colors, " +
                    std::to_string(seconds_since(t0)) + " s");
        if (!expand_render.empty()) {
          render_ppm(M, expand_render);
          rep.add("render", true, "wrote " + expand_render);
        }
      });
    };
  });

  // subst
  auto* subst = app.add_subcommand("subst", "length-p substitution of the window tiling");
  subst->require_subcommand(1);

  ConfigFlags build_cfg;
  std::string build_out;
  auto* build = subst->add_subcommand("build", "construct sigma o Phi_1 and tau");
  build_cfg.attach(build);
  build->add_option("--out", build_out, "also write the substitution as JSON");
  build->callback([&] {
    action = [&] {
      return guarded("subst build", [&](Report& rep) {
        RunConfig cfg = build_cfg.resolve();
        rep.set_config(cfg.to_json());
        Synthesis syn = synthesize(cfg.P(), cfg.Q(), cfg.side);
        auto& res = rep.result();
        res["D"] = syn.tau.D;
        res["D_bound"] = syn.tau.D_bound;
        res["window_dim"] = syn.S.in_dim();
        res["length"] = syn.S.length();
        res["Q0"] = to_string(syn.tau.Q0);
        res["h"] = to_string(syn.h);
        res["phi1_rank"] = rank(syn.phi1);
        rep.add("synthesis", true,
                "D=" + std::to_string(syn.tau.D) + ", dim W=" + std::to_string(syn.S.in_dim()) + ", " +
                    std::to_string(syn.S.cell_count()) + " maps");
        if (!build_out.empty()) {
          write_text_file(build_out, dump_substitution(syn.S));
          res["substitution_file"] = build_out;
        }
      });
    };
  });

  ConfigFlags dump_cfg;
  std::string dump_out;
  auto* dump = subst->add_subcommand("dump", "write the substitution as canonical JSON");
  dump_cfg.attach(dump);
  dump->add_option("--out", dump_out, "output file")->required();
  dump->callback([&] {
    action = [&] {
      return guarded("subst dump", [&](Report& rep) {
        RunConfig cfg = dump_cfg.resolve();
        rep.set_config(cfg.to_json());
        Synthesis syn = synthesize(cfg.P(), cfg.Q(), cfg.side);
        std::string text = dump_substitution(syn.S);
        write_text_file(dump_out, text);
        rep.result()["substitution_file"] = dump_out;
        rep.add("dump", true, std::to_string(text.size()) + " bytes");
      });
    };
  });

  std::string load_path, load_out;
  auto* load = subst->add_subcommand("load", "read and validate a substitution file");
  load->add_option("file", load_path, "substitution JSON")->required();
  load->add_option("--out", load_out, "rewrite in canonical form");
  load->callback([&] {
    action = [&] {
      return guarded("subst load", [&](Report& rep) {
        std::string text = read_text_file(load_path);
        LinearSubstitution S = load_substitution(text);
        std::string canon = dump_substitution(S);
        bool stable = dump_substitution(load_substitution(canon)) == canon;
        auto& res = rep.result();
        res["p"] = S.field().p();
        res["n"] = S.n();
        res["t"] = S.t();
        res["color_dim"] = S.in_dim();
        res["canonical"] = canon == text;
        rep.add("schema", true, std::to_string(S.cell_count()) + " maps of size " + std::to_string(S.in_dim()));
        rep.add("round-trip", stable, "dump(load(x)) is bit-exact");
        if (!load_out.empty()) write_text_file(load_out, canon);
      });
    };
  });

  ConfigFlags verify_cfg;
  std::string verify_subst;
  auto* verify = subst->add_subcommand("verify", "check Tbar invariance and M = tau(Tbar) on the box");
  verify_cfg.attach(verify);
  verify->add_option("--subst", verify_subst, "check against this substitution file instead");
  verify->callback([&] {
    action = [&] {
      return guarded("subst verify", [&](Report& rep) {
        RunConfig cfg = verify_cfg.resolve();
        rep.set_config(cfg.to_json());
        Synthesis syn = synthesize(cfg.P(), cfg.Q(), cfg.side);
        if (verify_subst.empty()) {
          check_invariance(rep, cfg, syn, divisible_box(cfg, static_cast<int>(syn.S.length())));
          return;
        }
        LinearSubstitution S = load_substitution(read_text_file(verify_subst));
        std::vector<int> box = divisible_box(cfg, static_cast<int>(S.length()));
        TilingBox Tb = tbar(base_tiling(syn, box), syn.tau.D);
        InvarianceReport inv = verify_invariance(Tb, S);
        rep.add("invariance", inv.ok, "Tbar on " + extents_text(box) + " under " + verify_subst + ": " + inv.summary());
      });
    };
  });

  // blocksub
  auto* blocksub = app.add_subcommand("blocksub", "substitution for the block tiling M^(p^r)");
  blocksub->require_subcommand(1);
  ConfigFlags find_cfg;
  unsigned find_smax = 8;
  int find_blocks = 64;
  std::string find_out;
  auto* find = blocksub->add_subcommand("find", "search (r, t), build S' and verify it");
  find_cfg.attach(find);
  find->add_option("--s-max", find_smax, "largest level searched")->check(CLI::Range(1u, 16u));
  find->add_option("--blocks", find_blocks, "verify on a box of p^(r+t) * blocks per side")->check(CLI::Range(1, 4096));
  find->add_option("--out", find_out, "write S' as JSON");
  find->callback([&] {
    action = [&] {
      return guarded("blocksub find", [&](Report& rep) {
        RunConfig cfg = find_cfg.resolve();
        rep.set_config(cfg.to_json());
        Synthesis syn = synthesize(cfg.P(), cfg.Q(), cfg.side);
        try {
          check_block_substitution(rep, cfg, syn, find_smax, find_blocks, find_out);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::SearchExhausted) throw;
          rep.add("block-search", false, e.what());
        }
      });
    };
  });

  // check
  auto* check = app.add_subcommand("check", "oracle suites");
  check->require_subcommand(1);
  ConfigFlags all_cfg;
  int all_side = 256;
  unsigned all_smax = 8;
  int all_blocks = 16;
  auto* all = check->add_subcommand("all", "every check, on one config or on all presets");
  all_cfg.attach(all);
  all->add_option("--check-side", all_side, "side of the verification boxes")->check(CLI::Range(4, 4096));
  all->add_option("--s-max", all_smax, "largest level for the block search")->check(CLI::Range(1u, 16u));
  all->add_option("--blocks", all_blocks, "blocks per side for block invariance")->check(CLI::Range(1, 1024));
  all->callback([&] {
    action = [&] {
      return guarded("check all", [&](Report& rep) {
        if (all_cfg.given()) {
          RunConfig cfg = all_cfg.resolve();
          rep.set_config(cfg.to_json());
          run_suite(rep, cfg, all_side, all_smax, all_blocks);
          return;
        }
        for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
          PrimeField f(p);
          std::vector<int> box{128, 128};
          Poly one = Poly::scalar_constant(2, f, 1);
          Poly q = parse_poly("1 - x1 - x2", 2, CoeffKind::scalar(f));
          bool ok = expand_quotient(one, q, Side::Right, box) == binomial_tiling(f, box);
          rep.add("lucas-p" + std::to_string(p), ok, "1/(1-x-y) vs Pascal table on 128x128");
        }
        for (const auto& name : preset_names()) {
          rep.set_prefix(name + "/");
          try {
            run_suite(rep, config_from_preset(name), all_side, all_smax, all_blocks);
          } catch (const Error& e) {
            rep.add(std::string(error_code_name(e.code())), false, e.what());
          }
        }
        rep.set_prefix("");
      });
    };
  });

  // preset
  auto* preset = app.add_subcommand("preset", "figure presets");
  preset->require_subcommand(1);
  auto* list = preset->add_subcommand("list", "list preset names");
  list->callback([&] {
    action = [&] {
      return guarded("preset list", [&](Report& rep) {
        auto& arr = rep.result()["presets"] = ordered_json::array();
        for (const auto& name : preset_names()) {
          PresetConfig pc = figure_preset(name);
          arr.push_back({{"name", name}, {"p", pc.p}, {"d", pc.d}, {"description", pc.description}});
        }
      });
    };
  });
  std::string run_name, run_render;
  std::vector<int> run_box;
  auto* run = preset->add_subcommand("run", "expand a preset, optionally rendering it");
  run->add_option("name", run_name, "preset name")->required();
  run->add_option("--render", run_render, "write a PPM image");
  run->add_option("--box", run_box, "override the box");
  run->callback([&] {
    action = [&] {
      return guarded("preset run", [&](Report& rep) {
        RunConfig cfg = config_from_preset(run_name);
        if (!run_box.empty()) {
          cfg.box = run_box.size() == 1 ? std::vector<int>(cfg.n, run_box[0]) : run_box;
          validate(cfg);
        }
        rep.set_config(cfg.to_json());
        TilingBox M = expand_quotient(cfg.P(), cfg.Q(), cfg.side, cfg.box);
        std::size_t colors = count_colors(M);
        rep.result()["colors"] = colors;
        rep.add("expansion", true, extents_text(cfg.box) + " box, " + std::to_string(colors) + " colors");
        check_recurrence(rep, figure_preset(run_name), cfg.box);
        if (!run_render.empty()) {
          render_ppm(M, run_render);
          rep.add("render", true, "wrote " + run_render);
        }
      });
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  return action ? action() : kExitUsage;
}
