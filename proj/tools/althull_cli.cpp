#include <CLI11.hpp>
#include <iostream>
#include <json.hpp>

#include "althull/attack.hpp"
#include "althull/keyio.hpp"

using namespace althull;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;      // not distinguishable / verification false
constexpr int kInapplicable = 2;
constexpr int kFailure = 3;
constexpr int kUsage = 64;
constexpr int kFileError = 66;

FieldTower make_tower(int64_t q, int m) {
  if (q < 2) throw ParamError("q must be at least 2");
  int64_t p = q;
  for (int64_t d = 2; d * d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  int s = 0;
  int64_t pw = 1;
  while (pw < q) {
    pw *= p;
    ++s;
  }
  if (pw != q) throw ParamError("q must be a prime power");
  return FieldTower::make(p, s, m);
}

InstanceKind parse_kind(const std::string& k) {
  if (k == "alternant") return InstanceKind::alternant;
  if (k == "goppa") return InstanceKind::goppa;
  throw ParamError("kind must be alternant or goppa");
}

json params_json(const AlternantParams& p) {
  return json{{"q", p.q},
              {"m", p.m},
              {"r", p.r},
              {"n", p.n},
              {"seed", p.seed},
              {"kind", p.kind == InstanceKind::goppa ? "goppa" : "alternant"}};
}

json report_json(const AttackReport& rep) {
  const auto& d = rep.diagnostics;
  json hist = json::array();
  for (auto [dim, cnt] : d.algebra.tangent_dim_histogram)
    hist.push_back(json{{"dim", dim}, {"count", cnt}});
  json j{{"outcome", outcome_name(rep.outcome)},
         {"algebra",
          {{"modal_tangent_dim", d.algebra.modal_tangent_dim},
           {"tangent_dim_histogram", hist},
           {"columns_used", d.algebra.columns_used},
           {"columns_skipped", d.algebra.columns_skipped},
           {"equations", d.algebra.equations},
           {"points_until_dim_m", d.algebra.points_until_dim_m},
           {"expected_points", d.algebra.expected_points}}},
         {"timings",
          {{"algebra_s", d.seconds_algebra},
           {"recover_s", d.seconds_recover},
           {"total_s", d.seconds_total}}},
         {"restarts", d.restarts}};
  if (!d.note.empty()) j["note"] = d.note;
  j["j_conjugate"] = rep.j_conjugate ? json(*rep.j_conjugate) : json(nullptr);
  return j;
}

void print_report_text(const AttackReport& rep) {
  const auto& d = rep.diagnostics;
  std::cout << "outcome: " << outcome_name(rep.outcome) << "\n";
  std::cout << "modal tangent dim: " << d.algebra.modal_tangent_dim << "  (histogram:";
  for (auto [dim, cnt] : d.algebra.tangent_dim_histogram)
    std::cout << " " << dim << "x" << cnt;
  std::cout << ")\n";
  std::cout << "columns used: " << d.algebra.columns_used << ", skipped "
            << d.algebra.columns_skipped << ", equations " << d.algebra.equations << "\n";
  std::cout << "points until algebra dim m: " << d.algebra.points_until_dim_m
            << " (heuristic estimate " << d.algebra.expected_points << ")\n";
  std::cout << "restarts: " << d.restarts << "\n";
  if (!d.note.empty()) std::cout << "note: " << d.note << "\n";
  std::cout << "timings: algebra " << d.seconds_algebra << " s, recover "
            << d.seconds_recover << " s, total " << d.seconds_total << " s\n";
}

int outcome_exit(AttackOutcome o) {
  switch (o) {
    case AttackOutcome::success: return kOk;
    case AttackOutcome::inapplicable: return kInapplicable;
    case AttackOutcome::failure: return kFailure;
  }
  return kFailure;
}

struct KeygenCfg {
  int64_t q = 0;
  int m = 0, r = 0, n = 0;
  uint64_t seed = 1;
  std::string kind = "alternant";
  std::string out = "key";
  bool json_out = false;
};

int cmd_keygen(const KeygenCfg& cfg) {
  FieldTower t = make_tower(cfg.q, cfg.m);
  InstanceKind kind = parse_kind(cfg.kind);
  AlternantInstance inst = kind == InstanceKind::goppa
                               ? keygen_goppa(t, cfg.r, cfg.n, cfg.seed)
                               : keygen_alternant(t, cfg.r, cfg.n, cfg.seed);
  std::string sk = cfg.out + ".sk", pk = cfg.out + ".pk";
  try {
    write_secret_key(sk, t, inst);
    write_public_key(pk, t, inst);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFileError;
  }
  if (cfg.json_out) {
    std::cout << json{{"command", "keygen"},
                      {"params", params_json(inst.params)},
                      {"secret_key", sk},
                      {"public_key", pk},
                      {"rank", inst.H_pub.rows}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "wrote " << sk << " and " << pk << " (parity rank "
              << inst.H_pub.rows << ")\n";
  }
  return kOk;
}

struct DistinguishCfg {
  int64_t q = 0;
  int m = 0, r = 0, n = 0;
  std::string kind = "alternant";
  bool json_out = false;
};

int cmd_distinguish(const DistinguishCfg& cfg) {
  InstanceKind kind = parse_kind(cfg.kind);
  if (cfg.m < 1 || cfg.n < 1) throw ParamError("m and n must be positive");
  RegimeReport rep = regime(cfg.q, cfg.m, cfg.r, cfg.n, kind);
  if (cfg.json_out) {
    std::cout << json{{"command", "distinguish"},
                      {"q", cfg.q},
                      {"m", cfg.m},
                      {"r", cfg.r},
                      {"n", cfg.n},
                      {"kind", cfg.kind},
                      {"bound", rep.bound},
                      {"threshold", rep.threshold},
                      {"e", rep.e},
                      {"distinguishable", rep.distinguishable},
                      {"weil_proper_expected", rep.weil_proper_expected}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "bound: " << rep.bound << "\n";
    std::cout << "threshold: " << rep.threshold << "\n";
    std::cout << "distinguishable: " << (rep.distinguishable ? "yes" : "no") << "\n";
    std::cout << "weil-proper expected: " << (rep.weil_proper_expected ? "yes" : "no")
              << "\n";
    if (kind == InstanceKind::goppa && cfg.r >= cfg.q - 1)
      std::cout << "note: outside the r < q-1 regime\n";
  }
  return rep.distinguishable ? kOk : kNegative;
}

struct AttackCfg {
  std::string pub;
  std::string out = "recovered.key";
  uint64_t seed = 1;
  int threads = 1;
  bool json_out = false;
};

int cmd_attack(const AttackCfg& cfg) {
  LoadedKey key;
  try {
    key = load_key(cfg.pub);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFileError;
  }
  if (!key.H_pub) {
    std::cerr << "error: " << cfg.pub << " has no Hpub section\n";
    return kFileError;
  }
  AttackReport rep =
      full_attack(*key.tower, *key.H_pub, key.params.r, cfg.seed, cfg.threads);
  if (rep.outcome == AttackOutcome::success) {
    try {
      write_recovered_key(cfg.out, *key.tower, key.params, *rep.recovered);
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kFileError;
    }
  }
  if (cfg.json_out) {
    json j = report_json(rep);
    j["command"] = "attack";
    j["params"] = params_json(key.params);
    if (rep.outcome == AttackOutcome::success) j["recovered_key"] = cfg.out;
    std::cout << j.dump(2) << "\n";
  } else {
    print_report_text(rep);
    if (rep.outcome == AttackOutcome::success)
      std::cout << "recovered key written to " << cfg.out << "\n";
  }
  return outcome_exit(rep.outcome);
}

struct VerifyCfg {
  std::string pub;
  std::string key;
  uint64_t seed = 1;
  bool json_out = false;
};

int cmd_verify(const VerifyCfg& cfg) {
  LoadedKey pub, claimed;
  try {
    pub = load_key(cfg.pub);
    claimed = load_key(cfg.key);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFileError;
  }
  if (!pub.H_pub) {
    std::cerr << "error: " << cfg.pub << " has no Hpub section\n";
    return kFileError;
  }
  if (!claimed.has_support()) {
    std::cerr << "error: " << cfg.key << " has no x/y sections\n";
    return kFileError;
  }
  if (claimed.tower->descriptor() != pub.tower->descriptor()) {
    std::cerr << "error: key files use different fields\n";
    return kFileError;
  }
  Rng rng(cfg.seed);
  bool ok = verify_key(*pub.tower, *pub.H_pub, *claimed.x, *claimed.y, pub.params.r, rng);
  if (cfg.json_out)
    std::cout << json{{"command", "verify"}, {"valid", ok}}.dump(2) << "\n";
  else
    std::cout << (ok ? "valid\n" : "invalid\n");
  return ok ? kOk : kNegative;
}

struct BenchCfg {
  int64_t q = 0;
  int m = 0, r = 0, n = 0;
  std::string kind = "alternant";
  uint64_t seed = 1;
  int runs = 5;
  int threads = 1;
  bool json_out = false;
};

int cmd_bench(const BenchCfg& cfg) {
  FieldTower t = make_tower(cfg.q, cfg.m);
  InstanceKind kind = parse_kind(cfg.kind);
  json results = json::array();
  int successes = 0, inapplicables = 0;
  double total = 0, worst = 0;
  for (int i = 0; i < cfg.runs; ++i) {
    uint64_t seed = cfg.seed + (uint64_t)i;
    AlternantInstance inst = kind == InstanceKind::goppa
                                 ? keygen_goppa(t, cfg.r, cfg.n, seed)
                                 : keygen_alternant(t, cfg.r, cfg.n, seed);
    AttackReport rep = full_attack(t, inst.H_pub, cfg.r, seed, cfg.threads, &inst);
    double sec = rep.diagnostics.seconds_total;
    total += sec;
    worst = std::max(worst, sec);
    if (rep.outcome == AttackOutcome::success) ++successes;
    if (rep.outcome == AttackOutcome::inapplicable) ++inapplicables;
    if (cfg.json_out) {
      json j = report_json(rep);
      j["seed"] = seed;
      results.push_back(j);
    } else {
      std::cout << "seed " << seed << ": " << outcome_name(rep.outcome) << " in " << sec
                << " s";
      if (rep.j_conjugate) std::cout << " (conjugate exponent " << *rep.j_conjugate << ")";
      std::cout << "\n";
    }
  }
  if (cfg.json_out) {
    std::cout << json{{"command", "bench"},
                      {"q", cfg.q},
                      {"m", cfg.m},
                      {"r", cfg.r},
                      {"n", cfg.n},
                      {"kind", cfg.kind},
                      {"runs", cfg.runs},
                      {"successes", successes},
                      {"inapplicable", inapplicables},
                      {"mean_s", cfg.runs ? total / cfg.runs : 0.0},
                      {"max_s", worst},
                      {"results", results}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << successes << "/" << cfg.runs << " successes, mean "
              << (cfg.runs ? total / cfg.runs : 0.0) << " s, max " << worst << " s\n";
  }
  if (successes == cfg.runs) return kOk;
  if (inapplicables == cfg.runs) return kInapplicable;
  return kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"alternant-code key recovery toolkit"};
  app.require_subcommand(1);

  KeygenCfg kg;
  auto* keygen = app.add_subcommand("keygen", "generate an instance (secret + public key)");
  keygen->add_option("-q", kg.q, "subfield size (prime power)")->required();
  keygen->add_option("-m", kg.m, "extension degree")->required();
  keygen->add_option("-r", kg.r, "code degree")->required();
  keygen->add_option("-n", kg.n, "code length")->required();
  keygen->add_option("--seed", kg.seed, "RNG seed");
  keygen->add_option("--kind", kg.kind, "alternant or goppa");
  keygen->add_option("-o,--out", kg.out, "output path prefix (.sk/.pk appended)");
  keygen->add_flag("--json", kg.json_out, "JSON output");

  DistinguishCfg dg;
  auto* dist = app.add_subcommand("distinguish", "regime analysis for parameters");
  dist->add_option("-q", dg.q, "subfield size (prime power)")->required();
  dist->add_option("-m", dg.m, "extension degree")->required();
  dist->add_option("-r", dg.r, "code degree")->required();
  dist->add_option("-n", dg.n, "code length")->required();
  dist->add_option("--kind", dg.kind, "alternant or goppa");
  dist->add_flag("--json", dg.json_out, "JSON output");

  AttackCfg at;
  auto* attack = app.add_subcommand("attack", "run the key recovery on a public key");
  attack->add_option("--public", at.pub, "public key file")->required();
  attack->add_option("-o,--out", at.out, "recovered key output path");
  attack->add_option("--seed", at.seed, "RNG seed");
  attack->add_option("--threads", at.threads, "worker threads (results identical)");
  attack->add_flag("--json", at.json_out, "JSON output");

  VerifyCfg vf;
  auto* verify = app.add_subcommand("verify", "check a claimed key against a public key");
  verify->add_option("--public", vf.pub, "public key file")->required();
  verify->add_option("--key", vf.key, "claimed key file (secret or recovered)")->required();
  verify->add_option("--seed", vf.seed, "RNG seed for the decode round trip");
  verify->add_flag("--json", vf.json_out, "JSON output");

  BenchCfg bn;
  auto* bench = app.add_subcommand("bench", "repeated keygen + attack timing runs");
  bench->add_option("-q", bn.q, "subfield size (prime power)")->required();
  bench->add_option("-m", bn.m, "extension degree")->required();
  bench->add_option("-r", bn.r, "code degree")->required();
  bench->add_option("-n", bn.n, "code length")->required();
  bench->add_option("--kind", bn.kind, "alternant or goppa");
  bench->add_option("--seed", bn.seed, "base RNG seed");
  bench->add_option("--runs", bn.runs, "number of runs");
  bench->add_option("--threads", bn.threads, "worker threads");
  bench->add_flag("--json", bn.json_out, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (keygen->parsed()) return cmd_keygen(kg);
    if (dist->parsed()) return cmd_distinguish(dg);
    if (attack->parsed()) return cmd_attack(at);
    if (verify->parsed()) return cmd_verify(vf);
    if (bench->parsed()) return cmd_bench(bn);
  } catch (const ParamError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kFileError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}
