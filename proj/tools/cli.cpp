#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "parad/classical.hpp"
#include "parad/consistency.hpp"
#include "parad/deduction.hpp"
#include "parad/error.hpp"
#include "parad/metatheory.hpp"
#include "parad/paradeduction.hpp"
#include "parad/presets.hpp"
#include "parad/valuation.hpp"

namespace parad::cli {

namespace {

struct Options {
  std::string preset;
  std::string system;
  std::string oracle;
  std::size_t budget = Budget{}.max_nodes;
  std::size_t subset_cap = kDefaultSubsetCap;
  std::string format = "text";
  std::string premises;
  std::string premises_file;
  std::string goal;
  std::string valuations;
  std::string witness;
  std::string witness_out;
  std::string relation;
  std::string universe;
  std::string output;
  std::size_t max_premises = 4;
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
};

class Report {
 public:
  Report(std::ostream& out, bool records) : out_(out), records_(records) {}

  void field(const std::string& key, const std::string& value) {
    out_ << key << (records_ ? "=" : ": ") << value << "\n";
  }

  // Multi-line payload: verbatim lines in text mode, one key=line per line in
  // records mode.
  void block(const std::string& key, const std::string& body) {
    if (!records_) {
      out_ << key << ":\n" << body;
      if (!body.empty() && body.back() != '\n') out_ << "\n";
      return;
    }
    std::istringstream in(body);
    std::string line;
    while (std::getline(in, line)) out_ << key << "=" << line << "\n";
  }

 private:
  std::ostream& out_;
  bool records_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Session {
 public:
  explicit Session(const Options& opt) : opt_(opt) {
    if (!opt.preset.empty() && !opt.system.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "use either --preset or --system, not both");
    }
    if (!opt.system.empty()) {
      sys_ = attach_known_delegate(load_system_file(opt.system));
      label_ = opt.system;
    } else {
      preset_ = load_preset(opt.preset.empty() ? "classical-pl" : opt.preset);
      sys_ = preset_->system;
      label_ = preset_->name;
    }
    if (!opt.valuations.empty()) {
      vs_ = std::make_shared<const ValuationStructure>(
          load_valuation_file(opt.valuations, sys_->signature()));
      vs_label_ = "declared in " + opt.valuations;
    } else if (preset_ && preset_->structure) {
      vs_ = preset_->structure;
      vs_label_ = preset_->name;
    } else if (sys_->delegate()) {
      vs_ = std::make_shared<const ValuationStructure>(
          ValuationStructure::classical(sys_->signature()));
      vs_label_ = label_;
    }
  }

  const FormalSystem& sys() const { return *sys_; }
  const Signature& sig() const { return sys_->signature(); }
  const std::string& label() const { return label_; }

  const ValuationStructure& structure() const {
    if (!vs_) {
      throw Error(ErrorCode::kInvalidArgument,
                  "this command needs a valuation structure (--valuations)");
    }
    return *vs_;
  }

  const ConsistencyOracle& oracle() {
    if (oracle_) return *oracle_;
    const std::string& kind = opt_.oracle;
    std::shared_ptr<const ConsistencyOracle> o;
    if (kind.empty() && preset_) {
      o = preset_->oracle;
    } else if (kind == "enumerative" || (kind.empty() && sys_->is_finite())) {
      o = std::make_shared<EnumerativeOracle>(*sys_);
    } else if (kind == "semantic" || (kind.empty() && vs_)) {
      o = std::make_shared<SemanticOracle>(vs_ ? vs_ : nullptr, vs_label_ + " for " + label_);
    } else if (kind == "bounded" || kind.empty()) {
      o = std::make_shared<BoundedSyntacticOracle>(*sys_, budget());
    } else {
      throw Error(ErrorCode::kInvalidArgument, "unknown oracle '" + kind + "'");
    }
    oracle_ = memoize(std::move(o));
    require_empty_consistent(*oracle_);
    return *oracle_;
  }

  Budget budget() const { return Budget{opt_.budget}; }

  FormulaSet premises() const {
    FormulaSet a = parse_formula_list(opt_.premises, sig());
    if (!opt_.premises_file.empty()) {
      std::istringstream in(read_file(opt_.premises_file));
      std::string line;
      while (std::getline(in, line)) {
        line = line.substr(0, line.find('#'));
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        a.insert(parse_formula(line, sig()));
      }
    }
    return a;
  }

  Formula goal() const {
    if (opt_.goal.empty()) throw Error(ErrorCode::kInvalidArgument, "--goal is required");
    return parse_formula(opt_.goal, sig());
  }

  FormulaSet universe() const {
    if (!opt_.universe.empty()) return parse_formula_list(opt_.universe, sig());
    if (sys_->is_finite()) return sys_->universe();
    throw Error(ErrorCode::kInvalidArgument,
                "a schematic system needs an explicit --universe for this command");
  }

 private:
  const Options& opt_;
  std::optional<Preset> preset_;
  std::optional<FormalSystem> sys_;
  std::string label_;
  std::shared_ptr<const ValuationStructure> vs_;
  std::string vs_label_;
  std::shared_ptr<const ConsistencyOracle> oracle_;
};

int status_code(Status s) {
  switch (s) {
    case Status::kYes: return kYes;
    case Status::kNo: return kNo;
    case Status::kUnknown: return kUnknown;
  }
  return kUsage;
}

std::string yes_no(Status s) { return to_string(s); }
std::string truth(bool b) { return b ? "true" : "false"; }

void write_witness(const Options& opt, Report& r, const std::string& text) {
  r.block("witness", text);
  if (!opt.witness_out.empty()) {
    std::ofstream f(opt.witness_out);
    if (!f) throw Error(ErrorCode::kInvalidArgument, "cannot write '" + opt.witness_out + "'");
    f << text;
  }
}

void write_sets(Report& r, const std::string& key, const std::vector<FormulaSet>& sets,
                const Signature& sig) {
  std::ostringstream body;
  for (const auto& s : sets) body << s.size() << ": " << render_set(s, sig) << "\n";
  r.field("count", std::to_string(sets.size()));
  r.block(key, body.str());
}

void write_violations(Report& r, const std::vector<Violation>& vs) {
  std::ostringstream body;
  for (const auto& v : vs) {
    body << "step " << v.step + 1 << ": " << to_string(v.kind) << ": " << v.detail << "\n";
  }
  r.field("valid", truth(vs.empty()));
  if (!vs.empty()) r.block("violations", body.str());
}

using Clock = std::chrono::steady_clock;

int dispatch(const std::string& cmd, const Options& opt, std::ostream& out) {
  Report r(out, opt.format == "records");
  const auto start = Clock::now();
  auto finish = [&](int code) {
    const auto ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    std::ostringstream t;
    t.precision(3);
    t << std::fixed << ms;
    r.field("time_ms", t.str());
    return code;
  };

  if (cmd == "export-system") {
    if (!opt.preset.empty()) {
      out << preset_system_text(opt.preset);
    } else {
      Session s(opt);
      out << emit_system(s.sys());
    }
    return kYes;
  }

  Session s(opt);
  r.field("system", s.label());

  if (cmd == "deduce") {
    const FormulaSet a = s.premises();
    const Formula g = s.goal();
    auto v = deducible(s.sys(), a, g, s.budget(), true);
    r.field("verdict", yes_no(v.status));
    r.field("provenance", v.provenance);
    if (v.witness) {
      r.field("witness_steps", std::to_string(v.witness->steps.size()));
      r.field("witness_verified", truth(verify_deduction(s.sys(), a, *v.witness).empty()));
      write_witness(opt, r, serialize_deduction(*v.witness, s.sig()));
    }
    return finish(status_code(v.status));
  }
  if (cmd == "paradeduce") {
    const FormulaSet a = s.premises();
    const Formula g = s.goal();
    auto& o = s.oracle();
    auto v = paradeducible(s.sys(), o, a, g, s.budget(), opt.subset_cap, true);
    r.field("verdict", yes_no(v.status));
    r.field("oracle", o.provenance());
    r.field("provenance", v.provenance);
    r.field("subsets_scanned", std::to_string(v.subsets_scanned));
    r.field("unknown_subsets", std::to_string(v.unknown_subsets));
    if (v.witness) {
      r.field("support", render_set(v.witness->steps.back().support, s.sig()));
      r.field("witness_steps", std::to_string(v.witness->steps.size()));
      r.field("witness_verified",
              truth(verify_paradeduction(s.sys(), o, a, *v.witness).empty()));
      write_witness(opt, r, serialize_paradeduction(*v.witness, s.sig()));
    }
    return finish(status_code(v.status));
  }
  if (cmd == "consistent") {
    auto& o = s.oracle();
    const Verdict v = o.check(s.premises());
    r.field("verdict", to_string(v));
    r.field("oracle", o.provenance());
    return finish(v == Verdict::kConsistent ? kYes : v == Verdict::kInconsistent ? kNo : kUnknown);
  }
  if (cmd == "subsets") {
    auto& o = s.oracle();
    std::size_t unknown = 0;
    auto sets = consistent_subsets(o, s.premises(), opt.subset_cap, &unknown);
    r.field("oracle", o.provenance());
    write_sets(r, "subsets", sets, s.sig());
    r.field("unknown_subsets", std::to_string(unknown));
    return finish(kYes);
  }
  if (cmd == "mcs") {
    auto& o = s.oracle();
    auto sets = maximal_consistent_subsets(o, s.premises(), opt.subset_cap);
    r.field("oracle", o.provenance());
    write_sets(r, "maximal", sets, s.sig());
    return finish(kYes);
  }
  if (cmd == "entails") {
    const bool v = s.structure().entails(s.premises(), s.goal());
    r.field("verdict", truth(v));
    r.field("structure", s.structure().describe());
    return finish(v ? kYes : kNo);
  }
  if (cmd == "para-entails") {
    const bool v = para_entails(s.structure(), s.premises(), s.goal(), opt.subset_cap);
    r.field("verdict", truth(v));
    r.field("structure", s.structure().describe());
    return finish(v ? kYes : kNo);
  }
  if (cmd == "weak" || cmd == "strong") {
    auto& o = s.oracle();
    std::string rel = opt.relation;
    if (rel.empty()) rel = s.sys().is_finite() ? "syntactic" : "semantic";
    Entailment e;
    if (rel == "syntactic") {
      e = syntactic_entailment(s.sys(), s.budget());
    } else if (rel == "semantic") {
      e = semantic_entailment(s.structure());
    } else {
      throw Error(ErrorCode::kInvalidArgument, "--relation must be syntactic or semantic");
    }
    const FormulaSet a = s.premises();
    const Formula g = s.goal();
    const bool v = cmd == "weak" ? weak_consequence(o, e, a, g, opt.subset_cap)
                                 : strong_consequence(o, e, a, g, opt.subset_cap);
    r.field("verdict", truth(v));
    r.field("relation", rel);
    r.field("oracle", o.provenance());
    return finish(v ? kYes : kNo);
  }
  if (cmd == "cn") {
    const FormulaSet c = closure(s.sys(), s.premises(), s.universe());
    r.field("count", std::to_string(c.size()));
    r.field("closure", render_set(c, s.sig()));
    return finish(kYes);
  }
  if (cmd == "cn-para") {
    auto& o = s.oracle();
    const FormulaSet c = cn_para(s.sys(), o, s.premises(), s.universe(), opt.subset_cap);
    r.field("count", std::to_string(c.size()));
    r.field("closure", render_set(c, s.sig()));
    r.field("oracle", o.provenance());
    return finish(kYes);
  }
  if (cmd == "verify-deduction") {
    if (opt.witness.empty()) throw Error(ErrorCode::kInvalidArgument, "--witness is required");
    const FormulaSet a = s.premises();
    const Deduction d = parse_deduction(read_file(opt.witness), s.sys(), a);
    auto vs = verify_deduction(s.sys(), a, d);
    write_violations(r, vs);
    r.field("conclusion", render_formula(d.conclusion(), s.sig()));
    return finish(vs.empty() ? kYes : kNo);
  }
  if (cmd == "verify-paradeduction") {
    if (opt.witness.empty()) throw Error(ErrorCode::kInvalidArgument, "--witness is required");
    const FormulaSet a = s.premises();
    auto& o = s.oracle();
    const Paradeduction p = parse_paradeduction(read_file(opt.witness), s.sys(), a);
    auto vs = verify_paradeduction(s.sys(), o, a, p);
    write_violations(r, vs);
    r.field("conclusion", render_formula(p.conclusion(), s.sig()));
    r.field("oracle", o.provenance());
    return finish(vs.empty() ? kYes : kNo);
  }
  if (cmd == "build-adequate") {
    const FormulaSet u = s.universe();
    const ValuationStructure vs = build_adequate_structure(s.sys(), u);
    const std::string text = emit_valuation_structure(vs, s.sig());
    r.field("valuations", std::to_string(vs.rows().size()));
    if (opt.output.empty()) {
      r.block("structure", text);
    } else {
      std::ofstream f(opt.output);
      if (!f) throw Error(ErrorCode::kInvalidArgument, "cannot write '" + opt.output + "'");
      f << text;
      r.field("written", opt.output);
    }
    return finish(kYes);
  }
  if (cmd == "check-adequacy") {
    const FormulaSet u = s.universe();
    const auto rep = check_adequacy(s.sys(), s.structure(), u, opt.max_premises);
    r.field("sound", truth(rep.sound));
    r.field("complete", truth(rep.complete));
    r.field("pairs_checked", std::to_string(rep.pairs_checked));
    std::ostringstream body;
    for (const auto& c : rep.unsound) {
      body << "unsound: {" << render_set(c.premises, s.sig()) << "} derives "
           << render_formula(c.goal, s.sig()) << " without entailing it\n";
    }
    for (const auto& c : rep.incomplete) {
      body << "incomplete: {" << render_set(c.premises, s.sig()) << "} entails "
           << render_formula(c.goal, s.sig()) << " without deriving it\n";
    }
    if (!body.str().empty()) r.block("counterexamples", body.str());
    return finish(rep.sound && rep.complete ? kYes : kNo);
  }
  if (cmd == "metatheory") {
    auto& o = s.oracle();
    MetatheoryOptions mo{opt.max_premises, opt.samples, opt.seed};
    bool all = true;
    for (const auto& c : run_metatheory(s.sys(), o, mo)) {
      all = all && c.passed;
      std::string line = std::string(c.passed ? "pass" : "FAIL") + " (" +
                         std::to_string(c.cases) + " cases)";
      if (!c.passed) line += " " + c.detail;
      r.field(c.claim, line);
    }
    r.field("oracle", o.provenance());
    return finish(all ? kYes : kNo);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown command '" + cmd + "'");
}

void add_common(CLI::App* sc, Options& o) {
  sc->add_option("--preset", o.preset, "Shipped system: classical-pl or toy");
  sc->add_option("--system", o.system, "System-definition file");
  sc->add_option("--oracle", o.oracle, "Consistency oracle: enumerative, semantic or bounded");
  sc->add_option("--budget", o.budget, "Node budget for bounded searches")
      ->check(CLI::PositiveNumber);
  sc->add_option("--subset-cap", o.subset_cap, "Largest premise set for subset scans");
  sc->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"text", "records"}));
  sc->add_option("--premises", o.premises, "Comma-separated premise formulas");
  sc->add_option("--premises-file", o.premises_file, "Premise file, one formula per line");
  sc->add_option("--goal", o.goal, "Target formula");
  sc->add_option("--valuations", o.valuations, "Explicit valuation-structure file");
  sc->add_option("--universe", o.universe, "Comma-separated formula universe");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Paraconsistent deduction over formal systems", "parad"};
  app.require_subcommand(1);
  Options opt;

  const std::vector<std::pair<const char*, const char*>> commands = {
      {"deduce", "Decide A |- a and print a deduction"},
      {"paradeduce", "Decide A |-P a and print a paradeduction"},
      {"consistent", "Consistency verdict for the premise set"},
      {"subsets", "Consistent subsets of the premises"},
      {"mcs", "Maximal consistent subsets of the premises"},
      {"entails", "Semantic consequence A |= a"},
      {"para-entails", "Semantic paraconsequence A |=P a"},
      {"weak", "Goal follows from some maximal consistent subset"},
      {"strong", "Goal follows from every maximal consistent subset"},
      {"cn", "Closure of the premises within the universe"},
      {"cn-para", "Paraconsistent closure within the universe"},
      {"verify-deduction", "Check a serialized deduction"},
      {"verify-paradeduction", "Check a serialized paradeduction"},
      {"build-adequate", "Valuation structure from the consistent theories"},
      {"check-adequacy", "Soundness and completeness of a structure"},
      {"metatheory", "Check the consequence-relation claims on a finite system"},
      {"export-system", "Print a system definition"},
  };
  for (const auto& [name, desc] : commands) {
    CLI::App* sc = app.add_subcommand(name, desc);
    add_common(sc, opt);
    const std::string n = name;
    if (n == "deduce" || n == "paradeduce") {
      sc->add_option("--witness-out", opt.witness_out, "Also write the witness to this file");
    }
    if (n == "verify-deduction" || n == "verify-paradeduction") {
      sc->add_option("--witness", opt.witness, "Witness file")->required();
    }
    if (n == "weak" || n == "strong") {
      sc->add_option("--relation", opt.relation, "Entailment: syntactic or semantic");
    }
    if (n == "build-adequate") sc->add_option("--output", opt.output, "Write the structure here");
    if (n == "check-adequacy" || n == "metatheory") {
      sc->add_option("--max-premises", opt.max_premises, "Largest premise set to enumerate");
    }
    if (n == "metatheory") {
      sc->add_option("--samples", opt.samples, "Random paradeductions to generate");
      sc->add_option("--seed", opt.seed, "Random seed");
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kYes : kUsage;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    return dispatch(cmd, opt, out);
  } catch (const Error& e) {
    err << "parad: " << to_string(e.code()) << ": " << e.what() << "\n";
    return e.code() == ErrorCode::kUndecided ? kUnknown : kUsage;
  } catch (const std::exception& e) {
    err << "parad: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace parad::cli
