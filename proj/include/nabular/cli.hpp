#pragma once

// Command-line surface binding all modules into a pipeline-friendly tool:
// read delimited data from a file or stdin, run a verb, write delimited /
// JSON / SVG / text output. Exit 0 on success, 1 on usage error, 2 on
// data error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nabular/augment.hpp"
#include "nabular/csv.hpp"
#include "nabular/impute.hpp"
#include "nabular/mechanism.hpp"
#include "nabular/plot.hpp"
#include "nabular/render.hpp"
#include "nabular/replace.hpp"
#include "nabular/serialize.hpp"
#include "nabular/shadow.hpp"
#include "nabular/summary.hpp"
#include "nabular/table.hpp"

namespace nabular::cli {

inline constexpr const char* kToolVersion = "0.1.0";

namespace detail {

using nabular::detail::parse_double;

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline std::string trim_copy(const std::string& s) {
  return std::string(nabular::detail::trim(s));
}

// A search/replace value: numeric when it parses as a number, else text.
inline Cell parse_value(const std::string& token) {
  double d;
  if (parse_double(token, d)) return Cell::number(d);
  return Cell::text(token);
}

inline std::vector<Cell> parse_values(const std::string& csv_list) {
  std::vector<Cell> out;
  for (const auto& tok : split(csv_list, ','))
    out.push_back(parse_value(trim_copy(tok)));
  return out;
}

inline Dtype parse_dtype(const std::string& s) {
  if (s == "numeric") return Dtype::Numeric;
  if (s == "integer") return Dtype::Integer;
  if (s == "text") return Dtype::Text;
  if (s == "boolean") return Dtype::Boolean;
  throw validation_error("unknown dtype: " + s);
}

// "col OP value" with OP in == != < <= > >=, or "col is_missing".
inline WhereClause parse_where(const std::string& text) {
  std::istringstream in(text);
  std::string col, op, value;
  in >> col >> op;
  std::getline(in, value);
  value = trim_copy(value);
  if (col.empty() || op.empty())
    throw validation_error("cannot parse where clause: " + text);
  using Op = WherePredicate::Op;
  if (op == "is_missing") return WhereClause::single(col, Op::IsMissing);
  Op parsed;
  if (op == "==") parsed = Op::Eq;
  else if (op == "!=") parsed = Op::Ne;
  else if (op == "<") parsed = Op::Lt;
  else if (op == "<=") parsed = Op::Le;
  else if (op == ">") parsed = Op::Gt;
  else if (op == ">=") parsed = Op::Ge;
  else throw validation_error("unknown comparator: " + op);
  if (value.empty())
    throw validation_error("where clause needs a constant: " + text);
  return WhereClause::single(col, parsed, parse_value(value));
}

// "response ~ p1 + p2"
inline LinearModelSpec parse_formula(const std::string& text) {
  const auto tilde = text.find('~');
  if (tilde == std::string::npos)
    throw validation_error("formula must look like 'y ~ x1 + x2': " + text);
  LinearModelSpec spec;
  spec.response = trim_copy(text.substr(0, tilde));
  for (const auto& p : split(text.substr(tilde + 1), '+')) {
    const auto name = trim_copy(p);
    if (!name.empty()) spec.predictors.push_back(name);
  }
  if (spec.response.empty() || spec.predictors.empty())
    throw validation_error("formula must name a response and predictors");
  return spec;
}

inline std::string fmt_pct(double pct, int digits) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(digits);
  out << round_half_away(pct, digits);
  return out.str();
}

}  // namespace detail

// ------------------------------------------------------------ csv emitters

inline std::string var_summary_csv(const std::vector<VarSummaryRow>& rows,
                                   const std::vector<std::string>& group_keys) {
  std::ostringstream out;
  NaTokenConfig cfg;
  for (const auto& k : group_keys) out << k << ',';
  out << "variable,n_miss,pct_miss\n";
  for (const auto& r : rows) {
    for (const auto& g : r.group) out << render_cell(g, cfg) << ',';
    out << r.variable << ',' << r.n_miss << ','
        << detail::fmt_pct(r.pct_miss, 1) << '\n';
  }
  return out.str();
}

inline std::string case_summary_csv(const std::vector<CaseSummaryRow>& rows) {
  std::ostringstream out;
  out << "case,n_miss,pct_miss\n";
  for (const auto& r : rows)
    out << r.case_index << ',' << r.n_miss << ','
        << detail::fmt_pct(r.pct_miss, 1) << '\n';
  return out.str();
}

inline std::string tabulation_csv(const std::vector<TabulationRow>& rows,
                                  const std::string& unit) {
  std::ostringstream out;
  out << "n_miss_in_" << unit << ",n_" << unit << "s,pct_" << unit << "s\n";
  for (const auto& r : rows)
    out << r.n_miss_in_unit << ',' << r.n_units << ','
        << detail::fmt_pct(r.pct_units, 1) << '\n';
  return out.str();
}

inline std::string run_csv(const std::vector<RunRow>& rows) {
  std::ostringstream out;
  out << "run_length,is_missing\n";
  for (const auto& r : rows)
    out << r.run_length << ',' << (r.is_missing ? "true" : "false") << '\n';
  return out.str();
}

inline std::string span_csv(const std::vector<SpanRow>& rows) {
  std::ostringstream out;
  out << "span_counter,n_miss,n_complete,span_size\n";
  for (const auto& r : rows)
    out << r.span_counter << ',' << r.n_miss << ',' << r.n_complete << ','
        << r.span_size << '\n';
  return out.str();
}

inline std::string scan_csv(const ScanReport& report) {
  std::ostringstream out;
  out << "variable,value,count\n";
  NaTokenConfig cfg;
  for (const auto& r : report) {
    nabular::detail::write_field(out, r.variable);
    out << ',';
    nabular::detail::write_field(out, r.value);
    out << ',' << r.count << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------- runner

// Everything the subcommands share.
struct CommonOpts {
  std::string input = "-";
  std::string output = "-";
  std::string format;  // subcommand default when empty
  std::vector<std::string> na_tokens;
  std::uint64_t seed = 0;
};

namespace detail {

inline void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("input", opts.input, "input CSV path, or - for stdin");
  cmd->add_option("-o,--output", opts.output, "output path, or - for stdout");
  cmd->add_option("-f,--format", opts.format, "csv | json | svg | text");
  cmd->add_option("--na-token", opts.na_tokens,
                  "tokens read as missing (first is written for missings)")
      ->allow_extra_args(false);
  cmd->add_option("--seed", opts.seed, "seed for randomized steps");
}

inline NaTokenConfig na_config(const CommonOpts& opts) {
  NaTokenConfig cfg;
  if (!opts.na_tokens.empty()) cfg.text_tokens = opts.na_tokens;
  return cfg;
}

inline Table load_table(const CommonOpts& opts, std::istream& in) {
  const NaTokenConfig cfg = na_config(opts);
  if (opts.input == "-") return read_delimited(in, cfg);
  std::ifstream f(opts.input);
  if (!f) throw error("cannot open input: " + opts.input);
  return read_delimited(f, cfg);
}

inline void emit(const CommonOpts& opts, std::ostream& out,
                 const std::string& payload) {
  if (opts.output == "-") {
    out << payload;
    return;
  }
  std::ofstream f(opts.output, std::ios::binary);
  if (!f) throw error("cannot open output: " + opts.output);
  f << payload;
}

inline std::string envelope(const std::string& subcommand,
                            const json& payload) {
  json doc{{"tool_version", kToolVersion},
           {"subcommand", subcommand},
           {"payload", payload}};
  return doc.dump(2) + "\n";
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::istream& in,
               std::ostream& out, std::ostream& err) {
  CLI::App app{"missing-data profiling toolkit"};
  app.require_subcommand(1);

  // --- scan
  CommonOpts scan_opts;
  std::string scan_values, scan_common;
  auto* scan = app.add_subcommand("scan", "count occurrences of NA codes");
  detail::add_common(scan, scan_opts);
  auto* scan_values_opt =
      scan->add_option("--values", scan_values, "comma-separated search values");
  scan->add_option("--common", scan_common,
                   "use the frozen common code list: numeric | text")
      ->check(CLI::IsMember({"numeric", "text"}));
  scan_values_opt->excludes("--common");

  // --- replace
  CommonOpts repl_opts;
  std::string repl_values;
  std::vector<std::string> repl_specs, repl_at;
  std::string repl_if;
  bool repl_all = false;
  auto* repl = app.add_subcommand("replace", "convert coded values to missing");
  detail::add_common(repl, repl_opts);
  repl->add_option("--values", repl_values,
                   "values converted to missing (with a scope flag)");
  repl->add_flag("--all", repl_all, "apply to every column");
  repl->add_option("--at", repl_at, "apply to the named columns")->allow_extra_args(false);
  repl->add_option("--if", repl_if, "apply to columns of this dtype")
      ->check(CLI::IsMember({"numeric", "integer", "text", "boolean"}));
  repl->add_option("--spec", repl_specs,
                   "per-column spec col=v1;v2 (repeatable)")
      ->allow_extra_args(false);

  // --- shadow
  CommonOpts shadow_opts;
  auto* shadow_cmd = app.add_subcommand("shadow", "emit nabular data");
  detail::add_common(shadow_cmd, shadow_opts);

  // --- recode
  CommonOpts recode_opts;
  std::string recode_var, recode_where, recode_suffix;
  auto* recode =
      app.add_subcommand("recode", "flag special missings in the shadow");
  detail::add_common(recode, recode_opts);
  recode->add_option("--var", recode_var, "shadowed variable")->required();
  recode->add_option("--where", recode_where, "condition: 'col OP value'")
      ->required();
  recode->add_option("--suffix", recode_suffix, "special-missing suffix")
      ->required();

  // --- summary
  CommonOpts sum_opts;
  std::string sum_kind, sum_var;
  std::vector<std::string> sum_group;
  std::size_t sum_span = 0;
  auto* summary = app.add_subcommand("summary", "numerical summaries");
  summary
      ->add_option("kind", sum_kind,
                   "vars | cases | var-table | case-table | run | span")
      ->required()
      ->check(CLI::IsMember(
          {"vars", "cases", "var-table", "case-table", "run", "span"}));
  detail::add_common(summary, sum_opts);
  summary->add_option("--group-by", sum_group, "grouping columns (vars only)")
      ->allow_extra_args(false);
  summary->add_option("--var", sum_var, "column for run/span");
  summary->add_option("--span-size", sum_span, "span width");

  // --- add
  CommonOpts add_opts;
  std::string add_kind;
  std::size_t add_k = 2;
  auto* add = app.add_subcommand("add", "append missingness columns");
  add->add_option("kind", add_kind, "n | prop | any | cluster | label")
      ->required()
      ->check(CLI::IsMember({"n", "prop", "any", "cluster", "label"}));
  detail::add_common(add, add_opts);
  add->add_option("--k", add_k, "cluster count");

  // --- impute
  CommonOpts imp_opts;
  std::string imp_kind, imp_formula, imp_if;
  std::vector<std::string> imp_at;
  bool imp_all = false, imp_jitter = false;
  double imp_shift = 0.1, imp_jitter_mag = 0.05;
  auto* impute = app.add_subcommand("impute", "fill missing values");
  impute->add_option("kind", imp_kind, "mean | median | below | lm")
      ->required()
      ->check(CLI::IsMember({"mean", "median", "below", "lm"}));
  detail::add_common(impute, imp_opts);
  impute->add_flag("--all", imp_all, "scope: every numeric-capable column");
  impute->add_option("--at", imp_at, "scope: named columns")->allow_extra_args(false);
  impute->add_option("--if", imp_if, "scope: columns of this dtype")
      ->check(CLI::IsMember({"numeric", "integer", "text", "boolean"}));
  impute->add_option("--formula", imp_formula, "lm: 'y ~ x1 + x2'");
  impute->add_option("--shift-fraction", imp_shift, "below: range fraction");
  impute->add_flag("--jitter", imp_jitter, "below: add seeded jitter");
  impute->add_option("--jitter-magnitude", imp_jitter_mag,
                     "below: jitter band as a fraction of the shift");

  // --- amputate
  CommonOpts amp_opts;
  std::string amp_kind, amp_target, amp_driver;
  double amp_psi = 0.1, amp_threshold = 0, amp_boost = 0;
  auto* amputate_cmd =
      app.add_subcommand("amputate", "introduce synthetic missingness");
  detail::add_common(amputate_cmd, amp_opts);
  amputate_cmd->add_option("--mechanism", amp_kind, "mcar | mar | mnar")
      ->required()
      ->check(CLI::IsMember({"mcar", "mar", "mnar"}));
  amputate_cmd->add_option("--psi", amp_psi, "base missingness probability")
      ->required();
  amputate_cmd->add_option("--target", amp_target, "column made missing")
      ->required();
  amputate_cmd->add_option("--driver", amp_driver, "mar: driving column");
  amputate_cmd->add_option("--threshold", amp_threshold, "step location");
  amputate_cmd->add_option("--boost", amp_boost, "probability increment");

  // --- plot
  CommonOpts plot_opts;
  std::string plot_kind, plot_x, plot_y, plot_var_opt, plot_cond, plot_color;
  std::size_t plot_bins = 10;
  bool plot_cluster = false, plot_sort_vars = false;
  auto* plot = app.add_subcommand("plot", "plot payloads and renderings");
  plot->add_option("kind", plot_kind,
                   "miss-var | miss-case | heatmap | upset | split-hist | "
                   "scatter | parcoords")
      ->required()
      ->check(CLI::IsMember({"miss-var", "miss-case", "heatmap", "upset",
                             "split-hist", "scatter", "parcoords"}));
  detail::add_common(plot, plot_opts);
  plot->add_flag("--cluster", plot_cluster, "heatmap: cluster rows");
  plot->add_flag("--sort-vars", plot_sort_vars,
                 "heatmap: order columns by missingness");
  plot->add_option("--x", plot_x, "scatter: x variable");
  plot->add_option("--y", plot_y, "scatter: y variable");
  plot->add_option("--bins", plot_bins, "split-hist: bin count");
  plot->add_option("--plot-var", plot_var_opt, "split-hist: plotted variable");
  plot->add_option("--condition-var", plot_cond,
                   "split-hist: conditioning variable");
  plot->add_option("--color-var", plot_color, "parcoords: shadow color variable");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (scan->parsed()) {
      std::vector<Cell> values;
      if (!scan_common.empty()) {
        if (scan_common == "numeric")
          for (double v : common_na_numbers()) values.push_back(Cell::number(v));
        else
          for (const auto& s : common_na_strings())
            values.push_back(Cell::text(s));
      } else if (!scan_values.empty()) {
        values = detail::parse_values(scan_values);
      } else {
        err << "usage error: scan needs --values or --common\n";
        return 1;
      }
      const Table t = detail::load_table(scan_opts, in);
      const auto report = miss_scan_count(t, values);
      if (scan_opts.format == "json")
        detail::emit(scan_opts, out, detail::envelope("scan", to_json(report)));
      else
        detail::emit(scan_opts, out, scan_csv(report));
    } else if (repl->parsed()) {
      const Table t = detail::load_table(repl_opts, in);
      Table result = t;
      if (!repl_specs.empty()) {
        ReplaceSpec spec;
        for (const auto& s : repl_specs) {
          const auto eq = s.find('=');
          if (eq == std::string::npos)
            throw validation_error("bad --spec, expected col=v1;v2: " + s);
          std::vector<Cell> vals;
          for (const auto& v : detail::split(s.substr(eq + 1), ';'))
            vals.push_back(detail::parse_value(detail::trim_copy(v)));
          spec.columns.emplace_back(s.substr(0, eq), vals);
        }
        result = replace_with_na(result, spec);
      }
      if (!repl_values.empty()) {
        Scope scope = Scope::all();
        if (!repl_at.empty())
          scope = Scope::at(repl_at);
        else if (!repl_if.empty())
          scope = Scope::if_dtype(detail::parse_dtype(repl_if));
        else if (!repl_all) {
          err << "usage error: --values needs --all, --at, or --if\n";
          return 1;
        }
        result = replace_with_na_scoped(result, scope,
                                        detail::parse_values(repl_values));
      }
      detail::emit(repl_opts, out,
                   write_delimited(result, detail::na_config(repl_opts)));
    } else if (shadow_cmd->parsed()) {
      const Table t = detail::load_table(shadow_opts, in);
      detail::emit(shadow_opts, out,
                   write_delimited(nabular_to_table(as_nabular(t)),
                                   detail::na_config(shadow_opts)));
    } else if (recode->parsed()) {
      const Table t = detail::load_table(recode_opts, in);
      NabularTable nab = looks_nabular(t) ? nabular_from_table(t) : as_nabular(t);
      nab = recode_shadow(nab, recode_var, detail::parse_where(recode_where),
                          recode_suffix);
      detail::emit(recode_opts, out,
                   write_delimited(nabular_to_table(nab),
                                   detail::na_config(recode_opts)));
    } else if (summary->parsed()) {
      const Table t = detail::load_table(sum_opts, in);
      const bool as_json = sum_opts.format == "json";
      std::string payload;
      json jpayload;
      if (sum_kind == "vars") {
        if (!sum_group.empty()) {
          const auto rows = miss_var_summary(group_by(t, sum_group));
          payload = var_summary_csv(rows, sum_group);
          jpayload = to_json(rows);
        } else {
          const auto rows = miss_var_summary(t);
          payload = var_summary_csv(rows, {});
          jpayload = to_json(rows);
        }
      } else if (sum_kind == "cases") {
        const auto rows = miss_case_summary(t);
        payload = case_summary_csv(rows);
        jpayload = to_json(rows);
      } else if (sum_kind == "var-table") {
        const auto rows = miss_var_table(t);
        payload = tabulation_csv(rows, "var");
        jpayload = to_json(rows, "var");
      } else if (sum_kind == "case-table") {
        const auto rows = miss_case_table(t);
        payload = tabulation_csv(rows, "case");
        jpayload = to_json(rows, "case");
      } else if (sum_kind == "run") {
        if (sum_var.empty()) {
          err << "usage error: summary run needs --var\n";
          return 1;
        }
        const auto rows = miss_var_run(t, sum_var);
        payload = run_csv(rows);
        jpayload = to_json(rows);
      } else {  // span
        if (sum_var.empty() || sum_span == 0) {
          err << "usage error: summary span needs --var and --span-size\n";
          return 1;
        }
        const auto rows = miss_var_span(t, sum_var, sum_span);
        payload = span_csv(rows);
        jpayload = to_json(rows);
      }
      if (as_json)
        detail::emit(sum_opts, out,
                     detail::envelope("summary " + sum_kind, jpayload));
      else
        detail::emit(sum_opts, out, payload);
    } else if (add->parsed()) {
      const Table t = detail::load_table(add_opts, in);
      const NaTokenConfig cfg = detail::na_config(add_opts);
      if (add_kind == "label") {
        NabularTable nab =
            looks_nabular(t) ? nabular_from_table(t) : as_nabular(t);
        detail::emit(add_opts, out,
                     write_delimited(nabular_to_table(add_label_shadow(nab)),
                                     cfg));
      } else if (add_kind == "cluster") {
        detail::emit(add_opts, out,
                     write_delimited(add_miss_cluster(t, ClusterParams{add_k},
                                                      add_opts.seed),
                                     cfg));
      } else {
        const MissCountMode mode = add_kind == "n"      ? MissCountMode::N
                                   : add_kind == "prop" ? MissCountMode::Proportion
                                                        : MissCountMode::Any;
        detail::emit(add_opts, out,
                     write_delimited(add_miss_counts(t, mode), cfg));
      }
    } else if (impute->parsed()) {
      const Table t = detail::load_table(imp_opts, in);
      const NaTokenConfig cfg = detail::na_config(imp_opts);
      const bool is_nab = looks_nabular(t);
      NabularTable nab;
      Table data = t;
      if (is_nab) {
        nab = nabular_from_table(t);
        data = nab.data;
      }
      Table result = data;
      if (imp_kind == "lm") {
        if (imp_formula.empty()) {
          err << "usage error: impute lm needs --formula\n";
          return 1;
        }
        result = impute_lm(data, detail::parse_formula(imp_formula)).table;
      } else {
        Scope scope = Scope::all();
        if (!imp_at.empty())
          scope = Scope::at(imp_at);
        else if (!imp_if.empty())
          scope = Scope::if_dtype(detail::parse_dtype(imp_if));
        else if (!imp_all) {
          err << "usage error: impute " << imp_kind
              << " needs --all, --at, or --if\n";
          return 1;
        }
        if (imp_kind == "below") {
          JitterParams jitter{imp_jitter, imp_jitter_mag, imp_opts.seed};
          result = impute_below(data, scope, imp_shift, jitter);
        } else {
          result = impute_location(data, scope,
                                   imp_kind == "mean"
                                       ? LocationStatistic::Mean
                                       : LocationStatistic::Median);
        }
      }
      if (is_nab) {
        nab.data = result;
        detail::emit(imp_opts, out,
                     write_delimited(nabular_to_table(nab), cfg));
      } else {
        detail::emit(imp_opts, out, write_delimited(result, cfg));
      }
    } else if (amputate_cmd->parsed()) {
      const Table t = detail::load_table(amp_opts, in);
      MechanismSpec spec;
      spec.kind = amp_kind == "mcar"  ? MechanismSpec::Kind::MCAR
                  : amp_kind == "mar" ? MechanismSpec::Kind::MAR
                                      : MechanismSpec::Kind::MNAR;
      spec.psi = amp_psi;
      spec.target = amp_target;
      spec.driver = amp_driver;
      spec.threshold = amp_threshold;
      spec.boost = amp_boost;
      detail::emit(amp_opts, out,
                   write_delimited(amputate(t, spec, amp_opts.seed),
                                   detail::na_config(amp_opts)));
    } else if (plot->parsed()) {
      const Table t = detail::load_table(plot_opts, in);
      const std::string fmt =
          plot_opts.format.empty() ? "json" : plot_opts.format;
      auto emit_payload = [&](const auto& payload) {
        if (fmt == "svg")
          detail::emit(plot_opts, out, render(payload));
        else
          detail::emit(plot_opts, out,
                       detail::envelope("plot " + plot_kind, to_json(payload)));
      };
      if (plot_kind == "miss-var" || plot_kind == "miss-case") {
        const auto data = miss_overview_bars(
            t, plot_kind == "miss-var" ? MissUnit::Var : MissUnit::Case);
        if (fmt == "text")
          detail::emit(plot_opts, out, render_text(data));
        else
          emit_payload(data);
      } else if (plot_kind == "heatmap") {
        const auto data = vis_miss_data(t, plot_cluster, plot_sort_vars);
        if (fmt == "text")
          detail::emit(plot_opts, out, render_text(data));
        else
          emit_payload(data);
      } else if (plot_kind == "upset") {
        emit_payload(upset_data(as_shadow(t)));
      } else {
        NabularTable nab =
            looks_nabular(t) ? nabular_from_table(t) : as_nabular(t);
        if (plot_kind == "split-hist") {
          if (plot_var_opt.empty() || plot_cond.empty()) {
            err << "usage error: split-hist needs --plot-var and "
                   "--condition-var\n";
            return 1;
          }
          emit_payload(
              split_histogram_data(nab, plot_var_opt, plot_cond, plot_bins));
        } else if (plot_kind == "scatter") {
          if (plot_x.empty() || plot_y.empty()) {
            err << "usage error: scatter needs --x and --y\n";
            return 1;
          }
          emit_payload(scatter_miss_data(nab, plot_x, plot_y, 0.1,
                                         JitterParams{false, 0.05,
                                                      plot_opts.seed}));
        } else {  // parcoords
          if (plot_color.empty()) {
            err << "usage error: parcoords needs --color-var\n";
            return 1;
          }
          emit_payload(parallel_coords_data(nab, plot_color));
        }
      }
    }
  } catch (const error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace nabular::cli
