#include <charconv>
#include <chrono>
#include <cstdio>
#include <deque>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "randiso/generators.hpp"
#include "randiso/rokhlin_engine.hpp"
#include "randiso/text_format.hpp"
#include "randiso/verification.hpp"

using namespace randiso;

namespace
{

// config -----------------------------------------------------------------------

class Config
{
public:
  /// `key = value` lines; `#` starts a comment. Errors carry the line number.
  static Config parse(std::istream &in, std::string const &origin)
  {
    Config cfg;
    std::string line;
    for (std::size_t no = 1; std::getline(in, line); ++no) {
      auto hash = line.find('#');
      std::string body = trim(std::string_view(line).substr(0, hash));
      if (body.empty())
        continue;
      auto eq = body.find('=');
      auto where = origin + ":" + std::to_string(no) + ": ";
      if (eq == std::string::npos)
        throw Error(ErrorKind::ParseError, where + "expected key = value");
      std::string key = trim(std::string_view(body).substr(0, eq));
      std::string value = trim(std::string_view(body).substr(eq + 1));
      if (key.empty())
        throw Error(ErrorKind::ParseError, where + "empty key");
      if (cfg._values.count(key))
        throw Error(ErrorKind::ParseError, where + "duplicate key '" + key + "'");
      cfg._values[key] = value;
      cfg._lines[key] = no;
    }
    cfg._origin = origin;
    return cfg;
  }

  void set(std::string const &key, std::string const &value) { _values[key] = value; }

  bool has(std::string const &key) const { return _values.count(key) != 0; }

  std::string const &raw(std::string const &key) const { return _values.at(key); }

  /// Runs `parse` on the value, prefixing errors with the line of the key.
  template <class F>
  auto get(std::string const &key, F parse) const -> decltype(parse(std::string()))
  {
    try {
      return parse(_values.at(key));
    } catch (Error const &e) {
      throw Error(ErrorKind::ParseError, locate(key) + "'" + key + "': " + e.what());
    }
  }

  std::string text(std::string const &key, std::string const &fallback) const
  {
    return has(key) ? raw(key) : fallback;
  }

  Rational rational(std::string const &key, Rational const &fallback) const
  {
    return has(key) ? get(key, [](std::string const &v) { return parse_rational(v); }) : fallback;
  }

  std::uint64_t integer(std::string const &key, std::uint64_t fallback) const
  {
    if (!has(key))
      return fallback;
    return get(key, [](std::string const &v) {
      std::uint64_t out = 0;
      auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
      if (ec != std::errc() || ptr != v.data() + v.size() || v.empty())
        throw Error(ErrorKind::ParseError, "not a non-negative integer");
      return out;
    });
  }

  bool flag(std::string const &key, bool fallback) const
  {
    if (!has(key))
      return fallback;
    return get(key, [](std::string const &v) {
      if (v == "true" || v == "on" || v == "1")
        return true;
      if (v == "false" || v == "off" || v == "0")
        return false;
      throw Error(ErrorKind::ParseError, "expected true or false");
    });
  }

  /// Keys outside `allowed` are reported with their line.
  void restrict_to(std::set<std::string> const &allowed) const
  {
    for (auto const &[key, value] : _values)
      if (!allowed.count(key))
        throw Error(ErrorKind::ParseError, locate(key) + "unknown key '" + key + "'");
  }

  /// Canonical text of the settings, for the inputs digest.
  std::string canonical() const
  {
    std::string out;
    for (auto const &[key, value] : _values)
      out += key + "=" + value + "\n";
    return out;
  }

private:
  std::string locate(std::string const &key) const
  {
    auto it = _lines.find(key);
    return it == _lines.end() ? std::string("option: ") : _origin + ":" + std::to_string(it->second) + ": ";
  }

  std::map<std::string, std::string> _values;
  std::map<std::string, std::size_t> _lines;
  std::string _origin = "config";
};

// report -----------------------------------------------------------------------

struct Table
{
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct Report
{
  std::deque<Table> tables; // stable references while tables are added
  bool ok = true;

  Table &table(std::string name, std::vector<std::string> columns)
  {
    tables.push_back({std::move(name), std::move(columns), {}});
    return tables.back();
  }
};

std::string csv_field(std::string const &s)
{
  if (s.find_first_of(",\"\n") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char c : s)
    out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

void write_csv(std::ostream &os, Report const &rep)
{
  bool first = true;
  for (auto const &t : rep.tables) {
    if (!first)
      os << "\n";
    first = false;
    os << "# " << t.name << "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i)
      os << (i ? "," : "") << t.columns[i];
    os << "\n";
    for (auto const &row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i)
        os << (i ? "," : "") << csv_field(row[i]);
      os << "\n";
    }
  }
}

void write_jsonl(std::ostream &os, Report const &rep)
{
  for (auto const &t : rep.tables)
    for (auto const &row : t.rows) {
      nlohmann::ordered_json j;
      j["table"] = t.name;
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (t.columns[i] == "ok" || t.columns[i] == "passed")
          j[t.columns[i]] = row[i] == "true";
        else
          j[t.columns[i]] = row[i];
      }
      os << j.dump() << "\n";
    }
}

std::string yes(bool b)
{
  return b ? "true" : "false";
}

std::string digest(std::string const &text)
{
  // FNV-1a, 64 bit
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

/// One measured quantity: experiment, quantity, value, ok.
struct Measures
{
  Table &table;
  std::string experiment;
  Report &report;

  void add(std::string const &quantity, std::string const &value, bool ok = true)
  {
    table.rows.push_back({experiment, quantity, value, yes(ok)});
    report.ok = report.ok && ok;
  }
  void add(std::string const &quantity, Rational const &value, bool ok = true)
  {
    add(quantity, to_string(value), ok);
  }
};

Measures measures(Report &rep, std::string const &experiment)
{
  return {rep.table("measures", {"experiment", "quantity", "value", "ok"}), experiment, rep};
}

// shared input helpers ---------------------------------------------------------------

struct Context
{
  Config const &cfg;
  std::optional<std::uint64_t> seed;
  std::optional<Rng> rng_store;

  Rng &rng()
  {
    if (!seed)
      throw Error(ErrorKind::InvalidArgument, "this run samples random inputs; give --seed or seed = ...");
    if (!rng_store)
      rng_store.emplace(*seed);
    return *rng_store;
  }
};

std::set<std::string> with_common(std::set<std::string> keys)
{
  keys.insert({"seed", "timing"});
  return keys;
}

unsigned level_key(Config const &cfg, std::string const &key, unsigned fallback, unsigned max = 16)
{
  auto v = cfg.integer(key, fallback);
  if (v > max)
    throw Error(ErrorKind::ParseError, "'" + key + "' must be at most " + std::to_string(max));
  return static_cast<unsigned>(v);
}

std::size_t spare_for(std::size_t cells, std::size_t n, Rational const &budget)
{
  // leftover intervals allowed by the tower budget, less the final remainder
  Rational q = budget * Rational(static_cast<unsigned long>(cells));
  if (q < 0)
    return 0;
  mpz_class allowed = q.get_num() / q.get_den();
  std::size_t a = allowed.get_ui();
  return a > n - 1 ? a - (n - 1) : 0;
}

// metrics ----------------------------------------------------------------------------

void cmd_metrics(Context &ctx, Report &rep)
{
  auto const &cfg = ctx.cfg;
  cfg.restrict_to(with_common({"a", "b", "level", "window", "budget", "samples"}));
  SymTildeGroup tg{SymmetricGroup{}};
  auto parse_el = [](std::string const &v) {
    auto [f, t] = parse_tilde(v);
    return SymTilde{f, t};
  };
  SymTilde a, b;
  if (cfg.has("a") != cfg.has("b"))
    throw Error(ErrorKind::ParseError, "give both a and b or neither");
  if (cfg.has("a")) {
    a = cfg.get("a", parse_el);
    b = cfg.get("b", parse_el);
  } else {
    unsigned level = level_key(cfg, "level", 3, 10);
    std::size_t window = cfg.integer("window", 4);
    a = {gen::perm_step(ctx.rng(), level, window, true), gen::random_mpt(ctx.rng(), level)};
    b = {gen::perm_step(ctx.rng(), level, window, true), gen::random_mpt(ctx.rng(), level)};
  }
  std::size_t budget = cfg.integer("budget", 16);
  std::size_t samples = cfg.integer("samples", 16);
  auto const &grp = tg.base();

  rep.table("inputs", {"name", "value"}).rows = {{"a", format_tilde(a.f, a.t)}, {"b", format_tilde(b.f, b.t)}};

  auto m = measures(rep, "metrics");
  m.add("fiber d^", dhat_p(grp, a.f, b.f));
  m.add("fiber d^_u", dhat_u(grp, a.f, b.f));
  m.add("Delta_u", delta_u(a.t, b.t));
  m.add("Delta'_u", delta_u_prime(a.t, b.t));
  m.add("Delta_w", delta_w(a.t, b.t));
  auto pw = pointwise_metric(tg, a, b, budget);
  m.add("pointwise", pw.value);
  m.add("pointwise truncation bound", pw.truncation_bound);
  Rational exact = lu_exact_discrete(tg, a, b);
  m.add("L_u", exact);
  std::uint64_t est_seed = samples > 0 ? ctx.rng()() : 0;
  auto est = lu_estimate(tg, a, b, samples, est_seed);
  m.add("L_u estimate", est.value, est.value <= exact);
  m.add("L_u estimate witness", est.best);
  auto bounds = lu_bounds(tg, a, b);
  m.add("L_u lower bound", bounds.lower, bounds.lower <= exact);
  m.add("L_u upper bound", bounds.upper, exact <= bounds.upper);
}

// tower ------------------------------------------------------------------------------

void cmd_tower(Context &ctx, Report &rep)
{
  auto const &cfg = ctx.cfg;
  cfg.restrict_to(with_common({"map", "level", "min_cycle", "height", "eps", "list_columns"}));
  std::size_t n = cfg.integer("height", 8);
  Rational eps = cfg.rational("eps", Rational(1, static_cast<unsigned long>(std::max<std::size_t>(n, 1))));
  DyadicMPT t;
  if (cfg.has("map")) {
    t = cfg.get("map", [](std::string const &v) { return parse_mpt(v); });
  } else {
    unsigned level = level_key(cfg, "level", 10);
    std::size_t min_cycle = cfg.integer("min_cycle", n);
    t = gen::aperiodic_mpt(ctx.rng(), level, min_cycle, spare_for(interval_count(level), min_cycle, eps));
  }
  auto pa = periodic_approximation(t, n, eps);
  auto lengths = mpt_cycles(pa.periodic_map).census;
  bool exact_period = lengths.size() == 1 && lengths.begin()->first == n;

  auto m = measures(rep, "tower");
  m.add("level", std::to_string(pa.source_tower.level));
  m.add("height", std::to_string(n));
  m.add("min cycle", std::to_string(mpt_cycles(t).min_length()));
  m.add("columns", std::to_string(pa.source_tower.columns.size()));
  m.add("covered", pa.source_tower.covered_measure());
  m.add("leftover", pa.source_tower.leftover.measure(), pa.source_tower.leftover.measure() <= eps);
  m.add("Delta_u(T, S0)", pa.distance, pa.distance <= eps + Rational(1, static_cast<unsigned long>(n)));
  m.add("S0 period exactly N", yes(exact_period), exact_period);

  if (cfg.flag("list_columns", false)) {
    auto &cols = rep.table("columns", {"column", "base", "top"});
    for (std::size_t c = 0; c < pa.exact_tower.columns.size(); ++c)
      cols.rows.push_back({std::to_string(c), std::to_string(pa.exact_tower.columns[c].front()),
                           std::to_string(pa.exact_tower.columns[c].back())});
  }
}

// synthesize -------------------------------------------------------------------------

void certificate_table(Report &rep, std::string const &name, std::vector<CertificateRow> const &rows,
                       std::string const &which)
{
  if (which == "none")
    return;
  auto &t = rep.table(name, {"column", "level", "interval", "n", "lhs", "rhs", "ok"});
  for (auto const &r : rows)
    if (which == "all" || !r.ok)
      t.rows.push_back({std::to_string(r.column), std::to_string(r.level), std::to_string(r.interval),
                        std::to_string(r.n), std::to_string(r.lhs), std::to_string(r.rhs), yes(r.ok)});
}

void cmd_synthesize(Context &ctx, Report &rep)
{
  auto const &cfg = ctx.cfg;
  cfg.restrict_to(with_common({"group", "sigma", "s", "h", "level", "h_level", "window", "height", "eps",
                               "eps_g", "codomain_limit", "max_growth", "certificates"}));
  std::string group = cfg.text("group", "sym");
  std::size_t n = cfg.integer("height", 8);
  if (n == 0)
    throw Error(ErrorKind::ParseError, "height must be positive");
  Rational eps = cfg.rational("eps", Rational(1, static_cast<unsigned long>(n)));
  std::string which = cfg.text("certificates", "all");
  if (which != "all" && which != "failed" && which != "none")
    throw Error(ErrorKind::ParseError, "certificates must be all, failed or none");

  auto source_map = [&] {
    if (cfg.has("s"))
      return cfg.get("s", [](std::string const &v) { return parse_mpt(v); });
    unsigned level = level_key(cfg, "level", group == "aut" ? 6 : 10);
    std::size_t cells = interval_count(level);
    return gen::aperiodic_mpt(ctx.rng(), level, n, spare_for(cells, n, eps - Rational(1, static_cast<unsigned long>(n))));
  };

  if (group == "sym") {
    SynthesisTask task;
    task.window = cfg.integer("window", 4);
    task.height = n;
    task.eps = eps;
    task.max_growth = static_cast<unsigned>(cfg.integer("max_growth", 3));
    if (cfg.has("codomain_limit"))
      task.codomain_limit = cfg.integer("codomain_limit", 0);
    if (cfg.has("sigma"))
      task.sigma = cfg.get("sigma", [](std::string const &v) { return parse_cycles(v); });
    task.s = source_map();
    if (cfg.has("h"))
      task.h = cfg.get("h", [](std::string const &v) { return parse_perm_step(v); });
    else
      task.h = gen::perm_step(ctx.rng(), level_key(cfg, "h_level", 2, 8), task.window);
    auto res = synthesize_conjugator(task);

    auto m = measures(rep, "synthesize");
    m.add("K", std::to_string(task.window));
    m.add("N", std::to_string(n));
    m.add("eps", eps);
    m.add("level", std::to_string(res.g.level()));
    m.add("sigma window", std::to_string(res.sigma.window()));
    m.add("surrogate max length", std::to_string(res.max_length));
    m.add("surrogate copies", std::to_string(res.copies));
    m.add("Delta_u(S, S0)", res.approx.distance);
    m.add("agreement", res.agreement, res.agreement >= 1 - eps);
    m.add("equation", yes(res.equation_ok), res.equation_ok);
    m.add("telescoping", yes(res.telescoping_ok), res.telescoping_ok);
    certificate_table(rep, "equation", res.equation, which);
    certificate_table(rep, "telescoping", res.telescoping, which);
  } else if (group == "aut") {
    AutGroup grp;
    Rational eps_g = cfg.rational("eps_g", Rational(1, 8));
    DyadicMPT sigma = cfg.has("sigma") ? cfg.get("sigma", [](std::string const &v) { return parse_mpt(v); })
                                       : gen::full_cycle(ctx.rng(), 8);
    DyadicMPT s = source_map();
    StepFn<DyadicMPT> h;
    if (cfg.has("h")) {
      h = cfg.get("h", [](std::string const &v) {
        return parse_step<DyadicMPT>(v, [](std::string const &x) { return parse_mpt(x); });
      });
    } else {
      auto tau = gen::full_cycle(ctx.rng(), 8);
      unsigned hl = level_key(cfg, "h_level", 1, 4);
      std::vector<DyadicMPT> hv;
      for (std::size_t i = 0; i < interval_count(hl); ++i)
        hv.push_back(mpt_power(tau, static_cast<std::int64_t>(1 + 32 * gen::uniform(ctx.rng(), 0, 3))));
      h = StepFn<DyadicMPT>(hl, std::move(hv));
    }
    auto res = synthesize_conjugator_metric(grp, sigma, s, h, n, eps, eps_g);
    auto m = measures(rep, "synthesize");
    m.add("N", std::to_string(n));
    m.add("eps", eps);
    m.add("eps_G", eps_g);
    m.add("level", std::to_string(res.g.level()));
    m.add("Delta_u(S, S0)", res.approx.distance);
    m.add("max deviation", res.max_deviation, res.max_deviation <= eps_g);
    m.add("agreement", res.agreement, res.agreement >= 1 - eps);
    if (which != "none") {
      auto &t = rep.table("deviation", {"interval", "deviation", "ok"});
      for (std::size_t y = 0; y < res.deviation.size(); ++y)
        if (which == "all" || res.deviation[y] > eps_g)
          t.rows.push_back({std::to_string(y), to_string(res.deviation[y]), yes(res.deviation[y] <= eps_g)});
    }
  } else {
    throw Error(ErrorKind::ParseError, "group must be sym or aut");
  }
}

// density ------------------------------------------------------------------------------

std::size_t first_height(Rational const &radius)
{
  std::size_t n = 2;
  while (Rational(static_cast<unsigned long>(n)) * radius <= 1)
    n *= 2;
  return n;
}

SymProductNeighborhood random_target(Rng &rng, Rational const &eps, unsigned level, std::size_t lo,
                                     std::size_t k)
{
  SymProductNeighborhood target;
  target.aut_center = gen::aperiodic_mpt(rng, level, 64, 0);
  target.aut_radius = eps;
  std::vector<Index> members;
  for (Index i = 0; i < 4; ++i)
    if (gen::coin(rng))
      members.push_back(i);
  target.aut_sets.push_back(DyadicSet(2, members));
  auto shift = [&](WindowPerm const &p) {
    std::vector<Point> m(lo + p.window());
    std::iota(m.begin(), m.end(), Point{0});
    for (std::size_t i = 0; i < p.window(); ++i)
      m[lo + i] = static_cast<Point>(lo + p.map()[i]);
    return WindowPerm(std::move(m));
  };
  target.fiber_center = map(gen::perm_step(rng, 2, k), shift);
  target.fiber_tests.push_back(map(gen::field(rng, 1, k), [&](Point p) { return static_cast<Point>(p + lo); }));
  target.fiber_radii.push_back(eps);
  return target;
}

void membership_rows(Measures &m, std::string const &prefix, MembershipReport const &rep)
{
  for (std::size_t i = 0; i < rep.residuals.size(); ++i)
    m.add(prefix + "condition " + std::to_string(i),
          to_string(rep.residuals[i]) + " < " + to_string(rep.bounds[i]), rep.residuals[i] < rep.bounds[i]);
  m.add(prefix + "member", yes(rep.member), rep.member);
}

void cmd_density(Context &ctx, Report &rep)
{
  auto const &cfg = ctx.cfg;
  cfg.restrict_to(with_common({"mode", "sigma", "s", "t", "h", "level", "eps", "fiber_center", "fiber_tests",
                               "aut_center", "aut_sets"}));
  std::string mode = cfg.text("mode", "neighborhood");
  Rational eps = cfg.rational("eps", Rational(1, 8));
  SymTildeGroup tg{SymmetricGroup{}};
  unsigned level = level_key(cfg, "level", 8, 12);
  auto mpt_or_random = [&](std::string const &key) {
    if (cfg.has(key))
      return cfg.get(key, [](std::string const &v) { return parse_mpt(v); });
    return gen::aperiodic_mpt(ctx.rng(), level, 64, 0);
  };

  if (mode == "neighborhood") {
    WindowPerm sigma = cfg.has("sigma") ? cfg.get("sigma", [](std::string const &v) { return parse_cycles(v); })
                                        : generic_surrogate(4 * first_height(eps), 1).realized;
    DyadicMPT s = mpt_or_random("s");
    SymProductNeighborhood target;
    bool explicit_target = cfg.has("fiber_center") || cfg.has("aut_center");
    if (explicit_target) {
      target.aut_radius = eps;
      target.fiber_center = cfg.has("fiber_center")
                              ? cfg.get("fiber_center", [](std::string const &v) { return parse_perm_step(v); })
                              : StepFn<WindowPerm>::constant(WindowPerm::identity());
      if (cfg.has("fiber_tests"))
        target.fiber_tests = cfg.get("fiber_tests", [](std::string const &v) {
          std::vector<StepFn<Point>> out;
          for (auto const &part : split_top(v, ';'))
            out.push_back(parse_point_step(part));
          return out;
        });
      target.fiber_radii.assign(target.fiber_tests.size(), eps);
      target.aut_center = cfg.has("aut_center")
                            ? cfg.get("aut_center", [](std::string const &v) { return parse_mpt(v); })
                            : DyadicMPT::identity(0);
      if (cfg.has("aut_sets"))
        target.aut_sets = cfg.get("aut_sets", [](std::string const &v) {
          std::vector<DyadicSet> out;
          for (auto const &part : split_top(v, ';'))
            out.push_back(parse_set(part));
          return out;
        });
    } else {
      target = random_target(ctx.rng(), eps, level, 0, 4);
    }
    auto res = conjugate_into_neighborhood(tg, sigma, s, target);
    auto m = measures(rep, "density");
    m.add("eps", eps);
    m.add("tower height", std::to_string(res.height));
    if (res.aut_distance)
      m.add("Delta_u(Q^-1 S Q, T*)", *res.aut_distance);
    m.add("Q level", std::to_string(res.conjugator.t.level()));
    m.add("k level", std::to_string(res.conjugator.f.level()));
    membership_rows(m, "", res.membership);
  } else if (mode == "constant") {
    WindowPerm h = cfg.has("h") ? cfg.get("h", [](std::string const &v) { return parse_cycles(v); })
                                : gen::random_perm(ctx.rng(), 4);
    DyadicMPT t = mpt_or_random("t");
    DyadicMPT s = mpt_or_random("s");
    auto res = approx_conjugate_constant(tg, h, t, s, eps);
    auto m = measures(rep, "constant");
    m.add("eps", eps);
    m.add("Delta_u(R^-1 T R, S)", res.delta);
    m.add("certified L_u", res.certified, res.ok);
  } else if (mode == "diagonal") {
    // two coordinates on disjoint blocks of the naturals, one shared S
    std::size_t height = first_height(eps);
    auto base = generic_surrogate(4 * height, 1).realized;
    std::size_t block = base.window();
    DyadicMPT s = mpt_or_random("s");
    std::vector<std::pair<WindowPerm, DyadicMPT>> sources;
    std::vector<SymProductNeighborhood> targets;
    Rng &rng = ctx.rng();
    auto aut = random_target(rng, eps, level, 0, 4);
    for (std::size_t i = 0; i < 2; ++i) {
      std::vector<Point> m(block * (i + 1));
      std::iota(m.begin(), m.end(), Point{0});
      for (std::size_t p = 0; p < block; ++p)
        m[i * block + p] = static_cast<Point>(i * block + base.map()[p]);
      sources.emplace_back(WindowPerm(std::move(m)), s);
      auto target = random_target(rng, eps, level, i * block, 4);
      target.aut_center = aut.aut_center;
      target.aut_sets = aut.aut_sets;
      targets.push_back(std::move(target));
    }
    auto res = diagonal_experiment(tg, sources, targets, {0, block, 2 * block});
    auto m = measures(rep, "diagonal");
    m.add("eps", eps);
    for (std::size_t i = 0; i < res.coordinates.size(); ++i)
      membership_rows(m, "coordinate " + std::to_string(i) + " ", res.coordinates[i].membership);
    m.add("success", yes(res.success), res.success);
  } else {
    throw Error(ErrorKind::ParseError, "mode must be neighborhood, constant or diagonal");
  }
}

// verify -------------------------------------------------------------------------------

void cmd_verify(Context &ctx, Report &rep, bool timing)
{
  auto const &cfg = ctx.cfg;
  cfg.restrict_to(with_common({"criteria"}));
  std::vector<int> ids;
  if (cfg.has("criteria")) {
    ids = cfg.get("criteria", [](std::string const &v) {
      std::vector<int> out;
      for (auto const &part : split_top(v, ','))
        out.push_back(static_cast<int>(parse_point(part)));
      return out;
    });
  } else {
    for (int id = 1; id <= criterion_count; ++id)
      ids.push_back(id);
  }
  if (!ctx.seed)
    throw Error(ErrorKind::InvalidArgument, "verify samples its cases; give --seed or seed = ...");
  auto &t = rep.table("criteria", {"id", "name", "cases", "detail", "runtime_s", "passed"});
  for (int id : ids) {
    auto r = run_criterion(id, *ctx.seed);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", r.seconds);
    t.rows.push_back({std::to_string(id), r.name, std::to_string(r.cases), r.detail, timing ? buf : "-",
                      yes(r.passed)});
    rep.ok = rep.ok && r.passed;
  }
}

// power --------------------------------------------------------------------------------

std::string format_census(Census const &c)
{
  std::string out;
  for (auto const &[len, count] : c)
    out += (out.empty() ? "" : " ") + std::to_string(len) + "^" + std::to_string(count);
  return out.empty() ? "-" : out;
}

std::string format_orbitals(OrbitalReport const &r)
{
  auto end = [](ExtendedRational const &x, char const *inf) { return x ? to_string(*x) : std::string(inf); };
  std::string out;
  for (auto const &f : r.fixed)
    out += "fix[" + end(f.lo, "-inf") + "," + end(f.hi, "+inf") + "] ";
  for (auto const &o : r.orbitals)
    out += std::string(o.sign > 0 ? "up" : "down") + "(" + end(o.lo, "-inf") + "," + end(o.hi, "+inf") + ") ";
  return out.empty() ? "-" : out.substr(0, out.size() - 1);
}

void cmd_power(Context &ctx, Report &rep)
{
  auto const &cfg = ctx.cfg;
  cfg.restrict_to(with_common({"perm", "pl", "map", "n", "window", "level"}));
  std::size_t n = cfg.integer("n", 3);
  bool any = cfg.has("perm") || cfg.has("pl") || cfg.has("map");
  auto m = measures(rep, "power");
  m.add("N", std::to_string(n));

  if (cfg.has("perm") || !any) {
    WindowPerm a = cfg.has("perm") ? cfg.get("perm", [](std::string const &v) { return parse_cycles(v); })
                                   : gen::random_perm(ctx.rng(), cfg.integer("window", 12));
    auto r = power_invariance_check(a, n);
    m.add("perm", format_cycles(a));
    m.add("cycle type of a^N by rule", format_census(r.rule));
    m.add("cycle type of a^N direct", format_census(r.direct), r.consistent);
  }
  if (cfg.has("pl") || !any) {
    PLOrderAut g = cfg.has("pl") ? cfg.get("pl", [](std::string const &v) { return parse_pl(v); })
                                 : gen::random_pl(ctx.rng());
    auto r = power_invariance_check(g, n);
    m.add("pl", format_pl(g));
    m.add("orbitals of g", format_orbitals(r.base));
    m.add("orbitals of g^N", format_orbitals(r.power), r.consistent);
  }
  if (cfg.has("map") || !any) {
    DyadicMPT t = cfg.has("map") ? cfg.get("map", [](std::string const &v) { return parse_mpt(v); })
                                 : gen::aperiodic_mpt(ctx.rng(), level_key(cfg, "level", 6, 12), 8, 0);
    auto r = power_invariance_check(t, n);
    m.add("min cycle of T", std::to_string(r.min_cycle));
    m.add("min cycle of T^N", std::to_string(r.power_min_cycle));
    m.add("predicted min cycle of T^N", std::to_string(r.predicted_min_cycle), r.consistent);
  }
}

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Exact experiments on randomized groups, Rokhlin towers and conjugator synthesis"};
  app.require_subcommand(1);
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  std::string format = "csv";
  app.add_option("--config", config_path, "flat key = value file")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "seed for every sampled input");
  app.add_option("--out", out_path, "report file (default: standard output)");
  app.add_option("--format", format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
  std::map<std::string, CLI::App *> subs;
  for (auto const &[name, help] : std::vector<std::pair<std::string, std::string>>{
         {"metrics", "randomized distances between two elements"},
         {"tower", "Rokhlin tower and periodic approximation"},
         {"synthesize", "conjugator synthesis with certificates"},
         {"density", "conjugation into a neighbourhood, constant and diagonal runs"},
         {"verify", "acceptance suites"},
         {"power", "cycle types and orbitals under powers"}})
    subs[name] = app.add_subcommand(name, help)->fallthrough();
  CLI11_PARSE(app, argc, argv);

  try {
    Config cfg;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      cfg = Config::parse(in, config_path);
    }
    if (seed)
      cfg.set("seed", std::to_string(*seed));
    Context ctx{cfg, std::nullopt, std::nullopt};
    if (cfg.has("seed"))
      ctx.seed = cfg.integer("seed", 0);
    bool timing = cfg.flag("timing", true);

    Report rep;
    std::string command;
    for (auto const &[name, sub] : subs)
      if (sub->parsed())
        command = name;
    auto start = std::chrono::steady_clock::now();
    if (command == "metrics")
      cmd_metrics(ctx, rep);
    else if (command == "tower")
      cmd_tower(ctx, rep);
    else if (command == "synthesize")
      cmd_synthesize(ctx, rep);
    else if (command == "density")
      cmd_density(ctx, rep);
    else if (command == "verify")
      cmd_verify(ctx, rep, timing);
    else
      cmd_power(ctx, rep);
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", seconds);
    auto &summary = rep.table("summary", {"experiment", "digest", "runtime_s", "ok"});
    summary.rows.push_back({command, digest(command + "\n" + cfg.canonical()), timing ? buf : "-", yes(rep.ok)});

    std::ofstream file;
    if (!out_path.empty()) {
      file.open(out_path);
      if (!file)
        throw Error(ErrorKind::InvalidArgument, "cannot write " + out_path);
    }
    std::ostream &os = out_path.empty() ? std::cout : file;
    if (format == "csv")
      write_csv(os, rep);
    else
      write_jsonl(os, rep);
    return rep.ok ? 0 : 1;
  } catch (Error const &e) {
    std::cerr << "randiso: " << e.what() << "\n";
    return e.kind() == ErrorKind::ParseError || e.kind() == ErrorKind::InvalidArgument ? 2 : 1;
  }
}
