// ripr: command-line front end. Every subcommand except `diff` builds a spec,
// runs it, and prints the canonical report (or writes it with --out).

#include "ripr/ripr.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <functional>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace {

using ripr::json;

enum class Kind { integer, boolean, text, texts, ints, many_ints, bigints, bigint };

struct Field {
  std::string key;
  Kind kind;
  std::string value;
  std::vector<std::string> values;
  bool flag = false;
  CLI::Option* opt = nullptr;
};

struct Command {
  std::string name;
  CLI::App* app = nullptr;
  std::vector<std::unique_ptr<Field>> fields;
  std::string out, sidecar, format = "json";
  std::function<void(json&)> finish;  // last adjustments to params

  Field& add(const std::string& flag, const std::string& key, Kind kind, const std::string& help) {
    fields.push_back(std::make_unique<Field>());
    Field& f = *fields.back();
    f.key = key;
    f.kind = kind;
    if (kind == Kind::boolean)
      f.opt = app->add_flag(flag, f.flag, help);
    else if (kind == Kind::texts || kind == Kind::many_ints)
      f.opt = app->add_option(flag, f.values, help);
    else
      f.opt = app->add_option(flag, f.value, help);
    return f;
  }

  json params() const {
    json p = json::object();
    for (const auto& f : fields) {
      if (f->opt->count() == 0) continue;
      switch (f->kind) {
        case Kind::integer: p[f->key] = ripr::detail::parse_int(f->value); break;
        case Kind::boolean: p[f->key] = f->flag; break;
        case Kind::text: p[f->key] = f->value; break;
        case Kind::texts: {
          json arr = p.value(f->key, json::array());
          for (const auto& v : f->values) arr.push_back(v);
          p[f->key] = arr;
          break;
        }
        case Kind::ints: p[f->key] = ripr::detail::parse_int_list(f->value); break;
        case Kind::many_ints: {
          json arr = p.value(f->key, json::array());
          for (const auto& v : f->values)
            for (auto n : ripr::detail::parse_int_list(v)) arr.push_back(n);
          p[f->key] = arr;
          break;
        }
        case Kind::bigint: p[f->key] = ripr::bigint_json(ripr::Rat::parse(f->value).num()); break;
        case Kind::bigints: {
          json arr = json::array();
          for (const auto& s : ripr::detail::split(f->value, ','))
            arr.push_back(ripr::bigint_json(ripr::Rat::parse(s).num()));
          p[f->key] = arr;
          break;
        }
      }
    }
    if (finish) finish(p);
    return p;
  }
};

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot write '" + out + "'");
  f << text;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  return json::parse(in);
}

std::string render(const json& report, const std::string& format) {
  if (format == "json") return ripr::canonical(report);
  if (format != "csv") throw std::invalid_argument("format must be json or csv");
  const auto cmd = report.at("command").get<std::string>();
  if (cmd == "gen") return ripr::matrix_csv(ripr::matrix_from_json(report.at("matrix")));
  if (cmd == "image") {
    std::string s;
    for (const auto& v : report.at("values")) s += ripr::rat_from_json(v).str() + "\n";
    return s;
  }
  throw std::invalid_argument("csv output is only available for gen and image");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Image partition regularity workbench"};
  app.require_subcommand(1);

  std::vector<std::unique_ptr<Command>> commands;
  auto make = [&](const std::string& name, const std::string& help) -> Command& {
    commands.push_back(std::make_unique<Command>());
    Command& c = *commands.back();
    c.name = name;
    c.app = app.add_subcommand(name, help);
    c.app->add_option("--out", c.out, "write the report here instead of stdout");
    c.app->add_option("--sidecar", c.sidecar, "write wall-clock timing here");
    return c;
  };
  auto family_opts = [](Command& c) {
    c.add("--family", "family", Kind::texts, "matrix family; repeat to stack");
    c.add("--width", "width", Kind::integer, "number of columns");
    c.add("--rows", "rows", Kind::integer, "row budget");
  };
  auto search_opts = [](Command& c) {
    c.add("--distinct-entries", "distinctEntries", Kind::boolean, "entries of x pairwise distinct");
    c.add("--distinct-image", "distinctImage", Kind::boolean, "distinct rows take distinct values");
    c.add("--min-entry", "minEntry", Kind::integer, "least entry of x");
    c.add("--budget", "budget", Kind::integer, "node budget (default RIPR_BUDGET or 10^7)");
  };

  auto& gen = make("gen", "generate a matrix family");
  gen.add("name", "family", Kind::texts, "matrix family");
  family_opts(gen);
  gen.app->add_option("--format", gen.format, "json or csv");

  auto& img = make("image", "evaluate an image set");
  family_opts(img);
  img.add("--mode", "mode", Kind::text, "matrix, fs, mt, or translated-mt");
  img.add("--x", "x", Kind::ints, "comma-separated vector");
  img.add("--a", "a", Kind::ints, "MT coefficients");
  img.add("--b", "b", Kind::integer, "translation");
  img.app->add_option("--format", img.format, "json or csv");

  auto& dig = make("digits", "base p / base -p digits and statistics");
  dig.add("value", "x", Kind::bigint, "integer");
  dig.add("--x", "x", Kind::bigint, "integer");
  dig.add("--p", "p", Kind::integer, "radix");
  dig.add("--base", "base", Kind::text, "neg (default), pos, or a signed radix such as -7");
  dig.add("--gap", "gap", Kind::ints, "gap shape v,u0,u1,u2,u3 for psi");

  auto& col = make("colour", "evaluate a colouring");
  col.add("values", "x", Kind::many_ints, "values to colour");
  col.add("--x", "x", Kind::many_ints, "comma-separated values");
  col.add("--colouring", "colouring", Kind::text, "colouring spec, e.g. mod:3 or notrapid:7:1,2");
  struct KindOpts {
    std::string kind, p, coeffs, m, alpha, b, c, table;
  };
  auto ko = std::make_shared<KindOpts>();
  col.app->add_option("--kind", ko->kind, "mod, const, table, prime-exp, alpha, extendingF, or notrapid");
  col.app->add_option("--p", ko->p, "prime for extendingF / notrapid");
  col.app->add_option("--coeffs", ko->coeffs, "coefficients for notrapid");
  col.app->add_option("--m", ko->m, "modulus for mod");
  col.app->add_option("--alpha", ko->alpha, "ratio for alpha");
  col.app->add_option("--b", ko->b, "first ratio for prime-exp");
  col.app->add_option("--c", ko->c, "second ratio for prime-exp");
  col.app->add_option("--table", ko->table, "colour table for table");
  col.finish = [ko](json& p) {
    if (ko->kind.empty()) return;
    if (p.contains("colouring")) throw std::invalid_argument("give either --colouring or --kind");
    const auto& k = ko->kind;
    std::string spec;
    if (k == "mod") spec = "mod:" + ko->m;
    else if (k == "const") spec = "const";
    else if (k == "table") spec = "table:" + ko->table;
    else if (k == "prime-exp") spec = "prime-exp:" + ko->b + ":" + ko->c;
    else if (k == "alpha") spec = "alpha:" + ko->alpha;
    else if (k == "extendingF") spec = "extendingF:" + ko->p;
    else if (k == "notrapid") spec = "notrapid:" + ko->p + ":" + ko->coeffs;
    else throw std::invalid_argument("unknown colouring kind '" + k + "'");
    p["colouring"] = spec;
  };

  auto& srch = make("search", "least monochromatic image");
  family_opts(srch);
  srch.add("--colouring", "colouring", Kind::text, "colouring spec");
  srch.add("--bound", "bound", Kind::integer, "largest entry of x");
  search_opts(srch);
  srch.add("--threads", "threads", Kind::integer, "worker threads");

  auto& force = make("force", "forcing bound over all colourings");
  family_opts(force);
  force.add("--colours", "colours", Kind::integer, "number of colours");
  force.add("--nmax", "nmax", Kind::integer, "largest N to try");
  force.add("--budget", "budget", Kind::integer, "node budget");

  auto& sep = make("separate", "monochromatic MT(a,x) u MT(b,y)");
  sep.add("--a", "a", Kind::ints, "first coefficient sequence");
  sep.add("--b", "b", Kind::ints, "second coefficient sequence");
  sep.add("--colouring", "colouring", Kind::text, "colouring spec");
  sep.add("--prefix", "prefix", Kind::integer, "length of x and y");
  sep.add("--bound", "bound", Kind::integer, "largest entry of x and y");
  search_opts(sep);

  auto& dom = make("dominate", "least y with image(B,y) inside image(A,x)");
  dom.add("--A", "aFamily", Kind::texts, "family of A; repeat to stack");
  dom.add("--a-width", "aWidth", Kind::integer, "columns of A");
  dom.add("--a-rows", "aRows", Kind::integer, "row budget of A");
  dom.add("--B", "bFamily", Kind::texts, "family of B; repeat to stack");
  dom.add("--b-width", "bWidth", Kind::integer, "columns of B");
  dom.add("--b-rows", "bRows", Kind::integer, "row budget of B");
  dom.add("--x", "x", Kind::ints, "vector for A");
  dom.add("--ybound", "ybound", Kind::integer, "largest entry of y");
  dom.add("--budget", "budget", Kind::integer, "node budget");
  dom.add("--threads", "threads", Kind::integer, "worker threads");

  auto& cert = make("certify", "check a linear IPR witness A·C = B");
  cert.add("--A", "aFamily", Kind::texts, "family of A");
  cert.add("--a-width", "aWidth", Kind::integer, "columns of A");
  cert.add("--B", "bFamily", Kind::texts, "family of B");
  cert.add("--b-width", "bWidth", Kind::integer, "columns of B");
  cert.add("--C", "cFamily", Kind::texts, "family of C");
  cert.add("--c-width", "cWidth", Kind::integer, "columns of C");

  auto& rap = make("rapid", "check or build a rapid sequence");
  rap.add("--p", "p", Kind::integer, "prime");
  rap.add("--x", "x", Kind::bigints, "comma-separated sequence (seeds with --make)");
  rap.add("--make", "make", Kind::boolean, "replace seeds by their least rapid multiples");

  auto& tr = make("translate-search", "least b, x with FS(x) u (b + MT(a,x)) monochromatic");
  tr.add("--colouring", "colouring", Kind::text, "colouring spec");
  tr.add("--a", "a", Kind::ints, "coefficient sequence");
  tr.add("--prefix", "prefix", Kind::integer, "length of x");
  tr.add("--bbound", "bbound", Kind::integer, "largest b");
  tr.add("--xbound", "xbound", Kind::integer, "largest entry of x");
  search_opts(tr);
  tr.add("--threads", "threads", Kind::integer, "worker threads");

  std::string spec_path, run_out, run_sidecar;
  auto* run = app.add_subcommand("run", "replay a spec file");
  run->add_option("spec", spec_path, "spec JSON")->required();
  run->add_option("--out", run_out, "write the report here");
  run->add_option("--sidecar", run_sidecar, "write wall-clock timing here");

  std::string left, right;
  auto* diff = app.add_subcommand("diff", "field-level diff of two reports");
  diff->add_option("left", left, "first report")->required();
  diff->add_option("right", right, "second report")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (diff->parsed()) {
      auto d = ripr::report_diff(read_json(left), read_json(right));
      std::cout << d.dump(2) << "\n";
      return 0;
    }
    json spec;
    std::string out, sidecar, format = "json";
    if (run->parsed()) {
      spec = read_json(spec_path);
      out = run_out;
      sidecar = run_sidecar;
    } else {
      for (const auto& c : commands) {
        if (!c->app->parsed()) continue;
        spec = {{"command", c->name}, {"params", c->params()}};
        out = c->out;
        sidecar = c->sidecar;
        format = c->format;
      }
    }
    const auto start = std::chrono::steady_clock::now();
    const json report = ripr::run(spec);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    emit(render(report, format), out);
    if (!sidecar.empty()) emit(json{{"wallSeconds", elapsed.count()}}.dump() + "\n", sidecar);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
