#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "iqp/iqp.h"

namespace {

struct DocDeleter {
  void operator()(iqp_doc* d) const { iqp_free(d); }
};
using Doc = std::unique_ptr<iqp_doc, DocDeleter>;

struct Failure {
  int code;
};

int report_error(int code, const std::string& json) {
  std::cerr << json << '\n';
  return code;
}

int local_error(int code, const char* kind, const std::string& message) {
  return report_error(code, nlohmann::json{{"error", kind}, {"message", message}}.dump());
}

void check(iqp_status s) {
  if (s != IQP_OK) throw Failure{report_error(s, iqp_last_error())};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  iqp_string_free(s);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{local_error(IQP_MALFORMED, "malformed", "cannot read '" + path + "'")};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Doc load(const std::string& path, int truncation) {
  std::string text = read_file(path);
  iqp_doc* raw = nullptr;
  check(iqp_parse(text.c_str(), &raw));
  Doc doc(raw);
  if (truncation > 0) {
    iqp_doc* t = nullptr;
    check(iqp_with_truncation(doc.get(), truncation, &t));
    doc.reset(t);
  }
  return doc;
}

std::string dump(const iqp_doc* doc) {
  char* out = nullptr;
  check(iqp_dump(doc, &out));
  return take(out);
}

int effective(const iqp_doc* doc, int truncation) { return truncation > 0 ? truncation : iqp_truncation(doc); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ice quivers with potential: mutation, Ginzburg algebras and homology checks", "iqp-cli"};
  app.require_subcommand(1);
  app.set_version_flag("--version", iqp_version());

  std::string file, file_b, check_name, format = "json", host = "127.0.0.1";
  std::vector<std::string> vertices;
  int truncation = 0, port = 8080;
  bool canonical = false, trace = false;
  std::uint64_t seed = 0;

  auto* validate = app.add_subcommand("validate", "Validate an ice quiver document");
  validate->add_option("FILE", file)->required();

  auto* mutate = app.add_subcommand("mutate", "Mutate at one or more vertices in order");
  mutate->add_option("FILE", file)->required();
  mutate->add_option("-v,--vertex", vertices)->required()->take_all();
  mutate->add_flag("--canonical", canonical, "Relabel the result deterministically");
  mutate->add_flag("--trace", trace, "Print {iqp, mutability, trace} instead of the document");
  mutate->add_option("--truncate", truncation);

  auto* premutate = app.add_subcommand("premutate", "Premutate at a vertex without reducing");
  premutate->add_option("FILE", file)->required();
  premutate->add_option("-v,--vertex", vertices)->required()->expected(1);
  premutate->add_option("--truncate", truncation);

  auto* reduce = app.add_subcommand("reduce", "Remove 2-cycles by right equivalence");
  reduce->add_option("FILE", file)->required();
  reduce->add_flag("--trace", trace, "Print {iqp, trace}");
  reduce->add_option("--truncate", truncation);

  auto* ginzburg = app.add_subcommand("ginzburg", "Export the relative Ginzburg dg algebra");
  ginzburg->add_option("FILE", file)->required();
  ginzburg->add_option("--truncate", truncation);
  ginzburg->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

  auto* pi2 = app.add_subcommand("pi2", "Export the derived preprojective algebra of the frozen part");
  pi2->add_option("FILE", file)->required();
  pi2->add_option("--truncate", truncation);
  pi2->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

  auto* checks = app.add_subcommand("check", "Run a check and print its report; exit 0 iff it passes");
  checks->add_option("FILE", file)->required();
  checks->add_option("CHECK", check_name)->required()->check(
      CLI::IsMember({"d2", "h0", "boundary", "pj", "involution"}));
  checks->add_option("-v,--vertex", vertices)->expected(1);
  checks->add_option("--truncate", truncation);

  auto* dot = app.add_subcommand("dot", "Print the ice quiver in DOT");
  dot->add_option("FILE", file)->required();

  auto* iso = app.add_subcommand("iso", "Decide whether two ice quivers are isomorphic; exit 0 iff they are");
  iso->add_option("A", file)->required();
  iso->add_option("B", file_b)->required();

  auto* invariants = app.add_subcommand("invariants", "Jacobian and boundary dimensions plus the d^2 check");
  invariants->add_option("FILE", file)->required();
  invariants->add_option("--truncate", truncation);

  auto* random = app.add_subcommand("random", "Print a random reduced-input case {iqp, vertex}");
  random->add_option("--seed", seed);

  auto* serve = app.add_subcommand("serve", "Serve the JSON API");
  serve->add_option("--port", port);
  serve->add_option("--host", host);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return local_error(IQP_MALFORMED, "malformed", e.what());
  }
  if (truncation < 0) return local_error(IQP_MALFORMED, "malformed", "negative truncation");

  try {
    if (*validate) {
      std::string text = read_file(file);
      char* report = nullptr;
      iqp_status s = iqp_validate(text.c_str(), &report);
      if (s != IQP_OK && s != IQP_CHECK_FAILED) check(s);
      std::cout << take(report) << '\n';
      return s;
    }
    if (*mutate) {
      Doc doc = load(file, truncation);
      std::vector<const char*> vs;
      for (const auto& v : vertices) vs.push_back(v.c_str());
      iqp_doc* out = nullptr;
      char* json = nullptr;
      check(iqp_mutate(doc.get(), vs.data(), vs.size(), canonical, &out, &json));
      Doc result(out);
      std::string full = take(json);
      std::cout << (trace ? full : dump(result.get())) << '\n';
      return 0;
    }
    if (*premutate) {
      Doc doc = load(file, truncation);
      iqp_doc* out = nullptr;
      check(iqp_premutate(doc.get(), vertices.front().c_str(), &out));
      Doc result(out);
      std::cout << dump(result.get()) << '\n';
      return 0;
    }
    if (*reduce) {
      Doc doc = load(file, truncation);
      iqp_doc* out = nullptr;
      char* t = nullptr;
      check(iqp_reduce(doc.get(), &out, &t));
      Doc result(out);
      std::string trace_json = take(t);
      if (trace) {
        std::cout << "{\"iqp\":" << dump(result.get()) << ",\"trace\":" << trace_json << "}\n";
      } else {
        std::cout << dump(result.get()) << '\n';
      }
      return 0;
    }
    if (*ginzburg || *pi2) {
      Doc doc = load(file, 0);
      char* out = nullptr;
      int n = effective(doc.get(), truncation);
      int text = format == "text";
      check(*ginzburg ? iqp_ginzburg(doc.get(), n, text, &out) : iqp_pi2(doc.get(), n, text, &out));
      std::string s = take(out);
      std::cout << s;
      if (s.empty() || s.back() != '\n') std::cout << '\n';
      return 0;
    }
    if (*checks) {
      Doc doc = load(file, 0);
      char* report = nullptr;
      const char* v = vertices.empty() ? nullptr : vertices.front().c_str();
      iqp_status s = iqp_check(doc.get(), check_name.c_str(), effective(doc.get(), truncation), v, &report);
      if (s != IQP_OK && s != IQP_CHECK_FAILED) check(s);
      std::cout << take(report) << '\n';
      return s;
    }
    if (*dot) {
      Doc doc = load(file, 0);
      char* out = nullptr;
      check(iqp_dot(doc.get(), &out));
      std::cout << take(out);
      return 0;
    }
    if (*iso) {
      Doc a = load(file, 0), b = load(file_b, 0);
      char* out = nullptr;
      iqp_status s = iqp_isomorphic(a.get(), b.get(), &out);
      if (s != IQP_OK && s != IQP_CHECK_FAILED) check(s);
      std::cout << take(out) << '\n';
      return s;
    }
    if (*invariants) {
      Doc doc = load(file, 0);
      char* out = nullptr;
      check(iqp_invariants(doc.get(), effective(doc.get(), truncation), &out));
      std::cout << take(out) << '\n';
      return 0;
    }
    if (*random) {
      iqp_doc* raw = nullptr;
      char* v = nullptr;
      check(iqp_random(seed, &raw, &v));
      Doc doc(raw);
      std::cout << "{\"iqp\":" << dump(doc.get()) << ",\"vertex\":" << nlohmann::json(take(v)).dump() << "}\n";
      return 0;
    }
    if (*serve) {
      std::cerr << "listening on " << host << ':' << port << '\n';
      check(iqp_serve(host.c_str(), port));
      return 0;
    }
  } catch (const Failure& f) {
    return f.code;
  }
  return local_error(IQP_MALFORMED, "malformed", "no subcommand");
}
