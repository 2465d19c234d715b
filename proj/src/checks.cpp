#include "iqp/checks.hpp"

#include "iqp/error.hpp"
#include "iqp/quotient.hpp"

namespace iqp {

namespace {

Json d2_report(const DSquaredReport& r) {
  Json out = {{"ok", r.ok}, {"generators_checked", r.generators_checked}};
  if (r.failing_generator) {
    out["failing_generator"] = *r.failing_generator;
    out["residue"] = r.residue;
  }
  return out;
}

CheckResult check_d2(const IQP& iqp, int n) {
  auto gamma = build_relative_ginzburg(iqp, n);
  auto pi2 = build_pi2(iqp.ice, n);
  auto rg = check_d_squared(gamma.dga);
  auto rp = check_d_squared(pi2.dga);
  CheckResult out;
  Json chain = {{"ok", false}};
  bool chain_ok = false;
  try {
    auto functor = build_ginzburg_functor(iqp, n);
    chain_ok = functor->report.ok;
    chain = {{"ok", chain_ok}, {"generators_checked", functor->report.generators_checked}};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Internal) throw;
    chain["message"] = e.what();
  }
  out.pass = rg.ok && rp.ok && chain_ok;
  out.report = {{"check", "d2"}, {"truncation", n}, {"gamma", d2_report(rg)}, {"pi2", d2_report(rp)},
                {"chain_map", chain}, {"pass", out.pass}};
  return out;
}

CheckResult check_h0(const IQP& iqp, int n) {
  auto r = h0_comparison(iqp, n);
  CheckResult out;
  out.pass = r.agree;
  out.report = {{"check", "h0"},         {"truncation", n},
                {"dg_dims", r.dg_dims},  {"jacobian_dims", r.jacobian_dims},
                {"compared_through", r.compared_through}, {"pass", out.pass}};
  return out;
}

Json boundary_json(const BoundaryDims& b) {
  return {{"dims", b.dims}, {"total", b.total}, {"stabilized", b.stabilized}};
}

CheckResult check_boundary(const IQP& iqp, int n, const std::optional<VertexId>& v) {
  CheckResult out;
  auto before = boundary_h0_dims(iqp, n);
  out.report = {{"check", "boundary"}, {"truncation", n}, {"input", boundary_json(before)}};
  out.pass = true;
  if (v) {
    IQP mutated = mutate(with_truncation(iqp, std::max(n, iqp.truncation())), *v);
    auto after = boundary_h0_dims(mutated, n);
    bool comparable = before.stabilized && after.stabilized;
    out.pass = !comparable || before.total == after.total;
    out.report["vertex"] = *v;
    out.report["mutated"] = boundary_json(after);
    out.report["compared"] = comparable;
  }
  out.report["pass"] = out.pass;
  return out;
}

CheckResult check_pj(const IQP& iqp, int n) {
  auto complex = build_pj_complex(iqp, n);
  auto report = check_complex(complex.slices);
  auto profile = exactness_profile(complex.slices);
  CheckResult out;
  out.pass = report.ok;
  Json complex_json = {{"ok", report.ok}};
  if (!report.ok) {
    complex_json["failing_degree"] = report.failing_degree;
    complex_json["failing_composition"] = report.failing_composition;
    complex_json["failing_element"] = report.failing_element;
  }
  out.report = {{"check", "pj"},          {"truncation", n},
                {"weights", {{"arrow", 1}, {"dual", complex.lowest_degree - 1}, {"loop", complex.lowest_degree}}},
                {"complex", complex_json}, {"profile", profile_json(profile)},
                {"pass", out.pass}};
  return out;
}

CheckResult check_involution(const IQP& iqp, int n, const VertexId& v) {
  IQP input = with_truncation(iqp, n);
  IQP reduced = reduce(input).iqp;
  IQP once = mutate(input, v);
  auto status = check_mutable(once.ice, v);
  if (!status.mutable_here()) {
    fail(ErrorKind::Unsupported, "vertex '" + v + "' is not mutable after one mutation: " + status.reason);
  }
  IQP twice = mutate(once, v);
  bool iso = ice_quiver_isomorphic(reduced.ice, twice.ice).has_value();
  TruncatedQuotient j0(input.quiver_ptr(), jacobian_relations(input), n);
  TruncatedQuotient j2(twice.quiver_ptr(), jacobian_relations(twice), n);
  std::size_t through = n >= 2 ? static_cast<std::size_t>(n - 2) : 0;
  bool dims = true;
  for (std::size_t d = 0; d <= through; ++d) dims = dims && j0.dims()[d] == j2.dims()[d];
  CheckResult out;
  out.pass = iso && dims;
  out.report = {{"check", "involution"},
                {"vertex", v},
                {"truncation", n},
                {"isomorphic", iso},
                {"input_dims", j0.dims()},
                {"twice_dims", j2.dims()},
                {"compared_through", through},
                {"pass", out.pass}};
  return out;
}

}  // namespace

CheckResult run_check(const IQP& iqp, const std::string& name, int truncation, const std::optional<VertexId>& vertex) {
  check_truncation(truncation);
  if (name == "d2") return check_d2(iqp, truncation);
  if (name == "h0") return check_h0(iqp, truncation);
  if (name == "boundary") return check_boundary(iqp, truncation, vertex);
  if (name == "pj") return check_pj(iqp, truncation);
  if (name == "involution") {
    if (!vertex) fail(ErrorKind::Malformed, "check involution needs a vertex");
    return check_involution(iqp, truncation, *vertex);
  }
  fail(ErrorKind::Malformed, "unknown check '" + name + "'");
}

}  // namespace iqp
