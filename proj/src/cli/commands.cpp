#include <bipolar/algebra/linear.hpp>
#include <bipolar/cg/cg.hpp>
#include <bipolar/cli/commands.hpp>
#include <bipolar/dinv/dinv.hpp>
#include <bipolar/fildsl/engine.hpp>
#include <bipolar/lattice/lattice.hpp>

#include <sstream>

namespace bipolar::cli {

using nlohmann::json;
using algebra::to_string;

namespace {

json q(const Rational& r) { return to_string(r); }
json z(const Integer& n) { return n.get_str(); }

json matrix(const IntMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).fits_slong_p() ? json(m(i, j).get_si()) : z(m(i, j)));
    out.push_back(row);
  }
  return out;
}

json matrix(const algebra::RatMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(q(m(i, j)));
    out.push_back(row);
  }
  return out;
}

json vec(const algebra::IntVector& v) {
  json out = json::array();
  for (auto& x : v) out.push_back(x.fits_slong_p() ? json(x.get_si()) : z(x));
  return out;
}

json poly(const SymLaurentPoly& p) {
  json coeffs = json::array();
  for (auto& c : p.coeffs()) coeffs.push_back(z(c));
  return {{"coefficients", coeffs}, {"text", p.to_string()}};
}

json form_json(const covers::LinkingForm& form, const RunOptions& opt) {
  const auto& g = form.group();
  json factors = json::array();
  for (auto& f : g.factors()) factors.push_back(z(f));
  auto ms = covers::metabolizers(form, opt.enum_bound);
  json mets = json::array();
  for (auto& m : ms.found)
    mets.push_back({{"subgroup", m.description}, {"order", m.elements.size()}, {"verified", covers::verify_metabolizer(form, m)}});
  json out = {{"group", factors}, {"order", z(g.order())}, {"pairing", matrix(form.pairing())}, {"metabolizers", mets}};
  if (!ms.reason.empty()) out["metabolizer_note"] = ms.reason;
  return out;
}

json cobordism_json(const covers::FramedPresentation& fp, const Cobordism& cb) {
  IntMatrix m = covers::cobordism_intersection_matrix(fp, cb.curves, cb.framings, cb.orders);
  auto kind = lattice::definiteness(m);
  json out = {{"intersection", matrix(m)},
              {"signature", algebra::symmetric_signature(m).signature()},
              {"determinant", z(algebra::determinant(m))},
              {"definiteness", lattice::to_string(kind)}};
  if (cb.characteristic > 0) {
    std::size_t i = static_cast<std::size_t>(cb.characteristic - 1);
    if (i >= m.rows()) throw DomainError("characteristic index out of range");
    algebra::IntVector e(m.rows(), Integer(0));
    e[i] = 1;
    out["characteristic"] = {{"vector", "e" + std::to_string(cb.characteristic)},
                             {"is_characteristic", lattice::is_characteristic(m, e)},
                             {"c1_squared", q(Rational(m(i, i)) / Rational(cb.orders[i] * cb.orders[i]))}};
  }
  return out;
}

Rational part_value(const TerminalPart& p) {
  Rational v = p.lens ? dinv::d_lens(p.lens->first, p.lens->second, p.label)
                      : dinv::d_surgery_lspace(*p.surgery_alexander, p.surgery_n, p.label);
  return p.reversed ? Rational(-v) : v;
}

void render_text(std::ostringstream& os, const json& j, int indent) {
  const std::string pad(indent, ' ');
  auto scalar = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  auto flat = [&](const json& a) {
    if (!a.is_array()) return false;
    for (auto& x : a)
      if (x.is_object()) return false;
      else if (x.is_array())
        for (auto& y : x)
          if (y.is_structured()) return false;
    return true;
  };
  auto inline_list = [&](const json& a) {
    std::string s = "[";
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i) s += ", ";
      if (a[i].is_array()) {
        s += "[";
        for (std::size_t k = 0; k < a[i].size(); ++k) s += (k ? ", " : "") + scalar(a[i][k]);
        s += "]";
      } else {
        s += scalar(a[i]);
      }
    }
    return s + "]";
  };
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it->is_object() || (it->is_array() && !flat(*it))) {
        os << pad << it.key() << ":\n";
        render_text(os, *it, indent + 2);
      } else {
        os << pad << it.key() << ": " << (it->is_array() ? inline_list(*it) : scalar(*it)) << '\n';
      }
    }
  } else if (j.is_array()) {
    for (auto& x : j) {
      if (x.is_structured() && !flat(x)) {
        os << pad << "-\n";
        render_text(os, x, indent + 2);
      } else {
        os << pad << "- " << (x.is_array() ? inline_list(x) : scalar(x)) << '\n';
      }
    }
  } else {
    os << pad << scalar(j) << '\n';
  }
}

}  // namespace

json sig_json(const KnotRecord& r) {
  if (!r.seifert) throw DomainError("record '" + r.name + "' has no Seifert matrix");
  auto sf = seifert::signature_function(*r.seifert);
  json jumps = json::array();
  for (std::size_t i = 0; i < sf.jumps.size(); ++i) {
    const auto& jp = sf.jumps[i];
    json e = {{"trace_interval", {q(jp.x_lo), q(jp.x_hi)}}, {"jump", sf.jump_values[i]}};
    if (jp.root) e["root_of_unity"] = jp.root->to_string();
    jumps.push_back(e);
  }
  auto rho = seifert::rho0(*r.seifert);
  json rj = {{"interval", {q(rho.lo), q(rho.hi)}}};
  if (rho.exact) rj["exact"] = q(*rho.exact);
  long at_minus_one = r.seifert->is_unknot_form() ? 0 : sf.value_at(algebra::RootArg(1, 2));
  return {{"name", r.name},
          {"genus", r.seifert->genus()},
          {"signature_at_minus_one", at_minus_one},
          {"identically_zero", sf.identically_zero()},
          {"max", sf.max_value()},
          {"min", sf.min_value()},
          {"plateaus", sf.plateaus},
          {"jumps", jumps},
          {"rho0", rj}};
}

json alex_json(const KnotRecord& r) {
  if (!r.alexander) throw DomainError("record '" + r.name + "' has no Alexander polynomial");
  const auto& d = *r.alexander;
  Integer det = abs(d.at_minus_one());
  json out = {{"name", r.name},
              {"alexander", poly(d)},
              {"determinant", z(det)},
              {"arf", seifert::arf(d)}};
  if (r.seifert) out["arf_from_seifert"] = seifert::arf(*r.seifert);
  return out;
}

json cover_json(const KnotRecord& r, const RunOptions& opt, long seifert_q) {
  json covers_out = json::array();
  auto one = [&](const CoverRecord& c) {
    json out = {{"q", c.q}};
    if (c.presentation) {
      covers::LinkingForm form(*c.presentation);
      out["presentation"] = matrix(c.presentation->P);
      out["labels"] = c.presentation->labels;
      out["form"] = form_json(form, opt);
      auto rel = covers::derived_relations(*c.presentation, form.group(), opt.enum_bound);
      json rels = json::array();
      for (auto& x : rel.relations) rels.push_back(x.to_string());
      out["basis"] = rel.basis;
      out["relations"] = rels;
      json images = json::object();
      for (std::size_t i = 0; i < form.labels().size(); ++i) images[form.labels()[i]] = vec(form.label_images()[i]);
      out["label_images"] = images;
      if (c.cobordism) out["cobordism"] = cobordism_json(*c.presentation, *c.cobordism);
    }
    if (c.lens) {
      auto [p, qq] = *c.lens;
      covers::FiniteAbelianGroup g(std::vector<Integer>{Integer(p)});
      algebra::RatMatrix pairing(1, 1);
      pairing(0, 0) = algebra::make_rational(qq, p);
      out["lens"] = {p, qq};
      out["form"] = form_json(covers::LinkingForm(g, pairing), opt);
      out["vanishing_d_invariants"] = dinv::lens_vector(p, qq).count_zeros();
    }
    covers_out.push_back(out);
  };
  for (auto& c : r.covers) one(c);
  if (seifert_q > 0) {
    if (!r.seifert) throw DomainError("record '" + r.name + "' has no Seifert matrix");
    CoverRecord c;
    c.q = seifert_q;
    c.presentation = covers::branched_cover_presentation(*r.seifert, seifert_q);
    one(c);
  }
  return {{"name", r.name}, {"covers", covers_out}};
}

json chain_json(const CoverRecord& c) {
  if (!c.presentation || !c.cobordism || !c.chain) throw DomainError("chain needs a presentation, a cobordism and chain data");
  json steps = json::array();
  std::vector<Rational> offsets;
  const Cobordism& cb = *c.cobordism;
  IntMatrix m = covers::cobordism_intersection_matrix(*c.presentation, cb.curves, cb.framings, cb.orders);
  {
    json s = cobordism_json(*c.presentation, cb);
    bool ok = lattice::definiteness(m) == lattice::Definiteness::negative && cb.characteristic > 0 &&
              s["characteristic"]["is_characteristic"].get<bool>();
    if (!ok) throw DomainError("the cobordism step must be negative definite with a characteristic basis vector");
    std::size_t i = static_cast<std::size_t>(cb.characteristic - 1);
    dinv::DefiniteBound b{static_cast<long>(m.rows()), Rational(m(i, i)) / Rational(cb.orders[i] * cb.orders[i]),
                          dinv::Definite::negative};
    s["offset"] = q(b.offset());
    offsets.push_back(b.offset());
    steps.push_back(s);
  }
  for (auto& f : c.chain->definite) {
    if (lattice::definiteness(f) != lattice::Definiteness::negative) throw DomainError("chain step is not negative definite");
    auto cs = lattice::min_characteristic_square(f);
    dinv::DefiniteBound b{static_cast<long>(f.rows()), Rational(cs.value), dinv::Definite::negative};
    offsets.push_back(b.offset());
    steps.push_back({{"form", matrix(f)},
                     {"definiteness", "negative"},
                     {"min_characteristic_square", z(cs.value)},
                     {"characteristic_vector", vec(cs.x)},
                     {"offset", q(b.offset())}});
  }
  std::vector<dinv::ChainCase> cases;
  json terms = json::array();
  for (auto& t : c.chain->terminals) {
    Rational total = 0;
    json parts = json::array();
    for (auto& p : t.parts) {
      Rational v = part_value(p);
      total += v;
      json pj = {{"label", p.label}, {"reversed", p.reversed}, {"d", q(v)}};
      if (p.lens) pj["lens"] = {p.lens->first, p.lens->second};
      else pj["surgery"] = {{"alexander", poly(*p.surgery_alexander)}, {"n", p.surgery_n}};
      parts.push_back(pj);
    }
    cases.push_back({t.name, total});
    terms.push_back({{"name", t.name}, {"parts", parts}, {"d", q(total)}});
  }
  auto res = dinv::chain_bound(offsets, cases);
  json cb_out = json::object();
  for (std::size_t i = 0; i < cases.size(); ++i) cb_out[cases[i].name] = q(res.case_bounds[i]);
  return {{"steps", steps}, {"terminals", terms}, {"case_bounds", cb_out}, {"bound", q(res.bound)}};
}

json lens_json(long p, long qq) {
  auto v = dinv::lens_vector(p, qq);
  json vals = json::array();
  for (auto& x : v.values) vals.push_back(q(x));
  return {{"p", p}, {"q", qq}, {"d", vals}, {"zeros", v.count_zeros()}};
}

json surgery_json(const SymLaurentPoly& delta, long n) {
  auto v = dinv::surgery_vector(delta, n);
  json vals = json::array();
  for (auto& x : v.values) vals.push_back(q(x));
  return {{"alexander", poly(delta)}, {"n", n}, {"d", vals}};
}

json lattice_json(const IntMatrix& form, const IntMatrix* other, long bound) {
  if (!form.symmetric()) throw DomainError("form must be square and symmetric");
  auto kind = lattice::definiteness(form);
  json out = {{"form", matrix(form)},
              {"dimension", form.rows()},
              {"determinant", z(algebra::determinant(form))},
              {"signature", algebra::symmetric_signature(form).signature()},
              {"definiteness", lattice::to_string(kind)},
              {"even", lattice::is_even(form)}};
  if (kind == lattice::Definiteness::positive || kind == lattice::Definiteness::negative) {
    auto cs = lattice::min_characteristic_square(form);
    out["min_characteristic_square"] = z(cs.value);
    out["characteristic_vector"] = vec(cs.x);
    out["diagonalizable"] = lattice::is_diagonalizable(form);
  }
  if (other) {
    auto r = lattice::congruence_search(form, *other, bound);
    json c = {{"exhausted", r.exhausted}};
    if (r.witness) c["witness"] = matrix(*r.witness);
    if (!r.reason.empty()) c["reason"] = r.reason;
    out["congruence"] = c;
  }
  return out;
}

json cg_norm_json(const Integer& n, long d) {
  auto v = cg::norm_test(n, d);
  json fac = json::array();
  for (auto& [p, e] : v.factorization) fac.push_back({z(p), e});
  json out = {{"n", z(n)}, {"d", d}, {"status", cg::to_string(v.status)}, {"factorization", fac}};
  if (v.witness) out["witness"] = {{"prime", z(v.witness->prime)}, {"order", v.witness->order}};
  if (!v.notes.empty()) out["notes"] = v.notes;
  return out;
}

json cg_orbit_json(const SymLaurentPoly& delta, long d, const std::vector<long>& orbit) {
  auto p = cg::orbit_product(delta, d, orbit);
  json out = {{"alexander", poly(delta)}, {"d", d}, {"orbit", orbit}, {"product", p.value.to_string()}};
  if (p.rational) {
    out["product"] = q(*p.rational);
    if (p.rational->get_den() == 1 && *p.rational != 0) out["norm_test"] = cg_norm_json(p.rational->get_num(), d);
  }
  return out;
}

json derive_json(const fildsl::Program& prog, const RunOptions& opt) {
  fildsl::Engine eng(prog, {opt.max_n, opt.enum_bound});
  return fildsl::report_json(eng);
}

std::string derive_text(const fildsl::Program& prog, const RunOptions& opt) {
  fildsl::Engine eng(prog, {opt.max_n, opt.enum_bound});
  return fildsl::report_text(eng);
}

std::string bundled_suite(const RunOptions& opt, ResultCache& cache) {
  const std::string knots_path = opt.data_dir + "/ledger.knots";
  const std::string chain_path = opt.data_dir + "/cover_chain.json";
  const std::string knots_text = read_file(knots_path), chain_text = read_file(chain_path);
  const std::string flags = std::to_string(opt.max_n) + "/" + std::to_string(opt.enum_bound);
  auto section = [&](const std::string& name, const std::string& input, const std::function<json()>& f) {
    return json::parse(cache.get({"paper-suite", name, flags, input}, [&] { return f().dump(); }));
  };

  json out = json::object();
  out["lens_25_2"] = section("lens", "", [] {
    json j = lens_json(25, 2);
    covers::FiniteAbelianGroup g(std::vector<Integer>{Integer(25)});
    algebra::RatMatrix pairing(1, 1);
    pairing(0, 0) = algebra::make_rational(2, 25);
    RunOptions o;
    j["form"] = form_json(covers::LinkingForm(g, pairing), o);
    return j;
  });
  out["surgery"] = section("surgery", "", [] {
    SymLaurentPoly rht({Integer(-1), Integer(1)});
    return json{{"minus7_unknot_label0", q(dinv::d_lens(7, 1, 0))},
                {"plus6_rht_label0", q(dinv::d_surgery_lspace(rht, 6, 0))},
                {"plus6_rht_label3", q(dinv::d_surgery_lspace(rht, 6, 3))},
                {"plus6_unknot_label0", q(dinv::d_unknot_surgery(6, 0))}};
  });
  out["cover_chain"] = section("cover_chain", chain_text, [&] {
    auto in = ingest_json(chain_text);
    json recs = json::array();
    for (auto& r : in.records) {
      json j = cover_json(r, opt);
      json chains = json::array();
      for (auto& c : r.covers)
        if (c.chain) chains.push_back(chain_json(c));
      j["chains"] = chains;
      recs.push_back(j);
    }
    return recs;
  });
  out["casson_gordon"] = section("casson_gordon", "", [] {
    SymLaurentPoly j({Integer(23), Integer(-11)});
    return cg_orbit_json(j, 7, {1, 2, 4});
  });
  out["ledger"] = section("ledger", knots_text, [&] { return derive_json(fildsl::parse(knots_text), opt); });
  return render(out, opt.format);
}

std::string render(const json& j, const std::string& format) {
  if (format == "json") return j.dump(2) + "\n";
  if (format != "text") throw DomainError("unknown format '" + format + "'");
  std::ostringstream os;
  render_text(os, j, 0);
  return os.str();
}

}  // namespace bipolar::cli
