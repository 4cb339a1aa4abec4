#include <bipolar/algebra/linear.hpp>
#include <bipolar/cg/cg.hpp>
#include <bipolar/covers/covers.hpp>
#include <bipolar/dinv/dinv.hpp>
#include <bipolar/fildsl/engine.hpp>
#include <bipolar/lattice/lattice.hpp>

#include <algorithm>
#include <sstream>

namespace bipolar::fildsl {

using algebra::IntMatrix;
using algebra::IntVector;
using algebra::SymLaurentPoly;

namespace {

const Family kFamilies[] = {Family::P, Family::N, Family::B, Family::T};

std::string level_text(int n) { return n >= kInfinity ? "inf" : std::to_string(n); }

int add_levels(int n, long k) { return n >= kInfinity ? kInfinity : static_cast<int>(std::min<long>(n + k, kInfinity)); }

Family mirror(Family f) {
  if (f == Family::P) return Family::N;
  if (f == Family::N) return Family::P;
  return f;
}

DerivPtr make(Claim c, std::string rule, std::string note, std::vector<DerivPtr> premises = {},
              std::map<std::string, std::string> params = {}, std::vector<Evidence> ev = {}) {
  auto d = std::make_shared<Derivation>();
  d->claim = std::move(c);
  d->rule = std::move(rule);
  d->note = std::move(note);
  d->premises = std::move(premises);
  d->params = std::move(params);
  d->evidence = std::move(ev);
  return d;
}

int lvl(const DerivPtr& d) { return d->claim.level.n; }

// Monotone updates of a verdict: membership levels only rise, exclusion levels only fall.
struct Builder {
  Verdict& v;

  int clamp(int n) const { return n >= kInfinity ? kInfinity : std::min(n, v.max_n); }

  bool in(Family f, int n, const std::string& rule, const std::string& note, std::vector<DerivPtr> prem,
          std::map<std::string, std::string> params = {}, std::vector<Evidence> ev = {}) {
    n = clamp(n);
    auto it = v.in.find(f);
    if (it != v.in.end() && lvl(it->second) >= n) return false;
    v.in[f] = make({v.subject, ClaimKind::in, {f, n}, ""}, rule, note, std::move(prem), std::move(params), std::move(ev));
    return true;
  }
  bool not_in(Family f, int n, const std::string& rule, const std::string& note, std::vector<DerivPtr> prem,
              std::map<std::string, std::string> params = {}, std::vector<Evidence> ev = {}) {
    auto it = v.not_in.find(f);
    if (it != v.not_in.end() && lvl(it->second) <= n) return false;
    v.not_in[f] = make({v.subject, ClaimKind::not_in, {f, n}, ""}, rule, note, std::move(prem), std::move(params), std::move(ev));
    return true;
  }
  bool no_multiple(Family f, int n, const std::string& rule, const std::string& note, std::vector<DerivPtr> prem) {
    auto it = v.no_multiple_in.find(f);
    if (it != v.no_multiple_in.end() && lvl(it->second) <= n) return false;
    v.no_multiple_in[f] = make({v.subject, ClaimKind::no_multiple_in, {f, n}, ""}, rule, note, std::move(prem));
    return true;
  }
  bool flag(DerivPtr& slot, ClaimKind k, const std::string& rule, const std::string& note, std::vector<DerivPtr> prem,
            std::map<std::string, std::string> params = {}, std::vector<Evidence> ev = {}) {
    if (slot) return false;
    slot = make({v.subject, k, {}, ""}, rule, note, std::move(prem), std::move(params), std::move(ev));
    return true;
  }
};

IntMatrix matrix_from(const Value& v) {
  const auto& rows = v.list();
  std::size_t n = rows.size(), m = n ? rows[0].list().size() : 0;
  IntMatrix out(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& r = rows[i].list();
    if (r.size() != m) throw DomainError("ragged matrix " + print(v));
    for (std::size_t j = 0; j < m; ++j) out(i, j) = r[j].integer();
  }
  return out;
}

std::vector<Integer> integers_from(const Value& v) {
  std::vector<Integer> out;
  for (auto& x : v.list()) out.push_back(x.integer());
  return out;
}

std::vector<long> longs_from(const Value& v) {
  std::vector<long> out;
  for (auto& x : v.list()) out.push_back(x.integer());
  return out;
}

bool is_square(const Integer& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()); }

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

std::string fact_sign(const std::string& fact_text) {
  auto a = fact_text.find('('), b = fact_text.find(')');
  if (a == std::string::npos || b == std::string::npos) return "";
  return fact_text.substr(a + 1, b - a - 1);
}

std::string fact_name(const std::string& fact_text) {
  auto cut = fact_text.find_first_of("( ");
  return fact_text.substr(0, cut);
}

}  // namespace

std::string Claim::text() const {
  switch (kind) {
    case ClaimKind::in: return subject + " in " + to_string(level);
    case ClaimKind::not_in: return subject + " not in " + to_string(level);
    case ClaimKind::slice: return subject + " is slice";
    case ClaimKind::top_slice: return subject + " is topologically slice";
    case ClaimKind::alexander_one: return subject + " has Alexander polynomial one";
    case ClaimKind::not_algebraically_slice: return subject + " is not algebraically slice";
    case ClaimKind::fact: return subject + " asserts " + detail;
    case ClaimKind::computed: return subject + " computed " + detail;
    case ClaimKind::case_closed: return subject + " case " + detail + " closed against " + to_string(level);
    case ClaimKind::no_multiple_in: return subject + " has no nonzero multiple in " + to_string(level);
  }
  return subject;
}

std::optional<int> Verdict::in_level(Family f) const {
  auto it = in.find(f);
  if (it == in.end()) return std::nullopt;
  return lvl(it->second);
}

std::optional<int> Verdict::not_in_level(Family f) const {
  auto it = not_in.find(f);
  if (it == not_in.end()) return std::nullopt;
  return lvl(it->second);
}

bool Verdict::proven_in(const Level& l) const {
  auto n = in_level(l.family);
  return n && *n >= l.n;
}

bool Verdict::proven_not_in(const Level& l) const {
  auto n = not_in_level(l.family);
  return n && *n <= l.n;
}

std::vector<DerivPtr> Verdict::derivations() const {
  std::vector<DerivPtr> out;
  for (auto f : kFamilies)
    if (in.count(f)) out.push_back(in.at(f));
  for (auto f : kFamilies)
    if (not_in.count(f)) out.push_back(not_in.at(f));
  for (auto f : kFamilies)
    if (no_multiple_in.count(f)) out.push_back(no_multiple_in.at(f));
  for (auto& d : {slice, top, alexander_one, not_algebraically_slice})
    if (d) out.push_back(d);
  return out;
}

bool Verdict::same_levels(const Verdict& o) const {
  for (auto f : kFamilies) {
    if (in_level(f) != o.in_level(f) || not_in_level(f) != o.not_in_level(f)) return false;
    bool a = no_multiple_in.count(f), b = o.no_multiple_in.count(f);
    if (a != b || (a && lvl(no_multiple_in.at(f)) != lvl(o.no_multiple_in.at(f)))) return false;
  }
  return !slice == !o.slice && !top == !o.top && !alexander_one == !o.alexander_one &&
         !not_algebraically_slice == !o.not_algebraically_slice;
}

Engine::Engine(Program prog, Options opt) : prog_(std::move(prog)), opt_(opt) {
  if (opt_.max_n < 0 || opt_.max_n > 16) throw DomainError("max_n must lie in 0..16");
}

Evidence Engine::record(const std::string& id, const std::string& value) {
  for (auto& e : log_)
    if (e.id == id) {
      if (e.value != value) throw InvariantViolation("evidence " + id + " recomputed with a different value");
      return e;
    }
  log_.push_back({id, value});
  return log_.back();
}

const Verdict& Engine::verdict(const std::string& name) { return named(name).v; }

Verdict Engine::infer(const KnotExpr& e) { return term(e).v; }

SymLaurentPoly Engine::alexander_of(const std::string& name) {
  const TermInfo& t = named(name);
  if (t.alexander) return *t.alexander;
  throw DomainError("no Alexander polynomial known for '" + name + "'");
}

const Engine::TermInfo& Engine::named(const std::string& name) {
  if (auto it = named_.find(name); it != named_.end()) return it->second;
  if (active_.count(name)) throw DomainError("cyclic reference through '" + name + "'");
  active_.insert(name);
  TermInfo t;
  if (const KnotDecl* k = prog_.knot(name)) {
    t = atom(*k);
  } else {
    auto views = prog_.views(name);
    if (views.empty()) throw DomainError("unknown atom '" + name + "'");
    t.v.subject = name;
    t.v.max_n = opt_.max_n;
    Builder b{t.v};
    for (auto* view : views) {
      TermInfo vi = term(*view->expr);
      std::string note = "view " + print(*view->expr);
      for (auto& [f, d] : vi.v.in) b.in(f, lvl(d), "view", note, {d});
      for (auto& [f, d] : vi.v.not_in) b.not_in(f, lvl(d), "view", note, {d});
      b.flag(t.v.slice, ClaimKind::slice, "view", note, vi.v.slice ? std::vector<DerivPtr>{vi.v.slice} : std::vector<DerivPtr>{});
      if (!vi.v.slice) t.v.slice = nullptr;
      if (vi.v.top) b.flag(t.v.top, ClaimKind::top_slice, "view", note, {vi.v.top});
      if (vi.v.alexander_one) b.flag(t.v.alexander_one, ClaimKind::alexander_one, "view", note, {vi.v.alexander_one});
      if (vi.v.not_algebraically_slice)
        b.flag(t.v.not_algebraically_slice, ClaimKind::not_algebraically_slice, "view", note, {vi.v.not_algebraically_slice});
      if (!t.seifert && vi.seifert) t.seifert = vi.seifert;
      if (!t.alexander && vi.alexander) t.alexander = vi.alexander;
    }
  }
  for (auto* s : prog_.splits(name)) apply_split(t, *s);
  closure(t.v);
  active_.erase(name);
  return named_[name] = std::move(t);
}

Engine::TermInfo Engine::atom(const KnotDecl& k) {
  TermInfo t;
  t.v.subject = k.name;
  t.v.max_n = opt_.max_n;
  Builder b{t.v};
  for (auto& f : k.facts) {
    auto fd = make({k.name, ClaimKind::fact, {}, print(f)}, "fact", f.provenance.empty() ? "asserted" : f.provenance);
    std::string sign = f.args.size() == 1 && f.args[0].is_name() ? f.args[0].name() : "";
    if (f.name == "slice") {
      b.flag(t.v.slice, ClaimKind::slice, "asserted", "slice by assertion", {fd});
    } else if (f.name == "ribbon") {
      b.flag(t.v.slice, ClaimKind::slice, "R2", "ribbon knots are slice", {fd});
    } else if (f.name == "unknot_by_positive_crossings") {
      b.in(Family::P, 0, "R1", "changing positive crossings reaches a slice knot", {fd});
    } else if (f.name == "unknot_by_negative_crossings") {
      b.in(Family::N, 0, "R1", "changing negative crossings reaches a slice knot", {fd});
    } else if (f.name == "topologically_slice") {
      b.flag(t.v.top, ClaimKind::top_slice, "asserted", "asserted", {fd});
    } else if (f.name == "alexander_polynomial_one") {
      b.flag(t.v.alexander_one, ClaimKind::alexander_one, "asserted", "asserted", {fd});
    } else if (f.name == "tau_sign" || f.name == "s_sign") {
      std::string inv = f.name == "tau_sign" ? "tau" : "s";
      if (sign == "negative")
        b.not_in(Family::P, 0, "R11", inv + " is nonnegative on P0", {fd}, {{"test", "sign_fact"}});
      else if (sign == "positive")
        b.not_in(Family::N, 0, "R11", inv + " is nonpositive on N0", {fd}, {{"test", "sign_fact"}});
    } else if (f.name == "epsilon_sign") {
      if (sign != "zero") b.not_in(Family::B, 0, "R11", "epsilon vanishes on B0", {fd}, {{"test", "sign_fact"}});
    } else if (f.name == "asserted_not_in") {
      Level l = *parse_level(sign);
      b.not_in(l.family, l.n, "asserted", "asserted", {fd});
    }
  }
  if (k.seifert) {
    t.seifert = seifert::SeifertMatrix(matrix_from(*k.seifert));
    t.alexander = seifert::alexander(*t.seifert);
    if (k.alexander && SymLaurentPoly(integers_from(*k.alexander)) != *t.alexander)
      throw InvariantViolation("'" + k.name + "': stated Alexander polynomial disagrees with the Seifert form");
  } else if (k.alexander) {
    t.alexander = SymLaurentPoly(integers_from(*k.alexander));
    if (t.alexander->at_one() != 1) throw InvariantViolation("'" + k.name + "': Alexander polynomial must satisfy D(1) = 1");
  }
  seifert_hooks(t);
  cover_hooks(t, k);
  return t;
}

void Engine::seifert_hooks(TermInfo& t) {
  if (!t.seifert && !t.alexander) return;
  Builder b{t.v};
  const std::string base = t.v.subject + "/";
  std::optional<Evidence> zero_ev;
  if (t.seifert) {
    auto sf = seifert::signature_function(*t.seifert);
    Evidence ez = record(base + "signature.identically_zero", sf.identically_zero() ? "true" : "false");
    Evidence emax = record(base + "signature.max", std::to_string(sf.max_value()));
    Evidence emin = record(base + "signature.min", std::to_string(sf.min_value()));
    zero_ev = ez;
    if (!sf.identically_zero())
      b.not_in(Family::B, 0, "R11", "the signature function vanishes on B0", {}, {{"test", "signature_nonzero"}}, {ez});
    if (sf.max_value() > 0)
      b.not_in(Family::P, 0, "R11", "the signature function is nonpositive on P0", {}, {{"test", "signature_positive"}}, {emax});
    if (sf.min_value() < 0)
      b.not_in(Family::N, 0, "R11", "the signature function is nonnegative on N0", {}, {{"test", "signature_negative"}}, {emin});
  }
  const SymLaurentPoly& delta = *t.alexander;
  Evidence ealex = record(base + "alexander", delta.to_string());
  if (delta == SymLaurentPoly())
    b.flag(t.v.alexander_one, ClaimKind::alexander_one, "R8", "computed Alexander polynomial is one", {},
           {{"source", "computed"}}, {ealex});
  Integer det = abs(delta.at_minus_one());
  Evidence edet = record(base + "determinant", det.get_str());
  Evidence earf = record(base + "arf", std::to_string(seifert::arf(delta)));
  std::vector<Evidence> reasons;
  if (!is_square(det)) reasons.push_back(edet);
  if (earf.value != "0") reasons.push_back(earf);
  if (zero_ev && zero_ev->value == "false") reasons.push_back(*zero_ev);
  if (!reasons.empty()) {
    b.flag(t.v.not_algebraically_slice, ClaimKind::not_algebraically_slice, "R11",
           "a classical algebraic sliceness condition fails", {}, {{"test", "algebraic"}}, reasons);
    for (Family f : {Family::P, Family::N})
      b.not_in(f, 1, "R11", "knots in P1 or N1 are algebraically slice", {t.v.not_algebraically_slice},
               {{"test", "not_algebraically_slice"}});
  }
}

void Engine::cover_hooks(TermInfo& t, const KnotDecl& k) {
  Builder b{t.v};
  for (auto& cv : k.covers) {
    const Call& c = cv.call();
    if (c.head != "cover") throw DomainError("'" + k.name + "': expected cover(...), got " + print(cv));
    long q = c.at("q").integer();
    if (!cg::is_prime_power(q)) throw DomainError("'" + k.name + "': cover order must be a prime power");
    const Value* lens = c.find("lens");
    if (!lens) continue;
    auto pq = longs_from(*lens);
    if (pq.size() != 2) throw DomainError("'" + k.name + "': lens=[p, q] expected");
    const std::string base = k.name + "/cover" + std::to_string(q) + ".";
    covers::FiniteAbelianGroup g(std::vector<Integer>{Integer(pq[0])});
    algebra::RatMatrix pairing(1, 1);
    pairing(0, 0) = algebra::make_rational(pq[1], pq[0]);
    covers::LinkingForm form(g, pairing);
    auto ms = covers::metabolizers(form, opt_.enum_bound);
    auto dv = dinv::lens_vector(pq[0], pq[1]);
    std::vector<std::string> dtext;
    for (auto& x : dv.values) dtext.push_back(algebra::to_string(x));
    record(base + "dinvariants", join(dtext, " "));
    Evidence em = record(base + "metabolizers", std::to_string(ms.found.size()));
    Evidence ez = record(base + "zeros", std::to_string(dv.count_zeros()));
    if (ms.found.size() != 1) continue;
    Evidence eo = record(base + "metabolizer_order", std::to_string(ms.found[0].elements.size()));
    if (dv.count_zeros() < ms.found[0].elements.size())
      b.not_in(Family::B, 1, "R11",
               "with a unique metabolizer, B1 forces at least as many vanishing d-invariants as its order", {},
               {{"test", "dcount"}}, {em, eo, ez});
  }
}

namespace {

std::vector<std::uint64_t> cyclic_subgroup(const covers::FiniteAbelianGroup& g, const IntVector& x) {
  std::vector<std::uint64_t> out;
  IntVector cur(g.rank(), Integer(0));
  do {
    out.push_back(g.index_of(cur));
    cur = g.add(cur, x);
  } while (!g.is_zero(cur));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

void Engine::apply_split(TermInfo& t, const SplitDecl& s) {
  const Level target = s.target;
  if (target.family != Family::P && target.family != Family::N)
    throw DomainError("split targets must be P_n or N_n, got " + to_string(target));
  const Call& cv = s.cover.call();
  long q = cv.at("q").integer();
  if (!cg::is_prime_power(q)) throw DomainError("split cover order must be a prime power");
  std::vector<std::string> labels;
  for (auto& l : cv.at("labels").list()) labels.push_back(l.name());
  covers::FramedPresentation fp(matrix_from(cv.at("presentation")), labels);
  covers::LinkingForm form(fp);
  auto ms = covers::metabolizers(form, opt_.enum_bound);
  const auto& g = form.group();
  const std::string base = t.v.subject + "/split-" + to_string(target) + ".";
  std::vector<std::string> descs;
  for (auto& m : ms.found) descs.push_back(m.description);
  Evidence emet = record(base + "metabolizers", join(descs, ", "));
  auto metab = make({t.v.subject, ClaimKind::computed, {}, "metabolizers"}, "computed", "metabolizer enumeration", {}, {},
                    {emet});

  auto image_of = [&](const std::string& label) { return form.label_images().at(fp.label_index(label)); };

  OpenSplit open{target, {}, {}};
  std::vector<DerivPtr> closed{metab};
  for (auto& m : ms.found) {
    const SplitCase* hit = nullptr;
    for (auto& c : s.cases)
      if (cyclic_subgroup(g, image_of(c.label)) == m.elements) hit = &c;
    if (!hit) {
      open.unclosed.push_back(m.description + ": no case given");
      continue;
    }
    const Call& ev = hit->evidence.call();
    const std::string cb = base + hit->label + ".";
    std::string reason;
    DerivPtr done;
    std::map<std::string, std::string> params{{"case", hit->label}};
    if (ev.head == "dchain") {
      params["test"] = "dchain";
      if (target.family != Family::N) {
        reason = "d-invariant chains give upper bounds and close only N cases";
      } else if (target.n < 1) {
        reason = "the metabolizer statement needs level at least 1";
      } else {
        std::vector<Evidence> evs;
        IntVector z(g.rank(), Integer(0));
        std::vector<std::string> zt;
        for (auto& term : ev.at("element").list()) {
          const auto& pr = term.list();
          if (pr.size() != 2) throw DomainError("element terms are [label, coefficient] pairs");
          z = g.add(z, g.scale(pr[1].integer(), image_of(pr[0].name())));
          zt.push_back(algebra::to_string(pr[1].number()) + "*" + pr[0].name());
        }
        record(cb + "element", join(zt, " + "));
        bool inside = std::binary_search(m.elements.begin(), m.elements.end(), g.index_of(z));
        evs.push_back(record(cb + "element_in_metabolizer", inside ? "true" : "false"));
        std::vector<Rational> offsets;
        int step_no = 0;
        for (auto& stv : ev.at("steps").list()) {
          const Call& st = stv.call();
          const std::string sb = cb + "step" + std::to_string(++step_no) + ".";
          IntMatrix form_m;
          Rational c1sq;
          if (st.head == "cobordism") {
            auto fr = integers_from(st.at("framings"));
            auto ord = integers_from(st.at("orders"));
            form_m = covers::cobordism_intersection_matrix(fp, matrix_from(st.at("curves")), fr, ord);
            long ci = st.at("characteristic").integer();
            if (ci < 1 || static_cast<std::size_t>(ci) > form_m.rows()) throw DomainError("characteristic index out of range");
            IntVector e(form_m.rows(), Integer(0));
            e[ci - 1] = 1;
            record(sb + "intersection", algebra::to_string(form_m));
            if (!lattice::is_characteristic(form_m, e)) {
              reason = "e" + std::to_string(ci) + " is not characteristic";
              break;
            }
            record(sb + "characteristic", "e" + std::to_string(ci));
            c1sq = Rational(form_m(ci - 1, ci - 1)) / Rational(ord[ci - 1] * ord[ci - 1]);
          } else if (st.head == "definite") {
            form_m = matrix_from(st.at("form"));
            record(sb + "intersection", algebra::to_string(form_m));
            if (lattice::definiteness(form_m) == lattice::Definiteness::negative)
              c1sq = lattice::min_characteristic_square(form_m).value;
          } else {
            throw DomainError("unknown chain step " + st.head);
          }
          auto kind = lattice::definiteness(form_m);
          record(sb + "definiteness", lattice::to_string(kind));
          record(sb + "signature", std::to_string(algebra::symmetric_signature(form_m).signature()));
          if (kind != lattice::Definiteness::negative) {
            reason = "step " + std::to_string(step_no) + " is not negative definite";
            break;
          }
          dinv::DefiniteBound db{static_cast<long>(form_m.rows()), c1sq, dinv::Definite::negative};
          record(sb + "c1sq", algebra::to_string(c1sq));
          evs.push_back(record(sb + "offset", algebra::to_string(db.offset())));
          offsets.push_back(db.offset());
        }
        if (reason.empty()) {
          std::function<Rational(const Value&)> part = [&](const Value& pv) -> Rational {
            const Call& pc = pv.call();
            if (pc.head == "lens")
              return dinv::d_lens(pc.at("p").integer(), pc.at("q").integer(), pc.at("label").integer());
            if (pc.head == "reversed") return -part(pc.args.at(0).value);
            if (pc.head == "surgery") {
              const std::string& kn = pc.at("knot").name();
              const KnotDecl* kd = prog_.knot(kn);
              bool lspace = kd && std::any_of(kd->facts.begin(), kd->facts.end(),
                                              [](const Fact& f) { return f.name == "lspace_knot"; });
              if (!lspace) throw DomainError("surgery terminal needs an L-space knot, '" + kn + "' is not marked lspace_knot");
              return dinv::d_surgery_lspace(alexander_of(kn), pc.at("n").integer(), pc.at("label").integer());
            }
            throw DomainError("unknown terminal part " + pc.head);
          };
          std::vector<dinv::ChainCase> cases;
          for (auto& tv : ev.at("terminals").list()) {
            const Call& tc = tv.call();
            Rational total = 0;
            for (auto& pv : tc.at("parts").list()) total += part(pv);
            std::string nm = tc.at("name").string();
            evs.push_back(record(cb + "terminal." + nm, algebra::to_string(total)));
            cases.push_back({nm, total});
          }
          auto cr = dinv::chain_bound(offsets, cases);
          for (std::size_t i = 0; i < cases.size(); ++i)
            record(cb + "case_bound." + cases[i].name, algebra::to_string(cr.case_bounds[i]));
          Evidence eb = record(cb + "bound", algebra::to_string(cr.bound));
          evs.push_back(eb);
          if (!inside) reason = "the chain element is not in the metabolizer";
          else if (cr.bound >= 0) reason = "chain bound " + eb.value + " is not negative";
          else
            done = make({t.v.subject, ClaimKind::case_closed, target, m.description}, "R11",
                        "d-invariants are nonnegative on the metabolizer, the chain bounds one below zero", {}, params,
                        evs);
        }
      }
    } else if (ev.head == "cg") {
      params["test"] = "cg";
      if (target.n < 2) {
        reason = "the Casson-Gordon case needs level at least 2";
      } else {
        cg::CharacterData chi;
        chi.q = ev.find("q") ? ev.at("q").integer() : q;
        chi.d = ev.at("d").integer();
        chi.orbit = longs_from(ev.at("orbit"));
        if (auto* mul = ev.find("multiplier")) chi.multiplier = mul->integer();
        std::vector<std::string> hyps;
        if (auto* h = ev.find("hypotheses"))
          for (auto& x : h->list()) hyps.push_back(x.string());
        params["hypotheses"] = join(hyps, "; ");
        if (chi.q != q) {
          reason = "character cover order differs from the split cover";
        } else {
          auto rep = cg::cg_obstruction(alexander_of(ev.at("companion").name()), chi, hyps);
          std::vector<Evidence> evs;
          evs.push_back(record(cb + "orbit_product", rep.product.rational ? algebra::to_string(*rep.product.rational)
                                                                           : rep.product.value.to_string()));
          evs.push_back(record(cb + "norm", rep.verdict ? cg::to_string(rep.verdict->status) : "undetermined"));
          if (rep.verdict && rep.verdict->witness)
            evs.push_back(record(cb + "witness", rep.verdict->witness->prime.get_str() + " of order " +
                                                     std::to_string(rep.verdict->witness->order) + " mod " +
                                                     std::to_string(chi.d)));
          if (rep.obstructed)
            done = make({t.v.subject, ClaimKind::case_closed, target, m.description}, "R11",
                        "the orbit product is not a norm, so this metabolizer cannot occur", {}, params, evs);
          else
            reason = "norm test did not obstruct";
        }
      }
    } else {
      throw DomainError("unknown case evidence " + ev.head);
    }
    if (done) {
      closed.push_back(done);
      open.closed.push_back(m.description);
    } else {
      open.unclosed.push_back(m.description + ": " + reason);
    }
  }
  if (open.unclosed.empty()) {
    Builder{t.v}.not_in(target.family, target.n, "R11", "every metabolizer case is closed", closed, {{"test", "split"}});
  } else {
    t.v.open_splits.push_back(open);
  }
}

Engine::TermInfo Engine::term(const KnotExpr& e) {
  if (e.op == KnotExpr::Op::atom) return named(e.name);
  TermInfo t;
  t.v.subject = print(e);
  t.v.max_n = opt_.max_n;
  Builder b{t.v};
  switch (e.op) {
    case KnotExpr::Op::sum: {
      TermInfo a = term(*e.kids[0]), c = term(*e.kids[1]);
      for (Family f : {Family::P, Family::N})
        if (a.v.in.count(f) && c.v.in.count(f))
          b.in(f, std::min(lvl(a.v.in[f]), lvl(c.v.in[f])), "R3", "P_n and N_n are closed under connected sum",
               {a.v.in[f], c.v.in[f]});
      if (a.v.slice && c.v.slice) b.flag(t.v.slice, ClaimKind::slice, "R3", "slice knots are closed under sum", {a.v.slice, c.v.slice});
      if (a.v.top && c.v.top)
        b.flag(t.v.top, ClaimKind::top_slice, "R3", "topologically slice knots are closed under sum", {a.v.top, c.v.top});
      if (a.v.alexander_one && c.v.alexander_one)
        b.flag(t.v.alexander_one, ClaimKind::alexander_one, "R3", "Alexander polynomials multiply under sum",
               {a.v.alexander_one, c.v.alexander_one});
      if (a.seifert && c.seifert) t.seifert = *a.seifert + *c.seifert;
      if (a.alexander && c.alexander) t.alexander = *a.alexander * *c.alexander;
      break;
    }
    case KnotExpr::Op::neg: {
      TermInfo a = term(*e.kids[0]);
      const std::string note = "reversed mirror exchanges P_n and N_n";
      for (auto& [f, d] : a.v.in) b.in(mirror(f), lvl(d), "R4", note, {d});
      for (auto& [f, d] : a.v.not_in) b.not_in(mirror(f), lvl(d), "R4", note, {d});
      const std::string keep = "preserved by reversed mirror";
      if (a.v.slice) b.flag(t.v.slice, ClaimKind::slice, "R4", keep, {a.v.slice});
      if (a.v.top) b.flag(t.v.top, ClaimKind::top_slice, "R4", keep, {a.v.top});
      if (a.v.alexander_one) b.flag(t.v.alexander_one, ClaimKind::alexander_one, "R4", keep, {a.v.alexander_one});
      if (a.v.not_algebraically_slice)
        b.flag(t.v.not_algebraically_slice, ClaimKind::not_algebraically_slice, "R4", keep, {a.v.not_algebraically_slice});
      if (a.seifert) t.seifert = seifert::SeifertMatrix(Integer(-1) * a.seifert->matrix());
      t.alexander = a.alexander;
      break;
    }
    case KnotExpr::Op::wh_pos:
    case KnotExpr::Op::wh_neg: {
      const bool positive = e.op == KnotExpr::Op::wh_pos;
      TermInfo c = term(*e.kids[0]);
      b.in(positive ? Family::P : Family::N, 0, "R1", "changing one clasp crossing unknots the double", {},
           {{"clasp", positive ? "positive" : "negative"}});
      b.flag(t.v.alexander_one, ClaimKind::alexander_one, "R8", "untwisted doubles have Alexander polynomial one", {},
             {{"source", "whitehead"}});
      auto pattern = make({"Whitehead pattern", ClaimKind::slice, {}, ""}, "flag", "the pattern is an unknot",
                          {}, {{"flag", "pattern_slice_on_unknot"}});
      for (Family f : {Family::P, Family::N}) {
        if (!c.v.in.count(f)) continue;
        b.in(f, add_levels(lvl(c.v.in[f]), 1), "R5", "infection along a commutator curve raises the level by its depth",
             {pattern, c.v.in[f]}, {{"depth", "1"}});
        b.in(f, kInfinity, "R7", "slice pattern, Alexander polynomial one, winding number zero",
             {pattern, c.v.in[f]}, {{"flags", "pattern_alexander_one winding_zero"}});
      }
      t.seifert = seifert::SeifertMatrix(positive ? IntMatrix{{-1, 1}, {0, 0}} : IntMatrix{{1, 1}, {0, 0}});
      t.alexander = SymLaurentPoly();
      break;
    }
    case KnotExpr::Op::infect: {
      TermInfo pat = named(e.name);
      TermInfo c = term(*e.kids[0]);
      DerivPtr pslice = pat.v.slice;
      if (e.has(InfectFlag::pattern_slice_on_unknot))
        pslice = make({e.name, ClaimKind::slice, {}, ""}, "flag", "declared on the infection", {},
                      {{"flag", "pattern_slice_on_unknot"}});
      const long k = e.depth;
      const std::string rule = k >= 1 ? "R5" : "R6";
      const std::string note = k >= 1 ? "infection along a commutator curve raises the level by its depth"
                                      : "satellites stay in the level of pattern and companion";
      for (Family f : {Family::P, Family::N}) {
        if (!c.v.in.count(f)) continue;
        DerivPtr pd = pslice ? pslice : (pat.v.in.count(f) ? pat.v.in[f] : nullptr);
        if (!pd) continue;
        int a = pslice ? kInfinity : lvl(pd);
        b.in(f, std::min(a, add_levels(lvl(c.v.in[f]), k)), rule, note, {pd, c.v.in[f]}, {{"depth", std::to_string(k)}});
      }
      const bool wz = e.has(InfectFlag::winding_zero);
      if (pslice && wz && e.has(InfectFlag::pattern_alexander_one))
        for (Family f : {Family::P, Family::N})
          if (c.v.in.count(f))
            b.in(f, kInfinity, "R7", "slice pattern, Alexander polynomial one, winding number zero", {pslice, c.v.in[f]},
                 {{"flags", "pattern_alexander_one winding_zero"}});
      DerivPtr ptop = pslice ? pslice : pat.v.top;
      if (e.has(InfectFlag::pattern_top_slice_on_unknot) && !ptop)
        ptop = make({e.name, ClaimKind::top_slice, {}, ""}, "flag", "declared on the infection", {},
                    {{"flag", "pattern_top_slice_on_unknot"}});
      if (ptop && c.v.top)
        b.flag(t.v.top, ClaimKind::top_slice, "R6", "satellite of topologically slice pattern and companion", {ptop, c.v.top});
      if (pslice && c.v.slice)
        b.flag(t.v.slice, ClaimKind::slice, "R6", "satellite of slice pattern and companion", {pslice, c.v.slice});
      if (wz && (e.has(InfectFlag::pattern_alexander_one) || pat.v.alexander_one))
        b.flag(t.v.alexander_one, ClaimKind::alexander_one, "R8",
               "winding number zero satellites keep the pattern's Alexander polynomial",
               pat.v.alexander_one ? std::vector<DerivPtr>{pat.v.alexander_one} : std::vector<DerivPtr>{},
               {{"source", "pattern"}});
      if (wz) {
        t.seifert = pat.seifert;
        t.alexander = pat.alexander;
      }
      break;
    }
    case KnotExpr::Op::atom: break;
  }
  seifert_hooks(t);
  closure(t.v);
  return t;
}

void Engine::closure(Verdict& v) {
  Builder b{v};
  const std::string r9 = "B_n is P_n intersected with N_n, and T_n is B_n intersected with T";
  for (bool changed = true; changed;) {
    changed = false;
    if (v.slice) {
      changed |= b.in(Family::P, kInfinity, "R2", "slice knots lie in every level", {v.slice});
      changed |= b.in(Family::N, kInfinity, "R2", "slice knots lie in every level", {v.slice});
      changed |= b.flag(v.top, ClaimKind::top_slice, "R2", "slice knots are topologically slice", {v.slice});
    }
    if (v.alexander_one)
      changed |= b.flag(v.top, ClaimKind::top_slice, "R8", "Alexander polynomial one implies topologically slice",
                        {v.alexander_one});
    auto has = [&](const std::map<Family, DerivPtr>& m, Family f) { return m.count(f) > 0; };
    if (has(v.in, Family::P) && has(v.in, Family::N))
      changed |= b.in(Family::B, std::min(lvl(v.in[Family::P]), lvl(v.in[Family::N])), "R9", r9,
                      {v.in[Family::P], v.in[Family::N]});
    if (has(v.in, Family::B)) {
      changed |= b.in(Family::P, lvl(v.in[Family::B]), "R9", r9, {v.in[Family::B]});
      changed |= b.in(Family::N, lvl(v.in[Family::B]), "R9", r9, {v.in[Family::B]});
      if (v.top) changed |= b.in(Family::T, lvl(v.in[Family::B]), "R9", r9, {v.in[Family::B], v.top});
    }
    if (has(v.in, Family::T)) {
      changed |= b.in(Family::B, lvl(v.in[Family::T]), "R9", r9, {v.in[Family::T]});
      changed |= b.flag(v.top, ClaimKind::top_slice, "R9", r9, {v.in[Family::T]});
    }
    for (Family f : {Family::P, Family::N})
      if (has(v.not_in, f)) changed |= b.not_in(Family::B, lvl(v.not_in[f]), "R9", r9, {v.not_in[f]});
    if (has(v.not_in, Family::B)) {
      int n = lvl(v.not_in[Family::B]);
      for (Family f : {Family::P, Family::N})
        if (has(v.in, f) && lvl(v.in[f]) >= n)
          changed |= b.not_in(mirror(f), n, "R9", r9, {v.not_in[Family::B], v.in[f]});
      changed |= b.not_in(Family::T, n, "R9", r9, {v.not_in[Family::B]});
    }
    if (has(v.not_in, Family::T) && v.top)
      changed |= b.not_in(Family::B, lvl(v.not_in[Family::T]), "R9", r9, {v.not_in[Family::T], v.top});
    for (Family f : {Family::P, Family::N}) {
      Family g = mirror(f);
      if (!has(v.in, f) || !has(v.not_in, g) || lvl(v.in[f]) < lvl(v.not_in[g])) continue;
      int n = lvl(v.not_in[g]);
      const std::string note = "a knot in one of P_n, N_n but outside the other has no nonzero multiple in B_n";
      changed |= b.no_multiple(Family::B, n, "R10", note, {v.in[f], v.not_in[g]});
      if (v.top) changed |= b.no_multiple(Family::T, n, "R10", note, {v.in[f], v.not_in[g], v.top});
    }
  }
  v.contradictions.clear();
  for (Family f : kFamilies)
    if (v.in.count(f) && v.not_in.count(f) && lvl(v.in[f]) >= lvl(v.not_in[f]))
      v.contradictions.push_back({f, v.in[f], v.not_in[f]});
}

Verdict infer(const Program& prog, const KnotExpr& e, int max_n) {
  Engine eng(prog, Options{max_n, 1000000});
  return eng.infer(e);
}

// Replay

namespace {

const Evidence* find_ev(const Derivation& d, const std::string& suffix) {
  for (auto& e : d.evidence)
    if (e.id.size() >= suffix.size() && e.id.compare(e.id.size() - suffix.size(), suffix.size(), suffix) == 0) return &e;
  return nullptr;
}

Rational ev_number(const Evidence* e) { return e ? algebra::parse_rational(e->value) : Rational(0); }

std::string param(const Derivation& d, const std::string& k) {
  auto it = d.params.find(k);
  return it == d.params.end() ? "" : it->second;
}

const Fact* find_fact(const Program& prog, const Claim& c) {
  const KnotDecl* k = prog.knot(c.subject);
  if (!k) return nullptr;
  for (auto& f : k->facts)
    if (print(f) == c.detail) return &f;
  return nullptr;
}

std::string check_rule(const Derivation& d, const Program& prog) {
  const Claim& c = d.claim;
  const auto& P = d.premises;
  auto is = [&](std::size_t i, ClaimKind k) { return i < P.size() && P[i]->claim.kind == k; };
  auto pl = [&](std::size_t i) { return P[i]->claim.level; };
  const bool in = c.kind == ClaimKind::in, out = c.kind == ClaimKind::not_in;

  if (d.rule == "fact") return c.kind == ClaimKind::fact && find_fact(prog, c) ? "" : "fact not found in the knot file";
  if (d.rule == "flag") return !param(d, "flag").empty() ? "" : "flag missing";
  if (d.rule == "computed") return !d.evidence.empty() ? "" : "computed claim without evidence";
  if (d.rule == "asserted") {
    if (!is(0, ClaimKind::fact)) return "asserted claim without a fact";
    std::string name = fact_name(P[0]->claim.detail);
    if (name == "slice") return c.kind == ClaimKind::slice ? "" : "slice fact";
    if (name == "topologically_slice") return c.kind == ClaimKind::top_slice ? "" : "top fact";
    if (name == "alexander_polynomial_one") return c.kind == ClaimKind::alexander_one ? "" : "alexander fact";
    if (name == "asserted_not_in") {
      auto l = parse_level(fact_sign(P[0]->claim.detail));
      return out && l && *l == c.level ? "" : "asserted level mismatch";
    }
    return "fact does not assert this claim";
  }
  if (d.rule == "view") {
    if (P.size() != 1) return "view needs one premise";
    const Claim& p = P[0]->claim;
    return p.kind == c.kind && p.level == c.level ? "" : "view claim differs from its source";
  }
  if (d.rule == "R1") {
    if (!in || c.level.n != 0) return "R1 concludes level 0 membership";
    std::string clasp = param(d, "clasp");
    if (!clasp.empty()) return (clasp == "positive") == (c.level.family == Family::P) ? "" : "clasp sign mismatch";
    if (!is(0, ClaimKind::fact)) return "R1 needs a crossing fact";
    std::string name = fact_name(P[0]->claim.detail);
    if (name == "unknot_by_positive_crossings" && c.level.family == Family::P) return "";
    if (name == "unknot_by_negative_crossings" && c.level.family == Family::N) return "";
    return "crossing fact does not match family";
  }
  if (d.rule == "R2") {
    if (c.kind == ClaimKind::slice) return is(0, ClaimKind::fact) && fact_name(P[0]->claim.detail) == "ribbon" ? "" : "ribbon fact";
    if (!is(0, ClaimKind::slice)) return "R2 needs a slice premise";
    if (c.kind == ClaimKind::top_slice) return "";
    return in && (c.level.family == Family::P || c.level.family == Family::N) ? "" : "R2 concludes P or N membership";
  }
  if (d.rule == "R3") {
    if (P.size() != 2 || P[0]->claim.kind != c.kind || P[1]->claim.kind != c.kind) return "R3 needs two like premises";
    if (!in) return "";
    if (pl(0).family != c.level.family || pl(1).family != c.level.family) return "family mismatch";
    return c.level.n <= std::min(pl(0).n, pl(1).n) ? "" : "level above the minimum";
  }
  if (d.rule == "R4") {
    if (P.size() != 1 || P[0]->claim.kind != c.kind) return "R4 needs one like premise";
    if (!in && !out) return "";
    return pl(0).family == mirror(c.level.family) && pl(0).n == c.level.n ? "" : "mirror level mismatch";
  }
  if (d.rule == "R5" || d.rule == "R6") {
    if (c.kind == ClaimKind::top_slice)
      return P.size() == 2 && (is(0, ClaimKind::top_slice) || is(0, ClaimKind::slice)) && is(1, ClaimKind::top_slice)
                 ? "" : "top satellite premises";
    if (c.kind == ClaimKind::slice) return is(0, ClaimKind::slice) && is(1, ClaimKind::slice) ? "" : "slice satellite premises";
    if (!in || P.size() != 2 || !is(1, ClaimKind::in)) return "infection needs pattern and companion";
    long k = std::stol(param(d, "depth").empty() ? "0" : param(d, "depth"));
    if (d.rule == "R6" && k != 0) return "R6 is the depth zero case";
    int a = is(0, ClaimKind::slice) ? kInfinity : (is(0, ClaimKind::in) && pl(0).family == c.level.family ? pl(0).n : -1);
    if (a < 0 || pl(1).family != c.level.family) return "family mismatch";
    return c.level.n <= std::min(a, add_levels(pl(1).n, k)) ? "" : "level exceeds the infection bound";
  }
  if (d.rule == "R7") {
    std::string flags = param(d, "flags");
    if (flags.find("pattern_alexander_one") == std::string::npos || flags.find("winding_zero") == std::string::npos)
      return "R7 needs Alexander polynomial one and winding number zero";
    if (!is(0, ClaimKind::slice) || !is(1, ClaimKind::in) || !in) return "R7 premises";
    return pl(1).family == c.level.family ? "" : "family mismatch";
  }
  if (d.rule == "R8") {
    if (c.kind == ClaimKind::top_slice) return is(0, ClaimKind::alexander_one) ? "" : "R8 needs Alexander polynomial one";
    if (c.kind != ClaimKind::alexander_one) return "R8 concludes Alexander polynomial one or topological sliceness";
    std::string src = param(d, "source");
    if (src == "computed") {
      auto* e = find_ev(d, "alexander");
      return e && e->value == "1" ? "" : "computed polynomial is not one";
    }
    return src == "whitehead" || src == "pattern" ? "" : "unknown source";
  }
  if (d.rule == "R9") {
    const Family f = c.level.family;
    const int n = c.level.n;
    if (in) {
      if (f == Family::B && P.size() == 2 && is(0, ClaimKind::in) && is(1, ClaimKind::in) && pl(0).family == Family::P &&
          pl(1).family == Family::N)
        return n <= std::min(pl(0).n, pl(1).n) ? "" : "level above the minimum";
      if ((f == Family::P || f == Family::N) && is(0, ClaimKind::in) && pl(0).family == Family::B)
        return n <= pl(0).n ? "" : "level";
      if (f == Family::T && is(0, ClaimKind::in) && pl(0).family == Family::B && is(1, ClaimKind::top_slice))
        return n <= pl(0).n ? "" : "level";
      if (f == Family::B && is(0, ClaimKind::in) && pl(0).family == Family::T) return n <= pl(0).n ? "" : "level";
      return "no R9 pattern for this membership";
    }
    if (c.kind == ClaimKind::top_slice) return is(0, ClaimKind::in) && pl(0).family == Family::T ? "" : "top from T";
    if (out) {
      if (!is(0, ClaimKind::not_in)) return "R9 exclusion needs an exclusion premise";
      const Level p0 = pl(0);
      if (f == Family::B && (p0.family == Family::P || p0.family == Family::N) && P.size() == 1) return n >= p0.n ? "" : "level";
      if ((f == Family::P || f == Family::N) && p0.family == Family::B && is(1, ClaimKind::in) &&
          pl(1).family == mirror(f) && pl(1).n >= p0.n)
        return n >= p0.n ? "" : "level";
      if (f == Family::T && p0.family == Family::B) return n >= p0.n ? "" : "level";
      if (f == Family::B && p0.family == Family::T && is(1, ClaimKind::top_slice)) return n >= p0.n ? "" : "level";
      return "no R9 pattern for this exclusion";
    }
    return "unexpected R9 claim";
  }
  if (d.rule == "R10") {
    if (c.kind != ClaimKind::no_multiple_in || P.size() < 2 || !is(0, ClaimKind::in) || !is(1, ClaimKind::not_in))
      return "R10 premises";
    if (pl(1).family != mirror(pl(0).family) || pl(0).n < pl(1).n) return "R10 needs membership at the excluded level";
    if (c.level.family == Family::T && !is(2, ClaimKind::top_slice)) return "T needs topological sliceness";
    return c.level.n >= pl(1).n ? "" : "level";
  }
  if (d.rule == "R11") {
    std::string test = param(d, "test");
    const Family f = c.level.family;
    if (test == "signature_nonzero") {
      auto* e = find_ev(d, "signature.identically_zero");
      return out && f == Family::B && e && e->value == "false" ? "" : "signature is not shown nonzero";
    }
    if (test == "signature_positive")
      return out && f == Family::P && ev_number(find_ev(d, "signature.max")) > 0 ? "" : "no positive signature value";
    if (test == "signature_negative")
      return out && f == Family::N && ev_number(find_ev(d, "signature.min")) < 0 ? "" : "no negative signature value";
    if (test == "sign_fact") {
      if (!is(0, ClaimKind::fact) || !out) return "sign rule premises";
      std::string name = fact_name(P[0]->claim.detail), sign = fact_sign(P[0]->claim.detail);
      if (name == "epsilon_sign") return f == Family::B && sign != "zero" ? "" : "epsilon sign";
      if (sign == "negative") return f == Family::P ? "" : "negative sign excludes P";
      if (sign == "positive") return f == Family::N ? "" : "positive sign excludes N";
      return "zero sign obstructs nothing";
    }
    if (test == "algebraic") {
      if (c.kind != ClaimKind::not_algebraically_slice) return "algebraic test concludes non-sliceness";
      for (auto& e : d.evidence) {
        if (e.id.ends_with("determinant") && !is_square(Integer(e.value))) return "";
        if (e.id.ends_with("arf") && e.value == "1") return "";
        if (e.id.ends_with("signature.identically_zero") && e.value == "false") return "";
      }
      return "no failing algebraic condition";
    }
    if (test == "not_algebraically_slice")
      return out && (f == Family::P || f == Family::N) && c.level.n >= 1 && is(0, ClaimKind::not_algebraically_slice)
                 ? "" : "algebraic exclusion";
    if (test == "dcount") {
      auto* m = find_ev(d, "metabolizers");
      Rational order = ev_number(find_ev(d, "metabolizer_order")), zeros = ev_number(find_ev(d, "zeros"));
      return out && f == Family::B && c.level.n >= 1 && m && m->value == "1" && zeros < order ? "" : "d-count condition";
    }
    if (test == "dchain") {
      auto* inside = find_ev(d, "element_in_metabolizer");
      auto* bound = find_ev(d, ".bound");
      return c.kind == ClaimKind::case_closed && f == Family::N && c.level.n >= 1 && inside && inside->value == "true" &&
                     bound && ev_number(bound) < 0
                 ? "" : "chain does not close the case";
    }
    if (test == "cg") {
      auto* norm = find_ev(d, "norm");
      return c.kind == ClaimKind::case_closed && c.level.n >= 2 && norm && norm->value == "not_norm" ? "" : "norm test";
    }
    if (test == "split") {
      if (!out || P.empty() || P[0]->claim.kind != ClaimKind::computed) return "split premises";
      auto* e = find_ev(*P[0], "metabolizers");
      if (!e) return "split without metabolizer list";
      std::vector<std::string> want, got;
      std::stringstream ss(e->value);
      for (std::string s; std::getline(ss, s, ',');) {
        s.erase(0, s.find_first_not_of(' '));
        if (!s.empty()) want.push_back(s);
      }
      for (std::size_t i = 1; i < P.size(); ++i) {
        const Claim& pc = P[i]->claim;
        if (pc.kind != ClaimKind::case_closed || !(pc.level == c.level)) return "case closed at another level";
        got.push_back(pc.detail);
      }
      std::sort(want.begin(), want.end());
      std::sort(got.begin(), got.end());
      return want == got ? "" : "cases do not cover the metabolizers";
    }
    return "unknown obstruction test";
  }
  return "unknown rule " + d.rule;
}

}  // namespace

ReplayResult replay(const Derivation& d, const Program& prog) {
  for (auto& p : d.premises) {
    auto r = replay(*p, prog);
    if (!r.ok) return r;
  }
  std::string why = check_rule(d, prog);
  if (!why.empty()) return {false, d.claim.text() + " [" + d.rule + "]: " + why};
  return {};
}

bool evidence_consistent(const Derivation& d, const std::vector<Evidence>& log) {
  for (auto& e : d.evidence)
    if (std::find(log.begin(), log.end(), e) == log.end()) return false;
  for (auto& p : d.premises)
    if (!evidence_consistent(*p, log)) return false;
  return true;
}

// Reports

nlohmann::json to_json(const Derivation& d) {
  nlohmann::json j;
  j["claim"] = d.claim.text();
  j["rule"] = d.rule;
  if (!d.note.empty()) j["note"] = d.note;
  if (!d.params.empty()) j["params"] = d.params;
  if (!d.evidence.empty()) {
    j["evidence"] = nlohmann::json::array();
    for (auto& e : d.evidence) j["evidence"].push_back({{"id", e.id}, {"value", e.value}});
  }
  if (!d.premises.empty()) {
    j["premises"] = nlohmann::json::array();
    for (auto& p : d.premises) j["premises"].push_back(to_json(*p));
  }
  return j;
}

namespace {

nlohmann::json level_json(int n) {
  if (n >= kInfinity) return "inf";
  return n;
}

std::string open_range(const Verdict& v, Family f) {
  auto a = v.in_level(f);
  auto z = v.not_in_level(f);
  if (a && *a >= kInfinity) return "";
  int lo = a ? *a + 1 : 0;
  int hi = z ? *z - 1 : v.max_n;
  hi = std::min(hi, v.max_n);
  if (lo > hi) return "";
  return lo == hi ? std::to_string(lo) : std::to_string(lo) + ".." + std::to_string(hi);
}

void text_tree(std::ostringstream& os, const Derivation& d, int depth) {
  os << std::string(4 + 2 * depth, ' ') << "- " << d.claim.text() << "  [" << d.rule;
  if (!d.note.empty()) os << ": " << d.note;
  os << "]";
  for (auto& e : d.evidence) os << " {" << e.id << " = " << e.value << "}";
  os << '\n';
  for (auto& p : d.premises) text_tree(os, *p, depth + 1);
}

}  // namespace

nlohmann::json to_json(const Verdict& v) {
  nlohmann::json j;
  j["subject"] = v.subject;
  j["max_n"] = v.max_n;
  j["in"] = nlohmann::json::object();
  j["not_in"] = nlohmann::json::object();
  j["no_multiple_in"] = nlohmann::json::object();
  j["open"] = nlohmann::json::object();
  for (Family f : kFamilies) {
    if (auto n = v.in_level(f)) j["in"][to_string(f)] = level_json(*n);
    if (auto n = v.not_in_level(f)) j["not_in"][to_string(f)] = level_json(*n);
    if (v.no_multiple_in.count(f)) j["no_multiple_in"][to_string(f)] = level_json(lvl(v.no_multiple_in.at(f)));
    if (auto r = open_range(v, f); !r.empty()) j["open"][to_string(f)] = r;
  }
  j["slice"] = static_cast<bool>(v.slice);
  j["topologically_slice"] = static_cast<bool>(v.top);
  j["alexander_one"] = static_cast<bool>(v.alexander_one);
  j["not_algebraically_slice"] = static_cast<bool>(v.not_algebraically_slice);
  j["open_splits"] = nlohmann::json::array();
  for (auto& s : v.open_splits)
    j["open_splits"].push_back({{"target", to_string(s.target)}, {"closed", s.closed}, {"unclosed", s.unclosed}});
  j["contradictions"] = nlohmann::json::array();
  for (auto& c : v.contradictions)
    j["contradictions"].push_back({{"family", to_string(c.family)}, {"in", to_json(*c.in)}, {"not_in", to_json(*c.not_in)}});
  j["derivations"] = nlohmann::json::array();
  for (auto& d : v.derivations()) j["derivations"].push_back(to_json(*d));
  return j;
}

std::string to_text(const Verdict& v) {
  std::ostringstream os;
  os << v.subject << '\n';
  auto levels = [&](const std::map<Family, DerivPtr>& m) {
    std::vector<std::string> out;
    for (Family f : kFamilies)
      if (m.count(f)) out.push_back(to_string(Level{f, lvl(m.at(f))}));
    return out.empty() ? std::string("none") : join(out, " ");
  };
  os << "  in:      " << levels(v.in) << '\n';
  os << "  not in:  " << levels(v.not_in) << '\n';
  if (!v.no_multiple_in.empty()) os << "  no nonzero multiple in: " << levels(v.no_multiple_in) << '\n';
  std::vector<std::string> flags;
  if (v.slice) flags.push_back("slice");
  if (v.top) flags.push_back("topologically_slice");
  if (v.alexander_one) flags.push_back("alexander_one");
  if (v.not_algebraically_slice) flags.push_back("not_algebraically_slice");
  if (!flags.empty()) os << "  flags:   " << join(flags, " ") << '\n';
  std::vector<std::string> open;
  for (Family f : kFamilies)
    if (auto r = open_range(v, f); !r.empty()) open.push_back(to_string(f) + "[" + r + "]");
  os << "  open:    " << (open.empty() ? "none" : join(open, " ")) << '\n';
  for (auto& s : v.open_splits)
    os << "  open split against " << to_string(s.target) << ": closed {" << join(s.closed, ", ") << "}, unclosed {"
       << join(s.unclosed, "; ") << "}\n";
  for (auto& c : v.contradictions)
    os << "  CONTRADICTION in " << to_string(c.family) << ": " << c.in->claim.text() << " vs " << c.not_in->claim.text()
       << '\n';
  os << "  derivations:\n";
  for (auto& d : v.derivations()) text_tree(os, *d, 0);
  return os.str();
}

nlohmann::json report_json(Engine& eng) {
  nlohmann::json j;
  j["max_n"] = eng.options().max_n;
  j["verdicts"] = nlohmann::json::array();
  for (auto& n : eng.program().names()) j["verdicts"].push_back(to_json(eng.verdict(n)));
  return j;
}

std::string report_text(Engine& eng) {
  std::string out;
  for (auto& n : eng.program().names()) out += to_text(eng.verdict(n)) + "\n";
  return out;
}

}  // namespace bipolar::fildsl
