#include <bipolar/algebra/linear.hpp>
#include <bipolar/covers/covers.hpp>

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_set>

namespace bipolar::covers {

using algebra::frac;
using algebra::mod;

FramedPresentation::FramedPresentation(IntMatrix p, std::vector<std::string> l)
    : P(std::move(p)), labels(std::move(l)) {
  if (!P.symmetric()) throw DomainError("framing matrix must be square and symmetric");
  if (labels.empty())
    for (std::size_t i = 0; i < P.rows(); ++i) labels.push_back("g" + std::to_string(i + 1));
  if (labels.size() != P.rows()) throw DomainError("label count does not match the framing matrix");
}

std::size_t FramedPresentation::label_index(const std::string& name) const {
  auto it = std::find(labels.begin(), labels.end(), name);
  if (it == labels.end()) throw DomainError("unknown generator label '" + name + "'");
  return static_cast<std::size_t>(it - labels.begin());
}

FiniteAbelianGroup::FiniteAbelianGroup(const IntMatrix& p) {
  if (!p.square()) throw DomainError("presentation matrix must be square");
  auto s = algebra::smith_normal_form(p);
  if (s.rank() < p.rows()) throw DomainError("det P = 0: H_1 is infinite");
  auto d = s.diagonal();
  for (std::size_t j = 0; j < d.size(); ++j)
    if (d[j] > 1) {
      coords_.push_back(j);
      factors_.push_back(d[j]);
    }
  u_ = s.U;
  u_inv_ = algebra::unimodular_inverse(s.U);
}

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<Integer> factors) {
  for (auto& f : factors) {
    if (f < 1) throw DomainError("group factors must be positive");
    if (f > 1) factors_.push_back(f);
  }
  for (std::size_t j = 0; j < factors_.size(); ++j) coords_.push_back(j);
  u_ = u_inv_ = IntMatrix::identity(factors_.size());
}

Integer FiniteAbelianGroup::order() const {
  Integer n = 1;
  for (auto& f : factors_) n *= f;
  return n;
}

IntVector FiniteAbelianGroup::reduce(IntVector x) const {
  for (std::size_t k = 0; k < x.size(); ++k) x[k] = mod(x[k], factors_[k]);
  return x;
}

IntVector FiniteAbelianGroup::add(const IntVector& a, const IntVector& b) const {
  IntVector c(rank());
  for (std::size_t k = 0; k < rank(); ++k) c[k] = a[k] + b[k];
  return reduce(std::move(c));
}

IntVector FiniteAbelianGroup::scale(const Integer& s, const IntVector& a) const {
  IntVector c(rank());
  for (std::size_t k = 0; k < rank(); ++k) c[k] = s * a[k];
  return reduce(std::move(c));
}

bool FiniteAbelianGroup::is_zero(const IntVector& x) const {
  for (std::size_t k = 0; k < rank(); ++k)
    if (mod(x[k], factors_[k]) != 0) return false;
  return true;
}

Integer FiniteAbelianGroup::element_order(const IntVector& x) const {
  Integer o = 1;
  for (std::size_t k = 0; k < rank(); ++k) {
    Integer g;
    Integer r = mod(x[k], factors_[k]);
    mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), factors_[k].get_mpz_t());
    Integer ok = factors_[k] / g;
    mpz_lcm(o.get_mpz_t(), o.get_mpz_t(), ok.get_mpz_t());
  }
  return o;
}

IntVector FiniteAbelianGroup::image(const IntVector& original) const {
  IntVector y = u_.apply(original), out(rank());
  for (std::size_t k = 0; k < rank(); ++k) out[k] = mod(y[coords_[k]], factors_[k]);
  return out;
}

IntVector FiniteAbelianGroup::generator_image(std::size_t i) const {
  IntVector e(u_.cols(), Integer(0));
  e[i] = 1;
  return image(e);
}

IntVector FiniteAbelianGroup::lift(std::size_t k) const { return u_inv_.col(coords_[k]); }

std::uint64_t FiniteAbelianGroup::index_of(const IntVector& x) const {
  std::uint64_t idx = 0, radix = 1;
  for (std::size_t k = 0; k < rank(); ++k) {
    idx += mod(x[k], factors_[k]).get_ui() * radix;
    radix *= factors_[k].get_ui();
  }
  return idx;
}

IntVector FiniteAbelianGroup::element_at(std::uint64_t idx) const {
  IntVector x(rank());
  for (std::size_t k = 0; k < rank(); ++k) {
    unsigned long f = factors_[k].get_ui();
    x[k] = static_cast<unsigned long>(idx % f);
    idx /= f;
  }
  return x;
}

namespace {

IntMatrix relation_lattice(const FiniteAbelianGroup& g, const std::vector<IntVector>& gens) {
  const std::size_t k = g.rank();
  IntMatrix rows(gens.size() + k, k);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < k; ++j) rows(i, j) = gens[i][j];
  for (std::size_t j = 0; j < k; ++j) rows(gens.size() + j, j) = g.factors()[j];
  return algebra::hermite_normal_form(rows);
}

}  // namespace

Integer FiniteAbelianGroup::subgroup_order(const std::vector<IntVector>& gens) const {
  if (rank() == 0) return 1;
  IntMatrix h = relation_lattice(*this, gens);
  Integer idx = 1;
  for (std::size_t j = 0; j < rank(); ++j) idx *= h(j, j);
  return order() / idx;
}

std::vector<IntVector> FiniteAbelianGroup::canonical_generators(const std::vector<IntVector>& gens) const {
  std::vector<IntVector> out;
  if (rank() == 0) return out;
  IntMatrix h = relation_lattice(*this, gens);
  for (std::size_t i = 0; i < h.rows(); ++i) {
    IntVector r = reduce(h.row(i));
    if (!is_zero(r)) out.push_back(r);
  }
  return out;
}

std::string LabelRelation::to_string() const {
  std::string s = label + " =";
  if (terms.empty()) return s + " 0";
  bool first = true;
  for (auto& [c, name] : terms) {
    s += first ? " " : " + ";
    first = false;
    if (c != 1) s += c.get_str() + "*";
    s += name;
  }
  return s;
}

LabelBasis derived_relations(const FramedPresentation& fp, const FiniteAbelianGroup& g,
                             std::uint64_t enum_bound) {
  LabelBasis out;
  std::vector<IntVector> basis;
  std::vector<std::size_t> basis_idx;
  Integer current = 1;
  for (std::size_t i = 0; i < fp.size() && current < g.order(); ++i) {
    auto trial = basis;
    trial.push_back(g.generator_image(i));
    Integer o = g.subgroup_order(trial);
    if (o > current) {
      basis = trial;
      basis_idx.push_back(i);
      out.basis.push_back(fp.labels[i]);
      current = o;
    }
  }
  std::vector<Integer> orders;
  Integer combos = 1;
  for (auto& b : basis) {
    orders.push_back(g.element_order(b));
    combos *= orders.back();
  }
  if (combos > enum_bound) throw BoundExceeded("enum-bound", "label relation search exceeds the enumeration bound");
  const std::uint64_t total = combos.get_ui();
  for (std::size_t i = 0; i < fp.size(); ++i) {
    if (std::find(basis_idx.begin(), basis_idx.end(), i) != basis_idx.end()) continue;
    IntVector target = g.generator_image(i);
    for (std::uint64_t c = 0; c < total; ++c) {
      std::uint64_t rest = c;
      IntVector sum(g.rank(), Integer(0));
      std::vector<Integer> coef;
      for (std::size_t b = 0; b < basis.size(); ++b) {
        unsigned long o = orders[b].get_ui();
        coef.push_back(static_cast<unsigned long>(rest % o));
        rest /= o;
        sum = g.add(sum, g.scale(coef.back(), basis[b]));
      }
      if (sum == target) {
        LabelRelation rel{fp.labels[i], {}};
        for (std::size_t b = 0; b < basis.size(); ++b)
          if (coef[b] != 0) rel.terms.push_back({coef[b], out.basis[b]});
        out.relations.push_back(rel);
        break;
      }
    }
  }
  return out;
}

FiniteAbelianGroup homology_from_presentation(const FramedPresentation& fp) { return FiniteAbelianGroup(fp.P); }

FramedPresentation branched_cover_presentation(const seifert::SeifertMatrix& s, long q) {
  if (q < 2) throw DomainError("cover order must be at least 2");
  const IntMatrix& v = s.matrix();
  const std::size_t n = v.rows(), blocks = static_cast<std::size_t>(q - 1);
  IntMatrix vt = v.transpose(), sym = v + vt;
  IntMatrix p(n * blocks, n * blocks);
  for (std::size_t b = 0; b < blocks; ++b)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        p(b * n + i, b * n + j) = sym(i, j);
        if (b + 1 < blocks) {
          p(b * n + i, (b + 1) * n + j) = -v(i, j);
          p((b + 1) * n + i, b * n + j) = -vt(i, j);
        }
      }
  std::vector<std::string> labels;
  for (std::size_t b = 0; b < blocks; ++b)
    for (std::size_t i = 0; i < n; ++i) labels.push_back("m" + std::to_string(b + 1) + "_" + std::to_string(i + 1));
  return FramedPresentation(p, labels);
}

LinkingForm::LinkingForm(const FramedPresentation& fp) : group_(fp.P), labels_(fp.labels) {
  RatMatrix inv = algebra::rational_inverse(fp.P);
  const std::size_t k = group_.rank();
  pairing_ = RatMatrix(k, k);
  std::vector<algebra::RatVector> lifts;
  for (std::size_t a = 0; a < k; ++a) {
    algebra::RatVector r;
    for (auto& x : group_.lift(a)) r.push_back(Rational(x));
    lifts.push_back(r);
  }
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) pairing_(a, b) = frac(-algebra::bilinear(inv, lifts[a], lifts[b]));
  for (std::size_t i = 0; i < fp.size(); ++i) images_.push_back(group_.generator_image(i));
}

LinkingForm::LinkingForm(FiniteAbelianGroup g, RatMatrix pairing) : group_(std::move(g)), pairing_(std::move(pairing)) {
  const std::size_t k = group_.rank();
  if (pairing_.rows() != k || !pairing_.symmetric()) throw DomainError("pairing must be a symmetric rank x rank matrix");
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      pairing_(a, b) = frac(pairing_(a, b));
      if (frac(pairing_(a, b) * Rational(group_.factors()[a])) != 0)
        throw DomainError("pairing is not well defined modulo the group orders");
    }
    labels_.push_back("g" + std::to_string(a + 1));
    IntVector e(k, Integer(0));
    e[a] = 1;
    images_.push_back(e);
  }
}

Rational LinkingForm::operator()(const IntVector& x, const IntVector& y) const {
  Rational s = 0;
  for (std::size_t a = 0; a < group_.rank(); ++a) {
    if (x[a] == 0) continue;
    for (std::size_t b = 0; b < group_.rank(); ++b) s += Rational(x[a] * y[b]) * pairing_(a, b);
  }
  return frac(s);
}

LinkingForm LinkingForm::negated() const {
  LinkingForm f = *this;
  for (std::size_t a = 0; a < group_.rank(); ++a)
    for (std::size_t b = 0; b < group_.rank(); ++b) f.pairing_(a, b) = frac(-pairing_(a, b));
  return f;
}

namespace {

std::string describe(const LinkingForm& form, const std::vector<std::uint64_t>& elems,
                     const std::vector<IntVector>& gens) {
  const auto& g = form.group();
  std::unordered_set<std::uint64_t> members(elems.begin(), elems.end());
  const auto& labels = form.labels();
  const auto& images = form.label_images();
  if (elems.size() == 1) return "<0>";
  // A single multiple of one label.
  for (std::size_t i = 0; i < labels.size(); ++i) {
    Integer o = g.element_order(images[i]);
    for (Integer k = 1; k < o; ++k) {
      IntVector x = g.scale(k, images[i]);
      if (!members.count(g.index_of(x))) continue;
      if (g.element_order(x) == Integer(static_cast<unsigned long>(elems.size())))
        return "<" + (k == 1 ? std::string() : k.get_str()) + labels[i] + ">";
      break;
    }
  }
  std::vector<IntVector> inside;
  std::string names;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (!g.is_zero(images[i]) && members.count(g.index_of(images[i]))) {
      inside.push_back(images[i]);
      names += (names.empty() ? "" : ", ") + labels[i];
    }
  if (!inside.empty() && g.subgroup_order(inside) == Integer(static_cast<unsigned long>(elems.size())))
    return "<" + names + ">";
  std::string s = "<";
  for (std::size_t i = 0; i < gens.size(); ++i) {
    s += i ? ", (" : "(";
    for (std::size_t k = 0; k < gens[i].size(); ++k) s += (k ? "," : "") + gens[i][k].get_str();
    s += ")";
  }
  return s + ">";
}

}  // namespace

MetabolizerSearch metabolizers(const LinkingForm& form, std::uint64_t enum_bound) {
  const auto& g = form.group();
  MetabolizerSearch out;
  Integer n = g.order();
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0) {
    out.reason = "order " + n.get_str() + " is not a perfect square";
    return out;
  }
  if (n > enum_bound)
    throw BoundExceeded("enum-bound", "group order " + n.get_str() + " exceeds the enumeration bound " +
                                          std::to_string(enum_bound));
  Integer root;
  mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
  const std::uint64_t total = n.get_ui(), target = root.get_ui();

  std::vector<std::uint64_t> isotropic;
  for (std::uint64_t i = 1; i < total; ++i) {
    IntVector x = g.element_at(i);
    if (form(x, x) == 0) isotropic.push_back(i);
  }

  struct Node {
    std::vector<std::uint64_t> elems;
    std::vector<IntVector> gens;
  };
  std::set<std::vector<std::uint64_t>> seen;
  std::deque<Node> queue;
  queue.push_back({{0}, {}});
  seen.insert({0});
  std::vector<std::pair<std::vector<std::uint64_t>, std::vector<IntVector>>> hits;
  if (target == 1) hits.push_back({{0}, {}});
  while (!queue.empty()) {
    Node h = std::move(queue.front());
    queue.pop_front();
    if (h.elems.size() >= target) continue;
    std::unordered_set<std::uint64_t> members(h.elems.begin(), h.elems.end());
    for (std::uint64_t xi : isotropic) {
      if (members.count(xi)) continue;
      IntVector x = g.element_at(xi);
      bool orth = true;
      for (auto& gen : h.gens)
        if (form(x, gen) != 0) {
          orth = false;
          break;
        }
      if (!orth) continue;
      // H + <x> as the union of cosets H + jx until jx falls back into H.
      std::vector<std::uint64_t> elems;
      IntVector jx(g.rank(), Integer(0));
      std::size_t cosets = 0;
      do {
        for (std::uint64_t hi : h.elems) elems.push_back(g.index_of(g.add(g.element_at(hi), jx)));
        jx = g.add(jx, x);
        ++cosets;
      } while (!members.count(g.index_of(jx)) && elems.size() <= target);
      if (elems.size() > target) continue;
      std::sort(elems.begin(), elems.end());
      if (!seen.insert(elems).second) continue;
      Node next{elems, h.gens};
      next.gens.push_back(x);
      if (elems.size() == target)
        hits.push_back({elems, next.gens});
      else
        queue.push_back(std::move(next));
    }
  }
  std::sort(hits.begin(), hits.end());
  for (auto& [elems, gens] : hits) {
    Metabolizer m;
    m.elements = elems;
    m.generators = g.canonical_generators(gens);
    m.description = describe(form, elems, m.generators);
    out.found.push_back(std::move(m));
  }
  return out;
}

bool verify_metabolizer(const LinkingForm& form, const Metabolizer& m) {
  const auto& g = form.group();
  Integer size = g.subgroup_order(m.generators);
  if (size * size != g.order()) return false;
  if (size != Integer(static_cast<unsigned long>(m.elements.size()))) return false;
  for (auto& a : m.generators)
    for (auto& b : m.generators)
      if (form(a, b) != 0) return false;
  for (auto e : m.elements)
    for (auto& b : m.generators)
      if (form(g.element_at(e), b) != 0) return false;
  return true;
}

Rational hoste_linking(const FramedPresentation& fp, const IntVector& a, const IntVector& b,
                       const Rational& lk_ambient) {
  if (a.size() != fp.size() || b.size() != fp.size()) throw DomainError("class vector has the wrong length");
  RatMatrix inv = algebra::rational_inverse(fp.P);
  algebra::RatVector ra, rb;
  for (auto& x : a) ra.push_back(Rational(x));
  for (auto& x : b) rb.push_back(Rational(x));
  return lk_ambient - algebra::bilinear(inv, ra, rb);
}

IntMatrix cobordism_intersection_matrix(const FramedPresentation& fp, const IntMatrix& curves,
                                        const std::vector<Integer>& framings, const std::vector<Integer>& orders,
                                        const std::optional<RatMatrix>& ambient_lk) {
  const std::size_t m = curves.cols();
  if (curves.rows() != fp.size()) throw DomainError("curve classes must have one row per generator");
  if (framings.size() != m || orders.size() != m) throw DomainError("one framing and one order per curve");
  if (ambient_lk && (ambient_lk->rows() != m || ambient_lk->cols() != m))
    throw DomainError("ambient linking matrix has the wrong size");
  RatMatrix inv = fp.size() ? algebra::rational_inverse(fp.P) : RatMatrix();
  std::vector<algebra::RatVector> q(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (auto& x : curves.col(i)) q[i].push_back(Rational(x));
    algebra::RatVector pre = fp.size() ? inv.apply(q[i]) : algebra::RatVector{};
    for (auto& x : pre)
      if (Rational(x * Rational(orders[i])).get_den() != 1)
        throw DomainError("order " + orders[i].get_str() + " does not kill curve " + std::to_string(i + 1));
  }
  IntMatrix out(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Rational lk = i == j ? Rational(framings[i]) : (ambient_lk ? (*ambient_lk)(i, j) : Rational(0));
      Rational corr = fp.size() ? algebra::bilinear(inv, q[i], q[j]) : Rational(0);
      Rational e = Rational(orders[i] * orders[j]) * (lk - corr);
      if (e.get_den() != 1) throw DomainError("intersection entry is not integral");
      out(i, j) = e.get_num();
    }
  return out;
}

}  // namespace bipolar::covers
