#include <bipolar/cli/records.hpp>

#include <fstream>
#include <sstream>

namespace bipolar::cli {

namespace {

std::vector<Integer> integers(const nlohmann::json& j) {
  if (!j.is_array()) throw DomainError("expected an integer list");
  std::vector<Integer> out;
  for (auto& x : j) {
    if (x.is_number_integer()) out.emplace_back(x.get<long>());
    else if (x.is_string()) out.emplace_back(x.get<std::string>());
    else throw DomainError("expected an integer");
  }
  return out;
}

std::pair<long, long> pair_from(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw DomainError("expected [p, q]");
  return {j[0].get<long>(), j[1].get<long>()};
}

TerminalPart part_from(const nlohmann::json& j) {
  TerminalPart p;
  if (j.contains("lens")) p.lens = pair_from(j["lens"]);
  if (j.contains("surgery")) {
    p.surgery_alexander = poly_from_json(j["surgery"].at("alexander"));
    p.surgery_n = j["surgery"].at("n").get<long>();
  }
  if (p.lens.has_value() == p.surgery_alexander.has_value()) throw DomainError("terminal part needs exactly one of lens, surgery");
  p.label = j.value("label", 0L);
  p.reversed = j.value("reversed", false);
  return p;
}

CoverRecord cover_from(const nlohmann::json& j) {
  CoverRecord c;
  c.q = j.value("q", 2L);
  if (j.contains("presentation")) {
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j["labels"].get<std::vector<std::string>>();
    c.presentation = covers::FramedPresentation(matrix_from_json(j["presentation"]), labels);
  }
  if (j.contains("lens")) c.lens = pair_from(j["lens"]);
  if (j.contains("cobordism")) {
    const auto& b = j["cobordism"];
    Cobordism cb;
    cb.curves = matrix_from_json(b.at("curves"));
    cb.framings = integers(b.at("framings"));
    cb.orders = integers(b.at("orders"));
    cb.characteristic = b.value("characteristic", 0L);
    c.cobordism = cb;
  }
  if (j.contains("chain")) {
    Chain ch;
    for (auto& m : j["chain"].value("definite", nlohmann::json::array())) ch.definite.push_back(matrix_from_json(m));
    for (auto& t : j["chain"].at("terminals")) {
      Terminal term{t.at("name").get<std::string>(), {}};
      for (auto& p : t.at("parts")) term.parts.push_back(part_from(p));
      ch.terminals.push_back(std::move(term));
    }
    c.chain = ch;
  }
  if (!c.presentation && !c.lens) throw DomainError("cover needs a presentation or a lens");
  return c;
}

template <class F>
auto guarded(const std::string& name, F&& f) {
  try {
    return f();
  } catch (const InvariantViolation& e) {
    throw InvariantViolation("record '" + name + "': " + e.what());
  } catch (const fildsl::ParseError&) {
    throw;
  } catch (const DomainError& e) {
    throw DomainError("record '" + name + "': " + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("record '" + name + "': " + e.what());
  }
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

IntMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw DomainError("expected a matrix");
  std::size_t n = j.size(), m = n ? j[0].size() : 0;
  IntMatrix out(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = integers(j[i]);
    if (row.size() != m) throw DomainError("ragged matrix");
    for (std::size_t k = 0; k < m; ++k) out(i, k) = row[k];
  }
  return out;
}

SymLaurentPoly poly_from_json(const nlohmann::json& j) { return SymLaurentPoly(integers(j)); }

Ingested ingest_json(const std::string& text) {
  Ingested out;
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return out;
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw fildsl::ParseError(std::string("invalid JSON: ") + e.what(), 0, 0, e.byte);
  }
  const nlohmann::json& list = doc.is_array() ? doc : doc.value("records", nlohmann::json::array());
  std::size_t idx = 0;
  for (auto& r : list) {
    ++idx;
    std::string name = r.value("name", "record" + std::to_string(idx));
    out.records.push_back(guarded(name, [&] {
      KnotRecord k;
      k.name = name;
      if (r.contains("seifert")) k.seifert = seifert::SeifertMatrix(matrix_from_json(r["seifert"]));
      if (r.contains("alexander")) {
        k.alexander = poly_from_json(r["alexander"]);
        if (k.alexander->at_one() != 1) throw InvariantViolation("Alexander polynomial must satisfy D(1) = 1");
      } else if (k.seifert) {
        k.alexander = seifert::alexander(*k.seifert);
      }
      for (auto& c : r.value("covers", nlohmann::json::array())) k.covers.push_back(cover_from(c));
      if (r.contains("expr")) k.expr = r["expr"].get<std::string>();
      for (auto& f : r.value("facts", nlohmann::json::array())) k.facts.push_back(f.get<std::string>());
      if (!k.seifert && !k.alexander && k.covers.empty() && !k.expr && k.facts.empty())
        throw DomainError("record has no data");
      return k;
    }));
  }
  return out;
}

Ingested ingest_knots(const std::string& text) {
  Ingested out;
  fildsl::Program prog = fildsl::parse(text);
  for (auto& name : prog.names()) {
    out.records.push_back(guarded(name, [&] {
      KnotRecord k;
      k.name = name;
      if (const auto* d = prog.knot(name)) {
        for (auto& f : d->facts) k.facts.push_back(fildsl::print(f));
        if (d->seifert) {
          IntMatrix m(d->seifert->list().size(), d->seifert->list().empty() ? 0 : d->seifert->list()[0].list().size());
          for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = d->seifert->list()[i].list().at(j).integer();
          k.seifert = seifert::SeifertMatrix(m);
          k.alexander = seifert::alexander(*k.seifert);
        }
        for (auto& cv : d->covers) {
          const auto& c = cv.call();
          CoverRecord cr;
          cr.q = c.at("q").integer();
          if (const auto* l = c.find("lens")) cr.lens = {l->list().at(0).integer(), l->list().at(1).integer()};
          if (cr.lens) k.covers.push_back(cr);
        }
      } else {
        std::string views;
        for (auto* v : prog.views(name)) views += (views.empty() ? "" : " ; ") + fildsl::print(*v->expr);
        k.expr = views;
      }
      return k;
    }));
  }
  out.program = std::move(prog);
  return out;
}

Ingested ingest(const std::string& path) {
  std::string text = read_file(path);
  if (path.size() >= 6 && path.compare(path.size() - 6, 6, ".knots") == 0) return ingest_knots(text);
  return ingest_json(text);
}

}  // namespace bipolar::cli
