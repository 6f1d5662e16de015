#include <sstream>

#include "evtforge/specalg.h"

namespace evtforge {

namespace {

using K = StructuredSpec::Kind;

std::string maplet(const Maplet& m) {
  if (m.from_status || m.to_status) {
    std::string l = "⟨" + m.from + (m.from_status ? ", " + to_string(*m.from_status) : "") + "⟩";
    std::string r = "⟨" + m.to + (m.to_status ? ", " + to_string(*m.to_status) : "") + "⟩";
    return l + " ↦ " + r;
  }
  return m.from + " ↦ " + m.to;
}

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

std::string event_name(const std::string& e) { return e == kInit ? "INITIALISATION" : e; }

class Printer {
 public:
  explicit Printer(const PrintOptions& o) : opts_(o) {}

  // Prints `sp` at the given precedence: 0 then, 1 and, 2 with/hide, 3 atom.
  std::string expr(const StructuredSpec& sp, int prec, int indent) {
    switch (sp.kind) {
      case K::Named: return sp.name;
      case K::Flat: return "(\n" + body(sp.body, indent + 2) + pad(indent) + ")";
      case K::Presentation: {
        std::string s = "presentation";
        for (const auto& x : sp.sentences) s += "\n" + pad(indent + 2) + to_string(x);
        return s;
      }
      case K::Translate: return operand(sp.children[0], indent) + " with " + to_string(sp.morph);
      case K::Hide: return operand(sp.children[0], indent) + " hide via " + to_string(sp.morph);
      case K::Embed: {
        const auto& c = sp.children[0];
        if (opts_.elide && sp.elidable) return expr(c, prec, indent);
        return operand(c, indent) + " with ρ";
      }
      case K::Sum: {
        std::vector<std::string> parts;
        for (const auto& c : sp.children) {
          if (opts_.elide && c.elidable && c.kind != K::Embed) continue;
          parts.push_back(expr(c, 2, indent));
        }
        std::string s = join(parts, " and ");
        return prec > 1 && parts.size() > 1 ? "(" + s + ")" : s;
      }
      case K::Enrich: {
        const auto& ext = sp.children[1];
        std::string s = expr(sp.children[0], 0, indent) + " then";
        if (ext.kind == K::Flat) {
          s += "\n" + body(ext.body, indent + 2);
          s.pop_back();
        } else {
          s += " " + expr(ext, 1, indent);
        }
        return prec > 0 ? "(" + s + ")" : s;
      }
    }
    return "";
  }

  std::string body(const Body& b, int indent) {
    std::ostringstream os;
    std::string p = pad(indent);
    if (!b.sorts.empty()) {
      os << p << "sorts " << join(b.sorts, ", ") << "\n";
    } else if (!b.dynamic) {
      for (const auto& op : b.ops)
        if (op.type.kind == TypeExpr::Kind::Nat) {
          os << p << "sort ℕ\n";
          break;
        }
    }
    if (!b.ops.empty()) {
      os << p << "ops";
      for (const auto& op : b.ops) os << " " << op.name << ":" << to_string(op.type);
      os << "\n";
    }
    for (size_t i = 0; i < b.axioms.size(); ++i)
      os << p << (i ? "  " : ". ") << to_string(b.axioms[i].pred) << "\n";
    if (b.variant) os << p << "variant " << to_string(*b.variant) << "\n";
    if (b.dynamic) {
      os << p << "Events\n";
      for (const auto& e : b.events) event(os, e, indent + 2);
    }
    return os.str();
  }

 private:
  std::string operand(const StructuredSpec& c, int indent) {
    if (c.kind == K::Named) return c.name;
    if (c.kind == K::Embed && opts_.elide && c.elidable) return operand(c.children[0], indent);
    return "(" + expr(c, 0, indent) + ")";
  }

  void event(std::ostream& os, const EventDef& e, int indent) {
    std::string p = pad(indent);
    os << p << event_name(e.name);
    if (e.name != kInit) os << " " << to_string(e.status);
    os << "\n";
    p = pad(indent + 2);
    if (!e.params.empty()) os << p << "any " << join(e.params, " ") << "\n";
    auto preds = [&](const char* kw, const std::vector<Labelled>& ps) {
      for (size_t i = 0; i < ps.size(); ++i)
        os << p << (i ? std::string(std::string(kw).size() + 1, ' ') : std::string(kw) + " ") << to_string(ps[i].pred)
           << "\n";
    };
    preds("when", e.guards);
    preds("with", e.witnesses);
    for (size_t i = 0; i < e.actions.size(); ++i) {
      const auto& a = e.actions[i];
      os << p << (i ? "        " : "thenAct ") << join(a.vars, ", ");
      if (a.such_that) {
        os << " :| " << to_string(*a.such_that);
      } else {
        std::vector<std::string> es;
        for (const auto& x : a.exprs) es.push_back(to_string(x));
        os << " := " << join(es, ", ");
      }
      os << "\n";
    }
  }

  static std::string pad(int n) { return std::string(size_t(n), ' '); }

  PrintOptions opts_;
};

}  // namespace

std::string to_string(const MorphSpec& m) {
  if (!m.name.empty()) return m.name;
  std::vector<std::string> items;
  switch (m.kind) {
    case MorphSpec::Kind::HideEv:
      for (const auto& e : m.events) items.push_back(event_name(e));
      return "σ_h{" + join(items, ", ") + "}";
    case MorphSpec::Kind::Rename:
      for (const auto& mp : m.maplets) items.push_back(maplet(mp));
      return "σ_m{" + join(items, ", ") + "}";
    case MorphSpec::Kind::Map:
      for (const auto& mp : m.maplets) items.push_back(maplet(mp));
      return "{" + join(items, ", ") + "}";
  }
  return "";
}

std::string pretty_print(const StructuredSpec& sp, const PrintOptions& opts) {
  Printer p(opts);
  if (sp.kind == K::Flat) {
    std::string b = p.body(sp.body, 2);
    return b.empty() ? b : b.substr(0, b.size() - 1);
  }
  return "  " + p.expr(sp, 0, 2);
}

std::string pretty_print(const SpecDef& d, const PrintOptions& opts) {
  std::string inner = pretty_print(d.spec, opts);
  std::string s = "spec " + d.name + " =" + (inner.empty() ? "" : "\n" + inner) + "\nend\n";
  for (size_t i = 0; i < d.where.size(); ++i)
    s += std::string(i ? "      " : "where ") + d.where[i].first + " = " + to_string(d.where[i].second) +
         (i + 1 < d.where.size() ? ",\n" : "\n");
  return s;
}

std::string pretty_print(const SpecLibrary& lib, const PrintOptions& opts) {
  std::string out;
  for (const auto& n : lib.order) {
    if (!out.empty()) out += "\n";
    out += pretty_print(lib.get(n), opts);
  }
  return out;
}

}  // namespace evtforge
