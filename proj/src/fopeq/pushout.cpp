#include <algorithm>
#include <numeric>

#include "evtforge/fopeq.h"

namespace evtforge {

std::map<std::pair<int, std::string>, std::string> name_pushout(
    const std::vector<std::string>& side0, const std::vector<std::string>& side1,
    const std::vector<std::pair<std::string, std::string>>& glue, const std::set<std::string>& taken) {
  std::vector<std::pair<int, std::string>> syms;
  std::map<std::pair<int, std::string>, size_t> id;
  for (const auto& n : side0) {
    if (id.emplace(std::pair{0, n}, syms.size()).second) syms.push_back({0, n});
  }
  for (const auto& n : side1) {
    if (id.emplace(std::pair{1, n}, syms.size()).second) syms.push_back({1, n});
  }
  std::vector<size_t> parent(syms.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [a, b] : glue) {
    auto ia = id.find({0, a});
    auto ib = id.find({1, b});
    if (ia == id.end() || ib == id.end()) throw StructuralError("pushout glue names an unknown symbol");
    size_t ra = find(ia->second), rb = find(ib->second);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }

  // Preferred name of a class: smallest side-0 member, else smallest side-1 member.
  std::map<size_t, std::pair<int, std::string>> pref;
  for (size_t i = 0; i < syms.size(); ++i) {
    size_t r = find(i);
    auto it = pref.find(r);
    if (it == pref.end() || syms[i] < it->second) pref[r] = syms[i];
  }
  std::vector<std::pair<std::pair<int, std::string>, size_t>> order;
  for (const auto& [r, p] : pref) order.push_back({p, r});
  std::sort(order.begin(), order.end());

  std::set<std::string> used = taken;
  std::map<size_t, std::string> chosen;
  for (const auto& [p, r] : order) {
    std::string name = p.second;
    for (int k = 1; used.count(name); ++k) name = p.second + "#" + std::to_string(k);
    used.insert(name);
    chosen[r] = name;
  }
  std::map<std::pair<int, std::string>, std::string> out;
  for (size_t i = 0; i < syms.size(); ++i) out[syms[i]] = chosen[find(i)];
  return out;
}

namespace {

std::vector<std::string> keys(const std::set<std::string>& s) { return {s.begin(), s.end()}; }

template <class M>
std::vector<std::string> keys(const M& m) {
  std::vector<std::string> out;
  for (const auto& [k, _] : m) out.push_back(k);
  return out;
}

std::vector<std::pair<std::string, std::string>> glue_of(const std::map<std::string, std::string>& m1,
                                                         const std::map<std::string, std::string>& m2,
                                                         const std::vector<std::string>& base) {
  std::vector<std::pair<std::string, std::string>> g;
  for (const auto& b : base) g.push_back({m1.at(b), m2.at(b)});
  return g;
}

}  // namespace

FopeqPushout fopeq_pushout(const FopeqSignature& base, const FopeqSignature& s1, const FopeqSignature& s2,
                           const FopeqMorphism& m1, const FopeqMorphism& m2) {
  validate(m1, base, s1);
  validate(m2, base, s2);
  FopeqPushout out;

  auto sorts = name_pushout(keys(s1.sorts), keys(s2.sorts), glue_of(m1.sorts, m2.sorts, keys(base.sorts)));
  for (const auto& s : s1.sorts) out.inj1.sorts[s] = sorts.at({0, s});
  for (const auto& s : s2.sorts) out.inj2.sorts[s] = sorts.at({1, s});
  for (const auto& [_, n] : sorts) out.sig.sorts.insert(n);

  auto ops = name_pushout(keys(s1.ops), keys(s2.ops), glue_of(m1.ops, m2.ops, keys(base.ops)));
  for (const auto& [n, op] : s1.ops) {
    out.inj1.ops[n] = ops.at({0, n});
    OpDecl d{ops.at({0, n}), {}, out.inj1.sort(op.result)};
    for (const auto& a : op.args) d.args.push_back(out.inj1.sort(a));
    out.sig.ops[d.name] = d;
  }
  for (const auto& [n, op] : s2.ops) {
    out.inj2.ops[n] = ops.at({1, n});
    OpDecl d{ops.at({1, n}), {}, out.inj2.sort(op.result)};
    for (const auto& a : op.args) d.args.push_back(out.inj2.sort(a));
    out.sig.ops.emplace(d.name, d);
  }

  auto preds = name_pushout(keys(s1.preds), keys(s2.preds), glue_of(m1.preds, m2.preds, keys(base.preds)));
  for (const auto& [n, p] : s1.preds) {
    out.inj1.preds[n] = preds.at({0, n});
    PredDecl d{preds.at({0, n}), {}};
    for (const auto& a : p.args) d.args.push_back(out.inj1.sort(a));
    out.sig.preds[d.name] = d;
  }
  for (const auto& [n, p] : s2.preds) {
    out.inj2.preds[n] = preds.at({1, n});
    PredDecl d{preds.at({1, n}), {}};
    for (const auto& a : p.args) d.args.push_back(out.inj2.sort(a));
    out.sig.preds.emplace(d.name, d);
  }
  return out;
}

}  // namespace evtforge
