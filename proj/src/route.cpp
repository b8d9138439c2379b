//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "retro/route.h"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "retro/smiles.h"
#include "retro/template.h"

namespace retro {

int route_steps(const RouteNode &route) {
  int n = 0;
  for (const RouteReaction &r: route.reactions) {
    ++n;
    for (const RouteNode &c: r.children)
      n += route_steps(c);
  }
  return n;
}

bool route_solved(const RouteNode &route) {
  if (route.is_leaf())
    return route.in_stock;
  for (const RouteReaction &r: route.reactions)
    for (const RouteNode &c: r.children)
      if (!route_solved(c))
        return false;
  return true;
}

namespace {

void collect_leaves(const RouteNode &node, std::vector<std::string> &out) {
  if (node.is_leaf()) {
    out.push_back(node.smiles);
    return;
  }
  for (const RouteReaction &r: node.reactions)
    for (const RouteNode &c: r.children)
      collect_leaves(c, out);
}

}  // namespace

std::vector<std::string> route_leaves(const RouteNode &route) {
  std::vector<std::string> out;
  collect_leaves(route, out);
  return out;
}

int largest_leaf_atoms(const RouteNode &route) {
  int best = 0;
  for (const std::string &s: route_leaves(route))
    best = std::max(best, heavy_atom_count(parse_smiles(s)));
  return best;
}

void mark_in_stock(RouteNode &route, const StockSet &stock) {
  route.in_stock = stock.contains_canonical(route.smiles);
  for (RouteReaction &r: route.reactions)
    for (RouteNode &c: r.children)
      mark_in_stock(c, stock);
}

std::string route_signature(const RouteNode &route) {
  std::string out = route.smiles;
  for (const RouteReaction &r: route.reactions) {
    std::vector<std::string> kids;
    for (const RouteNode &c: r.children)
      kids.push_back(route_signature(c));
    std::sort(kids.begin(), kids.end());
    out += "<(";
    for (std::size_t i = 0; i < kids.size(); ++i) {
      if (i > 0)
        out += ',';
      out += kids[i];
    }
    out += ')';
  }
  return out;
}

std::string route_hash(const RouteNode &route) {
  return sha256_hex(route_signature(route));
}

RouteNode canonical_route(const RouteNode &route) {
  RouteNode out;
  out.smiles = route.smiles;
  out.in_stock = route.in_stock;
  for (const RouteReaction &r: route.reactions) {
    RouteReaction rr;
    rr.template_smarts = r.template_smarts;
    rr.template_hash = r.template_hash;
    std::vector<std::pair<std::string, RouteNode>> kids;
    for (const RouteNode &c: r.children) {
      RouteNode cc = canonical_route(c);
      kids.emplace_back(route_signature(cc), std::move(cc));
    }
    std::stable_sort(kids.begin(), kids.end(), [](const auto &x, const auto &y) {
      return x.first < y.first;
    });
    for (auto &k: kids)
      rr.children.push_back(std::move(k.second));
    out.reactions.push_back(std::move(rr));
  }
  return out;
}

bool route_has_loop(const RouteNode &route) {
  std::vector<std::string> path;
  std::function<bool(const RouteNode &)> visit = [&](const RouteNode &n) {
    if (std::find(path.begin(), path.end(), n.smiles) != path.end())
      return true;
    path.push_back(n.smiles);
    for (const RouteReaction &r: n.reactions)
      for (const RouteNode &c: r.children)
        if (visit(c))
          return true;
    path.pop_back();
    return false;
  };
  return visit(route);
}

namespace {

// Every reaction below `small` is reproduced below `big`.
bool embeds_at(const RouteNode &small, const RouteNode &big) {
  if (small.smiles != big.smiles)
    return false;
  if (small.is_leaf())
    return true;
  if (big.is_leaf())
    return false;
  const auto &sk = small.reactions.front().children;
  const auto &bk = big.reactions.front().children;
  if (sk.size() != bk.size())
    return false;
  // Children are matched by label; labels within one reaction are distinct
  // in practice, so a greedy assignment suffices.
  std::vector<bool> used(bk.size(), false);
  for (const RouteNode &s: sk) {
    bool found = false;
    for (std::size_t j = 0; j < bk.size() && !found; ++j) {
      if (!used[j] && embeds_at(s, bk[j])) {
        used[j] = true;
        found = true;
      }
    }
    if (!found)
      return false;
  }
  return true;
}

}  // namespace

bool is_subroute(const RouteNode &small, const RouteNode &big) {
  if (embeds_at(small, big))
    return true;
  for (const RouteReaction &r: big.reactions)
    for (const RouteNode &c: r.children)
      if (is_subroute(small, c))
        return true;
  return false;
}

RouteNode route_from_steps(const std::string &target,
                           const std::vector<ReactionStep> &steps,
                           const StockSet *stock) {
  RouteNode root;
  root.smiles = target;
  std::function<RouteNode *(RouteNode &, const std::string &)> find_open =
      [&](RouteNode &n, const std::string &smi) -> RouteNode * {
    if (n.is_leaf())
      return n.smiles == smi ? &n : nullptr;
    for (RouteReaction &r: n.reactions)
      for (RouteNode &c: r.children)
        if (RouteNode *hit = find_open(c, smi))
          return hit;
    return nullptr;
  };
  for (const ReactionStep &step: steps) {
    RouteNode *node = find_open(root, step.product);
    if (node == nullptr)
      throw std::invalid_argument("no open route leaf for " + step.product);
    RouteReaction rr;
    rr.template_smarts = step.template_smarts;
    rr.template_hash = step.template_hash;
    for (const std::string &r: step.reactants) {
      RouteNode c;
      c.smiles = r;
      rr.children.push_back(std::move(c));
    }
    node->reactions.push_back(std::move(rr));
  }
  if (stock != nullptr)
    mark_in_stock(root, *stock);
  return root;
}

nlohmann::ordered_json route_to_json(const RouteNode &route) {
  nlohmann::ordered_json j;
  j["smiles"] = route.smiles;
  j["in_stock"] = route.in_stock;
  j["children"] = nlohmann::ordered_json::array();
  for (const RouteReaction &r: route.reactions) {
    nlohmann::ordered_json rj;
    rj["template"] = r.template_smarts;
    if (!r.template_hash.empty())
      rj["template_hash"] = r.template_hash;
    rj["nodes"] = nlohmann::ordered_json::array();
    for (const RouteNode &c: r.children)
      rj["nodes"].push_back(route_to_json(c));
    j["children"].push_back(std::move(rj));
  }
  return j;
}

RouteNode canonicalize_labels(const RouteNode &route) {
  RouteNode out = route;
  try {
    out.smiles = canonical_smiles(route.smiles);
  } catch (const std::exception &e) {
    throw std::invalid_argument("bad route molecule '" + route.smiles + "': " + e.what());
  }
  for (RouteReaction &r: out.reactions)
    for (RouteNode &c: r.children)
      c = canonicalize_labels(c);
  return out;
}

RouteNode route_from_json(const nlohmann::json &j) {
  if (!j.is_object() || !j.contains("smiles") || !j["smiles"].is_string())
    throw std::invalid_argument("route node needs a string \"smiles\"");
  RouteNode node;
  node.smiles = j["smiles"].get<std::string>();
  if (j.contains("in_stock")) {
    if (!j["in_stock"].is_boolean())
      throw std::invalid_argument("\"in_stock\" must be a boolean");
    node.in_stock = j["in_stock"].get<bool>();
  }
  if (j.contains("children")) {
    if (!j["children"].is_array())
      throw std::invalid_argument("\"children\" must be an array");
    for (const auto &rj: j["children"]) {
      if (!rj.is_object() || !rj.contains("nodes") || !rj["nodes"].is_array())
        throw std::invalid_argument("reaction entry needs a \"nodes\" array");
      RouteReaction r;
      if (rj.contains("template"))
        r.template_smarts = rj["template"].get<std::string>();
      if (rj.contains("template_hash"))
        r.template_hash = rj["template_hash"].get<std::string>();
      for (const auto &cj: rj["nodes"])
        r.children.push_back(route_from_json(cj));
      node.reactions.push_back(std::move(r));
    }
    if (node.reactions.size() > 1)
      throw std::invalid_argument("a route molecule has at most one reaction");
  }
  return node;
}

std::string route_to_dot(const RouteNode &route) {
  std::string out = "digraph route {\n  rankdir=LR;\n";
  int next = 0;
  std::function<int(const RouteNode &)> emit = [&](const RouteNode &n) {
    const int id = next++;
    out += "  m" + std::to_string(id) + " [shape=box,label=\"" + n.smiles + "\""
           + (n.in_stock ? ",color=green" : "") + "];\n";
    for (const RouteReaction &r: n.reactions) {
      const int rid = next++;
      out += "  r" + std::to_string(rid) + " [shape=point];\n";
      out += "  m" + std::to_string(id) + " -> r" + std::to_string(rid) + ";\n";
      for (const RouteNode &c: r.children) {
        const int cid = emit(c);
        out += "  r" + std::to_string(rid) + " -> m" + std::to_string(cid) + ";\n";
      }
    }
    return id;
  };
  emit(route);
  out += "}\n";
  return out;
}

}  // namespace retro
