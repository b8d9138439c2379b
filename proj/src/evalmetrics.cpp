//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "retro/evalmetrics.h"

#include <algorithm>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>

#include "retro/smiles.h"

namespace retro {

double route_cost(const RouteNode &route, double eps, double yld) {
  if (!(yld > 0.0) || yld > 1.0)
    throw std::invalid_argument("yield must be in (0, 1]");
  if (route.reactions.empty())
    return 0.0;
  double cost = eps;
  for (const RouteNode &child: route.reactions.front().children)
    cost += route_cost(child, eps, yld) / yld;
  return cost;
}

// ---------------------------------------------------------------------------
// Tree edit distance

int LabeledTree::size() const {
  int n = 1;
  for (const LabeledTree &c: children)
    n += c.size();
  return n;
}

std::string LabeledTree::text() const {
  std::string out = label;
  if (!children.empty()) {
    out += '(';
    for (std::size_t i = 0; i < children.size(); ++i) {
      if (i)
        out += ',';
      out += children[i].text();
    }
    out += ')';
  }
  return out;
}

LabeledTree canonical_tree(LabeledTree t) {
  for (LabeledTree &c: t.children)
    c = canonical_tree(std::move(c));
  std::vector<std::pair<std::string, LabeledTree>> keyed;
  for (LabeledTree &c: t.children)
    keyed.emplace_back(c.text(), std::move(c));
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto &a, const auto &b) {
    if (a.second.label != b.second.label)
      return a.second.label < b.second.label;
    return a.first < b.first;
  });
  t.children.clear();
  for (auto &[k, c]: keyed)
    t.children.push_back(std::move(c));
  return t;
}

LabeledTree molecule_tree(const RouteNode &route) {
  LabeledTree t { route.smiles, {} };
  for (const RouteReaction &rx: route.reactions)
    for (const RouteNode &c: rx.children)
      t.children.push_back(molecule_tree(c));
  return canonical_tree(std::move(t));
}

namespace {

struct Postorder {
  std::vector<const std::string *> labels;
  std::vector<int> leftmost;  // leftmost leaf descendant, postorder index
  std::vector<int> keyroots;

  explicit Postorder(const LabeledTree &t) {
    visit(t);
    std::vector<bool> seen(labels.size() + 1, false);
    for (int i = static_cast<int>(labels.size()) - 1; i >= 0; --i) {
      if (!seen[leftmost[i]]) {
        keyroots.push_back(i);
        seen[leftmost[i]] = true;
      }
    }
    std::sort(keyroots.begin(), keyroots.end());
  }

  int visit(const LabeledTree &t) {
    int first = -1;
    for (const LabeledTree &c: t.children) {
      const int l = visit(c);
      if (first < 0)
        first = l;
    }
    const int idx = static_cast<int>(labels.size());
    labels.push_back(&t.label);
    leftmost.push_back(first < 0 ? idx : first);
    return leftmost.back();
  }
};

}  // namespace

int tree_edit_distance(const LabeledTree &a, const LabeledTree &b) {
  const Postorder pa(a), pb(b);
  const int n = static_cast<int>(pa.labels.size());
  const int m = static_cast<int>(pb.labels.size());
  std::vector<std::vector<int>> td(n, std::vector<int>(m, 0));
  std::vector<std::vector<int>> fd(n + 1, std::vector<int>(m + 1, 0));

  for (int i: pa.keyroots) {
    for (int j: pb.keyroots) {
      const int li = pa.leftmost[i], lj = pb.leftmost[j];
      // fd indices are offset so that fd[x - li + 1][y - lj + 1] covers
      // forest l(i)..x against l(j)..y.
      const int rows = i - li + 2, cols = j - lj + 2;
      fd[0][0] = 0;
      for (int x = 1; x < rows; ++x)
        fd[x][0] = fd[x - 1][0] + 1;
      for (int y = 1; y < cols; ++y)
        fd[0][y] = fd[0][y - 1] + 1;
      for (int x = 1; x < rows; ++x) {
        for (int y = 1; y < cols; ++y) {
          const int ax = li + x - 1, by = lj + y - 1;
          if (pa.leftmost[ax] == li && pb.leftmost[by] == lj) {
            const int relabel = *pa.labels[ax] == *pb.labels[by] ? 0 : 1;
            fd[x][y] = std::min({ fd[x - 1][y] + 1, fd[x][y - 1] + 1,
                                  fd[x - 1][y - 1] + relabel });
            td[ax][by] = fd[x][y];
          } else {
            const int px = pa.leftmost[ax] - li, py = pb.leftmost[by] - lj;
            fd[x][y] = std::min({ fd[x - 1][y] + 1, fd[x][y - 1] + 1,
                                  fd[px][py] + td[ax][by] });
          }
        }
      }
    }
  }
  return td[n - 1][m - 1];
}

int tree_edit_distance(const RouteNode &a, const RouteNode &b) {
  return tree_edit_distance(molecule_tree(a), molecule_tree(b));
}

// ---------------------------------------------------------------------------
// Accuracy

std::optional<std::string> reactant_set_key(const std::vector<std::string> &smiles) {
  std::vector<std::string> parts;
  try {
    for (const std::string &s: smiles) {
      // Dotted entries contribute each component.
      const std::string c = canonical_smiles(s);
      std::size_t start = 0;
      while (start <= c.size()) {
        const std::size_t dot = c.find('.', start);
        const std::size_t end = dot == std::string::npos ? c.size() : dot;
        if (end > start)
          parts.push_back(c.substr(start, end - start));
        if (dot == std::string::npos)
          break;
        start = dot + 1;
      }
    }
  } catch (const std::exception &) {
    return std::nullopt;
  }
  if (parts.empty())
    return std::nullopt;
  std::sort(parts.begin(), parts.end());
  parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
  std::string key;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i)
      key += '.';
    key += parts[i];
  }
  return key;
}

std::vector<double> accuracy_from_ranks(const std::vector<std::optional<int>> &ranks,
                                        int kmax) {
  std::vector<double> acc(std::max(kmax, 0), 0.0);
  if (ranks.empty())
    return acc;
  for (int k = 1; k <= kmax; ++k) {
    int hits = 0;
    for (const auto &r: ranks)
      if (r && *r <= k)
        ++hits;
    acc[k - 1] = static_cast<double>(hits) / static_cast<double>(ranks.size());
  }
  return acc;
}

TopKResult topk_single_step(const std::vector<SingleStepCase> &cases, int kmax,
                            Placement placement) {
  TopKResult out;
  for (const SingleStepCase &c: cases) {
    const std::optional<std::string> truth = reactant_set_key(c.ground_truth);
    std::vector<std::string> flat;
    for (const TemplateOutcomes &t: c.ranked) {
      std::vector<std::string> hits, others;
      for (const auto &set: t.sets) {
        const auto key = reactant_set_key(set);
        if (!key) {
          ++out.invalid;
          continue;
        }
        (truth && *key == *truth ? hits : others).push_back(*key);
      }
      if (placement == Placement::kOptimistic) {
        flat.insert(flat.end(), hits.begin(), hits.end());
        flat.insert(flat.end(), others.begin(), others.end());
      } else {
        flat.insert(flat.end(), others.begin(), others.end());
        flat.insert(flat.end(), hits.begin(), hits.end());
      }
    }
    std::set<std::string> seen;
    std::optional<int> rank;
    int pos = 0;
    for (const std::string &key: flat) {
      if (!seen.insert(key).second) {
        ++out.duplicates;
        continue;
      }
      ++pos;
      if (!rank && truth && key == *truth)
        rank = pos;
    }
    out.ranks.push_back(rank);
  }
  out.accuracy = accuracy_from_ranks(out.ranks, kmax);
  return out;
}

TopKResult route_accuracy(const std::vector<std::vector<RouteNode>> &predicted,
                          const std::vector<RouteNode> &ground_truth, int kmax) {
  if (predicted.size() != ground_truth.size())
    throw std::invalid_argument("prediction and ground-truth counts differ");
  TopKResult out;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const LabeledTree truth = molecule_tree(ground_truth[i]);
    std::optional<int> rank;
    std::set<std::string> seen;
    int pos = 0;
    for (const RouteNode &r: predicted[i]) {
      const LabeledTree t = molecule_tree(r);
      if (!seen.insert(t.text()).second) {
        ++out.duplicates;
        continue;
      }
      ++pos;
      if (tree_edit_distance(t, truth) == 0) {
        rank = pos;
        break;
      }
    }
    out.ranks.push_back(rank);
  }
  out.accuracy = accuracy_from_ranks(out.ranks, kmax);
  return out;
}

double solve_rate(const std::vector<bool> &solved) {
  if (solved.empty())
    return 0.0;
  return static_cast<double>(std::count(solved.begin(), solved.end(), true))
         / static_cast<double>(solved.size());
}

// ---------------------------------------------------------------------------
// Stratified reports

std::vector<int> default_frequency_edges() {
  return { 0, 1, 2, 6, 11, 51, 101 };
}

namespace {

std::string bucket_label(const std::vector<int> &edges, std::size_t i) {
  if (i + 1 == edges.size())
    return ">=" + std::to_string(edges[i]);
  const int lo = edges[i], hi = edges[i + 1] - 1;
  return lo == hi ? std::to_string(lo) : std::to_string(lo) + "-" + std::to_string(hi);
}

ReportBucket summarize(std::string label, const std::vector<const TargetOutcome *> &rows,
                       int kmax) {
  ReportBucket b;
  b.label = std::move(label);
  b.n = static_cast<int>(rows.size());
  if (b.n == 0)
    return b;
  std::vector<std::optional<int>> ranks;
  std::vector<bool> solved;
  for (const TargetOutcome *r: rows) {
    ranks.push_back(r->rank);
    solved.push_back(r->solved);
  }
  b.accuracy = accuracy_from_ranks(ranks, kmax);
  b.solve_rate = solve_rate(solved);
  return b;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << v;
  return os.str();
}

}  // namespace

EvalReport summary_report(const std::vector<TargetOutcome> &results, int kmax) {
  EvalReport rep;
  rep.kmax = kmax;
  rep.n = static_cast<int>(results.size());
  rep.stratum = "none";
  std::vector<const TargetOutcome *> all;
  for (const TargetOutcome &r: results) {
    all.push_back(&r);
    if (r.ground_truth_length && r.predicted_length)
      ++rep.length_difference[*r.predicted_length - *r.ground_truth_length];
  }
  const ReportBucket global = summarize("all", all, kmax);
  rep.accuracy = global.n ? global.accuracy : std::vector<double>(kmax, 0.0);
  rep.solve_rate = global.solve_rate.value_or(0.0);
  return rep;
}

EvalReport stratified_report(const std::vector<TargetOutcome> &results,
                             Stratum stratum, int kmax,
                             const std::vector<int> &frequency_edges) {
  EvalReport rep;
  rep.kmax = kmax;
  rep.n = static_cast<int>(results.size());
  rep.stratum = stratum == Stratum::kTemplateFrequency ? "template_frequency"
                                                       : "route_length";

  std::vector<const TargetOutcome *> all;
  for (const TargetOutcome &r: results) {
    all.push_back(&r);
    const bool has = stratum == Stratum::kTemplateFrequency
                         ? r.template_frequency.has_value()
                         : r.ground_truth_length.has_value();
    if (!has)
      throw MissingStratumMetadata("target '" + r.id + "' has no " + rep.stratum);
    if (r.ground_truth_length && r.predicted_length)
      ++rep.length_difference[*r.predicted_length - *r.ground_truth_length];
  }
  const ReportBucket global = summarize("all", all, kmax);
  rep.accuracy = global.n ? global.accuracy : std::vector<double>(kmax, 0.0);
  rep.solve_rate = global.solve_rate.value_or(0.0);

  if (stratum == Stratum::kTemplateFrequency) {
    if (frequency_edges.empty() || !std::is_sorted(frequency_edges.begin(),
                                                   frequency_edges.end()))
      throw std::invalid_argument("frequency bucket edges must be sorted and non-empty");
    for (std::size_t i = 0; i < frequency_edges.size(); ++i) {
      const int lo = frequency_edges[i];
      const int hi = i + 1 < frequency_edges.size() ? frequency_edges[i + 1]
                                                    : std::numeric_limits<int>::max();
      std::vector<const TargetOutcome *> rows;
      for (const TargetOutcome *r: all)
        if (*r->template_frequency >= lo && *r->template_frequency < hi)
          rows.push_back(r);
      rep.buckets.push_back(summarize(bucket_label(frequency_edges, i), rows, kmax));
    }
  } else {
    std::set<int> lengths;
    for (const TargetOutcome *r: all)
      lengths.insert(*r->ground_truth_length);
    for (int len: lengths) {
      std::vector<const TargetOutcome *> rows;
      for (const TargetOutcome *r: all)
        if (*r->ground_truth_length == len)
          rows.push_back(r);
      rep.buckets.push_back(summarize(std::to_string(len), rows, kmax));
    }
  }
  return rep;
}

nlohmann::ordered_json EvalReport::to_json() const {
  nlohmann::ordered_json j;
  j["stratum"] = stratum;
  j["n"] = n;
  j["kmax"] = kmax;
  j["accuracy"] = accuracy;
  j["solve_rate"] = solve_rate;
  j["invalid"] = invalid;
  j["duplicates"] = duplicates;
  j["buckets"] = nlohmann::ordered_json::array();
  for (const ReportBucket &b: buckets) {
    nlohmann::ordered_json jb;
    jb["label"] = b.label;
    jb["n"] = b.n;
    jb["accuracy"] = b.accuracy;
    jb["solve_rate"] = b.solve_rate ? nlohmann::ordered_json(*b.solve_rate)
                                    : nlohmann::ordered_json(nullptr);
    j["buckets"].push_back(jb);
  }
  nlohmann::ordered_json hist = nlohmann::ordered_json::object();
  for (const auto &[d, c]: length_difference)
    hist[std::to_string(d)] = c;
  j["length_difference"] = hist;
  return j;
}

std::string EvalReport::to_text() const {
  std::ostringstream os;
  os << "targets: " << n << "  solve rate: " << fmt(solve_rate) << '\n';
  os << std::left << std::setw(12) << stratum.substr(0, 11) << std::right
     << std::setw(6) << "n";
  for (int k = 1; k <= kmax; ++k)
    os << std::setw(9) << ("top-" + std::to_string(k));
  os << std::setw(9) << "solved" << '\n';
  auto row = [&](const std::string &label, int count, const std::vector<double> &acc,
                 std::optional<double> sr) {
    os << std::left << std::setw(12) << label << std::right << std::setw(6) << count;
    for (int k = 0; k < kmax; ++k)
      os << std::setw(9) << (acc.empty() ? std::string("-") : fmt(acc[k]));
    os << std::setw(9) << (sr ? fmt(*sr) : std::string("-")) << '\n';
  };
  row("all", n, n ? accuracy : std::vector<double> {}, n ? std::optional(solve_rate)
                                                         : std::nullopt);
  for (const ReportBucket &b: buckets)
    row(b.label, b.n, b.accuracy, b.solve_rate);
  if (!length_difference.empty()) {
    os << "length difference (predicted - ground truth):\n";
    for (const auto &[d, c]: length_difference)
      os << std::setw(6) << d << std::setw(8) << c << '\n';
  }
  return os.str();
}

std::string EvalReport::to_csv() const {
  std::ostringstream os;
  os << "bucket,n";
  for (int k = 1; k <= kmax; ++k)
    os << ",top" << k;
  os << ",solve_rate\n";
  auto row = [&](const std::string &label, int count, const std::vector<double> &acc,
                 std::optional<double> sr) {
    os << label << ',' << count;
    for (int k = 0; k < kmax; ++k)
      os << ',' << (acc.empty() ? std::string() : fmt(acc[k]));
    os << ',' << (sr ? fmt(*sr) : std::string()) << '\n';
  };
  row("all", n, n ? accuracy : std::vector<double> {}, n ? std::optional(solve_rate)
                                                         : std::nullopt);
  for (const ReportBucket &b: buckets)
    row(b.label, b.n, b.accuracy, b.solve_rate);
  return os.str();
}

}  // namespace retro
