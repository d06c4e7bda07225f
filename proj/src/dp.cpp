#include "gst/dp.hpp"

#include <algorithm>
#include <vector>

namespace gst {

namespace {

Time mul_sat(Time rate, std::int64_t units) {
  if (rate == 0 || units == 0) return 0;
  if (rate > kInfTime / units) return kInfTime;
  return rate * units;
}

// Segment sizes for gather/scatter come from prefix sums; broadcast and
// reduction transmit the same m on every edge.
struct GatherSizes {
  const std::vector<std::int64_t>* prefix;
  std::int64_t seg(int l, int j) const {
    return (*prefix)[static_cast<size_t>(j) + 1] - (*prefix)[static_cast<size_t>(l)];
  }
  std::int64_t blk(int r) const { return seg(r, r); }
};

struct ConstSizes {
  std::int64_t m;
  std::int64_t seg(int, int) const { return m; }
  std::int64_t blk(int) const { return m; }
};

void check_optional_root(std::optional<int> root, int p) {
  if (root && (*root < 0 || *root >= p))
    throw ArgumentError("root " + std::to_string(*root) + " out of range");
}

void check_model_fits(const CostModel& model, int p) {
  if (model.rank_limit() > 0 && model.rank_limit() < p)
    throw ArgumentError("cost model covers fewer ranks than the problem");
}

// ---------------------------------------------------------------------------
// Ordered trees, homogeneous model.
//
// C[i][j] is the least completion time over ordered trees spanning [i..j]:
// merging the subranges [i..k] and [k+1..j] in either direction, where the
// sending side is a complete subtree (a bare leaf when singleton) and the
// receiving side keeps its root. A receiving singleton {r} overlaps its
// local copy with the sender's completion, max(gamma*m_r, .) -- the literal
// recurrence would never charge that copy.
//
// Each merge appends the sent range as the receiving root's next child, so
// reconstructed sequences are in merge order with the copy slot first.
// ---------------------------------------------------------------------------

struct HomTables {
  int p = 0;
  Time gamma = 0;
  std::vector<Time> C, CW;     // CW[l*p+j] = comm(seg(l, j))
  std::vector<int> Ck;         // split k
  std::vector<signed char> Cd; // 0: right side sent left; 1: left side sent right
};

template <class S>
HomTables build_hom_tables(int p, Time alpha, Time beta, Time gamma,
                           const S& sz) {
  HomTables T;
  T.p = p;
  T.gamma = gamma;
  size_t nn = static_cast<size_t>(p) * static_cast<size_t>(p);
  T.C.assign(nn, 0);
  T.CW.assign(nn, 0);
  T.Ck.assign(nn, -1);
  T.Cd.assign(nn, 0);
  auto at = [p](int i, int j) { return static_cast<size_t>(i) * p + j; };
  for (int l = 0; l < p; ++l)
    for (int j = l; j < p; ++j) {
      std::int64_t s = sz.seg(l, j);
      T.CW[at(l, j)] = s > 0 ? time_add(alpha, mul_sat(beta, s)) : 0;
    }

  for (int len = 2; len <= p; ++len) {
    for (int i = 0; i + len - 1 < p; ++i) {
      int j = i + len - 1;
      Time best = kInfTime;
      int bk = -1;
      signed char bd = 0;
      for (int k = i; k < j; ++k) {
        Time left_recv = (k == i) ? mul_sat(gamma, sz.blk(i)) : T.C[at(i, k)];
        Time c0 = time_add(std::max(left_recv, T.C[at(k + 1, j)]),
                           T.CW[at(k + 1, j)]);
        if (c0 < best) {
          best = c0;
          bk = k;
          bd = 0;
        }
        Time right_recv =
            (k + 1 == j) ? mul_sat(gamma, sz.blk(j)) : T.C[at(k + 1, j)];
        Time c1 = time_add(std::max(T.C[at(i, k)], right_recv), T.CW[at(i, k)]);
        if (c1 < best) {
          best = c1;
          bk = k;
          bd = 1;
        }
      }
      T.C[at(i, j)] = best;
      T.Ck[at(i, j)] = bk;
      T.Cd[at(i, j)] = bd;
    }
  }
  return T;
}

TreePtr rebuild_hom(const HomTables& T, int i, int j) {
  if (i == j) return Tree::leaf(i);
  size_t idx = static_cast<size_t>(i) * T.p + j;
  int k = T.Ck[idx];
  if (T.Cd[idx] == 0) {
    TreePtr recv = (k == i) ? Tree::node(i, {TreeItem::copy_slot()})
                            : rebuild_hom(T, i, k);
    return Tree::append(recv, rebuild_hom(T, k + 1, j));
  }
  TreePtr recv = (k + 1 == j) ? Tree::node(j, {TreeItem::copy_slot()})
                              : rebuild_hom(T, k + 1, j);
  return Tree::append(recv, rebuild_hom(T, i, k));
}

// Externally given root: ranges containing r always receive, so their trees
// stay rooted at r; everything else comes from the free tables.
struct HomFixed {
  std::vector<Time> R;
  std::vector<int> Rk;
  std::vector<signed char> Rd;
};

template <class S>
HomFixed build_hom_fixed(const HomTables& T, const S& sz, int r) {
  int p = T.p;
  auto at = [p](int i, int j) { return static_cast<size_t>(i) * p + j; };
  HomFixed F;
  size_t nn = static_cast<size_t>(p) * static_cast<size_t>(p);
  F.R.assign(nn, 0);
  F.Rk.assign(nn, -1);
  F.Rd.assign(nn, 0);
  for (int len = 2; len <= p; ++len) {
    for (int i = std::max(0, r - len + 1); i <= r && i + len - 1 < p; ++i) {
      int j = i + len - 1;
      if (j < r) continue;
      Time best = kInfTime;
      int bk = -1;
      signed char bd = 0;
      for (int k = i; k < j; ++k) {
        if (r <= k) {
          // the left side holds r and receives
          Time left_recv = (i == k) ? mul_sat(T.gamma, sz.blk(r)) : F.R[at(i, k)];
          Time c = time_add(std::max(left_recv, T.C[at(k + 1, j)]),
                            T.CW[at(k + 1, j)]);
          if (c < best) {
            best = c;
            bk = k;
            bd = 0;
          }
        } else {
          Time right_recv =
              (k + 1 == j) ? mul_sat(T.gamma, sz.blk(r)) : F.R[at(k + 1, j)];
          Time c = time_add(std::max(T.C[at(i, k)], right_recv), T.CW[at(i, k)]);
          if (c < best) {
            best = c;
            bk = k;
            bd = 1;
          }
        }
      }
      F.R[at(i, j)] = best;
      F.Rk[at(i, j)] = bk;
      F.Rd[at(i, j)] = bd;
    }
  }
  return F;
}

TreePtr rebuild_hom_fixed(const HomTables& T, const HomFixed& F, int r, int i,
                          int j) {
  if (i == j) return Tree::node(r, {TreeItem::copy_slot()});
  size_t idx = static_cast<size_t>(i) * T.p + j;
  int k = F.Rk[idx];
  if (F.Rd[idx] == 0) {
    TreePtr recv = rebuild_hom_fixed(T, F, r, i, k);
    return Tree::append(recv, rebuild_hom(T, k + 1, j));
  }
  TreePtr recv = rebuild_hom_fixed(T, F, r, k + 1, j);
  return Tree::append(recv, rebuild_hom(T, i, k));
}

template <class S>
DpResult solve_hom(int p, Time alpha, Time beta, Time gamma, const S& sz,
                   std::optional<int> root, bool singleton_pays_copy) {
  if (p == 1) {
    Time c = singleton_pays_copy ? mul_sat(gamma, sz.blk(0)) : 0;
    return DpResult{c, Tree::node(0, {TreeItem::copy_slot()})};
  }
  HomTables T = build_hom_tables(p, alpha, beta, gamma, sz);
  if (!root)
    return DpResult{T.C[static_cast<size_t>(p - 1)], rebuild_hom(T, 0, p - 1)};
  HomFixed F = build_hom_fixed(T, sz, *root);
  return DpResult{F.R[static_cast<size_t>(p - 1)],
                  rebuild_hom_fixed(T, F, *root, 0, p - 1)};
}

// ---------------------------------------------------------------------------
// Ordered trees, non-homogeneous model: identical structure with the root of
// every range tracked, since transmission cost depends on the pair.
// ---------------------------------------------------------------------------

struct NhChoice {
  int k = -1;
  int rp = -1;
  signed char dir = 0;
};

struct NonhomTables {
  int p = 0;
  std::vector<Time> C;
  std::vector<NhChoice> Cc;
};

template <class S>
NonhomTables build_nonhom_tables(int p, const CostModel& model, const S& sz) {
  NonhomTables T;
  T.p = p;
  size_t nn = static_cast<size_t>(p) * p * p;
  T.C.assign(nn, kInfTime);
  T.Cc.assign(nn, NhChoice{});
  auto at = [p](int i, int j, int r) {
    return (static_cast<size_t>(i) * p + j) * p + r;
  };
  auto comm = [&](int sender, int receiver, std::int64_t s) -> Time {
    if (s == 0) return 0;
    Time a = model.alpha(sender, receiver);
    if (is_inf(a)) return kInfTime;
    return time_add(a, mul_sat(model.beta(sender, receiver), s));
  };

  for (int len = 1; len <= p; ++len) {
    for (int i = 0; i + len - 1 < p; ++i) {
      int j = i + len - 1;
      if (len == 1) {
        T.C[at(i, i, i)] = 0;
        continue;
      }
      for (int r = i; r <= j; ++r) {
        Time best = kInfTime;
        NhChoice choice;
        // r's side receives; the other side is a complete subtree.
        for (int k = r; k < j; ++k) {
          Time recv = (i == k) ? mul_sat(model.gamma(r), sz.blk(r))
                               : T.C[at(i, k, r)];
          std::int64_t s = sz.seg(k + 1, j);
          for (int rp = k + 1; rp <= j; ++rp) {
            Time c = time_add(std::max(recv, T.C[at(k + 1, j, rp)]),
                              comm(rp, r, s));
            if (c < best) {
              best = c;
              choice = NhChoice{k, rp, 0};
            }
          }
        }
        for (int k = i; k < r; ++k) {
          Time recv = (k + 1 == j) ? mul_sat(model.gamma(r), sz.blk(r))
                                   : T.C[at(k + 1, j, r)];
          std::int64_t s = sz.seg(i, k);
          for (int rp = i; rp <= k; ++rp) {
            Time c =
                time_add(std::max(T.C[at(i, k, rp)], recv), comm(rp, r, s));
            if (c < best) {
              best = c;
              choice = NhChoice{k, rp, 1};
            }
          }
        }
        T.C[at(i, j, r)] = best;
        T.Cc[at(i, j, r)] = choice;
      }
    }
  }
  return T;
}

TreePtr rebuild_nonhom(const NonhomTables& T, int i, int j, int r) {
  if (i == j) return Tree::leaf(i);
  const NhChoice& c = T.Cc[(static_cast<size_t>(i) * T.p + j) * T.p + r];
  if (c.dir == 0) {
    TreePtr recv = (i == c.k) ? Tree::node(r, {TreeItem::copy_slot()})
                              : rebuild_nonhom(T, i, c.k, r);
    return Tree::append(recv, rebuild_nonhom(T, c.k + 1, j, c.rp));
  }
  TreePtr recv = (c.k + 1 == j) ? Tree::node(r, {TreeItem::copy_slot()})
                                : rebuild_nonhom(T, c.k + 1, j, r);
  return Tree::append(recv, rebuild_nonhom(T, i, c.k, c.rp));
}

template <class S>
DpResult solve_nonhom(int p, const CostModel& model, const S& sz,
                      std::optional<int> root, bool singleton_pays_copy) {
  if (p == 1) {
    Time c = singleton_pays_copy ? mul_sat(model.gamma(0), sz.blk(0)) : 0;
    return DpResult{c, Tree::node(0, {TreeItem::copy_slot()})};
  }
  NonhomTables T = build_nonhom_tables(p, model, sz);
  auto at = [p](int i, int j, int r) {
    return (static_cast<size_t>(i) * p + j) * p + r;
  };
  int best_root = root ? *root : 0;
  if (!root) {
    Time best = kInfTime;
    for (int r = 0; r < p; ++r) {
      Time c = T.C[at(0, p - 1, r)];
      if (c < best) {
        best = c;
        best_root = r;
      }
    }
  }
  return DpResult{T.C[at(0, p - 1, best_root)],
                  rebuild_nonhom(T, 0, p - 1, best_root)};
}

// ---------------------------------------------------------------------------
// Binary trees: ordered trees whose nodes have at most two children. The
// root is at an end with one or two same-side children, or interior with
// one child per side received in either order.
// ---------------------------------------------------------------------------

struct BinChoice {
  int kase = 0;  // 1 root=i 2 kids, 2 interior L-first, 3 root=j 2 kids,
                 // 4 root=i 1 kid, 5 root=j 1 kid, 6 interior R-first
  int k = -1;    // split (cases 1, 3) or the interior root (cases 2, 6)
};

struct BinHomTables {
  int p = 0;
  Time gamma = 0;
  std::vector<Time> C, CW;
  std::vector<BinChoice> Cc;
};

template <class S>
BinHomTables build_binary_hom(int p, Time alpha, Time beta, Time gamma,
                              const S& sz) {
  BinHomTables T;
  T.p = p;
  T.gamma = gamma;
  size_t n = static_cast<size_t>(p) * p;
  T.C.assign(n, 0);
  T.CW.assign(n, 0);
  T.Cc.assign(n, BinChoice{});
  auto at = [p](int i, int j) { return static_cast<size_t>(i) * p + j; };
  for (int l = 0; l < p; ++l)
    for (int j = l; j < p; ++j) {
      std::int64_t s = sz.seg(l, j);
      T.CW[at(l, j)] = s > 0 ? time_add(alpha, mul_sat(beta, s)) : 0;
    }

  for (int len = 2; len <= p; ++len) {
    for (int i = 0; i + len - 1 < p; ++i) {
      int j = i + len - 1;
      Time best = kInfTime;
      BinChoice choice;
      auto consider = [&](Time cand, int kase, int k) {
        if (cand < best) {
          best = cand;
          choice = BinChoice{kase, k};
        }
      };
      Time gi = mul_sat(gamma, sz.blk(i));
      Time gj = mul_sat(gamma, sz.blk(j));
      consider(time_add(std::max(gi, T.C[at(i + 1, j)]), T.CW[at(i + 1, j)]), 4,
               -1);
      consider(time_add(std::max(gj, T.C[at(i, j - 1)]), T.CW[at(i, j - 1)]), 5,
               -1);
      for (int k = i + 1; k < j; ++k) {
        Time first = time_add(std::max(gi, T.C[at(i + 1, k)]), T.CW[at(i + 1, k)]);
        consider(time_add(std::max(first, T.C[at(k + 1, j)]), T.CW[at(k + 1, j)]),
                 1, k);
        Time firstj =
            time_add(std::max(gj, T.C[at(k, j - 1)]), T.CW[at(k, j - 1)]);
        consider(time_add(std::max(firstj, T.C[at(i, k - 1)]), T.CW[at(i, k - 1)]),
                 3, k);
      }
      for (int r = i + 1; r < j; ++r) {
        Time gr = mul_sat(gamma, sz.blk(r));
        Time lfirst = time_add(std::max(gr, T.C[at(i, r - 1)]), T.CW[at(i, r - 1)]);
        consider(time_add(std::max(lfirst, T.C[at(r + 1, j)]), T.CW[at(r + 1, j)]),
                 2, r);
        Time rfirst = time_add(std::max(gr, T.C[at(r + 1, j)]), T.CW[at(r + 1, j)]);
        consider(time_add(std::max(rfirst, T.C[at(i, r - 1)]), T.CW[at(i, r - 1)]),
                 6, r);
      }
      T.C[at(i, j)] = best;
      T.Cc[at(i, j)] = choice;
    }
  }
  return T;
}

TreePtr rebuild_binary_hom(const BinHomTables& T, int i, int j) {
  if (i == j) return Tree::leaf(i);
  const BinChoice& c = T.Cc[static_cast<size_t>(i) * T.p + j];
  switch (c.kase) {
    case 1:
      return Tree::node(i, {TreeItem::copy_slot(),
                            TreeItem::of(rebuild_binary_hom(T, i + 1, c.k)),
                            TreeItem::of(rebuild_binary_hom(T, c.k + 1, j))});
    case 2:
      return Tree::node(c.k, {TreeItem::copy_slot(),
                              TreeItem::of(rebuild_binary_hom(T, i, c.k - 1)),
                              TreeItem::of(rebuild_binary_hom(T, c.k + 1, j))});
    case 3:
      return Tree::node(j, {TreeItem::copy_slot(),
                            TreeItem::of(rebuild_binary_hom(T, c.k, j - 1)),
                            TreeItem::of(rebuild_binary_hom(T, i, c.k - 1))});
    case 4:
      return Tree::node(i, {TreeItem::copy_slot(),
                            TreeItem::of(rebuild_binary_hom(T, i + 1, j))});
    case 5:
      return Tree::node(j, {TreeItem::copy_slot(),
                            TreeItem::of(rebuild_binary_hom(T, i, j - 1))});
    default:
      return Tree::node(c.k, {TreeItem::copy_slot(),
                              TreeItem::of(rebuild_binary_hom(T, c.k + 1, j)),
                              TreeItem::of(rebuild_binary_hom(T, i, c.k - 1))});
  }
}

// Externally given root: only the final merge shapes change.
template <class S>
DpResult binary_hom_fixed(const BinHomTables& T, const S& sz, int r) {
  int p = T.p;
  auto at = [p](int i, int j) { return static_cast<size_t>(i) * p + j; };
  Time best = kInfTime;
  int best_case = 0, best_k = -1;
  auto consider = [&](Time cand, int kase, int k) {
    if (cand < best) {
      best = cand;
      best_case = kase;
      best_k = k;
    }
  };
  Time gr = mul_sat(T.gamma, sz.blk(r));
  if (r == 0) {
    consider(time_add(std::max(gr, T.C[at(1, p - 1)]), T.CW[at(1, p - 1)]), 4, -1);
    for (int k = 1; k < p - 1; ++k) {
      Time first = time_add(std::max(gr, T.C[at(1, k)]), T.CW[at(1, k)]);
      consider(time_add(std::max(first, T.C[at(k + 1, p - 1)]),
                        T.CW[at(k + 1, p - 1)]),
               1, k);
    }
  } else if (r == p - 1) {
    consider(time_add(std::max(gr, T.C[at(0, p - 2)]), T.CW[at(0, p - 2)]), 5, -1);
    for (int k = 1; k < p - 1; ++k) {
      Time first = time_add(std::max(gr, T.C[at(k, p - 2)]), T.CW[at(k, p - 2)]);
      consider(time_add(std::max(first, T.C[at(0, k - 1)]), T.CW[at(0, k - 1)]),
               3, k);
    }
  } else {
    Time lfirst = time_add(std::max(gr, T.C[at(0, r - 1)]), T.CW[at(0, r - 1)]);
    consider(time_add(std::max(lfirst, T.C[at(r + 1, p - 1)]),
                      T.CW[at(r + 1, p - 1)]),
             2, r);
    Time rfirst = time_add(std::max(gr, T.C[at(r + 1, p - 1)]),
                           T.CW[at(r + 1, p - 1)]);
    consider(time_add(std::max(rfirst, T.C[at(0, r - 1)]), T.CW[at(0, r - 1)]),
             6, r);
  }
  TreePtr tree;
  switch (best_case) {
    case 4:
      tree = Tree::node(0, {TreeItem::copy_slot(),
                            TreeItem::of(rebuild_binary_hom(T, 1, p - 1))});
      break;
    case 1:
      tree = Tree::node(0, {TreeItem::copy_slot(),
                            TreeItem::of(rebuild_binary_hom(T, 1, best_k)),
                            TreeItem::of(rebuild_binary_hom(T, best_k + 1, p - 1))});
      break;
    case 5:
      tree = Tree::node(p - 1, {TreeItem::copy_slot(),
                                TreeItem::of(rebuild_binary_hom(T, 0, p - 2))});
      break;
    case 3:
      tree = Tree::node(p - 1, {TreeItem::copy_slot(),
                                TreeItem::of(rebuild_binary_hom(T, best_k, p - 2)),
                                TreeItem::of(rebuild_binary_hom(T, 0, best_k - 1))});
      break;
    case 2:
      tree = Tree::node(r, {TreeItem::copy_slot(),
                            TreeItem::of(rebuild_binary_hom(T, 0, r - 1)),
                            TreeItem::of(rebuild_binary_hom(T, r + 1, p - 1))});
      break;
    default:
      tree = Tree::node(r, {TreeItem::copy_slot(),
                            TreeItem::of(rebuild_binary_hom(T, r + 1, p - 1)),
                            TreeItem::of(rebuild_binary_hom(T, 0, r - 1))});
  }
  return DpResult{best, tree};
}

// Binary, non-homogeneous: per-root tables.
struct BinNhChoice {
  int kase = 0;
  int k = -1, a = -1, b = -1;
};

struct BinNonTables {
  int p = 0;
  std::vector<Time> C;
  std::vector<BinNhChoice> Cc;
};

template <class S>
BinNonTables build_binary_nonhom(int p, const CostModel& model, const S& sz) {
  BinNonTables T;
  T.p = p;
  size_t n = static_cast<size_t>(p) * p * p;
  T.C.assign(n, kInfTime);
  T.Cc.assign(n, BinNhChoice{});
  auto at = [p](int i, int j, int r) {
    return (static_cast<size_t>(i) * p + j) * p + r;
  };
  auto comm = [&](int sender, int receiver, std::int64_t s) -> Time {
    if (s == 0) return 0;
    Time a = model.alpha(sender, receiver);
    if (is_inf(a)) return kInfTime;
    return time_add(a, mul_sat(model.beta(sender, receiver), s));
  };

  for (int len = 1; len <= p; ++len) {
    for (int i = 0; i + len - 1 < p; ++i) {
      int j = i + len - 1;
      if (len == 1) {
        T.C[at(i, i, i)] = 0;
        continue;
      }
      for (int r = i; r <= j; ++r) {
        Time best = kInfTime;
        BinNhChoice choice;
        auto consider = [&](Time cand, int kase, int k, int a, int b) {
          if (cand < best) {
            best = cand;
            choice = BinNhChoice{kase, k, a, b};
          }
        };
        Time gr = mul_sat(model.gamma(r), sz.blk(r));
        auto side_min = [&](int lo, int hi, std::int64_t s, Time floor,
                            int* arg) {
          Time t = kInfTime;
          for (int a = lo; a <= hi; ++a) {
            Time cand = time_add(std::max(floor, T.C[at(lo, hi, a)]),
                                 comm(a, r, s));
            if (cand < t) {
              t = cand;
              *arg = a;
            }
          }
          return t;
        };
        if (r == i) {
          int a1 = -1;
          Time one = side_min(i + 1, j, sz.seg(i + 1, j), gr, &a1);
          consider(one, 4, -1, a1, -1);
          for (int k = i + 1; k < j; ++k) {
            int a = -1, b = -1;
            Time first = side_min(i + 1, k, sz.seg(i + 1, k), gr, &a);
            Time both = side_min(k + 1, j, sz.seg(k + 1, j), first, &b);
            consider(both, 1, k, a, b);
          }
        } else if (r == j) {
          int a1 = -1;
          Time one = side_min(i, j - 1, sz.seg(i, j - 1), gr, &a1);
          consider(one, 5, -1, a1, -1);
          for (int k = i + 1; k < j; ++k) {
            int a = -1, b = -1;
            Time first = side_min(k, j - 1, sz.seg(k, j - 1), gr, &a);
            Time both = side_min(i, k - 1, sz.seg(i, k - 1), first, &b);
            consider(both, 3, k, a, b);
          }
        } else {
          int a = -1, b = -1;
          Time lfirst = side_min(i, r - 1, sz.seg(i, r - 1), gr, &a);
          Time lthenr = side_min(r + 1, j, sz.seg(r + 1, j), lfirst, &b);
          consider(lthenr, 2, r, a, b);
          int a2 = -1, b2 = -1;
          Time rfirst = side_min(r + 1, j, sz.seg(r + 1, j), gr, &a2);
          Time rthenl = side_min(i, r - 1, sz.seg(i, r - 1), rfirst, &b2);
          consider(rthenl, 6, r, a2, b2);
        }
        T.C[at(i, j, r)] = best;
        T.Cc[at(i, j, r)] = choice;
      }
    }
  }
  return T;
}

TreePtr rebuild_binary_nh(const BinNonTables& T, int i, int j, int r) {
  if (i == j) return Tree::leaf(i);
  const BinNhChoice& c = T.Cc[(static_cast<size_t>(i) * T.p + j) * T.p + r];
  switch (c.kase) {
    case 1:
      return Tree::node(i, {TreeItem::copy_slot(),
                            TreeItem::of(rebuild_binary_nh(T, i + 1, c.k, c.a)),
                            TreeItem::of(rebuild_binary_nh(T, c.k + 1, j, c.b))});
    case 2:
      return Tree::node(r, {TreeItem::copy_slot(),
                            TreeItem::of(rebuild_binary_nh(T, i, r - 1, c.a)),
                            TreeItem::of(rebuild_binary_nh(T, r + 1, j, c.b))});
    case 3:
      return Tree::node(j, {TreeItem::copy_slot(),
                            TreeItem::of(rebuild_binary_nh(T, c.k, j - 1, c.a)),
                            TreeItem::of(rebuild_binary_nh(T, i, c.k - 1, c.b))});
    case 4:
      return Tree::node(i, {TreeItem::copy_slot(),
                            TreeItem::of(rebuild_binary_nh(T, i + 1, j, c.a))});
    case 5:
      return Tree::node(j, {TreeItem::copy_slot(),
                            TreeItem::of(rebuild_binary_nh(T, i, j - 1, c.a))});
    default:
      return Tree::node(r, {TreeItem::copy_slot(),
                            TreeItem::of(rebuild_binary_nh(T, r + 1, j, c.a)),
                            TreeItem::of(rebuild_binary_nh(T, i, r - 1, c.b))});
  }
}

}  // namespace

DpResult optimal_ordered_hom(const Problem& problem, const CostModel& model,
                             std::optional<int> root) {
  if (!model.is_homogeneous())
    throw UnsupportedError("optimal_ordered_hom needs a homogeneous model");
  check_optional_root(root, problem.size());
  GatherSizes sz{&problem.prefix()};
  return solve_hom(problem.size(), model.hom_alpha(), model.hom_beta(),
                   model.hom_gamma(), sz, root, true);
}

DpResult optimal_ordered_nonhom(const Problem& problem, const CostModel& model,
                                std::optional<int> root) {
  check_optional_root(root, problem.size());
  check_model_fits(model, problem.size());
  GatherSizes sz{&problem.prefix()};
  return solve_nonhom(problem.size(), model, sz, root, true);
}

DpResult optimal_binary_ordered(const Problem& problem, const CostModel& model,
                                std::optional<int> root) {
  int p = problem.size();
  check_optional_root(root, p);
  check_model_fits(model, p);
  GatherSizes sz{&problem.prefix()};
  if (p == 1)
    return DpResult{mul_sat(model.gamma(0), problem.block(0)),
                    Tree::node(0, {TreeItem::copy_slot()})};
  if (model.is_homogeneous()) {
    BinHomTables T = build_binary_hom(p, model.hom_alpha(), model.hom_beta(),
                                      model.hom_gamma(), sz);
    if (root) return binary_hom_fixed(T, sz, *root);
    return DpResult{T.C[static_cast<size_t>(p - 1)],
                    rebuild_binary_hom(T, 0, p - 1)};
  }
  BinNonTables T = build_binary_nonhom(p, model, sz);
  auto at = [p](int i, int j, int r) {
    return (static_cast<size_t>(i) * p + j) * p + r;
  };
  int best_root = root ? *root : 0;
  if (!root) {
    Time best = kInfTime;
    for (int r = 0; r < p; ++r)
      if (T.C[at(0, p - 1, r)] < best) {
        best = T.C[at(0, p - 1, r)];
        best_root = r;
      }
  }
  return DpResult{T.C[at(0, p - 1, best_root)],
                  rebuild_binary_nh(T, 0, p - 1, best_root)};
}

DpResult optimal_broadcast_ordered(int p, std::int64_t m,
                                   const CostModel& model,
                                   std::optional<int> root) {
  if (p < 1) throw ArgumentError("p must be at least 1");
  if (m < 0) throw ArgumentError("m must be non-negative");
  check_optional_root(root, p);
  check_model_fits(model, p);
  ConstSizes sz{m};
  if (model.is_homogeneous())
    return solve_hom(p, model.hom_alpha(), model.hom_beta(), model.hom_gamma(),
                     sz, root, false);
  return solve_nonhom(p, model, sz, root, false);
}

namespace {

Time broadcast_fold(const Tree& t, std::int64_t m, const CostModel& model) {
  Time acc = 0;
  for (const auto& item : t.items) {
    if (item.is_copy()) {
      acc = time_add(acc, mul_sat(model.gamma(t.rank), m));
      continue;
    }
    Time child = broadcast_fold(*item.child, m, model);
    Time w = m > 0 ? comm_cost(model, item.child->rank, t.rank, m) : 0;
    acc = time_add(std::max(acc, child), w);
  }
  return acc;
}

}  // namespace

Time broadcast_evaluate(const Tree& tree, int p, std::int64_t m,
                        const CostModel& model) {
  auto violations = validate_tree(tree, p);
  if (!violations.empty())
    throw StructureError("broadcast_evaluate on invalid tree: " +
                         violations.front());
  if (p == 1) return 0;  // a lone root has nothing to forward or copy
  return broadcast_fold(tree, m, model);
}

}  // namespace gst
