#include "ptower/levels.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>

namespace ptower {

namespace {

i64 mod(i64 x, i64 m) {
  i64 r = x % m;
  return r < 0 ? r + m : r;
}

M22 reduce_m(const M22& g, i64 m) { return {mod(g.a, m), mod(g.b, m), mod(g.c, m), mod(g.d, m)}; }

M22 mul_m(const M22& x, const M22& y, i64 m) {
  return {mod(x.a * y.a + x.b * y.c, m), mod(x.a * y.b + x.b * y.d, m),
          mod(x.c * y.a + x.d * y.c, m), mod(x.c * y.b + x.d * y.d, m)};
}

M22 neg_m(const M22& g, i64 m) { return {mod(-g.a, m), mod(-g.b, m), mod(-g.c, m), mod(-g.d, m)}; }

M22 inv_m(const M22& g, i64 m) { return reduce_m({g.d, -g.b, -g.c, g.a}, m); }

i64 inv_mod(i64 a, i64 m) {
  a = mod(a, m);
  i64 t0 = 0, t1 = 1, r0 = m, r1 = a;
  while (r1) {
    i64 q = r0 / r1, t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = t0 - q * t1;
    t0 = t1;
    t1 = t;
  }
  check(r0 == 1, "NotAUnit", "inverse mod m");
  return mod(t0, m);
}

const M22 MAT_S{0, -1, 1, 0};
const M22 MAT_SIGMA{0, -1, 1, -1};  // order 3 in PSL2, rotates (0, 1, inf)
const M22 MAT_T{1, 1, 0, 1};

bool member_p(const LevelSpec& spec, const M22& gp, i64 pc) {
  for (auto& cond : spec.conds) {
    i64 du = cond.u.det();
    M22 u = reduce_m(cond.u, pc);
    M22 ui = reduce_m(M22{cond.u.d * du, -cond.u.b * du, -cond.u.c * du, cond.u.a * du}, pc);
    M22 w = mul_m(mul_m(ui, gp, pc), u, pc);
    i64 pb = 1, pg = 1, pd = 1;
    for (int i = 0; i < cond.beta; ++i) pb *= spec.p;
    for (int i = 0; i < cond.gamma; ++i) pg *= spec.p;
    for (int i = 0; i < cond.delta; ++i) pd *= spec.p;
    if (mod(w.b, pb) != 0 || mod(w.c, pg) != 0 || mod(w.d - 1, pd) != 0) return false;
  }
  return true;
}

std::vector<M22> enumerate_p_subgroup(const LevelSpec& spec, i64 pc) {
  const i64 p = spec.p;
  std::vector<M22> raw;
  auto push_all_dets = [&](i64 aa, i64 bb, i64 cc, i64 dd, std::vector<M22>& out) {
    if (mod(aa * dd - bb * cc - 1, pc) == 0) out.push_back({aa, bb, cc, dd});
  };
  if (spec.conds.empty()) {
    for (i64 a = 0; a < pc; ++a)
      for (i64 b = 0; b < pc; ++b)
        for (i64 c = 0; c < pc; ++c) {
          if (a % p != 0) {
            i64 d = mod((1 + b * c) * inv_mod(a, pc), pc);
            raw.push_back({a, b, c, d});
          } else {
            for (i64 d = 0; d < pc; ++d) push_all_dets(a, b, c, d, raw);
          }
        }
  } else {
    const auto& b0 = spec.conds[0];
    i64 pb = 1, pg = 1, pd = 1;
    for (int i = 0; i < b0.beta; ++i) pb *= p;
    for (int i = 0; i < b0.gamma; ++i) pg *= p;
    for (int i = 0; i < b0.delta; ++i) pd *= p;
    i64 du = b0.u.det();
    M22 u = reduce_m(b0.u, pc);
    M22 ui = reduce_m(M22{b0.u.d * du, -b0.u.b * du, -b0.u.c * du, b0.u.a * du}, pc);
    for (i64 bb = 0; bb < pc; bb += pb)
      for (i64 cc = 0; cc < pc; cc += pg)
        for (i64 t = 0; t < pc / pd; ++t) {
          i64 dd = mod(1 + t * pd, pc);
          if (dd % p != 0) {
            i64 aa = mod((1 + bb * cc) * inv_mod(dd, pc), pc);
            raw.push_back(mul_m(mul_m(u, M22{aa, bb, cc, dd}, pc), ui, pc));
          } else {
            for (i64 aa = 0; aa < pc; ++aa)
              if (mod(aa * dd - bb * cc - 1, pc) == 0)
                raw.push_back(mul_m(mul_m(u, M22{aa, bb, cc, dd}, pc), ui, pc));
          }
        }
  }
  std::vector<M22> out;
  for (auto& g : raw)
    if (member_p(spec, g, pc)) out.push_back(g);
  return out;
}

}  // namespace

std::string LevelSpec::key() const {
  std::ostringstream os;
  os << "N" << N << "p" << p;
  for (auto& c : conds)
    os << "|u" << c.u.a << "," << c.u.b << "," << c.u.c << "," << c.u.d << ";" << c.beta << ","
       << c.gamma << "," << c.delta;
  return os.str();
}

LevelSpec level_full(i64 N, i64 p) {
  LevelSpec s;
  s.N = N;
  s.p = p;
  s.label = "full";
  return s;
}

LevelSpec level_box(i64 N, i64 p, int beta, int gamma, int delta) {
  LevelSpec s;
  s.N = N;
  s.p = p;
  s.conds.push_back({M22{1, 0, 0, 1}, beta, gamma, delta});
  std::ostringstream os;
  os << "box(" << beta << "," << gamma << "," << delta << ")";
  s.label = os.str();
  return s;
}

LevelSpec level_Vr(i64 N, i64 p, int r) {
  LevelSpec s = level_box(N, p, 0, r, r);
  s.label = "V" + std::to_string(r);
  return s;
}
LevelSpec level_Ur(i64 N, i64 p, int r) {
  LevelSpec s = level_box(N, p, r, 0, r);
  s.label = "U" + std::to_string(r);
  return s;
}
LevelSpec level_J(i64 N, i64 p) {
  LevelSpec s = level_box(N, p, 0, 1, 0);
  s.label = "J";
  return s;
}
LevelSpec level_Jbar(i64 N, i64 p) {
  LevelSpec s = level_box(N, p, 1, 0, 0);
  s.label = "Jbar";
  return s;
}
LevelSpec level_JJbar(i64 N, i64 p) {
  LevelSpec s = level_box(N, p, 1, 1, 0);
  s.label = "JJbar";
  return s;
}

LevelSpec level_conj(i64 N, i64 p, std::vector<LevelSpec::Box> conds, const std::string& label) {
  LevelSpec s;
  s.N = N;
  s.p = p;
  s.conds = std::move(conds);
  s.label = label;
  return s;
}

bool CosetTable::p_member(const M22& gp) const { return member_p(spec_, reduce_m(gp, pc_), pc_); }

int CosetTable::p1_id(const M22& gN) const {
  if (spec_.N == 1) return 0;
  return p1_canon_[mod(gN.c, spec_.N) * spec_.N + mod(gN.d, spec_.N)];
}

CosetTable::Key CosetTable::key_of(const M22& gN, const M22& gp) const {
  u64 packed = ((u64)gp.a << 48) | ((u64)gp.b << 32) | ((u64)gp.c << 16) | (u64)gp.d;
  return Key{(u64)p1_id(gN), packed};
}

void CosetTable::insert_orbit(const M22& gN, const M22& gp, int id) {
  M22 gpc = reduce_m(gp, pc_);
  for (auto& s : subgroup_p_) {
    M22 x = mul_m(s, gpc, pc_);
    hash_.emplace(key_of(gN, x), id);
    hash_.emplace(key_of(neg_m(gN, spec_.N), neg_m(x, pc_)), id);
  }
}

CosetTable::CosetTable(const LevelSpec& spec) : spec_(spec) {
  const i64 N = spec.N, p = spec.p;
  check(is_prime(p), "BadPrime", "p must be prime");
  check(N >= 1 && N % p != 0, "BadArgument", "tame level must be coprime to p");
  int mc = spec.cond_exp();
  pc_ = 1;
  for (int i = 0; i < mc; ++i) pc_ *= p;
  check(pc_ < (1 << 16), "Overflow", "p-part modulus too large for coset keys");
  pstore_ = pc_;
  {
    int e = mc;
    int want = std::max(mc + 1, 5);
    while (e < want && pstore_ <= ((i64)1 << 24) / p) {
      pstore_ *= p;
      ++e;
    }
  }

  if (N > 1) {
    p1_canon_.assign(N * N, -1);
    std::vector<i64> units;
    for (i64 u = 1; u < N; ++u)
      if (std::gcd(u, N) == 1) units.push_back(u);
    int next = 0;
    for (i64 c = 0; c < N; ++c)
      for (i64 d = 0; d < N; ++d) {
        if (p1_canon_[c * N + d] >= 0) continue;
        if (std::gcd(std::gcd(c == 0 ? N : c, d == 0 ? N : d), N) != 1) {
          p1_canon_[c * N + d] = 1 << 20;  // not unimodular; never a valid key
          continue;
        }
        int id = next++;
        for (i64 u : units) p1_canon_[mod(u * c, N) * N + mod(u * d, N)] = id;
      }
  }

  subgroup_p_ = enumerate_p_subgroup(spec_, pc_);
  check(!subgroup_p_.empty(), "Internal", "empty level subgroup");
  minus_id_ = p_member(reduce_m(M22{-1, 0, 0, -1}, pc_));

  {
    M22 idN = reduce_m(M22{}, N), idP = reduce_m(M22{}, pstore_);
    cosN_.push_back(idN);
    cosP_.push_back(idP);
    insert_orbit(idN, idP, 0);
    std::vector<int> queue{0};
    const M22 gens[3] = {MAT_T, {1, -1, 0, 1}, MAT_S};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int c = queue[qi];
      M22 wN = cosN_[c], wP = cosP_[c];
      for (auto& g : gens) {
        M22 nN = mul_m(wN, g, N), nP = mul_m(wP, g, pstore_);
        auto it = hash_.find(key_of(nN, reduce_m(nP, pc_)));
        if (it == hash_.end()) {
          int id = (int)cosN_.size();
          cosN_.push_back(nN);
          cosP_.push_back(nP);
          insert_orbit(nN, nP, id);
          queue.push_back(id);
        }
      }
    }
  }
  int n = size();

  auto act_by = [&](const M22& g) {
    std::vector<int> perm(n);
    for (int c = 0; c < n; ++c) {
      M22 nN = mul_m(cosN_[c], g, N);
      M22 nP = mul_m(cosP_[c], g, pstore_);
      auto it = hash_.find(key_of(nN, reduce_m(nP, pc_)));
      check(it != hash_.end(), "Internal", "coset action fell outside the table");
      perm[c] = it->second;
    }
    return perm;
  };
  actS_ = act_by(MAT_S);
  actSig_ = act_by(MAT_SIGMA);
  actT_ = act_by(MAT_T);

  for (int c = 0; c < n; ++c) {
    if (actS_[c] == c)
      fail("TorsionAtLevel", "elliptic element of order 2 at level " + spec_.label +
                                 " (coset " + std::to_string(c) + ")");
    if (actSig_[c] == c)
      fail("TorsionAtLevel", "elliptic element of order 3 at level " + spec_.label);
  }

  edge_of_.assign(n, -1);
  fold_sign_.assign(n, 1);
  fold_t_.assign(n, M22{});
  for (int c = 0; c < n; ++c) {
    if (edge_of_[c] >= 0) continue;
    int c2 = actS_[c];
    int e = nedges_++;
    edge_rep_.push_back(c);
    edge_of_[c] = e;
    edge_of_[c2] = e;
    fold_sign_[c] = 1;
    fold_t_[c] = M22{};
    // [g_{c2}, w] = -[g_{c2} S, w]; g_{c2} S = ±gamma g_c, so the chain
    // [g_{c2}, w] equals -[g_c, rho(gamma^{-1}) w]. Store t = gamma^{-1}.
    M22 gS = mul_m(cosP_[c2], MAT_S, pstore_);
    M22 gamma_p = mul_m(gS, inv_m(cosP_[c], pstore_), pstore_);
    // resolve the global sign so gamma is the honest group element
    M22 gSN = mul_m(cosN_[c2], MAT_S, N);
    M22 gamma_N = mul_m(gSN, inv_m(cosN_[c], N), N);
    if (!(member_p(spec_, reduce_m(gamma_p, pc_), pc_) &&
          (N == 1 || mod(gamma_N.c, N) == 0))) {
      gamma_p = neg_m(gamma_p, pstore_);
      M22 gnn = neg_m(gamma_N, N);
      check(member_p(spec_, reduce_m(gamma_p, pc_), pc_) && (N == 1 || mod(gnn.c, N) == 0),
            "Internal", "fold transport is not in the level group");
    }
    fold_sign_[c2] = -1;
    fold_t_[c2] = inv_m(gamma_p, pstore_);
  }

  face_of_.assign(n, -1);
  rot_of_.assign(n, 0);
  for (int c = 0; c < n; ++c) {
    if (face_of_[c] >= 0) continue;
    int f = nfaces_++;
    face_rep_.push_back(c);
    int c1 = actSig_[c], c2 = actSig_[c1];
    check(actSig_[c2] == c, "Internal", "sigma orbit is not a 3-cycle");
    face_of_[c] = face_of_[c1] = face_of_[c2] = f;
    rot_of_[c] = 0;
    rot_of_[c1] = 1;
    rot_of_[c2] = 2;
  }

  cusp_of_.assign(n, -1);
  for (int c = 0; c < n; ++c) {
    if (cusp_of_[c] >= 0) continue;
    int id = ncusps_++;
    int x = c;
    while (cusp_of_[x] < 0) {
      cusp_of_[x] = id;
      x = actT_[x];
    }
  }

  check(n % 6 == 0, "Internal", "PSL index of a torsion-free level is divisible by 6");
  i64 chi = ncusps_ - (i64)n / 6;
  genus_ = (2 - chi) / 2;
  check(2 - chi == 2 * genus_ && genus_ >= 0, "Internal", "inconsistent genus");
}

std::pair<int, M22> CosetTable::locate(const M22& g) const {
  check(g.det() == 1, "BadArgument", "coset lookup needs det 1");
  M22 gN = reduce_m(g, spec_.N), gP = reduce_m(g, pstore_);
  auto it = hash_.find(key_of(gN, reduce_m(gP, pc_)));
  check(it != hash_.end(), "Internal", "matrix not found in coset table");
  int c = it->second;
  M22 cand = mul_m(gP, inv_m(cosP_[c], pstore_), pstore_);
  M22 candN = mul_m(gN, inv_m(cosN_[c], spec_.N), spec_.N);
  auto in_gamma = [&](const M22& xp, const M22& xn) {
    return member_p(spec_, reduce_m(xp, pc_), pc_) && (spec_.N == 1 || mod(xn.c, spec_.N) == 0);
  };
  if (!in_gamma(cand, candN)) {
    cand = neg_m(cand, pstore_);
    candN = neg_m(candN, spec_.N);
    check(in_gamma(cand, candN), "Internal", "transport is not in the level group");
  }
  return {c, cand};
}

int CosetTable::coset_of(const M22& g) const { return locate(g).first; }

M22 lift_sl2_mod(i64 M, const M22& target) {
  i64 a = mod(target.a, M), b = mod(target.b, M);
  i64 cc = mod(target.c, M), d = mod(target.d, M);
  check(mod(a * d - b * cc - 1, M) == 0, "BadArgument", "lift target must have det 1 mod M");
  if (cc == 0 && mod(d, M) == 0) fail("BadArgument", "zero bottom row");
  if (cc == 0) cc = M;
  for (int tries = 0; std::gcd(cc, d) != 1; ++tries) {
    check(tries < 4096, "Internal", "failed to make bottom row coprime");
    d += M;
  }
  // particular solution x*d - y*cc = 1
  i64 x, y;
  {
    i64 r0 = d, r1 = cc, x0 = 1, x1 = 0;
    while (r1) {
      i64 q = r0 / r1, t = r0 - q * r1;
      r0 = r1;
      r1 = t;
      t = x0 - q * x1;
      x0 = x1;
      x1 = t;
    }
    i64 sgn = r0 < 0 ? -1 : 1;
    check(r0 == 1 || r0 == -1, "Internal", "bottom row not coprime");
    x = x0 * sgn;
    y = (x * d - 1) / cc;
  }
  // general solution (x + t*cc, y + t*d); pick t matching the top row mod M
  i64 t_sol = 0, mod_acc = 1;
  i64 rem = M;
  for (i64 q = 2; q <= rem; ++q) {
    if (rem % q) continue;
    i64 qe = 1;
    while (rem % q == 0) {
      rem /= q;
      qe *= q;
    }
    i64 tq;
    if (mod(cc, q) != 0)
      tq = mod(mod(a - x, qe) * inv_mod(mod(cc, qe), qe), qe);
    else
      tq = mod(mod(b - y, qe) * inv_mod(mod(d, qe), qe), qe);
    i64 inv = inv_mod(mod_acc % qe, qe);
    i64 diff = mod(mod(tq - t_sol, qe) * inv, qe);
    t_sol = t_sol + mod_acc * diff;
    mod_acc *= qe;
  }
  M22 out{x + t_sol * cc, y + t_sol * d, cc, d};
  check(out.det() == 1, "Internal", "lift is not unimodular");
  check(mod(out.a - a, M) == 0 && mod(out.b - b, M) == 0 && mod(out.c - cc, M) == 0 &&
            mod(out.d - d, M) == 0,
        "Internal", "lift does not match the target");
  return out;
}

M22 CosetTable::small_lift(int c) const {
  {
    std::lock_guard<std::mutex> lock(lift_mutex_);
    if (lift_cache_.empty()) lift_cache_.assign(size(), M22{0, 0, 0, 0});
    if (lift_cache_[c].det() == 1) return lift_cache_[c];
  }
  const i64 N = spec_.N, M = N * pstore_;
  auto crt = [&](i64 xN, i64 xP) {
    if (N == 1) return mod(xP, M);
    i64 inv = inv_mod(pstore_ % N, N);
    i64 t = mod((xN - xP) % N * inv, N);
    return mod(xP + pstore_ * t, M);
  };
  M22 target{crt(cosN_[c].a, cosP_[c].a), crt(cosN_[c].b, cosP_[c].b),
             crt(cosN_[c].c, cosP_[c].c), crt(cosN_[c].d, cosP_[c].d)};
  M22 out = lift_sl2_mod(M, target);
  std::lock_guard<std::mutex> lock(lift_mutex_);
  lift_cache_[c] = out;
  return out;
}

namespace {
std::mutex table_mutex;
std::unordered_map<std::string, std::shared_ptr<const CosetTable>> table_cache;
}  // namespace

std::shared_ptr<const CosetTable> coset_table(const LevelSpec& spec) {
  std::lock_guard<std::mutex> lock(table_mutex);
  auto it = table_cache.find(spec.key());
  if (it != table_cache.end()) return it->second;
  auto t = std::make_shared<const CosetTable>(spec);
  table_cache.emplace(spec.key(), t);
  return t;
}

bool level_subgroup(const LevelSpec& sub, const LevelSpec& sup) {
  if (sub.N % sup.N != 0 || sub.p != sup.p) return false;
  int mc = std::max(sub.cond_exp(), sup.cond_exp());
  i64 pc = 1;
  for (int i = 0; i < mc; ++i) pc *= sub.p;
  if (pc >= (1 << 16)) return false;
  auto elems = enumerate_p_subgroup(sub, pc);
  for (auto& g : elems)
    if (!member_p(sup, g, pc)) return false;
  return true;
}

}  // namespace ptower
