#include "gaudin/checks.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>
#include <set>

#include "gaudin/fock.hpp"

namespace gaudin {

namespace {

class Stopwatch {
 public:
  // Milliseconds since construction or the previous lap.
  double lap() {
    auto now = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
    return ms;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

std::string bound_string(int b) {
  if (b <= kNegInf) return "-inf";
  if (b >= kPosInf) return "+inf";
  return std::to_string(b);
}

std::string pdo_window(int v_floor, int d_floor, char var) {
  return std::string(1, var) + ">=" + bound_string(v_floor) + ", d>=" + bound_string(d_floor);
}

std::string slot_index(int deg, int order, char var) {
  return std::string(1, var) + "^" + std::to_string(deg) + " d^" + std::to_string(order);
}

std::vector<Slot> compare_slots(const PDO& lhs, const PDO& rhs, char var, const std::string& prefix) {
  const int vf = std::max(lhs.v_floor(), rhs.v_floor());
  const int df = std::max(lhs.d_floor(), rhs.d_floor());
  CoeffTable a = coeff_table(lhs), b = coeff_table(rhs);
  std::set<std::pair<int, int>> keys;
  for (const auto& [k, c] : a.entries) keys.insert(k);
  for (const auto& [k, c] : b.entries) keys.insert(k);
  std::vector<Slot> out;
  for (const auto& [deg, order] : keys) {
    if (deg < vf || order < df) continue;
    out.push_back({prefix + slot_index(deg, order, var), a.at(deg, order) == b.at(deg, order) ? "pass" : "fail"});
  }
  if (out.empty()) {
    const bool reachable = vf <= std::max(lhs.v_top(), rhs.v_top()) && df <= std::max(lhs.d_top(), rhs.d_top());
    const bool both_zero = lhs.is_zero() && rhs.is_zero();
    out.push_back({prefix + "all", reachable || both_zero ? "pass" : "uncertified"});
  }
  return out;
}

// The Berezinian of B-hat is polynomial in v of degree <= k, so its v-direction
// only needs a few negative degrees to certify the support; the same holds for
// the derivation direction on the G-hat side.
constexpr int kShallowFloor = -3;

ModelParams shallow_spectral(const ModelParams& p) {
  ModelParams q = p;
  q.trunc.v_floor = std::max(p.trunc.v_floor, kShallowFloor);
  return q;
}

std::vector<std::vector<int>> compositions(int total, int parts, const std::vector<int>& caps) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(parts, 0);
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == parts - 1) {
      if (left <= caps[i]) {
        cur[i] = left;
        out.push_back(cur);
      }
      return;
    }
    for (int e = 0; e <= std::min(left, caps[i]); ++e) {
      cur[i] = e;
      self(self, i + 1, left - e);
    }
  };
  if (parts > 0) rec(rec, 0, total);
  return out;
}

std::string vec_string(const std::vector<int>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

std::vector<int> identity_perm(int n) {
  std::vector<int> s(n);
  std::iota(s.begin(), s.end(), 0);
  return s;
}

// Portable draws from mt19937 (distribution objects differ between libraries).
int draw(std::mt19937& rng, int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1)); }

PDO random_pdo(std::mt19937& rng, const ModelParams& p) {
  const Layout l = p.layout();
  PDO out;
  const int terms = draw(rng, 1, 3);
  for (int t = 0; t < terms; ++t) {
    std::map<int, NOElement> coeffs;
    for (int c = 0; c < 2; ++c) {
      NOElement e(Rational(draw(rng, -3, 3)));
      if (draw(rng, 0, 1)) {
        const int g = draw(rng, 0, l.generators() - 1), h = draw(rng, 0, l.generators() - 1);
        e += NOElement::x(l, l.row_of(g), l.col_of(g)) * NOElement::del(l, l.row_of(h), l.col_of(h)) *
             Rational(draw(rng, -3, 3));
      }
      coeffs[draw(rng, 0, 2)] += e;
    }
    VSeries s(std::move(coeffs), kNegInf, 2);
    if (draw(rng, 0, 1)) s = VSeries::mul(s, VSeries::pole(Rational(draw(rng, -3, 3)), p.trunc.v_floor), p.trunc.v_floor);
    out += PDO::monomial(s, draw(rng, -2, 2));
  }
  return out.with_caps(p.trunc);
}

}  // namespace

bool IdentityReport::passed() const {
  return !slots.empty() && std::all_of(slots.begin(), slots.end(), [](const Slot& s) { return s.status == "pass"; });
}

int IdentityReport::count(const std::string& status) const {
  return static_cast<int>(std::count_if(slots.begin(), slots.end(), [&](const Slot& s) { return s.status == status; }));
}

bool all_passed(const ReportList& reports) {
  return !reports.empty() && std::all_of(reports.begin(), reports.end(), [](const IdentityReport& r) { return r.passed(); });
}

namespace {

IdentityReport compare_in(const std::string& identity, const PDO& lhs, const PDO& rhs, char var) {
  IdentityReport r;
  r.identity = identity;
  r.window = pdo_window(std::max(lhs.v_floor(), rhs.v_floor()), std::max(lhs.d_floor(), rhs.d_floor()), var);
  r.slots = compare_slots(lhs, rhs, var, "");
  return r;
}

}  // namespace

IdentityReport compare(const std::string& identity, const PDO& lhs, const PDO& rhs) {
  return compare_in(identity, lhs, rhs, 'v');
}

IdentityReport compare(const std::string& identity, const WSeries& lhs, const WSeries& rhs) {
  IdentityReport r;
  r.identity = identity;
  const int top = std::min(lhs.w_top(), rhs.w_top());
  r.window = "w<=" + bound_string(top);
  std::set<int> powers;
  for (const auto& [pw, c] : lhs.coeffs()) powers.insert(pw);
  for (const auto& [pw, c] : rhs.coeffs()) powers.insert(pw);
  for (int pw : powers) {
    if (pw > top) continue;
    auto s = compare_slots(lhs.coeff(pw), rhs.coeff(pw), 'v', "w^" + std::to_string(pw) + " ");
    r.slots.insert(r.slots.end(), s.begin(), s.end());
  }
  if (r.slots.empty()) r.slots.push_back({"all", top >= 0 ? "pass" : "uncertified"});
  return r;
}

ReportList verify_duality(const ModelParams& p) {
  Stopwatch sw;
  DualityResult d = duality_check(p);
  IdentityReport r;
  r.identity = "b[r,s] = g[s,r]";
  r.window = "r in 0.." + std::to_string(p.k) + ", s in [" + std::to_string(d.s_min) + "," + std::to_string(d.s_max) +
             "]; b: " + pdo_window(d.b.first_floor, d.b.second_floor, 'v') +
             "; g: " + pdo_window(d.g.first_floor, d.g.second_floor, 'u');
  r.slots = d.slots;
  r.tables = {{"b", d.b}, {"g", d.g}};
  r.elapsed_ms = sw.lap();
  return {r};
}

ReportList verify_capelli_g(const ModelParams& p) {
  p.validate();
  Stopwatch sw;
  PDO native = cdet_G(p);
  PDO closed = capelli_sum_G(p);
  IdentityReport a = compare_in("cdet G = Capelli sum", native, closed, 'u');
  a.elapsed_ms = sw.lap();
  IdentityReport b = compare_in("cdet G = supercommutative expansion", native, capelli_oracle_G(p), 'u');
  b.elapsed_ms = sw.lap();
  return {a, b};
}

ReportList verify_capelli_bhat(const ModelParams& p) {
  p.validate();
  ModelParams q = shallow_spectral(p);
  Stopwatch sw;
  PDO native = ber_Bhat(q);
  PDO closed = capelli_sum_Bhat(q);
  IdentityReport a = compare("Ber B-hat = Capelli sum", native, closed);
  const int df = std::max(native.d_floor(), closed.d_floor());
  a.slots.push_back({"d-window reaches -6", df <= -6 ? "pass" : "uncertified"});
  a.elapsed_ms = sw.lap();
  IdentityReport b = compare("Ber B-hat = supercommutative expansion", native, capelli_oracle_Bhat(q));
  b.elapsed_ms = sw.lap();
  return {a, b};
}

ReportList verify_ber_invariance(const ModelParams& p) {
  p.validate();
  ReportList out;
  Stopwatch sw;
  const Truncation& t = p.trunc;
  NCMatrix<PDO> bhat = build_Bhat(p);
  const int size = bhat.size();
  PDO base = ber_parity(bhat, t);
  WSeries base_w = ber_parity(affine_lift(bhat, t.w_top), t).truncated(t.w_top);
  const auto& s = bhat.parity().entries();
  const int shift = -std::accumulate(s.begin(), s.end(), 0);
  // The shift moves powers down, so the lift is taken deeper to keep the image
  // exact through w_top.
  Truncation deep = t;
  deep.w_top = t.w_top - shift;
  WSeries lifted_deep = ber_parity(affine_lift(bhat, deep.w_top), deep).truncated(deep.w_top);
  WSeries image = phi_hat_map(base, t.w_top), rescaled = lifted_deep.shifted(shift);
  IdentityReport img =
      compare("shift image of Ber B-hat = w^" + std::to_string(shift) + " Ber(1 + w B-hat)", image, rescaled);
  if (std::min(image.w_top(), rescaled.w_top()) < t.w_top)
    img.slots.push_back({"w-window reaches " + std::to_string(t.w_top), "uncertified"});
  img.elapsed_ms = sw.lap();
  out.push_back(img);

  for (int i = 0; i + 1 < size; ++i) {
    std::vector<int> sigma = identity_perm(size);
    std::swap(sigma[i], sigma[i + 1]);
    NCMatrix<PDO> moved = permute(bhat, sigma);
    const std::string name = "(" + std::to_string(i + 1) + " " + std::to_string(i + 2) + ")";
    IdentityReport native = compare("Ber B-hat invariant under " + name, ber_parity(moved, t), base);
    native.elapsed_ms = sw.lap();
    out.push_back(native);
    WSeries moved_w = ber_parity(affine_lift(moved, t.w_top), t).truncated(t.w_top);
    IdentityReport lifted = compare("Ber(1 + w B-hat) invariant under " + name, moved_w, base_w);
    lifted.elapsed_ms = sw.lap();
    out.push_back(lifted);
  }
  for (int r = 1; r <= size; ++r) {
    IdentityReport block = compare("block Berezinian at split " + std::to_string(r) + " = Ber B-hat",
                                   block_ber(bhat, r, t), base);
    block.elapsed_ms = sw.lap();
    out.push_back(block);
  }
  return out;
}

ReportList verify_manin(const ModelParams& p, bool with_affine_inverse) {
  p.validate();
  Stopwatch sw;
  IdentityReport r;
  r.identity = "Manin relations";
  r.window = "v>=" + bound_string(p.trunc.v_floor) + ", d>=" + bound_string(p.trunc.d_floor) +
             ", w<=" + std::to_string(p.trunc.w_top);
  auto add = [&](const std::string& name, const std::optional<ManinViolation>& v) {
    if (!v) {
      r.slots.push_back({name, "pass"});
      return;
    }
    r.slots.push_back({name + " at (" + std::to_string(v->i) + "," + std::to_string(v->j) + "," +
                           std::to_string(v->p) + "," + std::to_string(v->q) + ")",
                       "fail"});
  };
  add("G", is_manin(build_G(p)));
  add("B", is_manin(build_B(p)));
  add("B-hat", is_manin(build_Bhat(p)));
  add("G-hat", is_manin(build_Ghat(p)));
  if (with_affine_inverse)
    add("(1 + w B)^-1", is_manin(affine_inverse(affine_lift(build_B(p), p.trunc.w_top), p.trunc)));
  r.elapsed_ms = sw.lap();
  return {r};
}

ReportList verify_commutativity(const ModelParams& p, int max_degree, int max_w, int v_depth) {
  p.validate();
  Stopwatch sw;
  ModelParams q = p;
  q.trunc.w_top = max_w;
  WSeries e = expand_bethe(q);
  const Layout l = p.layout();

  std::vector<std::pair<std::string, NOElement>> ops;
  std::set<std::string> seen;
  bool certified = e.w_top() >= max_w;
  for (int r = 1; r <= max_w; ++r)
    for (int s = 0; s <= r; ++s) {
      VSeries c = bethe_coefficient(e, r, s);
      if (c.floor() > -v_depth) certified = false;
      for (int d = 0; d >= -v_depth; --d) {
        NOElement el = c.coeff(d);
        if (el.is_zero() || el.is_scalar() || !seen.insert(el.to_string()).second) continue;
        ops.push_back({"B[" + std::to_string(r) + "," + std::to_string(s) + "] v^" + std::to_string(d), el});
      }
    }

  IdentityReport comm;
  comm.identity = "Bethe coefficients commute";
  comm.window = "w<=" + std::to_string(max_w) + ", v>=-" + std::to_string(v_depth) + ", degree<=" +
                std::to_string(max_degree) + ", " + std::to_string(ops.size()) + " operators";
  if (!certified) comm.slots.push_back({"expansion window", "uncertified"});

  // Duality at the operator level on the same spaces.
  DualityResult d = duality_check(p);
  IdentityReport dual;
  dual.identity = "b[r,s] and g[s,r] act identically";
  dual.window = comm.window;

  std::vector<int> col_caps(p.k, max_degree), row_caps;
  for (int i = 1; i <= p.rows(); ++i) row_caps.push_back(i <= p.m ? max_degree : p.k);
  for (int deg = 0; deg <= max_degree; ++deg)
    for (const auto& lam : compositions(deg, p.k, col_caps))
      for (const auto& mu : compositions(deg, p.rows(), row_caps)) {
        auto basis = weight_basis(l, lam, mu);
        if (basis.empty()) continue;
        const std::string space = "lambda=" + vec_string(lam) + " mu=" + vec_string(mu);
        std::string status = "pass";
        try {
          std::vector<RationalMatrix> mats;
          for (const auto& [name, op] : ops) mats.push_back(operator_matrix(op, l, basis));
          for (std::size_t a = 0; a < mats.size() && status == "pass"; ++a)
            for (std::size_t b = a + 1; b < mats.size(); ++b)
              if (matrix_product(mats[a], mats[b]) != matrix_product(mats[b], mats[a])) {
                status = "fail";
                break;
              }
        } catch (const Error&) {
          status = "fail";
        }
        comm.slots.push_back({space, status});

        std::string dstatus = "pass";
        for (int r = 0; r <= p.k && dstatus == "pass"; ++r)
          for (int s = d.s_min; s <= d.s_max; ++s) {
            if (!d.b.certified(r, s) || !d.g.certified(s, r)) continue;
            try {
              if (operator_matrix(d.b.at(r, s), l, basis) != operator_matrix(d.g.at(s, r), l, basis)) {
                dstatus = "fail";
                break;
              }
            } catch (const Error&) {
              dstatus = "fail";
              break;
            }
          }
        dual.slots.push_back({space, dstatus});
      }
  comm.elapsed_ms = sw.lap();
  dual.elapsed_ms = 0;
  return {comm, dual};
}

ReportList verify_classical_duality(int m, int n, int k) {
  ModelParams probe;
  probe.m = m;
  probe.n = n;
  probe.k = k;
  probe.z.resize(k);
  for (int a = 0; a < k; ++a) probe.z[a] = Rational(a);
  probe.lambda.resize(m + n);
  probe.validate();
  Stopwatch sw;
  const Layout l(m, n, k);
  IdentityReport r;
  r.identity = "[pi_mn(e_ij), pi_k(e_ab)] = 0";
  r.window = "exact";
  for (int i = 1; i <= m + n; ++i)
    for (int j = 1; j <= m + n; ++j)
      for (int a = 1; a <= k; ++a)
        for (int b = 1; b <= k; ++b) {
          NOElement c = super_commutator(pi_mn(l, i, j), pi_k(l, a, b));
          r.slots.push_back({"e" + std::to_string(i) + std::to_string(j) + ",e" + std::to_string(a) + std::to_string(b),
                             c.is_zero() ? "pass" : "fail"});
        }
  r.elapsed_ms = sw.lap();
  return {r};
}

ReportList verify_phi(const ModelParams& p, unsigned seed, int pairs) {
  p.validate();
  Stopwatch sw;
  const int top = p.trunc.w_top;
  WSeries lhs = phi_map(ber_B(p), top).shifted(p.m - p.n).truncated(top);
  WSeries rhs = expand_bethe(p);
  IdentityReport a = compare("w^" + std::to_string(p.m - p.n) + " Phi(Ber B) = Ber(1 + w B)", lhs, rhs);
  if (std::min(lhs.w_top(), rhs.w_top()) < top) a.slots.push_back({"w-window reaches " + std::to_string(top), "uncertified"});
  a.elapsed_ms = sw.lap();

  IdentityReport b;
  b.identity = "Phi(xy) = Phi(x) Phi(y)";
  b.window = "w<=" + std::to_string(top) + ", " + std::to_string(pairs) + " random pairs, seed " + std::to_string(seed);
  std::mt19937 rng(seed);
  for (int i = 0; i < pairs; ++i) {
    PDO x = random_pdo(rng, p), y = random_pdo(rng, p);
    IdentityReport c = compare("", phi_map(x * y, top), phi_map(x, top) * phi_map(y, top));
    for (Slot& s : c.slots) b.slots.push_back({"pair " + std::to_string(i + 1) + " " + s.index, s.status});
  }
  b.elapsed_ms = sw.lap();
  return {a, b};
}

ReportList dump_coeffs(const ModelParams& p) {
  ReportList r = verify_duality(p);
  r.front().identity = "coefficient tables";
  r.front().slots.clear();
  return r;
}

}  // namespace gaudin
