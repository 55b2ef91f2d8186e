#include "entroscope/trajectory.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <unordered_set>

#include "entroscope/errors.hpp"

namespace entroscope {

namespace {

double log_int(const Int& m) {
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, m.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

std::size_t max_generator_degree(const std::vector<Element>& gens, std::size_t part) {
  std::size_t d = 0;
  for (const auto& g : gens) {
    IntPoly p(g.at(part));
    if (p.degree() > 0) d = std::max(d, static_cast<std::size_t>(p.degree()));
  }
  return d;
}

// Ambient dimension of a part's truncated model at step k.
std::size_t part_dim(const FlowPart& part, std::size_t gen_deg, unsigned k) {
  if (const auto* fg = std::get_if<FlowFG>(&part)) return fg->ambient_rank();
  const auto& c = std::get<CyclicFlow>(part);
  if (c.is_trivial()) return 0;
  if (!c.is_bernoulli() && c.poly().is_monic()) return static_cast<std::size_t>(c.poly().degree());
  return gen_deg + k + 1;
}

// Relation columns of a part's model in dimension dim.
IntMatrix part_relations(const FlowPart& part, std::size_t dim) {
  if (const auto* fg = std::get_if<FlowFG>(&part)) return fg->group().relations();
  const auto& c = std::get<CyclicFlow>(part);
  std::vector<IntVector> cols;
  if (c.base() > 0)
    for (std::size_t i = 0; i < dim; ++i) {
      IntVector v(dim);
      v[i] = c.base();
      cols.push_back(v);
    }
  const IntPoly& f = c.poly();
  if (!f.is_zero() && !f.is_monic()) {
    const auto df = static_cast<std::size_t>(f.degree());
    for (std::size_t i = 0; i + df < dim; ++i) {
      IntVector v(dim);
      for (std::size_t j = 0; j <= df; ++j) v[i + j] = f.coeff(j);
      cols.push_back(v);
    }
  }
  return IntMatrix::from_columns(cols, dim);
}

// phi^i applied to one part of a generator, as a model vector.
IntVector part_image(const FlowPart& part, const IntVector& g, unsigned i, std::size_t dim) {
  if (const auto* fg = std::get_if<FlowFG>(&part)) {
    if (g.size() != fg->ambient_rank()) throw DomainError("generator length does not match the part rank");
    IntVector v = g;
    for (unsigned j = 0; j < i; ++j) v = fg->apply(v);
    return v;
  }
  const auto& c = std::get<CyclicFlow>(part);
  IntPoly x = c.reduce(IntPoly::monomial(1, i) * IntPoly(g));
  IntVector v(dim);
  if (x.degree() >= static_cast<int>(dim) && dim > 0) throw VerificationError("trajectory model too small");
  for (std::size_t j = 0; j < dim; ++j) v[j] = x.coeff(j);
  return v;
}

// |T_k| (or its rank) in the truncated model.
Int tau_subgroup(const Flow& flow, const std::vector<Element>& gens, const std::vector<std::size_t>& gen_deg, unsigned k,
                 bool rank) {
  if (k == 0) return rank ? 0 : 1;
  std::vector<std::size_t> dims;
  std::size_t total = 0;
  for (std::size_t p = 0; p < flow.size(); ++p) {
    dims.push_back(part_dim(flow.part(p), gen_deg[p], k));
    total += dims.back();
  }
  std::vector<IntVector> rel_cols;
  std::size_t offset = 0;
  for (std::size_t p = 0; p < flow.size(); ++p) {
    IntMatrix r = part_relations(flow.part(p), dims[p]);
    for (std::size_t j = 0; j < r.cols(); ++j) {
      IntVector v(total);
      for (std::size_t i = 0; i < dims[p]; ++i) v[offset + i] = r(i, j);
      rel_cols.push_back(v);
    }
    offset += dims[p];
  }
  FgAbGroup ambient(total, IntMatrix::from_columns(rel_cols, total));
  std::vector<IntVector> tcols;
  for (const auto& g : gens) {
    for (unsigned i = 0; i < k; ++i) {
      IntVector v(total);
      offset = 0;
      for (std::size_t p = 0; p < flow.size(); ++p) {
        IntVector w = part_image(flow.part(p), g[p], i, dims[p]);
        for (std::size_t j = 0; j < dims[p]; ++j) v[offset + j] = w[j];
        offset += dims[p];
      }
      tcols.push_back(v);
    }
  }
  Subgroup t = Subgroup::generated(ambient, tcols);
  if (rank) return Int(static_cast<unsigned long>(t.as_group().free_rank()));
  auto order = t.order();
  if (!order) throw DomainError("generators span an infinite subgroup; subgroup mode needs a finite F");
  return *order;
}

TrajectoryReport run_subgroup(const Flow& flow, const std::vector<Element>& gens, const TrajectoryOptions& opt) {
  const bool rank = opt.invariant == TrajectoryInvariant::Rank;
  TrajectoryReport rep;
  rep.mode = TrajectoryMode::Subgroup;
  rep.invariant = opt.invariant;
  rep.window = default_window(flow, gens);
  std::vector<std::size_t> gen_deg;
  for (std::size_t p = 0; p < flow.size(); ++p) gen_deg.push_back(max_generator_degree(gens, p));
  rep.tau.push_back(rank ? 0 : 1);
  const unsigned limit = opt.steps ? *opt.steps : opt.max_steps;
  // Growth per step: the ratio for cardinalities, the increment for ranks.
  // Either way the sequence is nonincreasing and 1 (resp. 0) means T stopped growing.
  const Int flat = rank ? 0 : 1;
  Int last = 0;
  unsigned run = 0;
  for (unsigned k = 1; k <= limit; ++k) {
    Int tau = tau_subgroup(flow, gens, gen_deg, k, rank);
    const Int& prev = rep.tau.back();
    Int r;
    if (rank) {
      if (tau < prev) throw VerificationError("trajectory ranks decreased");
      r = tau - prev;
    } else {
      if (tau % prev != 0) throw VerificationError("trajectory sizes are not a divisor chain");
      r = tau / prev;
    }
    if (k > 1 && r > last) throw VerificationError("trajectory growth sequence increased");
    run = (k > 1 && r == last) ? run + 1 : 1;
    last = r;
    rep.tau.push_back(tau);
    rep.stabilized = (r == flat) || run >= rep.window;
    if (rep.stabilized && !opt.steps) break;
  }
  if (!rep.stabilized && !opt.steps)
    throw ResourceError("trajectory growth did not stabilize within " + std::to_string(limit) + " steps");
  if (rep.tau.size() < 2)
    rep.estimate = EntropyValue::zero();
  else if (rank)
    rep.estimate = EntropyValue::count(last.get_si());
  else
    rep.estimate = EntropyValue::log_of(last);
  rep.method = rep.stabilized ? (last == flat ? "trajectory stopped growing" : "stable growth window")
                              : "last growth step (not certified)";
  return rep;
}

using Point = std::array<std::int64_t, 3>;

struct PointHash {
  std::size_t operator()(const Point& p) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto x : p) h = (h ^ static_cast<std::uint64_t>(x)) * 0x100000001b3ULL + (h >> 29);
    return static_cast<std::size_t>(h);
  }
};

std::int64_t to_i64(const Int& z) {
  if (!z.fits_slong_p()) throw ResourceError("subset trajectory coordinates overflow 64 bits");
  return z.get_si();
}

TrajectoryReport run_subset(const Flow& flow, const std::vector<Element>& gens, const TrajectoryOptions& opt) {
  if (flow.size() != 1) throw DomainError("subset mode takes a single-part flow");
  if (opt.invariant != TrajectoryInvariant::LogCard) throw DomainError("subset mode counts elements only");
  auto fg = as_fg(flow.part(0));
  if (!fg) throw DomainError("subset mode needs a matrix flow or a monic cyclic flow");
  const FgAbGroup& g = fg->group();
  const std::size_t k = g.ambient_rank();
  if (k > opt.max_ambient_rank) throw ResourceError("subset mode supports ambient rank <= " + std::to_string(opt.max_ambient_rank));
  const unsigned n = opt.steps ? *opt.steps : 20;
  if (n > opt.max_subset_steps) throw ResourceError("subset mode supports at most " + std::to_string(opt.max_subset_steps) + " steps");

  // Work in SNF coordinates, torsion coordinates reduced.
  const IntMatrix m = g.coord_u() * fg->phi() * g.coord_u_inv();
  std::array<std::array<std::int64_t, 3>, 3> a{};
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) a[i][j] = to_i64(m(i, j));
  std::array<std::int64_t, 3> mod{};
  for (std::size_t i = 0; i < k; ++i) mod[i] = i < g.torsion_coords() ? to_i64(g.coord_modulus(i)) : 0;
  auto reduce = [&](Point& p) {
    for (std::size_t i = 0; i < k; ++i)
      if (mod[i] > 0) {
        p[i] %= mod[i];
        if (p[i] < 0) p[i] += mod[i];
      }
  };
  std::vector<Point> f;
  for (const auto& e : gens) {
    IntVector x = e.at(0);
    if (const auto* c = std::get_if<CyclicFlow>(&flow.part(0))) {
      x = c->reduce(IntPoly(x)).coeffs();
      x.resize(k);
    }
    IntVector y = g.canonical(x);
    Point p{};
    for (std::size_t i = 0; i < k; ++i) p[i] = to_i64(y[i]);
    f.push_back(p);
  }
  auto apply = [&](const Point& p) {
    Point q{};
    for (std::size_t i = 0; i < k; ++i) {
      std::int64_t acc = 0;
      for (std::size_t j = 0; j < k; ++j) {
        std::int64_t t = 0;
        if (__builtin_mul_overflow(a[i][j], p[j], &t) || __builtin_add_overflow(acc, t, &acc))
          throw ResourceError("subset trajectory coordinates overflow 64 bits");
      }
      q[i] = acc;
    }
    reduce(q);
    return q;
  };

  TrajectoryReport rep;
  rep.mode = TrajectoryMode::Subset;
  rep.tau.push_back(1);
  std::unordered_set<Point, PointHash> cur{Point{}};  // T_0 = {0}
  for (unsigned step = 1; step <= n; ++step) {
    // T_{step} = F + phi(T_{step-1})
    std::unordered_set<Point, PointHash> next;
    for (const auto& y : cur) {
      Point py = step == 1 ? y : apply(y);
      for (const auto& x : f) {
        Point s{};
        for (std::size_t i = 0; i < k; ++i)
          if (__builtin_add_overflow(py[i], x[i], &s[i])) throw ResourceError("subset trajectory coordinates overflow 64 bits");
        reduce(s);
        next.insert(s);
        if (next.size() > opt.max_set_size) throw ResourceError("subset trajectory exceeded the set-size cap");
      }
    }
    cur = std::move(next);
    rep.tau.emplace_back(static_cast<unsigned long>(cur.size()));
  }
  const Int& last = rep.tau.back();
  if (last <= 1 || n == 0) {
    rep.estimate = EntropyValue::zero();
  } else {
    // tau_n = r^n makes the estimate exactly log r
    Int root;
    if (mpz_root(root.get_mpz_t(), last.get_mpz_t(), n) != 0)
      rep.estimate = EntropyValue::log_of(root);
    else
      rep.estimate = EntropyValue::finite(log_int(last) / n, 0.0);
  }
  rep.method = "log(tau_n)/n estimate";
  return rep;
}

}  // namespace

Rational TrajectoryReport::ratio(std::size_t k) const {
  Rational r(tau.at(k), tau.at(k - 1));
  r.canonicalize();
  return r;
}

std::string TrajectoryReport::csv() const {
  const bool rank = invariant == TrajectoryInvariant::Rank;
  std::string out = rank ? "n,rank,rank_over_n,increment\n" : "n,tau,log_tau_over_n,ratio\n";
  char buf[128];
  for (std::size_t k = 1; k < tau.size(); ++k) {
    const double n = static_cast<double>(k);
    if (rank)
      std::snprintf(buf, sizeof buf, ",%.10g,%s\n", tau[k].get_d() / n, Int(tau[k] - tau[k - 1]).get_str().c_str());
    else
      std::snprintf(buf, sizeof buf, ",%.10g,%.10g\n", log_int(tau[k]) / n, ratio(k).get_d());
    out += std::to_string(k) + "," + tau[k].get_str() + buf;
  }
  return out;
}

unsigned default_window(const Flow& flow, const std::vector<Element>& generators) {
  std::size_t degree_bound = 0;
  std::size_t ambient = 0;
  double finite_bits = 0;
  for (std::size_t p = 0; p < flow.size(); ++p) {
    degree_bound = std::max(degree_bound, max_generator_degree(generators, p));
    if (const auto* fg = std::get_if<FlowFG>(&flow.part(p))) {
      ambient += fg->ambient_rank();
      if (auto o = fg->group().order()) finite_bits += std::ceil(log_int(*o) / std::log(2.0));
      continue;
    }
    const auto& c = std::get<CyclicFlow>(flow.part(p));
    if (!c.poly().is_zero()) degree_bound = std::max(degree_bound, static_cast<std::size_t>(std::max(0, c.poly().degree())));
    if (c.is_finite()) finite_bits += std::ceil(c.poly().degree() * log_int(c.base()) / std::log(2.0));
  }
  return static_cast<unsigned>(std::max(degree_bound, ambient) + 2 + static_cast<std::size_t>(finite_bits));
}

TrajectoryReport trajectory(const Flow& flow, const std::vector<Element>& generators, const TrajectoryOptions& options) {
  for (const auto& g : generators)
    if (g.size() != flow.size()) throw DomainError("generator part count mismatch");
  if (options.mode == TrajectoryMode::Subset) return run_subset(flow, generators, options);
  return run_subgroup(flow, generators, options);
}

}  // namespace entroscope
