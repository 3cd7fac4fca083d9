#include "wjet/expr.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "wjet/error.hpp"

namespace wjet {

namespace {

void pad(std::ostream& os, int indent) {
  for (int i = 0; i < indent; ++i) os << "  ";
}

point constants_of(const std::vector<tps>& in) {
  point p(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) p[i] = in[i].value();
  return p;
}

const tps_shape& shape_of(const std::vector<tps>& in) {
  if (in.empty()) throw domain_error("expression evaluated with no inputs");
  return in[0].shape();
}

// Fresh coordinate series at p (d variables, order q).
std::vector<tps> local_inputs(const point& p, int q) {
  std::vector<tps> v;
  const int d = static_cast<int>(p.size());
  for (int i = 0; i < d; ++i) v.push_back(tps::variable(d, q, i, p[i]));
  return v;
}

// Re-express a series in local variables around p through the inputs.
tps pull_through(const tps& local, const std::vector<tps>& in, const eval_ctx& ctx) {
  if (ctx.identity_inputs) return local;
  std::vector<tps> h = in;
  for (auto& t : h) t.coef(0) = 0.0;
  return compose(local, h);
}

class const_node : public node {
 public:
  explicit const_node(double c) : c_(c) {}
  tps eval(const std::vector<tps>& in, const eval_ctx&) const override {
    const auto& s = shape_of(in);
    return tps::constant(s.n, s.q, c_);
  }
  int arity() const override { return 0; }
  bool is_zero() const override { return c_ == 0.0; }
  void print(std::ostream& os, int indent) const override {
    pad(os, indent);
    os << "const " << c_ << "\n";
  }
  double value() const { return c_; }

 private:
  double c_;
};

class coord_node : public node {
 public:
  explicit coord_node(int i) : i_(i) {}
  tps eval(const std::vector<tps>& in, const eval_ctx&) const override {
    if (i_ >= static_cast<int>(in.size())) throw domain_error("coordinate index beyond input dimension");
    return in[i_];
  }
  int arity() const override { return i_ + 1; }
  void print(std::ostream& os, int indent) const override {
    pad(os, indent);
    os << "x" << i_ << "\n";
  }

 private:
  int i_;
};

class poly_node : public node {
 public:
  explicit poly_node(polynomial p) : p_(std::move(p)) {}
  tps eval(const std::vector<tps>& in, const eval_ctx&) const override { return p_.eval_tps(in); }
  int arity() const override { return p_.nvars(); }
  bool is_zero() const override { return p_.is_zero(); }
  void print(std::ostream& os, int indent) const override {
    pad(os, indent);
    os << "poly";
    bool centred = false;
    for (double c : p_.center())
      if (c != 0.0) centred = true;
    if (centred) {
      os << " at (";
      for (std::size_t i = 0; i < p_.center().size(); ++i) os << (i ? "," : "") << p_.center()[i];
      os << ")";
    }
    for (const auto& [a, c] : p_.terms()) os << " " << c << "*" << index_key(a);
    os << "\n";
  }

 private:
  polynomial p_;
};

class sum_node : public node {
 public:
  explicit sum_node(std::vector<expr> t) : t_(std::move(t)) {}
  tps eval(const std::vector<tps>& in, const eval_ctx& ctx) const override {
    tps r = t_[0].get().eval(in, ctx);
    for (std::size_t i = 1; i < t_.size(); ++i) r += t_[i].get().eval(in, ctx);
    return r;
  }
  int smoothness() const override {
    int s = INT_MAX;
    for (const auto& e : t_) s = std::min(s, e.smoothness());
    return s;
  }
  int arity() const override {
    int a = 0;
    for (const auto& e : t_) a = std::max(a, e.arity());
    return a;
  }
  void print(std::ostream& os, int indent) const override {
    pad(os, indent);
    os << "sum\n";
    for (const auto& e : t_) e.get().print(os, indent + 1);
  }

 private:
  std::vector<expr> t_;
};

class prod_node : public node {
 public:
  explicit prod_node(std::vector<expr> f) : f_(std::move(f)) {}
  tps eval(const std::vector<tps>& in, const eval_ctx& ctx) const override {
    tps r = f_[0].get().eval(in, ctx);
    for (std::size_t i = 1; i < f_.size(); ++i) {
      if (r.is_zero()) return r;
      r = r * f_[i].get().eval(in, ctx);
    }
    return r;
  }
  int smoothness() const override {
    int s = INT_MAX;
    for (const auto& e : f_) s = std::min(s, e.smoothness());
    return s;
  }
  int arity() const override {
    int a = 0;
    for (const auto& e : f_) a = std::max(a, e.arity());
    return a;
  }
  void print(std::ostream& os, int indent) const override {
    pad(os, indent);
    os << "product\n";
    for (const auto& e : f_) e.get().print(os, indent + 1);
  }

 private:
  std::vector<expr> f_;
};

class quot_node : public node {
 public:
  quot_node(expr n, expr d) : n_(std::move(n)), d_(std::move(d)) {}
  tps eval(const std::vector<tps>& in, const eval_ctx& ctx) const override {
    tps num = n_.get().eval(in, ctx);
    if (num.is_zero()) return num;
    tps den = d_.get().eval(in, ctx);
    if (!(den.value() > 0.0)) throw domain_error("quotient denominator is not positive");
    return num * reciprocal(den);
  }
  int smoothness() const override { return std::min(n_.smoothness(), d_.smoothness()); }
  int arity() const override { return std::max(n_.arity(), d_.arity()); }
  void print(std::ostream& os, int indent) const override {
    pad(os, indent);
    os << "quotient (denominator > 0)\n";
    n_.get().print(os, indent + 1);
    d_.get().print(os, indent + 1);
  }

 private:
  expr n_, d_;
};

class apply_node : public node {
 public:
  apply_node(std::shared_ptr<const univariate> g, expr a) : g_(std::move(g)), a_(std::move(a)) {}
  tps eval(const std::vector<tps>& in, const eval_ctx& ctx) const override {
    tps t = a_.get().eval(in, ctx);
    return compose_univariate(t, g_->derivs(t.value(), t.order()));
  }
  int smoothness() const override { return std::min(g_->smoothness(), a_.smoothness()); }
  int arity() const override { return a_.arity(); }
  void print(std::ostream& os, int indent) const override {
    pad(os, indent);
    os << g_->describe() << "\n";
    a_.get().print(os, indent + 1);
  }

 private:
  std::shared_ptr<const univariate> g_;
  expr a_;
};

class sqrt_fn : public univariate {
 public:
  std::vector<double> derivs(double t, int q) const override {
    if (t < 0.0 || (t == 0.0 && q >= 1)) throw domain_error("square root outside its smooth domain");
    std::vector<double> d(q + 1);
    double coef = 1.0;
    for (int k = 0; k <= q; ++k) {
      d[k] = coef * std::pow(t, 0.5 - k);
      coef *= (0.5 - k);
    }
    d[0] = std::sqrt(t);
    return d;
  }
  int smoothness() const override { return INT_MAX; }
  std::string describe() const override { return "sqrt"; }
};

class compose_node : public node {
 public:
  compose_node(expr outer, std::vector<expr> maps) : o_(std::move(outer)), m_(std::move(maps)) {}
  tps eval(const std::vector<tps>& in, const eval_ctx& ctx) const override {
    std::vector<tps> y;
    y.reserve(m_.size());
    for (const auto& e : m_) y.push_back(e.get().eval(in, ctx));
    eval_ctx c = ctx;
    c.identity_inputs = false;
    return o_.get().eval(y, c);
  }
  int smoothness() const override {
    int s = o_.smoothness();
    for (const auto& e : m_) s = std::min(s, e.smoothness());
    return s;
  }
  int arity() const override {
    int a = 0;
    for (const auto& e : m_) a = std::max(a, e.arity());
    return a;
  }
  bool is_zero() const override { return o_.is_zero(); }
  void print(std::ostream& os, int indent) const override {
    pad(os, indent);
    os << "compose\n";
    o_.get().print(os, indent + 1);
    pad(os, indent);
    os << "with maps\n";
    for (const auto& e : m_) e.get().print(os, indent + 1);
  }

 private:
  expr o_;
  std::vector<expr> m_;
};

class gate_node : public node {
 public:
  gate_node(std::shared_ptr<const region> r, expr e) : r_(std::move(r)), e_(std::move(e)) {}
  tps eval(const std::vector<tps>& in, const eval_ctx& ctx) const override {
    const point p = constants_of(in);
    if (ctx.opt.strict_seams && in[0].order() >= 1 && r_->on_seam(p))
      throw domain_error("derivative requested on the seam of region " + r_->describe());
    if (r_->contains(p)) return e_.get().eval(in, ctx);
    return tps(shape_of(in));
  }
  int smoothness() const override { return e_.smoothness(); }
  int arity() const override { return e_.arity(); }
  bool is_zero() const override { return e_.is_zero(); }
  void print(std::ostream& os, int indent) const override {
    pad(os, indent);
    os << "gate on " << r_->describe() << "\n";
    e_.get().print(os, indent + 1);
  }

 private:
  std::shared_ptr<const region> r_;
  expr e_;
};

class fiber_node : public node {
 public:
  fiber_node(expr e, int k, int m) : e_(std::move(e)), k_(k), m_(m) {}
  tps eval(const std::vector<tps>& in, const eval_ctx& ctx) const override {
    const point y0 = constants_of(in);
    const int d = static_cast<int>(y0.size());
    const int q = in[0].order();
    point z = y0;
    for (int i = k_; i < d; ++i) z[i] = 0.0;
    eval_ctx c = ctx;
    c.identity_inputs = true;
    const tps R = e_.get().eval(local_inputs(z, q + m_), c);
    // local variables: du_i (zero constant), w_j = w0_j + dw_j
    std::vector<tps> v;
    for (int i = 0; i < d; ++i) v.push_back(tps::variable(d, q, i, i < k_ ? 0.0 : y0[i]));
    int maxp = std::max(q, m_);
    std::vector<std::vector<tps>> pw(d);
    for (int i = 0; i < d; ++i) {
      pw[i].push_back(tps::constant(d, q, 1.0));
      for (int j = 1; j <= maxp; ++j) pw[i].push_back(pw[i].back() * v[i]);
    }
    tps out(get_shape(d, q));
    const tps_shape& rs = R.shape();
    for (int t = 0; t < rs.size(); ++t) {
      const double c0 = R.coef(t);
      if (c0 == 0.0) continue;
      const multi_index& a = rs.idx[t];
      int du = 0, dw = 0;
      for (int i = 0; i < d; ++i) (i < k_ ? du : dw) += a[i];
      if (du > q || dw > m_) continue;
      tps term = tps::constant(d, q, c0);
      for (int i = 0; i < d; ++i)
        if (a[i]) term = term * pw[i][a[i]];
      out += term;
    }
    return pull_through(out, in, ctx);
  }
  int smoothness() const override {
    const int s = e_.smoothness();
    return s == INT_MAX ? s : std::max(0, s - m_);
  }
  int arity() const override { return e_.arity(); }
  bool is_zero() const override { return e_.is_zero(); }
  void print(std::ostream& os, int indent) const override {
    pad(os, indent);
    os << "fibre taylor (base dim " << k_ << ", degree " << m_ << ")\n";
    e_.get().print(os, indent + 1);
  }

 private:
  expr e_;
  int k_, m_;
};

class min_node : public node {
 public:
  explicit min_node(std::vector<expr> t) : t_(std::move(t)) {}
  tps eval(const std::vector<tps>& in, const eval_ctx& ctx) const override {
    tps best = t_[0].get().eval(in, ctx);
    for (std::size_t i = 1; i < t_.size(); ++i) {
      tps c = t_[i].get().eval(in, ctx);
      if (c.value() < best.value()) best = std::move(c);
    }
    return best;
  }
  int smoothness() const override {
    int s = INT_MAX;
    for (const auto& e : t_) s = std::min(s, e.smoothness());
    return s;
  }
  int arity() const override {
    int a = 0;
    for (const auto& e : t_) a = std::max(a, e.arity());
    return a;
  }
  void print(std::ostream& os, int indent) const override {
    pad(os, indent);
    os << "min\n";
    for (const auto& e : t_) e.get().print(os, indent + 1);
  }

 private:
  std::vector<expr> t_;
};

const const_node* const_value_of(const expr& e) { return dynamic_cast<const const_node*>(&e.get()); }

}  // namespace

bool region::on_seam(const point& x) const {
  const bool in = contains(x);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (double s : {-1.0, 1.0}) {
      point y = x;
      y[i] += s * 1e-9 * (1.0 + std::abs(x[i]));
      if (contains(y) != in) return true;
    }
  return false;
}

bool ball_region::contains(const point& x) const {
  const double d = distance(point(x.begin(), x.begin() + c_.size()), c_);
  return ext_ ? d > r_ : d < r_;
}

std::string ball_region::describe() const {
  std::ostringstream os;
  os << (ext_ ? "exterior" : "interior") << " of ball radius " << r_;
  return os.str();
}

expr::expr() : p_(std::make_shared<const_node>(0.0)) {}

std::string expr::dump() const {
  std::ostringstream os;
  os.precision(12);
  p_->print(os, 0);
  return os.str();
}

expr constant(double c) { return expr(std::make_shared<const_node>(c)); }
expr coordinate(int i) { return expr(std::make_shared<coord_node>(i)); }
expr poly(const polynomial& p) {
  if (p.is_zero()) return constant(0.0);
  return expr(std::make_shared<poly_node>(p));
}

expr sum(const std::vector<expr>& terms) {
  std::vector<expr> t;
  double c = 0.0;
  for (const auto& e : terms) {
    if (e.is_zero()) continue;
    if (const auto* k = const_value_of(e))
      c += k->value();
    else
      t.push_back(e);
  }
  if (c != 0.0) t.push_back(constant(c));
  if (t.empty()) return constant(0.0);
  if (t.size() == 1) return t[0];
  return expr(std::make_shared<sum_node>(std::move(t)));
}

expr product(const std::vector<expr>& factors) {
  std::vector<expr> f;
  double c = 1.0;
  for (const auto& e : factors) {
    if (e.is_zero()) return constant(0.0);
    if (const auto* k = const_value_of(e))
      c *= k->value();
    else
      f.push_back(e);
  }
  if (c == 0.0) return constant(0.0);
  if (c != 1.0) f.insert(f.begin(), constant(c));
  if (f.empty()) return constant(1.0);
  if (f.size() == 1) return f[0];
  return expr(std::make_shared<prod_node>(std::move(f)));
}

expr quotient(const expr& num, const expr& den) {
  if (num.is_zero()) return constant(0.0);
  if (const auto* k = const_value_of(den)) {
    if (!(k->value() > 0.0)) throw domain_error("quotient denominator is not positive");
    return product({constant(1.0 / k->value()), num});
  }
  return expr(std::make_shared<quot_node>(num, den));
}

expr apply(std::shared_ptr<const univariate> g, const expr& arg) {
  return expr(std::make_shared<apply_node>(std::move(g), arg));
}

expr sqrt_of(const expr& arg) { return wjet::apply(std::make_shared<sqrt_fn>(), arg); }

expr compose(const expr& outer, const std::vector<expr>& maps) {
  if (outer.is_zero()) return constant(0.0);
  if (const_value_of(outer)) return outer;
  return expr(std::make_shared<compose_node>(outer, maps));
}

expr gate(std::shared_ptr<const region> r, const expr& e) {
  if (e.is_zero()) return constant(0.0);
  return expr(std::make_shared<gate_node>(std::move(r), e));
}

expr fiber_taylor(const expr& e, int k, int m) {
  if (e.is_zero()) return constant(0.0);
  return expr(std::make_shared<fiber_node>(e, k, m));
}

expr min_of(const std::vector<expr>& terms) {
  if (terms.empty()) throw input_error("min of an empty list");
  if (terms.size() == 1) return terms[0];
  return expr(std::make_shared<min_node>(terms));
}

expr operator+(const expr& a, const expr& b) { return sum({a, b}); }
expr operator-(const expr& a, const expr& b) { return sum({a, product({constant(-1.0), b})}); }
expr operator-(const expr& a) { return product({constant(-1.0), a}); }
expr operator*(const expr& a, const expr& b) { return product({a, b}); }
expr operator*(double c, const expr& a) { return product({constant(c), a}); }
expr operator/(const expr& a, const expr& b) { return quotient(a, b); }

tps eval_series(const expr& e, const point& x, int order, const eval_options& opt) {
  if (static_cast<int>(x.size()) < e.arity())
    throw domain_error("expression needs " + std::to_string(e.arity()) + " coordinates");
  eval_ctx ctx;
  ctx.opt = opt;
  return e.get().eval(local_inputs(x, order), ctx);
}

double eval(const expr& e, const point& x, const eval_options& opt) { return eval_series(e, x, 0, opt).value(); }

double deriv(const expr& e, const multi_index& a, const point& x, const eval_options& opt) {
  if (a.size() != x.size()) throw domain_error("multi-index and point dimensions differ");
  if (order_of(a) > e.smoothness()) throw domain_error("derivative order exceeds the expression's smoothness");
  return eval_series(e, x, order_of(a), opt).derivative(a);
}

}  // namespace wjet
