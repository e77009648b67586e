#include "cubext/enumerator.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

#include "cubext/automorphisms.hpp"
#include "cubext/reduction.hpp"
#include "cubext/ring_tests.hpp"

namespace cubext {

RunStats& RunStats::operator+=(const RunStats& o) {
  candidates_iterated += o.candidates_iterated;
  kept_reduced += o.kept_reduced;
  kept_irreducible += o.kept_irreducible;
  kept_maximal += o.kept_maximal;
  emitted += o.emitted;
  max_precision_used = std::max(max_precision_used, o.max_precision_used);
  return *this;
}

CubicForm half_count_pairing(const Order& o, const CubicForm& f) { return mirror(o, f); }

CubicForm orbit_minimum(const Order& o, const CubicForm& f, const std::vector<GL2Mat>& stabilizer) {
  CubicForm best = f;
  for (const GL2Mat& m : stabilizer) {
    const CubicForm g = act_cubic(o, m, f);
    for (RingElem u : o.units()) {
      const CubicForm h = scale(o, u, g);
      if (compare_forms(o, h, best) < 0) best = h;
    }
  }
  for (RingElem u : o.units()) {
    const CubicForm h = scale(o, u, f);
    if (compare_forms(o, h, best) < 0) best = h;
  }
  return best;
}

namespace {

struct Task {
  RingElem a0, b0;
};

class Worker {
 public:
  Worker(const FieldParams& params, std::int64_t X, const EnumerateOptions& opts)
      : o_(params),
        lb_(loop_bounds(params, X)),
        opts_(opts),
        cap_(opts.precision_cap ? opts.precision_cap : default_precision_cap(X)),
        table_(automorphism_table(params)),
        disc_scale_(3.0 / params.tK_sq.get_d() * (1 + 1e-6)) {}

  void run(const Task& t, std::vector<FieldRecord>& out, RunStats& st) {
    for (RingElem c0 : c0_values(o_, lb_, t.a0, t.b0))
      for (RingElem d0 : d0_values(o_, lb_, t.a0, t.b0, c0)) candidate({t.a0, t.b0, c0, d0}, out, st);
  }

 private:
  void candidate(const CubicForm& F0, std::vector<FieldRecord>& out, RunStats& st) {
    ++st.candidates_iterated;
    const RingElem disc = disc_cubic(o_, F0);
    const double na = static_cast<double>(o_.norm(F0.a));

    std::optional<RootBoxes<double>> roots;
    CBox<double> z0;
    Interval<double> p;
    try {
      roots = form_roots<double>(o_, F0, 53);
      const Hermitian<double> h = normalized_covariant<double>(*roots, 53);
      p = h.P;
      z0 = {-h.Q.re / h.P, -h.Q.im / h.P};
    } catch (const RootIsolationFailed&) {
      const HermitianForm h = normalized_covariant<Mpfr>(form_roots<Mpfr>(o_, F0, 128), 128);
      p = h.P.to_double();
      z0 = {(-h.Q.re / h.P).to_double(), (-h.Q.im / h.P).to_double()};
    }
    // Reduced forms have P^2 <= Delta / t_K^2 = 3 |disc| / t_K^2, and P does not move under translation.
    const double P_lo = p.lo() * na;
    if (P_lo > 0 && P_lo * P_lo > disc_scale_ * std::sqrt(static_cast<double>(o_.norm(disc)))) return;

    for (RingElem k : candidate_translates(o_, z0)) {
      const CubicForm F = translate(o_, F0, -k);
      FormDecider dec(o_, F, cap_);
      if (roots) {
        const CBox<double> kb = to_box<double>(o_, k, 53);
        const RootBoxes<double> rk{(*roots)[0] + kb, (*roots)[1] + kb, (*roots)[2] + kb};
        dec.seed_double(normalized_covariant<double>(rk, 53));
      }
      const DomainVerdict v = classify_domain(o_.params(), dec);
      st.max_precision_used = std::max(st.max_precision_used, dec.max_precision_used());
      if (v.cls != DomainClass::Inside && v.cls != DomainClass::OnBoundaryKept) continue;

      bool emit_mirror = false;
      if (opts_.pair_conjugates) {
        const Sign re = dec.sign({{0, -1, 0, 0}});  // sign of Re z
        if (re == Sign::Negative) continue;
        emit_mirror = v.cls == DomainClass::Inside && re == Sign::Positive;
      }
      ++st.kept_reduced;

      const MaximalityReport rep = is_maximal(o_, F);
      if (!rep.is_irreducible) continue;
      ++st.kept_irreducible;
      if (!rep.is_maximal) continue;
      ++st.kept_maximal;

      const std::vector<GL2Mat> stab = stabilizer_of(table_, dec);
      st.max_precision_used = std::max(st.max_precision_used, dec.max_precision_used());
      if (compare_forms(o_, orbit_minimum(o_, F, stab), F) < 0) continue;
      out.push_back({o_.params().d_K, F, disc, o_.norm(disc)});
      ++st.emitted;
      if (emit_mirror) {
        // Interior points have only scalar stabilizers, and the mirror of an interior point is interior.
        out.push_back({o_.params().d_K, orbit_minimum(o_, half_count_pairing(o_, F), {}), disc, o_.norm(disc)});
        ++st.emitted;
      }
    }
  }

  Order o_;
  LoopBounds lb_;
  EnumerateOptions opts_;
  unsigned cap_;
  const std::vector<AutoMatrix>& table_;
  double disc_scale_;
};

void check_options(const FieldParams& params, std::int64_t X, const EnumerateOptions& opts) {
  if (X < 1) throw std::invalid_argument("bound X must be >= 1");
  if (!params.certified() && !opts.allow_uncertified_domain)
    throw UnsupportedDomain("d_K = " + std::to_string(params.d_K) +
                            ": fundamental domain tie-breaks are not certified for this field");
  if (opts.pair_conjugates && (params.d_K == -3 || params.d_K == -4))
    throw std::invalid_argument("conjugate pairing is unsound for d_K = -3, -4");
}

std::vector<Task> make_tasks(const Order& o, std::int64_t X) {
  const LoopBounds lb = loop_bounds(o.params(), X);
  std::vector<Task> tasks;
  for (RingElem a0 : a0_values(o, lb))
    for (RingElem b0 : b0_values(o, a0)) tasks.push_back({a0, b0});
  return tasks;
}

}  // namespace

RunStats enumerate(const FieldParams& params, std::int64_t X, RecordSink& sink, const EnumerateOptions& opts) {
  check_options(params, X, opts);
  const auto t0 = std::chrono::steady_clock::now();
  const Order o(params);
  Worker w(params, X, opts);
  RunStats st;
  st.X = X;
  std::vector<FieldRecord> batch;
  for (const Task& t : make_tasks(o, X)) {
    batch.clear();
    w.run(t, batch, st);
    for (const auto& r : batch) sink.accept(r);
  }
  sink.finish();
  st.wall_time = std::chrono::steady_clock::now() - t0;
  return st;
}

RunStats enumerate_parallel(const FieldParams& params, std::int64_t X, int jobs, RecordSink& sink,
                            const EnumerateOptions& opts) {
  if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
  if (jobs == 1) return enumerate(params, X, sink, opts);
  check_options(params, X, opts);
  const auto t0 = std::chrono::steady_clock::now();
  const Order o(params);
  automorphism_table(params);  // build once before the workers start
  const std::vector<Task> tasks = make_tasks(o, X);

  std::vector<std::optional<std::vector<FieldRecord>>> done(tasks.size());
  std::size_t next_emit = 0;
  std::atomic<std::size_t> next_task{0};
  std::atomic<bool> stop{false};
  std::mutex mu;
  std::exception_ptr error;
  RunStats total;
  total.X = X;

  auto body = [&] {
    Worker w(params, X, opts);
    RunStats st;
    try {
      for (;;) {
        const std::size_t i = next_task.fetch_add(1);
        if (i >= tasks.size() || stop) break;
        std::vector<FieldRecord> batch;
        w.run(tasks[i], batch, st);
        std::lock_guard<std::mutex> lock(mu);
        done[i] = std::move(batch);
        // Flush the completed prefix so the output order matches the serial run.
        while (next_emit < done.size() && done[next_emit]) {
          for (const auto& r : *done[next_emit]) sink.accept(r);
          done[next_emit]->clear();
          done[next_emit]->shrink_to_fit();
          ++next_emit;
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!error) error = std::current_exception();
      stop = true;
    }
    std::lock_guard<std::mutex> lock(mu);
    total += st;
  };

  std::vector<std::thread> pool;
  for (int j = 0; j < jobs; ++j) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  sink.finish();
  total.wall_time = std::chrono::steady_clock::now() - t0;
  return total;
}

}  // namespace cubext
