// Serial against parallel timings for the hot kernels.
#include "cocycle/cocycle.hpp"
#include "cocycle/kernels.hpp"
#include "cocycle/shift.hpp"
#include "cocycle/untwist.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

using namespace cocycle;

namespace {

ShiftPtr fullShift() { return std::make_shared<const Subshift>(Subshift::full(Alphabet::numeric(2))); }

HElem residue(std::int64_t v) {
  HElem h;
  h.v[0] = v;
  return h;
}

LocalFunction randomTable(const std::vector<Elem>& window, std::mt19937_64& rng) {
  LocalFunction f;
  f.window = window;
  f.table.resize(std::size_t{1} << window.size());
  for (auto& v : f.table) v = residue(static_cast<std::int64_t>(rng() >> 63));
  return f;
}

double timeIt(const std::function<void()>& f, int reps) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void report(const std::string& name, const std::function<void(Exec)>& f, int reps = 3) {
  double serial = timeIt([&] { f(Exec::Serial); }, reps);
  double parallel = timeIt([&] { f(Exec::Parallel); }, reps);
  std::printf("%-28s serial %9.4f s  parallel %9.4f s  speedup %5.2fx\n", name.c_str(), serial, parallel,
              parallel > 0 ? serial / parallel : 0.0);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", parallelThreads());
  std::mt19937_64 rng(42);
  auto z2 = Group::make(GroupSpec::freeAbelian(2));
  auto heis = Group::make(GroupSpec::heisenberg());
  auto h = CoeffGroup::cyclic(2);
  auto cob = coboundaryCocycle(z2, fullShift(), h, randomTable(z2->ball(1)->elements, rng), {residue(1), residue(0)});
  auto cobH = coboundaryCocycle(heis, fullShift(), h, randomTable(heis->ball(1)->elements, rng), {residue(0), residue(1)});

  report("relator validation Z^2", [&](Exec e) {
    BuildOptions opts;
    opts.exec = e;
    ValidityCertificate v;
    checkRelators(*z2, cob->shift(), cob->coeff(), cob->rules(), opts, &v);
  });
  report("relator validation Heis", [&](Exec e) {
    BuildOptions opts;
    opts.exec = e;
    ValidityCertificate v;
    checkRelators(*heis, cobH->shift(), cobH->coeff(), cobH->rules(), opts, &v);
  });
  report("transfer table Z^2 B(2)", [&](Exec e) {
    TransferOptions opts;
    opts.exec = e;
    transferMap(*cob, Elem{1, 0}, 0, 2, opts);
  });
  report("transfer table Heis B(1)", [&](Exec e) {
    TransferOptions opts;
    opts.exec = e;
    transferMap(*cobH, heis->generator(0), 0, 1, opts);
  });

  std::vector<HomoclinicPair> pairs;
  auto domain = z2->ball(4)->elements;
  for (int i = 0; i < 5000; ++i) {
    pairs.push_back({randomConfiguration(*z2, cob->shift(), domain, rng), randomConfiguration(*z2, cob->shift(), domain, rng)});
  }
  report("plus/minus battery 5000", [&](Exec e) { plusMinusTest(*cob, Elem{1, 0}, pairs, e); });
  report("cross-direction battery 5000", [&](Exec e) { crossDirectionTest(*cob, Elem{1, 0}, Elem{0, 1}, pairs, e); });
  report("untwist Z^2", [&](Exec e) {
    UntwistOptions opts;
    opts.exec = e;
    untwist(*cob, opts);
  }, 1);
  return 0;
}
