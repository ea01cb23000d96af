#include <chrono>
#include <iostream>

#include "entwine/bundles.hpp"
#include "entwine/parallel.hpp"

using namespace entwine;

namespace {

double timed(const std::function<AxiomReport()>& f, AxiomReport& out) {
    auto t0 = std::chrono::steady_clock::now();
    out = f();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

void bench(const std::string& name, const std::function<AxiomReport()>& f) {
    AxiomReport serial_rep, parallel_rep;
    parallel_config().enabled = false;
    double ts = timed(f, serial_rep);
    parallel_config().enabled = true;
    double tp = timed(f, parallel_rep);
    bool same = serial_rep.pass() == parallel_rep.pass() &&
                serial_rep.clauses.size() == parallel_rep.clauses.size();
    std::cout << name << ": serial " << ts << " s, parallel " << tp << " s, speedup "
              << (tp > 0 ? ts / tp : 0.0) << "x, results " << (same ? "match" : "DIFFER")
              << "\n";
}

}  // namespace

int main() {
    Bundle eq2 = build_eq2(0, 5);
    Bundle ek2 = build_ekappa2(5);
    bench("eq2 entwining sweep (window 5, degree 4)",
          [&] { return verify_entwining(eq2.data, 5, 4); });
    bench("ekappa2 entwining sweep (window 5, degree 4)",
          [&] { return verify_entwining(ek2.data, 5, 4); });
    CrossedData cd = cleft_data(eq2.phi, eq2.data, eq2.solver, 5, 3);
    bench("eq2 crossed-product conditions (window 5, degree 3)",
          [&] { return verify_conditions(cd, 5, 3); });
    return 0;
}
