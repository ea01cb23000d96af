// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Exercises the full pipeline on the shipped corpus bundles.
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "entwine/bundles.hpp"
#include "entwine/dsl.hpp"
#include "entwine/parse.hpp"
#include "entwine/render.hpp"
#include "entwine/report.hpp"

using namespace entwine;

namespace {

int failures = 0;

void outcome(int n, const std::string& what, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "PASS" : "FAIL") << " " << n << ": " << what;
    if (!ok && !detail.empty()) std::cout << " [" << detail << "]";
    std::cout << std::endl;
    if (!ok) ++failures;
}

void criterion(int n, const std::string& what, const std::function<bool()>& f) {
    try {
        outcome(n, what, f());
    } catch (const std::exception& e) {
        outcome(n, what, false, e.what());
    }
}

std::string corpus_path(const std::string& name) {
    return std::string(ENTWINE_CORPUS_DIR) + "/" + name;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw EngineError("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Bundle corpus_bundle(const std::string& name) {
    return assemble(parse_document(slurp(corpus_path(name))));
}

// Every reordering rule and every block-ideal generator normal-forms to zero,
// and the diamond lemma closes at the given degree.
bool presentation_coherent(const Presentation& p, int degree) {
    for (const auto& [key, rhs] : p.rules()) {
        RawElement lhs{{{Scalar::one(), Word{key.hi, key.lo}}}};
        if (!(normal_form(lhs, p) == rhs)) return false;
    }
    for (const auto& [block, gb] : p.block_ideals()) {
        const std::vector<int>& vars = p.block_gens(block);
        for (const CPoly& g : gb.polys()) {
            RawElement r;
            for (const auto& [e, c] : g.terms()) {
                Word w;
                for (size_t v = 0; v < e.size(); ++v)
                    for (int k = 0; k < e[v]; ++k) w.push_back({vars[v], 1});
                r.terms.emplace_back(Scalar(c), std::move(w));
            }
            if (!normal_form(r, p).is_zero()) return false;
        }
    }
    return check_confluence(p, degree).confluent();
}

AlgebraElement gen_elem(const Presentation& p, const std::string& name, int sign = 1) {
    auto g = p.find_generator(name);
    if (!g) throw EngineError("no generator " + name);
    return AlgebraElement::monomial(Monomial{{{*g, sign}}});
}

bool report_all_green(const BundleReport& rep) {
    for (const auto& st : rep.stages)
        if (!st.pass) return false;
    return !rep.stages.empty();
}

std::vector<CBasis> small_sweep(const CoalgebraSpec& spec) {
    return spec.kind() == CoalgebraSpec::GroupLike ? spec.basis_window(2) : spec.basis_up_to(1);
}

bool crossed_algebra_laws(const Bundle& b, const CrossedData& cd, std::uint64_t seed) {
    std::vector<Monomial> ms = monomials_up_to(*b.mpres, 2);
    std::vector<CBasis> cb = small_sweep(b.data.coalgebra());
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<size_t> dm(0, ms.size() - 1);
    std::uniform_int_distribution<size_t> dc(0, cb.size() - 1);
    auto rnd = [&]() {
        return CrossedProductElement::pure(AlgebraElement::monomial(ms[dm(rng)]), cb[dc(rng)]);
    };
    CrossedProductElement unit = crossed_unit(cd);
    for (int t = 0; t < 200; ++t) {
        CrossedProductElement x = rnd(), y = rnd(), z = rnd();
        if (!(crossed_multiply(crossed_multiply(x, y, cd), z, cd) ==
              crossed_multiply(x, crossed_multiply(y, z, cd), cd)))
            return false;
        if (!(crossed_multiply(unit, x, cd) == x) || !(crossed_multiply(x, unit, cd) == x))
            return false;
    }
    return true;
}

int run_cli(const std::string& args) {
    std::string cmd = std::string(ENTWINE_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return rc < 0 ? rc : WEXITSTATUS(rc);
}

}  // namespace

int main() {
    const std::uint64_t seed = 42;

    Bundle eq2 = corpus_bundle("eq2.alg");
    Bundle ek2 = corpus_bundle("ekappa2.alg");
    Bundle ek3 = corpus_bundle("ekappa3.alg");  // deformed x-sector candidate
    Bundle hopf = corpus_bundle("hopf.alg");
    std::vector<const Bundle*> shipped = {&eq2, &ek2, &ek3, &hopf};

    criterion(1, "relation suites normal-form to zero; confluence closes at degree 6", [&] {
        for (const Bundle* b : shipped) {
            if (!presentation_coherent(b->data.presentation(), 6)) return false;
            if (!presentation_coherent(*b->mpres, 6)) return false;
        }
        return true;
    });

    criterion(2, "quantum E(2) entwining axioms on p in [-5,5], degree <= 4", [&] {
        return verify_entwining(eq2.data, 5, 4).pass() && verify_psiC(eq2.data, 5).pass();
    });

    criterion(3, "quantum E(2) coinvariants: z+- invariant, quantum-plane relation embeds", [&] {
        const Presentation& pres = eq2.data.presentation();
        AlgebraElement zp = eq2.solver->embed(gen_elem(*eq2.mpres, "z+"));
        AlgebraElement zm = eq2.solver->embed(gen_elem(*eq2.mpres, "z-"));
        if (!is_coinvariant(zp, eq2.data) || !is_coinvariant(zm, eq2.data)) return false;
        AlgebraElement diff = multiply(zp, zm, pres) -
                              multiply(zm, zp, pres).scaled(Scalar::param(PQ, 2)) -
                              AlgebraElement::scalar(Scalar::one() - Scalar::param(PQ, 2));
        return diff.is_zero();
    });

    criterion(4, "quantum E(2) cleft tables match the closed form for s in {0, 2}", [&] {
        for (int s : {0, 2}) {
            Bundle b = build_eq2(s, 5);
            CrossedData cd = cleft_data(b.phi, b.data, b.solver, 5, 3);
            if (!compare_tables(b, cd, 5).pass) return false;
        }
        return true;
    });

    criterion(5, "conditions (i)-(v) hold on all bundles; mutations go red", [&] {
        for (const Bundle* b : shipped) {
            CrossedData cd = cleft_data(b->phi, b->data, b->solver, 5, 3);
            if (!verify_conditions(cd, 5, 3).pass()) return false;
        }
        // mutated psi entry
        const EntwiningData& orig = eq2.data;
        auto v = orig.presentation().find_generator("v");
        EntwiningData::PsiTable bad_psi = [&orig, v](const CBasis& c, const Letter& l) {
            TensorExpression t = orig.psi_letter(c, l);
            return (l.gen == *v && l.sign == 1) ? t.scaled(Scalar::param(PQ)) : t;
        };
        EntwiningData mutated(orig.presentation_ptr(), orig.coalgebra(), bad_psi,
                              orig.grouplike(),
                              [&orig](const CBasis& x, const CBasis& y) { return orig.psiC(x, y); });
        AxiomReport bad_ent = verify_entwining(mutated, 2, 2);
        bool red_with_witness = false;
        for (const auto& c : bad_ent.clauses)
            if (!c.pass && !c.counterexamples.empty() && !c.counterexamples.front().input.empty())
                red_with_witness = true;
        if (!red_with_witness) return false;
        // mutated cocycle
        CrossedData good = cleft_data(eq2.phi, eq2.data, eq2.solver, 3, 2);
        CrossedData bad_sigma = declared_data(
            eq2.data, eq2.solver,
            [&good](const CBasis& c, const Letter& l) {
                return good.rho(c, AlgebraElement::monomial(Monomial{{{l.gen, l.sign}}}));
            },
            [](const CBasis& x, const CBasis& y) {
                return AlgebraElement::scalar((x.p == 1 && y.p == 1) ? Scalar::param(PQ)
                                                                     : Scalar::one());
            });
        AxiomReport bad_cond = verify_conditions(bad_sigma, 3, 2);
        red_with_witness = false;
        for (const auto& c : bad_cond.clauses)
            if (!c.pass && !c.counterexamples.empty()) red_with_witness = true;
        return red_with_witness;
    });

    criterion(6, "crossed products associative/unital on 200 triples; theta bijective", [&] {
        for (const Bundle* b : shipped) {
            CrossedData cd = cleft_data(b->phi, b->data, b->solver, 5, 3);
            if (!crossed_algebra_laws(*b, cd, seed)) return false;
            if (!verify_theta(cd, 5, 3, seed).pass()) return false;
        }
        return true;
    });

    criterion(7, "kappa-Euclidean E(2): suites pass; kappa -> 0 degenerates to the flip", [&] {
        if (!verify_entwining(ek2.data, 5, 3).pass()) return false;
        CrossedData cd = cleft_data(ek2.phi, ek2.data, ek2.solver, 5, 3);
        if (!compare_tables(ek2, cd, 5).pass) return false;
        Bundle classical = build_ekappa2(5, /*kappa_zero=*/true);
        const Presentation& pres = classical.data.presentation();
        for (int p = -2; p <= 2; ++p)
            for (size_t g = 0; g < pres.generators().size(); ++g) {
                Letter l{static_cast<int>(g), 1};
                TensorExpression flip({Space::P, Space::C});
                flip.add_term({LegKey(Monomial{{{l.gen, 1}}}), LegKey(CBasis{p, {}})},
                              Scalar::one());
                if (!(classical.data.psi_letter(CBasis{p, {}}, l) == flip)) return false;
            }
        return report_all_green(verify_bundle(classical, 5, 3, seed));
    });

    criterion(8, "kappa-Euclidean E(3): classical table passes; deformed slot certified", [&] {
        Bundle classical = build_ekappa3(CommutatorTable::classical(3, 3));
        BundleReport crep = verify_bundle(classical, 5, 3, seed);
        if (!report_all_green(crep)) return false;
        bool flagged = false;
        for (const auto& n : crep.notes)
            if (n.find("user-supplied") != std::string::npos) flagged = true;
        if (!flagged || !classical.deformed_slot_user_supplied) return false;
        // shipped deformed x-sector candidate
        if (!presentation_coherent(ek3.data.presentation(), 3)) return false;
        if (!verify_entwining(ek3.data, 5, 3).pass()) return false;
        CrossedData cd = cleft_data(ek3.phi, ek3.data, ek3.solver, 5, 3);
        const CoalgebraSpec& spec = ek3.data.coalgebra();
        const Presentation& pres = ek3.data.presentation();
        for (const CBasis& b : small_sweep(spec)) {
            for (const CBasis& c : small_sweep(spec)) {
                AlgebraElement want = AlgebraElement::scalar(counit(b, spec) * counit(c, spec));
                if (!(cd.sigma_p(b, c) == want)) return false;
            }
            for (int k = 1; k <= 3; ++k) {
                AlgebraElement x = gen_elem(pres, "x[" + std::to_string(k) + "]");
                if (!(cd.rho(b, x) == x.scaled(counit(b, spec)))) return false;
            }
        }
        return true;
    });

    criterion(9, "gauge: identity fixes the data; central scalar gauge certifies", [&] {
        CrossedData cd = cleft_data(eq2.phi, eq2.data, eq2.solver, 5, 3);
        ConvolutionMap id = ConvolutionMap::unit(eq2.data.coalgebra());
        CrossedData fixed = gauge_transform(cd, id, 5);
        for (int p = -3; p <= 3; ++p)
            for (int r = -3; r <= 3; ++r) {
                CBasis bp{p, {}}, br{r, {}};
                if (!(fixed.sigma_p(bp, br) == cd.sigma_p(bp, br))) return false;
                AlgebraElement np = gen_elem(eq2.data.presentation(), "n+");
                if (!(fixed.rho(bp, np) == cd.rho(bp, np))) return false;
            }
        const int s = eq2.s;
        ConvolutionMap gamma = ConvolutionMap::from_function([s](const CBasis& c) {
            return AlgebraElement::scalar(Scalar::param(PQ, c.p - s));
        });
        CrossedData primed = gauge_transform(cd, gamma, 5);
        if (!verify_conditions(primed, 5, 3).pass()) return false;
        return gauge_iso_multiplicative(primed, cd, gamma, 5, 3, seed, 50);
    });

    criterion(10, "the coaction of quantum E(2) is witnessed to not be an algebra map", [&] {
        return non_comodule_witness(eq2) && non_comodule_witness(build_eq2(2, 5));
    });

    criterion(11, "CLI verifies the corpus; reports are byte-deterministic", [&] {
        for (const std::string& f : {"eq2.alg", "ekappa2.alg", "ekappa3.alg", "hopf.alg"})
            if (run_cli("check all " + corpus_path(f)) != 0) return false;
        // byte determinism under a fixed seed
        const std::string a = "acceptance_report_a.json", b = "acceptance_report_b.json";
        if (run_cli("report " + corpus_path("eq2.alg") + " --seed 7 --json " + a) != 0)
            return false;
        if (run_cli("report " + corpus_path("eq2.alg") + " --seed 7 --json " + b) != 0)
            return false;
        std::string ja = slurp(a), jb = slurp(b);
        std::remove(a.c_str());
        std::remove(b.c_str());
        if (ja.empty() || ja != jb) return false;
        // parse/render round-trip on the canonical grammar
        const Presentation& pres = eq2.data.presentation();
        for (const std::string& e :
             {"q^2*n+*v", "v + mu+^-1*n+", "i*v^-3 + 5/7*n+^2 - kappa*v"}) {
            AlgebraElement x = parse_element(e, pres);
            if (!(parse_element(render(x, pres), pres) == x)) return false;
        }
        return true;
    });

    std::cout << (failures == 0 ? "ALL CRITERIA PASS" : "FAILURES: " + std::to_string(failures))
              << std::endl;
    return failures == 0 ? 0 : 1;
}
