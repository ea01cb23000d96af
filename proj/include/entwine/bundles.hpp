#pragma once

#include "entwine/crossed.hpp"

namespace entwine {

/// A packaged instance: everything needed to run the verification pipeline.
struct Bundle {
    std::string name;
    int s = 0;       // index shift (E_q(2) only)
    int window = 5;  // default group-like evaluation window

    EntwiningData data;
    ConvolutionMap phi;
    std::shared_ptr<const Presentation> mpres;
    std::shared_ptr<const MembershipSolver> solver;

    /// Expected cleft tables on generator letters (paper reference data).
    std::function<AlgebraElement(const CBasis&, const Letter&)> expected_rho;
    std::function<Scalar(const CBasis&, const CBasis&)> expected_sigma;

    /// E_kappa(3): the deformed a-x commutator slot is user-supplied; the
    /// shipped default is the classical table.
    bool deformed_slot_user_supplied = false;
};

Bundle build_eq2(int s, int W);
/// kappa_zero substitutes kappa -> 0 everywhere (psi degenerates to the flip).
Bundle build_ekappa2(int W, bool kappa_zero = false);
Bundle build_ekappa3(const CommutatorTable& table);
Bundle build_hopf_sanity();

/// Deformed x-sector candidate: Gamma = 0, [x_1,x_3] = kappa x_1,
/// [x_2,x_3] = kappa x_2 (a solvable kappa-deformation of R^3 certified by
/// the machine checks).
CommutatorTable ekappa3_deformed_x_table();

/// The explicit witness that the E_q(2) coaction is not an algebra map:
/// psi(c_s (x) v n+) differs from the leg-wise product of psi(c_s (x) v)
/// and psi(c_s (x) n+) under c_p * c_r -> c_{p+r-s}. Returns true when the
/// difference is nonzero (the expected outcome).
bool non_comodule_witness(const Bundle& eq2);

struct StageResult {
    std::string name;
    bool pass = true;
    std::string error;  // nonempty when the stage aborted with an exception
    std::vector<ClauseResult> clauses;
};

struct BundleReport {
    std::string bundle;
    int window = 0;
    int degree_bound = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> notes;
    std::vector<StageResult> stages;
    bool pass() const {
        for (const auto& s : stages)
            if (!s.pass) return false;
        return true;
    }
};

/// Full pipeline: confluence -> entwining -> psiC -> cleft -> conditions ->
/// theta -> expected-table comparison.
BundleReport verify_bundle(const Bundle& b, int window, int degree_bound, std::uint64_t seed);

/// The expected-table comparison stage on its own (no-op pass when the bundle
/// declares no expected tables).
StageResult compare_tables(const Bundle& b, const CrossedData& cd, int window);

}  // namespace entwine
