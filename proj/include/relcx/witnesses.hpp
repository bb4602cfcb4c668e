#pragma once

#include "relcx/relcomp.hpp"

namespace relcx {

struct WitnessParams {
    std::optional<long long> lambda, tau, alpha;
    std::optional<int> psi;  // automorphism exponent where a twist is used
};

/// A tuple pair (X, Y) of length k with X ~_{k-1} Y but Y not in X^H,
/// certifying RC(H, Omega_m) >= k.  witnesses[j] maps (X minus x_j) to
/// (Y minus y_j); an absent entry means the verifier must find one with the
/// solver.
struct WitnessPackage {
    std::string tag;
    GroupSpec group;
    int m = 1;
    int k = 0;
    SubspaceTuple X, Y;
    std::vector<std::optional<SemilinearElem>> witnesses;
    WitnessParams params;
};

struct VerifyReport {
    std::string tag;
    std::string group;
    int k = 0;
    std::vector<bool> member_ok;     // check 1, per witness
    std::vector<bool> maps_ok;       // check 2, per witness
    std::vector<bool> solver_found;  // true where the witness was solver-found
    bool non_equiv_ok = false;       // check 3
    std::string statement;

    bool membership_pass() const;
    bool mapping_pass() const;
    bool pass() const;
};

/// Machine-checks a package: witness membership, subtuple mappings
/// (solver-found where absent), and non-equivalence of the full tuples.
VerifyReport verify(const WitnessPackage& pkg);

// ---- constructors, one per lower-bound family ----

/// Length-n package for any H >= SL, n >= 2.
WitnessPackage w_general_n(int n, const FieldPtr& F, const GroupSpec& H);

/// n = 2, q >= 8, q even or H not inside <Z, SigmaL_2(q)>; length 4.
WitnessPackage w_n2_case_a(const FieldPtr& F, const GroupSpec& H);
/// n = 2, q odd, q > 9, H inside <Z, SigmaL_2(q)>; length 4, solver witnesses.
WitnessPackage w_n2_case_b(const FieldPtr& F, const GroupSpec& H);
/// Smallest (lambda, tau) with (1 - lambda^2 tau)(1 - tau)^{-1} a nonzero
/// square and no field automorphism sending tau to lambda^2 tau.
std::pair<long long, long long> find_case_b_params(const FieldPtr& F);

/// n = 3, q >= 7, 3 | q-1; length 5, explicit determinant-1 witnesses.
WitnessPackage w_psl3(const FieldPtr& F, const GroupSpec& H);

/// H = GL_n(q), n >= 3, q >= 4; length n+2.
WitnessPackage w_gl_lower(int n, const FieldPtr& F);

/// H = <GL, phi^psi_exponent>, n >= 3, nontrivial twist; length n+3.
WitnessPackage w_gammal(int n, const FieldPtr& F, int psi_exponent);

/// n >= 4, H not inside GL; length n+2 (the n+3 construction one dimension
/// down, embedded so <e_n> is untouched).
WitnessPackage w_general_np2(int n, const FieldPtr& F, const GroupSpec& H);

/// n >= 4, q >= 3, determinant classes of H proper modulo n-th powers;
/// length 2n-2.
WitnessPackage w_psl_lower(int n, const FieldPtr& F, const GroupSpec& H);

/// Smallest admissible alpha for w_psl_lower, if any: a class of F* modulo
/// n-th powers not hit by {frobenius^i(det) : (det, i) in Q_H}.
std::optional<long long> psl_lower_alpha(const GroupSpec& H);

/// m-space package, n >= 2m >= 4, any H >= SL; length mn - m^2 + 1.
WitnessPackage w_mspaces(int n, int m, const FieldPtr& F, const GroupSpec& H);

}  // namespace relcx
