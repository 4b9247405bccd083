#pragma once

#include <span>

#include "srr/rational.hpp"

namespace srr {

// Four branches of the three-file boundary formula, selected by comparing
// lambda_i / mu against N_i for i = 1, 2.
enum class ThreeFileCase { case1, case2, case3, case4 };

struct LValue {
    enum class Status { ok, not_in_region, out_of_domain };
    Status status = Status::out_of_domain;
    Rat value;                     // meaningful when status != out_of_domain
    bool degenerate_region = false;  // all-coded with C <= K-1

    bool ok() const { return status == Status::ok; }
};

// All-coded boundary: L = (C/K) mu - sum(lambda_hat) when C > K-1; with
// C <= K-1 the region degenerates to the origin.
LValue L_all_coded(int C, int K, const Rat& mu, std::span<const Rat> lambda_hat);

// True iff lambda is in the all-coded region: C > K-1 and
// sum(lambda) <= (C/K) mu, or lambda = 0.
bool region_membership_all_coded(int C, int K, const Rat& mu,
                                 std::span<const Rat> lambda);

// Hypotheses of the three-file boundary formula:
//   l1 + l2 <= mu N1 + mu N2 + (C/3) mu   and
//   C >= max(3, N1 - l1/mu, N2 - l2/mu).
bool three_file_preconditions(int N1, int N2, int C, const Rat& mu, const Rat& l1,
                            const Rat& l2);

struct CaseResult {
    LValue::Status status = LValue::Status::out_of_domain;
    ThreeFileCase which = ThreeFileCase::case1;
};

// Branch selection; out_of_domain when the hypotheses above fail. Boundary
// ties lambda_i = N_i mu stay on the "<=" branch, exactly as the case
// conditions are written.
CaseResult classify_three_file(int N1, int N2, int C, const Rat& mu,
                               const Rat& l1, const Rat& l2);

// The four-branch boundary value for a three-file system with N1, N2, N3
// systematic nodes and C coded nodes. Refuses (out_of_domain) outside the
// stated hypotheses rather than extrapolating; a negative formula value is
// reported as not_in_region with the raw value kept for diagnostics.
LValue L_three_file(int N1, int N2, int N3, int C, const Rat& mu, const Rat& l1,
                    const Rat& l2);

struct UpperBound {
    Rat D;            // bound on total demand served
    Rat lambda3_cap;  // max(D - l1 - l2, 0)
};

// Work-counting bound with r_i = min(lambda_i, N_i mu):
//   D = r1 + r2 + ((N1 mu - r1) + (N2 mu - r2) + C mu)/3 + N3 mu.
UpperBound upper_bound_D(int N1, int N2, int N3, int C, const Rat& mu,
                         const Rat& l1, const Rat& l2);

const char* to_string(ThreeFileCase c);

}  // namespace srr
