#include "srr/closed_form.hpp"

#include <algorithm>
#include <stdexcept>

namespace srr {

namespace {

void check_parameters(int C, int K, const Rat& mu) {
    if (K < 1) throw std::invalid_argument("K must be >= 1");
    if (C < 0) throw std::invalid_argument("C must be >= 0");
    if (mu <= 0) throw std::invalid_argument("mu must be positive");
}

}  // namespace

LValue L_all_coded(int C, int K, const Rat& mu,
                   std::span<const Rat> lambda_hat) {
    check_parameters(C, K, mu);
    if (static_cast<int>(lambda_hat.size()) != K - 1)
        throw std::invalid_argument("lambda_hat must have K-1 entries");
    for (const Rat& l : lambda_hat)
        if (l < 0) throw std::invalid_argument("demand must be nonnegative");

    LValue out;
    const Rat used = sum(lambda_hat);
    if (C <= K - 1) {
        out.degenerate_region = true;
        out.value = 0;
        out.status = used == 0 ? LValue::Status::ok : LValue::Status::not_in_region;
        return out;
    }
    const Rat cap = frac(C, K) * mu;
    if (used > cap) {
        out.status = LValue::Status::not_in_region;
        out.value = cap - used;
        return out;
    }
    out.status = LValue::Status::ok;
    out.value = cap - used;
    return out;
}

bool region_membership_all_coded(int C, int K, const Rat& mu,
                                 std::span<const Rat> lambda) {
    check_parameters(C, K, mu);
    if (static_cast<int>(lambda.size()) != K)
        throw std::invalid_argument("lambda must have K entries");
    Rat total = 0;
    for (const Rat& l : lambda) {
        if (l < 0) throw std::invalid_argument("demand must be nonnegative");
        total += l;
    }
    if (total == 0) return true;
    if (C <= K - 1) return false;
    return total <= frac(C, K) * mu;
}

bool three_file_preconditions(int N1, int N2, int C, const Rat& mu, const Rat& l1,
                            const Rat& l2) {
    check_parameters(C, 3, mu);
    if (N1 < 0 || N2 < 0) throw std::invalid_argument("node counts must be >= 0");
    if (l1 < 0 || l2 < 0) throw std::invalid_argument("demand must be nonnegative");
    if (l1 + l2 > mu * N1 + mu * N2 + frac(C, 3) * mu) return false;
    if (C < 3) return false;
    if (Rat(C) < Rat(N1) - l1 / mu) return false;
    if (Rat(C) < Rat(N2) - l2 / mu) return false;
    return true;
}

CaseResult classify_three_file(int N1, int N2, int C, const Rat& mu,
                               const Rat& l1, const Rat& l2) {
    CaseResult out;
    if (!three_file_preconditions(N1, N2, C, mu, l1, l2)) return out;
    out.status = LValue::Status::ok;
    const bool over1 = l1 / mu > N1;
    const bool over2 = l2 / mu > N2;
    if (!over1 && !over2)
        out.which = ThreeFileCase::case1;
    else if (over1 && !over2)
        out.which = ThreeFileCase::case2;
    else if (!over1 && over2)
        out.which = ThreeFileCase::case3;
    else
        out.which = ThreeFileCase::case4;
    return out;
}

LValue L_three_file(int N1, int N2, int N3, int C, const Rat& mu, const Rat& l1,
                    const Rat& l2) {
    if (N3 < 0) throw std::invalid_argument("node counts must be >= 0");
    LValue out;
    CaseResult which = classify_three_file(N1, N2, C, mu, l1, l2);
    if (which.status != LValue::Status::ok) return out;

    const Rat third = frac(1, 3);
    switch (which.which) {
        case ThreeFileCase::case1:
            out.value = (frac(C, 3) + Rat(N1) * third + Rat(N2) * third + N3) * mu -
                        l1 * third - l2 * third;
            break;
        case ThreeFileCase::case2:
            out.value =
                (frac(C, 3) + N1 + Rat(N2) * third + N3) * mu - l1 - l2 * third;
            break;
        case ThreeFileCase::case3:
            out.value =
                (frac(C, 3) + Rat(N1) * third + N2 + N3) * mu - l1 * third - l2;
            break;
        case ThreeFileCase::case4:
            out.value = (frac(C, 3) + N1 + N2 + N3) * mu - l1 - l2;
            break;
    }
    out.status =
        out.value < 0 ? LValue::Status::not_in_region : LValue::Status::ok;
    return out;
}

UpperBound upper_bound_D(int N1, int N2, int N3, int C, const Rat& mu,
                         const Rat& l1, const Rat& l2) {
    check_parameters(C, 3, mu);
    if (N1 < 0 || N2 < 0 || N3 < 0)
        throw std::invalid_argument("node counts must be >= 0");
    if (l1 < 0 || l2 < 0) throw std::invalid_argument("demand must be nonnegative");

    const Rat cap1 = Rat(N1) * mu, cap2 = Rat(N2) * mu;
    const Rat r1 = std::min(l1, cap1);
    const Rat r2 = std::min(l2, cap2);
    UpperBound out;
    out.D = r1 + r2 + ((cap1 - r1) + (cap2 - r2) + Rat(C) * mu) / 3 + Rat(N3) * mu;
    const Rat slack = out.D - l1 - l2;
    out.lambda3_cap = std::max(slack, Rat(0));
    return out;
}

const char* to_string(ThreeFileCase c) {
    switch (c) {
        case ThreeFileCase::case1: return "case1";
        case ThreeFileCase::case2: return "case2";
        case ThreeFileCase::case3: return "case3";
        case ThreeFileCase::case4: return "case4";
    }
    return "?";
}

}  // namespace srr
