#pragma once

#include <optional>
#include <vector>

#include "dlt/matrix.hpp"

namespace dlt {

// Linear equations in unknown matrices: each equation is sum_k L_k X_{v_k} R_k = B.
class LinearSystem {
public:
    struct Term {
        int var;
        Matrix left, right;
    };

    explicit LinearSystem(RingSpec R) : R_(R) {}
    int add_unknown(int rows, int cols);
    // Terms whose unknown has a zero dimension are ignored.
    void add_equation(const std::vector<Term>& terms, const Matrix& rhs);
    int unknowns() const { return static_cast<int>(shape_.size()); }
    int variable_count() const { return nvar_; }
    std::optional<std::vector<Matrix>> solve() const;

private:
    struct Eq {
        std::vector<Term> terms;
        Matrix rhs;
    };
    RingSpec R_;
    std::vector<std::pair<int, int>> shape_;
    std::vector<int> off_;
    int nvar_ = 0;
    std::vector<Eq> eqs_;
};

}  // namespace dlt
