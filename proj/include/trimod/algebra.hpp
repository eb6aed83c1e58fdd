#pragma once

// Finite-dimensional associative unital F_p-algebras given by structure
// constants. An algebra is stored through its left-multiplication matrices
// L_i = matrix of (e_i * -); the structure constants are c_ijk = L_i(k, j).

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "trimod/matrix.hpp"

namespace trimod {

struct Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

struct AlgebraCheck {
    bool ok = true;
    std::string detail;  // first failing axiom, human readable
};

struct Algebra {
    u32 p = 2;
    std::size_t dim = 0;
    std::string name;
    std::vector<Mat> left_mul;  // dim matrices, each dim x dim
    std::vector<u32> unit;      // coordinates of 1

    // e_i * e_j as a coordinate vector
    std::vector<u32> basis_product(std::size_t i, std::size_t j) const {
        return left_mul[i].col(j);
    }
    // product of arbitrary coordinate vectors
    std::vector<u32> mul(const std::vector<u32>& a, const std::vector<u32>& b) const {
        std::vector<u32> out(dim, 0);
        for (std::size_t i = 0; i < dim; ++i) {
            if (!a[i]) continue;
            for (std::size_t j = 0; j < dim; ++j) {
                if (!b[j]) continue;
                u64 c = u64(a[i]) * b[j] % p;
                const auto prod = left_mul[i].col(j);
                for (std::size_t k = 0; k < dim; ++k)
                    out[k] = static_cast<u32>((out[k] + c * prod[k]) % p);
            }
        }
        return out;
    }
    Mat left_mul_of(const std::vector<u32>& a) const {
        Mat m(p, dim, dim);
        for (std::size_t i = 0; i < dim; ++i)
            if (a[i]) m = m + left_mul[i].scaled(a[i]);
        return m;
    }

    AlgebraCheck validate() const {
        if (left_mul.size() != dim || unit.size() != dim)
            return {false, "structure data has wrong arity"};
        for (std::size_t i = 0; i < dim; ++i)
            if (left_mul[i].rows() != dim || left_mul[i].cols() != dim || left_mul[i].p() != p)
                return {false, "left multiplication matrix " + std::to_string(i) + " malformed"};
        // associativity: L_{e_i e_j} = L_i L_j, i.e. (e_i e_j) e_l = e_i (e_j e_l) for all l
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) {
                Mat lhs = left_mul[i] * left_mul[j];
                Mat rhs(p, dim, dim);
                const auto prod = left_mul[i].col(j);
                for (std::size_t k = 0; k < dim; ++k)
                    if (prod[k]) rhs = rhs + left_mul[k].scaled(prod[k]);
                if (lhs != rhs)
                    return {false, "associativity fails at basis pair (" + std::to_string(i) +
                                       "," + std::to_string(j) + ")"};
            }
        // unit axioms: 1*e_j = e_j and e_j*1 = e_j
        Mat lu = left_mul_of(unit);
        if (!lu.is_identity()) return {false, "unit is not a left identity"};
        for (std::size_t j = 0; j < dim; ++j) {
            std::vector<u32> ej(dim, 0);
            ej[j] = 1;
            if (mul(ej, unit) != ej)
                return {false, "unit is not a right identity at basis " + std::to_string(j)};
        }
        return {};
    }

    // opposite algebra: c^op_ijk = c_jik
    Algebra opposite() const {
        Algebra op;
        op.p = p;
        op.dim = dim;
        op.name = name + "^op";
        op.unit = unit;
        op.left_mul.reserve(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            Mat li(p, dim, dim);
            for (std::size_t j = 0; j < dim; ++j) {
                const auto prod = left_mul[j].col(i);  // e_j * e_i
                for (std::size_t k = 0; k < dim; ++k) li.at(k, j) = prod[k];
            }
            op.left_mul.push_back(std::move(li));
        }
        return op;
    }

    bool same_as(const Algebra& o) const {
        return p == o.p && dim == o.dim && unit == o.unit && left_mul == o.left_mul;
    }
};

inline AlgebraPtr make_algebra(Algebra a) {
    auto ptr = std::make_shared<Algebra>(std::move(a));
    return ptr;
}

// the ground field F_p as a 1-dimensional algebra
inline AlgebraPtr ground_field(u32 p, std::string name = "") {
    Algebra a;
    a.p = p;
    a.dim = 1;
    a.name = name.empty() ? "F" + std::to_string(p) : std::move(name);
    a.left_mul = {Mat::identity(p, 1)};
    a.unit = {1};
    return make_algebra(std::move(a));
}

// F_p[x]/(x^2), basis {1, x}
inline AlgebraPtr dual_numbers(u32 p, std::string name = "") {
    Algebra a;
    a.p = p;
    a.dim = 2;
    a.name = name.empty() ? "D" + std::to_string(p) : std::move(name);
    a.left_mul = {Mat::identity(p, 2), Mat(p, 2, 2, {0, 0, 1, 0})};
    a.unit = {1, 0};
    return make_algebra(std::move(a));
}

}  // namespace trimod
