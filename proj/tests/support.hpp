#pragma once

#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>
#include <sys/wait.h>

#include "vidinli/vidinli.hpp"

namespace support {

using namespace vidinli;

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(0x5eed5eed5eedULL);
    return gen;
}

inline Scalar random_scalar(const Field& f) {
    if (f.is_rational()) {
        std::uniform_int_distribution<long> num(-6, 6);
        std::uniform_int_distribution<long> den(1, 4);
        return Scalar::rational(num(rng()), den(rng()));
    }
    std::uniform_int_distribution<long> d(0, static_cast<long>(f.characteristic()) - 1);
    return Scalar::of_int(f, d(rng()));
}

inline Matrix random_matrix(const Field& f, std::size_t rows, std::size_t cols) {
    Matrix m(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = random_scalar(f);
    return m;
}

inline Matrix random_invertible(const Field& f, std::size_t n) {
    while (true) {
        Matrix m = random_matrix(f, n, n);
        if (rank(m) == n) return m;
    }
}

struct CliResult {
    int exit_code;
    std::string output;
};

inline CliResult run_cli(const std::string& args) {
    std::string cmd = std::string(VIDINLI_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) throw std::runtime_error("popen failed for: " + cmd);
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    int status = pclose(pipe);
    int code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    return {code, out};
}

inline std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = "/tmp/vidinli_test_" + name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

/// Unital algebra over any field from the split multiplication formula
/// (α1+u)(β1+v) = (αβ − B(u,v))1 + αv + βu. Bypasses the characteristic
/// dispatch so GF(2) instances of the formula can be built for oracles.
inline Algebra algebra_from_form_raw(const Field& f, const Matrix& b_on_v) {
    std::size_t m = b_on_v.rows(), n = m + 1;
    std::vector<Scalar> c(n * n * n, Scalar::zero(f));
    auto set = [&](std::size_t i, std::size_t j, std::size_t k, const Scalar& v) {
        c[(i * n + j) * n + k] = v;
    };
    set(0, 0, 0, Scalar::one(f));
    for (std::size_t i = 1; i < n; ++i) {
        set(0, i, i, Scalar::one(f));
        set(i, 0, i, Scalar::one(f));
        for (std::size_t j = 1; j < n; ++j) set(i, j, 0, -b_on_v.at(i - 1, j - 1));
    }
    return Algebra(f, n, std::move(c), 0);
}

} // namespace support
