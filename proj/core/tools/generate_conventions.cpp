// Build-time generator: runs the convention oracles and writes the header
// with the pinned sign constants. Exits non-zero if the oracles do not
// agree, which fails the build.
#include <cstdio>
#include <fstream>
#include <iostream>

#include "wedgeqft/convention_oracle.hpp"

int main(int argc, char** argv)
{
    if (argc != 2) {
        std::cerr << "usage: " << argv[0] << " <output header>\n";
        return 2;
    }
    using namespace wedgeqft;
    const ConventionReport rep = pin_conventions(CutoffFunction{}, QuadratureConfig{});

    char buf[256];
    std::ofstream out(argv[1]);
    out << "#pragma once\n\n"
        << "// Generated at build time by the convention oracles. Do not edit.\n\n"
        << "namespace wedgeqft::pinned {\n\n";
    out << "inline constexpr int sigma = " << rep.sigma << ";\n";
    out << "inline constexpr int sigma_prime = " << rep.sigma_prime << ";\n";
    out << "inline constexpr int poisson_c = " << rep.poisson_c << ";\n\n";
    std::snprintf(buf, sizeof buf, "inline constexpr double max_residual = %.3e;\n", rep.max_residual);
    out << buf;
    std::snprintf(buf, sizeof buf, "inline constexpr double route_disagreement = %.3e;\n",
                  rep.route_disagreement);
    out << buf << "\n} // namespace wedgeqft::pinned\n";
    out.close();

    std::printf("sigma=%d sigma'=%d c=%d residual=%.3e disagreement=%.3e\n", rep.sigma,
                rep.sigma_prime, rep.poisson_c, rep.max_residual, rep.route_disagreement);
    std::printf("function route: %.15f %.15f %.15f\n", rep.function_route.sigma,
                rep.function_route.sigma_prime, rep.function_route.poisson_c);
    std::printf("matrix route:   %.15f %.15f %.15f\n", rep.matrix_route.sigma,
                rep.matrix_route.sigma_prime, rep.matrix_route.poisson_c);
    if (!rep.ok()) {
        std::fprintf(stderr, "convention oracles disagree; refusing to pin\n");
        std::remove(argv[1]);
        return 1;
    }
    return 0;
}
