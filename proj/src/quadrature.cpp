#include "fourband/quadrature.hpp"

#include <map>
#include <mutex>

namespace fourband {

namespace {

// Newton iteration on the Legendre polynomial P_n; standard construction.
std::vector<std::pair<double, double>> build_rule(int n) {
    std::vector<std::pair<double, double>> rule(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule[i] = {x, 2.0 / ((1.0 - x * x) * dp * dp)};
    }
    return rule;
}

} // namespace

const std::vector<std::pair<double, double>>& gauss_legendre(int n) {
    static std::mutex mtx;
    static std::map<int, std::vector<std::pair<double, double>>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
    return it->second;
}

} // namespace fourband
