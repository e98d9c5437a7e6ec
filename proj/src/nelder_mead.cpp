#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "voigt/error.hpp"
#include "voigt/estimation.hpp"

namespace voigt {
namespace {

struct Vertex {
    std::vector<double> x;
    double f;
};

class Search {
  public:
    Search(const Objective& objective, const SimplexConfig& cfg)
        : objective_(objective), cfg_(cfg) {}

    SimplexResult run(std::span<const double> start) {
        const std::size_t n = start.size();
        std::vector<Vertex> simplex;
        simplex.reserve(n + 1);
        simplex.push_back({std::vector<double>(start.begin(), start.end()), 0.0});
        simplex[0].f = eval(simplex[0].x);
        if (!std::isfinite(simplex[0].f)) {
            throw Error(ErrorCode::kNonFinite, "objective is not finite at the start point");
        }
        for (std::size_t i = 0; i < n; ++i) {
            Vertex v{simplex[0].x, 0.0};
            v.x[i] += 0.1 * std::max(std::fabs(v.x[i]), 1.0);
            v.f = eval(v.x);
            simplex.push_back(std::move(v));
        }

        SimplexResult result;
        const auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
        for (;;) {
            std::sort(simplex.begin(), simplex.end(), by_value);
            const Vertex& best = simplex.front();
            const double spread = simplex.back().f - best.f;
            double diameter = 0.0;
            for (std::size_t i = 1; i <= n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    diameter = std::max(diameter, std::fabs(simplex[i].x[j] - best.x[j]));
                }
            }
            if (spread == 0.0 || (spread <= cfg_.tol && diameter <= cfg_.xtol)) {
                result.converged = true;
                break;
            }
            if (result.iterations >= cfg_.max_iter) break;
            ++result.iterations;
            any_finite_ = false;
            step(simplex);
            if (!any_finite_) {
                throw Error(ErrorCode::kNonFinite,
                            "objective was non-finite at every probe of a simplex iteration");
            }
        }
        result.argmin = simplex.front().x;
        result.value = simplex.front().f;
        result.evaluations = evaluations_;
        return result;
    }

  private:
    double eval(const std::vector<double>& x) {
        ++evaluations_;
        const double f = objective_(x);
        if (!std::isfinite(f)) return std::numeric_limits<double>::infinity();
        any_finite_ = true;
        return f;
    }

    // Point c + t (p - c).
    static std::vector<double> along(const std::vector<double>& c, const std::vector<double>& p,
                                     double t) {
        std::vector<double> out(c.size());
        for (std::size_t j = 0; j < c.size(); ++j) out[j] = c[j] + t * (p[j] - c[j]);
        return out;
    }

    void step(std::vector<Vertex>& simplex) {
        const std::size_t n = simplex.size() - 1;
        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i].x[j] / static_cast<double>(n);
        }
        Vertex& worst = simplex[n];

        Vertex reflected{along(centroid, worst.x, -cfg_.reflection), 0.0};
        reflected.f = eval(reflected.x);

        if (reflected.f < simplex[0].f) {
            Vertex expanded{along(centroid, reflected.x, cfg_.expansion), 0.0};
            expanded.f = eval(expanded.x);
            worst = expanded.f < reflected.f ? std::move(expanded) : std::move(reflected);
            return;
        }
        if (reflected.f < simplex[n - 1].f) {
            worst = std::move(reflected);
            return;
        }
        if (reflected.f < worst.f) {
            Vertex outside{along(centroid, reflected.x, cfg_.contraction), 0.0};
            outside.f = eval(outside.x);
            if (outside.f <= reflected.f) {
                worst = std::move(outside);
                return;
            }
        } else {
            Vertex inside{along(centroid, worst.x, cfg_.contraction), 0.0};
            inside.f = eval(inside.x);
            if (inside.f < worst.f) {
                worst = std::move(inside);
                return;
            }
        }
        for (std::size_t i = 1; i <= n; ++i) {
            simplex[i].x = along(simplex[0].x, simplex[i].x, cfg_.shrink);
            simplex[i].f = eval(simplex[i].x);
        }
    }

    const Objective& objective_;
    const SimplexConfig& cfg_;
    int evaluations_ = 0;
    bool any_finite_ = false;
};

}  // namespace

void SimplexConfig::validate() const {
    const bool ok = reflection > 0.0 && expansion > 1.0 && expansion > reflection &&
                    contraction > 0.0 && contraction < 1.0 && shrink > 0.0 && shrink < 1.0 &&
                    tol > 0.0 && xtol > 0.0 && max_iter >= 1 && restarts >= 0;
    if (!ok) throw Error(ErrorCode::kInvalidArgument, "invalid Nelder-Mead configuration");
}

SimplexResult nelder_mead(const Objective& objective, std::span<const double> start,
                          const SimplexConfig& cfg) {
    cfg.validate();
    if (start.empty()) throw Error(ErrorCode::kInvalidArgument, "empty start point");

    SimplexResult best = Search(objective, cfg).run(start);
    for (int r = 1; r <= cfg.restarts; ++r) {
        SimplexResult next = Search(objective, cfg).run(best.argmin);
        const double gain = best.value - next.value;
        best.iterations += next.iterations;
        best.evaluations += next.evaluations;
        best.restarts_used = r;
        if (next.value <= best.value) {
            best.argmin = std::move(next.argmin);
            best.value = next.value;
            best.converged = next.converged;
        }
        if (best.converged && gain <= cfg.tol) break;
    }
    return best;
}

}  // namespace voigt
