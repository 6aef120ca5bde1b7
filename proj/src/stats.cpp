#include "cped/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>

namespace cped {

namespace {

constexpr double kMassEps = 1e-12;

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

const std::vector<double>& density_masses(const Density& d) {
    if (const auto* g = std::get_if<GriddedDensity>(&d)) return g->masses;
    if (const auto* p = std::get_if<PmfDensity>(&d)) return p->masses;
    throw std::logic_error("density_masses on a degenerate density");
}

QuantilePair QuantilePair::create(double gamma_prime, double gamma) {
    if (!(gamma_prime > 0.0) || !(gamma_prime < gamma) || !(gamma <= 1.0)) {
        throw UsageError("quantile-pair", "require 0 < gamma_prime < gamma <= 1, got gamma_prime=" +
                                              fmt_double(gamma_prime) + " gamma=" +
                                              fmt_double(gamma));
    }
    return QuantilePair{gamma_prime, gamma};
}

double quantile_threshold(const std::vector<double>& values, double gamma) {
    if (values.empty()) {
        throw NumericError("quantile", "cannot take a quantile of an empty value set");
    }
    const auto n = values.size();
    const auto k = static_cast<std::size_t>(std::floor(gamma * static_cast<double>(n)));
    if (k == 0) {
        throw NumericError("quantile",
                           "floor(gamma*N) = 0 for gamma=" + fmt_double(gamma) + ", N=" +
                               std::to_string(n) + "; minimal feasible gamma is " +
                               fmt_double(1.0 / static_cast<double>(n)));
    }
    std::vector<double> sorted(values);
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k - 1),
                     sorted.end());
    return sorted[k - 1];
}

EvaluationSet top_subset(const EvaluationSet& evalset, double gamma) {
    std::vector<double> objectives;
    objectives.reserve(evalset.trials.size());
    for (const Trial& t : evalset.trials) objectives.push_back(t.objective);
    const double threshold = quantile_threshold(objectives, gamma);

    EvaluationSet out{evalset.space, {}};
    for (const Trial& t : evalset.trials) {
        if (t.objective <= threshold) out.trials.push_back(t);
    }
    return out;
}

Density fit_continuous_density(const std::vector<double>& samples, ContinuousInterval domain,
                               int grid_size) {
    if (samples.empty()) {
        throw NumericError("density", "cannot fit a density from zero samples");
    }
    if (grid_size < 2) {
        throw UsageError("grid-size", "grid size must be >= 2");
    }
    for (double s : samples) {
        if (!(s >= domain.lo && s <= domain.hi)) {
            throw NumericError("density", "sample " + fmt_double(s) + " outside domain [" +
                                              fmt_double(domain.lo) + ", " + fmt_double(domain.hi) +
                                              "]");
        }
    }

    // Sorted accumulation keeps the result independent of sample order.
    std::vector<double> xs(samples);
    std::sort(xs.begin(), xs.end());

    const double n = static_cast<double>(xs.size());
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    const double sigma = xs.size() >= 2 ? std::sqrt(ss / (n - 1.0)) : 0.0;

    const double h_min = domain.width() * 1e-3;
    const double h = std::max(sigma * std::pow(n, -0.2), h_min);

    GriddedDensity out;
    out.domain = domain;
    const auto g = static_cast<std::size_t>(grid_size);
    out.points.resize(g);
    out.masses.assign(g, 0.0);
    const double step = domain.width() / static_cast<double>(grid_size - 1);
    for (std::size_t j = 0; j < g; ++j) {
        out.points[j] = domain.lo + step * static_cast<double>(j);
    }
    for (std::size_t j = 0; j < g; ++j) {
        double acc = 0.0;
        for (double x : xs) {
            const double z = (out.points[j] - x) / h;
            acc += std::exp(-0.5 * z * z);
        }
        out.masses[j] = acc;
    }
    const double total = std::accumulate(out.masses.begin(), out.masses.end(), 0.0);
    if (!(total > 0.0)) {
        // All kernel evaluations underflowed; fall back to a point histogram.
        for (double x : xs) {
            auto j = static_cast<std::size_t>(std::llround((x - domain.lo) / step));
            out.masses[std::min(j, g - 1)] += 1.0;
        }
    }
    const double norm = std::accumulate(out.masses.begin(), out.masses.end(), 0.0);
    for (double& m : out.masses) m /= norm;
    return out;
}

Density fit_categorical_density(const std::vector<std::string>& samples,
                                const std::vector<std::string>& labels) {
    if (samples.empty()) {
        throw NumericError("density", "cannot fit a density from zero samples");
    }
    PmfDensity out;
    out.labels = labels;
    out.masses.assign(labels.size(), 0.0);
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < labels.size(); ++i) index.emplace(labels[i], i);
    for (const std::string& s : samples) {
        auto it = index.find(s);
        if (it == index.end()) {
            throw NumericError("density", "sample label '" + s + "' not in the domain");
        }
        out.masses[it->second] += 1.0;
    }
    const double denom = static_cast<double>(samples.size() + labels.size());
    for (double& m : out.masses) m = (m + 1.0) / denom;
    return out;
}

Density empirical_pmf(const std::vector<std::string>& samples,
                      const std::vector<std::string>& atoms) {
    if (samples.empty()) {
        throw NumericError("density", "cannot fit a density from zero samples");
    }
    PmfDensity out;
    out.labels = atoms;
    out.masses.assign(atoms.size(), 0.0);
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < atoms.size(); ++i) index.emplace(atoms[i], i);
    for (const std::string& s : samples) {
        auto it = index.find(s);
        if (it == index.end()) {
            throw NumericError("absolute-continuity",
                               "sample '" + s + "' outside the reference atom set");
        }
        out.masses[it->second] += 1.0;
    }
    for (double& m : out.masses) m /= static_cast<double>(samples.size());
    return out;
}

namespace {

double divergence_over_masses(const std::vector<double>& p, const std::vector<double>& q) {
    double acc = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j) {
        if (q[j] < kMassEps) {
            if (p[j] < kMassEps) continue;
            throw NumericError("absolute-continuity",
                               "p has mass " + fmt_double(p[j]) + " where q has none (cell " +
                                   std::to_string(j) + "); the estimates have disjoint support");
        }
        const double r = p[j] / q[j] - 1.0;
        acc += r * r * q[j];
    }
    return acc;
}

}  // namespace

double pearson_divergence_density(const Density& p, const Density& q) {
    if (std::holds_alternative<DegenerateDensity>(p) ||
        std::holds_alternative<DegenerateDensity>(q)) {
        if (std::holds_alternative<DegenerateDensity>(p) &&
            std::holds_alternative<DegenerateDensity>(q)) {
            return 0.0;
        }
        throw NumericError("density-mismatch", "degenerate density compared with a non-degenerate one");
    }
    if (const auto* gp = std::get_if<GriddedDensity>(&p)) {
        const auto* gq = std::get_if<GriddedDensity>(&q);
        if (gq == nullptr) {
            throw NumericError("density-mismatch", "gridded density compared with a pmf");
        }
        if (gp->domain != gq->domain || gp->points.size() != gq->points.size()) {
            throw NumericError("density-mismatch", "densities live on different grids");
        }
        return divergence_over_masses(gp->masses, gq->masses);
    }
    const auto& pp = std::get<PmfDensity>(p);
    const auto* pq = std::get_if<PmfDensity>(&q);
    if (pq == nullptr) {
        throw NumericError("density-mismatch", "pmf compared with a gridded density");
    }
    if (pp.labels != pq->labels) {
        throw NumericError("density-mismatch", "pmfs have different label sets");
    }
    return divergence_over_masses(pp.masses, pq->masses);
}

double pearson_divergence_discrete(const std::vector<double>& alpha,
                                   const std::vector<double>& beta) {
    if (alpha.size() != beta.size()) {
        throw NumericError("density-mismatch", "probability vectors have different lengths");
    }
    double sum_a = 0.0;
    double sum_b = 0.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        sum_a += alpha[i];
        sum_b += beta[i];
    }
    if (std::abs(sum_a - 1.0) > 1e-9 || std::abs(sum_b - 1.0) > 1e-9) {
        throw NumericError("probability", "probability vectors must sum to 1");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        if (beta[i] == 0.0) {
            if (alpha[i] > 0.0) {
                throw NumericError("absolute-continuity",
                                   "absolute continuity violated: alpha[" + std::to_string(i) +
                                       "] > 0 with beta[" + std::to_string(i) + "] = 0");
            }
            continue;
        }
        const double r = alpha[i] / beta[i] - 1.0;
        acc += r * r * beta[i];
    }
    return acc;
}

}  // namespace cped
