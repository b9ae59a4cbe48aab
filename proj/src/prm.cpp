#include "levyconv/prm.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace levyconv {

void AtomList::write_jsonl(std::ostream& os) const {
    const bool finite_marks = nu && nu->kind() == MarkKind::Finite;
    for (const Atom& a : atoms) {
        nlohmann::json row;
        row["t"] = a.time;
        if (finite_marks)
            row["mark"] = nu->space().labels.at(a.mark.index);
        else
            row["mark"] = a.mark.point;
        os << row.dump() << '\n';
    }
}

AtomList sample_prm(std::shared_ptr<const IntensityMeasure> nu, double horizon, Rng& rng) {
    if (!nu) throw std::invalid_argument("sample_prm needs an intensity");
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw std::invalid_argument("horizon must be positive and finite");

    AtomList out;
    out.horizon = horizon;
    out.nu = nu;

    const double rate = nu->total_mass() * horizon;
    std::size_t n = rate > 0.0 ? rng.poisson(rate) : 0;
    out.atoms.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Atom a;
        a.time = rng.uniform_oc(horizon);
        a.mark = nu->sample(rng);
        out.atoms.push_back(a);
    }
    auto by_time = [](const Atom& l, const Atom& r) { return l.time < r.time; };
    std::sort(out.atoms.begin(), out.atoms.end(), by_time);

    // Equal times break the strict ordering invariant; re-draw the colliding
    // time (probability ~ n^2 * 2^-53 per pass).
    for (int pass = 0; pass < 100; ++pass) {
        bool clean = true;
        for (std::size_t i = 1; i < out.atoms.size(); ++i) {
            if (out.atoms[i].time == out.atoms[i - 1].time) {
                out.atoms[i].time = rng.uniform_oc(horizon);
                clean = false;
            }
        }
        if (clean) return out;
        std::sort(out.atoms.begin(), out.atoms.end(), by_time);
    }
    throw std::runtime_error("could not de-duplicate atom times");
}

namespace {

void check_window(const Window& w, double horizon) {
    if (!(0.0 <= w.a && w.a < w.b && w.b <= horizon))
        throw std::invalid_argument("window must satisfy 0 <= a < b <= horizon");
}

}  // namespace

std::size_t count(const AtomList& atoms, const Window& w) {
    check_window(w, atoms.horizon);
    std::size_t n = 0;
    for (const Atom& at : atoms.atoms) {
        if (at.time <= w.a) continue;
        if (at.time > w.b) break;
        if (w.subset.contains(atoms.nu->space(), at.mark)) ++n;
    }
    return n;
}

double compensator(const IntensityMeasure& nu, const Window& w) {
    if (!(0.0 <= w.a && w.a < w.b))
        throw std::invalid_argument("window must satisfy 0 <= a < b");
    return nu.mass(w.subset) * (w.b - w.a);
}

double compensated_count(const AtomList& atoms, const IntensityMeasure& nu, const Window& w) {
    return double(count(atoms, w)) - compensator(nu, w);
}

double poisson_centered_abs_moment(double lambda, double p) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("lambda must be positive and finite");
    if (!(p >= 1.0 && p <= 2.0))
        throw std::invalid_argument("moment order must lie in [1,2]");

    // Forward pmf recurrence; stop once the remaining tail cannot move the
    // sum at the 1e-15 level even with the worst |k-lambda|^p factor.
    const std::size_t cap = static_cast<std::size_t>(lambda + 40.0 * std::sqrt(lambda) + 100.0);
    const long double max_factor = std::pow((long double)(cap)-lambda + 1.0L, (long double)p);
    long double pmf = std::exp(-(long double)lambda);
    long double cum = 0.0L;
    long double acc = 0.0L;
    for (std::size_t k = 0; k <= cap; ++k) {
        if (k > 0) pmf *= (long double)lambda / (long double)k;
        acc += pmf * std::pow(std::abs((long double)k - (long double)lambda), (long double)p);
        cum += pmf;
        if ((long double)k > lambda && (1.0L - cum) * max_factor < 1e-15L * acc) break;
    }
    return double(acc);
}

}  // namespace levyconv
