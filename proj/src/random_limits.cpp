#include "uaroot/random_limits.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "uaroot/dyadic.hpp"

namespace uaroot {

namespace {

constexpr double kW16 = 16.0 / 17.0;

double beta_integrand(double a, double b, double x) {
    return std::pow(x, a - 1.0) * std::pow(1.0 - x, b - 1.0);
}

double simpson(double lo, double hi, double flo, double fmid, double fhi) {
    return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
}

double adaptive_simpson(double a, double b, double lo, double hi, double flo, double fmid,
                        double fhi, double whole, double eps, int depth) {
    const double mid = 0.5 * (lo + hi);
    const double lmid = 0.5 * (lo + mid);
    const double rmid = 0.5 * (mid + hi);
    const double flmid = beta_integrand(a, b, lmid);
    const double frmid = beta_integrand(a, b, rmid);
    const double left = simpson(lo, mid, flo, flmid, fmid);
    const double right = simpson(mid, hi, fmid, frmid, fhi);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * eps)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(a, b, lo, mid, flo, flmid, fmid, left, eps / 2.0, depth - 1) +
           adaptive_simpson(a, b, mid, hi, fmid, frmid, fhi, right, eps / 2.0, depth - 1);
}

// Unnormalized integral of x^(a-1) (1-x)^(b-1) over [lo, hi]; smooth away from
// the endpoints for a >= 1 and hi <= 1/2.
double beta_mass(double a, double b, double lo, double hi) {
    const double flo = beta_integrand(a, b, lo);
    const double fhi = beta_integrand(a, b, hi);
    const double mid = 0.5 * (lo + hi);
    const double fmid = beta_integrand(a, b, mid);
    const double whole = simpson(lo, hi, flo, fmid, fhi);
    return adaptive_simpson(a, b, lo, hi, flo, fmid, fhi, whole, 1e-13, 48);
}

double beta_normalizer(double a, double b) {
    return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

}  // namespace

std::vector<double> sample_dirichlet_sym(std::int32_t k, double alpha, Rng& rng) {
    if (k < 2) throw std::invalid_argument("sample_dirichlet_sym: k must be >= 2");
    if (!(alpha > 0)) throw std::invalid_argument("sample_dirichlet_sym: alpha must be positive");
    std::vector<double> out(static_cast<std::size_t>(k));
    double sum = 0.0;
    for (auto& value : out) {
        value = rng.gamma(alpha);
        sum += value;
    }
    for (auto& value : out) value /= sum;
    return out;
}

namespace {

// Y_1..Y_k of the stick-breaking construction, in size-biased (draw) order.
void sticks_and_draw_order(std::int32_t k, std::int32_t d, Rng& rng, std::vector<double>& sticks,
                           std::vector<double>& draw_order) {
    if (k < 2) throw std::invalid_argument("stick_break_urn: k must be >= 2");
    if (d < 2) throw std::invalid_argument("stick_break_urn: d must be >= 2");
    sticks.resize(static_cast<std::size_t>(k) - 1);
    draw_order.resize(static_cast<std::size_t>(k));
    const double a = static_cast<double>(d) / (d - 1);
    double rest = 1.0;
    for (std::int32_t i = 1; i < k; ++i) {
        const double b = static_cast<double>(k - i) / (d - 1);
        const double x = rng.beta(a, b);
        sticks[static_cast<std::size_t>(i - 1)] = x;
        draw_order[static_cast<std::size_t>(i - 1)] = x * rest;
        rest *= (1.0 - x);
    }
    draw_order[static_cast<std::size_t>(k - 1)] = rest;
}

}  // namespace

StickSample stick_break_urn(std::int32_t k, std::int32_t d, Rng& rng) {
    StickSample s;
    sticks_and_draw_order(k, d, rng, s.sticks, s.draw_order);
    s.perm.resize(s.draw_order.size());
    for (std::size_t i = 0; i < s.perm.size(); ++i) s.perm[i] = static_cast<std::uint32_t>(i);
    for (std::size_t i = s.perm.size(); i > 1; --i)
        std::swap(s.perm[i - 1], s.perm[rng.below(i)]);
    s.components.resize(s.draw_order.size());
    for (std::size_t i = 0; i < s.perm.size(); ++i) s.components[i] = s.draw_order[s.perm[i]];
    return s;
}

RearrangementResult rearrange_uniform(const std::vector<double>& us, std::size_t horizon) {
    if (horizon < 2) throw std::invalid_argument("rearrange_uniform: horizon must be >= 2");
    if (us.size() < horizon)
        throw std::invalid_argument("rearrange_uniform: need at least `horizon` entries");
    for (std::size_t i = 0; i < horizon; ++i)
        if (!(us[i] >= 0.0 && us[i] <= 1.0))
            throw std::invalid_argument("rearrange_uniform: entries must lie in [0, 1]");
    std::uint32_t pivot = 0;
    for (std::size_t i = 0; i < horizon; ++i) {
        if (us[i] > 0.5) {
            pivot = static_cast<std::uint32_t>(i + 1);
            break;
        }
    }
    if (pivot == 0)
        throw std::invalid_argument(
            "rearrange_uniform: no entry exceeds 1/2 within the horizon; enlarge it");

    RearrangementResult result;
    result.pivot = pivot;
    result.sigma.resize(horizon);
    result.sigma[0] = pivot;
    for (std::size_t i = 2; i <= horizon; ++i)
        result.sigma[i - 1] = (i <= pivot) ? static_cast<std::uint32_t>(i - 1)
                                           : static_cast<std::uint32_t>(i);
    result.companions.resize(horizon - 1);
    for (std::size_t i = 1; i <= horizon - 1; ++i)
        result.companions[i - 1] = (i <= pivot - 1) ? 1.0 - us[i - 1] : 1.0 - us[i] / 2.0;

    // Exact per-draw verification of the rearrangement inequality.
    std::vector<Dyadic> stick(horizon);  // P_m = u_m prod_{j<m} (1-u_j)
    Dyadic rest = Dyadic::one();
    for (std::size_t m = 1; m <= horizon; ++m) {
        stick[m - 1] = rest * Dyadic::from_double(us[m - 1]);
        rest *= Dyadic::from_double(1.0 - us[m - 1]);
    }
    Dyadic bound{1, 1};  // 1/2 * prod_{j<=i-2} V_j
    for (std::size_t i = 2; i <= horizon; ++i) {
        if (!(stick[result.sigma[i - 1] - 1] <= bound))
            throw std::logic_error("rearrange_uniform: rearrangement inequality violated");
        if (i <= horizon - 1) bound *= Dyadic::from_double(result.companions[i - 2]);
    }
    return result;
}

DirichletRearranger::DirichletRearranger(std::int32_t d) : d_(d) {
    if (d < 2) throw std::invalid_argument("DirichletRearranger: d must be >= 2");
    const double a = static_cast<double>(d) / (d - 1);
    const double t = 1.0 - kW16;
    p_admissible_below_.resize(std::max(0, d - 2));
    p_admissible_plain_.resize(std::max(0, d - 2));
    for (std::int32_t i = 1; i <= d - 2; ++i) {
        const double b_i = static_cast<double>(d - i) / (d_ - 1);
        const double low = beta_mass(a, b_i, 0.0, t);
        const double half = beta_mass(a, b_i, 0.0, 0.5);
        p_admissible_below_[static_cast<std::size_t>(i - 1)] = (half - low) / half;
        const double b_next = static_cast<double>(d - i - 1) / (d_ - 1);
        const double low_next = beta_mass(a, b_next, 0.0, t);
        p_admissible_plain_[static_cast<std::size_t>(i - 1)] =
            1.0 - low_next / beta_normalizer(a, b_next);
    }
}

DirichletRearrangement DirichletRearranger::sample(Rng& rng) const {
    DirichletRearrangement out;
    out.sample = stick_break_urn(d_, d_, rng);
    const auto& sticks = out.sample.sticks;  // X_1..X_{d-1}

    std::uint32_t pivot = static_cast<std::uint32_t>(d_);
    for (std::size_t i = 0; i < sticks.size(); ++i) {
        if (sticks[i] > 0.5) {
            pivot = static_cast<std::uint32_t>(i + 1);
            break;
        }
    }

    // sigma' over draw order: first the pivot, then everything else in order.
    std::vector<std::uint32_t> sigma_draw(static_cast<std::size_t>(d_));
    sigma_draw[0] = pivot;
    for (std::int32_t i = 2; i <= d_; ++i)
        sigma_draw[static_cast<std::size_t>(i - 1)] =
            (i <= static_cast<std::int32_t>(pivot)) ? static_cast<std::uint32_t>(i - 1)
                                                    : static_cast<std::uint32_t>(i);

    // Companions: W_i must dominate 1-X_i below the pivot and 1-X_{i+1} from
    // it on; W = 16/17 is drawn with the conditional probability that makes
    // the marginal exactly 1/2.
    std::vector<double> companions(static_cast<std::size_t>(std::max(0, d_ - 2)), 1.0);
    for (std::int32_t i = 1; i <= d_ - 2; ++i) {
        const bool below = i <= static_cast<std::int32_t>(pivot) - 1;
        const double x = below ? sticks[static_cast<std::size_t>(i - 1)]
                               : sticks[static_cast<std::size_t>(i)];
        const bool admissible = (1.0 - x) <= kW16;
        const double p_adm = below ? p_admissible_below_[static_cast<std::size_t>(i - 1)]
                                   : p_admissible_plain_[static_cast<std::size_t>(i - 1)];
        if (admissible && rng.u01() < 0.5 / p_adm)
            companions[static_cast<std::size_t>(i - 1)] = kW16;
    }

    // Exact per-draw verification: Y_{sigma'(i)} * 2 * 17^a <= 16^a * 2^shift.
    {
        std::vector<Dyadic> sticks_y(static_cast<std::size_t>(d_));
        Dyadic rest = Dyadic::one();
        for (std::int32_t i = 1; i < d_; ++i) {
            sticks_y[static_cast<std::size_t>(i - 1)] =
                rest * Dyadic::from_double(sticks[static_cast<std::size_t>(i - 1)]);
            rest *= Dyadic::from_double(1.0 - sticks[static_cast<std::size_t>(i - 1)]);
        }
        sticks_y[static_cast<std::size_t>(d_ - 1)] = rest;
        BigInt pow16 = 1, pow17 = 1;
        for (std::int32_t i = 2; i <= d_; ++i) {
            const Dyadic& lhs = sticks_y[sigma_draw[static_cast<std::size_t>(i - 1)] - 1];
            // lhs <= (1/2) * (16/17)^a  <=>  lhs.mant * 17^a * 2 <= 16^a * 2^(1+lhs.shift)...
            BigInt left = lhs.mant * pow17;
            BigInt right = pow16 << static_cast<unsigned>(lhs.shift > 0 ? lhs.shift - 1 : 0);
            if (lhs.shift <= 0) left <<= static_cast<unsigned>(1 - lhs.shift);
            if (left > right)
                throw std::logic_error("rearrange_dirichlet: rearrangement inequality violated");
            if (i <= d_ - 1 && companions[static_cast<std::size_t>(i - 2)] == kW16) {
                pow16 *= 16;
                pow17 *= 17;
            }
        }
    }

    // Translate sigma' (draw order) into component indices.
    std::vector<std::uint32_t> inverse(out.sample.perm.size());
    for (std::size_t i = 0; i < out.sample.perm.size(); ++i)
        inverse[out.sample.perm[i]] = static_cast<std::uint32_t>(i);
    out.rearrangement.pivot = pivot;
    out.rearrangement.companions = std::move(companions);
    out.rearrangement.sigma.resize(static_cast<std::size_t>(d_));
    for (std::int32_t i = 1; i <= d_; ++i)
        out.rearrangement.sigma[static_cast<std::size_t>(i - 1)] =
            inverse[sigma_draw[static_cast<std::size_t>(i - 1)] - 1] + 1;
    return out;
}

double q_flow_value(const std::function<double(const Word&)>& v_table, const Word& w) {
    double q = 1.0;
    Word prefix;
    for (auto letter : w) {
        if (letter >= 2) {
            double factor = 0.5;
            for (std::uint32_t j = 1; j + 1 < letter; ++j) factor *= v_table(word_child(prefix, j));
            q *= factor;
        }
        prefix.push_back(letter);
    }
    return q;
}

double q_flow_value(const std::map<Word, double>& v_table, const Word& w) {
    return q_flow_value(
        [&v_table](const Word& key) {
            const auto it = v_table.find(key);
            if (it == v_table.end())
                throw std::invalid_argument("q_flow_value: missing table entry for " +
                                            format_word(key));
            return it->second;
        },
        w);
}

RegularLimitFlow::Cursor::Cursor(const Node& node, std::int32_t d)
    : seed_(node.seed), parent_value_(node.value), remaining_(node.value) {
    Rng rng(node.seed);
    std::vector<double> sticks;
    sticks_and_draw_order(d, d, rng, sticks, components_);
    // components in draw order; shuffle to the exchangeable vector
    for (std::size_t i = components_.size(); i > 1; --i)
        std::swap(components_[i - 1], components_[rng.below(i)]);
}

EnumerationResult enumerate_ex_random_flow(Model model, std::int32_t d, double x,
                                           std::uint64_t seed, std::int64_t budget,
                                           bool keep_words) {
    if (!(x >= 1.0)) throw std::invalid_argument("enumerate_ex_random_flow: x must be >= 1");
    if (model == Model::kUa) {
        UaLimitFlow flow(seed);
        return enumerate_flow_set(flow, x, budget, keep_words);
    }
    RegularLimitFlow flow(d, seed);
    return enumerate_flow_set(flow, x, budget, keep_words);
}

double sample_limit_step_max(Model model, std::int32_t d, Rng& rng) {
    if (model == Model::kUa) {
        const double u = rng.u01();
        return std::max(u, 1.0 - u);
    }
    std::vector<double> sticks, draw_order;
    sticks_and_draw_order(d, d, rng, sticks, draw_order);
    return *std::max_element(draw_order.begin(), draw_order.end());
}

double sample_phi_limit_bound(Model model, std::int32_t d, Rng& rng) {
    double prod = 1.0;
    double log_x = 0.0;
    bool root_step = true;
    for (;;) {
        double v;
        if (model == Model::kUa) {
            v = sample_limit_step_max(model, d, rng);
        } else if (root_step) {
            std::vector<double> sticks, draw_order;
            sticks_and_draw_order(d + 1, d, rng, sticks, draw_order);
            v = *std::max_element(draw_order.begin(), draw_order.end());
        } else {
            v = sample_limit_step_max(model, d, rng);
        }
        root_step = false;
        prod *= v;
        if (prod <= 0.5) break;
        log_x += -std::log1p(-prod);
    }
    return log_x;
}

double beta_conditional_tail(double a, double b) {
    if (!(a >= 1.0 && a <= 2.0))
        throw std::invalid_argument("beta_conditional_tail: a must lie in [1, 2]");
    if (!(b > 0.0 && b <= 1.0))
        throw std::invalid_argument("beta_conditional_tail: b must lie in (0, 1]");
    const double low = beta_mass(a, b, 0.0, 1.0 / 17.0);
    const double half = beta_mass(a, b, 0.0, 0.5);
    return low / half;
}

std::int64_t geometric_branching_generation(std::int32_t r, Rng& rng) {
    if (r < 0) throw std::invalid_argument("geometric_branching_generation: r must be >= 0");
    std::int64_t size = 1;
    const double denom = std::log(0.5);
    for (std::int32_t gen = 0; gen < r; ++gen) {
        std::int64_t next = 0;
        for (std::int64_t i = 0; i < size; ++i)
            next += 1 + static_cast<std::int64_t>(std::log(rng.u01_positive()) / denom);
        size = next;
    }
    return size;
}

namespace {

// Lazily extended uniform stream at one image node of the Q-domination walk.
struct QNode {
    Rng rng;
    std::vector<double> us;
    std::uint32_t pivot = 0;  // first index with u > 1/2; 0 while unknown
    std::uint64_t seed = 0;

    explicit QNode(std::uint64_t node_seed) : rng(node_seed), seed(node_seed) {}
    double u_at(std::uint32_t index) {  // 1-based
        while (us.size() < index) {
            us.push_back(rng.u01());
            if (pivot == 0 && us.back() > 0.5) pivot = static_cast<std::uint32_t>(us.size());
        }
        return us[index - 1];
    }
    std::uint32_t find_pivot() {
        std::uint32_t probe = static_cast<std::uint32_t>(us.size());
        while (pivot == 0) u_at(++probe);
        return pivot;
    }
};

struct QWalkState {
    std::int32_t max_height;
    std::uint32_t max_index;
    QDominationOutcome outcome;
};

void q_walk(QWalkState& state, QNode& node, const Dyadic& p_sigma, const Dyadic& q_value,
            std::int32_t height) {
    if (height >= state.max_height) return;
    const std::uint32_t pivot = node.find_pivot();
    // Companions at this node: V'_j = 1-U_j below the pivot, 1-U_{j+1}/2 after.
    auto companion = [&](std::uint32_t j) {
        return j <= pivot - 1 ? 1.0 - node.u_at(j) : 1.0 - node.u_at(j + 1) / 2.0;
    };
    if (height == 0)
        for (std::uint32_t j = 1; j <= state.max_index; ++j)
            state.outcome.root_companions.push_back(companion(j));

    Dyadic q_factor{1, 1};  // 1/2, then multiplied by companions
    for (std::uint32_t i = 1; i <= state.max_index; ++i) {
        const std::uint32_t image =
            i == 1 ? pivot : (i <= pivot ? i - 1 : i);  // sigma at this node
        Dyadic p_step = Dyadic::from_double(node.u_at(image));
        for (std::uint32_t j = 1; j < image; ++j)
            p_step *= Dyadic::from_double(1.0 - node.u_at(j));
        Dyadic p_child = p_sigma * p_step;

        Dyadic q_child = q_value;
        if (i >= 2) {
            if (i >= 3) q_factor *= Dyadic::from_double(companion(i - 2));
            q_child *= q_factor;
        }
        ++state.outcome.nodes_checked;
        if (!(p_child <= q_child)) ++state.outcome.violations;

        QNode child(derive_seed(node.seed, image));
        q_walk(state, child, p_child, q_child, height + 1);
    }
}

}  // namespace

QDominationOutcome check_q_domination(std::uint64_t seed, std::int32_t max_height,
                                      std::uint32_t max_index) {
    QWalkState state{max_height, max_index, {}};
    QNode root(derive_seed(seed, 0));
    q_walk(state, root, Dyadic::one(), Dyadic::one(), 0);
    return state.outcome;
}

}  // namespace uaroot
