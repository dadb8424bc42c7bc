#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace seqedit {

/// Per-rollout token log-probabilities under the current policy, the sampling
/// policy and the frozen reference. Arrays are ragged across rollouts but
/// equal-length within one.
struct Rollout {
    std::vector<double> logp;
    std::vector<double> logp_old;
    std::vector<double> logp_ref;
};

/// G completions for one prompt with scalar rewards.
struct RolloutGroup {
    std::vector<double> rewards;
    std::vector<Rollout> rollouts;

    std::size_t size() const { return rewards.size(); }
    /// Enforces: G >= 2, per-rollout arrays equal length, log-probs finite and
    /// <= 0, rewards finite. Throws DegenerateGroupError / Error.
    void validate() const;
};

enum class PolicyAlgo { Grpo, Gspo, Cispo };

std::string to_string(PolicyAlgo algo);
PolicyAlgo policy_algo_from(std::string_view name);

struct SurrogateConfig {
    PolicyAlgo algorithm = PolicyAlgo::Grpo;
    double eps_low = 0.2;       ///< ratio clip: lower band width (unused by CISPO)
    double eps_high = 0.2;      ///< ratio clip: upper band width / CISPO weight cap
    double beta_kl = 0.0;       ///< KL-to-reference coefficient
    double adv_epsilon = 1e-8;  ///< denominator guard in the advantage
    std::size_t group_size = 8; ///< informational; the group carries its own G
};

/// Named hyperparameter presets: "grpo-paper" (eps 0.2 symmetric, beta 1e-3),
/// "gspo-paper" (eps_low 3e-4, eps_high 4e-4, beta 0), "cispo-paper"
/// (eps_high 5.0, beta 0). Shipped as files under configs/ with identical
/// values. Throws Error for unknown names.
SurrogateConfig surrogate_preset(std::string_view name);

/// Group-normalized advantages A_i = (r_i - mean) / (population std + eps).
/// Throws DegenerateGroupError for fewer than two rewards.
std::vector<double> group_advantages(const std::vector<double>& rewards, double adv_epsilon);

/// Mean over tokens of the nonnegative estimator exp(d) - d - 1 with
/// d = lp_ref - lp. Zero iff the arrays agree elementwise. Throws
/// LengthMismatchError.
double kl_to_reference(std::span<const double> logp, std::span<const double> logp_ref);

/// Scalar objective values plus the detached per-token coefficients a training
/// stack needs to rebuild the differentiable loss:
///   Grpo/Gspo: coefficient = the per-token (per-sequence) min-term value, so
///              surrogate = mean over (i, t) of coefficients.
///   Cispo:     coefficient = min(ratio, eps_high) * A_i, the stop-gradient
///              weight on that token's log-prob; the surrogate reports the
///              same normalized coefficient mass, which makes all three
///              algorithms coincide at theta == theta_old.
struct ObjectiveReport {
    double surrogate = 0.0;
    double kl = 0.0;         ///< mean over rollouts of per-rollout token-mean KL
    double objective = 0.0;  ///< surrogate - beta_kl * kl
    std::vector<double> advantages;
    std::vector<double> per_rollout;  ///< each rollout's surrogate contribution
    std::vector<std::vector<double>> token_coefficients;
    bool any_clipped = false;
};

/// PPO-style clipped surrogate, per-token ratios, advantage shared across a
/// rollout's tokens: J = 1/G sum_i 1/|o_i| sum_t min(r*A, clip(r, 1-el, 1+eh)*A)
/// - beta * KL. Throws NonFiniteRatioError when exp(lp - lp_old) overflows.
ObjectiveReport grpo_objective(const RolloutGroup& group, const SurrogateConfig& cfg);

/// Sequence-level variant: s_i = exp(mean_t(lp - lp_old)), clipped into
/// [1-eps_low, 1+eps_high], J = 1/G sum_i min(s_i*A_i, clip(s_i)*A_i) - beta*KL.
ObjectiveReport gspo_objective(const RolloutGroup& group, const SurrogateConfig& cfg);

/// Clipped importance-sampling weights w = min(ratio, eps_high) per token,
/// treated as fixed coefficients on A_i.
ObjectiveReport cispo_objective(const RolloutGroup& group, const SurrogateConfig& cfg);

/// Dispatch on cfg.algorithm.
ObjectiveReport policy_objective(const RolloutGroup& group, const SurrogateConfig& cfg);

}  // namespace seqedit
