#pragma once

// Weighted Lorentz and Marcinkiewicz sequence norms on a finite horizon,
// together with the discrete Hardy operator and the weight transformations
// used to compare these spaces.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "squeeze/numeric.hpp"
#include "squeeze/seqreg.hpp"

namespace squeeze::lorentz {

using seqreg::PositiveSequence;
using seqreg::Weight;

/// Finitely supported real coefficients (a_1, ..., a_N).
using RealSequence = std::vector<double>;

enum class Flavor { primitive, direct, marcinkiewicz };

/// Default upper limit for the doubling ratio of a spec's primitive.
inline constexpr double kDefaultDoublingCap = 1e3;

/// Identifies d_{1,q}(w), d(u,q) or m(w). For the direct flavor the weight
/// holds u; for the other two it holds w.
class LorentzSpec {
 public:
  LorentzSpec(double q, Weight weight, Flavor flavor = Flavor::primitive,
              double doubling_cap = kDefaultDoublingCap);

  double q() const { return q_; }
  const Weight& weight() const { return weight_; }
  Flavor flavor() const { return flavor_; }
  std::size_t size() const { return weight_.size(); }

 private:
  double q_;
  Weight weight_;
  Flavor flavor_;
};

/// {"q": number | "inf", "weight": descriptor | [weights], "flavor": ...,
///  "N": horizon}. Missing flavor means primitive; missing N means 4096.
LorentzSpec spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const LorentzSpec& spec);

/// |a_n| sorted descending; ties keep their original order.
RealSequence rearrangement(std::span<const double> f);
/// The permutation realising rearrangement(): order[i] is the source index.
std::vector<std::size_t> rearrangement_order(std::span<const double> f);

/// (sum_n (a_n s_n)^q w_n / s_n)^{1/q} over f* = (a_n); sup_n a_n s_n when
/// q is infinite. Throws std::invalid_argument if f is longer than w.
double lorentz_norm(std::span<const double> f, const Weight& w, double q);
/// Dispatches on the spec's flavor.
double lorentz_norm(std::span<const double> f, const LorentzSpec& spec);

/// (sum_n a_n^q u_n)^{1/q} over f*, 0 < q < infinity.
double lorentz_norm_direct(std::span<const double> f, const Weight& u, double q);

/// max_{m <= len(f)} (1/s_m) sum_{n <= m} f*_n.
double marcinkiewicz_norm(std::span<const double> f, const Weight& w);

/// Running averages (1/m) sum_{n <= m} a_n.
RealSequence discrete_hardy(std::span<const double> f);

struct HardyBand {
  RatioBand band;
  /// Smallest URP witness of the primitive found on the horizon.
  std::optional<std::size_t> urp_witness;
};

/// Band of ||H_d(f*)|| / ||f|| over the nonzero samples, where H_d acts on
/// f* padded with zeros to the spec's horizon. Requires 1 < q < infinity and
/// a nonempty sample list.
HardyBand hardy_equivalence_band(const LorentzSpec& spec,
                                 std::span<const RealSequence> samples);

/// Norm of the indicator of {1, ..., m}.
double fundamental_function(const LorentzSpec& spec, std::size_t m);

/// H_m = sum_{n <= m} w_n / s_n.
double embedding_gap_H(const Weight& w, std::size_t m);

/// H_1, ..., H_N over the whole horizon of w (entry m - 1).
RealSequence embedding_gap_table(const Weight& w);

/// H_m^{1/q - 1/r} for 0 < q <= r <= infinity.
double delta_m(const Weight& w, double q, double r, std::size_t m);

/// u_1 = s_1^{-q'}, u_n = n^{q'} (s_{n-1}^{-q'} - s_n^{-q'}) with
/// q' = q / (q - 1). The primitive must be strictly increasing.
Weight allen_dual_weight(const Weight& w, double q);

/// Spec with index p q and primitive s^{1/p}. Primitive flavor only.
LorentzSpec p_convexify(const LorentzSpec& spec, double p);

/// ||(|f|^p)||^{1/p} in the given spec.
double convexified_norm(std::span<const double> f, const LorentzSpec& spec, double p);

struct LrpEquivalentWeight {
  Weight v;
  RatioBand mv_band;   ///< m v_m / s_m
  RatioBand sum_band;  ///< (sum_{n <= m} v_n) / s_m
};

struct LrpOptions {
  std::size_t b_max = 64;
  double ei_cap = 1e3;
};

/// v_n = min_{k <= n} s_k / k, after checking that the primitive has an LRP
/// witness and that its dual sequence is essentially increasing below the cap.
LrpEquivalentWeight lrp_equivalent_weight(const Weight& w, LrpOptions options = {});

struct BlockConstruction {
  std::vector<std::size_t> ends;      ///< m_1 < m_2 < ... < m_K (1-based)
  std::vector<RealSequence> blocks;   ///< x_k, each of length m_K
  RatioBand sign_band;                ///< ||sum eps_k x_k||_m(w) / max |eps_k|
  std::size_t patterns = 0;
};

/// Maximum number of blocks included in the sign-pattern report.
inline constexpr std::size_t kMaxReportedBlocks = 10;

/// Picks m_k as the least index beyond m_{k-1} at which n / s_n attains its
/// running maximum with sum_{j<k} s_{m_j} <= (lambda - 1) s_{m_k}, and forms
/// x_k = (s_{m_k} / m_k) 1_{(m_{k-1}, m_k]}. Throws HorizonExhausted when the
/// horizon of w runs out before K blocks are found.
BlockConstruction block_ellinfty_construction(const Weight& w, double lambda, std::size_t K);

}  // namespace squeeze::lorentz
